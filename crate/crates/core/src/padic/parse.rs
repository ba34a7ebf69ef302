//! String grammar for field elements: `"a/b"` or `"a/b + c/d*sqrt(p)"`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{FieldContext, FieldElement, PadicError};

/// Parses a rational of the form `n` or `n/d` (sign allowed on `n`).
pub fn parse_rational(s: &str) -> Result<BigRational, PadicError> {
    let err = |reason: &str| PadicError::Parse {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(err("empty rational"));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t.as_str(), "1"),
    };
    if den.starts_with(['+', '-']) {
        return Err(err("sign not allowed in denominator"));
    }
    let num = BigInt::from_str(num).map_err(|_| err("bad numerator"))?;
    let den = BigInt::from_str(den).map_err(|_| err("bad denominator"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

impl FieldElement {
    pub fn parse(s: &str, ctx: FieldContext) -> Result<Self, PadicError> {
        let err = |reason: String| PadicError::Parse {
            input: s.to_string(),
            reason,
        };
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err("empty input".into()));
        }
        let mut a = BigRational::zero();
        let mut b = BigRational::zero();
        for term in split_terms(&t) {
            let (negative, body) = match term.as_bytes()[0] {
                b'-' => (true, &term[1..]),
                b'+' => (false, &term[1..]),
                _ => (false, term),
            };
            let (coef, radical) = match body.find("sqrt(") {
                None => (body, false),
                Some(pos) => {
                    let inner = body[pos + 5..].strip_suffix(')').ok_or_else(|| err("unterminated sqrt(".into()))?;
                    let radicand: u64 = inner.parse().map_err(|_| err(format!("bad radicand {inner:?}")))?;
                    if radicand != ctx.p() {
                        return Err(err(format!("only sqrt({}) is supported", ctx.p())));
                    }
                    if !ctx.is_ramified() {
                        return Err(err("sqrt(p) requires the ramified context".into()));
                    }
                    let coef = &body[..pos];
                    let coef = if coef.is_empty() {
                        "1"
                    } else {
                        coef.strip_suffix('*').ok_or_else(|| err("expected '*' before sqrt".into()))?
                    };
                    (coef, true)
                }
            };
            if coef.starts_with(['+', '-']) {
                return Err(err("repeated sign".into()));
            }
            let mut q = parse_rational(coef)?;
            if negative {
                q = -q;
            }
            if radical {
                b += q;
            } else {
                a += q;
            }
        }
        FieldElement::new(ctx, a, b)
    }
}

/// Splits at top-level `+`/`-` signs, keeping each sign with its term.
fn split_terms(t: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = 0;
    let bytes = t.as_bytes();
    for i in 1..bytes.len() {
        let c = bytes[i];
        let prev = bytes[i - 1];
        if (c == b'+' || c == b'-') && prev != b'(' && prev != b'/' && prev != b'*' {
            out.push(&t[start..i]);
            start = i;
        }
    }
    out.push(&t[start..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar() {
        let ctx = FieldContext::quadratic(5).unwrap();
        let x = FieldElement::parse(" -3/4 + 1/2*sqrt(5) ", ctx).unwrap();
        assert_eq!(x.a(), &BigRational::new((-3).into(), 4.into()));
        assert_eq!(x.b(), &BigRational::new(1.into(), 2.into()));
        let y = FieldElement::parse("5*sqrt(5)", ctx).unwrap();
        assert_eq!(y.to_string(), "5*sqrt(5)");
        let z = FieldElement::parse("-sqrt(5)", ctx).unwrap();
        assert_eq!(z.to_string(), "-sqrt(5)");
        assert_eq!(FieldElement::parse("1 - 2*sqrt(5)", ctx).unwrap().to_string(), "1 - 2*sqrt(5)");
        assert_eq!(FieldElement::parse("6/4", ctx).unwrap().to_string(), "3/2");
    }

    #[test]
    fn rejects_malformed() {
        let ctx = FieldContext::quadratic(5).unwrap();
        for bad in ["", "1/0", "abc", "2*sqrt(7)", "sqrt(5", "1--2", "2sqrt(5)"] {
            assert!(FieldElement::parse(bad, ctx).is_err(), "{bad}");
        }
        let flat = FieldContext::rational(5).unwrap();
        assert!(FieldElement::parse("sqrt(5)", flat).is_err());
    }
}
