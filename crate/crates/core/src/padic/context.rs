use std::fmt;

use super::PadicError;

/// Ground field: `Q` (ramification 1) or the Eisenstein extension `Q(sqrt p)`
/// (ramification 2), both viewed inside `C_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldContext {
    p: u64,
    ramification: u8,
}

impl FieldContext {
    pub fn new(p: u64, ramification: u8) -> Result<Self, PadicError> {
        if !is_prime(p) {
            return Err(PadicError::NotPrime(p));
        }
        if ramification != 1 && ramification != 2 {
            return Err(PadicError::InvalidRamification(ramification));
        }
        Ok(FieldContext { p, ramification })
    }

    /// `Q` inside `Q_p`.
    pub fn rational(p: u64) -> Result<Self, PadicError> {
        Self::new(p, 1)
    }

    /// `Q(sqrt p)`, whose valuation group is `(1/2)Z`.
    pub fn quadratic(p: u64) -> Result<Self, PadicError> {
        Self::new(p, 2)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ramification(&self) -> u8 {
        self.ramification
    }

    pub fn is_ramified(&self) -> bool {
        self.ramification == 2
    }

    /// Context able to hold values of both `self` and `other`.
    pub fn join(&self, other: &FieldContext) -> Result<FieldContext, PadicError> {
        if self.p != other.p {
            return Err(PadicError::ContextMismatch {
                left: self.p,
                right: other.p,
            });
        }
        Ok(FieldContext {
            p: self.p,
            ramification: self.ramification.max(other.ramification),
        })
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ramified() {
            write!(f, "Q({}^(1/2))", self.p)
        } else {
            write!(f, "Q ⊂ Q_{}", self.p)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_and_bad_ramification() {
        assert!(matches!(FieldContext::rational(4), Err(PadicError::NotPrime(4))));
        assert!(matches!(FieldContext::rational(1), Err(PadicError::NotPrime(1))));
        assert!(FieldContext::new(5, 3).is_err());
        assert!(FieldContext::quadratic(2).is_ok());
    }

    #[test]
    fn join_requires_same_prime() {
        let a = FieldContext::rational(5).unwrap();
        let b = FieldContext::quadratic(5).unwrap();
        let c = FieldContext::rational(7).unwrap();
        assert_eq!(a.join(&b).unwrap().ramification(), 2);
        assert!(a.join(&c).is_err());
    }
}
