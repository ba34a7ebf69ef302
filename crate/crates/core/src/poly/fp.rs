use std::fmt;

use num_rational::BigRational;

use super::{Poly, PolyError};
use crate::padic::residue_of_rational;

/// Polynomial over `F_p`, ascending coefficients in `0..p`, trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    /// Coefficient-wise reduction; every coefficient must be p-integral.
    pub fn reduce(f: &Poly, p: u64) -> Result<Self, PolyError> {
        let coeffs = f.coeffs().iter().map(|c| reduce_coeff(c, p)).collect::<Result<Vec<_>, _>>()?;
        Ok(FpPoly::new(p, coeffs))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| mulmod(acc, x, self.p).wrapping_add(c) % self.p)
    }

    pub fn derivative(&self) -> Self {
        FpPoly::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulmod(c, i as u64 % self.p, self.p))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &FpPoly) -> (FpPoly, FpPoly) {
        let p = self.p;
        let dd = divisor.degree().expect("division by zero polynomial");
        let inv = inv_mod(*divisor.coeffs.last().unwrap(), p);
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree().filter(|&n| n >= dd) else {
            return (FpPoly::new(p, vec![]), self.clone());
        };
        let mut quot = vec![0u64; n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = mulmod(rem[k + dd], inv, p);
            if c == 0 {
                continue;
            }
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = (rem[k + j] + p - mulmod(c, dc, p)) % p;
            }
            quot[k] = c;
        }
        (FpPoly::new(p, quot), FpPoly::new(p, rem))
    }

    pub fn monic(&self) -> FpPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&l) => {
                let inv = inv_mod(l, self.p);
                FpPoly::new(self.p, self.coeffs.iter().map(|&c| mulmod(c, inv, self.p)).collect())
            }
        }
    }

    pub fn gcd(a: &FpPoly, b: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Roots in `F_p` by exhaustive evaluation.
    pub fn roots(&self) -> Vec<u64> {
        (0..self.p).filter(|&x| self.eval(x) == 0).collect()
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn signed_coeff(&self, i: usize) -> i64 {
        let c = self.coeff(i) as i64;
        let p = self.p as i64;
        if c > p / 2 {
            c - p
        } else {
            c
        }
    }

    /// Renders the homogeneous form `sum c_i X^i Y^(d-i)` of formal degree
    /// `d`, highest X-power first, with symmetric coefficients.
    pub fn homogeneous_string(&self, d: usize) -> String {
        let mut out = String::new();
        for i in (0..=d).rev() {
            let c = self.signed_coeff(i);
            if c == 0 {
                continue;
            }
            let monomial = monomial_xy(i, d - i);
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            let mag = c.unsigned_abs();
            if mag != 1 || monomial.is_empty() {
                out.push_str(&mag.to_string());
            }
            out.push_str(&monomial);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn monomial_xy(i: usize, j: usize) -> String {
    let part = |name: char, e: usize| match e {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{e}"),
    };
    format!("{}{}", part('X', i), part('Y', j))
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.homogeneous_string(self.degree().unwrap_or(0)))
    }
}

fn reduce_coeff(c: &BigRational, p: u64) -> Result<u64, PolyError> {
    residue_of_rational(c, p).ok_or_else(|| PolyError::NotIntegral {
        coefficient: c.to_string(),
        p,
    })
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(result, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_over_f5() {
        // (z-1)(z-2) and (z-1)(z+1)
        let a = FpPoly::new(5, vec![2, 2, 1]);
        let b = FpPoly::new(5, vec![4, 0, 1]);
        assert_eq!(FpPoly::gcd(&a, &b), FpPoly::new(5, vec![4, 1]));
    }

    #[test]
    fn reduction_of_rationals() {
        let f = Poly::new(vec![
            BigRational::new(6.into(), 7.into()),
            BigRational::from_integer((-1).into()),
            BigRational::from_integer(5.into()),
        ]);
        let r = FpPoly::reduce(&f, 5).unwrap();
        assert_eq!(r.coeffs(), &[3, 4]);
        let bad = Poly::new(vec![BigRational::new(1.into(), 5.into())]);
        assert!(FpPoly::reduce(&bad, 5).is_err());
    }

    #[test]
    fn homogeneous_rendering() {
        let f = FpPoly::new(5, vec![0, 4, 0]);
        assert_eq!(f.homogeneous_string(2), "-XY");
        assert_eq!(FpPoly::new(5, vec![]).homogeneous_string(2), "0");
        assert_eq!(FpPoly::new(5, vec![1, 0, 1]).homogeneous_string(2), "X^2 + Y^2");
        assert_eq!(FpPoly::new(5, vec![3]).homogeneous_string(0), "-2");
    }

    #[test]
    fn roots_and_inverse() {
        assert_eq!(FpPoly::new(5, vec![4, 0, 1]).roots(), vec![1, 4]);
        assert_eq!(mulmod(inv_mod(3, 5), 3, 5), 1);
    }
}
