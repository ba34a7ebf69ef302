use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Poly, PolyError};

/// Resultant of `f` and `g` from their Sylvester matrix, using actual degrees.
pub fn resultant(f: &Poly, g: &Poly) -> Result<BigRational, PolyError> {
    let m = f.degree().ok_or(PolyError::ZeroPolynomial)?;
    let n = g.degree().ok_or(PolyError::ZeroPolynomial)?;
    Ok(resultant_formal(f, m, g, n))
}

/// Resultant with formal degrees `m >= deg f`, `n >= deg g`. When both formal
/// degrees exceed the actual ones the two homogenized forms share the root at
/// infinity and the result is zero.
pub fn resultant_formal(f: &Poly, m: usize, g: &Poly, n: usize) -> BigRational {
    let size = m + n;
    if size == 0 {
        return BigRational::one();
    }
    let mut mat = vec![vec![BigRational::zero(); size]; size];
    for row in 0..n {
        for i in 0..=m {
            mat[row][row + i] = f.coeff(m - i);
        }
    }
    for row in 0..m {
        for j in 0..=n {
            mat[n + row][row + j] = g.coeff(n - j);
        }
    }
    determinant(mat)
}

/// Determinant by exact Gaussian elimination.
fn determinant(mut mat: Vec<Vec<BigRational>>) -> BigRational {
    let n = mat.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !mat[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            mat.swap(pivot, col);
            det = -det;
        }
        let pv = mat[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = &mat[r][col] / &pv;
            let (top, bottom) = mat.split_at_mut(r);
            for (x, y) in bottom[0][col..n].iter_mut().zip(&top[col][col..n]) {
                *x -= &factor * y;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn linear_against_constant() {
        let f = Poly::from_ints(&[-3, 1]);
        let g = Poly::from_ints(&[7]);
        assert_eq!(resultant(&f, &g).unwrap(), int(7));
    }

    #[test]
    fn hand_computed_sylvester() {
        let f = Poly::from_ints(&[5, -6, 1]);
        assert_eq!(resultant(&f, &Poly::x()).unwrap(), int(5));
    }

    #[test]
    fn common_roots_give_zero() {
        let f = Poly::from_ints(&[-1, 0, 1]);
        assert!(resultant(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn zero_input_rejected() {
        assert_eq!(resultant(&Poly::zero(), &Poly::x()), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn product_of_root_differences() {
        // Res(f, g) = lc(f)^deg g * prod g(roots of f)
        let f = Poly::from_ints(&[2, -3, 1]); // roots 1, 2
        let g = Poly::from_ints(&[1, 0, 3]);
        let expected = g.eval(&int(1)) * g.eval(&int(2));
        assert_eq!(resultant(&f, &g).unwrap(), expected);
    }

    #[test]
    fn formal_degree_detects_common_infinity() {
        let f = Poly::from_ints(&[1, 1]);
        let g = Poly::from_ints(&[1]);
        assert!(resultant_formal(&f, 2, &g, 2).is_zero());
        assert!(!resultant_formal(&Poly::from_ints(&[0, 0, 1]), 2, &g, 2).is_zero());
    }
}
