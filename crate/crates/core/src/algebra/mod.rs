//! Exact integer and rational linear algebra.

pub mod json;
mod matrix;
mod snf;

pub use matrix::{IntMatrix, RatMatrix};
pub use snf::{snf, SnfResult};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Reduces `x` into the half-open range `[0, modulus)`.
pub fn rational_mod(x: &BigRational, modulus: i64) -> BigRational {
    let m = BigRational::from_integer(BigInt::from(modulus));
    let k = (x / &m).floor();
    x - k * m
}

/// Determinant as the signed product of Smith invariants, i.e. an
/// independent route to the same number as [`IntMatrix::det`].
pub fn det_via_snf(a: &IntMatrix) -> crate::Result<BigInt> {
    if !a.is_square() {
        return Err(crate::Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let r = snf(a);
    let prod: BigInt = r.invariant_factors().iter().product();
    // det U · det A · det V = prod, with det U · det V = ±1
    Ok(prod * r.transform_sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_mod_ranges() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(rational_mod(&r(-745, 24), 2), r(23, 24));
        assert_eq!(rational_mod(&r(-25, 24), 2), r(23, 24));
        assert_eq!(rational_mod(&r(7, 2), 1), r(1, 2));
        assert_eq!(rational_mod(&r(2, 1), 2), r(0, 1));
    }

    #[test]
    fn det_routes_agree() {
        let a = IntMatrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 24]]).unwrap();
        assert_eq!(det_via_snf(&a).unwrap(), a.det().unwrap());
    }
}
