//! Even lattices, their discriminant forms, and rank-2 positive-definite
//! forms.

mod binary;
mod discform;
mod transcendental;

pub use binary::{enumerate_even_forms, BinaryQuadraticForm};
pub use discform::{disc_forms_isomorphic, find_isomorphism, DiscriminantForm, ISOMORPHISM_SEARCH_CAP};
pub use transcendental::{check_transcendental, transcendental_candidates, TranscendentalCheck};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::Value;

use crate::algebra::{rational_mod, snf, IntMatrix, RatMatrix};
use crate::error::{Error, Result};

/// An even integral lattice given by a symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    gram: IntMatrix,
}

impl Lattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare { rows: gram.rows(), cols: gram.cols() });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if let Some(index) = (0..gram.rows()).find(|&i| gram[(i, i)].is_odd()) {
            return Err(Error::NotEven { index });
        }
        Ok(Lattice { gram })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    /// `U ⊕ ⟨n⟩` in the basis ordering with Gram `[[0,0,1],[0,n,0],[1,0,0]]`.
    pub fn hyperbolic_plus(n: i64) -> Self {
        Self::from_rows(&[vec![0, 0, 1], vec![0, n, 0], vec![1, 0, 0]])
            .expect("U + <n> is even for even n")
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        self.gram.det().expect("Gram matrix is square")
    }

    pub fn pair(&self, u: &[BigInt], v: &[BigInt]) -> Result<BigInt> {
        self.gram.bilinear(u, v)
    }

    pub(crate) fn inverse(&self) -> Result<RatMatrix> {
        self.gram.rational_inverse()
    }

    /// `v·A⁻¹·vᵗ` for a vector given in dual-basis coordinates, unreduced.
    pub fn dual_norm(&self, v: &[BigInt]) -> Result<BigRational> {
        let inv = self.inverse()?;
        let v: Vec<BigRational> = v.iter().cloned().map(BigRational::from_integer).collect();
        inv.bilinear(&v, &v)
    }

    /// `v·A⁻¹·wᵗ` for dual-basis coordinate vectors, unreduced.
    pub fn dual_pairing(&self, v: &[BigInt], w: &[BigInt]) -> Result<BigRational> {
        let inv = self.inverse()?;
        let v: Vec<BigRational> = v.iter().cloned().map(BigRational::from_integer).collect();
        let w: Vec<BigRational> = w.iter().cloned().map(BigRational::from_integer).collect();
        inv.bilinear(&v, &w)
    }

    /// Order of a dual vector in `L*/L`: the least `m > 0` with `m·A⁻¹·vᵗ`
    /// integral.
    pub fn dual_order(&self, v: &[BigInt]) -> Result<BigInt> {
        let inv = self.inverse()?;
        let v: Vec<BigRational> = v.iter().cloned().map(BigRational::from_integer).collect();
        let w = inv.left_mul_vec(&v)?;
        Ok(w.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom())))
    }

    /// Discriminant quadratic value of a dual vector, reduced into `[0, 2)`.
    pub fn qvalue(&self, v: &[BigInt]) -> Result<BigRational> {
        Ok(rational_mod(&self.dual_norm(v)?, 2))
    }

    pub fn discriminant_form(&self) -> Result<DiscriminantForm> {
        DiscriminantForm::of_lattice(self)
    }

    /// The primitive sublattice orthogonal to `v`.
    pub fn orthogonal_complement(&self, v: &[BigInt]) -> Result<Lattice> {
        Ok(self.orthogonal_complement_with_basis(v)?.0)
    }

    /// Like [`Self::orthogonal_complement`], also returning the basis of the
    /// complement as the columns of an `n×(n-1)` integer matrix.
    pub fn orthogonal_complement_with_basis(&self, v: &[BigInt]) -> Result<(Lattice, IntMatrix)> {
        let n = self.rank();
        if v.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a rank-{n} lattice",
                v.len()
            )));
        }
        if v.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
        let content = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if content != BigInt::from(1) {
            return Err(Error::NotPrimitive(content.to_string()));
        }
        let functional = IntMatrix::new(1, n, self.gram.left_mul_vec(v)?)?;
        let basis = if functional.row(0).iter().all(Zero::is_zero) {
            IntMatrix::identity(n)
        } else {
            // w·V = (d, 0, …, 0): the last n-1 columns of V span ker w and
            // are saturated because V is unimodular.
            let r = snf(&functional);
            let cols: Vec<usize> = (1..n).collect();
            let data = (0..n)
                .flat_map(|i| cols.iter().map(move |&j| (i, j)))
                .map(|(i, j)| r.v[(i, j)].clone())
                .collect();
            IntMatrix::new(n, n - 1, data)?
        };
        let gram = basis.transpose().mul(&self.gram)?.mul(&basis)?;
        Ok((Lattice::new(gram)?, basis))
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.rank())
            .map(|i| Value::Array(self.gram.row(i).iter().map(crate::algebra::json::int_to_json).collect()))
            .collect();
        serde_json::json!({ "gram": rows })
    }

    /// Accepts `{"gram": [[...]]}` or a matrix object.
    pub fn from_json(v: &Value) -> Result<Lattice> {
        if let Some(g) = v.get("gram") {
            let rows = crate::algebra::json::rows_from_json(g)?;
            Lattice::new(IntMatrix::from_rows(&rows)?)
        } else {
            Lattice::new(IntMatrix::from_json(v)?)
        }
    }

    /// Whether `|det| · |v²| = |det L| · m²` for some positive integer `m`,
    /// where `self` is a complement of `v` in `ambient`.
    pub fn complement_index(&self, ambient: &Lattice, v: &[BigInt]) -> Result<Option<BigInt>> {
        let v2 = ambient.pair(v, v)?.abs();
        let lhs = self.det().abs() * v2;
        let base = ambient.det().abs();
        if base.is_zero() || !lhs.is_multiple_of(&base) {
            return Ok(None);
        }
        let sq = lhs / base;
        let m = sq.sqrt();
        Ok((&m * &m == sq).then_some(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn construction_checks() {
        assert_eq!(Lattice::from_rows(&[vec![2, 1], vec![0, 2]]), Err(Error::NotSymmetric));
        assert_eq!(Lattice::from_rows(&[vec![2, 1], vec![1, 3]]), Err(Error::NotEven { index: 1 }));
        assert!(Lattice::from_rows(&[vec![-2, 1], vec![1, -2]]).is_ok());
    }

    #[test]
    fn qvalue_of_zero_is_zero() {
        let l = Lattice::hyperbolic_plus(24);
        assert!(l.qvalue(&bi(&[0, 0, 0])).unwrap().is_zero());
    }

    #[test]
    fn qvalue_singular_rejected() {
        let l = Lattice::from_rows(&[vec![2, 2], vec![2, 2]]).unwrap();
        assert_eq!(l.qvalue(&bi(&[1, 0])), Err(Error::Singular));
    }

    #[test]
    fn complement_in_u_plus_6() {
        let l = Lattice::hyperbolic_plus(6);
        for v in [[-1, -1, 4], [1, 0, -1]] {
            let (c, basis) = l.orthogonal_complement_with_basis(&bi(&v)).unwrap();
            assert_eq!(c.rank(), 2);
            for j in 0..2 {
                assert!(l.pair(&basis.column(j), &bi(&v)).unwrap().is_zero());
            }
            let f = BinaryQuadraticForm::from_lattice(&c).unwrap().reduce().unwrap();
            assert_eq!(f, BinaryQuadraticForm::new(2, 0, 6));
            assert!(c.complement_index(&l, &bi(&v)).unwrap().is_some());
        }
    }

    #[test]
    fn complement_in_u_plus_12() {
        let l = Lattice::hyperbolic_plus(12);
        let c = l.orthogonal_complement(&bi(&[-1, 0, 2])).unwrap();
        let f = BinaryQuadraticForm::from_lattice(&c).unwrap().reduce().unwrap();
        assert_eq!(f, BinaryQuadraticForm::new(4, 0, 12));
    }

    #[test]
    fn complement_rejects_bad_vectors() {
        let l = Lattice::hyperbolic_plus(6);
        assert_eq!(l.orthogonal_complement(&bi(&[0, 0, 0])), Err(Error::ZeroVector));
        assert!(matches!(l.orthogonal_complement(&bi(&[2, 0, -2])), Err(Error::NotPrimitive(_))));
    }

    #[test]
    fn json_round_trip() {
        let l = Lattice::hyperbolic_plus(24);
        assert_eq!(Lattice::from_json(&l.to_json()).unwrap(), l);
    }
}
