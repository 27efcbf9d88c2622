use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::Lattice;
use crate::algebra::IntMatrix;
use crate::error::{Error, Result};

/// The binary form with Gram matrix `[[a, b], [b, c]]`, written `[a b c]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinaryQuadraticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl BinaryQuadraticForm {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        BinaryQuadraticForm { a, b, c }
    }

    pub fn from_lattice(l: &Lattice) -> Result<Self> {
        let g = l.gram();
        if g.rows() != 2 {
            return Err(Error::WrongRank { expected: 2, found: g.rows() });
        }
        let get = |i, j| -> Result<i64> {
            let x: &BigInt = &g[(i, j)];
            x.to_i64().ok_or_else(|| Error::Overflow(x.to_string()))
        };
        Ok(Self::new(get(0, 0)?, get(0, 1)?, get(1, 1)?))
    }

    pub fn to_lattice(&self) -> Result<Lattice> {
        Lattice::from_rows(&[vec![self.a, self.b], vec![self.b, self.c]])
    }

    pub fn gram(&self) -> IntMatrix {
        IntMatrix::from_rows(&[vec![self.a, self.b], vec![self.b, self.c]]).expect("2x2")
    }

    /// `ac - b²`.
    pub fn det(&self) -> i128 {
        self.a as i128 * self.c as i128 - self.b as i128 * self.b as i128
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a > 0 && self.det() > 0
    }

    pub fn is_even(&self) -> bool {
        self.a % 2 == 0 && self.c % 2 == 0
    }

    pub fn is_reduced(&self) -> bool {
        0 <= 2 * self.b && 2 * self.b <= self.a && self.a <= self.c
    }

    /// Gauss reduction to the unique `GL₂(Z)` representative with
    /// `0 ≤ 2b ≤ a ≤ c`.
    pub fn reduce(&self) -> Result<Self> {
        if !self.is_positive_definite() {
            return Err(Error::NotPositiveDefinite { a: self.a, b: self.b, c: self.c });
        }
        if !self.is_even() {
            return Err(Error::NotEven { index: if self.a % 2 != 0 { 0 } else { 1 } });
        }
        let (mut a, mut b, mut c) = (self.a as i128, self.b as i128, self.c as i128);
        loop {
            // x ↦ x - k y, with k the nearest integer to b/a
            let k = (2 * b + a).div_euclid(2 * a);
            c = c - 2 * b * k + a * k * k;
            b -= k * a;
            if a > c {
                std::mem::swap(&mut a, &mut c);
                continue;
            }
            break;
        }
        // x ↦ -x flips the sign of b under GL₂(Z)
        let b = b.abs();
        let narrow = |x: i128| i64::try_from(x).map_err(|_| Error::Overflow(x.to_string()));
        Ok(Self::new(narrow(a)?, narrow(b)?, narrow(c)?))
    }

    /// Apply the change of basis `M` (columns are the new basis vectors):
    /// the Gram becomes `Mᵗ G M`.
    pub fn transform(&self, m: [[i64; 2]; 2]) -> Self {
        let [[p, q], [r, s]] = m;
        let (a, b, c) = (self.a, self.b, self.c);
        BinaryQuadraticForm {
            a: a * p * p + 2 * b * p * r + c * r * r,
            b: a * p * q + b * (p * s + q * r) + c * r * s,
            c: a * q * q + 2 * b * q * s + c * s * s,
        }
    }
}

impl std::fmt::Display for BinaryQuadraticForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{} {} {}]", self.a, self.b, self.c)
    }
}

/// All reduced even positive-definite forms of determinant `det`, sorted by
/// `(a, b)`.
pub fn enumerate_even_forms(det: u64) -> Vec<BinaryQuadraticForm> {
    let d = det as i128;
    let mut out = Vec::new();
    // 3a² ≤ 4·det follows from b ≤ a/2 and a ≤ c
    let mut a: i128 = 2;
    while 3 * a * a <= 4 * d {
        for b in 0..=a / 2 {
            let num = d + b * b;
            if num % a != 0 {
                continue;
            }
            let c = num / a;
            if c >= a && c % 2 == 0 {
                out.push(BinaryQuadraticForm::new(a as i64, b as i64, c as i64));
            }
        }
        a += 2;
    }
    out
}
