use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::json::rational_to_string;
use crate::error::{Error, Result};

/// Coefficient ring of a [`super::Poly`].
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(q: &BigRational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()))
    }
}

/// A coefficient ring that is a field.
pub trait Field: Coeff {
    fn inv(&self) -> Result<Self>;
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
}

impl Field for BigRational {
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.recip())
    }
}

/// `re + im·√d` for a squarefree integer `d`; `d = 0` marks a plain
/// rational. Combining an element with `d = 0` and one with `d ≠ 0` adopts
/// the nonzero `d`.
#[derive(Clone, Debug)]
pub struct QuadElem {
    pub re: BigRational,
    pub im: BigRational,
    pub d: i64,
}

impl QuadElem {
    pub fn new(re: BigRational, im: BigRational, d: i64) -> Self {
        QuadElem { re, im, d }.normalized()
    }

    pub fn rational(re: BigRational) -> Self {
        QuadElem { re, im: Zero::zero(), d: 0 }
    }

    /// `√d` itself.
    pub fn sqrt(d: i64) -> Self {
        QuadElem::new(Zero::zero(), One::one(), d)
    }

    fn normalized(mut self) -> Self {
        if self.d == 0 {
            self.im = Zero::zero();
        }
        self
    }

    fn field(&self, o: &Self) -> i64 {
        match (self.d, o.d) {
            (a, b) if a == b => a,
            (0, b) => b,
            (a, 0) => a,
            (_, b) if Zero::is_zero(&self.im) => b,
            (a, _) if Zero::is_zero(&o.im) => a,
            (a, b) => panic!("mixing Q(sqrt({a})) and Q(sqrt({b}))"),
        }
    }
}

impl PartialEq for QuadElem {
    fn eq(&self, o: &Self) -> bool {
        self.re == o.re && self.im == o.im && (Zero::is_zero(&self.im) || self.d == o.d)
    }
}

impl Eq for QuadElem {}

impl Coeff for QuadElem {
    fn zero() -> Self {
        QuadElem::rational(Zero::zero())
    }
    fn one() -> Self {
        QuadElem::rational(One::one())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn add(&self, o: &Self) -> Self {
        QuadElem::new(&self.re + &o.re, &self.im + &o.im, self.field(o))
    }
    fn sub(&self, o: &Self) -> Self {
        QuadElem::new(&self.re - &o.re, &self.im - &o.im, self.field(o))
    }
    fn mul(&self, o: &Self) -> Self {
        let d = self.field(o);
        let dd = BigRational::from_integer(BigInt::from(d));
        QuadElem::new(
            &self.re * &o.re + dd * &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
            d,
        )
    }
    fn neg(&self) -> Self {
        QuadElem { re: -&self.re, im: -&self.im, d: self.d }
    }
    fn from_rational(q: &BigRational) -> Self {
        QuadElem::rational(q.clone())
    }
}

impl Field for QuadElem {
    fn inv(&self) -> Result<Self> {
        if Coeff::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        let dd = BigRational::from_integer(BigInt::from(self.d));
        let norm = &self.re * &self.re - dd * &self.im * &self.im;
        if Zero::is_zero(&norm) {
            // only possible when d is a perfect square, which is excluded
            return Err(Error::DivisionByZero);
        }
        Ok(QuadElem::new(&self.re / &norm, -&self.im / &norm, self.d))
    }
}

impl fmt::Display for QuadElem {
    /// `p/q`, `r/s*sqrt(d)` or `p/q+r/s*sqrt(d)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = rational_to_string(&self.re);
        if Zero::is_zero(&self.im) {
            return f.write_str(&re);
        }
        let im = format!("{}*sqrt({})", rational_to_string(&self.im), self.d);
        if Zero::is_zero(&self.re) {
            f.write_str(&im)
        } else if self.im.is_negative() {
            write!(f, "{re}{im}")
        } else {
            write!(f, "{re}+{im}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn i_squared() {
        let i = QuadElem::sqrt(-1);
        assert_eq!(i.mul(&i), QuadElem::from_int(-1));
        let z = QuadElem::new(q(3), q(4), -1);
        let w = z.inv().unwrap();
        assert_eq!(z.mul(&w), QuadElem::one());
    }

    #[test]
    fn rational_adopts_field() {
        let s = QuadElem::sqrt(-3);
        let r = QuadElem::from_int(2);
        assert_eq!(r.add(&s).d, -3);
        assert_eq!(s.mul(&s), QuadElem::from_int(-3));
    }

    #[test]
    fn display() {
        assert_eq!(QuadElem::new(q(1), BigRational::new((-1).into(), 2.into()), 5).to_string(), "1-1/2*sqrt(5)");
        assert_eq!(QuadElem::sqrt(-1).to_string(), "1*sqrt(-1)");
        assert_eq!(QuadElem::from_int(7).to_string(), "7");
    }
}
