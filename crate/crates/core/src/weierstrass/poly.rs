use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{Coeff, Field};
use crate::error::{Error, Result};

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

pub type QPoly = Poly<BigRational>;

impl<C: Coeff> Default for Poly<C> {
    fn default() -> Self {
        Poly::zero()
    }
}

impl<C: Coeff> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn monomial(c: C, k: usize) -> Self {
        let mut v = vec![C::zero(); k];
        v.push(c);
        Self::new(v)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&n| C::from_int(n)).collect())
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> C {
        self.coeffs.last().cloned().unwrap_or_else(C::zero)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs.iter().rev().fold(C::zero(), |acc, c| acc.mul(x).add(c))
    }

    /// `self(g)`.
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| &(&acc * g) + &Self::constant(c.clone()))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&C::from_int(i as i64)))
                .collect(),
        )
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<C: Field> Poly<C> {
    pub fn monic(&self) -> Self {
        match self.lead().inv() {
            Ok(l) => self.scale(&l),
            Err(_) => Self::zero(),
        }
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = d.lead().inv()?;
        let mut r = self.coeffs.clone();
        let n = r.len();
        if n <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![C::zero(); n - dd];
        for i in (dd..n).rev() {
            let c = r[i].mul(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[i - dd + j] = r[i - dd + j].sub(&c.mul(dj));
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    /// Quotient of an exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::InvalidFibration("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's algorithm: monic `g₁, g₂, …` with `self = c·∏ gᵢ^i`, each `gᵢ`
    /// squarefree and pairwise coprime. Entry `i-1` holds `gᵢ`.
    pub fn squarefree_decomposition(&self) -> Vec<Self> {
        if self.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let mut c = df.div_exact(&a0).expect("gcd divides");
        let mut out = Vec::new();
        while b.degree() != Some(0) {
            let d = &c - &b.derivative();
            let a = b.gcd(&d);
            b = b.div_exact(&a).expect("gcd divides");
            c = d.div_exact(&a).expect("gcd divides");
            out.push(a);
        }
        out
    }
}

impl QPoly {
    /// Integer polynomial with content 1 and positive leading coefficient
    /// that is a rational multiple of `self`.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|x| x / &g * &sign).collect()
    }

    /// `a_n t^n + … + a_0` in the variable `var`, integer form of the
    /// primitive associate (for reporting factors).
    pub fn display_primitive(&self, var: &str) -> String {
        let p = QPoly::new(self.primitive_integer().into_iter().map(BigRational::from_integer).collect());
        p.display_with(var)
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push(if neg { '-' } else { '+' });
            }
            let unit = a.is_one();
            match i {
                0 => s.push_str(&a.to_string()),
                _ => {
                    if !unit {
                        s.push_str(&a.to_string());
                        if !a.is_integer() {
                            s.push('*');
                        }
                    }
                    s.push_str(var);
                    if i > 1 {
                        s.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        s
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl<C: Coeff> Coeff for Poly<C> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
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
        Poly::constant(C::from_rational(q))
    }
}

impl<C: Coeff> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, o: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }
}

impl<C: Coeff> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, o: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect())
    }
}

impl<C: Coeff> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, o: &Poly<C>) -> Poly<C> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![C::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        Poly::new(v)
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::new(self.coeffs.iter().map(Coeff::neg).collect())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<C: Coeff> $tr for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, o: Poly<C>) -> Poly<C> {
                std::ops::$tr::$m(&self, &o)
            }
        }
        impl<C: Coeff> $tr<&Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, o: &Poly<C>) -> Poly<C> {
                std::ops::$tr::$m(&self, o)
            }
        }
        impl<C: Coeff> $tr<Poly<C>> for &Poly<C> {
            type Output = Poly<C>;
            fn $m(self, o: Poly<C>) -> Poly<C> {
                std::ops::$tr::$m(self, &o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

/// A quotient `num / den` of polynomials, compared by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RatFn<C> {
    pub num: Poly<C>,
    pub den: Poly<C>,
}

impl<C: Field> RatFn<C> {
    pub fn new(num: Poly<C>, den: Poly<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFn { num, den })
    }

    pub fn poly(p: Poly<C>) -> Self {
        RatFn { num: p, den: Poly::one() }
    }

    pub fn add(&self, o: &Self) -> Self {
        RatFn { num: &(&self.num * &o.den) + &(&o.num * &self.den), den: &self.den * &o.den }
    }

    pub fn sub(&self, o: &Self) -> Self {
        RatFn { num: &(&self.num * &o.den) - &(&o.num * &self.den), den: &self.den * &o.den }
    }

    pub fn mul(&self, o: &Self) -> Self {
        RatFn { num: &self.num * &o.num, den: &self.den * &o.den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        assert_eq!(a.pow(3), p(&[1, 3, 3, 1]));
        assert_eq!(&a * &p(&[-1, 1]), p(&[-1, 0, 1]));
        assert_eq!(&a - &a, QPoly::zero());
        assert_eq!(p(&[1, 2, 3]).derivative(), p(&[2, 6]));
        assert_eq!(p(&[0, 0, 1]).compose(&a), p(&[1, 2, 1]));
        assert_eq!(p(&[3, 0, 1]).eval(&BigRational::from_integer(2.into())), BigRational::from_integer(7.into()));
    }

    #[test]
    fn division_and_gcd() {
        let f = p(&[-1, 0, 1]);
        let (q, r) = p(&[1, 0, 0, 1]).div_rem(&f).unwrap();
        assert_eq!(q, p(&[0, 1]));
        assert_eq!(r, p(&[1, 1]));
        assert_eq!(f.gcd(&p(&[1, 2, 1])), p(&[1, 1]));
        assert_eq!(f.div_rem(&QPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn yun() {
        // t^5 (t-1)^2
        let f = &p(&[0, 1]).pow(5) * &p(&[-1, 1]).pow(2);
        let sq = f.squarefree_decomposition();
        assert_eq!(sq.len(), 5);
        assert_eq!(sq[1], p(&[-1, 1]));
        assert_eq!(sq[4], p(&[0, 1]));
        assert!(sq[0].degree() == Some(0) && sq[2].degree() == Some(0));
        assert!(p(&[7]).squarefree_decomposition().is_empty());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[9, 33, 64]).to_string(), "64t^2+33t+9");
        assert_eq!(p(&[0, -1, 0, 1]).to_string(), "t^3-t");
        let half = QPoly::new(vec![BigRational::new(1.into(), 2.into()), BigRational::new(3.into(), 4.into())]);
        assert_eq!(half.display_primitive("t"), "3t+2");
    }

    #[test]
    fn nested_coefficients() {
        // (k t + 1)^2 with k a polynomial variable
        let k: Poly<QPoly> = Poly::constant(QPoly::x());
        let t: Poly<QPoly> = Poly::x();
        let f = (&(&k * &t) + &Poly::one()).pow(2);
        assert_eq!(f.coeff(2), p(&[0, 0, 1]));
        assert_eq!(f.coeff(1), p(&[0, 2]));
    }
}
