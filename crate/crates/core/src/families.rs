//! One-parameter K3 families with generic transcendental lattice `U ⊕ ⟨n⟩`,
//! and the transcendental lattices of their singular members.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{BinaryQuadraticForm, Lattice};

/// The three families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `X_k`, generic transcendental lattice `U ⊕ ⟨6⟩`.
    Verrill,
    /// `Y_k`, generic transcendental lattice `U ⊕ ⟨12⟩`.
    AperyFermi,
    /// `Z_k`, generic transcendental lattice `U ⊕ ⟨24⟩`.
    Z,
}

impl Family {
    pub fn spec(self) -> FamilySpec {
        match self {
            Family::Verrill => FamilySpec { family: self, generic_n: 6, period_coeffs: Some([-3, 6, 1]) },
            Family::AperyFermi => FamilySpec { family: self, generic_n: 12, period_coeffs: Some([-6, 12, 1]) },
            Family::Z => FamilySpec { family: self, generic_n: 24, period_coeffs: None },
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Verrill => "verrill",
            Family::AperyFermi => "apery-fermi",
            Family::Z => "z",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "verrill" | "x" => Ok(Family::Verrill),
            "apery-fermi" | "apery" | "y" => Ok(Family::AperyFermi),
            "z" => Ok(Family::Z),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

/// A family's generic transcendental lattice `U ⊕ ⟨n⟩` with basis
/// `γ₁, γ₂, γ₃` (Gram `[[0,0,1],[0,n,0],[1,0,0]]`), and the coefficients
/// `(c₂, c₁, c₀)` of the period condition `c₂pτ² + c₁qτ + c₀r = 0` under
/// which `pγ₁ + qγ₂ + rγ₃` becomes algebraic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub generic_n: i64,
    pub period_coeffs: Option<[i64; 3]>,
}

impl FamilySpec {
    pub fn generic_lattice(&self) -> Lattice {
        Lattice::hyperbolic_plus(self.generic_n)
    }

    fn coeffs(&self) -> Result<[i64; 3]> {
        self.period_coeffs
            .ok_or_else(|| Error::InvalidTau(format!("no period condition is known for family {}", self.family)))
    }
}

/// `Aτ² + Bτ + C = 0` with `A > 0`, `gcd(A, B, C) = 1` and `B² − 4AC < 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauEquation {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl TauEquation {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a <= 0 {
            return Err(Error::InvalidTau(format!("leading coefficient {a} must be positive")));
        }
        if a.gcd(&b).gcd(&c) != 1 {
            return Err(Error::InvalidTau(format!("({a}, {b}, {c}) is not primitive")));
        }
        let disc = i128::from(b) * i128::from(b) - 4 * i128::from(a) * i128::from(c);
        if disc >= 0 {
            return Err(Error::InvalidTau(format!("discriminant {disc} is not negative")));
        }
        Ok(TauEquation { a, b, c })
    }

    pub fn discriminant(&self) -> i128 {
        i128::from(self.b) * i128::from(self.b) - 4 * i128::from(self.a) * i128::from(self.c)
    }
}

impl fmt::Display for TauEquation {
    /// `3τ^2-6τ+4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |c: i64, mono: &str, first: bool| -> String {
            if c == 0 {
                return String::new();
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            if mag == 1 && !mono.is_empty() {
                format!("{sign}{mono}")
            } else {
                format!("{sign}{mag}{mono}")
            }
        };
        write!(f, "{}{}{}", term(self.a, "τ^2", true), term(self.b, "τ", false), term(self.c, "", false))
    }
}

/// The primitive `(p, q, r)` with `(c₂p, c₁q, c₀r)` proportional to
/// `(A, B, C)` with a positive factor.
pub fn algebraic_vector(spec: &FamilySpec, tau: &TauEquation) -> Result<[i64; 3]> {
    let c = spec.coeffs()?;
    let abc = [tau.a, tau.b, tau.c];
    // smallest s > 0 with c_i | s·abc_i for every i
    let s = c.iter().zip(&abc).fold(1i64, |s, (&ci, &x)| {
        let need = ci.abs() / ci.abs().gcd(&x);
        s.lcm(&need)
    });
    let mut v = [0i64; 3];
    for i in 0..3 {
        v[i] = s * abc[i] / c[i];
    }
    let g = v[0].gcd(&v[1]).gcd(&v[2]);
    Ok(v.map(|x| x / g))
}

/// Transcendental lattice of the singular member with the given `τ`: the
/// reduced orthogonal complement of the algebraic vector in `U ⊕ ⟨n⟩`.
pub fn singular_transcendental(spec: &FamilySpec, tau: &TauEquation) -> Result<BinaryQuadraticForm> {
    singular_transcendental_with(spec, tau, true)
}

/// As [`singular_transcendental`]; with `reduce = false` the complement's
/// Gram matrix in the basis from the kernel computation is returned as is.
pub fn singular_transcendental_with(spec: &FamilySpec, tau: &TauEquation, reduce: bool) -> Result<BinaryQuadraticForm> {
    let v: Vec<BigInt> = algebraic_vector(spec, tau)?.iter().map(|&x| BigInt::from(x)).collect();
    let l = spec.generic_lattice();
    let norm = l.pair(&v, &v)?;
    if !norm.is_negative() {
        return Err(Error::NonNegativeAlgebraicClass(norm.to_string()));
    }
    let form = BinaryQuadraticForm::from_lattice(&l.orthogonal_complement(&v)?)?;
    if reduce {
        form.reduce()
    } else {
        Ok(form)
    }
}

/// Factorizations `det_S = l² · det_J` with `l > 0`, and whether `|det_S|`
/// is squarefree, in which case `l = 1` is forced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KeumOptions {
    pub det: i64,
    pub options: Vec<(u64, i64)>,
    pub squarefree: bool,
}

impl KeumOptions {
    pub fn to_json(&self) -> Value {
        json!({
            "det": self.det,
            "options": self.options.iter().map(|(l, d)| json!({"l": l, "det_j": d})).collect::<Vec<_>>(),
            "squarefree": self.squarefree,
        })
    }
}

pub fn keum_options(det_s: i64) -> Result<KeumOptions> {
    if det_s == 0 {
        return Err(Error::Singular);
    }
    let n = det_s.unsigned_abs();
    let mut options = Vec::new();
    let mut l = 1u64;
    while l * l <= n {
        if n.is_multiple_of(l * l) {
            options.push((l, det_s / (l * l) as i64));
        }
        l += 1;
    }
    let squarefree = options.len() == 1;
    Ok(KeumOptions { det: det_s, options, squarefree })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau(a: i64, b: i64, c: i64) -> TauEquation {
        TauEquation::new(a, b, c).unwrap()
    }

    #[test]
    fn vectors() {
        let x = Family::Verrill.spec();
        let y = Family::AperyFermi.spec();
        let sign = |v: [i64; 3]| if v[0] < 0 { v } else { v.map(|x| -x) };
        assert_eq!(sign(algebraic_vector(&x, &tau(3, -6, 4)).unwrap()), [-1, -1, 4]);
        assert_eq!(algebraic_vector(&x, &tau(6, 0, 1)).unwrap(), [-2, 0, 1]);
        assert_eq!(algebraic_vector(&y, &tau(6, 2, 1)).unwrap(), [-6, 1, 6]);
    }

    #[test]
    fn forms() {
        let x = Family::Verrill.spec();
        let y = Family::AperyFermi.spec();
        let f = |s: &FamilySpec, t| singular_transcendental(s, &t).unwrap().to_string();
        assert_eq!(f(&x, tau(3, -3, 1)), "[2 1 2]");
        assert_eq!(f(&y, tau(2, 2, 1)), "[6 0 6]");
        assert_eq!(f(&x, tau(6, 4, 1)), "[2 0 4]");
    }

    #[test]
    fn tau_validation() {
        assert!(TauEquation::new(0, 1, 1).is_err());
        assert!(TauEquation::new(2, 0, 2).is_err());
        assert!(TauEquation::new(1, 3, 1).is_err());
        assert_eq!(tau(24, -6, 1).to_string(), "24τ^2-6τ+1");
        assert_eq!(tau(1, 0, 1).to_string(), "τ^2+1");
    }

    #[test]
    fn z_has_no_period_condition() {
        assert!(algebraic_vector(&Family::Z.spec(), &tau(1, 0, 1)).is_err());
    }

    #[test]
    fn keum() {
        let k = keum_options(15).unwrap();
        assert_eq!((k.options, k.squarefree), (vec![(1, 15)], true));
        let k = keum_options(96).unwrap();
        assert_eq!(k.options, vec![(1, 96), (2, 24), (4, 6)]);
        assert!(!k.squarefree);
        assert_eq!(keum_options(1).unwrap().options, vec![(1, 1)]);
        assert_eq!(keum_options(-12).unwrap().options, vec![(1, -12), (2, -3)]);
    }
}
