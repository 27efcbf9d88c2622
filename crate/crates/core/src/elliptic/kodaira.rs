use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::IntMatrix;
use crate::error::{Error, Result};

/// Kodaira type of a singular fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaKind {
    /// `I_n`, `n ≥ 1`.
    I(u32),
    /// `I_n*`, `n ≥ 0`.
    IStar(u32),
    II,
    III,
    IV,
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaKind {
    /// Number of irreducible components `m_v`.
    pub fn components(self) -> u32 {
        match self {
            KodairaKind::I(n) => n,
            KodairaKind::IStar(n) => n + 5,
            KodairaKind::II => 1,
            KodairaKind::III => 2,
            KodairaKind::IV => 3,
            KodairaKind::IVStar => 7,
            KodairaKind::IIIStar => 8,
            KodairaKind::IIStar => 9,
        }
    }

    /// Topological Euler number `e_v`.
    pub fn euler(self) -> u32 {
        match self {
            KodairaKind::I(n) => n,
            KodairaKind::IStar(n) => n + 6,
            KodairaKind::II => 2,
            KodairaKind::III => 3,
            KodairaKind::IV => 4,
            KodairaKind::IVStar => 8,
            KodairaKind::IIIStar => 9,
            KodairaKind::IIStar => 10,
        }
    }

    /// Number of simple (multiplicity one) components, which is also
    /// `|det|` of the root lattice.
    pub fn simple_components(self) -> u32 {
        match self {
            KodairaKind::I(n) => n,
            KodairaKind::IStar(_) => 4,
            KodairaKind::II | KodairaKind::IIStar => 1,
            KodairaKind::III | KodairaKind::IIIStar => 2,
            KodairaKind::IV | KodairaKind::IVStar => 3,
        }
    }

    /// Root lattice name of the non-identity components, e.g. `"E7"`, or
    /// `None` for `I1` and `II`.
    pub fn root_type(self) -> Option<String> {
        match self {
            KodairaKind::I(1) | KodairaKind::II => None,
            KodairaKind::I(n) => Some(format!("A{}", n - 1)),
            KodairaKind::III => Some("A1".into()),
            KodairaKind::IV => Some("A2".into()),
            KodairaKind::IStar(n) => Some(format!("D{}", n + 4)),
            KodairaKind::IVStar => Some("E6".into()),
            KodairaKind::IIIStar => Some("E7".into()),
            KodairaKind::IIStar => Some("E8".into()),
        }
    }

    /// Edges between non-identity components `1..m_v`, and the components
    /// adjacent to the identity component.
    ///
    /// Labelling: `I_n` is the path `Θ1..Θ(n-1)`; `I_n*` has `Θ1` and the
    /// identity on `Θ2`, the chain `Θ2..Θ(n+2)`, and `Θ(n+3)`, `Θ(n+4)` on
    /// `Θ(n+2)`; `IV*` is the chain `Θ1..Θ5` with `Θ6` on `Θ3`; `III*` is
    /// the chain `Θ1..Θ6` with `Θ7` on `Θ4`; `II*` is the chain `Θ1..Θ7`
    /// with `Θ8` on `Θ3`. In the starred types the identity hangs off the
    /// branch (`IV*`) or the far end of the long arm.
    pub fn dual_graph(self) -> (Vec<(u32, u32)>, Vec<u32>) {
        let chain = |a: u32, b: u32| (a..b).map(|i| (i, i + 1)).collect::<Vec<_>>();
        match self {
            KodairaKind::I(1) | KodairaKind::II => (vec![], vec![]),
            KodairaKind::I(2) => (vec![], vec![1, 1]),
            KodairaKind::I(n) => (chain(1, n - 1), vec![1, n - 1]),
            KodairaKind::III => (vec![], vec![1, 1]),
            KodairaKind::IV => (vec![(1, 2)], vec![1, 2]),
            KodairaKind::IStar(n) => {
                let mut e = chain(1, n + 2);
                e.push((n + 2, n + 3));
                e.push((n + 2, n + 4));
                (e, vec![2])
            }
            KodairaKind::IVStar => {
                let mut e = chain(1, 5);
                e.push((3, 6));
                (e, vec![6])
            }
            KodairaKind::IIIStar => {
                let mut e = chain(1, 6);
                e.push((4, 7));
                (e, vec![6])
            }
            KodairaKind::IIStar => {
                let mut e = chain(1, 7);
                e.push((3, 8));
                (e, vec![7])
            }
        }
    }

    /// Indices of the non-identity simple components.
    pub fn simple_nonidentity(self) -> Vec<u32> {
        match self {
            KodairaKind::I(n) => (1..n).collect(),
            KodairaKind::III => vec![1],
            KodairaKind::IV => vec![1, 2],
            KodairaKind::IStar(n) => vec![1, n + 3, n + 4],
            KodairaKind::IVStar => vec![1, 5],
            KodairaKind::IIIStar => vec![1],
            KodairaKind::II | KodairaKind::IIStar => vec![],
        }
    }
}

impl fmt::Display for KodairaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaKind::I(n) => write!(f, "I{n}"),
            KodairaKind::IStar(n) => write!(f, "I{n}*"),
            KodairaKind::II => f.write_str("II"),
            KodairaKind::III => f.write_str("III"),
            KodairaKind::IV => f.write_str("IV"),
            KodairaKind::IVStar => f.write_str("IV*"),
            KodairaKind::IIIStar => f.write_str("III*"),
            KodairaKind::IIStar => f.write_str("II*"),
        }
    }
}

impl FromStr for KodairaKind {
    type Err = Error;

    /// Accepts `I8`, `I_8`, `I0*`, `I_4^*`, `III*`, `IV`, ...
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !matches!(c, '_' | '^' | ' ' | '{' | '}')).collect();
        let bad = || Error::Parse(format!("unknown Kodaira type {s:?}"));
        let named = match t.as_str() {
            "II" => Some(KodairaKind::II),
            "III" => Some(KodairaKind::III),
            "IV" => Some(KodairaKind::IV),
            "II*" => Some(KodairaKind::IIStar),
            "III*" => Some(KodairaKind::IIIStar),
            "IV*" => Some(KodairaKind::IVStar),
            _ => None,
        };
        if let Some(k) = named {
            return Ok(k);
        }
        let rest = t.strip_prefix('I').ok_or_else(bad)?;
        let (digits, star) = match rest.strip_suffix('*') {
            Some(d) => (d, true),
            None => (rest, false),
        };
        let n: u32 = digits.parse().map_err(|_| bad())?;
        match (star, n) {
            (true, n) => Ok(KodairaKind::IStar(n)),
            (false, 0) => Err(bad()),
            (false, n) => Ok(KodairaKind::I(n)),
        }
    }
}

impl Serialize for KodairaKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for KodairaKind {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Negative-definite root lattice Gram on the non-identity components,
/// indexed `1..m_v` in the labelling of [`KodairaKind::dual_graph`].
pub fn ade_block(kind: KodairaKind) -> Result<IntMatrix> {
    let n = kind.components() as usize - 1;
    if n == 0 {
        return Err(Error::InvalidFibration(format!("{kind} has no non-identity components")));
    }
    let mut g = IntMatrix::zeros(n, n);
    for i in 0..n {
        g.set(i, i, (-2).into());
    }
    for (a, b) in kind.dual_graph().0 {
        let (a, b) = (a as usize - 1, b as usize - 1);
        g.set(a, b, 1.into());
        g.set(b, a, 1.into());
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn small_blocks() {
        assert_eq!(
            ade_block(KodairaKind::I(3)).unwrap(),
            IntMatrix::from_rows(&[vec![-2, 1], vec![1, -2]]).unwrap()
        );
        assert!(ade_block(KodairaKind::I(1)).is_err());
        assert!(ade_block(KodairaKind::II).is_err());
    }

    #[test]
    fn block_determinants() {
        let cases = [
            (KodairaKind::IIIStar, -2i32),
            (KodairaKind::I(8), -8),
            (KodairaKind::IVStar, 3),
            (KodairaKind::IIStar, 1),
            (KodairaKind::IStar(0), 4),
            (KodairaKind::IStar(3), -4),
            (KodairaKind::III, -2),
            (KodairaKind::IV, 3),
        ];
        for (k, d) in cases {
            assert_eq!(ade_block(k).unwrap().det().unwrap(), BigInt::from(d), "{k}");
            assert_eq!(d.unsigned_abs(), k.simple_components(), "{k}");
        }
    }

    #[test]
    fn counts() {
        let total: u32 = [KodairaKind::IIIStar, KodairaKind::I(8), KodairaKind::I(3), KodairaKind::I(2)]
            .iter()
            .map(|k| k.euler())
            .sum();
        assert_eq!(total + 2, 24);
        assert_eq!(KodairaKind::IStar(4).components(), 9);
        assert_eq!(KodairaKind::IStar(4).euler(), 10);
    }

    #[test]
    fn parsing() {
        for s in ["I8", "I_8", "I0*", "I_4^*", "II", "III", "IV", "IV*", "III*", "II*"] {
            let k: KodairaKind = s.parse().unwrap();
            assert_eq!(k.to_string().parse::<KodairaKind>().unwrap(), k);
        }
        assert_eq!("I_4^*".parse::<KodairaKind>().unwrap(), KodairaKind::IStar(4));
        assert!("I0".parse::<KodairaKind>().is_err());
        assert!("V".parse::<KodairaKind>().is_err());
    }

    #[test]
    fn simple_components_match_lists() {
        for k in [KodairaKind::I(5), KodairaKind::IStar(2), KodairaKind::IVStar, KodairaKind::IIIStar] {
            assert_eq!(k.simple_nonidentity().len() as u32 + 1, k.simple_components());
        }
    }
}
