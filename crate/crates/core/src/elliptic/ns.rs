use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::kodaira::{ade_block, KodairaKind};
use crate::algebra::IntMatrix;
use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// One singular fiber of a fibration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberSpec {
    pub kind: KodairaKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub place: Option<String>,
    /// Key used by section incidence; defaults to the kind, or
    /// `kind(place)` when the kind occurs more than once.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// Component names are `prefix` followed by the index; defaults to
    /// `label_`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prefix: Option<String>,
    /// Component indices left out of the basis.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub drop: Vec<u32>,
}

impl FiberSpec {
    pub fn new(kind: KodairaKind) -> Self {
        FiberSpec { kind, place: None, label: None, prefix: None, drop: vec![] }
    }

    pub fn at(mut self, place: &str) -> Self {
        self.place = Some(place.into());
        self
    }

    pub fn labelled(mut self, label: &str, prefix: &str) -> Self {
        self.label = Some(label.into());
        self.prefix = Some(prefix.into());
        self
    }

    pub fn dropping(mut self, drop: &[u32]) -> Self {
        self.drop = drop.to_vec();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionSpec {
    pub name: String,
    pub order: u32,
}

/// Intersection data of a section with the zero section, the fibers and the
/// other sections.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionIncidence {
    pub name: String,
    #[serde(default)]
    pub meets_zero: i64,
    /// Fiber label to the index of the component met; absent means the
    /// identity component.
    #[serde(default)]
    pub hits: BTreeMap<String, u32>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meets: BTreeMap<String, i64>,
}

impl SectionIncidence {
    pub fn new(name: &str, meets_zero: i64, hits: &[(&str, u32)]) -> Self {
        SectionIncidence {
            name: name.into(),
            meets_zero,
            hits: hits.iter().map(|(l, i)| (l.to_string(), *i)).collect(),
            meets: BTreeMap::new(),
        }
    }

    pub fn meeting(mut self, other: &str, n: i64) -> Self {
        self.meets.insert(other.into(), n);
        self
    }
}

/// Fiber configuration plus section data of an elliptic K3 surface.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationSpec {
    pub fibers: Vec<FiberSpec>,
    #[serde(default)]
    pub mw_rank: u32,
    #[serde(default)]
    pub torsion: Vec<TorsionSpec>,
    #[serde(default)]
    pub sections: Vec<SectionIncidence>,
    /// Explicit basis order by divisor name; the default is `O`, `f`,
    /// torsion sections, fiber components, then the remaining sections.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Divisor {
    Zero,
    Fiber,
    Section(usize),
    Component { fiber: usize, index: u32 },
}

/// A Néron–Severi Gram matrix with the names of its basis divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NsGram {
    pub gram: IntMatrix,
    pub labels: Vec<String>,
}

impl NsGram {
    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::new(self.gram.clone())
    }
}

impl FibrationSpec {
    pub fn euler_sum(&self) -> u32 {
        self.fibers.iter().map(|f| f.kind.euler()).sum()
    }

    /// Effective fiber labels, in fiber order.
    pub fn fiber_labels(&self) -> Vec<String> {
        let mut count: HashMap<KodairaKind, usize> = HashMap::new();
        for f in &self.fibers {
            *count.entry(f.kind).or_default() += 1;
        }
        let mut seen: HashMap<KodairaKind, usize> = HashMap::new();
        self.fibers
            .iter()
            .map(|f| {
                if let Some(l) = &f.label {
                    return l.clone();
                }
                let j = seen.entry(f.kind).or_default();
                *j += 1;
                match (count[&f.kind], &f.place) {
                    (1, _) => f.kind.to_string(),
                    (_, Some(p)) => format!("{}({p})", f.kind),
                    (_, None) => format!("{}#{j}", f.kind),
                }
            })
            .collect()
    }

    fn component_name(&self, labels: &[String], fiber: usize, index: u32) -> String {
        match &self.fibers[fiber].prefix {
            Some(p) => format!("{p}{index}"),
            None => format!("{}_{index}", labels[fiber]),
        }
    }

    fn section_index(&self, name: &str) -> Option<usize> {
        self.sections.iter().position(|s| s.name == name)
    }

    fn is_torsion(&self, name: &str) -> bool {
        self.torsion.iter().any(|t| t.name == name)
    }

    /// Checks labels, incidence indices, the Euler sum and the Picard bound.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidFibration(m));
        if self.euler_sum() != 24 {
            return bad(format!("Euler numbers sum to {}, not 24", self.euler_sum()));
        }
        let labels = self.fiber_labels();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return bad(format!("duplicate fiber label {l:?}"));
            }
        }
        for (f, l) in self.fibers.iter().zip(&labels) {
            if let Some(&d) = f.drop.iter().find(|&&d| d == 0 || d >= f.kind.components()) {
                return bad(format!("fiber {l} has no droppable component {d}"));
            }
        }
        for (i, s) in self.sections.iter().enumerate() {
            if self.sections[..i].iter().any(|t| t.name == s.name) || matches!(s.name.as_str(), "O" | "f") {
                return bad(format!("section name {:?} is reserved or repeated", s.name));
            }
            if s.meets_zero < 0 {
                return bad(format!("section {} meets O negatively", s.name));
            }
            for (label, &idx) in &s.hits {
                let Some(j) = labels.iter().position(|l| l == label) else {
                    return bad(format!("section {} hits unknown fiber {label:?}", s.name));
                };
                if idx >= self.fibers[j].kind.components() {
                    return bad(format!("fiber {label} has no component {idx}"));
                }
            }
            for other in s.meets.keys() {
                if self.section_index(other).is_none() {
                    return bad(format!("section {} meets unknown section {other:?}", s.name));
                }
            }
        }
        for t in &self.torsion {
            if self.section_index(&t.name).is_none() {
                return bad(format!("torsion section {:?} has no incidence data", t.name));
            }
            if t.order < 2 {
                return bad(format!("torsion section {:?} has order {}", t.name, t.order));
            }
        }
        shioda_tate_rank(self)?;
        Ok(())
    }

    fn extended_divisors(&self) -> Vec<(String, Divisor)> {
        let labels = self.fiber_labels();
        let mut out = vec![("O".to_string(), Divisor::Zero), ("f".to_string(), Divisor::Fiber)];
        for (i, s) in self.sections.iter().enumerate() {
            out.push((s.name.clone(), Divisor::Section(i)));
        }
        for (j, f) in self.fibers.iter().enumerate() {
            for index in 1..f.kind.components() {
                out.push((self.component_name(&labels, j, index), Divisor::Component { fiber: j, index }));
            }
        }
        out
    }

    fn pairing(&self, labels: &[String], blocks: &[Option<IntMatrix>], x: Divisor, y: Divisor) -> Result<i64> {
        use Divisor::*;
        Ok(match (x, y) {
            (Zero, Zero) | (Section(_), Section(_)) if x == y => -2,
            (Zero, Fiber) | (Fiber, Zero) | (Fiber, Section(_)) | (Section(_), Fiber) => 1,
            (Fiber, Fiber) | (Zero, Component { .. }) | (Component { .. }, Zero) => 0,
            (Fiber, Component { .. }) | (Component { .. }, Fiber) => 0,
            (Zero, Section(i)) | (Section(i), Zero) => self.sections[i].meets_zero,
            (Section(i), Section(j)) => {
                let (a, b) = (&self.sections[i], &self.sections[j]);
                match (a.meets.get(&b.name), b.meets.get(&a.name)) {
                    (Some(p), Some(q)) if p != q => {
                        return Err(Error::InvalidFibration(format!(
                            "sections {} and {} have inconsistent intersection data",
                            a.name, b.name
                        )))
                    }
                    (Some(p), _) | (_, Some(p)) => *p,
                    (None, None) => 0,
                }
            }
            (Section(i), Component { fiber, index }) | (Component { fiber, index }, Section(i)) => {
                i64::from(self.sections[i].hits.get(&labels[fiber]) == Some(&index))
            }
            (Component { fiber: f, index: a }, Component { fiber: g, index: b }) => {
                if f != g {
                    0
                } else {
                    let m = blocks[f].as_ref().expect("fiber with components");
                    i64::try_from(&m[(a as usize - 1, b as usize - 1)]).expect("small entry")
                }
            }
            _ => unreachable!("all divisor pairs are covered"),
        })
    }

    fn blocks(&self) -> Vec<Option<IntMatrix>> {
        self.fibers.iter().map(|f| ade_block(f.kind).ok()).collect()
    }

    /// Gram matrix over every divisor (no drops), with names.
    pub fn extended_gram(&self) -> Result<NsGram> {
        self.validate()?;
        self.extended_gram_unchecked()
    }

    fn extended_gram_unchecked(&self) -> Result<NsGram> {
        let divs = self.extended_divisors();
        let labels = self.fiber_labels();
        let blocks = self.blocks();
        let n = divs.len();
        let mut data = Vec::with_capacity(n * n);
        for (_, x) in &divs {
            for (_, y) in &divs {
                data.push(BigInt::from(self.pairing(&labels, &blocks, *x, *y)?));
            }
        }
        Ok(NsGram { gram: IntMatrix::new(n, n, data)?, labels: divs.into_iter().map(|(s, _)| s).collect() })
    }

    /// Positions in the extended divisor list of the chosen basis.
    fn basis_positions(&self) -> Result<Vec<usize>> {
        let divs = self.extended_divisors();
        if let Some(names) = &self.basis {
            return names
                .iter()
                .map(|n| {
                    divs.iter()
                        .position(|(m, _)| m == n)
                        .ok_or_else(|| Error::InvalidFibration(format!("basis names unknown divisor {n:?}")))
                })
                .collect();
        }
        let keep = |d: &Divisor| match *d {
            Divisor::Component { fiber, index } => !self.fibers[fiber].drop.contains(&index),
            _ => true,
        };
        let pick = |pred: &dyn Fn(&Divisor) -> bool| -> Vec<usize> {
            divs.iter().enumerate().filter(|(_, (_, d))| pred(d) && keep(d)).map(|(i, _)| i).collect()
        };
        let mut out = pick(&|d| matches!(d, Divisor::Zero | Divisor::Fiber));
        // torsion sections in the order listed under `torsion`
        for t in &self.torsion {
            out.push(2 + self.section_index(&t.name).expect("validated"));
        }
        out.extend(pick(&|d| matches!(d, Divisor::Component { .. })));
        out.extend(pick(&|d| match d {
            Divisor::Section(i) => !self.is_torsion(&self.sections[*i].name),
            _ => false,
        }));
        Ok(out)
    }
}

/// The Néron–Severi Gram matrix in the chosen basis.
pub fn build_ns_gram(spec: &FibrationSpec) -> Result<NsGram> {
    let ext = spec.extended_gram()?;
    let pos = spec.basis_positions()?;
    let n = pos.len();
    let data = pos.iter().flat_map(|&i| pos.iter().map(move |&j| (i, j))).map(|(i, j)| ext.gram[(i, j)].clone());
    Ok(NsGram { gram: IntMatrix::new(n, n, data.collect())?, labels: pos.iter().map(|&i| ext.labels[i].clone()).collect() })
}

/// `ρ = 2 + Σ (m_v − 1) + rank MW`.
pub fn shioda_tate_rank(spec: &FibrationSpec) -> Result<usize> {
    let rho = 2 + spec.fibers.iter().map(|f| f.kind.components() as usize - 1).sum::<usize>() + spec.mw_rank as usize;
    if rho > 20 {
        return Err(Error::PicardTooLarge(rho));
    }
    Ok(rho)
}

/// `|det NS| = ∏ (simple components) / |torsion|²` for Mordell–Weil rank 0.
pub fn shioda_tate_discriminant(spec: &FibrationSpec) -> Result<BigRational> {
    if spec.mw_rank != 0 {
        return Err(Error::PositiveMordellWeilRank(spec.mw_rank));
    }
    let num: BigInt = spec.fibers.iter().map(|f| BigInt::from(f.kind.simple_components())).product();
    let tors: BigInt = spec.torsion.iter().map(|t| BigInt::from(t.order)).product();
    Ok(BigRational::new(num, &tors * &tors))
}

/// Result of checking the linear relation forced by a torsion section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionRelation {
    pub section: String,
    pub order: u32,
    /// The relation pairs to zero with every divisor other than the section.
    pub holds: bool,
    /// The section has height zero, i.e. the relation also pairs to zero
    /// with the section itself.
    pub height_zero: bool,
    /// Every dropped component has coefficient ±1 in the primitive integral
    /// relation, so it lies in the span of the basis.
    pub recoverable: bool,
    /// Coefficients `c` in `s ≡ O + (s·O + 2) f − Σ c Θ`, by component name.
    pub coefficients: Vec<(String, BigRational)>,
    /// Primitive integral relation over all divisors, by name.
    pub relation: Vec<(String, BigInt)>,
}

/// The fiber coefficients `−A_v⁻¹·(s·Θ_v)` of a section, by component name.
pub fn section_coefficients(spec: &FibrationSpec, section: &str) -> Result<Vec<(String, BigRational)>> {
    let s = spec
        .sections
        .iter()
        .find(|s| s.name == section)
        .ok_or_else(|| Error::NoTorsion(section.into()))?;
    let labels = spec.fiber_labels();
    let mut out = Vec::new();
    for (j, f) in spec.fibers.iter().enumerate() {
        let Ok(block) = ade_block(f.kind) else { continue };
        let inv = block.rational_inverse()?;
        let n = block.rows();
        let hit = s.hits.get(&labels[j]).copied().unwrap_or(0);
        for i in 0..n {
            let c = if hit == 0 { BigRational::zero() } else { -inv[(i, hit as usize - 1)].clone() };
            out.push((spec.component_name(&labels, j, i as u32 + 1), c));
        }
    }
    Ok(out)
}

/// Checks the relation `e·s − e·O − e(s·O + 2)·f + e·Σ c·Θ`, using `coeffs`
/// (by component name, missing entries zero) or the computed coefficients.
pub fn verify_torsion_relation(
    spec: &FibrationSpec,
    section: &str,
    coeffs: Option<&BTreeMap<String, BigRational>>,
) -> Result<TorsionRelation> {
    let t = spec
        .torsion
        .iter()
        .find(|t| t.name == section)
        .ok_or_else(|| Error::NoTorsion(section.into()))?;
    let si = spec.section_index(section).ok_or_else(|| Error::NoTorsion(section.into()))?;
    let computed = section_coefficients(spec, section)?;
    let used: Vec<(String, BigRational)> = match coeffs {
        Some(m) => computed
            .iter()
            .map(|(n, _)| (n.clone(), m.get(n).cloned().unwrap_or_else(BigRational::zero)))
            .collect(),
        None => computed.clone(),
    };
    if let Some(m) = coeffs {
        if let Some(k) = m.keys().find(|k| !computed.iter().any(|(n, _)| n == *k)) {
            return Err(Error::InvalidFibration(format!("no component named {k:?}")));
        }
    }

    let ext = spec.extended_gram_unchecked()?;
    let e = BigRational::from_integer(t.order.into());
    let n = ext.labels.len();
    let mut r = vec![BigRational::zero(); n];
    r[0] = -e.clone();
    r[1] = -&e * BigRational::from_integer((spec.sections[si].meets_zero + 2).into());
    r[2 + si] = e.clone();
    for (name, c) in &used {
        let k = ext.labels.iter().position(|l| l == name).expect("component present");
        r[k] = &e * c;
    }
    let gram = ext.gram.to_rational();
    let pairings = gram.left_mul_vec(&r)?;
    let holds = pairings.iter().enumerate().all(|(k, p)| k == 2 + si || p.is_zero());
    let height_zero = pairings[2 + si].is_zero();

    let denom = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = r.iter().map(|x| (x * BigRational::from_integer(denom.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let ints: Vec<BigInt> = ints.into_iter().map(|x| if content.is_zero() { x } else { x / &content }).collect();
    let labels = spec.fiber_labels();
    let recoverable = spec.fibers.iter().enumerate().all(|(j, f)| {
        f.drop.iter().all(|&d| {
            let name = spec.component_name(&labels, j, d);
            let k = ext.labels.iter().position(|l| *l == name).expect("component present");
            ints[k].abs().is_one()
        })
    });

    Ok(TorsionRelation {
        section: section.into(),
        order: t.order,
        holds,
        height_zero,
        recoverable,
        coefficients: used,
        relation: ext.labels.into_iter().zip(ints).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use KodairaKind::*;

    fn toy_i2() -> FibrationSpec {
        FibrationSpec {
            fibers: vec![FiberSpec::new(I(2))],
            mw_rank: 0,
            torsion: vec![TorsionSpec { name: "s".into(), order: 2 }],
            sections: vec![SectionIncidence::new("s", 0, &[("I2", 1)])],
            basis: None,
        }
    }

    #[test]
    fn toy_relation_has_half_coefficient() {
        let spec = toy_i2();
        let rel = verify_torsion_relation(&spec, "s", None).unwrap();
        assert_eq!(rel.coefficients, vec![("I2_1".to_string(), BigRational::new(1.into(), 2.into()))]);
        assert!(rel.holds);
        let mut wrong = BTreeMap::new();
        wrong.insert("I2_1".to_string(), BigRational::new(3.into(), 2.into()));
        assert!(!verify_torsion_relation(&spec, "s", Some(&wrong)).unwrap().holds);
        assert!(matches!(verify_torsion_relation(&spec, "x", None), Err(Error::NoTorsion(_))));
    }

    #[test]
    fn toy_spec_fails_euler_check() {
        assert!(matches!(build_ns_gram(&toy_i2()), Err(Error::InvalidFibration(_))));
    }

    #[test]
    fn all_nodal_fibers() {
        let spec = FibrationSpec { fibers: vec![FiberSpec::new(I(1)); 24], ..Default::default() };
        assert_eq!(shioda_tate_rank(&spec).unwrap(), 2);
        let ns = build_ns_gram(&spec).unwrap();
        assert_eq!(ns.gram, IntMatrix::from_rows(&[vec![-2, 1], vec![1, 0]]).unwrap());
        assert_eq!(ns.labels, vec!["O", "f"]);
    }

    #[test]
    fn duplicate_kinds_get_place_labels() {
        let spec = FibrationSpec {
            fibers: vec![FiberSpec::new(I(2)).at("-15"), FiberSpec::new(I(2)).at("-96"), FiberSpec::new(I(20))],
            ..Default::default()
        };
        assert_eq!(spec.fiber_labels(), vec!["I2(-15)", "I2(-96)", "I20"]);
    }

    #[test]
    fn picard_bound() {
        let spec = FibrationSpec {
            fibers: vec![FiberSpec::new(IIStar), FiberSpec::new(IIStar), FiberSpec::new(IV)],
            mw_rank: 1,
            ..Default::default()
        };
        assert_eq!(shioda_tate_rank(&spec), Err(Error::PicardTooLarge(21)));
    }
}
