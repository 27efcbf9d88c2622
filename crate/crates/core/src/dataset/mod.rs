//! Reference data for the `X_k`, `Y_k`, `Z_k` and `J_k` surfaces: τ-equations
//! and expected transcendental lattices, Néron–Severi Gram matrices, fiber
//! configurations, Weierstrass models and explicit sections.

pub mod printed;

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::algebra::IntMatrix;
use crate::elliptic::{FiberSpec, FibrationSpec, KodairaKind, SectionIncidence, TorsionSpec};
use crate::families::Family;
use crate::lattice::BinaryQuadraticForm;
use crate::weierstrass::{vars, ParametricModel, Poly, QPoly, QuadElem, RatFn, WeierstrassModel};

const fn form(a: i64, b: i64, c: i64) -> BinaryQuadraticForm {
    BinaryQuadraticForm::new(a, b, c)
}

/// A singular member given by its τ-equation `Aτ² + Bτ + C = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodEntry {
    pub name: &'static str,
    pub family: Family,
    pub tau: [i64; 3],
    pub expected: BinaryQuadraticForm,
    pub note: Option<&'static str>,
}

const fn period(name: &'static str, family: Family, tau: [i64; 3], expected: BinaryQuadraticForm) -> PeriodEntry {
    PeriodEntry { name, family, tau, expected, note: None }
}

/// All 20 singular members of the Verrill and Apéry–Fermi families.
pub const PERIOD_ENTRIES: [PeriodEntry; 20] = {
    use Family::{AperyFermi as Y, Verrill as X};
    [
        period("X_-36", X, [3, -6, 4], form(2, 0, 6)),
        period("X_-12", X, [6, 0, 1], form(4, 0, 6)),
        period("X_-6", X, [12, 0, 1], form(6, 0, 8)),
        PeriodEntry {
            name: "X_-3",
            family: X,
            tau: [24, -6, 1],
            expected: form(6, 0, 10),
            note: Some("the worked example writes 24τ^2+6τ+1; the table's 24τ^2-6τ+1 is the one consistent with (p,q,r) = (-8,-1,1)"),
        },
        period("X_0", X, [12, -6, 1], form(2, 0, 6)),
        period("X_4", X, [6, 4, 1], form(2, 0, 4)),
        period("X_12", X, [3, -3, 1], form(2, 1, 2)),
        period("X_60", X, [3, -3, 2], form(4, 1, 4)),
        period("Y_0", Y, [3, 3, 1], form(4, 2, 4)),
        period("Y_2", Y, [6, 4, 1], form(2, 0, 4)),
        period("Y_3", Y, [6, 3, 1], form(2, 1, 8)),
        period("Y_6", Y, [6, 0, 1], form(2, 0, 12)),
        period("Y_10", Y, [2, 0, 1], form(6, 0, 12)),
        period("Y_18", Y, [6, 0, 5], form(10, 0, 12)),
        period("Y_102", Y, [6, 0, 13], form(12, 0, 26)),
        period("Y_198", Y, [6, 0, 17], form(12, 0, 34)),
        period("Y_2sqrt5", Y, [6, 2, 1], form(2, 0, 10)),
        period("Y_3sqrt6", Y, [3, 0, 1], form(4, 0, 12)),
        period("Y_2sqrt-3", Y, [2, 2, 1], form(6, 0, 6)),
        period("Y_3sqrt-5", Y, [3, 3, 2], form(8, 2, 8)),
    ]
};

pub fn period_entry(name: &str) -> Option<&'static PeriodEntry> {
    PERIOD_ENTRIES.iter().find(|e| e.name == name)
}

/// Expected transcendental lattice of a `Z_k` or `J_k` surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expected {
    Form(BinaryQuadraticForm),
    /// Not determined; the marker is kept verbatim.
    Conjectural(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceEntry {
    pub name: &'static str,
    pub expected: Expected,
}

const fn known(name: &'static str, f: BinaryQuadraticForm) -> SurfaceEntry {
    SurfaceEntry { name, expected: Expected::Form(f) }
}

const fn open(name: &'static str, marker: &'static str) -> SurfaceEntry {
    SurfaceEntry { name, expected: Expected::Conjectural(marker) }
}

pub const SURFACE_ENTRIES: [SurfaceEntry; 16] = [
    open("Z_-36", "?12a^2"),
    known("Z_-12", form(10, 2, 10)),
    known("Z_-6", form(8, 4, 8)),
    known("Z_-3", form(4, 1, 4)),
    known("Z_0", form(2, 0, 6)),
    known("Z_4", form(2, 0, 16)),
    known("Z_12", form(2, 0, 24)),
    open("Z_60", "?15a^2"),
    open("J_-36", "?[6 0 8]"),
    known("J_-12", form(4, 0, 6)),
    known("J_-6", form(2, 0, 6)),
    known("J_-3", form(4, 1, 4)),
    known("J_0", form(2, 1, 2)),
    known("J_4", form(2, 0, 4)),
    known("J_12", form(2, 0, 6)),
    open("J_60", "?[6 0 10]"),
];

pub fn surface_entry(name: &str) -> Option<&'static SurfaceEntry> {
    SURFACE_ENTRIES.iter().find(|e| e.name == name)
}

/// Reference Gram matrices, see [`printed`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PrintedGram {
    GenericZ,
    ZMinus6,
    Z4,
    ZMinus12,
}

impl PrintedGram {
    pub const ALL: [PrintedGram; 4] = [PrintedGram::GenericZ, PrintedGram::ZMinus6, PrintedGram::Z4, PrintedGram::ZMinus12];

    pub fn name(self) -> &'static str {
        match self {
            PrintedGram::GenericZ => "Z_k",
            PrintedGram::ZMinus6 => "Z_-6",
            PrintedGram::Z4 => "Z_4",
            PrintedGram::ZMinus12 => "Z_-12",
        }
    }

    pub fn matrix(self) -> IntMatrix {
        fn conv<const N: usize>(m: &[[i8; N]; N]) -> IntMatrix {
            let rows: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|&x| i64::from(x)).collect()).collect();
            IntMatrix::from_rows(&rows).expect("square")
        }
        match self {
            PrintedGram::GenericZ => conv(&printed::GENERIC_Z),
            PrintedGram::ZMinus6 => conv(&printed::Z_MINUS_6),
            PrintedGram::Z4 => conv(&printed::Z_4),
            PrintedGram::ZMinus12 => conv(&printed::Z_MINUS_12),
        }
    }

    /// The fibration whose Gram matrix this is meant to be.
    pub fn spec(self) -> FibrationSpec {
        match self {
            PrintedGram::GenericZ => generic_z_spec(),
            PrintedGram::ZMinus6 => z_minus6_spec(),
            PrintedGram::Z4 => z4_spec(),
            PrintedGram::ZMinus12 => z_minus12_spec(),
        }
    }

    /// Stated determinant.
    pub fn claimed_det(self) -> i64 {
        match self {
            PrintedGram::GenericZ => 24,
            PrintedGram::ZMinus6 => -48,
            PrintedGram::Z4 => -32,
            PrintedGram::ZMinus12 => -96,
        }
    }

    /// Stated elementary divisors above 1.
    pub fn claimed_divisors(self) -> Vec<u64> {
        match self {
            PrintedGram::GenericZ => vec![24],
            PrintedGram::ZMinus6 => vec![4, 12],
            PrintedGram::Z4 => vec![2, 16],
            PrintedGram::ZMinus12 => vec![2, 48],
        }
    }

    /// Stated discriminant-group generators with their norms (mod 2), in
    /// the order of [`Self::claimed_divisors`], and the pairing of the
    /// first two (mod 1).
    pub fn claimed_generators(self) -> (Vec<(Vec<i64>, BigRational)>, Option<BigRational>) {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        match self {
            PrintedGram::GenericZ => (vec![(GENERIC_B.to_vec(), q(-745, 24))], None),
            PrintedGram::ZMinus6 => (
                vec![
                    (vec![-3, 0, -1, 0, 0, 0, 0, 0, 1, 0, 0, -3, 3, -3, 3, 0, -3, 3, -2, 3], q(-1, 2)),
                    (vec![1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -1, 1, -1, 0, 1, -1, 1, -1], q(-7, 6)),
                ],
                Some(q(1, 4)),
            ),
            PrintedGram::Z4 => (
                vec![
                    (vec![0, 0, -1, 0, 0, 0, 1, -1, 1, 0, 0, 0, 0, 0, 0, 0, -1, 1, 0, 1], q(-1, 2)),
                    (vec![-1, 0, -1, 0, 0, 0, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, -2], q(-1, 16)),
                ],
                Some(q(1, 2)),
            ),
            PrintedGram::ZMinus12 => (
                vec![
                    (vec![2, -9, 11, 0, 0, -7, -2, 0, 0, -11, 11, -9, -2, 2, 9, 0, 3, -3, 0, -2], q(-1, 2)),
                    (vec![1, -3, 4, 0, 0, -2, -1, 0, 0, -4, 4, -3, -1, 1, 3, 0, 1, -1, 0, -1], q(-29, 48)),
                ],
                Some(q(-171, 2)),
            ),
        }
    }

    /// Expected transcendental lattice (`None` for the generic rank-19 case,
    /// whose transcendental lattice is `U ⊕ ⟨24⟩`).
    pub fn expected_form(self) -> Option<BinaryQuadraticForm> {
        match self {
            PrintedGram::GenericZ => None,
            PrintedGram::ZMinus6 => Some(form(8, 4, 8)),
            PrintedGram::Z4 => Some(form(2, 0, 16)),
            PrintedGram::ZMinus12 => Some(form(10, 2, 10)),
        }
    }
}

/// Dual vector of norm `-745/24` on the generic `Z_k` lattice.
pub const GENERIC_B: [i64; 19] = [-3, 0, 0, 0, 0, -3, 3, 0, 0, 0, 3, -6, 3, 0, 0, 0, -1, 1, -3];

fn fiber(kind: KodairaKind, label: &str, prefix: &str) -> FiberSpec {
    FiberSpec::new(kind).labelled(label, prefix)
}

fn nodal(tag: &str) -> FiberSpec {
    FiberSpec::new(KodairaKind::I(1)).labelled(&format!("I1({tag})"), "")
}

fn two_torsion(hits: &[(&str, u32)]) -> (Vec<TorsionSpec>, SectionIncidence) {
    (vec![TorsionSpec { name: "s2".into(), order: 2 }], SectionIncidence::new("s2", 0, hits))
}

/// `III*, I8, I3, I2, 2I1` with the 2-torsion section `s2`; `theta1` is
/// dropped from the basis.
pub fn generic_z_spec() -> FibrationSpec {
    use KodairaKind::*;
    let (torsion, s2) = two_torsion(&[("I8", 4), ("III*", 1), ("I2", 1)]);
    FibrationSpec {
        fibers: vec![
            fiber(I(8), "I8", "theta").dropping(&[1]),
            fiber(IIIStar, "III*", "eta"),
            fiber(I(3), "I3", "alpha"),
            fiber(I(2), "I2", "beta"),
            nodal("1"),
            nodal("2"),
        ],
        mw_rank: 0,
        torsion,
        sections: vec![s2],
        basis: None,
    }
}

/// The coefficients of `s2` along the fiber components, by component name.
pub fn generic_torsion_coefficients() -> BTreeMap<String, BigRational> {
    let half = |n: i64| BigRational::new(n.into(), 2.into());
    let mut m = BTreeMap::new();
    for (i, c) in [1, 2, 3, 4, 3, 2, 1].into_iter().enumerate() {
        m.insert(format!("theta{}", i + 1), half(c));
    }
    for (i, c) in [3, 4, 5, 6, 4, 2, 3].into_iter().enumerate() {
        m.insert(format!("eta{}", i + 1), half(c));
    }
    m.insert("beta1".into(), half(1));
    m
}

fn with_section(mut spec: FibrationSpec, p: SectionIncidence) -> FibrationSpec {
    spec.mw_rank = 1;
    spec.sections.push(p);
    spec
}

/// Rank one; `P` is disjoint from `O` and meets `eta1` and `beta1`.
pub fn z_minus6_spec() -> FibrationSpec {
    with_section(generic_z_spec(), SectionIncidence::new("P", 0, &[("III*", 1), ("I2", 1)]))
}

/// Rank one; `P` is disjoint from `O` and meets `eta1`, `alpha1` and `beta1`.
pub fn z4_spec() -> FibrationSpec {
    with_section(generic_z_spec(), SectionIncidence::new("P", 0, &[("III*", 1), ("I3", 1), ("I2", 1)]))
}

/// Rank one; `P` meets `O`, `s2` and `theta4`.
pub fn z_minus12_spec() -> FibrationSpec {
    with_section(generic_z_spec(), SectionIncidence::new("P", 1, &[("I8", 4)]).meeting("s2", 1))
}

/// `I10, I3, 2I1, III*`, rank 0, `s2` on `theta5` and `eta1`.
pub fn z_minus3_spec() -> FibrationSpec {
    use KodairaKind::*;
    let (torsion, s2) = two_torsion(&[("I10", 5), ("III*", 1)]);
    FibrationSpec {
        fibers: vec![
            fiber(I(10), "I10", "theta").dropping(&[1]),
            fiber(IIIStar, "III*", "eta"),
            fiber(I(3), "I3", "alpha"),
            nodal("1"),
            nodal("2"),
        ],
        mw_rank: 0,
        torsion,
        sections: vec![s2],
        basis: None,
    }
}

/// `I4*, I3, I2, III*`, rank 0, `s2` on a far simple component of `I4*`.
pub fn z0_spec() -> FibrationSpec {
    use KodairaKind::*;
    let (torsion, s2) = two_torsion(&[("I4*", 7), ("III*", 1), ("I2", 1)]);
    FibrationSpec {
        fibers: vec![
            fiber(IStar(4), "I4*", "theta").dropping(&[1]),
            fiber(IIIStar, "III*", "eta"),
            fiber(I(3), "I3", "alpha"),
            fiber(I(2), "I2", "beta"),
        ],
        mw_rank: 0,
        torsion,
        sections: vec![s2],
        basis: None,
    }
}

/// `I8, I3, 2I2, III*`, rank 0, `s2` on `theta4`, `eta1` and one `I2`.
pub fn z12_spec() -> FibrationSpec {
    use KodairaKind::*;
    let (torsion, s2) = two_torsion(&[("I8", 4), ("III*", 1), ("I2(-15)", 1)]);
    FibrationSpec {
        fibers: vec![
            fiber(I(8), "I8", "theta").dropping(&[1]),
            fiber(IIIStar, "III*", "eta"),
            fiber(I(3), "I3", "alpha"),
            fiber(I(2), "I2(-15)", "beta"),
            fiber(I(2), "I2(-96)", "gamma"),
        ],
        mw_rank: 0,
        torsion,
        sections: vec![s2],
        basis: None,
    }
}

/// Rank-0 Jacobian fibrations without torsion, by surface name.
pub fn jacobian_spec(name: &str) -> Option<FibrationSpec> {
    use KodairaKind::*;
    let kinds: &[KodairaKind] = match name {
        "J_12" | "J_-6" => &[IIIStar, I(3), I(2), IIStar],
        "J_4" => &[IIIStar, I(4), I(1), IIStar],
        "J_0" => &[IIStar, IV, IIStar],
        _ => return None,
    };
    let fibers = kinds
        .iter()
        .enumerate()
        .map(|(i, &k)| FiberSpec::new(k).labelled(&format!("F{i}"), &format!("F{i}_")))
        .collect();
    Some(FibrationSpec { fibers, ..Default::default() })
}

/// Rank-0 Néron–Severi specs of singular surfaces, by name.
pub fn rank0_spec(name: &str) -> Option<FibrationSpec> {
    match name {
        "Z_-3" => Some(z_minus3_spec()),
        "Z_0" => Some(z0_spec()),
        "Z_12" => Some(z12_spec()),
        _ => jacobian_spec(name),
    }
}

/// Names accepted by [`rank0_spec`].
pub const RANK0_SURFACES: [&str; 7] = ["Z_-3", "Z_0", "Z_12", "J_12", "J_-6", "J_4", "J_0"];

/// Parametric models in `t` with parameter `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ParametricFamily {
    /// `y² = x³ + ((k²−24)t² + 2(k−2)(k+4)²t + k(k+4)³)x² − 16t⁴(t+k+3)x`.
    F,
    /// `y² = x³ + k²t²x² + 16k(k+4)t³(t−1)x + 64(k+4)²t⁵(t−1)²`.
    J,
    /// `y² + (t²−kt+3)xy − (t+1)²(kt−(t−1)²)y = x³`.
    First,
}

impl ParametricFamily {
    pub const ALL: [ParametricFamily; 3] = [ParametricFamily::F, ParametricFamily::J, ParametricFamily::First];

    pub fn name(self) -> &'static str {
        match self {
            ParametricFamily::F => "F_k",
            ParametricFamily::J => "J_k",
            ParametricFamily::First => "first",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name().eq_ignore_ascii_case(s) || f.name()[..1].eq_ignore_ascii_case(s))
    }

    pub fn model(self) -> ParametricModel {
        use vars::{c, k, t};
        let (t, k) = (t(), k());
        let k4 = &k + &c(4);
        let zero = Poly::zero();
        match self {
            ParametricFamily::F => {
                let a2 = (&k * &k - c(24)) * &t * &t + c(2) * (&k - c(2)) * k4.pow(2) * &t + &k * k4.pow(3);
                let a4 = c(-16) * t.pow(4) * (&t + &k + c(3));
                ParametricModel { a: [zero.clone(), a2, zero.clone(), a4, zero] }
            }
            ParametricFamily::J => {
                let t1 = &t - &c(1);
                let a2 = &k * &k * &t * &t;
                let a4 = c(16) * &k * &k4 * t.pow(3) * &t1;
                let a6 = c(64) * k4.pow(2) * t.pow(5) * t1.pow(2);
                ParametricModel { a: [zero.clone(), a2, zero, a4, a6] }
            }
            ParametricFamily::First => {
                let a1 = &t * &t - &k * &t + c(3);
                let a3 = -((&t + &c(1)).pow(2) * (&k * &t - (&t - &c(1)).pow(2)));
                ParametricModel { a: [a1, zero.clone(), a3, zero.clone(), zero] }
            }
        }
    }

    /// Fiber configuration for generic `k`.
    pub fn generic_fibers(self) -> &'static str {
        match self {
            ParametricFamily::F => "III* I8 I3 I2 2I1",
            ParametricFamily::J => "III*(0) I3(1) 2I1 II*(inf)",
            ParametricFamily::First => "I6(-1) 2I3 2I2 2I1 I6(inf)",
        }
    }
}

/// Sample values of `k` away from the special members.
pub const GENERIC_SAMPLES: [i64; 3] = [1, 5, 7];

/// A Weierstrass equation written out explicitly for one member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelCase {
    pub name: &'static str,
    pub model: WeierstrassModel,
    /// Stated fiber list.
    pub fibers: &'static str,
    /// Family, `k`, and the scaling `u` with `aᵢ = aᵢ(family at k) / uⁱ`.
    pub origin: (ParametricFamily, i64, i64),
    pub note: Option<&'static str>,
}

fn short(a2: &[i64], a4: &[i64], a6: &[i64]) -> WeierstrassModel {
    WeierstrassModel::short(QPoly::from_ints(a2), QPoly::from_ints(a4), QPoly::from_ints(a6))
}

const EULER_22: &str = "the stated list has Euler sum 22; the two I1 fibers of the generic configuration are missing";

pub fn model_cases() -> Vec<ModelCase> {
    use ParametricFamily::{F, J};
    let case = |name, model, fibers, origin| ModelCase { name, model, fibers, origin, note: None };
    vec![
        case("F_-3", short(&[-3, -10, -15], &[0, 0, 0, 0, 0, -16], &[]), "I10(0) I3(-1) 2I1(64t^2+33t+9) III*(inf)", (F, -3, 1)),
        case("F_0", short(&[0, -64, -24], &[0, 0, 0, 0, -48, -16], &[]), "I4*(0) I3(-4) I2(-3) III*(inf)", (F, 0, 1)),
        case("F_12", short(&[49152, 5120, 120], &[0, 0, 0, 0, -240, -16], &[]), "I8(0) I3(-16) 2I2(-15,-96) III*(inf)", (F, 12, 1)),
        ModelCase { note: Some(EULER_22), ..case("F_-6", short(&[12, -16, 3], &[0, 0, 0, 0, 3, -1], &[]), "I8(0) I3(2) I2(3) III*(inf)", (F, -6, 2)) },
        ModelCase { note: Some(EULER_22), ..case("F_4", short(&[2048, 256, -8], &[0, 0, 0, 0, -112, -16], &[]), "I8(0) I3(-8) I2(-7) III*(inf)", (F, 4, 1)) },
        ModelCase { note: Some(EULER_22), ..case("F_-12", short(&[1536, -448, 30], &[0, 0, 0, 0, 9, -1], &[]), "I8(0) I3(8) I2(9) III*(inf)", (F, -12, 2)) },
        ModelCase {
            note: Some("the I2 fiber lies over t = -4, not t = -1"),
            ..case("J_12", short(&[0, 0, 144], &[0, 0, 0, -3072, 3072], &[0, 0, 0, 0, 0, 16384, -32768, 16384]), "III*(0) I3(1) I2(-1) II*(inf)", (J, 12, 1))
        },
        case("J_-6", short(&[0, 0, 36], &[0, 0, 0, -192, 192], &[0, 0, 0, 0, 0, 256, -512, 256]), "III*(0) I3(1) I2(-4) II*(inf)", (J, -6, 1)),
        case("J_4", short(&[0, 0, 16], &[0, 0, 0, -512, 512], &[0, 0, 0, 0, 0, 4096, -8192, 4096]), "III*(0) I4(1) I1(32/27) II*(inf)", (J, 4, 1)),
        case("J_0", short(&[], &[], &[0, 0, 0, 0, 0, 1024, -2048, 1024]), "II*(0) IV(1) II*(inf)", (J, 0, 1)),
    ]
}

pub fn model_case(name: &str) -> Option<ModelCase> {
    model_cases().into_iter().find(|c| c.name == name)
}

/// An explicit section `(x, y)` of one of the models.
#[derive(Clone, Debug)]
pub struct PointCase {
    pub name: &'static str,
    pub model: &'static str,
    pub d: i64,
    pub x: RatFn<QuadElem>,
    pub y: RatFn<QuadElem>,
}

fn lift(p: &QPoly, scale: &QuadElem) -> Poly<QuadElem> {
    Poly::constant(scale.clone()) * p.map(|c| QuadElem::rational(c.clone()))
}

pub fn point_cases() -> Vec<PointCase> {
    let p = QPoly::from_ints;
    let one = QuadElem::rational(BigRational::from_integer(1.into()));
    let poly = |q: &QPoly, s: &QuadElem| RatFn::poly(lift(q, s));
    let t4 = p(&[0, 0, 0, 0, 1]);
    let t72 = p(&[72, 1]);
    let t24 = p(&[-24, 1]);
    let quartic = p(&[995328, 138240, -20736, 144, 1]);
    let x12 = RatFn::new(lift(&(&t4 * &t72.pow(2)), &QuadElem::rational(BigRational::from_integer((-1).into()))), lift(&(p(&[1728]) * t24.pow(2)), &one))
        .expect("nonzero denominator");
    let y12 = RatFn::new(lift(&(&t4 * &t72 * &quartic), &QuadElem::sqrt(-3)), lift(&(p(&[124416]) * t24.pow(3)), &one))
        .expect("nonzero denominator");
    vec![
        PointCase {
            name: "F_-6:P",
            model: "F_-6",
            d: -1,
            x: poly(&p(&[-48, 16]), &one),
            y: poly(&(p(&[-12, 4]) * p(&[-24, 0, 1])), &QuadElem::sqrt(-1)),
        },
        PointCase {
            name: "F_4:P",
            model: "F_4",
            d: 0,
            x: poly(&p(&[-1792, -256]), &one),
            y: poly(&(p(&[448, 64]) * p(&[-64, 0, 1])), &one),
        },
        PointCase { name: "F_-12:P", model: "F_-12", d: -3, x: x12, y: y12 },
    ]
}

/// The whole reference table as JSON.
pub fn dataset_json() -> Value {
    let periods: Vec<Value> = PERIOD_ENTRIES
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "family": e.family.name(),
                "tau": e.tau,
                "expected": e.expected,
                "note": e.note,
            })
        })
        .collect();
    let surfaces: Vec<Value> = SURFACE_ENTRIES
        .iter()
        .map(|e| match &e.expected {
            Expected::Form(f) => json!({"name": e.name, "expected": f, "testable": true}),
            Expected::Conjectural(m) => json!({"name": e.name, "marker": m, "testable": false}),
        })
        .collect();
    let models: Vec<Value> = model_cases()
        .iter()
        .map(|c| {
            let mut m = c.model.to_json();
            m["name"] = json!(c.name);
            m["fibers"] = json!(c.fibers);
            m["specialization"] = json!({"family": c.origin.0.name(), "k": c.origin.1, "u": c.origin.2});
            m["note"] = json!(c.note);
            m
        })
        .collect();
    let gram: Vec<Value> = PrintedGram::ALL
        .iter()
        .map(|g| {
            json!({
                "name": g.name(),
                "gram": g.matrix().to_json(),
                "det": g.claimed_det(),
                "divisors": g.claimed_divisors(),
                "expected": g.expected_form(),
            })
        })
        .collect();
    json!({
        "periods": periods,
        "surfaces": surfaces,
        "weierstrass": models,
        "ns_gram": gram,
        "generic_fibers": ParametricFamily::ALL.iter().map(|f| json!({"family": f.name(), "fibers": f.generic_fibers()})).collect::<Vec<_>>(),
    })
}
