use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use super::field::{Coeff, QuadElem};
use super::poly::{Poly, QPoly, RatFn};
use super::roots::{order_along, places_of, split_by_order, FinitePlace};
use crate::algebra::json::{rational_from_json, rational_to_json, rational_to_string};
use crate::elliptic::KodairaKind;
use crate::error::{Error, Result};

const INF: u32 = u32::MAX;

/// `y² + a₁xy + a₃y = x³ + a₂x² + a₄x + a₆` over `Q(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassModel {
    /// `a₁, a₂, a₃, a₄, a₆`.
    pub a: [QPoly; 5],
}

/// Weights `i` of `a₁, a₂, a₃, a₄, a₆`.
const WEIGHTS: [u8; 5] = [1, 2, 3, 4, 6];

impl WeierstrassModel {
    pub fn new(a1: QPoly, a2: QPoly, a3: QPoly, a4: QPoly, a6: QPoly) -> Self {
        WeierstrassModel { a: [a1, a2, a3, a4, a6] }
    }

    /// `y² = x³ + a₂x² + a₄x + a₆`.
    pub fn short(a2: QPoly, a4: QPoly, a6: QPoly) -> Self {
        Self::new(QPoly::zero(), a2, QPoly::zero(), a4, a6)
    }

    /// The model after `(x, y) ↦ (u²x, u³y)`, i.e. `aᵢ ↦ aᵢ / uⁱ`.
    pub fn rescale(&self, u: &BigRational) -> Result<Self> {
        if Zero::is_zero(u) {
            return Err(Error::DivisionByZero);
        }
        let mut a = self.a.clone();
        for (ai, &w) in a.iter_mut().zip(&WEIGHTS) {
            *ai = ai.scale(&u.pow(-(w as i32)));
        }
        Ok(WeierstrassModel { a })
    }

    /// Fails unless `deg aᵢ ≤ 2i`, the condition for the chart at infinity.
    pub fn check_degree_bounds(&self) -> Result<()> {
        for (ai, &w) in self.a.iter().zip(&WEIGHTS) {
            let bound = 2 * w as usize;
            if let Some(degree) = ai.degree().filter(|&d| d > bound) {
                return Err(Error::DegreeBound { index: w, degree, bound });
            }
        }
        Ok(())
    }

    /// Whether `(x, y)` satisfies the equation identically in `t`.
    pub fn verify_point(&self, x: &RatFn<QuadElem>, y: &RatFn<QuadElem>) -> bool {
        let a: Vec<RatFn<QuadElem>> =
            self.a.iter().map(|p| RatFn::poly(p.map(|c| QuadElem::rational(c.clone())))).collect();
        let lhs = y.mul(y).add(&a[0].mul(x).mul(y)).add(&a[2].mul(y));
        let x2 = x.mul(x);
        let rhs = x2.mul(x).add(&a[1].mul(&x2)).add(&a[3].mul(x)).add(&a[4]);
        lhs.sub(&rhs).is_zero()
    }

    pub fn to_json(&self) -> Value {
        let poly = |p: &QPoly| p.coeffs().iter().map(rational_to_json).collect::<Vec<_>>();
        json!({
            "a": {
                "a1": poly(&self.a[0]), "a2": poly(&self.a[1]), "a3": poly(&self.a[2]),
                "a4": poly(&self.a[3]), "a6": poly(&self.a[4]),
            }
        })
    }

    /// `{"a": {"a1": [...], ...}}` with ascending coefficients; missing
    /// coefficients are zero. Quadratic coefficients are rejected here.
    pub fn from_json(v: &Value) -> Result<Self> {
        let d = v.get("d").and_then(Value::as_i64).unwrap_or(0);
        let a = v.get("a").ok_or_else(|| Error::Parse("model needs an \"a\" object".into()))?;
        let mut out: [QPoly; 5] = Default::default();
        for (slot, key) in out.iter_mut().zip(["a1", "a2", "a3", "a4", "a6"]) {
            if let Some(c) = a.get(key) {
                let p = quad_poly_from_json(c, d)?;
                if p.coeffs().iter().any(|c| !Zero::is_zero(&c.im)) {
                    return Err(Error::Parse(format!("{key} must have rational coefficients")));
                }
                *slot = p.map(|c| c.re.clone());
            }
        }
        Ok(WeierstrassModel { a: out })
    }
}

/// Parses a coefficient list whose entries are rationals (`"p/q"` or
/// numbers) or `[x, y]` pairs meaning `x + y√d`.
pub fn quad_poly_from_json(v: &Value, d: i64) -> Result<Poly<QuadElem>> {
    let arr = v.as_array().ok_or_else(|| Error::Parse("polynomial must be a coefficient array".into()))?;
    let mut cs = Vec::with_capacity(arr.len());
    for c in arr {
        cs.push(match c {
            Value::Array(pair) if pair.len() == 2 => {
                if d == 0 && !Zero::is_zero(&rational_from_json(&pair[1])?) {
                    return Err(Error::Parse("irrational coefficient without \"d\"".into()));
                }
                QuadElem::new(rational_from_json(&pair[0])?, rational_from_json(&pair[1])?, d)
            }
            other => QuadElem::rational(rational_from_json(other)?),
        });
    }
    Ok(Poly::new(cs))
}

/// `{"num": [...], "den": [...]}` or a bare coefficient list.
pub fn ratfn_from_json(v: &Value, d: i64) -> Result<RatFn<QuadElem>> {
    match v.get("num") {
        Some(num) => {
            let den = match v.get("den") {
                Some(den) => quad_poly_from_json(den, d)?,
                None => Poly::one(),
            };
            RatFn::new(quad_poly_from_json(num, d)?, den)
        }
        None => Ok(RatFn::poly(quad_poly_from_json(v, d)?)),
    }
}

/// `c₄`, `c₆` and the discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CInvariants {
    pub c4: QPoly,
    pub c6: QPoly,
    pub disc: QPoly,
}

/// Standard `b`/`c` invariants; checks `1728Δ = c₄³ − c₆²` on every call.
pub fn c_invariants(w: &WeierstrassModel) -> Result<CInvariants> {
    let [a1, a2, a3, a4, a6] = &w.a;
    let k = |n: i64| QPoly::from_ints(&[n]);
    let b2 = a1 * a1 + k(4) * a2;
    let b4 = k(2) * a4 + a1 * a3;
    let b6 = a3 * a3 + k(4) * a6;
    let b8 = a1 * a1 * a6 + k(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    let c4 = &b2 * &b2 - k(24) * &b4;
    let c6 = -b2.pow(3) + k(36) * &b2 * &b4 - k(216) * &b6;
    let disc = -(&b2 * &b2 * &b8) - k(8) * b4.pow(3) - k(27) * &b6 * &b6 + k(9) * &b2 * &b4 * &b6;
    assert_eq!(
        &k(1728) * &disc,
        &c4.pow(3) - &(&c6 * &c6),
        "c-invariant identity failed; the formulas above are wrong"
    );
    if disc.is_zero() {
        return Err(Error::NotElliptic);
    }
    Ok(CInvariants { c4, c6, disc })
}

/// Kodaira type from valuations of `c₄`, `c₆`, `Δ` (characteristic 0),
/// passing first to a minimal model. `None` means a smooth fiber.
pub fn kodaira_from_valuations(mut v4: u32, mut v6: u32, mut vd: u32) -> Result<Option<KodairaKind>> {
    let err = |v4: u32, v6: u32, vd: u32| {
        let show = |v: u32| if v == INF { "inf".to_string() } else { v.to_string() };
        Error::UnclassifiedFiber { c4: show(v4), c6: show(v6), disc: vd }
    };
    while v4 >= 4 && v6 >= 6 && vd >= 12 {
        v4 = v4.saturating_sub(4).max(if v4 == INF { INF } else { 0 });
        v6 = if v6 == INF { INF } else { v6 - 6 };
        vd -= 12;
    }
    if vd == 0 {
        return Ok(None);
    }
    if v4 == 0 {
        if v6 != 0 {
            return Err(err(v4, v6, vd));
        }
        return Ok(Some(KodairaKind::I(vd)));
    }
    let kind = match vd {
        2 if v4 >= 1 => KodairaKind::II,
        3 if v4 == 1 => KodairaKind::III,
        4 if v4 >= 2 => KodairaKind::IV,
        6 if v4 >= 2 && v6 >= 3 => KodairaKind::IStar(0),
        8 if v4 >= 3 => KodairaKind::IVStar,
        9 if v4 == 3 => KodairaKind::IIIStar,
        10 if v4 >= 4 => KodairaKind::IIStar,
        n if n > 6 && v4 == 2 && v6 == 3 => KodairaKind::IStar(n - 6),
        _ => return Err(err(v4, v6, vd)),
    };
    Ok(Some(kind))
}

/// A place of `P¹` carrying a singular fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    Finite(FinitePlace),
    Infinity,
}

impl Place {
    pub fn rational(r: BigRational) -> Self {
        Place::Finite(FinitePlace::Rational(r))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree(),
            Place::Infinity => 1,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Place::Infinity => "inf".into(),
            Place::Finite(FinitePlace::Rational(r)) => rational_to_string(r),
            Place::Finite(FinitePlace::Factor(p)) => p.display_primitive("t"),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Place::Infinity => json!("inf"),
            Place::Finite(FinitePlace::Rational(r)) => json!(rational_to_string(r)),
            Place::Finite(FinitePlace::Factor(p)) => json!({
                "factor": p.primitive_integer().iter().map(crate::algebra::json::int_to_json).collect::<Vec<_>>()
            }),
        }
    }
}

/// Valuations of `(c₄, c₆, Δ)` at infinity in the weight-twisted chart.
fn valuations_at_infinity(inv: &CInvariants) -> (u32, u32, u32) {
    let v = |p: &QPoly, weight: usize| match p.degree() {
        None => INF,
        Some(d) => (weight - d) as u32,
    };
    (v(&inv.c4, 8), v(&inv.c6, 12), v(&inv.disc, 24))
}

/// Fiber type at a single place.
pub fn classify_place(w: &WeierstrassModel, place: &Place) -> Result<Option<KodairaKind>> {
    let inv = c_invariants(w)?;
    match place {
        Place::Infinity => {
            w.check_degree_bounds()?;
            let (a, b, d) = valuations_at_infinity(&inv);
            kodaira_from_valuations(a, b, d)
        }
        Place::Finite(fp) => {
            let f = fp.factor();
            let vd = order_along(&f, &inv.disc);
            let v4 = order_along(&f, &inv.c4);
            let v6 = order_along(&f, &inv.c6);
            if fp.degree() > 1 {
                // a residual factor must be uniform to be classified as one place
                let pieces4 = split_by_order(&f, &inv.c4);
                let pieces6 = split_by_order(&f, &inv.c6);
                if pieces4.len() > 1 || pieces6.len() > 1 || split_by_order(&f, &inv.disc).len() > 1 {
                    return Err(Error::NonUniformPlace);
                }
            }
            kodaira_from_valuations(v4, v6, vd)
        }
    }
}

/// One singular fiber type at a place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberEntry {
    pub kind: KodairaKind,
    pub place: Place,
}

impl FiberEntry {
    /// Euler contribution counting conjugate points.
    pub fn euler(&self) -> u32 {
        self.kind.euler() * self.place.degree() as u32
    }
}

/// All singular fibers of a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub fibers: Vec<FiberEntry>,
    pub euler_sum: u32,
}

impl FiberReport {
    pub fn euler_ok(&self) -> bool {
        self.euler_sum == 24
    }

    /// `(kind, place label)` pairs, sorted; a factor place is one entry.
    pub fn signature(&self) -> Vec<(KodairaKind, String)> {
        let mut v: Vec<_> = self.fibers.iter().map(|f| (f.kind, f.place.label())).collect();
        v.sort();
        v
    }

    /// Multiset of fiber kinds with conjugate places counted separately.
    pub fn kinds(&self) -> Vec<KodairaKind> {
        let mut v: Vec<_> =
            self.fibers.iter().flat_map(|f| std::iter::repeat_n(f.kind, f.place.degree())).collect();
        v.sort();
        v
    }

    pub fn to_json(&self) -> Value {
        json!({
            "fibers": self.fibers.iter().map(|f| json!({
                "kind": f.kind.to_string(),
                "place": f.place.to_json(),
                "count": f.place.degree(),
                "euler": f.euler(),
            })).collect::<Vec<_>>(),
            "euler_sum": self.euler_sum,
            "euler_ok": self.euler_ok(),
            "text": self.to_string(),
        })
    }
}

impl fmt::Display for FiberReport {
    /// `I8(0) I3(-16) 2I2(-15,-96) 2I1(64t^2+33t+9) III*(inf)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut finite: Vec<(KodairaKind, Vec<&Place>)> = Vec::new();
        for e in &self.fibers {
            if e.place == Place::Infinity {
                continue;
            }
            // rational places of one kind share a group; factors stand alone
            let rational = matches!(e.place, Place::Finite(FinitePlace::Rational(_)));
            match finite.iter_mut().find(|(k, ps)| {
                *k == e.kind && rational && matches!(ps[0], Place::Finite(FinitePlace::Rational(_)))
            }) {
                Some((_, ps)) => ps.push(&e.place),
                None => finite.push((e.kind, vec![&e.place])),
            }
        }
        finite.sort_by_key(|(k, ps)| (std::cmp::Reverse(k.euler()), matches!(ps[0], Place::Finite(FinitePlace::Factor(_)))));
        let mut parts = Vec::new();
        for (k, ps) in finite {
            let count: usize = ps.iter().map(|p| p.degree()).sum();
            let prefix = if count > 1 { count.to_string() } else { String::new() };
            let labels: Vec<String> = ps.iter().map(|p| p.label()).collect();
            parts.push(format!("{prefix}{k}({})", labels.join(",")));
        }
        for e in self.fibers.iter().filter(|e| e.place == Place::Infinity) {
            parts.push(format!("{}(inf)", e.kind));
        }
        f.write_str(&parts.join(" "))
    }
}

/// A group in a written fiber list such as `2I2(-15,-96)`, `2I1(64t^2+33t+9)`
/// or a bare `I8`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListedFiber {
    pub kind: KodairaKind,
    pub count: usize,
    pub places: Vec<String>,
}

/// Parses a whitespace-separated fiber list; places are optional.
pub fn parse_fiber_list(s: &str) -> Result<Vec<ListedFiber>> {
    let mut out = Vec::new();
    for tok in s.split_whitespace() {
        let digits = tok.chars().take_while(char::is_ascii_digit).count();
        let count = if digits == 0 { 1 } else { tok[..digits].parse().map_err(|_| Error::Parse(tok.into()))? };
        let rest = &tok[digits..];
        let (kind, places) = match rest.find('(') {
            Some(i) => {
                let inner = rest[i + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {tok:?}")))?;
                (&rest[..i], inner.split(',').map(|p| p.trim().to_string()).collect())
            }
            None => (rest, vec![]),
        };
        let kind: KodairaKind = kind.parse()?;
        out.push(ListedFiber { kind, count, places });
    }
    Ok(out)
}

/// Sorted kinds of a fiber list, each repeated by its count.
pub fn listed_kinds(list: &[ListedFiber]) -> Vec<KodairaKind> {
    let mut v: Vec<_> = list.iter().flat_map(|f| std::iter::repeat_n(f.kind, f.count)).collect();
    v.sort();
    v
}

/// Sorted `(kind, place)` pairs of a fiber list in the form of
/// [`FiberReport::signature`]; `None` if some group lacks places.
pub fn listed_signature(list: &[ListedFiber]) -> Option<Vec<(KodairaKind, String)>> {
    let mut v = Vec::new();
    for f in list {
        if f.places.is_empty() {
            return None;
        }
        v.extend(f.places.iter().map(|p| (f.kind, if p == "∞" { "inf".to_string() } else { p.clone() })));
    }
    v.sort();
    Some(v)
}

/// Euler sum of a fiber list.
pub fn listed_euler(list: &[ListedFiber]) -> u32 {
    list.iter().map(|f| f.kind.euler() * f.count as u32).sum()
}

/// Classifies every zero of `Δ` and the point at infinity.
pub fn analyze_fibration(w: &WeierstrassModel) -> Result<FiberReport> {
    w.check_degree_bounds()?;
    let inv = c_invariants(w)?;
    let mut fibers = Vec::new();
    for (place, _) in places_of(&inv.disc) {
        let pieces: Vec<FinitePlace> = match place {
            FinitePlace::Rational(_) => vec![place],
            FinitePlace::Factor(f) => {
                // split so that c4 and c6 vanish uniformly on each piece
                let mut out = Vec::new();
                for (g, _) in split_by_order(&f, &inv.c4) {
                    for (h, _) in split_by_order(&g, &inv.c6) {
                        out.push(FinitePlace::Factor(h));
                    }
                }
                out
            }
        };
        for fp in pieces {
            let f = fp.factor();
            let kind = kodaira_from_valuations(
                order_along(&f, &inv.c4),
                order_along(&f, &inv.c6),
                order_along(&f, &inv.disc),
            )?;
            if let Some(kind) = kind {
                fibers.push(FiberEntry { kind, place: Place::Finite(fp) });
            }
        }
    }
    let (a, b, d) = valuations_at_infinity(&inv);
    if let Some(kind) = kodaira_from_valuations(a, b, d)? {
        fibers.push(FiberEntry { kind, place: Place::Infinity });
    }
    let euler_sum = fibers.iter().map(FiberEntry::euler).sum();
    Ok(FiberReport { fibers, euler_sum })
}

/// A Weierstrass model whose coefficients are polynomials in `t` with
/// coefficients polynomial in a parameter `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricModel {
    pub a: [Poly<QPoly>; 5],
}

impl ParametricModel {
    /// Substitutes `k`.
    pub fn specialize(&self, k: &BigRational) -> WeierstrassModel {
        let mut a: [QPoly; 5] = Default::default();
        for (dst, src) in a.iter_mut().zip(&self.a) {
            *dst = src.map(|c| c.eval(k));
        }
        WeierstrassModel { a }
    }
}

/// Builders for the parametric models: `t` and `k` as elements of
/// `Q[k][t]`, and integer constants.
pub mod vars {
    use super::*;

    pub fn t() -> Poly<QPoly> {
        Poly::x()
    }

    pub fn k() -> Poly<QPoly> {
        Poly::constant(QPoly::x())
    }

    pub fn c(n: i64) -> Poly<QPoly> {
        <Poly<QPoly> as Coeff>::from_int(n)
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["a1", "a2", "a3", "a4", "a6"];
        let parts: Vec<String> = self
            .a
            .iter()
            .zip(names)
            .filter(|(p, _)| !p.is_zero())
            .map(|(p, n)| format!("{n}={p}"))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

/// `u` such that `aᵢ(printed) = aᵢ(model) / uⁱ` for every `i`, searched
/// among the candidates; used to compare printed equations that differ from
/// a specialization by a scaling of `x` and `y`.
pub fn scaling_between(model: &WeierstrassModel, printed: &WeierstrassModel, candidates: &[i64]) -> Option<BigRational> {
    candidates.iter().map(|&u| BigRational::from_integer(u.into())).find(|u| {
        !Zero::is_zero(u) && model.rescale(u).map(|m| &m == printed).unwrap_or(false)
    })
}
