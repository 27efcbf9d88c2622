use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::QPoly;

fn sign_changes(seq: &[QPoly], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
    }
    n
}

fn sturm_sequence(f: &QPoly) -> Vec<QPoly> {
    let mut seq = vec![f.clone(), f.derivative()];
    while !seq.last().unwrap().is_zero() {
        let k = seq.len();
        let r = seq[k - 2].div_rem(&seq[k - 1]).expect("nonzero").1;
        seq.push(-&r);
    }
    seq.pop();
    seq
}

/// Distinct rational roots of a nonzero polynomial, ascending.
///
/// Real roots of the squarefree part are isolated with a Sturm sequence and
/// bisected until the interval is shorter than `1/L`, where `L` is the
/// leading coefficient of the primitive integer form; any rational root has
/// the form `k/L`, so the few such values in the interval are tested exactly.
pub fn rational_roots(f: &QPoly) -> Vec<BigRational> {
    let Some(deg) = f.degree() else { return vec![] };
    if deg == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    // strip the root at 0 first so the remaining roots are bounded away from it
    let mut g = f.clone();
    if Zero::is_zero(&g.coeff(0)) {
        out.push(BigRational::zero());
        let k = g.coeffs().iter().position(|c| !Zero::is_zero(c)).unwrap();
        g = QPoly::new(g.coeffs()[k..].to_vec());
    }
    let sqf = g.div_exact(&g.gcd(&g.derivative())).expect("gcd divides");
    if sqf.degree().unwrap_or(0) == 0 {
        return out;
    }
    let ints = sqf.primitive_integer();
    let lead = BigRational::from_integer(ints.last().unwrap().clone());
    let sqf = QPoly::new(ints.iter().cloned().map(BigRational::from_integer).collect());
    let seq = sturm_sequence(&sqf);
    // Cauchy bound
    let bound = BigRational::one() + sqf.coeffs().iter().map(|c| c.abs() / lead.abs()).max().unwrap();
    let count = |a: &BigRational, b: &BigRational| sign_changes(&seq, a) - sign_changes(&seq, b);

    let mut stack = vec![(-bound.clone(), bound)];
    let width = BigRational::one() / &lead;
    while let Some((a, b)) = stack.pop() {
        let n = count(&a, &b);
        if n == 0 {
            continue;
        }
        if &b - &a < width {
            // candidates k/L in (a, b]
            let lo = (&a * &lead).floor().to_integer() + BigInt::one();
            let hi = (&b * &lead).floor().to_integer();
            let mut k = lo;
            while k <= hi {
                let r = BigRational::new(k.clone(), lead.to_integer());
                if Zero::is_zero(&sqf.eval(&r)) {
                    out.push(r);
                }
                k += 1;
            }
            continue;
        }
        let m = (&a + &b) / BigRational::from_integer(2.into());
        stack.push((a, m.clone()));
        stack.push((m, b));
    }
    out.sort();
    out.dedup();
    out
}

/// Multiplicity of `r` as a root of `f` (`f ≠ 0`).
pub fn root_multiplicity(f: &QPoly, r: &BigRational) -> u32 {
    let lin = QPoly::new(vec![-r.clone(), BigRational::one()]);
    let mut g = f.clone();
    let mut m = 0;
    while !g.is_zero() {
        let (q, rem) = g.div_rem(&lin).expect("nonzero divisor");
        if !rem.is_zero() {
            break;
        }
        g = q;
        m += 1;
    }
    m
}

/// A finite place of `P¹` over `Q`: a rational point or the set of roots of
/// a monic factor of degree ≥ 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FinitePlace {
    Rational(BigRational),
    Factor(QPoly),
}

impl FinitePlace {
    /// Monic polynomial vanishing exactly at the place.
    pub fn factor(&self) -> QPoly {
        match self {
            FinitePlace::Rational(r) => QPoly::new(vec![-r.clone(), BigRational::one()]),
            FinitePlace::Factor(p) => p.clone(),
        }
    }

    /// Number of geometric points.
    pub fn degree(&self) -> usize {
        match self {
            FinitePlace::Rational(_) => 1,
            FinitePlace::Factor(p) => p.degree().unwrap_or(0),
        }
    }
}

/// Zeros of `disc` with the order of vanishing: squarefree decomposition,
/// then rational roots pulled out of each squarefree part. Residual factors
/// of degree ≥ 2 are kept whole.
pub fn places_of(disc: &QPoly) -> Vec<(FinitePlace, u32)> {
    let mut out = Vec::new();
    for (i, g) in disc.squarefree_decomposition().into_iter().enumerate() {
        if g.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mult = i as u32 + 1;
        let mut rest = g;
        for r in rational_roots(&rest) {
            let lin = FinitePlace::Rational(r.clone()).factor();
            rest = rest.div_exact(&lin).expect("root divides");
            out.push((FinitePlace::Rational(r), mult));
        }
        if rest.degree().unwrap_or(0) > 0 {
            out.push((FinitePlace::Factor(rest.monic()), mult));
        }
    }
    out
}

/// Splits a squarefree `f` into pieces on which `p` vanishes to a constant
/// order, returning `(piece, order)`; `p = 0` gives order `u32::MAX`.
pub fn split_by_order(f: &QPoly, p: &QPoly) -> Vec<(QPoly, u32)> {
    if p.is_zero() {
        return vec![(f.clone(), u32::MAX)];
    }
    let mut out = Vec::new();
    let mut cur = f.monic();
    let mut p = p.clone();
    let mut v = 0;
    while cur.degree().unwrap_or(0) > 0 {
        let g = cur.gcd(&p);
        let rest = cur.div_exact(&g).expect("gcd divides");
        if rest.degree().unwrap_or(0) > 0 {
            out.push((rest, v));
        }
        if g.degree().unwrap_or(0) == 0 {
            break;
        }
        p = p.div_exact(&g).expect("gcd divides");
        cur = g;
        v += 1;
    }
    out
}

/// Order of vanishing of `p` along the squarefree factor `f`, assumed
/// uniform; `u32::MAX` for `p = 0`.
pub fn order_along(f: &QPoly, p: &QPoly) -> u32 {
    if p.is_zero() {
        return u32::MAX;
    }
    let mut p = p.clone();
    let mut v = 0;
    loop {
        let (q, r) = p.div_rem(f).expect("nonzero divisor");
        if !r.is_zero() {
            return v;
        }
        p = q;
        v += 1;
    }
}
