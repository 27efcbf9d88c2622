use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use super::Lattice;
use crate::algebra::json::{int_to_json, rational_to_json};
use crate::algebra::{rational_mod, snf, IntMatrix};
use crate::error::{Error, Result};

/// Largest group order the exhaustive isomorphism search accepts.
pub const ISOMORPHISM_SEARCH_CAP: u64 = 10_000;

/// A finite quadratic form `(G, q)` presented as `⊕ Z/dᵢ` with the values of
/// `q` on the generators (mod 2) and of `b` on generator pairs (mod 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantForm {
    orders: Vec<u64>,
    /// Generators as integer rows in the dual basis; absent for forms built
    /// directly from `(orders, q, b)`.
    generators: Option<Vec<Vec<BigInt>>>,
    q: Vec<BigRational>,
    b: Vec<Vec<BigRational>>,
}

impl DiscriminantForm {
    /// Discriminant form of an even nonsingular lattice from its Smith
    /// normal form: generator `i` is row `i` of `V⁻¹`, read in the dual basis.
    pub fn of_lattice(l: &Lattice) -> Result<Self> {
        if l.det().is_zero() {
            return Err(Error::Singular);
        }
        let inv = l.inverse()?;
        let r = snf(l.gram());
        let mut orders = Vec::new();
        let mut gens = Vec::new();
        for (i, d) in r.invariant_factors().into_iter().enumerate() {
            if d <= BigInt::from(1) {
                continue;
            }
            orders.push(d.to_u64().ok_or_else(|| Error::Overflow(d.to_string()))?);
            gens.push(r.v_inv.row(i).to_vec());
        }
        let rat: Vec<Vec<BigRational>> = gens
            .iter()
            .map(|g| g.iter().cloned().map(BigRational::from_integer).collect())
            .collect();
        let n = gens.len();
        let mut q = Vec::with_capacity(n);
        let mut b = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            q.push(rational_mod(&inv.bilinear(&rat[i], &rat[i])?, 2));
            for j in 0..n {
                b[i][j] = rational_mod(&inv.bilinear(&rat[i], &rat[j])?, 1);
            }
        }
        Ok(DiscriminantForm { orders, generators: Some(gens), q, b })
    }

    /// Abstract form from its presentation; values are reduced mod 2 / mod 1
    /// and checked for well-definedness on `⊕ Z/dᵢ`.
    pub fn from_parts(orders: Vec<u64>, q: Vec<BigRational>, b: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = orders.len();
        if q.len() != n || b.len() != n || b.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("orders, q and b must agree in length".into()));
        }
        if orders.iter().any(|&d| d < 2) {
            return Err(Error::Parse("cyclic factor orders must exceed 1".into()));
        }
        let q: Vec<_> = q.iter().map(|x| rational_mod(x, 2)).collect();
        let b: Vec<Vec<_>> = b.iter().map(|r| r.iter().map(|x| rational_mod(x, 1)).collect()).collect();
        for i in 0..n {
            let d = BigRational::from_integer(orders[i].into());
            let dq = &d * &q[i];
            if !dq.is_integer() || !(&d * &dq).to_integer().is_even() {
                return Err(Error::Parse(format!("q = {} is not defined on Z/{}", q[i], orders[i])));
            }
            if rational_mod(&b[i][i], 1) != rational_mod(&q[i], 1) {
                return Err(Error::Parse("b(g,g) must equal q(g) mod 1".into()));
            }
            for j in 0..n {
                if b[i][j] != b[j][i] || !(&d * &b[i][j]).is_integer() {
                    return Err(Error::Parse("b must be symmetric and defined on the group".into()));
                }
            }
        }
        Ok(DiscriminantForm { orders, generators: None, q, b })
    }

    /// `(Z/d)(q)`.
    pub fn cyclic(order: u64, q: BigRational) -> Result<Self> {
        let b = rational_mod(&q, 1);
        Self::from_parts(vec![order], vec![q], vec![vec![b]])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn generators(&self) -> Option<&[Vec<BigInt>]> {
        self.generators.as_deref()
    }

    pub fn q_values(&self) -> &[BigRational] {
        &self.q
    }

    pub fn b_values(&self) -> &[Vec<BigRational>] {
        &self.b
    }

    pub fn group_order(&self) -> BigInt {
        self.orders.iter().map(|&d| BigInt::from(d)).product()
    }

    /// Same group with `q ↦ -q`, `b ↦ -b`.
    pub fn negate(&self) -> Self {
        let neg = |x: &BigRational, m| rational_mod(&-x, m);
        DiscriminantForm {
            orders: self.orders.clone(),
            generators: self.generators.clone(),
            q: self.q.iter().map(|x| neg(x, 2)).collect(),
            b: self.b.iter().map(|r| r.iter().map(|x| neg(x, 1)).collect()).collect(),
        }
    }

    /// Checks `q(gᵢ+gⱼ) ≡ q(gᵢ)+q(gⱼ)+2b(gᵢ,gⱼ) (mod 2)` against a lattice
    /// whose dual vectors the generators are.
    pub fn check_consistency(&self, l: &Lattice) -> Result<bool> {
        let Some(gens) = &self.generators else {
            return Ok(true);
        };
        for i in 0..gens.len() {
            for j in 0..gens.len() {
                let sum: Vec<BigInt> = gens[i].iter().zip(&gens[j]).map(|(a, b)| a + b).collect();
                let lhs = l.qvalue(&sum)?;
                let two = BigRational::from_integer(2.into());
                let rhs = rational_mod(&(&self.q[i] + &self.q[j] + two * &self.b[i][j]), 2);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether each generator has exact order `dᵢ` in `L*/L`.
    pub fn check_generator_orders(&self, l: &Lattice) -> Result<bool> {
        let Some(gens) = &self.generators else {
            return Ok(true);
        };
        let inv = l.inverse()?;
        for (g, &d) in gens.iter().zip(&self.orders) {
            let g: Vec<BigRational> = g.iter().cloned().map(BigRational::from_integer).collect();
            let coords = inv.left_mul_vec(&g)?;
            let order = coords.iter().fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
            if order != BigInt::from(d) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "orders": self.orders,
            "q": self.q.iter().map(rational_to_json).collect::<Vec<_>>(),
            "b": self.b.iter().map(|r| r.iter().map(rational_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        });
        if let Some(g) = &self.generators {
            v["generators"] = g.iter().map(|r| r.iter().map(int_to_json).collect::<Vec<_>>()).collect();
        }
        v
    }
}

/// Integer encoding of a form with exponent `e`: `q = qn/e (mod 2)`,
/// `b = bn/e (mod 1)`.
struct Encoded {
    orders: Vec<u64>,
    e: i128,
    qn: Vec<i128>,
    bn: Vec<Vec<i128>>,
    size: usize,
}

impl Encoded {
    fn new(f: &DiscriminantForm, e: u64) -> Self {
        let big_e = BigRational::from_integer(e.into());
        let num = |x: &BigRational| -> i128 {
            (x * &big_e).to_integer().to_i128().expect("bounded by the search cap")
        };
        Encoded {
            orders: f.orders.clone(),
            e: e as i128,
            qn: f.q.iter().map(num).collect(),
            bn: f.b.iter().map(|r| r.iter().map(num).collect()).collect(),
            size: f.orders.iter().product::<u64>() as usize,
        }
    }

    fn element(&self, mut idx: usize) -> Vec<u64> {
        self.orders
            .iter()
            .map(|&d| {
                let c = idx as u64 % d;
                idx /= d as usize;
                c
            })
            .collect()
    }

    fn index(&self, x: &[u64]) -> usize {
        let mut idx = 0usize;
        for (c, &d) in x.iter().zip(&self.orders).rev() {
            idx = idx * d as usize + *c as usize;
        }
        idx
    }

    fn order(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.orders).fold(1u64, |acc, (&c, &d)| acc.lcm(&(d / c.gcd(&d))))
    }

    fn q(&self, x: &[u64]) -> i128 {
        let m = 2 * self.e;
        let mut s = 0i128;
        for i in 0..x.len() {
            let xi = x[i] as i128;
            s = (s + xi * xi % m * self.qn[i]) % m;
            for j in i + 1..x.len() {
                s = (s + 2 * (xi * x[j] as i128 % m) * self.bn[i][j]) % m;
            }
        }
        s.rem_euclid(m)
    }

    fn b(&self, x: &[u64], y: &[u64]) -> i128 {
        let mut s = 0i128;
        for i in 0..x.len() {
            for j in 0..y.len() {
                s = (s + (x[i] as i128 * y[j] as i128 % self.e) * self.bn[i][j]) % self.e;
            }
        }
        s.rem_euclid(self.e)
    }

    fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).zip(&self.orders).map(|((a, b), d)| (a + b) % d).collect()
    }

    fn scale(&self, x: &[u64], k: u64) -> Vec<u64> {
        x.iter().zip(&self.orders).map(|(a, d)| (a * (k % d)) % d).collect()
    }
}

fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let m = IntMatrix::diagonal_matrix(&orders.iter().map(|&d| BigInt::from(d)).collect::<Vec<_>>());
    snf(&m)
        .invariant_factors()
        .into_iter()
        .filter_map(|d| d.to_u64())
        .filter(|&d| d > 1)
        .collect()
}

/// An isometry `F1 → F2`, as the images of the generators of `F1` written in
/// the generator coordinates of `F2`, or `None` if the forms are not
/// isomorphic.
pub fn find_isomorphism(f1: &DiscriminantForm, f2: &DiscriminantForm) -> Result<Option<Vec<Vec<u64>>>> {
    for f in [f1, f2] {
        let order = f.group_order();
        if order > BigInt::from(ISOMORPHISM_SEARCH_CAP) {
            return Err(Error::GroupTooLarge { order: order.to_string(), cap: ISOMORPHISM_SEARCH_CAP });
        }
    }
    if invariant_factors(&f1.orders) != invariant_factors(&f2.orders) {
        return Ok(None);
    }
    let e = f1.orders.iter().chain(&f2.orders).fold(1u64, |a, d| a.lcm(d));
    let (src, dst) = (Encoded::new(f1, e), Encoded::new(f2, e));
    if src.size == 1 {
        return Ok(Some(vec![]));
    }

    // Target elements sorted by order, then by index.
    let mut elems: Vec<(u64, Vec<u64>)> = (0..dst.size)
        .map(|i| {
            let x = dst.element(i);
            (dst.order(&x), x)
        })
        .collect();
    elems.sort_by_key(|(o, x)| (*o, dst.index(x)));

    let candidates: Vec<Vec<Vec<u64>>> = (0..src.orders.len())
        .map(|i| {
            elems
                .iter()
                .filter(|(o, x)| *o == src.orders[i] && dst.q(x) == src.qn[i].rem_euclid(2 * e as i128))
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect();

    let mut chosen: Vec<Vec<u64>> = Vec::new();
    Ok(backtrack(&src, &dst, &candidates, &mut chosen).then_some(chosen))
}

fn backtrack(src: &Encoded, dst: &Encoded, cands: &[Vec<Vec<u64>>], chosen: &mut Vec<Vec<u64>>) -> bool {
    let i = chosen.len();
    if i == cands.len() {
        return is_bijective(src, dst, chosen);
    }
    for h in &cands[i] {
        let fits = chosen
            .iter()
            .enumerate()
            .all(|(j, hj)| dst.b(h, hj) == src.bn[i][j].rem_euclid(src.e));
        if !fits {
            continue;
        }
        chosen.push(h.clone());
        if backtrack(src, dst, cands, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn is_bijective(src: &Encoded, dst: &Encoded, images: &[Vec<u64>]) -> bool {
    if src.size != dst.size {
        return false;
    }
    let mut seen = vec![false; dst.size];
    for idx in 0..src.size {
        let x = src.element(idx);
        let mut y = vec![0u64; dst.orders.len()];
        for (c, h) in x.iter().zip(images) {
            y = dst.add(&y, &dst.scale(h, *c));
        }
        let k = dst.index(&y);
        if seen[k] {
            return false;
        }
        seen[k] = true;
    }
    true
}

/// Whether two finite quadratic forms are isomorphic, by exhaustive search.
pub fn disc_forms_isomorphic(f1: &DiscriminantForm, f2: &DiscriminantForm) -> Result<bool> {
    Ok(find_isomorphism(f1, f2)?.is_some())
}
