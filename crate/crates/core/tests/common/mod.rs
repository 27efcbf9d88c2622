//! Random inputs and invariant checks shared by the acceptance and property
//! suites.

#![allow(dead_code)]

use k3_lattice::algebra::{snf, IntMatrix};
use k3_lattice::lattice::{BinaryQuadraticForm, Lattice};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// A nonsingular even symmetric matrix of rank 1..=5 with entries in
/// `[-bound, bound]` off the diagonal and `2·[-bound, bound]` on it.
pub fn random_even_lattice<R: Rng>(rng: &mut R, bound: i64) -> Lattice {
    loop {
        let n = rng.gen_range(1..=5);
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            rows[i][i] = 2 * rng.gen_range(-bound..=bound);
            for j in i + 1..n {
                let x = rng.gen_range(-bound..=bound);
                rows[i][j] = x;
                rows[j][i] = x;
            }
        }
        if let Ok(l) = Lattice::from_rows(&rows) {
            if !l.det().is_zero() {
                return l;
            }
        }
    }
}

/// A reduced-or-not even positive-definite form with `a, c ≤ 2·bound`.
pub fn random_even_form<R: Rng>(rng: &mut R, bound: i64) -> BinaryQuadraticForm {
    loop {
        let a = 2 * rng.gen_range(1..=bound);
        let c = 2 * rng.gen_range(1..=bound);
        let b = rng.gen_range(-bound..=bound);
        let f = BinaryQuadraticForm::new(a, b, c);
        if f.is_positive_definite() {
            return f;
        }
    }
}

/// A product of `steps` random elementary matrices, swaps and sign flips.
pub fn random_unimodular<R: Rng>(rng: &mut R, steps: usize) -> [[i64; 2]; 2] {
    let mut m = [[1i64, 0], [0, 1]];
    let mul = |x: [[i64; 2]; 2], y: [[i64; 2]; 2]| {
        [
            [x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]],
            [x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]],
        ]
    };
    for _ in 0..steps {
        let k = rng.gen_range(-2..=2);
        let e = match rng.gen_range(0..4) {
            0 => [[1, k], [0, 1]],
            1 => [[1, 0], [k, 1]],
            2 => [[0, 1], [1, 0]],
            _ => [[-1, 0], [0, 1]],
        };
        m = mul(m, e);
    }
    m
}

/// Checks the Smith normal form and discriminant form of `l` against each
/// other and against the determinant; returns a description of the first
/// violated invariant.
pub fn check_lattice_invariants(l: &Lattice) -> Result<(), String> {
    let a = l.gram();
    let r = snf(a);
    if r.u.mul(a).and_then(|x| x.mul(&r.v)).map_err(|e| e.to_string())? != r.d {
        return Err(format!("U·A·V != D for {a}"));
    }
    for m in [&r.u, &r.v] {
        if !m.det().map_err(|e| e.to_string())?.abs().is_one() {
            return Err(format!("transform is not unimodular for {a}"));
        }
    }
    if r.v.mul(&r.v_inv).map_err(|e| e.to_string())? != IntMatrix::identity(a.rows()) {
        return Err(format!("V⁻¹ is wrong for {a}"));
    }
    let d = r.invariant_factors();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if i != j && !r.d[(i, j)].is_zero() {
                return Err(format!("D is not diagonal for {a}"));
            }
        }
    }
    if d.iter().any(|x| x.is_negative()) || d.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
        return Err(format!("invariant factors {d:?} do not form a divisor chain"));
    }
    let prod: BigInt = d.iter().product();
    if prod != l.det().abs() {
        return Err(format!("product of invariant factors {prod} != |det| {}", l.det().abs()));
    }
    let f = l.discriminant_form().map_err(|e| e.to_string())?;
    if f.group_order() != l.det().abs() {
        return Err(format!("discriminant group order {} != |det|", f.group_order()));
    }
    let expected: Vec<u64> = d.iter().filter(|x| !x.is_one()).map(|x| x.try_into().unwrap()).collect();
    if f.orders() != expected {
        return Err(format!("orders {:?} != invariant factors {expected:?}", f.orders()));
    }
    if !f.check_consistency(l).map_err(|e| e.to_string())? || !f.check_generator_orders(l).map_err(|e| e.to_string())? {
        return Err(format!("discriminant form inconsistent for {a}"));
    }
    Ok(())
}

/// Reduction is idempotent, lands in the reduced domain, preserves the
/// determinant and is invariant under `m`.
pub fn check_round_trip(f: &BinaryQuadraticForm, m: [[i64; 2]; 2]) -> Result<(), String> {
    let r = f.reduce().map_err(|e| e.to_string())?;
    let g = f.transform(m);
    let rg = g.reduce().map_err(|e| e.to_string())?;
    if r != rg {
        return Err(format!("{f} reduces to {r}, but its transform {g} reduces to {rg}"));
    }
    if !r.is_reduced() || r.det() != f.det() || r.is_even() != f.is_even() || r.reduce().ok() != Some(r) {
        return Err(format!("{f} reduces to the invalid representative {r}"));
    }
    Ok(())
}
