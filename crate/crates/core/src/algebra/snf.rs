//! Smith normal form with transformation matrices.
//!
//! For an integer matrix `A` (m×n) we compute unimodular `U` (m×m) and
//! `V` (n×n) with `U·A·V = D`, where `D` is diagonal, nonnegative, and
//! `d₁ | d₂ | … `. `V⁻¹` is tracked alongside `V` because the rows of `V⁻¹`
//! are what the discriminant-form computation consumes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// `det(U)·det(V)`, tracked through the elementary operations.
    pub transform_sign: i32,
}

impl SnfResult {
    /// Diagonal entries `d₁, …, d_min(m,n)`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.invariant_factors().iter().filter(|x| !x.is_zero()).count()
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
    sign: i32,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.sign = -self.sign;
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols() {
                let t = m[(i, c)].clone();
                let o = m[(j, c)].clone();
                m.set(i, c, o);
                m.set(j, c, t);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.sign = -self.sign;
        for m in [&mut self.a, &mut self.v] {
            for r in 0..m.rows() {
                let t = m[(r, i)].clone();
                let o = m[(r, j)].clone();
                m.set(r, i, o);
                m.set(r, j, t);
            }
        }
        let vi = &mut self.v_inv;
        for c in 0..vi.cols() {
            let t = vi[(i, c)].clone();
            let o = vi[(j, c)].clone();
            vi.set(i, c, o);
            vi.set(j, c, t);
        }
    }

    /// row_i += f * row_j
    fn add_row(&mut self, i: usize, j: usize, f: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols() {
                let d = f * &m[(j, c)];
                *m.get_mut(i, c) += d;
            }
        }
    }

    /// col_i += f * col_j; on V⁻¹ this is row_j -= f * row_i.
    fn add_col(&mut self, i: usize, j: usize, f: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for r in 0..m.rows() {
                let d = f * &m[(r, j)];
                *m.get_mut(r, i) += d;
            }
        }
        let vi = &mut self.v_inv;
        for c in 0..vi.cols() {
            let d = f * &vi[(i, c)];
            *vi.get_mut(j, c) -= d;
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.sign = -self.sign;
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols() {
                let v = -&m[(i, c)];
                m.set(i, c, v);
            }
        }
    }

    /// Position of the nonzero entry of least absolute value in the
    /// trailing submatrix starting at `(t, t)`.
    fn smallest_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.abs() < self.a[(bi, bj)].abs(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

/// Smith normal form of any integer matrix.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.clone(),
        u: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
        sign: 1,
    };
    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = w.smallest_pivot(t) else {
                return finish(w);
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let p = w.a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if w.a[(i, t)].is_zero() {
                    continue;
                }
                let q = w.a[(i, t)].div_floor(&p);
                w.add_row(i, t, &-q);
                clean &= w.a[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if w.a[(t, j)].is_zero() {
                    continue;
                }
                let q = w.a[(t, j)].div_floor(&p);
                w.add_col(j, t, &-q);
                clean &= w.a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // Row and column are clear; enforce divisibility of the remainder.
            let offending = (t + 1..m)
                .find(|&i| (t + 1..n).any(|j| !w.a[(i, j)].is_multiple_of(&p)));
            match offending {
                Some(i) => w.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
    }
    finish(w)
}

fn finish(w: Work) -> SnfResult {
    SnfResult { d: w.a, u: w.u, v: w.v, v_inv: w.v_inv, transform_sign: w.sign }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn check(a: &IntMatrix) -> SnfResult {
        let r = snf(a);
        assert_eq!(r.u.mul(a).unwrap().mul(&r.v).unwrap(), r.d);
        assert_eq!(r.v.mul(&r.v_inv).unwrap(), IntMatrix::identity(a.cols()));
        assert_eq!(r.u.det().unwrap().abs(), BigInt::from(1));
        assert_eq!(r.v.det().unwrap().abs(), BigInt::from(1));
        assert_eq!(
            BigInt::from(r.transform_sign),
            r.u.det().unwrap() * r.v.det().unwrap()
        );
        let f = r.invariant_factors();
        for w in f.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        r
    }

    #[test]
    fn identity_is_fixed() {
        let r = check(&IntMatrix::identity(2));
        assert_eq!(r.d, IntMatrix::identity(2));
        assert_eq!(r.u, IntMatrix::identity(2));
        assert_eq!(r.v, IntMatrix::identity(2));
    }

    #[test]
    fn binary_form_8_4_8() {
        let r = check(&m(&[vec![8, 4], vec![4, 8]]));
        assert_eq!(r.d, IntMatrix::diagonal_matrix(&[4, 12]));
    }

    #[test]
    fn permuted_u_plus_six() {
        let r = check(&m(&[vec![0, 0, 1], vec![0, 6, 0], vec![1, 0, 0]]));
        assert_eq!(r.d, IntMatrix::diagonal_matrix(&[1, 1, 6]));
    }

    #[test]
    fn non_divisible_diagonal_gets_fixed() {
        let r = check(&IntMatrix::diagonal_matrix(&[6, 4]));
        assert_eq!(r.invariant_factors(), vec![BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn rectangular_and_singular() {
        let r = check(&m(&[vec![2, 4, 6]]));
        assert_eq!(r.invariant_factors(), vec![BigInt::from(2)]);
        let r = check(&m(&[vec![1, 2], vec![2, 4], vec![3, 6]]));
        assert_eq!(r.rank(), 1);
        let r = check(&IntMatrix::zeros(2, 3));
        assert_eq!(r.rank(), 0);
    }

    #[test]
    fn negative_entries() {
        let r = check(&m(&[vec![-2, 1], vec![1, -2]]));
        assert_eq!(r.d, IntMatrix::diagonal_matrix(&[1, 3]));
    }
}
