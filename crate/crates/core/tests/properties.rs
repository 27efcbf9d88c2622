mod common;

use k3_lattice::algebra::IntMatrix;
use k3_lattice::dataset::ParametricFamily;
use k3_lattice::families::keum_options;
use k3_lattice::lattice::{disc_forms_isomorphic, enumerate_even_forms, BinaryQuadraticForm, Lattice};
use k3_lattice::weierstrass::analyze_fibration;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

/// Rows of an even symmetric matrix of rank 1..=5, possibly singular.
fn even_symmetric() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5).prop_flat_map(|n| {
        proptest::collection::vec(-6i64..=6, n * n).prop_map(move |e| {
            let mut rows = vec![vec![0; n]; n];
            for i in 0..n {
                rows[i][i] = 2 * e[i * n + i];
                for j in i + 1..n {
                    rows[i][j] = e[i * n + j];
                    rows[j][i] = e[i * n + j];
                }
            }
            rows
        })
    })
}

fn nonsingular_even() -> impl Strategy<Value = Lattice> {
    even_symmetric().prop_filter_map("singular", |rows| {
        Lattice::from_rows(&rows).ok().filter(|l| !l.det().is_zero())
    })
}

fn even_form() -> impl Strategy<Value = BinaryQuadraticForm> {
    (1i64..=60, -60i64..=60, 1i64..=60)
        .prop_map(|(a, b, c)| BinaryQuadraticForm::new(2 * a, b, 2 * c))
        .prop_filter("indefinite", |f| f.is_positive_definite())
}

fn unimodular2() -> impl Strategy<Value = [[i64; 2]; 2]> {
    any::<u64>().prop_map(|seed| {
        use rand::SeedableRng;
        common::random_unimodular(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed), 10)
    })
}

/// A unimodular `n×n` matrix built from elementary column operations.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for &(i, j, k) in ops {
        let (i, j) = (i % n, j % n);
        if i != j {
            for r in rows.iter_mut() {
                r[j] += k * r[i];
            }
        }
    }
    IntMatrix::from_rows(&rows).unwrap()
}

fn is_squarefree(n: u64) -> bool {
    (2..).take_while(|p| p * p <= n).all(|p| !n.is_multiple_of(p * p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn snf_and_discriminant_form_invariants(l in nonsingular_even()) {
        if let Err(e) = common::check_lattice_invariants(&l) {
            prop_assert!(false, "{}", e);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduction_is_a_class_invariant(f in even_form(), m in unimodular2()) {
        if let Err(e) = common::check_round_trip(&f, m) {
            prop_assert!(false, "{}", e);
        }
    }

    #[test]
    fn reduced_forms_are_enumerated(f in even_form()) {
        let r = f.reduce().unwrap();
        let all = enumerate_even_forms(f.det() as u64);
        prop_assert!(all.contains(&r), "{} missing from enumerate({})", r, f.det());
    }

    #[test]
    fn discriminant_form_is_a_basis_invariant(
        l in nonsingular_even(),
        ops in proptest::collection::vec((0usize..5, 0usize..5, -2i64..=2), 0..8),
    ) {
        prop_assume!(l.det().magnitude() <= &10_000u32.into());
        let m = unimodular(l.rank(), &ops);
        let g = m.transpose().mul(l.gram()).unwrap().mul(&m).unwrap();
        let l2 = Lattice::new(g).unwrap();
        prop_assert_eq!(l2.det(), l.det());
        let (f1, f2) = (l.discriminant_form().unwrap(), l2.discriminant_form().unwrap());
        prop_assert!(disc_forms_isomorphic(&f1, &f2).unwrap());
    }

    #[test]
    fn complement_is_orthogonal_and_saturated(
        l in nonsingular_even(),
        raw in proptest::collection::vec(-4i64..=4, 5),
    ) {
        let raw = &raw[..l.rank()];
        let g = raw.iter().fold(0i64, |g, &x| g.gcd(&x));
        prop_assume!(g != 0);
        let v: Vec<BigInt> = raw.iter().map(|&x| (x / g).into()).collect();
        let (c, basis) = l.orthogonal_complement_with_basis(&v).unwrap();
        prop_assert_eq!(c.rank(), l.rank() - 1);
        for j in 0..basis.cols() {
            prop_assert!(l.pair(&v, &basis.column(j)).unwrap().is_zero());
        }
        // saturated: the basis extends to a unimodular matrix, so its maximal
        // minors have gcd 1
        if basis.cols() > 0 {
            let d = k3_lattice::algebra::snf(&basis).invariant_factors();
            prop_assert!(d.iter().all(|x| x == &BigInt::from(1)));
        }
    }

    #[test]
    fn keum_factorizations(det in -5000i64..=5000) {
        prop_assume!(det != 0);
        let k = keum_options(det).unwrap();
        for &(l, dj) in &k.options {
            prop_assert_eq!((l * l) as i64 * dj, det);
        }
        prop_assert_eq!(k.squarefree, is_squarefree(det.unsigned_abs()));
        prop_assert_eq!(k.options[0], (1, det));
    }
}

proptest! {
    // each case factors two discriminants of degree 24
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fibers_do_not_depend_on_scaling(k in -20i64..=20, num in 1i64..=6, den in 1i64..=6) {
        let m = ParametricFamily::F.model().specialize(&BigRational::from_integer(k.into()));
        let Ok(r) = analyze_fibration(&m) else { return Ok(()) };
        let u = BigRational::new(num.into(), den.into());
        let r2 = analyze_fibration(&m.rescale(&u).unwrap()).unwrap();
        prop_assert_eq!(r.signature(), r2.signature());
    }
}

#[test]
fn enumerate_48() {
    let forms: Vec<String> = enumerate_even_forms(48).iter().map(ToString::to_string).collect();
    assert_eq!(forms, ["[2 0 24]", "[4 0 12]", "[6 0 8]", "[8 4 8]"]);
}

#[test]
fn enumerated_forms_are_reduced_and_distinct() {
    for det in 1..300u64 {
        let forms = enumerate_even_forms(det);
        for f in &forms {
            assert!(f.is_reduced() && f.is_even() && f.det() == det as i128, "{f}");
        }
        let mut sorted = forms.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), forms.len());
    }
}
