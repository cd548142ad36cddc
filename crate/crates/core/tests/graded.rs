//! Graded invariants: Cartan polynomial, Hilbert series, cotangent complex, ζ.

mod common;

use common::{binom, brute_graded_dims, ints, rng, series_inv, series_mul};
use ncpot::catalog;
use ncpot::graded::{
    cartan_polynomial, cotangent_complex_check, cy_hilbert_check, filtered_dims, graded_dims, graded_dims_certified,
    hilbert_from_cartan, zeta_characteristic, GradedQuotient, DEFAULT_DIM_BOUND,
};
use ncpot::linalg::{PrimeField, Rationals, DEFAULT_PRIME};
use ncpot::random::random_quiver_with_potential;
use ncpot::series::{MatrixSeries, Series};
use ncpot::{qi, Error, Quiver};
use proptest::prelude::*;

fn prime() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME).unwrap()
}

fn s(n: usize, cs: &[i64]) -> Series {
    Series::from_ints(n, cs)
}

#[test]
fn cartan_polynomial_examples() {
    let cube = cartan_polynomial(&Quiver::free(&["x", "y", "z"]), 3).unwrap();
    assert_eq!(cube.entry(0, 0), &s(3, &[1, -3, 3, -1]).with_order(cube.order()));
    let con = cartan_polynomial(catalog::conifold().quiver(), 4).unwrap();
    let diag = s(con.order(), &[1, 0, 0, 0, -1]);
    let off = s(con.order(), &[0, -2, 0, 2]);
    assert_eq!(con.entry(0, 0), &diag);
    assert_eq!(con.entry(1, 1), &diag);
    assert_eq!(con.entry(0, 1), &off);
    assert_eq!(con.entry(1, 0), &off);
    let skl = cartan_polynomial(&Quiver::free(&["x", "y"]), 4).unwrap();
    assert_eq!(skl.entry(0, 0), &s(skl.order(), &[1, -2, 0, 2, -1]));
    assert!(cartan_polynomial(&Quiver::free(&["x"]), 2).is_err());
}

#[test]
fn cartan_inverse_examples() {
    let p = cartan_polynomial(&Quiver::free(&["x", "y", "z"]), 3).unwrap();
    let h = hilbert_from_cartan(&p, 8).unwrap();
    let expect: Vec<i64> = (0..=8).map(|n| binom(n + 2, 2) as i64).collect();
    assert_eq!(ints(h.entry(0, 0)), expect);
    let id = MatrixSeries::identity(2, 5);
    assert_eq!(hilbert_from_cartan(&id, 5).unwrap(), id);
    let singular = MatrixSeries::from_entries(vec![vec![s(3, &[0, 1])]]).unwrap();
    assert!(hilbert_from_cartan(&singular, 3).is_err());
}

#[test]
fn conifold_cartan_inverse_low_degrees() {
    // p = a·1 + b·J with J the swap; eigenvalues a ± b factor as
    // (1−t)³(1+t) and (1+t)³(1−t), so p⁻¹ has closed-form entries.
    let n = 6;
    let h = hilbert_from_cartan(&cartan_polynomial(catalog::conifold().quiver(), 4).unwrap(), n).unwrap();
    let plus = series_inv(&series_mul(&[1, -3, 3, -1], &[1, 1], n), n);
    let minus = series_inv(&series_mul(&[1, 3, 3, 1], &[1, -1], n), n);
    let diag: Vec<i64> = (0..=n).map(|k| (plus[k] + minus[k]) / 2).collect();
    let off: Vec<i64> = (0..=n).map(|k| (plus[k] - minus[k]) / 2).collect();
    assert_eq!(&diag[..4], &[1, 0, 4, 0]);
    assert_eq!(&off[..4], &[0, 2, 0, 6]);
    assert_eq!(ints(h.entry(0, 0)), diag);
    assert_eq!(ints(h.entry(0, 1)), off);
}

#[test]
fn graded_dims_examples() {
    let d = graded_dims(&catalog::basic(), prime(), 5).unwrap();
    assert_eq!(ints(d.entry(0, 0)), vec![1, 3, 6, 10, 15, 21]);
    let d = graded_dims(&catalog::sklyanin_quadratic(qi(1), qi(2), qi(1)), prime(), 4).unwrap();
    assert_eq!(ints(d.entry(0, 0)), vec![1, 3, 6, 10, 15]);
    let g = ncpot::mckay::GroupData::cyclic(3, [1, 1, 1]).unwrap();
    let mq = ncpot::mckay::build_quiver(&g).unwrap();
    let phi = ncpot::mckay::triangle_coefficients(&mq).unwrap().exact.unwrap();
    let d = graded_dims(&phi, prime(), 3).unwrap();
    let o = mq.trivial_vertex();
    assert_eq!(ints(d.entry(o, o)), vec![1, 0, 0, 10]);
}

#[test]
fn oracle_matches_independent_rank_count_on_curated_examples() {
    for name in ["basic", "conifold", "cube", "cyclic3", "cyclic4", "sklyanin2", "sklyanin3", "yang-mills2"] {
        let phi = catalog::by_name(name).unwrap();
        let lib = graded_dims(&phi, Rationals, 4).unwrap();
        let brute = brute_graded_dims(&phi, 4);
        for i in 0..lib.size() {
            for j in 0..lib.size() {
                let l: Vec<usize> = ints(lib.entry(i, j)).into_iter().map(|v| v as usize).collect();
                assert_eq!(l, brute[i][j], "{name} entry ({i},{j})");
            }
        }
    }
}

#[test]
fn cy_hilbert_check_examples() {
    assert!(cy_hilbert_check(&catalog::basic(), prime(), 8).unwrap().pass());
    assert!(cy_hilbert_check(&catalog::conifold(), prime(), 6).unwrap().pass());
    let r = cy_hilbert_check(&catalog::cube_control(), prime(), 4).unwrap();
    assert_eq!(r.discrepancy.as_ref().map(|d| d.degree), Some(2));
}

#[test]
fn cartan_times_dims_is_identity_on_cy_family() {
    for name in ["basic", "conifold", "sklyanin2", "sklyanin3", "yang-mills2"] {
        let phi = catalog::by_name(name).unwrap();
        let n = 6;
        let d = graded_dims(&phi, prime(), n).unwrap();
        let p = cartan_polynomial(phi.quiver(), phi.homogeneous_degree().unwrap()).unwrap().with_order(n);
        assert!(p.mul(&d).is_identity(), "{name}");
    }
}

#[test]
fn prime_and_rational_ranks_agree() {
    for name in ["basic", "conifold", "cube", "sklyanin3"] {
        let phi = catalog::by_name(name).unwrap();
        assert!(graded_dims_certified(&phi, prime(), 4).is_ok(), "{name}");
    }
}

#[test]
fn cotangent_complex_examples() {
    for (name, exact) in [("basic", true), ("conifold", true), ("cube", false)] {
        let phi = catalog::by_name(name).unwrap();
        let gq = GradedQuotient::new(&phi, Rationals, 5).unwrap();
        let r = cotangent_complex_check(&phi, &gq, 5).unwrap();
        assert!(r.is_complex(), "{name}");
        assert_eq!(r.is_exact(), exact, "{name}");
        if exact {
            assert!(r.euler_ok(), "{name}");
        }
    }
    let phi = catalog::cube_control();
    let gq = GradedQuotient::new(&phi, Rationals, 4).unwrap();
    assert_eq!(cotangent_complex_check(&phi, &gq, 4).unwrap().first_inexact_degree(), Some(2));
}

#[test]
fn cotangent_truncation_warns_below_potential_degree() {
    let phi = catalog::conifold();
    let gq = GradedQuotient::new(&phi, prime(), 2).unwrap();
    assert!(cotangent_complex_check(&phi, &gq, 2).unwrap().warning.is_some());
}

#[test]
fn zeta_of_polynomial_algebra() {
    let n = 8;
    let z = zeta_characteristic(&Quiver::free(&["x", "y", "z"]), 3, n, n).unwrap();
    let mut oracle = vec![0i64; n + 1];
    oracle[0] = 1;
    for s in 1..=n {
        let mut f = vec![0i64; n + 1];
        f[0] = 1;
        f[s] = -1;
        let inv = series_inv(&f, n);
        for _ in 0..3 {
            oracle = series_mul(&oracle, &inv, n);
        }
    }
    assert_eq!(ints(&z), oracle);
    assert_eq!(ints(&zeta_characteristic(&Quiver::free(&["x", "y", "z"]), 3, 0, 0).unwrap()), vec![1]);
}

#[test]
fn zeta_of_cubic_sklyanin() {
    let n = 6;
    let z = zeta_characteristic(&Quiver::free(&["x", "y"]), 4, n, n).unwrap();
    let mut oracle = vec![0i64; n + 1];
    oracle[0] = 1;
    for s in 1..=n {
        let mut f = vec![0i64; n + 1];
        for (k, c) in [(0usize, 1i64), (1, -2), (3, 2), (4, -1)] {
            if k * s <= n {
                f[k * s] += c;
            }
        }
        oracle = series_mul(&oracle, &series_inv(&f, n), n);
    }
    assert_eq!(ints(&z), oracle);
}

#[test]
fn filtered_enveloping_algebra_regression() {
    let dims = filtered_dims(&catalog::phi_q(qi(1)), &Rationals, 5, DEFAULT_DIM_BOUND).unwrap();
    let cumulative: Vec<usize> = (0..=5).map(|n| binom(n as u64 + 3, 3) as usize).collect();
    assert_eq!(dims, cumulative);
}

#[test]
fn inhomogeneous_potentials_are_rejected() {
    assert!(GradedQuotient::new(&catalog::phi_q(qi(1)), prime(), 3).is_err());
}

#[test]
fn memory_guard_refuses_large_degrees() {
    let r = GradedQuotient::with_bound(&catalog::basic(), prime(), 12, 100);
    assert!(matches!(r, Err(Error::MemoryGuard { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_matches_independent_rank_count(seed in any::<u64>()) {
        let (_, phi) = random_quiver_with_potential(&mut rng(seed));
        let lib = graded_dims(&phi, prime(), 4).unwrap();
        let brute = brute_graded_dims(&phi, 4);
        for i in 0..lib.size() {
            for j in 0..lib.size() {
                let l: Vec<usize> = ints(lib.entry(i, j)).into_iter().map(|v| v as usize).collect();
                prop_assert_eq!(&l, &brute[i][j]);
            }
        }
    }

    #[test]
    fn cotangent_composites_vanish(seed in any::<u64>()) {
        let (_, phi) = random_quiver_with_potential(&mut rng(seed));
        let gq = GradedQuotient::new(&phi, prime(), 4).unwrap();
        prop_assert!(cotangent_complex_check(&phi, &gq, 4).unwrap().is_complex());
    }

    #[test]
    fn graded_dims_are_bounded_by_tensor_algebra(seed in any::<u64>()) {
        let (qv, phi) = random_quiver_with_potential(&mut rng(seed));
        let d = graded_dims(&phi, prime(), 4).unwrap();
        let free = hilbert_from_cartan(&MatrixSeries::identity(qv.num_vertices(), 4).sub(&tensor_generators(&qv, 4)), 4).unwrap();
        for i in 0..d.size() {
            for j in 0..d.size() {
                for k in 0..=4 {
                    prop_assert!(d.entry(i, j).coeff(k) >= qi(0));
                    prop_assert!(d.entry(i, j).coeff(k) <= free.entry(i, j).coeff(k));
                }
                // below the relation degree nothing is killed
                let m = phi.homogeneous_degree().unwrap() as usize;
                for k in 0..(m - 1).min(5) {
                    prop_assert_eq!(d.entry(i, j).coeff(k), free.entry(i, j).coeff(k));
                }
            }
        }
    }
}

/// h(V;t) of the generators as a matrix series.
fn tensor_generators(q: &Quiver, n: usize) -> MatrixSeries {
    let nv = q.num_vertices();
    let mut rows = vec![vec![Series::zero(n); nv]; nv];
    for e in q.edges() {
        let d = e.deg as usize;
        if d <= n {
            rows[e.src][e.tgt] = rows[e.src][e.tgt].add(&Series::monomial(n, d, qi(1)));
        }
    }
    MatrixSeries::from_entries(rows).unwrap()
}
