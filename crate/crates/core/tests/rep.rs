//! Trace functions on representation spaces.

mod common;

use common::rng;
use nalgebra::DMatrix;
use ncpot::catalog;
use ncpot::path::Cycle;
use ncpot::poly::{CyclicPoly, NCPoly};
use ncpot::rep::{
    critical_residual, descend, fd_check, gradient_energy, random_invertible, su2_triple, trace_gradient, trace_potential,
    trace_product, Mat, RepPoint, DEFAULT_FD_STEP, DEFAULT_RESIDUAL_TOL,
};
use ncpot::scalar::{qi, Coeff};
use ncpot::{Quiver, Rational};
use num_complex::Complex64;
use proptest::prelude::*;
use std::sync::Arc;

type C = Complex64;

fn c(re: f64) -> C {
    C::new(re, 0.0)
}

fn complex(phi: &CyclicPoly<Rational>) -> CyclicPoly<C> {
    phi.map_coeffs(Coeff::to_complex)
}

fn dense(m: &Mat<C>) -> DMatrix<C> {
    m.to_complex()
}

fn close(a: &DMatrix<C>, b: &DMatrix<C>, tol: f64) -> bool {
    a.shape() == b.shape() && (a - b).norm() <= tol * (1.0 + b.norm())
}

fn basic_c() -> CyclicPoly<C> {
    complex(&catalog::basic())
}

#[test]
fn evaluate_edges_and_commutators() {
    let q = basic_c().quiver().clone();
    let rho = RepPoint::random(&q, vec![3], &mut rng(1)).unwrap();
    let (x, y) = (dense(rho.matrix(0)), dense(rho.matrix(1)));
    let ex = rho.evaluate(&NCPoly::edge(&q, 0)).unwrap();
    assert!(close(&dense(&ex), &x, 1e-14));
    let comm = rho.evaluate(&NCPoly::parse(&q, "x y - y x").unwrap()).unwrap();
    assert!(close(&dense(&comm), &(&x * &y - &y * &x), 1e-12));
    let one = rho.evaluate(&NCPoly::idempotent(&q, 0)).unwrap();
    assert!(close(&dense(&one), &DMatrix::identity(3, 3), 0.0));
}

#[test]
fn evaluate_conifold_path_against_dense_product() {
    let phi = complex(&catalog::conifold());
    let q = phi.quiver().clone();
    let rho = RepPoint::random(&q, vec![2, 2], &mut rng(2)).unwrap();
    let a = NCPoly::parse(&q, "x1 x1*").unwrap();
    let full = dense(&rho.evaluate(&a).unwrap());
    let prod = dense(rho.matrix(0)) * dense(rho.matrix(2));
    assert!(close(&full.view((0, 0), (2, 2)).into_owned(), &prod, 1e-12));
    assert!(full.view((2, 0), (2, 4)).iter().all(|z| *z == C::new(0.0, 0.0)));
    assert!(close(&dense(&rho.evaluate_corner(&a, 0, 0).unwrap()), &prod, 1e-12));
}

#[test]
fn shape_mismatch_is_an_error() {
    let q = basic_c().quiver().clone();
    let m2 = Mat::<C>::identity(2);
    let m3 = Mat::<C>::identity(3);
    assert!(RepPoint::new(&q, vec![2], vec![m2.clone(), m2.clone(), m3]).is_err());
    assert!(RepPoint::new(&q, vec![2], vec![m2.clone(), m2]).is_err());
}

#[test]
fn trace_examples() {
    let q = Arc::new(Quiver::free(&["x"]));
    let phi = CyclicPoly::<C>::parse(&q, "x").unwrap();
    let rho = RepPoint::tuple(&q, vec![Mat::from_rows(vec![vec![c(3.0)]]).unwrap()]).unwrap();
    assert_eq!(trace_potential(&phi, &rho).unwrap(), c(3.0));

    let phi = basic_c();
    let rho = RepPoint::random(phi.quiver(), vec![3], &mut rng(3)).unwrap();
    let (x, y, z) = (dense(rho.matrix(0)), dense(rho.matrix(1)), dense(rho.matrix(2)));
    let oracle = (&x * &y * &z).trace() - (&y * &x * &z).trace();
    assert!((trace_potential(&phi, &rho).unwrap() - oracle).norm() <= 1e-12);
}

#[test]
fn commutator_class_is_zero() {
    let q = Arc::new(Quiver::free(&["x", "y"]));
    let a = NCPoly::<Rational>::parse(&q, "x y - y x").unwrap();
    assert!(CyclicPoly::project(&a).is_zero());
}

#[test]
fn gradient_examples() {
    let phi = basic_c();
    let rho = RepPoint::random(phi.quiver(), vec![3], &mut rng(4)).unwrap();
    let (y, z) = (dense(rho.matrix(1)), dense(rho.matrix(2)));
    let g = trace_gradient(&phi, &rho).unwrap();
    assert!(close(&dense(&g[0]), &(&y * &z - &z * &y), 1e-12));

    let q = Arc::new(Quiver::free(&["x", "y", "w"]));
    let phi = CyclicPoly::<C>::parse(&q, "x x y").unwrap();
    let rho = RepPoint::random(&q, vec![2], &mut rng(5)).unwrap();
    assert!(trace_gradient(&phi, &rho).unwrap()[2].is_zero());
}

#[test]
fn yang_mills_gradient_is_double_commutator() {
    let phi = complex(&catalog::yang_mills::<Rational>(2));
    let rho = RepPoint::random(phi.quiver(), vec![3], &mut rng(6)).unwrap();
    let xs = [dense(rho.matrix(0)), dense(rho.matrix(1))];
    let br = |a: &DMatrix<C>, b: &DMatrix<C>| a * b - b * a;
    let g = trace_gradient(&phi, &rho).unwrap();
    for (j, gj) in g.iter().enumerate() {
        let mut oracle = DMatrix::zeros(3, 3);
        for xi in &xs {
            oracle += br(xi, &br(xi, &xs[j]));
        }
        assert!(close(&dense(gj), &oracle, 1e-12), "edge {j}");
    }
}

#[test]
fn residual_examples() {
    let phi = basic_c();
    let diag = |a: f64, b: f64| Mat::from_rows(vec![vec![c(a), c(0.0)], vec![c(0.0), c(b)]]).unwrap();
    let commuting = RepPoint::tuple(phi.quiver(), vec![diag(1.0, 2.0), diag(-1.0, 3.0), diag(0.5, 0.25)]).unwrap();
    assert!(critical_residual(&phi, &commuting, false).unwrap() <= 1e-12);

    let phi1 = complex(&catalog::phi_q(qi(1)));
    let triple = RepPoint::tuple(phi1.quiver(), su2_triple().to_vec()).unwrap();
    assert!(critical_residual(&phi1, &triple, false).unwrap() <= 1e-10);

    let random = RepPoint::random(phi.quiver(), vec![3], &mut rng(7)).unwrap();
    assert!(critical_residual(&phi, &random, false).unwrap() > DEFAULT_RESIDUAL_TOL);
}

#[test]
fn star_mode_projects_onto_skew_hermitian_part() {
    let phi1 = complex(&catalog::phi_q(qi(1)));
    let triple = RepPoint::tuple(phi1.quiver(), su2_triple().to_vec()).unwrap();
    assert!(critical_residual(&phi1, &triple, true).unwrap() <= 1e-10);
    let phi = basic_c();
    let rho = RepPoint::random(phi.quiver(), vec![2], &mut rng(8)).unwrap();
    assert!(critical_residual(&phi, &rho, true).unwrap() <= critical_residual(&phi, &rho, false).unwrap() + 1e-12);
    let con = complex(&catalog::conifold());
    let rect = RepPoint::random(con.quiver(), vec![1, 2], &mut rng(9)).unwrap();
    assert!(critical_residual(&con, &rect, true).is_err());
}

#[test]
fn json_round_trip() {
    let phi = complex(&catalog::conifold());
    let rho = RepPoint::random(phi.quiver(), vec![2, 1], &mut rng(10)).unwrap();
    let j = serde_json::to_string(&rho.to_json()).unwrap();
    let back = RepPoint::from_json(phi.quiver(), &serde_json::from_str(&j).unwrap()).unwrap();
    assert_eq!(back, rho);
}

#[test]
fn descent_does_not_increase_energy() {
    let phi = basic_c();
    let start = RepPoint::random(phi.quiver(), vec![2], &mut rng(11)).unwrap();
    let before = gradient_energy(&phi, &start, false).unwrap();
    let out = descend(&phi, &start, 10, 1e-10, false).unwrap();
    assert!(gradient_energy(&phi, &out.point, false).unwrap() <= before);
    assert!(out.iterations <= 10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_invariance(seed in any::<u64>(), d in 1usize..4) {
        let mut r = rng(seed);
        for phi in [basic_c(), complex(&catalog::conifold())] {
            let nv = phi.quiver().num_vertices();
            let rho = RepPoint::random(phi.quiver(), vec![d; nv], &mut r).unwrap();
            let (g, gi): (Vec<_>, Vec<_>) = (0..nv).map(|_| random_invertible(d, &mut r)).unzip();
            let t0 = trace_potential(&phi, &rho).unwrap();
            let t1 = trace_potential(&phi, &rho.conjugate(&g, &gi).unwrap()).unwrap();
            prop_assert!((t1 - t0).norm() <= 1e-9 * (1.0 + t0.norm()));
        }
    }

    #[test]
    fn commutator_traces_vanish(seed in any::<u64>()) {
        let mut r = rng(seed);
        let q = basic_c().quiver().clone();
        let a = common::random_poly(&q, &mut r, 3, 3);
        let b = common::random_poly(&q, &mut r, 3, 3);
        let comm = (&a * &b) - (&b * &a);
        let class = CyclicPoly::project(&comm);
        prop_assert!(class.is_zero());
        let rho = RepPoint::random(&q, vec![3], &mut r).unwrap();
        let tr = dense(&rho.evaluate(&comm.map_coeffs(Coeff::to_complex)).unwrap()).trace();
        prop_assert!(tr.norm() <= 1e-10 * (1.0 + dense(&rho.evaluate(&(&a * &b).map_coeffs(Coeff::to_complex)).unwrap()).norm()));
    }

    #[test]
    fn finite_difference_matches_gradient(seed in any::<u64>(), d in 1usize..5) {
        let mut r = rng(seed);
        for phi in [basic_c(), complex(&catalog::yang_mills::<Rational>(2)), complex(&catalog::conifold())] {
            let nv = phi.quiver().num_vertices();
            let rho = RepPoint::random(phi.quiver(), vec![d; nv], &mut r).unwrap();
            let fd = fd_check(&phi, &rho, DEFAULT_FD_STEP, &mut r).unwrap();
            prop_assert!(fd.relative_error <= 1e-6, "{}", fd.relative_error);
        }
    }

    #[test]
    fn traces_are_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let q = Arc::new(Quiver::free(&["x", "y"]));
        let classes: Vec<Cycle> = ["x y", "x x y", "y"]
            .iter()
            .map(|s| CyclicPoly::<Rational>::parse(&q, s).unwrap().terms().next().unwrap().0.clone())
            .collect();
        let mats: Vec<Mat<Rational>> = (0..2)
            .map(|_| Mat::from_fn(2, 2, |_, _| qi(rand::Rng::gen_range(&mut r, -3..=3))))
            .collect();
        let rho = RepPoint::tuple(&q, mats).unwrap();
        let mut expect = qi(1);
        for c in &classes {
            expect *= trace_potential(&CyclicPoly::monomial(&q, c.clone(), qi(1)), &rho).unwrap();
        }
        prop_assert_eq!(trace_product(&classes, &rho), expect);
    }
}
