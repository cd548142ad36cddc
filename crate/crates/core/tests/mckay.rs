//! McKay quivers with potential for finite subgroups of SL₃.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use common::ints;
use nalgebra::DMatrix;
use ncpot::calculus::cyclic_derive;
use ncpot::graded::graded_dims;
use ncpot::linalg::Rationals;
use ncpot::mckay::{
    build_quiver, mckay_check, mckay_check_corrupted, molien_series, s3_signed_permutations, triangle_coefficients,
    Corruption, ExplicitGroup, GroupData, GroupJson, Irrep,
};
use ncpot::poly::NCPoly;
use ncpot::Rational;
use num_complex::Complex64;

type C = Complex64;

fn root(n: u32, k: i64) -> C {
    C::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)
}

fn abelian(g: &GroupData) -> &ncpot::mckay::AbelianGroup {
    match g {
        GroupData::Abelian(a) => a,
        _ => panic!("abelian group expected"),
    }
}

fn family() -> Vec<(&'static str, GroupData)> {
    vec![
        ("trivial", GroupData::trivial()),
        ("Z3(1,1,1)", GroupData::cyclic(3, [1, 1, 1]).unwrap()),
        ("Z3(1,2,0)", GroupData::cyclic(3, [1, 2, 0]).unwrap()),
        ("Z7(1,2,4)", GroupData::cyclic(7, [1, 2, 4]).unwrap()),
        (
            "Z3xZ3",
            GroupData::from_json(&GroupJson::Abelian { schema: None, order: 3, generators: vec![[1, 1, 1], [1, 2, 0]] })
                .unwrap(),
        ),
    ]
}

/// a_ij = (1/n) Σ_k conj χ_i(g^k) χ_j(g^k) χ_V(g^k) for a cyclic group generated by diag(ω^w).
#[test]
fn cyclic_multiplicities_match_character_inner_products() {
    for (n, w) in [(3u32, [1i64, 1, 1]), (3, [1, 2, 0]), (5, [1, 1, 3]), (7, [1, 2, 4])] {
        let g = GroupData::cyclic(n, w).unwrap();
        let chars = abelian(&g).characters();
        let mq = build_quiver(&g).unwrap();
        let a = mq.multiplicities();
        for (i, ci) in chars.iter().enumerate() {
            for (j, cj) in chars.iter().enumerate() {
                let mut s = C::new(0.0, 0.0);
                for k in 0..n as i64 {
                    let chi_v: C = w.iter().map(|&wm| root(n, wm * k)).sum();
                    s += root(n, ci[0] as i64 * k).conj() * root(n, cj[0] as i64 * k) * chi_v;
                }
                let s = s / n as f64;
                assert!((s.re - a[i][j] as f64).abs() < 1e-9 && s.im.abs() < 1e-9, "n={n} w={w:?} ({i},{j})");
            }
        }
        assert!(mq.dimension_identity_holds());
    }
}

#[test]
fn explicit_multiplicities_match_character_inner_products() {
    let g = s3_signed_permutations();
    let GroupData::Explicit(e) = &g else { unreachable!() };
    let a = build_quiver(&g).unwrap().multiplicities();
    for (i, ri) in e.irreps().iter().enumerate() {
        for (j, rj) in e.irreps().iter().enumerate() {
            let s: C = (0..e.order()).map(|k| ri.character(k).conj() * rj.character(k) * e.elements()[k].trace()).sum();
            assert!((s.re / e.order() as f64 - a[i][j] as f64).abs() < 1e-9);
        }
    }
}

#[test]
fn z3_quiver_structure() {
    let mq = build_quiver(&GroupData::cyclic(3, [1, 1, 1]).unwrap()).unwrap();
    let q = mq.quiver();
    assert_eq!((q.num_vertices(), q.num_edges()), (3, 9));
    for i in 0..3 {
        let targets: BTreeSet<usize> = q.out_edges(i).map(|e| q.edge(e).tgt).collect();
        assert_eq!(targets.len(), 1);
        assert_eq!(q.out_edges(i).count(), 3);
        assert_ne!(*targets.iter().next().unwrap(), i);
    }
}

#[test]
fn z7_quiver_structure() {
    let g = GroupData::cyclic(7, [1, 2, 4]).unwrap();
    let chars = abelian(&g).characters();
    let mq = build_quiver(&g).unwrap();
    let q = mq.quiver();
    assert_eq!((q.num_vertices(), q.num_edges()), (7, 21));
    for i in 0..7 {
        let shifts: BTreeSet<u32> = q
            .out_edges(i)
            .map(|e| (chars[i][0] + 7 - chars[q.edge(e).tgt][0]) % 7)
            .collect();
        assert_eq!(shifts, BTreeSet::from([1, 2, 4]));
    }
}

#[test]
fn trivial_group_recovers_polynomial_ring() {
    let g = GroupData::trivial();
    let mq = build_quiver(&g).unwrap();
    let q = mq.quiver();
    assert_eq!((q.num_vertices(), q.num_edges()), (1, 3));
    let phi = triangle_coefficients(&mq).unwrap().exact.unwrap();
    assert_eq!(phi, ncpot::poly::CyclicPoly::parse(q, "x y z - x z y").unwrap());
    let comm = |a: &str, b: &str| NCPoly::<Rational>::parse(q, &format!("{a} {b} - {b} {a}")).unwrap();
    assert_eq!(cyclic_derive(&phi, 0).unwrap(), comm("y", "z"));
    assert_eq!(cyclic_derive(&phi, 1).unwrap(), comm("z", "x"));
    assert_eq!(cyclic_derive(&phi, 2).unwrap(), comm("x", "y"));
    let d = graded_dims(&phi, Rationals, 5).unwrap();
    assert_eq!(ints(d.entry(0, 0)), vec![1, 3, 6, 10, 15, 21]);
}

#[test]
fn abelian_potentials_have_two_terms_per_element() {
    for (name, g) in family() {
        let mq = build_quiver(&g).unwrap();
        let pot = triangle_coefficients(&mq).unwrap();
        let exact = pot.exact.as_ref().unwrap();
        assert_eq!(exact.len(), 2 * g.order(), "{name}");
        assert!(exact.terms().all(|(c, k)| c.len() == 3 && (*k == ncpot::qi(1) || *k == ncpot::qi(-1))), "{name}");
        assert!(pot.rotation_invariant(), "{name}");
    }
}

#[test]
fn s3_potential_is_rotation_invariant_and_scalar() {
    let mq = build_quiver(&s3_signed_permutations()).unwrap();
    let pot = triangle_coefficients(&mq).unwrap();
    assert_eq!(pot.triangles.len(), 5);
    assert!(pot.rotation_invariant());
    assert!(pot.max_schur_defect() <= 1e-9);
    for t in &pot.triangles {
        for r in &t.rotations {
            assert!((r - t.lambda).norm() <= 1e-9);
        }
    }
}

/// (1/|Γ|) Σ_g Π_m 1/(1 − ω^{g_m} t), averaged in floating point.
fn float_molien(g: &ncpot::mckay::AbelianGroup, order: usize) -> Vec<i64> {
    let n = g.modulus();
    let mut acc = vec![C::new(0.0, 0.0); order + 1];
    for el in g.elements() {
        let mut s = vec![C::new(0.0, 0.0); order + 1];
        s[0] = C::new(1.0, 0.0);
        for m in 0..3 {
            let z = root(n, el[m] as i64);
            for k in 1..=order {
                let prev = s[k - 1];
                s[k] += z * prev;
            }
        }
        for k in 0..=order {
            acc[k] += s[k];
        }
    }
    acc.iter().map(|z| (z.re / g.order() as f64).round() as i64).collect()
}

#[test]
fn abelian_molien_matches_float_average() {
    for (name, g) in family() {
        let m = molien_series(&g, 9).unwrap();
        assert_eq!(ints(&m), float_molien(abelian(&g), 9), "{name}");
    }
    let m = molien_series(&GroupData::cyclic(3, [1, 1, 1]).unwrap(), 6).unwrap();
    assert_eq!(ints(&m), vec![1, 0, 0, 10, 0, 0, 28]);
    assert_eq!(ints(&molien_series(&GroupData::trivial(), 4).unwrap()), vec![1, 3, 6, 10, 15]);
}

/// dim of S₃-invariants of degree n by Reynolds averaging of monomials:
/// σ acts as sgn(σ)·P_σ, sending x^α to sgn(σ)^n x^{σ·α}.
fn s3_invariant_dims(order: usize) -> Vec<i64> {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
    let sgn = [1i64, -1, -1, -1, 1, 1];
    (0..=order)
        .map(|n| {
            let mut images: BTreeSet<Vec<([usize; 3], i64)>> = BTreeSet::new();
            for a in 0..=n {
                for b in 0..=n - a {
                    let alpha = [a, b, n - a - b];
                    let mut avg: BTreeMap<[usize; 3], i64> = BTreeMap::new();
                    for (p, s) in perms.iter().zip(sgn) {
                        let mut beta = [0; 3];
                        for i in 0..3 {
                            beta[p[i]] = alpha[i];
                        }
                        *avg.entry(beta).or_default() += if n % 2 == 0 { 1 } else { s };
                    }
                    let v: Vec<([usize; 3], i64)> = avg.into_iter().filter(|(_, c)| *c != 0).collect();
                    if v.is_empty() {
                        continue;
                    }
                    // images of monomials in one orbit coincide up to sign; normalize the sign
                    let flip = if v[0].1 < 0 { -1 } else { 1 };
                    images.insert(v.into_iter().map(|(m, c)| (m, c * flip)).collect());
                }
            }
            images.len() as i64
        })
        .collect()
}

#[test]
fn s3_molien_matches_reynolds_count() {
    let m = molien_series(&s3_signed_permutations(), 9).unwrap();
    assert_eq!(ints(&m), s3_invariant_dims(9));
    assert_eq!(ints(&m), vec![1, 0, 2, 1, 4, 2, 7, 4, 10, 7]);
}

#[test]
fn mckay_checks_pass_on_curated_family() {
    for (name, g) in family() {
        let n = if g.order() > 3 { 6 } else { 9 };
        let r = mckay_check(&g, n).unwrap();
        assert!(r.pass(), "{name}: {r:?}");
        assert!(r.first_mismatch.is_none());
    }
    assert!(mckay_check(&s3_signed_permutations(), 7).unwrap().pass());
}

#[test]
fn dropping_a_triangle_is_detected() {
    let g = GroupData::cyclic(3, [1, 1, 1]).unwrap();
    let r = mckay_check_corrupted(&g, 9, Corruption::Drop).unwrap();
    assert!(!r.pass());
    assert!(r.first_mismatch.is_some());
    let r = mckay_check_corrupted(&GroupData::trivial(), 6, Corruption::Drop).unwrap();
    assert!(!r.pass());
}

#[test]
fn flipping_a_sign_is_invisible_to_hilbert_series() {
    let g = GroupData::cyclic(3, [1, 1, 1]).unwrap();
    assert!(mckay_check_corrupted(&g, 6, Corruption::FlipSign).unwrap().pass());
}

#[test]
fn invalid_groups_are_rejected() {
    assert!(GroupData::cyclic(3, [1, 1, 0]).is_err());
    assert!(GroupData::cyclic(0, [0, 0, 0]).is_err());
    let one = |v: f64| DMatrix::from_element(1, 1, C::new(v, 0.0));
    let id = DMatrix::<C>::identity(3, 3);
    let triv = Irrep { label: "o".into(), dim: 1, matrices: vec![one(1.0)] };
    assert!(ExplicitGroup::new(vec![id.clone()], vec![triv.clone()]).is_ok());
    // determinant −1
    let refl = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![C::new(-1.0, 0.0), C::new(1.0, 0.0), C::new(1.0, 0.0)]));
    assert!(ExplicitGroup::new(vec![id.clone(), refl], vec![triv.clone(), triv.clone()]).is_err());
    // not closed: diag(ω, ω, ω) without its powers
    let w = DMatrix::<C>::identity(3, 3) * root(3, 1);
    assert!(ExplicitGroup::new(vec![id.clone(), w.clone()], vec![triv.clone()]).is_err());
    // irreps violating orthogonality
    let w2 = &w * &w;
    let els = vec![id, w, w2];
    let t3 = Irrep { label: "o".into(), dim: 1, matrices: vec![one(1.0); 3] };
    let dup = Irrep { label: "o2".into(), ..t3.clone() };
    assert!(ExplicitGroup::new(els.clone(), vec![t3.clone(), dup.clone(), dup]).is_err());
    // incomplete irrep list
    assert!(ExplicitGroup::new(els, vec![t3]).is_err());
}
