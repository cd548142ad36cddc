//! Path algebra, cyclic quotient and canonicalization.

mod common;

use std::sync::Arc;

use common::{free, random_poly, rng};
use ncpot::path::{Cycle, Path};
use ncpot::random::random_quiver;
use ncpot::{qi, CyclicPoly, Error, NCPoly, Quiver, Rational};
use proptest::prelude::*;

fn p(q: &Arc<Quiver>, s: &str) -> NCPoly<Rational> {
    NCPoly::parse(q, s).unwrap()
}

#[test]
fn free_products_concatenate() {
    let q = free(&["x", "y", "z"]);
    assert_eq!(&p(&q, "x") * &p(&q, "y"), p(&q, "xy"));
    assert_eq!(&p(&q, "xy - yx") * &p(&q, "z"), p(&q, "xyz - yxz"));
}

#[test]
fn idempotents_select_endpoints() {
    let q = ncpot::catalog::conifold().quiver().clone();
    let a = NCPoly::<Rational>::edge(&q, q.edge_id("x1").unwrap());
    let e1 = NCPoly::idempotent(&q, q.vertex_id("1").unwrap());
    let e2 = NCPoly::idempotent(&q, q.vertex_id("2").unwrap());
    assert_eq!(&e1 * &a, a);
    assert!((&e2 * &a).is_zero());
    assert_eq!(&a * &e2, a);
    assert_eq!(&NCPoly::unit(&q) * &a, a);
}

#[test]
fn non_composable_products_vanish() {
    let q = ncpot::catalog::conifold().quiver().clone();
    let a = NCPoly::<Rational>::edge(&q, q.edge_id("x1").unwrap());
    let b = NCPoly::<Rational>::edge(&q, q.edge_id("x2").unwrap());
    assert!((&a * &b).is_zero());
    assert!(matches!(Path::from_names(&q, &["x1", "x2"]), Err(Error::NotComposable(_))));
}

#[test]
fn cyclic_projection_examples() {
    let q = free(&["x", "y", "z"]);
    assert_eq!(CyclicPoly::project(&p(&q, "xy")), CyclicPoly::project(&p(&q, "yx")));
    assert!(CyclicPoly::project(&p(&q, "xy - yx")).is_zero());
    let basic = CyclicPoly::project(&p(&q, "xyz - yxz"));
    assert_eq!(basic.len(), 2);
    assert_eq!(basic, ncpot::catalog::basic());
}

#[test]
fn open_paths_die_in_the_cyclic_quotient() {
    let q = ncpot::catalog::conifold().quiver().clone();
    let a = NCPoly::<Rational>::parse(&q, "x1 x1*").unwrap();
    let open = NCPoly::<Rational>::parse(&q, "x1").unwrap();
    assert_eq!(CyclicPoly::project(&a).len(), 1);
    assert!(CyclicPoly::project(&open).is_zero());
}

#[test]
fn canonical_rotation_is_lexicographically_minimal() {
    let q = free(&["x", "y", "z"]);
    let c = Cycle::from_names(&q, &["y", "z", "x"]).unwrap();
    let names: Vec<&str> = c.edges().iter().map(|&e| q.edge(e).name.as_str()).collect();
    assert_eq!(names, ["x", "y", "z"]);
    let d = Cycle::from_names(&q, &["y", "x", "y", "x"]).unwrap();
    assert_eq!(d, Cycle::from_names(&q, &["x", "y", "x", "y"]).unwrap());
}

#[test]
fn lift_is_a_section() {
    let basic = ncpot::catalog::basic();
    let lifted = basic.lift();
    assert_eq!(lifted.len(), 2);
    assert_eq!(CyclicPoly::project(&lifted), basic);
    let z = CyclicPoly::<Rational>::zero(basic.quiver());
    assert!(z.lift().is_zero());
}

#[test]
fn invalid_quivers_are_rejected() {
    assert!(Quiver::new(&["a"], &[("x", "a", "a", 1), ("x", "a", "a", 1)]).is_err());
    assert!(Quiver::new(&["a"], &[("x", "a", "b", 1)]).is_err());
    let q = free(&["x"]);
    assert!(matches!(NCPoly::<Rational>::parse(&q, "w"), Err(Error::UnknownEdge(_))));
}

#[test]
fn parse_render_round_trip() {
    let q = free(&["x", "y", "z"]);
    let a = p(&q, "3/2 xyz - 2 y^2 + 1/3 z x");
    assert_eq!(NCPoly::parse(&q, &a.render()).unwrap(), a);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let q = Arc::new(random_quiver(&mut r, 3, 3));
        let a = random_poly(&q, &mut r, 3, 4);
        let b = random_poly(&q, &mut r, 3, 4);
        let c = random_poly(&q, &mut r, 3, 4);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(b.clone() + c.clone()), (&a * &b) + (&a * &c));
        prop_assert_eq!(&(a.clone() + b.clone()) * &c, (&a * &c) + (&b * &c));
    }

    #[test]
    fn trace_property(seed in any::<u64>()) {
        let mut r = rng(seed);
        let q = Arc::new(random_quiver(&mut r, 3, 3));
        let a = random_poly(&q, &mut r, 3, 4);
        let b = random_poly(&q, &mut r, 3, 4);
        prop_assert_eq!(CyclicPoly::project(&(&a * &b)), CyclicPoly::project(&(&b * &a)));
    }

    #[test]
    fn project_lift_identity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let q = Arc::new(random_quiver(&mut r, 3, 3));
        let c = CyclicPoly::project(&random_poly(&q, &mut r, 5, 6));
        prop_assert_eq!(CyclicPoly::project(&c.lift()), c);
    }

    #[test]
    fn degree_is_additive(seed in any::<u64>(), da in 0usize..4, db in 0usize..4) {
        let mut r = rng(seed);
        let q = Arc::new(random_quiver(&mut r, 2, 3));
        let a = random_poly(&q, &mut r, 4, 5).component(da as i32);
        let b = random_poly(&q, &mut r, 4, 5).component(db as i32);
        let ab = &a * &b;
        if !ab.is_zero() {
            prop_assert_eq!(ab.homogeneous_degree(), Some((da + db) as i32));
        }
    }
}

#[test]
fn scalar_multiples_and_zero() {
    let q = free(&["x", "y"]);
    let a = p(&q, "xy - yx");
    assert!(a.scale(&qi(0)).is_zero());
    assert_eq!(a.scale(&qi(2)), p(&q, "2 xy - 2 yx"));
}
