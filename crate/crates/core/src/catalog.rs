//! Curated quivers with potential.

use std::sync::Arc;

use crate::error::Result;
use crate::poly::CyclicPoly;
use crate::quiver::Quiver;
use crate::scalar::{q, qi, Coeff, Rational};

/// ℂ⟨x,y,z⟩ with Φ = xyz − yxz; the Jacobi algebra is ℂ[x,y,z].
pub fn basic() -> CyclicPoly<Rational> {
    let q = Arc::new(Quiver::free(&["x", "y", "z"]));
    CyclicPoly::parse(&q, "xyz - yxz").expect("valid potential")
}

/// Φ_q = xyz − q·yxz + ½(x² + y² + z²); for q = 1 the Jacobi algebra is U(sl₂).
pub fn phi_q(qq: Rational) -> CyclicPoly<Rational> {
    let qv = Arc::new(Quiver::free(&["x", "y", "z"]));
    let mut p = CyclicPoly::parse(&qv, "xyz + 1/2 x^2 + 1/2 y^2 + 1/2 z^2").expect("valid potential");
    p.add_scaled(&CyclicPoly::parse(&qv, "yxz").expect("valid potential"), &(-qq));
    p
}

/// Φ = x³ in ℂ⟨x,y,z⟩: a potential whose Jacobi algebra is not Calabi–Yau.
pub fn cube_control() -> CyclicPoly<Rational> {
    let q = Arc::new(Quiver::free(&["x", "y", "z"]));
    CyclicPoly::parse(&q, "x^3").expect("valid potential")
}

/// The conifold: vertices 1, 2, edges x₁, x₂: 1 → 2 and x₁*, x₂*: 2 → 1,
/// Φ = x₁x₁*x₂x₂* − x₁*x₁x₂*x₂.
pub fn conifold() -> CyclicPoly<Rational> {
    let q = Arc::new(
        Quiver::new(&["1", "2"], &[("x1", "1", "2", 1), ("x2", "1", "2", 1), ("x1*", "2", "1", 1), ("x2*", "2", "1", 1)])
            .expect("valid quiver"),
    );
    CyclicPoly::parse(&q, "x1 x1* x2 x2* - x1* x1 x2* x2").expect("valid potential")
}

/// The cyclic quiver with `n` vertices, edges x_i: i → i+1 mod n, and Φ the n-cycle.
pub fn cyclic_quiver(n: usize) -> Result<CyclicPoly<Rational>> {
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let edge_names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let edges: Vec<(&str, &str, &str, i32)> =
        (0..n).map(|i| (edge_names[i].as_str(), names[i].as_str(), names[(i + 1) % n].as_str(), 1)).collect();
    let q = Arc::new(Quiver::new(&names, &edges)?);
    let text = edge_names.join(" ");
    CyclicPoly::parse(&q, &text)
}

/// Quadratic Sklyanin potential a·xyz + b·yxz + c·(x³ + y³ + z³).
pub fn sklyanin_quadratic(a: Rational, b: Rational, c: Rational) -> CyclicPoly<Rational> {
    let qv = Arc::new(Quiver::free(&["x", "y", "z"]));
    let term = |s: &str| CyclicPoly::<Rational>::parse(&qv, s).expect("valid potential");
    let mut p = term("xyz").scale(&a);
    p.add_scaled(&term("yxz"), &b);
    p.add_scaled(&term("x^3 + y^3 + z^3"), &c);
    p
}

/// Cubic Sklyanin potential ½z² + xyz − yxz + p(x²y² + xyxy) + q(x⁴ + y⁴)
/// with deg x = deg y = 1 and deg z = 2 (homogeneous of degree 4).
pub fn sklyanin_cubic(p: Rational, qq: Rational) -> CyclicPoly<Rational> {
    let qv = Arc::new(Quiver::free_graded(&[("x", 1), ("y", 1), ("z", 2)]).expect("valid quiver"));
    let term = |s: &str| CyclicPoly::<Rational>::parse(&qv, s).expect("valid potential");
    let mut phi = term("1/2 z^2 + xyz - yxz");
    phi.add_scaled(&term("x^2 y^2 + xyxy"), &p);
    phi.add_scaled(&term("x^4 + y^4"), &qq);
    phi
}

/// The abelian Yang–Mills potential Ψ = −¼ Σ_{i,j} (x_i x_j − x_j x_i)² on n generators x1..xn.
pub fn yang_mills<K: Coeff>(n: usize) -> CyclicPoly<K> {
    yang_mills_with(n, &|_, _, _| 0)
}

/// Ψ for su(2) ≅ so(3) in an orthonormal basis (c_{ijk} = ε_{ijk}):
/// −¼ Σ (x_i x_j − x_j x_i)² + ⅓ Σ ε_{pqr} x_p x_q x_r.
pub fn yang_mills_su2<K: Coeff>() -> CyclicPoly<K> {
    yang_mills_with(3, &|a, b, c| match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    })
}

fn yang_mills_with<K: Coeff>(n: usize, c: &dyn Fn(usize, usize, usize) -> i64) -> CyclicPoly<K> {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let qv = Arc::new(Quiver::free(&refs));
    let x = |i: usize| crate::poly::NCPoly::<K>::edge(&qv, i);
    let mut lifted = crate::poly::NCPoly::<K>::zero(&qv);
    for i in 0..n {
        for j in 0..n {
            let comm = &x(i) * &x(j) - &x(j) * &x(i);
            lifted.add_scaled(&(&comm * &comm), &K::from_rational(&q(-1, 4)));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                let s = c(a, b, d);
                if s != 0 {
                    lifted.add_scaled(&(&(&x(a) * &x(b)) * &x(d)), &K::from_rational(&q(s, 3)));
                }
            }
        }
    }
    CyclicPoly::project(&lifted)
}

/// All curated potentials by name (used by examples, the CLI and the test suite).
pub fn by_name(name: &str) -> Option<CyclicPoly<Rational>> {
    Some(match name {
        "basic" => basic(),
        "sl2" => phi_q(qi(1)),
        "cube" => cube_control(),
        "conifold" => conifold(),
        "cyclic3" => cyclic_quiver(3).ok()?,
        "cyclic4" => cyclic_quiver(4).ok()?,
        "sklyanin2" => sklyanin_quadratic(qi(1), qi(2), qi(1)),
        "sklyanin3" => sklyanin_cubic(qi(1), qi(1)),
        "yang-mills2" => yang_mills(2),
        "yang-mills3" => yang_mills(3),
        _ => return None,
    })
}

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] =
    &["basic", "sl2", "cube", "conifold", "cyclic3", "cyclic4", "sklyanin2", "sklyanin3", "yang-mills2", "yang-mills3"];
