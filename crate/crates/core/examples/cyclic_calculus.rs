//! Cyclic derivatives, the noncommutative Hessian, the Euler identity and
//! Poincaré integration on the commutator potential and on Yang–Mills.
//!
//! Run with `cargo run --example cyclic_calculus`.

use ncpot::calculus::{cyclic_derive, euler_scale, gradient, hessian, poincare_integrate};
use ncpot::catalog;
use ncpot::{Rational, Result};

fn main() -> Result<()> {
    let phi = catalog::basic();
    println!("Φ = {}", phi.render());
    for x in 0..phi.quiver().num_edges() {
        println!("  ∂Φ/∂{} = {}", phi.quiver().edge(x).name, cyclic_derive(&phi, x)?.render());
    }
    let h = hessian(&phi)?;
    println!("  ∂²Φ/∂x∂y = {}", h.entry(0, 1).render());
    println!("  Hessian cyclically symmetric: {}", h.symmetry_violations().is_empty());
    println!("  Σ x·∂Φ/∂x = {}", euler_scale(&phi)?.render());

    let psi = catalog::yang_mills::<Rational>(3);
    println!("\nΨ (Yang–Mills, n = 3) has {} cyclic terms", psi.len());
    let fs = gradient(&psi)?;
    let back = poincare_integrate(psi.quiver(), &fs, 4)?;
    println!("  integrating ∂Ψ/∂x_i returns Ψ: {}", back == psi);
    Ok(())
}
