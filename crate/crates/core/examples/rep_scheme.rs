//! Trace potentials on representation spaces: gradients, a finite-difference
//! check, conjugation invariance and the sl₂ critical point of Φ₁.
//!
//! Run with `cargo run --example rep_scheme`.

use ncpot::catalog;
use ncpot::random::rng_from_seed;
use ncpot::rep::{critical_residual, fd_check, random_invertible, su2_triple, trace_potential, RepPoint};
use ncpot::scalar::{qi, Coeff};
use ncpot::Result;

fn main() -> Result<()> {
    let phi = catalog::basic().map_coeffs(Coeff::to_complex);
    let q = phi.quiver().clone();
    let mut rng = rng_from_seed(11);
    let rho = RepPoint::random(&q, vec![3], &mut rng)?;
    let fd = fd_check(&phi, &rho, 1e-5, &mut rng)?;
    println!("Tr Φ(ρ) = {}, finite-difference relative error {:.2e}", trace_potential(&phi, &rho)?, fd.relative_error);
    let (g, gi) = random_invertible(3, &mut rng);
    let moved = rho.conjugate(&[g], &[gi])?;
    let drift = (trace_potential(&phi, &moved)? - trace_potential(&phi, &rho)?).norm();
    println!("conjugation changes the trace by {drift:.2e}");

    let phi1 = catalog::phi_q(qi(1)).map_coeffs(Coeff::to_complex);
    let triple = RepPoint::new(phi1.quiver(), vec![2], su2_triple().to_vec())?;
    println!("sl₂ triple residual for Φ₁: {:.2e}", critical_residual(&phi1, &triple, false)?);
    Ok(())
}
