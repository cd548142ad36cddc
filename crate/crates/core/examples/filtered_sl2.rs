//! Filtered dimensions of U(sl₂) = 𝔄(ℂ⟨x,y,z⟩, Φ₁) against the cumulative
//! dimensions of ℂ[x,y,z] (a PBW-type deformation of the commutator potential).
//!
//! Run with `cargo run --example filtered_sl2`.

use ncpot::catalog;
use ncpot::graded::{filtered_dims, top_component, DEFAULT_DIM_BOUND};
use ncpot::linalg::Rationals;
use ncpot::scalar::qi;
use ncpot::Result;

fn main() -> Result<()> {
    let phi = catalog::phi_q(qi(1));
    println!("top component of Φ₁: {}", top_component(&phi).render());
    let dims = filtered_dims(&phi, &Rationals, 6, DEFAULT_DIM_BOUND)?;
    let expected: Vec<usize> = (0..=6).map(|n| (n + 1) * (n + 2) * (n + 3) / 6).collect();
    println!("dim F_n U(sl₂) = {dims:?}");
    println!("Σ_k≤n dim ℂ[x,y,z]_k = {expected:?}");
    Ok(())
}
