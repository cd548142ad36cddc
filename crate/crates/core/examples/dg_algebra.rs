//! The DG algebra 𝔇(F,Φ), the BRST potential Φ♭ and its master and unit
//! equations, for the enveloping-algebra potential of sl₂.
//!
//! Run with `cargo run --example dg_algebra`.

use std::sync::Arc;

use ncpot::catalog;
use ncpot::random::rng_from_seed;
use ncpot::scalar::qi;
use ncpot::superalg::{brst_potential, dg_check, dg_differential, necklace_bracket, SuperQuiver};
use ncpot::{NCPoly, Result};

fn main() -> Result<()> {
    let phi = catalog::phi_q(qi(1));
    println!("Φ₁ = {}", phi.render());
    let sq = Arc::new(SuperQuiver::new(phi.quiver(), false)?);
    for name in ["x*", "y*", "z*", "t"] {
        let g = sq.derived().edge_id(name)?;
        let d = dg_differential(&sq, &phi, &NCPoly::edge(sq.derived(), g))?;
        println!("  d({name}) = {}", d.render());
    }
    let sqt = Arc::new(SuperQuiver::new(phi.quiver(), true)?);
    let flat = brst_potential(&sqt, &phi)?;
    println!("Φ♭ = {}", flat.render());
    println!("{{Φ♭,Φ♭}} = {}", necklace_bracket(&flat, &flat)?.render());
    let report = dg_check(&phi, 50, &mut rng_from_seed(1))?;
    println!("all DG/BRST/BV checks pass: {}", report.pass());
    Ok(())
}
