//! The ζ-characteristic Π_s det p(V,Φ;tˢ)⁻¹ for ℂ[x,y,z] and the cubic Sklyanin algebra.
//!
//! Run with `cargo run --example zeta_characteristic`.

use ncpot::catalog;
use ncpot::graded::zeta_characteristic;
use ncpot::Result;

fn main() -> Result<()> {
    for name in ["basic", "sklyanin3", "conifold"] {
        let phi = catalog::by_name(name).expect("curated name");
        let m = phi.homogeneous_degree().expect("homogeneous");
        let z = zeta_characteristic(phi.quiver(), m, 8, 8)?;
        println!("{name}: {}", z.render());
    }
    Ok(())
}
