//! The extended cotangent complex in low degrees: a complex for every
//! homogeneous potential, exact for Calabi–Yau examples, inexact for x³.
//!
//! Run with `cargo run --release --example cotangent_complex`.

use ncpot::catalog;
use ncpot::graded::{cotangent_complex_check, GradedQuotient};
use ncpot::linalg::Rationals;
use ncpot::Result;

fn main() -> Result<()> {
    for name in ["basic", "conifold", "cube"] {
        let phi = catalog::by_name(name).expect("curated name");
        let gq = GradedQuotient::new(&phi, Rationals, 5)?;
        let report = cotangent_complex_check(&phi, &gq, 5)?;
        println!("{name}: complex {} exact {} (first inexact degree {:?})", report.is_complex(), report.is_exact(), report.first_inexact_degree());
        for d in &report.degrees {
            println!("  n={} dims {:?} ranks {:?}", d.degree, d.dims, d.ranks);
        }
    }
    Ok(())
}
