//! Graded dimensions of Jacobi algebras against the Cartan-polynomial
//! prediction h(𝔄;t) = p(V,Φ;t)⁻¹ for the curated potentials.
//!
//! Run with `cargo run --release --example hilbert_series`.

use ncpot::catalog;
use ncpot::graded::{cy_hilbert_check, GradedQuotient};
use ncpot::linalg::{PrimeField, DEFAULT_PRIME};
use ncpot::Result;

fn main() -> Result<()> {
    let field = PrimeField::new(DEFAULT_PRIME)?;
    for name in ["basic", "conifold", "sklyanin2", "sklyanin3", "cyclic3", "cube"] {
        let phi = catalog::by_name(name).expect("curated name");
        let gq = GradedQuotient::new(&phi, field.clone(), 6)?;
        let dims: Vec<usize> = (0..=6).map(|n| gq.dim(n)).collect();
        let report = cy_hilbert_check(&phi, field.clone(), 6)?;
        let verdict = match &report.discrepancy {
            None => "PASS".to_string(),
            Some(d) => format!("FAIL at degree {} ({} vs {})", d.degree, d.oracle, d.predicted),
        };
        println!("{name:>10}: total dims {dims:?}  h = p⁻¹: {verdict}");
    }
    Ok(())
}
