//! Reading and writing the ncpot/1 JSON schema: a bundled potential file is
//! parsed, differentiated and written back.
//!
//! Run with `cargo run --example json_roundtrip`.

use ncpot::calculus::cyclic_derive;
use ncpot::io::{poly_to_json, potential_to_json, read_potential};
use ncpot::{Rational, Result};

fn main() -> Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/conifold.json");
    let (q, phi) = read_potential::<Rational>(path)?;
    println!("read {} with {} vertices and {} edges: Φ = {}", path, q.num_vertices(), q.num_edges(), phi.render());
    let d = cyclic_derive(&phi, q.edge_id("x1")?)?;
    println!("{}", serde_json::to_string_pretty(&poly_to_json(&d))?);
    let again = serde_json::to_string(&potential_to_json(&phi))?;
    let (_, back) = ncpot::io::parse_potential::<Rational>(&again)?;
    println!("round trip preserves Φ: {}", back == phi);
    Ok(())
}
