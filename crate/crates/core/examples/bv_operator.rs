//! The cobracket and the BV operator Δ on Sym(𝔇_cyc), with Δ² = 0 and the
//! agreement of the surgery and bracket/cobracket constructions.
//!
//! Run with `cargo run --example bv_operator`.

use std::sync::Arc;

use ncpot::catalog;
use ncpot::random::rng_from_seed;
use ncpot::superalg::{bv_operator, bv_operator_surgery, cobracket, random_sym_cyclic, SuperCyclic, SuperQuiver, SymCyclic};
use ncpot::{Rational, Result};

fn main() -> Result<()> {
    let q = catalog::basic().quiver().clone();
    let sq = Arc::new(SuperQuiver::new(&q, false)?);
    let u: SuperCyclic<Rational> = SuperCyclic::parse(&sq, "x x* y y*")?;
    println!("u = {}", u.render());
    println!("δ(u) = {}", cobracket(&u).render());
    let uu = SymCyclic::from_cyclic(&u).mul(&SymCyclic::from_cyclic(&SuperCyclic::parse(&sq, "z z*")?));
    let d = bv_operator(&uu)?;
    println!("Δ({}) = {}", uu.render(), d.render());
    let mut rng = rng_from_seed(3);
    let mut ok = true;
    for _ in 0..50 {
        let m = random_sym_cyclic(&sq, &mut rng, 4, 4);
        let d = bv_operator(&m)?;
        ok &= d == bv_operator_surgery(&m) && bv_operator(&d)?.is_zero();
    }
    println!("Δ² = 0 and both constructions agree on 50 samples: {ok}");
    Ok(())
}
