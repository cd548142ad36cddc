//! The structural checks bundled by the `dg-check` verb.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use super::{
    brst_potential, brst_reference_derivation, brst_representative, bv_operator, bv_operator_surgery,
    dg_differential_derivation, hamiltonian_derivation, necklace_bracket, GenKind, SuperCyclic,
    SuperPoly, SuperQuiver, SymCyclic,
};
use super::derivation::mod_tau;
use crate::calculus::cyclic_derive;
use crate::error::Result;
use crate::path::{Cycle, Path};
use crate::poly::{CyclicPoly, NCPoly};
use crate::quiver::EdgeId;
use crate::scalar::{qi, Rational};

/// Outcome of the DG / BRST / BV checks for one potential.
#[derive(Clone, Debug, Serialize)]
pub struct DgCheckReport {
    /// d² = 0 on all generators and on the random samples.
    pub d_squared_zero: bool,
    /// d(x*) = ∂Φ/∂x, so H₀ = ℂQ/(∂Φ).
    pub h0_presentation: bool,
    /// Number of random elements tested.
    pub samples: usize,
    /// ξ_{Φ♭} preserves (τ) and reduces to d modulo τ.
    pub brst_reduces_to_d: bool,
    /// ξ_{t_i}(Φ♭) = δ_i on the representative, for every vertex.
    pub unit_axiom: bool,
    /// {Φ♭, Φ♭} = 0.
    pub master_equation: bool,
    /// ξ_{Φ♭}² = 0 on generators.
    pub brst_squared_zero: bool,
    /// For Φ = 0, ξ_{Φ♭} = ad τ + δ∂_t − τ²∂_τ.
    pub free_anchor: bool,
    /// Δ² = 0 on random elements of Sym(𝔇_cyc), for both constructions.
    pub bv_squared_zero: bool,
    /// The two constructions of Δ agree on the samples.
    pub bv_constructions_agree: bool,
    /// Rendering of the first failing element, if any check failed.
    pub counterexample: Option<String>,
}

impl DgCheckReport {
    /// Whether every check passed.
    pub fn pass(&self) -> bool {
        self.d_squared_zero
            && self.h0_presentation
            && self.brst_reduces_to_d
            && self.unit_axiom
            && self.master_equation
            && self.brst_squared_zero
            && self.free_anchor
            && self.bv_squared_zero
            && self.bv_constructions_agree
    }
}

/// A random word of the given length in Q̂ avoiding τ, closed if requested
/// (`None` if the random walk fails to close).
fn random_word<R: Rng>(sq: &SuperQuiver, rng: &mut R, len: usize, closed: bool) -> Option<Path> {
    let q = sq.derived();
    let start = rng.gen_range(0..q.num_vertices());
    let mut v = start;
    let mut edges = Vec::with_capacity(len);
    for _ in 0..len {
        let outs: Vec<EdgeId> = q.out_edges(v).filter(|&g| !matches!(sq.kind(g), GenKind::Tau(_))).collect();
        if outs.is_empty() {
            return None;
        }
        let g = outs[rng.gen_range(0..outs.len())];
        edges.push(g);
        v = q.edge(g).tgt;
    }
    if closed && v != start {
        return None;
    }
    Some(Path::from_raw(edges, start, v))
}

/// A random element of ℂQ̂ (no τ) with small integer coefficients.
pub fn random_super_element<R: Rng>(sq: &SuperQuiver, rng: &mut R, terms: usize, max_len: usize) -> SuperPoly<Rational> {
    let mut a = NCPoly::zero(sq.derived());
    let mut tries = 0;
    while a.len() < terms && tries < 50 * terms.max(1) {
        tries += 1;
        let len = rng.gen_range(1..=max_len);
        if let Some(p) = random_word(sq, rng, len, false) {
            a.add_term(p, qi(rng.gen_range(-3..=3)));
        }
    }
    a
}

/// A random element of Sym(𝔇_cyc): a product of 1..=`max_factors` random
/// cyclic elements (τ-free, words of length ≤ `max_len`).
pub fn random_sym_cyclic<R: Rng>(sq: &Arc<SuperQuiver>, rng: &mut R, max_factors: usize, max_len: usize) -> SymCyclic<Rational> {
    let k = rng.gen_range(1..=max_factors.max(1));
    let mut m = SymCyclic::one(sq);
    for _ in 0..k {
        let terms = rng.gen_range(1..=2);
        m = m.mul(&SymCyclic::from_cyclic(&random_cyclic(sq, rng, terms, max_len)));
    }
    m
}

fn random_cyclic<R: Rng>(sq: &Arc<SuperQuiver>, rng: &mut R, terms: usize, max_len: usize) -> SuperCyclic<Rational> {
    let mut a = SuperCyclic::zero(sq);
    let mut tries = 0;
    while a.len() < terms && tries < 200 * terms.max(1) {
        tries += 1;
        let len = rng.gen_range(1..=max_len);
        if let Some(p) = random_word(sq, rng, len, true) {
            a.add_word(p.edges(), p.start(), qi(rng.gen_range(1..=3)));
        }
    }
    a
}

fn all_zero(v: &[SuperPoly<Rational>]) -> bool {
    v.iter().all(|p| p.is_zero())
}

/// Run all DG, BRST and BV checks for a potential with `samples` random elements.
pub fn dg_check<R: Rng>(phi: &CyclicPoly<Rational>, samples: usize, rng: &mut R) -> Result<DgCheckReport> {
    let base = phi.quiver().clone();
    let sq = Arc::new(SuperQuiver::new(&base, false)?);
    let sqt = Arc::new(SuperQuiver::new(&base, true)?);

    // DG algebra
    let d = dg_differential_derivation(&sq, phi)?;
    let mut counterexample = None;
    let mut note = |flag: &mut bool, ok: bool, what: &dyn Fn() -> String| {
        if !ok {
            if *flag && counterexample.is_none() {
                counterexample = Some(what());
            }
            *flag = false;
        }
    };
    let mut d_squared_zero = true;
    for (g, v) in d.square_on_generators().iter().enumerate() {
        note(&mut d_squared_zero, v.is_zero(), &|| format!("d²({}) = {}", sq.derived().edge(g).name, v.render()));
    }
    for _ in 0..samples {
        let a = random_super_element(&sq, rng, 4, 5);
        let dd = d.apply(&d.apply(&a));
        note(&mut d_squared_zero, dd.is_zero(), &|| format!("d²({}) = {}", a.render(), dd.render()));
    }
    let mut h0_presentation = true;
    for e in 0..base.num_edges() {
        h0_presentation &= *d.value(sq.dual(e)) == sq.embed(&cyclic_derive(phi, e)?)?;
        h0_presentation &= d.value(e).is_zero();
    }

    // BRST
    let flat = brst_potential(&sqt, phi)?;
    let xi = hamiltonian_derivation(&flat)?;
    let dt = dg_differential_derivation(&sq, phi)?;
    let mut brst_reduces_to_d = true;
    for g in 0..sqt.derived().num_edges() {
        let v = xi.value(g);
        match sqt.kind(g) {
            GenKind::Tau(_) => brst_reduces_to_d &= mod_tau(&sqt, v).is_zero(),
            _ => {
                let reduced = mod_tau(&sqt, v);
                let expect = NCPoly::from_terms(
                    sqt.derived(),
                    dt.value(g).terms().map(|(p, c)| (Path::from_raw(p.edges().to_vec(), p.start(), p.end()), c.clone())),
                );
                brst_reduces_to_d &= reduced == expect;
            }
        }
    }
    let rep = brst_representative(&sqt, phi)?;
    let mut unit_axiom = true;
    for v in 0..base.num_vertices() {
        let tv = SuperCyclic::from_class(&sqt, Cycle::from_canonical(vec![sqt.t(v)], v));
        let xt = hamiltonian_derivation(&tv)?;
        unit_axiom &= xt.apply(&rep) == sqt.delta_at(v);
    }
    let master = necklace_bracket(&flat, &flat)?;
    let mut master_equation = true;
    note(&mut master_equation, master.is_zero(), &|| format!("{{Φ♭,Φ♭}} = {}", master.render()));
    let brst_squared_zero = all_zero(&xi.square_on_generators());
    let zero = CyclicPoly::zero(&base);
    let free = hamiltonian_derivation(&brst_potential(&sqt, &zero)?)?;
    let free_anchor = free.agrees_with(&brst_reference_derivation::<Rational>(&sqt)?);

    // BV
    let mut bv_squared_zero = true;
    let mut bv_constructions_agree = true;
    for _ in 0..samples {
        let m = random_sym_cyclic(&sq, rng, 4, 4);
        let d1 = bv_operator(&m)?;
        let s1 = bv_operator_surgery(&m);
        note(&mut bv_constructions_agree, d1 == s1, &|| format!("Δ({}) differs between constructions", m.render()));
        let dd = bv_operator(&d1)?;
        let ok = dd.is_zero() && bv_operator_surgery(&s1).is_zero();
        note(&mut bv_squared_zero, ok, &|| format!("Δ²({}) = {}", m.render(), dd.render()));
    }
    Ok(DgCheckReport {
        d_squared_zero,
        h0_presentation,
        samples,
        brst_reduces_to_d,
        unit_axiom,
        master_equation,
        brst_squared_zero,
        free_anchor,
        bv_squared_zero,
        bv_constructions_agree,
        counterexample,
    })
}
