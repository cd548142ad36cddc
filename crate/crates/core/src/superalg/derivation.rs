//! Derivations of ℂQ̂: the DG differential, Hamiltonian derivations, the
//! necklace bracket and the BRST potential.

use std::sync::Arc;


use super::{sign_coeff, GenKind, SuperCyclic, SuperPoly, SuperQuiver};
use crate::calculus::cyclic_derive;
use crate::error::{Error, Result};
use crate::path::Path;
use crate::poly::{CyclicPoly, NCPoly};
use crate::quiver::EdgeId;
use crate::scalar::Coeff;

/// A parity-homogeneous derivation of ℂQ̂ acting from the right,
/// determined by its values on the generators:
/// D(ab) = a·D(b) + (−1)^{|D||b|} D(a)·b.
#[derive(Clone, Debug)]
pub struct Derivation<K: Coeff> {
    sq: Arc<SuperQuiver>,
    parity: u8,
    values: Vec<SuperPoly<K>>,
}

impl<K: Coeff> Derivation<K> {
    /// The zero derivation of the given parity.
    pub fn zero(sq: &Arc<SuperQuiver>, parity: u8) -> Self {
        let n = sq.derived().num_edges();
        Derivation { sq: sq.clone(), parity: parity % 2, values: vec![NCPoly::zero(sq.derived()); n] }
    }
    /// Build from generator values; each value of generator g must lie in 1_{src g}·ℂQ̂·1_{tgt g}.
    pub fn from_values(sq: &Arc<SuperQuiver>, parity: u8, values: Vec<SuperPoly<K>>) -> Result<Self> {
        let q = sq.derived();
        if values.len() != q.num_edges() {
            return Err(Error::Shape(format!("{} generator values for {} generators", values.len(), q.num_edges())));
        }
        for (g, v) in values.iter().enumerate() {
            let e = q.edge(g);
            if let Some((p, _)) = v.terms().find(|(p, _)| p.start() != e.src || p.end() != e.tgt) {
                return Err(Error::NotComposable(format!(
                    "value `{}` on generator `{}` has the wrong endpoints",
                    p.render(q),
                    e.name
                )));
            }
        }
        Ok(Derivation { sq: sq.clone(), parity: parity % 2, values })
    }
    /// Parity of the derivation.
    pub fn parity(&self) -> u8 {
        self.parity
    }
    /// Value on a generator.
    pub fn value(&self, g: EdgeId) -> &SuperPoly<K> {
        &self.values[g]
    }
    /// The super quiver.
    pub fn super_quiver(&self) -> &Arc<SuperQuiver> {
        &self.sq
    }
    /// Apply to an element of ℂQ̂.
    pub fn apply(&self, a: &SuperPoly<K>) -> SuperPoly<K> {
        let sq = &self.sq;
        let mut out = NCPoly::zero(sq.derived());
        for (p, c) in a.terms() {
            let w = p.edges();
            // suffix parities
            let mut suffix = vec![0u8; w.len() + 1];
            for s in (0..w.len()).rev() {
                suffix[s] = (suffix[s + 1] + sq.parity(w[s])) % 2;
            }
            for s in 0..w.len() {
                let val = &self.values[w[s]];
                if val.is_zero() {
                    continue;
                }
                let sign: i8 = if self.parity * suffix[s + 1] % 2 == 1 { -1 } else { 1 };
                let cs = c.clone() * sign_coeff::<K>(sign);
                for (m, k) in val.terms() {
                    let mut edges = w[..s].to_vec();
                    edges.extend_from_slice(m.edges());
                    edges.extend_from_slice(&w[s + 1..]);
                    out.add_term(Path::from_raw(edges, p.start(), p.end()), cs.clone() * k.clone());
                }
            }
        }
        out
    }
    /// Apply to a super-cyclic class (derivations preserve super commutators).
    pub fn apply_cyclic(&self, a: &SuperCyclic<K>) -> SuperCyclic<K> {
        SuperCyclic::project(&self.sq, &self.apply(&a.lift()))
    }
    /// The values D(D(g)) on every generator; D² is a derivation, so it
    /// vanishes iff all of these do.
    pub fn square_on_generators(&self) -> Vec<SuperPoly<K>> {
        self.values.iter().map(|v| self.apply(v)).collect()
    }
    /// Whether the two derivations agree on every generator.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.parity == other.parity && self.values == other.values
    }
    /// The generators on which the two derivations differ.
    pub fn disagreements(&self, other: &Self) -> Vec<EdgeId> {
        (0..self.values.len()).filter(|&g| self.values[g] != other.values[g]).collect()
    }
}

/// Drop every monomial containing a τ letter (reduction modulo the ideal (τ)).
pub fn mod_tau<K: Coeff>(sq: &SuperQuiver, a: &SuperPoly<K>) -> SuperPoly<K> {
    NCPoly::from_terms(
        sq.derived(),
        a.terms()
            .filter(|(p, _)| !p.edges().iter().any(|&g| matches!(sq.kind(g), GenKind::Tau(_))))
            .map(|(p, c)| (p.clone(), c.clone())),
    )
}

/// The Hamiltonian derivation ξ_H of a parity-homogeneous class H:
/// for each dual pair (q, p), ξ_H(p) = D_q H and ξ_H(q) = −D_p H.
/// Its degree is deg H − 1.
pub fn hamiltonian_derivation<K: Coeff>(h: &SuperCyclic<K>) -> Result<Derivation<K>> {
    let sq = h.super_quiver();
    let parities: std::collections::BTreeSet<u8> = h.terms().map(|(c, _)| sq.cycle_parity(c)).collect();
    if parities.len() > 1 {
        return Err(Error::NotHomogeneous("Hamiltonian has mixed parity".into()));
    }
    let hp = parities.into_iter().next().unwrap_or(0);
    let n = sq.derived().num_edges();
    let mut values = vec![NCPoly::zero(sq.derived()); n];
    for (q, p) in sq.dual_pairs() {
        values[p] = h.left_derive(q);
        values[q] = -h.left_derive(p);
    }
    Derivation::from_values(sq, (hp + 1) % 2, values)
}

/// The necklace bracket {Φ, Ψ} = ξ_Φ(Ψ) in the super-cyclic quotient
/// (bilinear; Φ is split into parity components).
pub fn necklace_bracket<K: Coeff>(phi: &SuperCyclic<K>, psi: &SuperCyclic<K>) -> Result<SuperCyclic<K>> {
    let (ev, od) = phi.parity_split();
    let mut out = SuperCyclic::zero(phi.super_quiver());
    for part in [ev, od] {
        if part.is_zero() {
            continue;
        }
        let xi = hamiltonian_derivation(&part)?;
        out.add_scaled(&xi.apply_cyclic(psi), &K::one());
    }
    Ok(out)
}

/// The DG differential d on 𝔇(F,Φ) as an odd derivation:
/// d(x) = 0, d(x*) = ∂Φ/∂x, d(t_i) = δ_i.  Requires Q̂ without τ.
pub fn dg_differential_derivation<K: Coeff>(sq: &Arc<SuperQuiver>, phi: &CyclicPoly<K>) -> Result<Derivation<K>> {
    if sq.has_tau() {
        return Err(Error::Domain("the DG differential is defined on the algebra without τ".into()));
    }
    let q = sq.derived();
    let mut values = vec![NCPoly::zero(q); q.num_edges()];
    for e in 0..sq.base().num_edges() {
        values[sq.dual(e)] = sq.embed(&cyclic_derive(phi, e)?)?;
    }
    for v in 0..sq.base().num_vertices() {
        values[sq.t(v)] = sq.delta_at(v);
    }
    Derivation::from_values(sq, 1, values)
}

/// Apply the DG differential of Φ to an element of 𝔇(F,Φ).
pub fn dg_differential<K: Coeff>(sq: &Arc<SuperQuiver>, phi: &CyclicPoly<K>, a: &SuperPoly<K>) -> Result<SuperPoly<K>> {
    Ok(dg_differential_derivation(sq, phi)?.apply(a))
}

/// The representative Φ + Σ_i (δ_i τ_i + t_i τ_i τ_i) of the BRST potential
/// in ℂQ̂, written in exactly this word order.
pub fn brst_representative<K: Coeff>(sq: &Arc<SuperQuiver>, phi: &CyclicPoly<K>) -> Result<SuperPoly<K>> {
    if !sq.has_tau() {
        return Err(Error::Domain("the BRST potential needs the τ generators".into()));
    }
    let q = sq.derived();
    let mut rep = sq.embed(&phi.lift())?;
    for v in 0..sq.base().num_vertices() {
        let tau = NCPoly::edge(q, sq.tau(v).unwrap());
        let t = NCPoly::edge(q, sq.t(v));
        rep.add_scaled(&(&sq.delta_at::<K>(v) * &tau), &K::one());
        rep.add_scaled(&(&(&t * &tau) * &tau), &K::one());
    }
    Ok(rep)
}

/// The BRST potential Φ♭ = Φ + Σ_i (δ_i τ_i + t_i τ_i τ_i) as a super-cyclic class.
pub fn brst_potential<K: Coeff>(sq: &Arc<SuperQuiver>, phi: &CyclicPoly<K>) -> Result<SuperCyclic<K>> {
    Ok(SuperCyclic::project(sq, &brst_representative(sq, phi)?))
}

/// The derivation ad τ + δ·∂_t − τ²·∂_τ that ξ_{Φ♭} must reduce to for Φ = 0,
/// with ad τ(u) = uτ − (−1)^{|u|} τu and τ = Σ_i τ_i.
pub fn brst_reference_derivation<K: Coeff>(sq: &Arc<SuperQuiver>) -> Result<Derivation<K>> {
    if !sq.has_tau() {
        return Err(Error::Domain("needs the τ generators".into()));
    }
    let q = sq.derived();
    let mut values = vec![NCPoly::zero(q); q.num_edges()];
    for g in 0..q.num_edges() {
        let e = q.edge(g);
        let u = NCPoly::<K>::edge(q, g);
        let tau_t = NCPoly::edge(q, sq.tau(e.tgt).unwrap());
        let tau_s = NCPoly::edge(q, sq.tau(e.src).unwrap());
        let sign: K = sign_coeff(if sq.parity(g) == 1 { 1 } else { -1 });
        let mut v = &u * &tau_t;
        v.add_scaled(&(&tau_s * &u), &sign);
        match sq.kind(g) {
            GenKind::T(i) => v.add_scaled(&sq.delta_at(i), &K::one()),
            GenKind::Tau(_) => v.add_scaled(&(&tau_s * &tau_s), &(-K::one())),
            _ => {}
        }
        values[g] = v;
    }
    Derivation::from_values(sq, 1, values)
}
