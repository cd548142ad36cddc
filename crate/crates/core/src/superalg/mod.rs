//! The graded algebra 𝔇(F,Φ) = ℂQ̂ on generators x (deg 0), x* (deg 1),
//! t_i (deg 2) and optionally τ_i (deg −1); the super-cyclic quotient; the
//! DG differential, Hamiltonian derivations and necklace bracket; the BRST
//! potential Φ♭; and the BV operator on Sym of the cyclic quotient.
//!
//! Sign conventions (all fixed by the anchor checks in the test suite):
//! * parities are degrees mod 2, Koszul signs (−1)^{|a||b|};
//! * derivations act from the right: D(ab) = a·D(b) + (−1)^{|D||b|} D(a)·b;
//! * the left cyclic derivative D_g[w] rotates each occurrence of g to the
//!   front (with its Koszul sign) and deletes it;
//! * for every dual pair (q, p) ∈ {(x, x*), (t_i, τ_i)} the Hamiltonian
//!   derivation of H sends p ↦ D_q H and q ↦ −D_p H.

mod bv;
mod check;
mod derivation;

pub use bv::{bv_operator, bv_operator_surgery, cobracket, SymCyclic};
pub use check::{dg_check, random_super_element, random_sym_cyclic, DgCheckReport};
pub use derivation::{
    brst_potential, brst_reference_derivation, brst_representative, dg_differential, dg_differential_derivation, mod_tau,
    hamiltonian_derivation, necklace_bracket, Derivation,
};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;


use crate::error::{Error, Result};
use crate::path::{canonical_shift, Cycle, Path};
use crate::poly::{CyclicPoly, NCPoly};
use crate::quiver::{Edge, EdgeId, Quiver, VertexId};
use crate::scalar::{Coeff, Rational};

/// Elements of 𝔇(F,Φ) (or its τ-extension) are path-algebra elements of Q̂.
pub type SuperPoly<K = Rational> = NCPoly<K>;

/// Role of a generator of Q̂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    /// A base edge x.
    Base(EdgeId),
    /// The dual x*.
    Dual(EdgeId),
    /// The loop t_i.
    T(VertexId),
    /// The loop τ_i.
    Tau(VertexId),
}

/// The derived super quiver Q̂ of a quiver Q.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperQuiver {
    base: Arc<Quiver>,
    derived: Arc<Quiver>,
    kinds: Vec<GenKind>,
    dual: Vec<EdgeId>,
    t: Vec<EdgeId>,
    tau: Option<Vec<EdgeId>>,
}

impl SuperQuiver {
    /// Build Q̂ (with τ loops if `with_tau`).  Base edges keep their ids; the
    /// dual of `x` is named `x*`, or `x^*` (`x^^*`, …) when a base edge
    /// already uses that name, as in the conifold quiver.
    pub fn new(base: &Arc<Quiver>, with_tau: bool) -> Result<Self> {
        let one = base.num_vertices() == 1;
        let vname = |v: VertexId| base.vertices()[v].clone();
        let mut edges: Vec<Edge> = Vec::new();
        let mut kinds = Vec::new();
        for (i, e) in base.edges().iter().enumerate() {
            edges.push(Edge { name: e.name.clone(), src: e.src, tgt: e.tgt, deg: 0 });
            kinds.push(GenKind::Base(i));
        }
        let mut used: std::collections::HashSet<String> = base.edges().iter().map(|e| e.name.clone()).collect();
        let mut dual = Vec::new();
        for (i, e) in base.edges().iter().enumerate() {
            dual.push(edges.len());
            let mut name = format!("{}*", e.name);
            while used.contains(&name) {
                name = format!("{}^{}", e.name, &name[e.name.len()..]);
            }
            used.insert(name.clone());
            edges.push(Edge { name, src: e.tgt, tgt: e.src, deg: 1 });
            kinds.push(GenKind::Dual(i));
        }
        let mut t = Vec::new();
        for v in 0..base.num_vertices() {
            t.push(edges.len());
            let name = if one { "t".to_string() } else { format!("t_{}", vname(v)) };
            edges.push(Edge { name, src: v, tgt: v, deg: 2 });
            kinds.push(GenKind::T(v));
        }
        let tau = if with_tau {
            let mut ts = Vec::new();
            for v in 0..base.num_vertices() {
                ts.push(edges.len());
                let name = if one { "τ".to_string() } else { format!("τ_{}", vname(v)) };
                edges.push(Edge { name, src: v, tgt: v, deg: -1 });
                kinds.push(GenKind::Tau(v));
            }
            Some(ts)
        } else {
            None
        };
        let derived = Arc::new(Quiver::from_parts(base.vertices().to_vec(), edges)?);
        Ok(SuperQuiver { base: base.clone(), derived, kinds, dual, t, tau })
    }
    /// The base quiver Q.
    pub fn base(&self) -> &Arc<Quiver> {
        &self.base
    }
    /// The derived quiver Q̂.
    pub fn derived(&self) -> &Arc<Quiver> {
        &self.derived
    }
    /// Whether τ loops are present.
    pub fn has_tau(&self) -> bool {
        self.tau.is_some()
    }
    /// Role of a generator.
    pub fn kind(&self, g: EdgeId) -> GenKind {
        self.kinds[g]
    }
    /// Id of x* in Q̂.
    pub fn dual(&self, e: EdgeId) -> EdgeId {
        self.dual[e]
    }
    /// Id of t_v.
    pub fn t(&self, v: VertexId) -> EdgeId {
        self.t[v]
    }
    /// Id of τ_v.
    pub fn tau(&self, v: VertexId) -> Option<EdgeId> {
        self.tau.as_ref().map(|ts| ts[v])
    }
    /// Parity of a generator.
    pub fn parity(&self, g: EdgeId) -> u8 {
        (self.derived.edge(g).deg.rem_euclid(2)) as u8
    }
    /// Parity of a word.
    pub fn word_parity(&self, w: &[EdgeId]) -> u8 {
        w.iter().map(|&g| self.parity(g)).sum::<u8>() % 2
    }
    /// Degree of a word.
    pub fn word_degree(&self, w: &[EdgeId]) -> i32 {
        w.iter().map(|&g| self.derived.edge(g).deg).sum()
    }
    /// Dual pairs (q, p) with p ↦ D_q H and q ↦ −D_p H.
    pub fn dual_pairs(&self) -> Vec<(EdgeId, EdgeId)> {
        let mut v: Vec<(EdgeId, EdgeId)> = (0..self.base.num_edges()).map(|e| (e, self.dual[e])).collect();
        if let Some(ts) = &self.tau {
            for (i, &tau) in ts.iter().enumerate() {
                v.push((self.t[i], tau));
            }
        }
        v
    }
    /// Embed a base-quiver polynomial (base edges keep their ids).
    pub fn embed<K: Coeff>(&self, a: &NCPoly<K>) -> Result<SuperPoly<K>> {
        if !crate::poly::same_quiver(a.quiver(), &self.base) {
            return Err(Error::QuiverMismatch);
        }
        Ok(NCPoly::from_terms(
            &self.derived,
            a.terms().map(|(p, c)| (Path::from_raw(p.edges().to_vec(), p.start(), p.end()), c.clone())),
        ))
    }
    /// Embed a base potential as a super-cyclic element (all letters even).
    pub fn embed_cyclic<K: Coeff>(self: &Arc<Self>, phi: &CyclicPoly<K>) -> Result<SuperCyclic<K>> {
        Ok(SuperCyclic::project(self, &self.embed(&phi.lift())?))
    }
    /// The element δ_v = Σ_{src x = v} x x* − Σ_{tgt x = v} x* x.
    pub fn delta_at<K: Coeff>(&self, v: VertexId) -> SuperPoly<K> {
        let q = &self.derived;
        let mut d = NCPoly::zero(q);
        for (e, ed) in self.base.edges().iter().enumerate() {
            let x = Path::edge(q, e);
            let xs = Path::edge(q, self.dual[e]);
            if ed.src == v {
                d.add_term(x.concat(&xs).unwrap(), K::one());
            }
            if ed.tgt == v {
                d.add_term(xs.concat(&x).unwrap(), -K::one());
            }
        }
        d
    }
    /// δ = Σ_v δ_v.
    pub fn delta<K: Coeff>(&self) -> SuperPoly<K> {
        let mut d = NCPoly::zero(&self.derived);
        for v in 0..self.base.num_vertices() {
            d.add_scaled(&self.delta_at::<K>(v), &K::one());
        }
        d
    }
    /// Koszul sign (as ±1) of rotating `w` by `s`: the prefix w[..s] moves past w[s..].
    pub fn rotation_sign(&self, w: &[EdgeId], s: usize) -> i8 {
        let a = self.word_parity(&w[..s]);
        let b = self.word_parity(&w[s..]);
        if a * b % 2 == 1 {
            -1
        } else {
            1
        }
    }
    /// Canonical class of a closed word: `None` if the class vanishes
    /// (the word equals itself with sign −1 under some rotation), else the
    /// canonical cycle and the sign relating them.
    pub fn canonical_class(&self, w: &[EdgeId], vertex: VertexId) -> Option<(Cycle, i8)> {
        if w.is_empty() {
            return Some((Cycle::trivial(vertex), 1));
        }
        let n = w.len();
        // Smallest period.
        let period = (1..=n).find(|&p| n.is_multiple_of(p) && (0..n).all(|k| w[k] == w[(k + p) % n])).unwrap();
        if period < n && self.rotation_sign(w, period) < 0 {
            return None;
        }
        let s = canonical_shift(&self.derived, w);
        let sign = self.rotation_sign(w, s);
        let mut edges = w[s..].to_vec();
        edges.extend_from_slice(&w[..s]);
        let v = self.derived.edge(edges[0]).src;
        Some((Cycle::from_canonical(edges, v), sign))
    }
    /// Parity of a cycle class.
    pub fn cycle_parity(&self, c: &Cycle) -> u8 {
        self.word_parity(c.edges())
    }
}

/// Element of the super-commutator quotient 𝔇/[𝔇,𝔇]_super.
#[derive(Clone)]
pub struct SuperCyclic<K: Coeff = Rational> {
    sq: Arc<SuperQuiver>,
    terms: BTreeMap<Cycle, K>,
}

impl<K: Coeff> PartialEq for SuperCyclic<K> {
    fn eq(&self, other: &Self) -> bool {
        self.sq == other.sq && self.terms == other.terms
    }
}

impl<K: Coeff> fmt::Debug for SuperCyclic<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperCyclic({})", self.render())
    }
}

impl<K: Coeff> fmt::Display for SuperCyclic<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub(crate) fn sign_coeff<K: Coeff>(s: i8) -> K {
    if s < 0 {
        -K::one()
    } else {
        K::one()
    }
}

impl<K: Coeff> SuperCyclic<K> {
    /// Zero.
    pub fn zero(sq: &Arc<SuperQuiver>) -> Self {
        SuperCyclic { sq: sq.clone(), terms: BTreeMap::new() }
    }
    /// The super quiver.
    pub fn super_quiver(&self) -> &Arc<SuperQuiver> {
        &self.sq
    }
    /// Terms.
    pub fn terms(&self) -> impl Iterator<Item = (&Cycle, &K)> {
        self.terms.iter()
    }
    /// Whether zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    /// Number of classes.
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    /// Whether there are no classes.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    /// The class of a single canonical cycle.
    pub fn from_class(sq: &Arc<SuperQuiver>, c: Cycle) -> Self {
        let mut s = Self::zero(sq);
        s.add_canonical(c, K::one());
        s
    }
    /// Add `c · [w]` for a closed word `w` (canonicalized with its sign).
    pub fn add_word(&mut self, w: &[EdgeId], vertex: VertexId, c: K) {
        if let Some((cy, s)) = self.sq.canonical_class(w, vertex) {
            self.add_canonical(cy, c * sign_coeff::<K>(s));
        }
    }
    pub(crate) fn add_canonical(&mut self, cy: Cycle, c: K) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(cy.clone()).or_insert_with(K::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.remove(&cy);
        }
    }
    /// Add `c · other`.
    pub fn add_scaled(&mut self, other: &Self, c: &K) {
        for (cy, a) in &other.terms {
            self.add_canonical(cy.clone(), a.clone() * c.clone());
        }
    }
    /// `c · self`.
    pub fn scale(&self, c: &K) -> Self {
        let mut r = Self::zero(&self.sq);
        r.add_scaled(self, c);
        r
    }
    /// Projection 𝔇 → 𝔇_cyc with Koszul rotation signs.
    pub fn project(sq: &Arc<SuperQuiver>, a: &SuperPoly<K>) -> Self {
        let mut r = Self::zero(sq);
        for (p, c) in a.terms() {
            if p.is_closed() {
                r.add_word(p.edges(), p.start(), c.clone());
            }
        }
        r
    }
    /// Canonical representatives.
    pub fn lift(&self) -> SuperPoly<K> {
        NCPoly::from_terms(self.sq.derived(), self.terms.iter().map(|(c, k)| (c.to_path(), k.clone())))
    }
    /// Parity components: (even part, odd part).
    pub fn parity_split(&self) -> (Self, Self) {
        let mut ev = Self::zero(&self.sq);
        let mut od = Self::zero(&self.sq);
        for (c, k) in &self.terms {
            if self.sq.cycle_parity(c) == 0 {
                ev.add_canonical(c.clone(), k.clone());
            } else {
                od.add_canonical(c.clone(), k.clone());
            }
        }
        (ev, od)
    }
    /// Homogeneous degree, if any.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut d = self.terms.keys().map(|c| self.sq.word_degree(c.edges()));
        let first = d.next()?;
        d.all(|e| e == first).then_some(first)
    }
    /// Left cyclic derivative D_g: rotate each occurrence of g to the front
    /// with its Koszul sign and delete it.
    pub fn left_derive(&self, g: EdgeId) -> SuperPoly<K> {
        let q = self.sq.derived();
        let mut out = NCPoly::zero(q);
        for (cy, c) in &self.terms {
            let w = cy.edges();
            let n = w.len();
            for s in 0..n {
                if w[s] != g {
                    continue;
                }
                let sign = self.sq.rotation_sign(w, s);
                let rest: Vec<EdgeId> = (1..n).map(|k| w[(s + k) % n]).collect();
                let ed = q.edge(g);
                out.add_term(Path::from_raw(rest, ed.tgt, ed.src), c.clone() * sign_coeff::<K>(sign));
            }
        }
        out
    }
    /// Human-readable rendering.
    pub fn render(&self) -> String {
        let q = self.sq.derived();
        let cp = CyclicPoly::from_terms(q, self.terms.iter().map(|(c, k)| (c.clone(), k.clone())));
        cp.render()
    }
    /// Parse a super-cyclic element in Q̂ edge names.
    pub fn parse(sq: &Arc<SuperQuiver>, text: &str) -> Result<Self> {
        let p = NCPoly::<K>::parse(sq.derived(), text)?;
        if let Some((open, _)) = p.terms().find(|(p, _)| !p.is_closed()) {
            return Err(Error::NotComposable(format!("word `{}` is not a cycle", open.render(sq.derived()))));
        }
        Ok(Self::project(sq, &p))
    }
}

impl<K: Coeff> std::ops::Add for SuperCyclic<K> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.add_scaled(&rhs, &K::one());
        self
    }
}

impl<K: Coeff> std::ops::Sub for SuperCyclic<K> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self.add_scaled(&rhs, &(-K::one()));
        self
    }
}
