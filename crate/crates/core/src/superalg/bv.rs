//! Sym of the super-cyclic quotient, the necklace cobracket and the BV
//! operator Δ.
//!
//! Δ is defined on monomials u_1⋯u_n by
//! Δ = Σ_i ± ν(u_i)·Π_{j≠i} u_j + Σ_{k<l} ± {u_k, u_l}·Π_{j≠k,l} u_j
//! with Koszul signs for moving the factors to the front.  An independent
//! construction by letter surgery (cut one x and one x* out of the
//! multi-necklace and reconnect) is provided as an oracle: it squares to
//! zero for purely combinatorial reasons, since two surgeries commute and
//! the removal of two odd letters anticommutes.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;


use super::{necklace_bracket, sign_coeff, SuperCyclic, SuperQuiver};
use crate::error::Result;
use crate::path::Cycle;
use crate::quiver::{EdgeId, VertexId};
use crate::scalar::{Coeff, Rational};

/// Element of Sym(𝔇_cyc): linear combination of sorted products of
/// canonical cyclic classes (odd classes anticommute and square to zero).
#[derive(Clone)]
pub struct SymCyclic<K: Coeff = Rational> {
    sq: Arc<SuperQuiver>,
    terms: BTreeMap<Vec<Cycle>, K>,
}

impl<K: Coeff> PartialEq for SymCyclic<K> {
    fn eq(&self, other: &Self) -> bool {
        self.sq == other.sq && self.terms == other.terms
    }
}

impl<K: Coeff> fmt::Debug for SymCyclic<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymCyclic({})", self.render())
    }
}

impl<K: Coeff> SymCyclic<K> {
    /// Zero.
    pub fn zero(sq: &Arc<SuperQuiver>) -> Self {
        SymCyclic { sq: sq.clone(), terms: BTreeMap::new() }
    }
    /// The unit (empty product).
    pub fn one(sq: &Arc<SuperQuiver>) -> Self {
        let mut s = Self::zero(sq);
        s.terms.insert(Vec::new(), K::one());
        s
    }
    /// Sym¹ embedding of a cyclic element.
    pub fn from_cyclic(a: &SuperCyclic<K>) -> Self {
        let mut s = Self::zero(a.super_quiver());
        for (c, k) in a.terms() {
            s.add_monomial(vec![c.clone()], k.clone());
        }
        s
    }
    /// Terms.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Cycle>, &K)> {
        self.terms.iter()
    }
    /// Whether zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    /// Number of monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    /// Whether there are no monomials.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    /// The Sym¹ component as a cyclic element.
    pub fn linear_part(&self) -> SuperCyclic<K> {
        let mut out = SuperCyclic::zero(&self.sq);
        for (m, k) in &self.terms {
            if m.len() == 1 {
                out.add_canonical(m[0].clone(), k.clone());
            }
        }
        out
    }
    /// The component with exactly `n` factors.
    pub fn weight_part(&self, n: usize) -> Self {
        let mut out = Self::zero(&self.sq);
        for (m, k) in &self.terms {
            if m.len() == n {
                out.terms.insert(m.clone(), k.clone());
            }
        }
        out
    }
    /// Add `c` times the product of the given canonical classes, in the given order.
    pub fn add_monomial(&mut self, factors: Vec<Cycle>, c: K) {
        if c.is_zero() {
            return;
        }
        if let Some((m, s)) = normalize(&self.sq, factors) {
            let e = self.terms.entry(m.clone()).or_insert_with(K::zero);
            *e = e.clone() + c * sign_coeff::<K>(s);
            if e.is_zero() {
                self.terms.remove(&m);
            }
        }
    }
    /// Add `c · other`.
    pub fn add_scaled(&mut self, other: &Self, c: &K) {
        for (m, k) in &other.terms {
            let e = self.terms.entry(m.clone()).or_insert_with(K::zero);
            *e = e.clone() + k.clone() * c.clone();
            if e.is_zero() {
                self.terms.remove(m);
            }
        }
    }
    /// Product in Sym.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.sq);
        for (a, ka) in &self.terms {
            for (b, kb) in &other.terms {
                let mut f = a.clone();
                f.extend(b.iter().cloned());
                out.add_monomial(f, ka.clone() * kb.clone());
            }
        }
        out
    }
    /// Render as a sum of products of cyclic words.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let q = self.sq.derived();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, k)| {
                let f: Vec<String> = m.iter().map(|c| format!("[{}]", c.render(q))).collect();
                let body = if f.is_empty() { "1".to_string() } else { f.join("·") };
                format!("({})·{}", k.render(), body)
            })
            .collect();
        parts.join(" + ")
    }
}

/// Sort factors with Koszul signs; `None` if an odd class repeats.
fn normalize(sq: &SuperQuiver, mut f: Vec<Cycle>) -> Option<(Vec<Cycle>, i8)> {
    let par: Vec<u8> = f.iter().map(|c| sq.cycle_parity(c)).collect();
    let mut idx: Vec<usize> = (0..f.len()).collect();
    let mut sign = 1i8;
    // insertion sort on indices, tracking swaps of odd pairs
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && f[idx[j - 1]] > f[idx[j]] {
            if par[idx[j - 1]] == 1 && par[idx[j]] == 1 {
                sign = -sign;
            }
            idx.swap(j - 1, j);
            j -= 1;
        }
    }
    let sorted: Vec<Cycle> = idx.iter().map(|&i| f[i].clone()).collect();
    for w in sorted.windows(2) {
        if w[0] == w[1] && sq.cycle_parity(&w[0]) == 1 {
            return None;
        }
    }
    f.clear();
    Some((sorted, sign))
}

/// Koszul sign of moving the factors at `picked` (in that order) to the front.
fn extraction_sign(par: &[u8], picked: &[usize]) -> i8 {
    let mut order: Vec<usize> = picked.to_vec();
    order.extend((0..par.len()).filter(|i| !picked.contains(i)));
    graded_perm_sign(&order.iter().map(|&i| (i, par[i])).collect::<Vec<_>>())
}

/// Sign of the graded permutation listing items (original position, parity)
/// in the given order: (−1)^{#inversions among odd items}.
fn graded_perm_sign(items: &[(usize, u8)]) -> i8 {
    let odd: Vec<usize> = items.iter().filter(|(_, p)| *p == 1).map(|(i, _)| *i).collect();
    let mut inv = 0usize;
    for a in 0..odd.len() {
        for b in a + 1..odd.len() {
            if odd[a] > odd[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 1 {
        -1
    } else {
        1
    }
}

/// A block of letters (positions into the global letter sequence) with the
/// vertex it sits at when empty.
struct Block {
    pos: Vec<usize>,
    vertex: VertexId,
}

/// Letter surgery on one monomial: sum over pairs (x, x*) of letters.
fn surgery(sq: &SuperQuiver, factors: &[Cycle], out: &mut dyn FnMut(Vec<Cycle>, i8)) {
    let mut letters: Vec<EdgeId> = Vec::new();
    let mut blocks: Vec<Block> = Vec::new();
    let mut block_of: Vec<usize> = Vec::new();
    for (b, c) in factors.iter().enumerate() {
        let start = letters.len();
        letters.extend_from_slice(c.edges());
        block_of.extend(std::iter::repeat_n(b, c.len()));
        blocks.push(Block { pos: (start..letters.len()).collect(), vertex: c.vertex() });
    }
    let par: Vec<u8> = letters.iter().map(|&g| sq.parity(g)).collect();
    let nbase = sq.base().num_edges();
    // cyclic sequence of a block's positions strictly after position `p`
    let after = |b: usize, p: usize| -> Vec<usize> {
        let ps = &blocks[b].pos;
        let k = ps.iter().position(|&x| x == p).unwrap();
        (1..ps.len()).map(|j| ps[(k + j) % ps.len()]).collect()
    };
    for a in 0..letters.len() {
        let e = letters[a];
        if e >= nbase {
            continue;
        }
        let dual = sq.dual(e);
        let ed = sq.base().edge(e);
        for b in 0..letters.len() {
            if letters[b] != dual {
                continue;
            }
            let odd_before = (0..b).filter(|&i| par[i] == 1).count();
            let sign1: i8 = if odd_before % 2 == 1 { -1 } else { 1 };
            let (bx, bt) = (block_of[a], block_of[b]);
            let mut new_blocks: Vec<(Vec<usize>, VertexId)> = Vec::new();
            for (i, blk) in blocks.iter().enumerate() {
                if i != bx && i != bt {
                    new_blocks.push((blk.pos.clone(), blk.vertex));
                }
            }
            if bx == bt {
                let seq = after(bx, a);
                let k = seq.iter().position(|&x| x == b).unwrap();
                new_blocks.push((seq[..k].to_vec(), ed.tgt));
                new_blocks.push((seq[k + 1..].to_vec(), ed.src));
            } else {
                let mut s = after(bx, a);
                s.extend(after(bt, b));
                new_blocks.push((s, ed.tgt));
            }
            let order: Vec<(usize, u8)> = new_blocks.iter().flat_map(|(p, _)| p.iter().map(|&i| (i, par[i]))).collect();
            let mut sign = sign1 * graded_perm_sign(&order);
            let mut cycles = Vec::new();
            let mut vanished = false;
            for (p, v) in &new_blocks {
                let w: Vec<EdgeId> = p.iter().map(|&i| letters[i]).collect();
                match sq.canonical_class(&w, *v) {
                    Some((c, s)) => {
                        sign *= s;
                        cycles.push(c);
                    }
                    None => {
                        vanished = true;
                        break;
                    }
                }
            }
            if !vanished {
                out(cycles, sign);
            }
        }
    }
}

/// The BV operator by letter surgery (independent oracle).
pub fn bv_operator_surgery<K: Coeff>(m: &SymCyclic<K>) -> SymCyclic<K> {
    let sq = m.sq.clone();
    let mut out = SymCyclic::zero(&sq);
    for (f, k) in &m.terms {
        let mut push = |cs: Vec<Cycle>, s: i8| out.add_monomial(cs, k.clone() * sign_coeff::<K>(s));
        surgery(&sq, f, &mut push);
    }
    out
}

/// The necklace cobracket ν: 𝔇_cyc → Sym²(𝔇_cyc): for every pair of an
/// x-letter and an x*-letter in the same necklace x·A·x*·B, the product [A]·[B]
/// with its Koszul sign.
pub fn cobracket<K: Coeff>(u: &SuperCyclic<K>) -> SymCyclic<K> {
    bv_operator_surgery(&SymCyclic::from_cyclic(u))
}

/// Sign relating the two-necklace part of Δ(u·v) to {u, v}, as a function of the parities.
fn bracket_sign(pu: u8, pv: u8) -> i8 {
    if pu == 0 && pv == 1 {
        1
    } else {
        -1
    }
}

/// The BV operator Δ assembled from the cobracket and the necklace bracket.
pub fn bv_operator<K: Coeff>(m: &SymCyclic<K>) -> Result<SymCyclic<K>> {
    let sq = m.sq.clone();
    let mut out = SymCyclic::zero(&sq);
    for (f, k) in &m.terms {
        let par: Vec<u8> = f.iter().map(|c| sq.cycle_parity(c)).collect();
        let n = f.len();
        for i in 0..n {
            let s = extraction_sign(&par, &[i]);
            let rest: Vec<Cycle> = (0..n).filter(|&j| j != i).map(|j| f[j].clone()).collect();
            let mut restm = SymCyclic::zero(&sq);
            restm.add_monomial(rest, k.clone() * sign_coeff::<K>(s));
            let nu = cobracket(&SuperCyclic::from_class(&sq, f[i].clone()));
            out.add_scaled(&nu.mul(&restm), &K::one());
        }
        for a in 0..n {
            for b in a + 1..n {
                let s = extraction_sign(&par, &[a, b]) * bracket_sign(par[a], par[b]);
                let rest: Vec<Cycle> = (0..n).filter(|&j| j != a && j != b).map(|j| f[j].clone()).collect();
                let mut restm = SymCyclic::zero(&sq);
                restm.add_monomial(rest, k.clone() * sign_coeff::<K>(s));
                let br = necklace_bracket(
                    &SuperCyclic::from_class(&sq, f[a].clone()),
                    &SuperCyclic::from_class(&sq, f[b].clone()),
                )?;
                out.add_scaled(&SymCyclic::from_cyclic(&br).mul(&restm), &K::one());
            }
        }
    }
    Ok(out)
}
