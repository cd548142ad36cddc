//! Degree-by-degree bases of 𝔄 = T_R V / (∂Φ/∂x) for a homogeneous potential.
//!
//! Degree n is built from lower degrees: with W_n = ⊕_x x ⊗ 𝔄_{n−deg x},
//! 𝔄_n = W_n / span{ r_x · c }, where r_x = ∂Φ/∂x and c runs over a basis
//! of 𝔄 in degree n − deg r_x starting at source(x).  This uses
//! I = V·I + R·T and r·I ⊂ V·I.  Each basis vector of 𝔄_n is a non-pivot
//! column (x, b) with representative word x·rep(b); reduction modulo the
//! relation span is canonical, so the normal form map is a projection.

use std::collections::HashMap;
use std::sync::Arc;

use crate::calculus::gradient;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Field, SparseVec};
use crate::path::Path;
use crate::poly::{CyclicPoly, NCPoly};
use crate::quiver::{EdgeId, Quiver, VertexId};
use crate::scalar::Coeff;
use crate::series::{MatrixSeries, Series};

/// Default bound on the working dimension of one degree.
pub const DEFAULT_DIM_BOUND: usize = 400_000;

/// One basis vector of 𝔄_n, with its representative path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElem {
    /// Source vertex.
    pub start: VertexId,
    /// Target vertex.
    pub end: VertexId,
    /// Representative word (empty for idempotents).
    pub word: Vec<EdgeId>,
}

impl BasisElem {
    /// The representative as a path.
    pub fn path(&self) -> Path {
        Path::from_raw(self.word.clone(), self.start, self.end)
    }
}

#[derive(Clone, Debug)]
struct Level<E> {
    basis: Vec<BasisElem>,
    col_of: HashMap<(EdgeId, usize), usize>,
    /// Normal form (in basis coordinates of this level) of each W-column.
    left: Vec<SparseVec<E>>,
    relation_rank: usize,
    width: usize,
}

/// Graded truncation of 𝔄(T_R V, Φ) up to a fixed order.
#[derive(Clone, Debug)]
pub struct GradedQuotient<F: Field> {
    quiver: Arc<Quiver>,
    field: F,
    degree: i32,
    relations: Vec<Vec<(Vec<EdgeId>, F::Elem)>>,
    levels: Vec<Level<F::Elem>>,
}

/// Vector in a fixed degree of 𝔄, in basis coordinates.
pub type AVec<E> = SparseVec<E>;

impl<F: Field> GradedQuotient<F> {
    /// Build all degrees `0..=order` with the default size bound.
    pub fn new<K: Coeff>(phi: &CyclicPoly<K>, field: F, order: usize) -> Result<Self> {
        Self::with_bound(phi, field, order, DEFAULT_DIM_BOUND)
    }

    /// Build with an explicit bound on the working dimension per degree.
    pub fn with_bound<K: Coeff>(phi: &CyclicPoly<K>, field: F, order: usize, bound: usize) -> Result<Self> {
        let q = phi.quiver().clone();
        if !q.positively_graded() {
            return Err(Error::Domain("graded analysis needs positive edge degrees".into()));
        }
        let degree = if phi.is_zero() {
            0
        } else {
            phi.homogeneous_degree()
                .ok_or_else(|| Error::NotHomogeneous(format!("potential has degrees {:?}", phi.degrees())))?
        };
        let grads = gradient(phi)?;
        let mut relations = Vec::with_capacity(grads.len());
        for (x, g) in grads.iter().enumerate() {
            let mut terms = Vec::new();
            for (p, c) in g.terms() {
                if p.is_trivial() {
                    return Err(Error::Domain(format!(
                        "relation for `{}` has a constant term (edge degree equals potential degree)",
                        q.edge(x).name
                    )));
                }
                let e = field.from_coeff(c)?;
                if !field.is_zero(&e) {
                    terms.push((p.edges().to_vec(), e));
                }
            }
            relations.push(terms);
        }
        let mut gq = GradedQuotient { quiver: q, field, degree, relations, levels: Vec::new() };
        for n in 0..=order {
            gq.build_level(n, bound)?;
        }
        Ok(gq)
    }

    fn build_level(&mut self, n: usize, bound: usize) -> Result<()> {
        let q = self.quiver.clone();
        let f = self.field.clone();
        if n == 0 {
            let basis: Vec<BasisElem> =
                (0..q.num_vertices()).map(|v| BasisElem { start: v, end: v, word: Vec::new() }).collect();
            self.levels.push(Level { basis, col_of: HashMap::new(), left: Vec::new(), relation_rank: 0, width: 0 });
            return Ok(());
        }
        // Columns of W_n.
        let mut cols: Vec<(EdgeId, usize)> = Vec::new();
        for x in 0..q.num_edges() {
            let d = q.edge(x).deg as usize;
            if d > n {
                continue;
            }
            let lower = &self.levels[n - d];
            for (bi, b) in lower.basis.iter().enumerate() {
                if b.start == q.edge(x).tgt {
                    cols.push((x, bi));
                }
            }
        }
        if cols.len() > bound {
            return Err(Error::MemoryGuard { what: format!("degree {} of the quotient", n), dim: cols.len(), bound });
        }
        let col_of: HashMap<(EdgeId, usize), usize> = cols.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        // Relations r_x · c.
        let mut ech = Echelon::new(f.clone());
        for x in 0..q.num_edges() {
            if self.relations[x].is_empty() {
                continue;
            }
            let rdeg = self.degree - q.edge(x).deg;
            if rdeg as usize > n || rdeg <= 0 {
                continue;
            }
            let clevel = n - rdeg as usize;
            let src = q.edge(x).src;
            for ci in 0..self.levels[clevel].basis.len() {
                if self.levels[clevel].basis[ci].start != src {
                    continue;
                }
                let mut row: Vec<(usize, F::Elem)> = Vec::new();
                for (word, coef) in &self.relations[x] {
                    let mut v = SparseVec::unit(&f, ci);
                    let mut lvl = clevel;
                    for &y in word[1..].iter().rev() {
                        v = self.apply_edge_at(y, &v, lvl)?;
                        lvl += q.edge(y).deg as usize;
                    }
                    let y = word[0];
                    for (b, val) in v.entries() {
                        if let Some(&c) = col_of.get(&(y, *b)) {
                            row.push((c, f.mul(coef, val)));
                        }
                    }
                }
                let rv = SparseVec::from_pairs(&f, row);
                if !rv.is_zero() {
                    ech.insert(&rv);
                }
            }
        }
        // Basis = non-pivot columns.
        let mut basis = Vec::new();
        let mut basis_of_col = vec![usize::MAX; cols.len()];
        for (c, &(x, bi)) in cols.iter().enumerate() {
            if !ech.is_pivot(c) {
                let b = &self.levels[n - q.edge(x).deg as usize].basis[bi];
                let mut word = Vec::with_capacity(b.word.len() + 1);
                word.push(x);
                word.extend_from_slice(&b.word);
                basis_of_col[c] = basis.len();
                basis.push(BasisElem { start: q.edge(x).src, end: b.end, word });
            }
        }
        let mut left = Vec::with_capacity(cols.len());
        for c in 0..cols.len() {
            if basis_of_col[c] != usize::MAX {
                left.push(SparseVec::unit(&f, basis_of_col[c]));
            } else {
                let r = ech.reduce(&SparseVec::unit(&f, c));
                let pairs: Vec<(usize, F::Elem)> =
                    r.entries().iter().map(|(k, v)| (basis_of_col[*k], v.clone())).collect();
                debug_assert!(pairs.iter().all(|(k, _)| *k != usize::MAX));
                left.push(SparseVec::from_pairs(&f, pairs));
            }
        }
        let rank = ech.rank();
        self.levels.push(Level { basis, col_of, left, relation_rank: rank, width: cols.len() });
        Ok(())
    }

    fn apply_edge_at(&self, x: EdgeId, v: &AVec<F::Elem>, level: usize) -> Result<AVec<F::Elem>> {
        let target = level + self.quiver.edge(x).deg as usize;
        let lv = self
            .levels
            .get(target)
            .ok_or_else(|| Error::Domain(format!("degree {} beyond the truncation order", target)))?;
        let f = &self.field;
        let mut acc = SparseVec::new();
        for (b, val) in v.entries() {
            if let Some(&c) = lv.col_of.get(&(x, *b)) {
                acc = acc.axpy(f, val, &lv.left[c]);
            }
        }
        Ok(acc)
    }

    /// Left multiplication by an edge: 𝔄_level → 𝔄_{level + deg x}.
    pub fn left_mul_edge(&self, x: EdgeId, v: &AVec<F::Elem>, level: usize) -> Result<AVec<F::Elem>> {
        self.apply_edge_at(x, v, level)
    }

    /// Left multiplication by a word (applied right to left).
    pub fn left_mul_word(&self, word: &[EdgeId], v: &AVec<F::Elem>, level: usize) -> Result<AVec<F::Elem>> {
        let mut cur = v.clone();
        let mut lvl = level;
        for &y in word.iter().rev() {
            cur = self.apply_edge_at(y, &cur, lvl)?;
            lvl += self.quiver.edge(y).deg as usize;
        }
        Ok(cur)
    }

    /// Normal form of a path; `None` if its degree exceeds the order.
    pub fn reduce_path(&self, p: &Path) -> Result<AVec<F::Elem>> {
        let unit = SparseVec::unit(&self.field, p.end());
        self.left_mul_word(p.edges(), &unit, 0)
    }

    /// Normal form of a homogeneous polynomial of degree `level`.
    pub fn reduce_poly<K: Coeff>(&self, a: &NCPoly<K>) -> Result<(usize, AVec<F::Elem>)> {
        let d = match a.homogeneous_degree() {
            Some(d) => d as usize,
            None if a.is_zero() => return Ok((0, SparseVec::new())),
            None => return Err(Error::NotHomogeneous(a.render())),
        };
        let f = &self.field;
        let mut acc = SparseVec::new();
        for (p, c) in a.terms() {
            acc = acc.axpy(f, &f.from_coeff(c)?, &self.reduce_path(p)?);
        }
        Ok((d, acc))
    }

    /// Product of `a` (degree `da`) and `b` (degree `db`).
    pub fn multiply(&self, a: &AVec<F::Elem>, da: usize, b: &AVec<F::Elem>, db: usize) -> Result<AVec<F::Elem>> {
        let f = &self.field;
        let mut acc = SparseVec::new();
        for (i, ai) in a.entries() {
            let w = &self.levels[da].basis[*i];
            let prod = self.left_mul_word(&w.word, &self.restrict_start(b, db, w.end), db)?;
            acc = acc.axpy(f, ai, &prod);
        }
        Ok(acc)
    }

    fn restrict_start(&self, b: &AVec<F::Elem>, db: usize, v: VertexId) -> AVec<F::Elem> {
        let basis = &self.levels[db].basis;
        SparseVec::from_pairs(&self.field, b.entries().iter().filter(|(k, _)| basis[*k].start == v).cloned())
    }

    /// The quiver.
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }
    /// The field of ranks.
    pub fn field(&self) -> &F {
        &self.field
    }
    /// Degree m of the potential.
    pub fn potential_degree(&self) -> i32 {
        self.degree
    }
    /// Truncation order N.
    pub fn order(&self) -> usize {
        self.levels.len() - 1
    }
    /// Basis of 𝔄_n.
    pub fn basis(&self, n: usize) -> &[BasisElem] {
        &self.levels[n].basis
    }
    /// dim 𝔄_n.
    pub fn dim(&self, n: usize) -> usize {
        self.levels[n].basis.len()
    }
    /// Rank of the relation span inside W_n and the width of W_n.
    pub fn relation_rank(&self, n: usize) -> (usize, usize) {
        (self.levels[n].relation_rank, self.levels[n].width)
    }
    /// dim 1_i 𝔄_n 1_j.
    pub fn corner_dim(&self, n: usize, i: VertexId, j: VertexId) -> usize {
        self.levels[n].basis.iter().filter(|b| b.start == i && b.end == j).count()
    }
    /// The matrix Hilbert series h(𝔄;t) to the truncation order.
    pub fn hilbert_series(&self) -> MatrixSeries {
        let nv = self.quiver.num_vertices();
        let order = self.order();
        let mut m = MatrixSeries::zero(nv, order);
        for n in 0..=order {
            for b in &self.levels[n].basis {
                let s = m.entry_mut(b.start, b.end);
                let c = s.coeff(n) + crate::scalar::qi(1);
                let mut cs = s.coeffs().to_vec();
                cs[n] = c;
                *s = Series::from_coeffs(order, &cs);
            }
        }
        m
    }
}

/// Enumerate all paths of degree exactly `n` from each vertex, as edge words.
pub(crate) fn paths_of_degree(q: &Quiver, n: usize) -> Vec<Path> {
    let mut by_deg: Vec<Vec<Path>> = vec![(0..q.num_vertices()).map(Path::trivial).collect()];
    for d in 1..=n {
        let mut cur = Vec::new();
        for x in 0..q.num_edges() {
            let dx = q.edge(x).deg as usize;
            if dx == 0 || dx > d {
                continue;
            }
            let e = Path::edge(q, x);
            for p in &by_deg[d - dx] {
                if let Some(ep) = e.concat(p) {
                    cur.push(ep);
                }
            }
        }
        by_deg.push(cur);
    }
    by_deg.pop().unwrap()
}

/// Brute-force oracle: dim 1_i 𝔄_n 1_j from the rank of the span of all
/// products u·(∂Φ/∂x)·v inside the degree-n paths.  Independent of the
/// recursive construction; refuses when the number of paths exceeds `bound`.
pub fn graded_dims_direct<K: Coeff, F: Field>(
    phi: &CyclicPoly<K>,
    field: &F,
    order: usize,
    bound: usize,
) -> Result<MatrixSeries> {
    let q = phi.quiver().clone();
    if !q.positively_graded() {
        return Err(Error::Domain("graded analysis needs positive edge degrees".into()));
    }
    let m = match phi.homogeneous_degree() {
        Some(m) => m as usize,
        None if phi.is_zero() => 0,
        None => return Err(Error::NotHomogeneous(format!("degrees {:?}", phi.degrees()))),
    };
    let grads = gradient(phi)?;
    let nv = q.num_vertices();
    let mut out = MatrixSeries::zero(nv, order);
    let mut words: Vec<Vec<Path>> = Vec::new();
    for n in 0..=order {
        words.push(paths_of_degree(&q, n));
    }
    for n in 0..=order {
        let ws = &words[n];
        if ws.len() > bound {
            return Err(Error::MemoryGuard { what: format!("degree {} paths", n), dim: ws.len(), bound });
        }
        let index: HashMap<&Path, usize> = ws.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut ech = Echelon::new(field.clone());
        for (x, r) in grads.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let rdeg = m as i64 - q.edge(x).deg as i64;
            if rdeg <= 0 || rdeg as usize > n {
                continue;
            }
            let rest = n - rdeg as usize;
            for a in 0..=rest {
                for u in &words[a] {
                    if u.end() != q.edge(x).tgt {
                        continue;
                    }
                    for v in &words[rest - a] {
                        if v.start() != q.edge(x).src {
                            continue;
                        }
                        let mut row = Vec::new();
                        for (p, c) in r.terms() {
                            let w = u.concat(p).and_then(|up| up.concat(v)).expect("composable by construction");
                            row.push((index[&w], field.from_coeff(c)?));
                        }
                        let rv = SparseVec::from_pairs(field, row);
                        ech.insert(&rv);
                    }
                }
            }
        }
        // Dimension per corner: paths minus pivots in that corner.
        let mut counts = vec![vec![0i64; nv]; nv];
        for p in ws {
            counts[p.start()][p.end()] += 1;
        }
        for c in ech.pivots() {
            counts[ws[c].start()][ws[c].end()] -= 1;
        }
        for i in 0..nv {
            for j in 0..nv {
                let s = out.entry_mut(i, j);
                let mut cs = s.coeffs().to_vec();
                cs[n] = crate::scalar::qi(counts[i][j]);
                *s = Series::from_coeffs(order, &cs);
            }
        }
    }
    Ok(out)
}
