//! The extended cotangent complex of 𝔄 in graded truncation:
//!
//! 0 → ⊕_i 𝔄1_i⊗1_i𝔄 --j--> ⊕_x 𝔄⊗x*⊗𝔄 --hess--> ⊕_x 𝔄⊗dx⊗𝔄 --j∨--> 𝔄⊗_R𝔄 --mult--> 𝔄 → 0
//!
//! with generators in degrees m, m − deg x, deg x, 0.  The maps are
//! bimodule maps determined on generators:
//! * j(e_i) = Σ_{src x = i} x⊗x*⊗1 − Σ_{tgt x = i} 1⊗x*⊗x,
//! * hess(x*) = Σ_y (∂²Φ/∂y∂x)′ ⊗ dy ⊗ (∂²Φ/∂y∂x)″ (∂/∂x applied first),
//! * j∨(dx) = x⊗1 − 1⊗x,
//! * mult(a⊗b) = ab.

use std::collections::HashMap;

use crate::calculus::{cyclic_derive, double_derive_path};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Field, SparseVec};
use crate::path::Path;
use crate::poly::CyclicPoly;
use crate::quiver::{EdgeId, VertexId};
use crate::scalar::Coeff;

use super::quotient::GradedQuotient;

/// A free-bimodule generator of one of the four terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Gen {
    /// e_i in the top term.
    Vertex(VertexId),
    /// x* in the Hessian source.
    Dual(EdgeId),
    /// dx in the 1-forms.
    Form(EdgeId),
    /// 1_i ⊗ 1_i in 𝔄⊗_R𝔄.
    Unit(VertexId),
}

/// Basis of one term in one degree: (generator, left basis elt, right basis elt).
struct Term {
    basis: Vec<(Gen, (usize, usize), (usize, usize))>,
    index: HashMap<(Gen, (usize, usize), (usize, usize)), usize>,
}

/// Per-degree result of the cotangent-complex check.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeReport {
    /// Degree n.
    pub degree: usize,
    /// Dimensions of the terms [P3, P2, P1, P0, 𝔄] in degree n.
    pub dims: [usize; 5],
    /// Ranks of [j, hess, j∨, mult].
    pub ranks: [usize; 4],
    /// Whether every consecutive composite vanished.
    pub composites_vanish: bool,
    /// Whether the complex is exact in this degree.
    pub exact: bool,
    /// Whether the alternating sum of dimensions vanishes.
    pub euler_ok: bool,
}

/// Outcome of [`cotangent_complex_check`].
#[derive(Clone, Debug)]
pub struct CotangentReport {
    /// One entry per degree 0..=N.
    pub degrees: Vec<DegreeReport>,
    /// Set when N < m (nothing beyond the quadratic part is tested).
    pub warning: Option<String>,
}

impl CotangentReport {
    /// Composites vanish in every degree.
    pub fn is_complex(&self) -> bool {
        self.degrees.iter().all(|d| d.composites_vanish)
    }
    /// Exact in every degree.
    pub fn is_exact(&self) -> bool {
        self.degrees.iter().all(|d| d.exact)
    }
    /// Euler characteristic vanishes in every degree.
    pub fn euler_ok(&self) -> bool {
        self.degrees.iter().all(|d| d.euler_ok)
    }
    /// First degree where exactness fails.
    pub fn first_inexact_degree(&self) -> Option<usize> {
        self.degrees.iter().find(|d| !d.exact).map(|d| d.degree)
    }
}

struct Ctx<'a, F: Field> {
    gq: &'a GradedQuotient<F>,
    m: usize,
    hess: Vec<Vec<(EdgeId, Path, Path, F::Elem)>>,
}

impl<'a, F: Field> Ctx<'a, F> {
    fn gen_deg(&self, g: Gen) -> Option<usize> {
        let q = self.gq.quiver();
        match g {
            Gen::Vertex(_) => Some(self.m),
            Gen::Dual(x) => (self.m as i32 - q.edge(x).deg).try_into().ok(),
            Gen::Form(x) => Some(q.edge(x).deg as usize),
            Gen::Unit(_) => Some(0),
        }
    }
    /// (vertex where the left factor must end, vertex where the right factor must start)
    fn gen_ends(&self, g: Gen) -> (VertexId, VertexId) {
        let q = self.gq.quiver();
        match g {
            Gen::Vertex(i) | Gen::Unit(i) => (i, i),
            Gen::Dual(x) => (q.edge(x).tgt, q.edge(x).src),
            Gen::Form(x) => (q.edge(x).src, q.edge(x).tgt),
        }
    }
    fn term(&self, gens: &[Gen], n: usize) -> Term {
        let mut basis = Vec::new();
        for &g in gens {
            let Some(gd) = self.gen_deg(g) else { continue };
            if gd > n {
                continue;
            }
            let (l, r) = self.gen_ends(g);
            for p in 0..=(n - gd) {
                let qd = n - gd - p;
                for (ia, a) in self.gq.basis(p).iter().enumerate() {
                    if a.end != l {
                        continue;
                    }
                    for (ib, b) in self.gq.basis(qd).iter().enumerate() {
                        if b.start == r {
                            basis.push((g, (p, ia), (qd, ib)));
                        }
                    }
                }
            }
        }
        let index = basis.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        Term { basis, index }
    }
    /// Normal form of rep(a)·u (a given as (degree, index)).
    fn left_times(&self, a: (usize, usize), u: &Path) -> Result<(usize, SparseVec<F::Elem>)> {
        let q = self.gq.quiver();
        let ap = self.gq.basis(a.0)[a.1].path();
        let w = ap.concat(u).ok_or_else(|| Error::Internal("non-composable left product".into()))?;
        Ok((a.0 + u.degree(q) as usize, self.gq.reduce_path(&w)?))
    }
    /// Normal form of v·rep(b).
    fn right_times(&self, v: &Path, b: (usize, usize)) -> Result<(usize, SparseVec<F::Elem>)> {
        let q = self.gq.quiver();
        let bp = self.gq.basis(b.0)[b.1].path();
        let w = v.concat(&bp).ok_or_else(|| Error::Internal("non-composable right product".into()))?;
        Ok((b.0 + v.degree(q) as usize, self.gq.reduce_path(&w)?))
    }
    /// Add c · (left vec) ⊗ g ⊗ (right vec) into `out`, indexed by `target`.
    #[allow(clippy::too_many_arguments)]
    fn push_tensor(
        &self,
        out: &mut Vec<(usize, F::Elem)>,
        target: &Term,
        g: Gen,
        c: &F::Elem,
        l: &(usize, SparseVec<F::Elem>),
        r: &(usize, SparseVec<F::Elem>),
    ) -> Result<()> {
        let f = self.gq.field();
        for (il, vl) in l.1.entries() {
            for (ir, vr) in r.1.entries() {
                let key = (g, (l.0, *il), (r.0, *ir));
                let idx = *target
                    .index
                    .get(&key)
                    .ok_or_else(|| Error::Internal(format!("tensor {:?} outside the target term", key)))?;
                out.push((idx, f.mul(c, &f.mul(vl, vr))));
            }
        }
        Ok(())
    }
    fn image(&self, elt: &(Gen, (usize, usize), (usize, usize)), target: &Term) -> Result<SparseVec<F::Elem>> {
        let q = self.gq.quiver();
        let f = self.gq.field();
        let (g, a, b) = *elt;
        let mut out = Vec::new();
        let one = f.one();
        let mone = f.neg(&one);
        match g {
            Gen::Vertex(i) => {
                for x in 0..q.num_edges() {
                    let e = q.edge(x);
                    let xp = Path::edge(q, x);
                    if e.src == i {
                        let l = self.left_times(a, &xp)?;
                        let r = self.right_times(&Path::trivial(e.src), b)?;
                        self.push_tensor(&mut out, target, Gen::Dual(x), &one, &l, &r)?;
                    }
                    if e.tgt == i {
                        let l = self.left_times(a, &Path::trivial(e.tgt))?;
                        let r = self.right_times(&xp, b)?;
                        self.push_tensor(&mut out, target, Gen::Dual(x), &mone, &l, &r)?;
                    }
                }
            }
            Gen::Dual(x) => {
                for (y, u, v, c) in &self.hess[x] {
                    let l = self.left_times(a, u)?;
                    let r = self.right_times(v, b)?;
                    self.push_tensor(&mut out, target, Gen::Form(*y), c, &l, &r)?;
                }
            }
            Gen::Form(x) => {
                let e = q.edge(x);
                let xp = Path::edge(q, x);
                let l = self.left_times(a, &xp)?;
                let r = self.right_times(&Path::trivial(e.tgt), b)?;
                self.push_tensor(&mut out, target, Gen::Unit(e.tgt), &one, &l, &r)?;
                let l = self.left_times(a, &Path::trivial(e.src))?;
                let r = self.right_times(&xp, b)?;
                self.push_tensor(&mut out, target, Gen::Unit(e.src), &mone, &l, &r)?;
            }
            Gen::Unit(_) => {
                let (da, va) = (a.0, SparseVec::unit(f, a.1));
                let (db, vb) = (b.0, SparseVec::unit(f, b.1));
                let prod = self.gq.multiply(&va, da, &vb, db)?;
                out.extend(prod.entries().iter().cloned());
            }
        }
        Ok(SparseVec::from_pairs(f, out))
    }
}

/// Apply a map given by images of basis vectors to a vector.
fn apply<F: Field>(f: &F, images: &[SparseVec<F::Elem>], v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let mut acc = SparseVec::new();
    for (i, c) in v.entries() {
        acc = acc.axpy(f, c, &images[*i]);
    }
    acc
}

/// Build the complex degreewise up to `order` (bounded by the quotient's
/// order) and check composites, exactness and the Euler characteristic.
pub fn cotangent_complex_check<K: Coeff, F: Field>(
    phi: &CyclicPoly<K>,
    gq: &GradedQuotient<F>,
    order: usize,
) -> Result<CotangentReport> {
    let q = gq.quiver().clone();
    let m = gq.potential_degree();
    if m <= 0 {
        return Err(Error::Domain("cotangent complex needs a nonzero homogeneous potential".into()));
    }
    if order > gq.order() {
        return Err(Error::Domain(format!(
            "quotient built to order {} but complex requested to {}",
            gq.order(),
            order
        )));
    }
    let f = gq.field();
    let mut hess = Vec::with_capacity(q.num_edges());
    for x in 0..q.num_edges() {
        let dx = cyclic_derive(phi, x)?;
        let mut entries = Vec::new();
        for y in 0..q.num_edges() {
            for (p, c) in dx.terms() {
                for (u, v) in double_derive_path(&q, p, y) {
                    entries.push((y, u, v, f.from_coeff(c)?));
                }
            }
        }
        hess.push(entries);
    }
    let ctx = Ctx { gq, m: m as usize, hess };
    let nv = q.num_vertices();
    let ne = q.num_edges();
    let g3: Vec<Gen> = (0..nv).map(Gen::Vertex).collect();
    let g2: Vec<Gen> = (0..ne).map(Gen::Dual).collect();
    let g1: Vec<Gen> = (0..ne).map(Gen::Form).collect();
    let g0: Vec<Gen> = (0..nv).map(Gen::Unit).collect();
    let mut degrees = Vec::new();
    for n in 0..=order {
        let t3 = ctx.term(&g3, n);
        let t2 = ctx.term(&g2, n);
        let t1 = ctx.term(&g1, n);
        let t0 = ctx.term(&g0, n);
        let dim_a = gq.dim(n);
        // Target of mult is 𝔄_n itself; index by basis position.
        let ta = Term { basis: Vec::new(), index: HashMap::new() };
        let im3: Vec<_> = t3.basis.iter().map(|e| ctx.image(e, &t2)).collect::<Result<_>>()?;
        let im2: Vec<_> = t2.basis.iter().map(|e| ctx.image(e, &t1)).collect::<Result<_>>()?;
        let im1: Vec<_> = t1.basis.iter().map(|e| ctx.image(e, &t0)).collect::<Result<_>>()?;
        let im0: Vec<_> = t0.basis.iter().map(|e| ctx.image(e, &ta)).collect::<Result<_>>()?;
        let vanish = im3.iter().all(|v| apply(f, &im2, v).is_zero())
            && im2.iter().all(|v| apply(f, &im1, v).is_zero())
            && im1.iter().all(|v| apply(f, &im0, v).is_zero());
        let rk = |rows: &[SparseVec<F::Elem>]| {
            let mut e = Echelon::new(f.clone());
            for r in rows {
                e.insert(r);
            }
            e.rank()
        };
        let ranks = [rk(&im3), rk(&im2), rk(&im1), rk(&im0)];
        let dims = [t3.basis.len(), t2.basis.len(), t1.basis.len(), t0.basis.len(), dim_a];
        let exact = ranks[0] == dims[0]
            && dims[1] - ranks[1] == ranks[0]
            && dims[2] - ranks[2] == ranks[1]
            && dims[3] - ranks[3] == ranks[2]
            && ranks[3] == dims[4];
        let euler = dims[0] as i64 - dims[1] as i64 + dims[2] as i64 - dims[3] as i64 + dims[4] as i64;
        degrees.push(DegreeReport {
            degree: n,
            dims,
            ranks,
            composites_vanish: vanish,
            exact,
            euler_ok: euler == 0,
        });
    }
    let warning = (order < m as usize).then(|| {
        format!("truncation order {} is below the potential degree {}: the top term is never tested", order, m)
    });
    Ok(CotangentReport { degrees, warning })
}
