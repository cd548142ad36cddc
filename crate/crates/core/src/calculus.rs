//! Noncommutative calculus on potentials: cyclic derivatives, double and
//! higher derivatives, the Hessian, the Euler identity and Poincaré
//! integration of closed 1-forms.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::path::Path;
use crate::poly::{CyclicPoly, NCPoly, TensorPoly};
use crate::quiver::{EdgeId, Quiver};
use crate::scalar::Coeff;

fn check_edge(q: &Quiver, x: EdgeId) -> Result<()> {
    if x >= q.num_edges() {
        return Err(Error::UnknownEdge(format!("#{}", x)));
    }
    Ok(())
}

/// Cyclic derivative ∂Φ/∂x: for each occurrence of `x` in each cycle, delete
/// it and read the cycle starting just after it.  The result is a
/// combination of paths from `target(x)` to `source(x)`.
pub fn cyclic_derive<K: Coeff>(phi: &CyclicPoly<K>, x: EdgeId) -> Result<NCPoly<K>> {
    let q = phi.quiver();
    check_edge(q, x)?;
    let mut out = NCPoly::zero(q);
    for (cy, c) in phi.terms() {
        let w = cy.edges();
        let n = w.len();
        for (s, &e) in w.iter().enumerate() {
            if e != x {
                continue;
            }
            let rest: Vec<EdgeId> = (1..n).map(|k| w[(s + k) % n]).collect();
            let ed = q.edge(x);
            out.add_term(Path::from_raw(rest, ed.tgt, ed.src), c.clone());
        }
    }
    Ok(out)
}

/// Reduced contraction ı_θ(dΦ) of the exact form dΦ against the coordinate
/// double derivation of `x`; identical to [`cyclic_derive`].
pub fn contract_exact<K: Coeff>(phi: &CyclicPoly<K>, x: EdgeId) -> Result<NCPoly<K>> {
    cyclic_derive(phi, x)
}

/// Double derivative of one path: `a x b ↦ a ⊗ b` summed over occurrences.
pub(crate) fn double_derive_path(q: &Quiver, p: &Path, x: EdgeId) -> Vec<(Path, Path)> {
    let mut out = Vec::new();
    for (s, &e) in p.edges().iter().enumerate() {
        if e == x {
            out.push((p.slice(q, 0, s), p.slice(q, s + 1, p.len())));
        }
    }
    out
}

/// Double derivative F → F⊗F, `a x b ↦ a ⊗ b`.
pub fn double_derive<K: Coeff>(a: &NCPoly<K>, x: EdgeId) -> Result<TensorPoly<K>> {
    let q = a.quiver();
    check_edge(q, x)?;
    let mut out = TensorPoly::zero(q, 2);
    for (p, c) in a.terms() {
        for (l, r) in double_derive_path(q, p, x) {
            out.add_term(vec![l, r], c.clone());
        }
    }
    Ok(out)
}

/// The map ∂/∂x : F^{⊗r} → F^{⊗(r+1)}, applying the double derivative to the
/// first tensor factor.
pub fn derive_first_factor<K: Coeff>(t: &TensorPoly<K>, x: EdgeId) -> Result<TensorPoly<K>> {
    let q = t.quiver();
    check_edge(q, x)?;
    let mut out = TensorPoly::zero(q, t.rank() + 1);
    for (fs, c) in t.terms() {
        for (l, r) in double_derive_path(q, &fs[0], x) {
            let mut nf = Vec::with_capacity(fs.len() + 1);
            nf.push(l);
            nf.push(r);
            nf.extend(fs[1..].iter().cloned());
            out.add_term(nf, c.clone());
        }
    }
    Ok(out)
}

/// Higher derivative ∂ʳΦ/∂x_{i₁}…∂x_{i_r}: the rightmost index is applied
/// first (cyclically), each further index acts on the first tensor factor.
pub fn higher_derive<K: Coeff>(phi: &CyclicPoly<K>, xs: &[EdgeId]) -> Result<TensorPoly<K>> {
    let (&last, rest) = xs
        .split_last()
        .ok_or_else(|| Error::Domain("higher_derive needs at least one edge".into()))?;
    let mut t = TensorPoly::from_poly(&cyclic_derive(phi, last)?);
    for &x in rest.iter().rev() {
        t = derive_first_factor(&t, x)?;
    }
    Ok(t)
}

/// The noncommutative Hessian ‖∂²Φ/∂x_i∂x_j‖, indexed by edge ids.
#[derive(Clone, Debug)]
pub struct Hessian<K: Coeff> {
    quiver: Arc<Quiver>,
    entries: Vec<Vec<TensorPoly<K>>>,
}

impl<K: Coeff> Hessian<K> {
    /// Entry `(i, j)`: Φ under ∂/∂x_j, then ∂/∂x_i.
    pub fn entry(&self, i: EdgeId, j: EdgeId) -> &TensorPoly<K> {
        &self.entries[i][j]
    }
    /// Size (number of edges).
    pub fn size(&self) -> usize {
        self.entries.len()
    }
    /// The quiver.
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }
    /// Check flip(H_ij) = H_ji for all entries; returns offending pairs.
    pub fn symmetry_violations(&self) -> Vec<(EdgeId, EdgeId)> {
        let n = self.size();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.entries[i][j].flip() != self.entries[j][i] {
                    bad.push((i, j));
                }
            }
        }
        bad
    }
}

/// Full Hessian of a potential.
pub fn hessian<K: Coeff>(phi: &CyclicPoly<K>) -> Result<Hessian<K>> {
    let q = phi.quiver();
    let n = q.num_edges();
    let firsts = (0..n).map(|j| cyclic_derive(phi, j)).collect::<Result<Vec<_>>>()?;
    let mut entries = Vec::with_capacity(n);
    for i in 0..n {
        let row = firsts.iter().map(|f| double_derive(f, i)).collect::<Result<Vec<_>>>()?;
        entries.push(row);
    }
    Ok(Hessian { quiver: q.clone(), entries })
}

/// `project_cyclic(Σ_x deg(x) · x · ∂Φ/∂x)` without any check.
pub fn euler_sum<K: Coeff>(phi: &CyclicPoly<K>) -> Result<CyclicPoly<K>> {
    let q = phi.quiver();
    let mut acc = NCPoly::zero(q);
    for x in 0..q.num_edges() {
        let d = cyclic_derive(phi, x)?;
        if d.is_zero() {
            continue;
        }
        let w = K::from_rational(&crate::scalar::qi(q.edge(x).deg as i64));
        acc.add_scaled(&NCPoly::edge(q, x).multiply(&d)?, &w);
    }
    Ok(CyclicPoly::project(&acc))
}

/// Euler identity: returns `project_cyclic(Σ_x deg(x)·x·∂Φ/∂x)` after checking
/// it equals `r·Φ` for Φ homogeneous of (weighted) degree `r`.
pub fn euler_scale<K: Coeff>(phi: &CyclicPoly<K>) -> Result<CyclicPoly<K>> {
    if phi.is_zero() {
        return Ok(phi.clone());
    }
    let r = phi
        .homogeneous_degree()
        .ok_or_else(|| Error::NotHomogeneous(format!("degrees {:?}", phi.degrees())))?;
    let e = euler_sum(phi)?;
    let expect = phi.scale(&K::from_rational(&crate::scalar::qi(r as i64)));
    if e != expect {
        return Err(Error::Internal(format!(
            "Euler identity failed: got {}, expected {}",
            e.render(),
            expect.render()
        )));
    }
    Ok(e)
}

/// Σ_x [x, f_x] for an edge-indexed family (the closedness obstruction).
pub fn commutator_sum<K: Coeff>(q: &Arc<Quiver>, fs: &[NCPoly<K>]) -> Result<NCPoly<K>> {
    if fs.len() != q.num_edges() {
        return Err(Error::Shape(format!("{} components for {} edges", fs.len(), q.num_edges())));
    }
    let mut acc = NCPoly::zero(q);
    for (x, f) in fs.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let xe = NCPoly::edge(q, x);
        acc = acc + xe.commutator(f)?;
    }
    Ok(acc)
}

/// Outcome of a failed Poincaré verification: per-edge residuals.
#[derive(Clone, Debug)]
pub struct PoincareResidual<K: Coeff> {
    /// `∂Φ/∂x − f_x` for each edge.
    pub residuals: Vec<NCPoly<K>>,
}

/// Constructive Poincaré lemma: given a closed family `f_x` with each `f_x`
/// homogeneous of degree `r − deg x`, return Φ = (1/r)·project(Σ deg(x)·x·f_x)
/// and verify ∂Φ/∂x = f_x.
pub fn poincare_integrate<K: Coeff>(q: &Arc<Quiver>, fs: &[NCPoly<K>], r: i32) -> Result<CyclicPoly<K>> {
    if r <= 0 {
        return Err(Error::Domain("integration degree must be positive".into()));
    }
    if fs.len() != q.num_edges() {
        return Err(Error::Shape(format!("{} components for {} edges", fs.len(), q.num_edges())));
    }
    for (x, f) in fs.iter().enumerate() {
        let ed = q.edge(x);
        for (p, _) in f.terms() {
            if p.degree(q) != r - ed.deg {
                return Err(Error::NotHomogeneous(format!(
                    "component for `{}` has a term of degree {} (expected {})",
                    ed.name,
                    p.degree(q),
                    r - ed.deg
                )));
            }
            if p.start() != ed.tgt || p.end() != ed.src {
                return Err(Error::Domain(format!(
                    "component for `{}` must run from its target to its source",
                    ed.name
                )));
            }
        }
    }
    let obstruction = commutator_sum(q, fs)?;
    if !obstruction.is_zero() {
        return Err(Error::NotClosed(obstruction.render()));
    }
    let mut acc = NCPoly::zero(q);
    for (x, f) in fs.iter().enumerate() {
        let w = K::from_rational(&crate::scalar::qi(q.edge(x).deg as i64));
        acc.add_scaled(&NCPoly::edge(q, x).multiply(f)?, &w);
    }
    let phi = CyclicPoly::project(&acc).scale(&K::from_rational(&crate::scalar::q(1, r as i64)));
    let residuals: Vec<NCPoly<K>> = fs
        .iter()
        .enumerate()
        .map(|(x, f)| Ok(cyclic_derive(&phi, x)? - f.clone()))
        .collect::<Result<_>>()?;
    if residuals.iter().any(|r| !r.is_zero()) {
        let msg: Vec<String> = residuals
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_zero())
            .map(|(x, r)| format!("{}: {}", q.edge(x).name, r.render()))
            .collect();
        return Err(Error::Internal(format!("Poincaré verification failed: {}", msg.join("; "))));
    }
    Ok(phi)
}

/// All first derivatives ∂Φ/∂x, indexed by edge id.
pub fn gradient<K: Coeff>(phi: &CyclicPoly<K>) -> Result<Vec<NCPoly<K>>> {
    (0..phi.quiver().num_edges()).map(|x| cyclic_derive(phi, x)).collect()
}
