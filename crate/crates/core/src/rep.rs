//! Representation spaces: evaluation of path-algebra elements on matrix
//! tuples, trace functions of cyclic elements, their gradients, and
//! residuals measuring how far a point is from the critical locus.
//!
//! Paths compose left to right, so an edge x: i → j is represented by a
//! d(i) × d(j) matrix and a path x·y by the product X·Y.  The gradient of
//! Tr Φ along edge x is G_x = ρ(∂Φ/∂x), a d(j) × d(i) matrix, with
//! d/ds Tr Φ(ρ + s·E) = Tr(G_x·E).

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::Rng;

use crate::calculus::cyclic_derive;
use crate::error::{Error, Result};
use crate::io::{matrix_to_json, RepJson, SCHEMA};
use crate::path::{Cycle, Path};
use crate::poly::{CyclicPoly, NCPoly};
use crate::quiver::{Quiver, VertexId};
use crate::scalar::Coeff;

/// Default residual threshold for deciding that a point is critical.
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-8;
/// Default finite-difference step.
pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// A dense row-major matrix over a coefficient type.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<K: Coeff> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Coeff> Mat<K> {
    /// The zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![K::zero(); rows * cols] }
    }
    /// The identity.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = K::one();
        }
        m
    }
    /// From rows (all of equal length).
    pub fn from_rows(rows: Vec<Vec<K>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }
    /// Build from an entry function.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }
    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }
    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }
    /// Entry (i, j).
    pub fn get(&self, i: usize, j: usize) -> &K {
        &self.data[i * self.cols + j]
    }
    /// Mutable entry (i, j).
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut K {
        &mut self.data[i * self.cols + j]
    }
    /// Matrix product.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Shape(format!("{}×{} times {}×{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut r = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = r.get(i, j).clone() + a.clone() * o.get(k, j).clone();
                    *r.get_mut(i, j) = v;
                }
            }
        }
        Ok(r)
    }
    /// `self + c·o`.
    pub fn axpy(&self, c: &K, o: &Self) -> Result<Self> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Shape("matrix sum of different shapes".into()));
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + c.clone() * b.clone()).collect(),
        })
    }
    /// `c·self`.
    pub fn scale(&self, c: &K) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.clone() * c.clone()).collect() }
    }
    /// The trace.
    pub fn trace(&self) -> K {
        let mut t = K::zero();
        for i in 0..self.rows.min(self.cols) {
            t = t + self.get(i, i).clone();
        }
        t
    }
    /// Whether all entries vanish.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }
    /// Convert to a complex nalgebra matrix.
    pub fn to_complex(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).to_complex())
    }
    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            return 0.0;
        }
        let m = self.to_complex();
        m.singular_values().iter().cloned().fold(0.0, f64::max)
    }
    /// Map entries.
    pub fn map<L: Coeff>(&self, f: impl Fn(&K) -> L) -> Mat<L> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl Mat<Complex64> {
    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }
    /// From a complex nalgebra matrix.
    pub fn from_nalgebra(m: &DMatrix<Complex64>) -> Self {
        Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }
    /// The skew-hermitian part (M − M†)/2.
    pub fn skew_hermitian_part(&self) -> Self {
        self.axpy(&Complex64::new(-1.0, 0.0), &self.adjoint()).unwrap().scale(&Complex64::new(0.5, 0.0))
    }
    /// Frobenius norm squared.
    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// A point of Rep_d: a dimension vector and one matrix per edge
/// (d(src) × d(tgt) for an edge src → tgt).
#[derive(Clone, Debug, PartialEq)]
pub struct RepPoint<K: Coeff = Complex64> {
    quiver: Arc<Quiver>,
    dims: Vec<usize>,
    mats: Vec<Mat<K>>,
}

impl<K: Coeff> RepPoint<K> {
    /// Build and check shapes.
    pub fn new(q: &Arc<Quiver>, dims: Vec<usize>, mats: Vec<Mat<K>>) -> Result<Self> {
        if dims.len() != q.num_vertices() || mats.len() != q.num_edges() {
            return Err(Error::Shape("dimension vector or matrix list has the wrong length".into()));
        }
        if dims.contains(&0) {
            return Err(Error::Shape("dimensions must be positive".into()));
        }
        for (e, m) in q.edges().iter().zip(&mats) {
            if m.rows != dims[e.src] || m.cols != dims[e.tgt] {
                return Err(Error::Shape(format!(
                    "edge `{}` needs a {}×{} matrix, got {}×{}",
                    e.name, dims[e.src], dims[e.tgt], m.rows, m.cols
                )));
            }
        }
        Ok(RepPoint { quiver: q.clone(), dims, mats })
    }
    /// One-vertex case: an n-tuple of d × d matrices.
    pub fn tuple(q: &Arc<Quiver>, mats: Vec<Mat<K>>) -> Result<Self> {
        let d = mats.first().map_or(1, |m| m.rows);
        Self::new(q, vec![d], mats)
    }
    /// The quiver.
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }
    /// Dimension vector.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    /// Matrix of edge `e`.
    pub fn matrix(&self, e: usize) -> &Mat<K> {
        &self.mats[e]
    }
    /// All edge matrices.
    pub fn matrices(&self) -> &[Mat<K>] {
        &self.mats
    }
    /// Total dimension Σ d(i).
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
    fn offset(&self, v: VertexId) -> usize {
        self.dims[..v].iter().sum()
    }
    /// Matrix of a path (identity for a trivial path).
    pub fn path_matrix(&self, p: &Path) -> Mat<K> {
        let mut m = Mat::identity(self.dims[p.start()]);
        for &e in p.edges() {
            m = m.mul(&self.mats[e]).expect("shapes checked at construction");
        }
        m
    }
    /// The corner block 1_i·ρ(a)·1_j.
    pub fn evaluate_corner(&self, a: &NCPoly<K>, i: VertexId, j: VertexId) -> Result<Mat<K>> {
        self.check_quiver(a.quiver())?;
        let mut m = Mat::zeros(self.dims[i], self.dims[j]);
        for (p, c) in a.terms() {
            if p.start() == i && p.end() == j {
                m = m.axpy(c, &self.path_matrix(p))?;
            }
        }
        Ok(m)
    }
    /// The full block matrix ρ(a) of size Σd × Σd.
    pub fn evaluate(&self, a: &NCPoly<K>) -> Result<Mat<K>> {
        self.check_quiver(a.quiver())?;
        let n = self.total_dim();
        let mut m = Mat::<K>::zeros(n, n);
        for (p, c) in a.terms() {
            let b = self.path_matrix(p);
            let (r0, c0) = (self.offset(p.start()), self.offset(p.end()));
            for r in 0..b.rows {
                for s in 0..b.cols {
                    let v = m.get(r0 + r, c0 + s).clone() + c.clone() * b.get(r, s).clone();
                    *m.get_mut(r0 + r, c0 + s) = v;
                }
            }
        }
        Ok(m)
    }
    fn check_quiver(&self, q: &Arc<Quiver>) -> Result<()> {
        if crate::poly::same_quiver(q, &self.quiver) {
            Ok(())
        } else {
            Err(Error::QuiverMismatch)
        }
    }
    /// ρ + c·E edgewise.
    pub fn perturbed(&self, c: &K, dir: &[Mat<K>]) -> Result<Self> {
        let mats = self.mats.iter().zip(dir).map(|(m, e)| m.axpy(c, e)).collect::<Result<Vec<_>>>()?;
        RepPoint::new(&self.quiver, self.dims.clone(), mats)
    }
    /// Base change g·ρ·g⁻¹: ρ(x) ↦ g_src·ρ(x)·g_tgt⁻¹ (inverses supplied).
    pub fn conjugate(&self, g: &[Mat<K>], g_inv: &[Mat<K>]) -> Result<Self> {
        let q = &self.quiver;
        let mats = q
            .edges()
            .iter()
            .zip(&self.mats)
            .map(|(e, m)| g[e.src].mul(m)?.mul(&g_inv[e.tgt]))
            .collect::<Result<Vec<_>>>()?;
        RepPoint::new(q, self.dims.clone(), mats)
    }
}

impl RepPoint<Complex64> {
    /// A random point with Gaussian-like entries in [−1, 1] + i[−1, 1].
    pub fn random<R: Rng>(q: &Arc<Quiver>, dims: Vec<usize>, rng: &mut R) -> Result<Self> {
        let mats = q
            .edges()
            .iter()
            .map(|e| Mat::from_fn(dims[e.src], dims[e.tgt], |_, _| random_entry(rng)))
            .collect();
        RepPoint::new(q, dims, mats)
    }
    /// Parse a representation document.
    pub fn from_json(q: &Arc<Quiver>, j: &RepJson) -> Result<Self> {
        let mut dims = Vec::with_capacity(q.num_vertices());
        for v in q.vertices() {
            dims.push(*j.dims.get(v).ok_or_else(|| Error::UnknownVertex(format!("no dimension for vertex `{v}`")))?);
        }
        for name in j.dims.keys() {
            q.vertex_id(name)?;
        }
        for name in j.matrices.keys() {
            q.edge_id(name)?;
        }
        let mut mats = Vec::with_capacity(q.num_edges());
        for e in q.edges() {
            let rows = j.matrices.get(&e.name).ok_or_else(|| Error::UnknownEdge(format!("no matrix for edge `{}`", e.name)))?;
            mats.push(Mat::from_rows(rows.iter().map(|r| r.iter().map(|z| z.value()).collect()).collect())?);
        }
        RepPoint::new(q, dims, mats)
    }
    /// Serialize.
    pub fn to_json(&self) -> RepJson {
        let q = &self.quiver;
        RepJson {
            schema: Some(SCHEMA.to_string()),
            dims: q.vertices().iter().cloned().zip(self.dims.iter().cloned()).collect(),
            matrices: q
                .edges()
                .iter()
                .zip(&self.mats)
                .map(|(e, m)| (e.name.clone(), matrix_to_json(m.rows, m.cols, |i, j| *m.get(i, j))))
                .collect::<BTreeMap<_, _>>(),
        }
    }
}

fn random_entry<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// A random invertible matrix (identity plus a small random perturbation) and its inverse.
pub fn random_invertible<R: Rng>(n: usize, rng: &mut R) -> (Mat<Complex64>, Mat<Complex64>) {
    loop {
        let m = DMatrix::from_fn(n, n, |i, j| {
            let z = random_entry(rng);
            if i == j {
                z + Complex64::new(2.0, 0.0)
            } else {
                z * 0.5
            }
        });
        if let Some(inv) = m.clone().try_inverse() {
            return (Mat::from_nalgebra(&m), Mat::from_nalgebra(&inv));
        }
    }
}

/// Tr Φ̂(ρ) = Σ coefficient × trace of the evaluated cycle.
pub fn trace_potential<K: Coeff>(phi: &CyclicPoly<K>, rho: &RepPoint<K>) -> Result<K> {
    rho.check_quiver(phi.quiver())?;
    let mut t = K::zero();
    for (c, k) in phi.terms() {
        t = t + k.clone() * rho.path_matrix(&c.to_path()).trace();
    }
    Ok(t)
}

/// Trace of a product of cyclic classes: Π_i Tr ρ(c_i).
pub fn trace_product<K: Coeff>(classes: &[Cycle], rho: &RepPoint<K>) -> K {
    classes.iter().fold(K::one(), |acc, c| acc * rho.path_matrix(&c.to_path()).trace())
}

/// Gradient matrices G_x = ρ(∂Φ/∂x), each of shape d(tgt x) × d(src x).
pub fn trace_gradient<K: Coeff>(phi: &CyclicPoly<K>, rho: &RepPoint<K>) -> Result<Vec<Mat<K>>> {
    rho.check_quiver(phi.quiver())?;
    let q = phi.quiver();
    (0..q.num_edges())
        .map(|e| {
            let d = cyclic_derive(phi, e)?;
            rho.evaluate_corner(&d, q.edge(e).tgt, q.edge(e).src)
        })
        .collect()
}

/// The pairing Σ_x Tr(G_x·E_x) of gradients with a direction.
pub fn gradient_pairing<K: Coeff>(grad: &[Mat<K>], dir: &[Mat<K>]) -> Result<K> {
    let mut s = K::zero();
    for (g, e) in grad.iter().zip(dir) {
        s = s + g.mul(e)?.trace();
    }
    Ok(s)
}

/// max_x ‖G_x‖ (largest singular value); with `star`, the gradients are first
/// projected onto the skew-hermitian matrices (⋆-representations, square edges only).
pub fn critical_residual(phi: &CyclicPoly<Complex64>, rho: &RepPoint<Complex64>, star: bool) -> Result<f64> {
    let grads = trace_gradient(phi, rho)?;
    let mut r: f64 = 0.0;
    for g in grads {
        let g = if star {
            if g.rows != g.cols {
                return Err(Error::Shape("the ⋆ restriction needs square edge matrices".into()));
            }
            g.skew_hermitian_part()
        } else {
            g
        };
        r = r.max(g.operator_norm());
    }
    Ok(r)
}

/// Result of a finite-difference check of the gradient.
#[derive(Clone, Copy, Debug)]
pub struct FdCheck {
    /// Central difference (T(ρ+hE) − T(ρ−hE)) / 2h.
    pub finite_difference: Complex64,
    /// Σ_x Tr(G_x E_x).
    pub analytic: Complex64,
    /// |fd − analytic| / max(1, |analytic|).
    pub relative_error: f64,
}

/// Compare the gradient with a central difference along a random direction.
pub fn fd_check<R: Rng>(phi: &CyclicPoly<Complex64>, rho: &RepPoint<Complex64>, step: f64, rng: &mut R) -> Result<FdCheck> {
    let q = rho.quiver();
    let dir: Vec<Mat<Complex64>> = q
        .edges()
        .iter()
        .map(|e| Mat::from_fn(rho.dims[e.src], rho.dims[e.tgt], |_, _| random_entry(rng)))
        .collect();
    let h = Complex64::new(step, 0.0);
    let plus = trace_potential(phi, &rho.perturbed(&h, &dir)?)?;
    let minus = trace_potential(phi, &rho.perturbed(&(-h), &dir)?)?;
    let fd = (plus - minus) / (2.0 * step);
    let an = gradient_pairing(&trace_gradient(phi, rho)?, &dir)?;
    let relative_error = (fd - an).norm() / an.norm().max(1.0);
    Ok(FdCheck { finite_difference: fd, analytic: an, relative_error })
}

/// ψ(ρ) = Σ_x ‖G_x‖²_F (optionally after the ⋆ projection).
pub fn gradient_energy(phi: &CyclicPoly<Complex64>, rho: &RepPoint<Complex64>, star: bool) -> Result<f64> {
    Ok(trace_gradient(phi, rho)?
        .into_iter()
        .map(|g| if star { g.skew_hermitian_part().frobenius_sq() } else { g.frobenius_sq() })
        .sum())
}

/// Outcome of a descent run.
#[derive(Clone, Debug)]
pub struct Descent {
    /// Final point.
    pub point: RepPoint<Complex64>,
    /// Final residual.
    pub residual: f64,
    /// Iterations performed.
    pub iterations: usize,
}

/// Convenience search for critical points: gradient descent on ψ with
/// numerically differentiated gradients, fixed initial step and
/// backtracking.  No convergence claims are made.
pub fn descend(
    phi: &CyclicPoly<Complex64>,
    start: &RepPoint<Complex64>,
    max_iter: usize,
    tol: f64,
    star: bool,
) -> Result<Descent> {
    let mut rho = start.clone();
    let mut f = gradient_energy(phi, &rho, star)?;
    let h = 1e-6;
    let mut iterations = 0;
    for _ in 0..max_iter {
        if critical_residual(phi, &rho, star)? <= tol {
            break;
        }
        iterations += 1;
        // numerical gradient of ψ in every real coordinate
        let mut grad: Vec<Mat<Complex64>> = rho.mats.iter().map(|m| Mat::zeros(m.rows, m.cols)).collect();
        for e in 0..rho.mats.len() {
            for i in 0..rho.mats[e].rows {
                for j in 0..rho.mats[e].cols {
                    for unit in [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)] {
                        let mut p = rho.clone();
                        *p.mats[e].get_mut(i, j) += unit * h;
                        let mut m = rho.clone();
                        *m.mats[e].get_mut(i, j) -= unit * h;
                        let df = (gradient_energy(phi, &p, star)? - gradient_energy(phi, &m, star)?) / (2.0 * h);
                        *grad[e].get_mut(i, j) += unit * df;
                    }
                }
            }
        }
        let mut step = 1.0;
        let mut improved = false;
        while step > 1e-12 {
            let cand = rho.perturbed(&Complex64::new(-step, 0.0), &grad)?;
            let fc = gradient_energy(phi, &cand, star)?;
            if fc < f {
                rho = cand;
                f = fc;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    let residual = critical_residual(phi, &rho, star)?;
    Ok(Descent { point: rho, residual, iterations })
}

/// The sl₂-type triple X, Y, Z = (i/2)σ_x, (i/2)σ_y, (i/2)σ_z, which satisfies
/// [Y, Z] = −X and cyclic permutations.
pub fn su2_triple() -> [Mat<Complex64>; 3] {
    let i = Complex64::new(0.0, 1.0);
    let h = Complex64::new(0.5, 0.0);
    let z = Complex64::zero();
    let one = Complex64::one();
    let sx = Mat::from_rows(vec![vec![z, one], vec![one, z]]).unwrap();
    let sy = Mat::from_rows(vec![vec![z, -i], vec![i, z]]).unwrap();
    let sz = Mat::from_rows(vec![vec![one, z], vec![z, -one]]).unwrap();
    [sx.scale(&(i * h)), sy.scale(&(i * h)), sz.scale(&(i * h))]
}
