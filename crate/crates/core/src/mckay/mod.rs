//! McKay quivers with potential for finite subgroups Γ ⊂ SL₃ and the
//! comparison of their Jacobi algebras with invariant theory.
//!
//! Edges i → j form a basis of Hom_Γ(L_i, L_j ⊗ V), so paths i → o of
//! length n span Hom_Γ(L_i, V^{⊗n}) and the corner 1_i·𝔄·1_o is compared
//! with Hom_Γ(L_i, Sym V), whose series is (1/|Γ|) Σ_g χ̄_i(g)/det(1 − t·g).
//! The volume form is the standard ε-tensor, applied to the three V-factors
//! of the composite intertwiner in the order in which the triangle's edges
//! are traversed; for a diagonal group this makes λ(▲) the sign of the
//! permutation of the three coordinate characters along the triangle.

mod group;

pub use group::{
    explicit_to_json, round_multiplicity, s3_signed_permutations, AbelianGroup, ExplicitGroup, GroupData, GroupJson,
    Irrep, IrrepJson, GROUP_TOL, ROUNDING_TOL,
};

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{cy_hilbert_check, GradedQuotient};
use crate::linalg::{ComplexApprox, Rationals};
use crate::path::{canonical_shift, Cycle};
use crate::poly::CyclicPoly;
use crate::quiver::{Edge, EdgeId, Quiver, VertexId};
use crate::scalar::{qi, Rational};
use crate::series::{MatrixSeries, Series};

const COORDS: [&str; 3] = ["x", "y", "z"];

/// A McKay quiver with the intertwiner chosen for each edge.
#[derive(Clone, Debug)]
pub struct McKayQuiver {
    quiver: Arc<Quiver>,
    trivial: VertexId,
    dims: Vec<usize>,
    /// Per edge i → j: a (3·d_j) × d_i matrix, row index β·3 + a for β ∈ L_j, a ∈ V.
    intertwiners: Vec<DMatrix<Complex64>>,
    /// Abelian case: the coordinate character carried by each edge.
    coordinate: Option<Vec<usize>>,
}

impl McKayQuiver {
    /// The quiver.
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }
    /// The vertex o of the trivial representation.
    pub fn trivial_vertex(&self) -> VertexId {
        self.trivial
    }
    /// Irrep dimensions per vertex.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    /// Intertwiner of an edge.
    pub fn intertwiner(&self, e: EdgeId) -> &DMatrix<Complex64> {
        &self.intertwiners[e]
    }
    /// Multiplicity matrix a_ij.
    pub fn multiplicities(&self) -> Vec<Vec<usize>> {
        self.quiver.edge_count_matrix(1)
    }
    /// Check Σ_i dim(L_i)·a_ij = 3·dim(L_j) for every j.
    pub fn dimension_identity_holds(&self) -> bool {
        let a = self.multiplicities();
        let n = self.dims.len();
        (0..n).all(|j| (0..n).map(|i| self.dims[i] * a[i][j]).sum::<usize>() == 3 * self.dims[j])
    }
}

/// Build the McKay quiver of Γ.
pub fn build_quiver(g: &GroupData) -> Result<McKayQuiver> {
    match g {
        GroupData::Abelian(a) => build_abelian(a),
        GroupData::Explicit(e) => build_explicit(e),
    }
}

fn build_abelian(g: &AbelianGroup) -> Result<McKayQuiver> {
    let chars = g.characters();
    let nv = chars.len();
    let names: Vec<String> = (0..nv).map(|i| if i == 0 { "o".to_string() } else { format!("L{i}") }).collect();
    let index = |s: &[u32]| chars.iter().position(|c| c.as_slice() == s).expect("characters are closed under shifts");
    let mut edges = Vec::new();
    let mut ints = Vec::new();
    let mut coords = Vec::new();
    for i in 0..nv {
        for m in 0..3 {
            // L_i ≅ L_j ⊗ ρ_m  ⇔  χ_j = χ_i − ρ_m
            let j = index(&g.sub_signatures(&chars[i], &g.coordinate_signature(m)));
            let name = if nv == 1 { COORDS[m].to_string() } else { format!("{}{}", COORDS[m], i) };
            edges.push(Edge { name, src: i, tgt: j, deg: 1 });
            let mut t = DMatrix::zeros(3, 1);
            t[(m, 0)] = Complex64::new(1.0, 0.0);
            ints.push(t);
            coords.push(m);
        }
    }
    let quiver = Arc::new(Quiver::from_parts(names, edges)?);
    Ok(McKayQuiver { quiver, trivial: 0, dims: vec![1; nv], intertwiners: ints, coordinate: Some(coords) })
}

/// Orthonormal basis of Hom_Γ(L_i, L_j ⊗ V) as (3·d_j) × d_i matrices.
fn intertwiner_basis(g: &ExplicitGroup, i: usize, j: usize) -> Vec<DMatrix<Complex64>> {
    let ri = &g.irreps()[i];
    let rj = &g.irreps()[j];
    let (di, dj) = (ri.dim, rj.dim);
    let rows = 3 * dj;
    let nvar = rows * di;
    let mut m = DMatrix::<Complex64>::zeros(g.order() * nvar, nvar);
    for (k, el) in g.elements().iter().enumerate() {
        let a = rj.matrices[k].kronecker(el); // acts on L_j ⊗ V
        let b = &ri.matrices[k];
        // vec(A·T) − vec(T·B) = (I ⊗ A − Bᵀ ⊗ I)·vec(T), column-major vec
        let left = DMatrix::<Complex64>::identity(di, di).kronecker(&a);
        let right = b.transpose().kronecker(&DMatrix::<Complex64>::identity(rows, rows));
        let block = left - right;
        m.view_mut((k * nvar, 0), (nvar, nvar)).copy_from(&block);
    }
    let svd = m.svd(false, true);
    let vt = svd.v_t.expect("requested V^H");
    let mut out = Vec::new();
    for (s, sv) in svd.singular_values.iter().enumerate() {
        if *sv < 1e-8 {
            let v: Vec<Complex64> = vt.row(s).iter().map(|z| z.conj()).collect();
            out.push(DMatrix::from_column_slice(rows, di, &v));
        }
    }
    out
}

fn build_explicit(g: &ExplicitGroup) -> Result<McKayQuiver> {
    let irreps = g.irreps();
    let nv = irreps.len();
    let labels: Vec<String> = irreps.iter().map(|r| r.label.clone()).collect();
    group::unique_labels(&labels)?;
    let n = g.order() as f64;
    let mut edges = Vec::new();
    let mut ints = Vec::new();
    for i in 0..nv {
        for j in 0..nv {
            let inner: Complex64 = (0..g.order())
                .map(|k| irreps[i].character(k).conj() * irreps[j].character(k) * g.elements()[k].trace())
                .sum::<Complex64>()
                / n;
            let a = round_multiplicity(inner, &format!("dim Hom(L_{}, L_{} ⊗ V)", labels[i], labels[j]))?;
            if a < 0 {
                return Err(Error::Group("negative multiplicity".into()));
            }
            if a == 0 {
                continue;
            }
            let basis = intertwiner_basis(g, i, j);
            if basis.len() != a as usize {
                return Err(Error::Group(format!(
                    "found {} intertwiners L_{} → L_{} ⊗ V but the characters predict {a}",
                    basis.len(),
                    labels[i],
                    labels[j]
                )));
            }
            for (k, t) in basis.into_iter().enumerate() {
                let name = if a == 1 { format!("e{i}_{j}") } else { format!("e{i}_{j}_{k}") };
                edges.push(Edge { name, src: i, tgt: j, deg: 1 });
                ints.push(t);
            }
        }
    }
    let quiver = Arc::new(Quiver::from_parts(labels, edges)?);
    Ok(McKayQuiver {
        quiver,
        trivial: g.trivial(),
        dims: irreps.iter().map(|r| r.dim).collect(),
        intertwiners: ints,
        coordinate: None,
    })
}

fn levi_civita(a: usize, b: usize, c: usize) -> i64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// The slice T_a: L_i → L_j of an intertwiner for a fixed V-coordinate a.
fn slice(t: &DMatrix<Complex64>, a: usize) -> DMatrix<Complex64> {
    let dj = t.nrows() / 3;
    DMatrix::from_fn(dj, t.ncols(), |beta, alpha| t[(beta * 3 + a, alpha)])
}

/// The composite x = Σ_{abc} ε_{abc} T3_c·T2_b·T1_a: L_i → L_i of a rooted triangle.
fn composite(q: &McKayQuiver, e: [EdgeId; 3]) -> DMatrix<Complex64> {
    let d = q.dims[q.quiver.edge(e[0]).src];
    let mut x = DMatrix::zeros(d, d);
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let s = levi_civita(a, b, c);
                if s == 0 {
                    continue;
                }
                let t = slice(&q.intertwiners[e[2]], c) * slice(&q.intertwiners[e[1]], b) * slice(&q.intertwiners[e[0]], a);
                x += t * Complex64::new(s as f64, 0.0);
            }
        }
    }
    x
}

/// One oriented triangle with its coefficient.
#[derive(Clone, Debug)]
pub struct Triangle {
    /// Canonical cyclic class.
    pub cycle: Cycle,
    /// λ(▲) from the canonical source vertex.
    pub lambda: Complex64,
    /// λ computed from each of the three rotations.
    pub rotations: [Complex64; 3],
    /// Deviation of the composite from a scalar operator (Schur).
    pub schur_defect: f64,
}

/// The McKay potential Φ_Γ = Σ λ(▲)·▲.
#[derive(Clone, Debug)]
pub struct McKayPotential {
    /// All triangles with nonzero coefficient.
    pub triangles: Vec<Triangle>,
    /// Φ_Γ with complex coefficients.
    pub potential: CyclicPoly<Complex64>,
    /// Φ_Γ with exact coefficients, when every λ is an integer (always in the abelian case).
    pub exact: Option<CyclicPoly<Rational>>,
}

impl McKayPotential {
    /// Whether λ agrees across rotations for every triangle (to 1e−9).
    pub fn rotation_invariant(&self) -> bool {
        self.triangles.iter().all(|t| t.rotations.iter().all(|r| (r - t.lambda).norm() <= 1e-9))
    }
    /// Largest Schur defect.
    pub fn max_schur_defect(&self) -> f64 {
        self.triangles.iter().map(|t| t.schur_defect).fold(0.0, f64::max)
    }
}

/// Compute λ(▲) for every oriented triangle and assemble Φ_Γ.
pub fn triangle_coefficients(q: &McKayQuiver) -> Result<McKayPotential> {
    let quiver = &q.quiver;
    let mut triangles = Vec::new();
    for e1 in 0..quiver.num_edges() {
        for e2 in quiver.out_edges(quiver.edge(e1).tgt) {
            for e3 in quiver.out_edges(quiver.edge(e2).tgt) {
                if quiver.edge(e3).tgt != quiver.edge(e1).src {
                    continue;
                }
                let w = [e1, e2, e3];
                if canonical_shift(quiver, &w) != 0 {
                    continue;
                }
                let rots = [[e1, e2, e3], [e2, e3, e1], [e3, e1, e2]];
                let (lambda, rotations, schur_defect) = match &q.coordinate {
                    Some(c) => {
                        let l = Complex64::new(levi_civita(c[e1], c[e2], c[e3]) as f64, 0.0);
                        (l, [l; 3], 0.0)
                    }
                    None => {
                        let mut rs = [Complex64::zero(); 3];
                        let mut defect: f64 = 0.0;
                        for (k, r) in rots.iter().enumerate() {
                            let x = composite(q, *r);
                            let d = x.nrows();
                            rs[k] = x.trace();
                            let scalar = DMatrix::<Complex64>::identity(d, d) * (rs[k] / d as f64);
                            defect = defect.max((x - scalar).iter().map(|z| z.norm()).fold(0.0, f64::max));
                        }
                        (rs[0], rs, defect)
                    }
                };
                if lambda.norm() <= 1e-12 {
                    continue;
                }
                let cycle = Cycle::new(quiver, w.to_vec())?;
                triangles.push(Triangle { cycle, lambda, rotations, schur_defect });
            }
        }
    }
    let mut potential = CyclicPoly::zero(quiver);
    for t in &triangles {
        potential.add_term(t.cycle.clone(), t.lambda);
    }
    let integral = triangles.iter().all(|t| t.lambda.im.abs() < 1e-12 && (t.lambda.re - t.lambda.re.round()).abs() < 1e-12);
    let exact = integral.then(|| {
        let mut p = CyclicPoly::zero(quiver);
        for t in &triangles {
            p.add_term(t.cycle.clone(), qi(t.lambda.re.round() as i64));
        }
        p
    });
    if let Some(t) = triangles.iter().find(|t| t.schur_defect > 1e-6) {
        return Err(Error::Group(format!(
            "composite intertwiner of triangle `{}` is not scalar (defect {:.3e}): bad intertwiner data",
            t.cycle.render(quiver),
            t.schur_defect
        )));
    }
    Ok(McKayPotential { triangles, potential, exact })
}

/// Molien series (1/|Γ|) Σ_g 1/det(1 − t·g) to order N.
pub fn molien_series(g: &GroupData, order: usize) -> Result<Series> {
    isotypic_series_trivial(g, order)
}

fn isotypic_series_trivial(g: &GroupData, order: usize) -> Result<Series> {
    match g {
        GroupData::Abelian(a) => Ok(abelian_isotypic(a, &vec![0; a.generators().len()], order)),
        GroupData::Explicit(e) => float_isotypic(e, e.trivial(), order),
    }
}

/// Series of dim Hom_Γ(L_i, Sym^n V) for every vertex i of the McKay quiver, in vertex order.
pub fn isotypic_series(g: &GroupData, order: usize) -> Result<Vec<Series>> {
    match g {
        GroupData::Abelian(a) => Ok(a.characters().iter().map(|c| abelian_isotypic(a, c, order)).collect()),
        GroupData::Explicit(e) => (0..e.irreps().len()).map(|i| float_isotypic(e, i, order)).collect(),
    }
}

/// Exact count: monomials x^α of degree n whose weight Σ α_m ρ_m equals the character.
fn abelian_isotypic(g: &AbelianGroup, target: &[u32], order: usize) -> Series {
    let rho: Vec<Vec<u32>> = (0..3).map(|m| g.coordinate_signature(m)).collect();
    let mut cs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut count = 0i64;
        for a in 0..=n {
            for b in 0..=n - a {
                let c = n - a - b;
                let sig: Vec<u32> = (0..target.len())
                    .map(|k| ((a as u64 * rho[0][k] as u64 + b as u64 * rho[1][k] as u64 + c as u64 * rho[2][k] as u64)
                        % g.modulus() as u64) as u32)
                    .collect();
                if sig == target {
                    count += 1;
                }
            }
        }
        cs.push(count);
    }
    Series::from_ints(order, &cs)
}

/// Float Molien sum (1/|Γ|) Σ_g χ̄_i(g)/det(1 − t·g), rounded to integers.
fn float_isotypic(g: &ExplicitGroup, i: usize, order: usize) -> Result<Series> {
    let mut acc = vec![Complex64::zero(); order + 1];
    for (k, el) in g.elements().iter().enumerate() {
        let e1 = el.trace();
        let e2 = (e1 * e1 - (el * el).trace()) / 2.0;
        let e3 = el.determinant();
        // 1/(1 − e1 t + e2 t² − e3 t³) by the recursion h_n = e1 h_{n−1} − e2 h_{n−2} + e3 h_{n−3}
        let mut h = vec![Complex64::zero(); order + 1];
        for n in 0..=order {
            let mut v = if n == 0 { Complex64::new(1.0, 0.0) } else { Complex64::zero() };
            if n >= 1 {
                v += e1 * h[n - 1];
            }
            if n >= 2 {
                v -= e2 * h[n - 2];
            }
            if n >= 3 {
                v += e3 * h[n - 3];
            }
            h[n] = v;
        }
        let w = g.irreps()[i].character(k).conj();
        for n in 0..=order {
            acc[n] += w * h[n];
        }
    }
    let cs = acc
        .iter()
        .enumerate()
        .map(|(n, z)| round_multiplicity(z / g.order() as f64, &format!("Molien coefficient of t^{n}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Series::from_ints(order, &cs))
}

/// First mismatch in a McKay comparison.
#[derive(Clone, Debug, Serialize)]
pub struct McKayMismatch {
    /// Vertex label i of the corner (i, o).
    pub vertex: String,
    /// Degree.
    pub degree: usize,
    /// dim 1_i·𝔄_n·1_o.
    pub algebra: String,
    /// Invariant-theory prediction.
    pub invariants: String,
}

/// Outcome of the McKay comparison.
#[derive(Clone, Debug, Serialize)]
pub struct McKayReport {
    /// |Γ|.
    pub group_order: usize,
    /// Number of vertices (irreps).
    pub vertices: usize,
    /// Number of edges.
    pub edges: usize,
    /// Number of triangles with nonzero λ.
    pub triangles: usize,
    /// λ agrees across rotations for every triangle.
    pub rotation_invariant: bool,
    /// Σ_i dim(L_i)·a_ij = 3·dim(L_j).
    pub dimension_identity: bool,
    /// Truncation degree.
    pub degree: usize,
    /// dim 1_o·𝔄_n·1_o for n ≤ N.
    pub invariant_dims: Vec<String>,
    /// Molien coefficients.
    pub molien: Vec<String>,
    /// Corner (o,o) matches the Molien series.
    pub invariants_match: bool,
    /// All corners (i,o) match the isotypic series.
    pub isotypic_match: bool,
    /// The Cartan-polynomial Hilbert identity holds.
    pub cy_hilbert: bool,
    /// First mismatch, if any.
    pub first_mismatch: Option<McKayMismatch>,
}

impl McKayReport {
    /// Overall verdict.
    pub fn pass(&self) -> bool {
        self.rotation_invariant && self.dimension_identity && self.invariants_match && self.isotypic_match && self.cy_hilbert
    }
}

/// Build Φ_Γ and compare the Jacobi algebra with invariant theory to degree N.
pub fn mckay_check(g: &GroupData, order: usize) -> Result<McKayReport> {
    let q = build_quiver(g)?;
    let pot = triangle_coefficients(&q)?;
    compare(g, &q, &pot, order)
}

/// How a negative control corrupts Φ_Γ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corruption {
    /// Flip the sign of the first triangle's coefficient.  For diagonal
    /// groups this is absorbed by rescaling edges, and in general sign
    /// patterns are not seen by Hilbert series, so the checks still pass.
    FlipSign,
    /// Drop the first triangle (λ ↦ 0): relations lose a term and the
    /// comparison fails.
    Drop,
}

/// Negative control: corrupt one triangle coefficient and compare again.
pub fn mckay_check_corrupted(g: &GroupData, order: usize, how: Corruption) -> Result<McKayReport> {
    let q = build_quiver(g)?;
    let mut pot = triangle_coefficients(&q)?;
    match how {
        Corruption::FlipSign => {
            if let Some(t) = pot.triangles.first_mut() {
                t.lambda = -t.lambda;
                t.rotations = [t.lambda; 3];
            }
        }
        Corruption::Drop => {
            if !pot.triangles.is_empty() {
                pot.triangles.remove(0);
            }
        }
    }
    let quiver = q.quiver().clone();
    let mut potential = CyclicPoly::zero(&quiver);
    let mut exact = CyclicPoly::zero(&quiver);
    for t in &pot.triangles {
        potential.add_term(t.cycle.clone(), t.lambda);
        exact.add_term(t.cycle.clone(), qi(t.lambda.re.round() as i64));
    }
    pot.exact = pot.exact.as_ref().map(|_| exact);
    pot.potential = potential;
    compare(g, &q, &pot, order)
}

fn compare(g: &GroupData, q: &McKayQuiver, pot: &McKayPotential, order: usize) -> Result<McKayReport> {
    let (hilb, cy): (MatrixSeries, bool) = match &pot.exact {
        Some(p) => {
            let gq = GradedQuotient::new(p, Rationals, order)?;
            (gq.hilbert_series(), cy_hilbert_check(p, Rationals, order)?.pass())
        }
        None => {
            let gq = GradedQuotient::new(&pot.potential, ComplexApprox::default(), order)?;
            (gq.hilbert_series(), cy_hilbert_check(&pot.potential, ComplexApprox::default(), order)?.pass())
        }
    };
    let o = q.trivial_vertex();
    let iso = isotypic_series(g, order)?;
    let molien = &iso[o];
    let labels = q.quiver().vertices();
    let mut first_mismatch = None;
    let mut invariants_match = true;
    let mut isotypic_match = true;
    // (o, o) first, then the other corners
    let mut verts: Vec<VertexId> = vec![o];
    verts.extend((0..labels.len()).filter(|&i| i != o));
    for n in 0..=order {
        for &i in &verts {
            let a = hilb.entry(i, o).coeff(n);
            let b = iso[i].coeff(n);
            if a != b {
                if i == o {
                    invariants_match = false;
                } else {
                    isotypic_match = false;
                }
                if first_mismatch.is_none() {
                    first_mismatch =
                        Some(McKayMismatch { vertex: labels[i].clone(), degree: n, algebra: a.to_string(), invariants: b.to_string() });
                }
            }
        }
    }
    Ok(McKayReport {
        group_order: g.order(),
        vertices: labels.len(),
        edges: q.quiver().num_edges(),
        triangles: pot.triangles.len(),
        rotation_invariant: pot.rotation_invariant(),
        dimension_identity: q.dimension_identity_holds(),
        degree: order,
        invariant_dims: (0..=order).map(|n| hilb.entry(o, o).coeff(n).to_string()).collect(),
        molien: (0..=order).map(|n| molien.coeff(n).to_string()).collect(),
        invariants_match,
        isotypic_match,
        cy_hilbert: cy,
        first_mismatch,
    })
}
