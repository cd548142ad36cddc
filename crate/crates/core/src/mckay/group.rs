//! Finite subgroups of SL₃: abelian diagonal presentations and explicit
//! element lists with user-supplied irreducible representations.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{EntryJson, MatrixJson};

/// Tolerance for group-theoretic identities in the explicit branch.
pub const GROUP_TOL: f64 = 1e-9;
/// Maximal distance of a float multiplicity from the nearest integer.
pub const ROUNDING_TOL: f64 = 1e-4;

/// A diagonal abelian subgroup of SL₃ ⊂ (ℤ/n)³: each generator (k₁,k₂,k₃)
/// acts as diag(ωᵏ¹, ωᵏ², ωᵏ³), ω = e^{2πi/n}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    order_n: u32,
    generators: Vec<[u32; 3]>,
    elements: Vec<[u32; 3]>,
}

impl AbelianGroup {
    /// Build the subgroup generated by the given exponent vectors.
    pub fn new(n: u32, generators: &[[i64; 3]]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Group("the root-of-unity order must be positive".into()));
        }
        let gens: Vec<[u32; 3]> =
            generators.iter().map(|g| [0, 1, 2].map(|i| g[i].rem_euclid(n as i64) as u32)).collect();
        for g in &gens {
            if (g[0] + g[1] + g[2]) % n != 0 {
                return Err(Error::Group(format!("generator {g:?} does not have determinant 1 (exponents must sum to 0 mod {n})")));
            }
        }
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([[0u32; 3]]);
        seen.insert([0u32; 3]);
        while let Some(a) = queue.pop_front() {
            for g in &gens {
                let b = [0, 1, 2].map(|i| (a[i] + g[i]) % n);
                if seen.insert(b) {
                    queue.push_back(b);
                }
            }
        }
        Ok(AbelianGroup { order_n: n, generators: gens, elements: seen.into_iter().collect() })
    }
    /// The root-of-unity order n.
    pub fn modulus(&self) -> u32 {
        self.order_n
    }
    /// Generators (reduced mod n).
    pub fn generators(&self) -> &[[u32; 3]] {
        &self.generators
    }
    /// All elements as exponent vectors.
    pub fn elements(&self) -> &[[u32; 3]] {
        &self.elements
    }
    /// |Γ|.
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    /// The character signature of a weight α ∈ (ℤ/n)³: its values α·g on the generators.
    pub fn signature(&self, alpha: [u32; 3]) -> Vec<u32> {
        let n = self.order_n;
        self.generators.iter().map(|g| (0..3).map(|i| alpha[i] * g[i]).sum::<u32>() % n).collect()
    }
    /// The distinct characters of Γ as signatures, trivial first, then sorted.
    pub fn characters(&self) -> Vec<Vec<u32>> {
        let n = self.order_n;
        let mut set = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    set.insert(self.signature([a, b, c]));
                }
            }
        }
        let triv = vec![0; self.generators.len()];
        let mut v: Vec<Vec<u32>> = vec![triv.clone()];
        v.extend(set.into_iter().filter(|s| *s != triv));
        v
    }
    /// Signature of the coordinate character ρ_m (the m-th diagonal entry of V).
    pub fn coordinate_signature(&self, m: usize) -> Vec<u32> {
        let mut a = [0u32; 3];
        a[m] = 1;
        self.signature(a)
    }
    /// Add two signatures.
    pub fn add_signatures(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.order_n).collect()
    }
    /// Subtract signatures.
    pub fn sub_signatures(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = self.order_n;
        a.iter().zip(b).map(|(x, y)| (x + n - y) % n).collect()
    }
}

/// An irreducible representation: label, dimension and one matrix per group element.
#[derive(Clone, Debug)]
pub struct Irrep {
    /// Label.
    pub label: String,
    /// Dimension.
    pub dim: usize,
    /// Matrices in the order of the group elements.
    pub matrices: Vec<DMatrix<Complex64>>,
}

impl Irrep {
    /// Character value at element `g`.
    pub fn character(&self, g: usize) -> Complex64 {
        self.matrices[g].trace()
    }
}

/// A finite subgroup of SL₃ given by all its elements and its irreducible representations.
#[derive(Clone, Debug)]
pub struct ExplicitGroup {
    elements: Vec<DMatrix<Complex64>>,
    irreps: Vec<Irrep>,
    trivial: usize,
}

fn close(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, tol: f64) -> bool {
    (a - b).iter().all(|z| z.norm() <= tol)
}

impl ExplicitGroup {
    /// Validate closure, determinant 1, the homomorphism property, Schur
    /// orthogonality and completeness of the supplied irreps.
    pub fn new(elements: Vec<DMatrix<Complex64>>, irreps: Vec<Irrep>) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::Group("empty element list".into()));
        }
        for (k, g) in elements.iter().enumerate() {
            if g.nrows() != 3 || g.ncols() != 3 {
                return Err(Error::Group(format!("element {k} is not 3×3")));
            }
            if (g.determinant() - Complex64::new(1.0, 0.0)).norm() > GROUP_TOL {
                return Err(Error::Group(format!("element {k} does not have determinant 1")));
            }
        }
        let find = |m: &DMatrix<Complex64>| elements.iter().position(|e| close(e, m, 1e-7));
        let mut table = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in 0..n {
                table[a][b] = find(&(&elements[a] * &elements[b]))
                    .ok_or_else(|| Error::Group(format!("product of elements {a} and {b} is not in the list")))?;
            }
        }
        for r in &irreps {
            if r.matrices.len() != n {
                return Err(Error::Group(format!("irrep `{}` has {} matrices for {n} elements", r.label, r.matrices.len())));
            }
            if r.matrices.iter().any(|m| m.nrows() != r.dim || m.ncols() != r.dim) {
                return Err(Error::Group(format!("irrep `{}` has matrices of the wrong size", r.label)));
            }
            for a in 0..n {
                for b in 0..n {
                    if !close(&(&r.matrices[a] * &r.matrices[b]), &r.matrices[table[a][b]], 1e-7) {
                        return Err(Error::Group(format!("irrep `{}` is not a homomorphism", r.label)));
                    }
                }
            }
        }
        for (i, ri) in irreps.iter().enumerate() {
            for (j, rj) in irreps.iter().enumerate() {
                let s: Complex64 = (0..n).map(|g| ri.character(g) * rj.character(g).conj()).sum::<Complex64>() / n as f64;
                let want = if i == j { 1.0 } else { 0.0 };
                if (s - Complex64::new(want, 0.0)).norm() > 1e-6 {
                    return Err(Error::Group(format!("irreps `{}` and `{}` violate Schur orthogonality", ri.label, rj.label)));
                }
            }
        }
        let total: usize = irreps.iter().map(|r| r.dim * r.dim).sum();
        if total != n {
            return Err(Error::Group(format!("Σ dim² = {total} but |Γ| = {n}: the irrep list is incomplete")));
        }
        let trivial = irreps
            .iter()
            .position(|r| r.dim == 1 && r.matrices.iter().all(|m| (m[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-7))
            .ok_or_else(|| Error::Group("no trivial representation supplied".into()))?;
        Ok(ExplicitGroup { elements, irreps, trivial })
    }
    /// Elements.
    pub fn elements(&self) -> &[DMatrix<Complex64>] {
        &self.elements
    }
    /// Irreps.
    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }
    /// Index of the trivial irrep.
    pub fn trivial(&self) -> usize {
        self.trivial
    }
    /// |Γ|.
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Group data in either presentation.
#[derive(Clone, Debug)]
pub enum GroupData {
    /// Diagonal abelian subgroup.
    Abelian(AbelianGroup),
    /// Explicit matrices with irreps.
    Explicit(ExplicitGroup),
}

impl GroupData {
    /// |Γ|.
    pub fn order(&self) -> usize {
        match self {
            GroupData::Abelian(a) => a.order(),
            GroupData::Explicit(e) => e.order(),
        }
    }
    /// The trivial group.
    pub fn trivial() -> Self {
        GroupData::Abelian(AbelianGroup::new(1, &[]).unwrap())
    }
    /// Cyclic group of order n with weights (a, b, c).
    pub fn cyclic(n: u32, w: [i64; 3]) -> Result<Self> {
        Ok(GroupData::Abelian(AbelianGroup::new(n, &[w])?))
    }
    /// Parse a group document.
    pub fn from_json(j: &GroupJson) -> Result<Self> {
        match j {
            GroupJson::Abelian { order, generators, .. } => Ok(GroupData::Abelian(AbelianGroup::new(*order, generators)?)),
            GroupJson::Explicit { elements, irreps, .. } => {
                let els = elements.iter().map(matrix_from_json).collect::<Result<Vec<_>>>()?;
                let irs = irreps
                    .iter()
                    .map(|r| {
                        Ok(Irrep {
                            label: r.label.clone(),
                            dim: r.dim,
                            matrices: r.matrices.iter().map(matrix_from_json).collect::<Result<Vec<_>>>()?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(GroupData::Explicit(ExplicitGroup::new(els, irs)?))
            }
        }
    }
}

fn matrix_from_json(m: &MatrixJson) -> Result<DMatrix<Complex64>> {
    let r = m.len();
    let c = m.first().map_or(0, |row| row.len());
    if m.iter().any(|row| row.len() != c) {
        return Err(Error::Shape("ragged matrix in group document".into()));
    }
    Ok(DMatrix::from_fn(r, c, |i, k| m[i][k].value()))
}

/// Convert a complex matrix to JSON rows.
pub fn matrix_to_json(m: &DMatrix<Complex64>) -> MatrixJson {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|k| EntryJson::Pair([m[(i, k)].re, m[(i, k)].im])).collect()).collect()
}

/// An irrep in a group document.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IrrepJson {
    /// Label.
    pub label: String,
    /// Dimension.
    pub dim: usize,
    /// One matrix per group element.
    pub matrices: Vec<MatrixJson>,
}

/// A group document: `{"type":"abelian","order":n,"generators":[[a,b,c],...]}` or
/// `{"type":"explicit","elements":[...],"irreps":[...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GroupJson {
    /// Diagonal abelian subgroup.
    Abelian {
        /// Schema tag.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        schema: Option<String>,
        /// Root-of-unity order n.
        order: u32,
        /// Exponent vectors.
        generators: Vec<[i64; 3]>,
    },
    /// Explicit presentation.
    Explicit {
        /// Schema tag.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        schema: Option<String>,
        /// All elements as 3×3 matrices.
        elements: Vec<MatrixJson>,
        /// Irreducible representations.
        irreps: Vec<IrrepJson>,
    },
}

/// Round a float to an integer with the mandatory tolerance.
pub fn round_multiplicity(x: Complex64, what: &str) -> Result<i64> {
    let r = x.re.round();
    if (x - Complex64::new(r, 0.0)).norm() >= ROUNDING_TOL {
        return Err(Error::Rounding(format!("{what} = {x} is not within {ROUNDING_TOL} of an integer")));
    }
    Ok(r as i64)
}

/// The symmetric group S₃ embedded in SL₃ as σ ↦ sgn(σ)·P_σ, with its three
/// irreps (trivial, sign, standard) — a self-contained nonabelian example.
pub fn s3_signed_permutations() -> GroupData {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
    let sgn = |p: &[usize; 3]| -> f64 {
        let mut inv = 0;
        for a in 0..3 {
            for b in a + 1..3 {
                if p[a] > p[b] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    };
    let perm_matrix = |p: &[usize; 3]| DMatrix::from_fn(3, 3, |i, j| Complex64::new(if p[j] == i { 1.0 } else { 0.0 }, 0.0));
    let elements: Vec<DMatrix<Complex64>> = perms.iter().map(|p| perm_matrix(p) * Complex64::new(sgn(p), 0.0)).collect();
    // standard representation: restriction of the permutation rep to the sum-zero plane,
    // in the orthonormal basis u = (1,−1,0)/√2, w = (1,1,−2)/√6.
    let s2 = 2f64.sqrt();
    let s6 = 6f64.sqrt();
    let basis = DMatrix::from_row_slice(3, 2, &[1.0 / s2, 1.0 / s6, -1.0 / s2, 1.0 / s6, 0.0, -2.0 / s6]);
    let std: Vec<DMatrix<Complex64>> = perms
        .iter()
        .map(|p| {
            let pm = DMatrix::from_fn(3, 3, |i, j| if p[j] == i { 1.0 } else { 0.0 });
            (basis.transpose() * pm * &basis).map(|x| Complex64::new(x, 0.0))
        })
        .collect();
    let one = |v: f64| DMatrix::from_element(1, 1, Complex64::new(v, 0.0));
    let irreps = vec![
        Irrep { label: "triv".into(), dim: 1, matrices: perms.iter().map(|_| one(1.0)).collect() },
        Irrep { label: "sgn".into(), dim: 1, matrices: perms.iter().map(|p| one(sgn(p))).collect() },
        Irrep { label: "std".into(), dim: 2, matrices: std },
    ];
    GroupData::Explicit(ExplicitGroup::new(elements, irreps).expect("S3 data is consistent"))
}

/// Build the JSON document of an explicit group.
pub fn explicit_to_json(g: &ExplicitGroup) -> GroupJson {
    GroupJson::Explicit {
        schema: Some(crate::io::SCHEMA.into()),
        elements: g.elements.iter().map(matrix_to_json).collect(),
        irreps: g
            .irreps
            .iter()
            .map(|r| IrrepJson { label: r.label.clone(), dim: r.dim, matrices: r.matrices.iter().map(matrix_to_json).collect() })
            .collect(),
    }
}

/// Reject duplicate irrep labels.
pub(crate) fn unique_labels(labels: &[String]) -> Result<()> {
    let mut m = BTreeMap::new();
    for l in labels {
        if m.insert(l.clone(), ()).is_some() {
            return Err(Error::Group(format!("duplicate irrep label `{l}`")));
        }
    }
    Ok(())
}
