//! JSON schemas for quivers, polynomials, potentials and representations.
//!
//! Every document carries `"schema": "ncpot/1"` on output; the field is
//! optional on input.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::path::{Cycle, Path};
use crate::poly::{CyclicPoly, NCPoly};
use crate::quiver::{Edge, Quiver};
use crate::scalar::{Coeff, Scalar};

/// Schema tag written into every document.
pub const SCHEMA: &str = "ncpot/1";

fn default_deg() -> i32 {
    1
}

/// One edge of a quiver document.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct EdgeJson {
    /// Unique name.
    pub name: String,
    /// Source vertex name.
    pub src: String,
    /// Target vertex name.
    pub tgt: String,
    /// Degree, default 1.
    #[serde(default = "default_deg")]
    pub deg: i32,
}

/// A quiver document.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct QuiverJson {
    /// Vertex names in order.
    pub vertices: Vec<String>,
    /// Edges.
    pub edges: Vec<EdgeJson>,
}

/// One term of a polynomial (`path`) or cyclic element (`cycle`).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    /// Coefficient `{"num":N,"den":D}` (or `{"re":..,"im":..}` where complex data is allowed).
    pub coeff: Scalar,
    /// Edge names of an open or closed path.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<Vec<String>>,
    /// Edge names of a cycle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<String>>,
    /// Vertex of a trivial path or trivial cycle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<String>,
}

/// A potential document: a quiver plus a cyclic element.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PotentialJson {
    /// Schema tag.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    /// The quiver.
    pub quiver: QuiverJson,
    /// Terms of the potential.
    pub potential: Vec<TermJson>,
}

/// A polynomial document.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PolyJson {
    /// Schema tag.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    /// The quiver.
    pub quiver: QuiverJson,
    /// Terms.
    pub poly: Vec<TermJson>,
}

/// Input of Poincaré integration: one polynomial per edge and a degree.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct OneFormJson {
    /// Schema tag.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    /// The quiver.
    pub quiver: QuiverJson,
    /// Components keyed by edge name; missing edges are zero.
    pub components: BTreeMap<String, Vec<TermJson>>,
    /// Target degree of the potential.
    pub degree: i32,
}

/// A complex matrix entry: a bare real number or `[re, im]`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum EntryJson {
    /// Real entry.
    Real(f64),
    /// Complex entry.
    Pair([f64; 2]),
}

impl EntryJson {
    /// As a complex number.
    pub fn value(&self) -> Complex64 {
        match *self {
            EntryJson::Real(r) => Complex64::new(r, 0.0),
            EntryJson::Pair([a, b]) => Complex64::new(a, b),
        }
    }
}

/// A matrix as rows of entries.
pub type MatrixJson = Vec<Vec<EntryJson>>;

/// A representation document.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RepJson {
    /// Schema tag.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    /// Dimension per vertex name.
    pub dims: BTreeMap<String, usize>,
    /// Matrix per edge name.
    pub matrices: BTreeMap<String, MatrixJson>,
}

/// Convert a matrix to JSON rows of `[re, im]` pairs.
pub fn matrix_to_json(rows: usize, cols: usize, at: impl Fn(usize, usize) -> Complex64) -> MatrixJson {
    (0..rows)
        .map(|i| (0..cols).map(|j| {
            let z = at(i, j);
            EntryJson::Pair([z.re, z.im])
        }).collect())
        .collect()
}

/// Build a quiver from its document.
pub fn quiver_from_json(j: &QuiverJson) -> Result<Quiver> {
    let mut vi = BTreeMap::new();
    for (i, v) in j.vertices.iter().enumerate() {
        vi.insert(v.as_str(), i);
    }
    let mut edges = Vec::with_capacity(j.edges.len());
    for e in &j.edges {
        let src = *vi.get(e.src.as_str()).ok_or_else(|| Error::UnknownVertex(e.src.clone()))?;
        let tgt = *vi.get(e.tgt.as_str()).ok_or_else(|| Error::UnknownVertex(e.tgt.clone()))?;
        if e.deg < 0 {
            return Err(Error::InvalidQuiver(format!("edge `{}` has negative degree", e.name)));
        }
        edges.push(Edge { name: e.name.clone(), src, tgt, deg: e.deg });
    }
    Quiver::from_parts(j.vertices.clone(), edges)
}

/// Document for a quiver.
pub fn quiver_to_json(q: &Quiver) -> QuiverJson {
    QuiverJson {
        vertices: q.vertices().to_vec(),
        edges: q
            .edges()
            .iter()
            .map(|e| EdgeJson {
                name: e.name.clone(),
                src: q.vertices()[e.src].clone(),
                tgt: q.vertices()[e.tgt].clone(),
                deg: e.deg,
            })
            .collect(),
    }
}

fn names_to_ids(q: &Quiver, names: &[String]) -> Result<Vec<usize>> {
    names.iter().map(|n| q.edge_id(n)).collect()
}

fn resolve_vertex(q: &Quiver, v: &Option<String>) -> Result<usize> {
    match v {
        Some(name) => q.vertex_id(name),
        None if q.num_vertices() == 1 => Ok(0),
        None => Err(Error::Json("trivial term needs a `vertex` field".into())),
    }
}

/// Parse polynomial terms (each must use `path`).
pub fn poly_from_terms<K: Coeff>(q: &Arc<Quiver>, terms: &[TermJson]) -> Result<NCPoly<K>> {
    let mut p = NCPoly::zero(q);
    for t in terms {
        let names = t
            .path
            .as_ref()
            .or(t.cycle.as_ref())
            .ok_or_else(|| Error::Json("term needs a `path` field".into()))?;
        let path = if names.is_empty() {
            Path::trivial(resolve_vertex(q, &t.vertex)?)
        } else {
            Path::new(q, names_to_ids(q, names)?)?
        };
        p.add_term(path, K::from_scalar(&t.coeff)?);
    }
    Ok(p)
}

/// Parse cyclic terms (each uses `cycle`; `path` is accepted if closed).
pub fn cyclic_from_terms<K: Coeff>(q: &Arc<Quiver>, terms: &[TermJson]) -> Result<CyclicPoly<K>> {
    let mut c = CyclicPoly::zero(q);
    for t in terms {
        let names = t
            .cycle
            .as_ref()
            .or(t.path.as_ref())
            .ok_or_else(|| Error::Json("term needs a `cycle` field".into()))?;
        let cy = if names.is_empty() {
            Cycle::trivial(resolve_vertex(q, &t.vertex)?)
        } else {
            Cycle::new(q, names_to_ids(q, names)?)?
        };
        c.add_term(cy, K::from_scalar(&t.coeff)?);
    }
    Ok(c)
}

fn path_names(q: &Quiver, p: &Path) -> Vec<String> {
    p.edges().iter().map(|&e| q.edge(e).name.clone()).collect()
}

/// Terms of a polynomial.
pub fn poly_to_terms<K: Coeff>(p: &NCPoly<K>) -> Vec<TermJson> {
    let q = p.quiver();
    p.terms()
        .map(|(path, c)| TermJson {
            coeff: c.to_scalar(),
            path: Some(path_names(q, path)),
            cycle: None,
            vertex: path.is_trivial().then(|| q.vertices()[path.start()].clone()),
        })
        .collect()
}

/// Terms of a cyclic element.
pub fn cyclic_to_terms<K: Coeff>(c: &CyclicPoly<K>) -> Vec<TermJson> {
    let q = c.quiver();
    c.terms()
        .map(|(cy, k)| TermJson {
            coeff: k.to_scalar(),
            path: None,
            cycle: Some(path_names(q, &cy.to_path())),
            vertex: cy.is_trivial().then(|| q.vertices()[cy.vertex()].clone()),
        })
        .collect()
}

/// Parse a potential document.
pub fn potential_from_json<K: Coeff>(j: &PotentialJson) -> Result<(Arc<Quiver>, CyclicPoly<K>)> {
    let q = Arc::new(quiver_from_json(&j.quiver)?);
    let p = cyclic_from_terms(&q, &j.potential)?;
    Ok((q, p))
}

/// Document for a potential.
pub fn potential_to_json<K: Coeff>(c: &CyclicPoly<K>) -> PotentialJson {
    PotentialJson {
        schema: Some(SCHEMA.to_string()),
        quiver: quiver_to_json(c.quiver()),
        potential: cyclic_to_terms(c),
    }
}

/// Document for a polynomial.
pub fn poly_to_json<K: Coeff>(p: &NCPoly<K>) -> PolyJson {
    PolyJson { schema: Some(SCHEMA.to_string()), quiver: quiver_to_json(p.quiver()), poly: poly_to_terms(p) }
}

/// Parse a potential from JSON text.
pub fn parse_potential<K: Coeff>(text: &str) -> Result<(Arc<Quiver>, CyclicPoly<K>)> {
    let j: PotentialJson = serde_json::from_str(text)?;
    potential_from_json(&j)
}

/// Read a potential file.
pub fn read_potential<K: Coeff>(path: impl AsRef<std::path::Path>) -> Result<(Arc<Quiver>, CyclicPoly<K>)> {
    let text = std::fs::read_to_string(path.as_ref())?;
    parse_potential(&text).map_err(|e| match e {
        Error::Json(m) => Error::Json(format!("{}: {}", path.as_ref().display(), m)),
        other => other,
    })
}

/// Parse a one-form document into per-edge components and the degree.
pub fn one_form_from_json<K: Coeff>(j: &OneFormJson) -> Result<(Arc<Quiver>, Vec<NCPoly<K>>, i32)> {
    let q = Arc::new(quiver_from_json(&j.quiver)?);
    let mut fs: Vec<NCPoly<K>> = (0..q.num_edges()).map(|_| NCPoly::zero(&q)).collect();
    for (name, terms) in &j.components {
        let x = q.edge_id(name)?;
        fs[x] = poly_from_terms(&q, terms)?;
    }
    Ok((q, fs, j.degree))
}
