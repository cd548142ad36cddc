//! Finite quivers with graded edges.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a vertex inside its [`Quiver`].
pub type VertexId = usize;
/// Index of an edge inside its [`Quiver`].
pub type EdgeId = usize;

/// A graded arrow `src → tgt`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    /// Unique name.
    pub name: String,
    /// Source vertex.
    pub src: VertexId,
    /// Target vertex.
    pub tgt: VertexId,
    /// Degree (nonnegative for ordinary quivers; the derived super quiver
    /// also carries the degree −1 loops τ).
    pub deg: i32,
}

/// A finite quiver: ordered vertices and named, graded edges.
///
/// The one-vertex quiver with `n` loops is the free algebra on `n` letters.
#[derive(Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    edge_index: HashMap<String, EdgeId>,
    vertex_index: HashMap<String, VertexId>,
    rank: Vec<usize>,
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Quiver")
            .field("vertices", &self.vertices)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Quiver {
    /// Build a quiver from vertex names and `(name, src, tgt, deg)` edges.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(&str, &str, &str, i32)]) -> Result<Self> {
        let vs: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut vi = HashMap::new();
        for (i, v) in vs.iter().enumerate() {
            if vi.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex `{}`", v)));
            }
        }
        let mut es = Vec::with_capacity(edges.len());
        for &(name, s, t, deg) in edges {
            let src = *vi.get(s).ok_or_else(|| Error::UnknownVertex(s.to_string()))?;
            let tgt = *vi.get(t).ok_or_else(|| Error::UnknownVertex(t.to_string()))?;
            if deg < 0 {
                return Err(Error::InvalidQuiver(format!("edge `{}` has negative degree", name)));
            }
            es.push(Edge { name: name.to_string(), src, tgt, deg });
        }
        Self::from_parts(vs, es)
    }

    /// One vertex `v0` with the given loops, all of degree 1: the free algebra.
    pub fn free(names: &[&str]) -> Self {
        let edges: Vec<(&str, &str, &str, i32)> = names.iter().map(|n| (*n, "v0", "v0", 1)).collect();
        Self::new(&["v0"], &edges).expect("valid free quiver")
    }

    /// One vertex `v0` with loops of the given degrees.
    pub fn free_graded(names: &[(&str, i32)]) -> Result<Self> {
        let edges: Vec<(&str, &str, &str, i32)> = names.iter().map(|(n, d)| (*n, "v0", "v0", *d)).collect();
        Self::new(&["v0"], &edges)
    }

    /// Assemble from already-resolved parts; degrees may be negative.
    pub(crate) fn from_parts(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidQuiver("a quiver needs at least one vertex".into()));
        }
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex `{}`", v)));
            }
        }
        let mut edge_index = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            if e.src >= vertices.len() || e.tgt >= vertices.len() {
                return Err(Error::InvalidQuiver(format!("edge `{}` has an undeclared endpoint", e.name)));
            }
            if e.name.is_empty() {
                return Err(Error::InvalidQuiver("empty edge name".into()));
            }
            if edge_index.insert(e.name.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate edge `{}`", e.name)));
            }
        }
        let mut order: Vec<EdgeId> = (0..edges.len()).collect();
        order.sort_by(|&a, &b| edges[a].name.cmp(&edges[b].name));
        let mut rank = vec![0; edges.len()];
        for (r, &e) in order.iter().enumerate() {
            rank[e] = r;
        }
        Ok(Quiver { vertices, edges, edge_index, vertex_index, rank })
    }

    /// Vertex names in declaration order.
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    /// Edges in declaration order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }
    /// Number of vertices.
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }
    /// Number of edges.
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }
    /// The edge with the given id.
    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }
    /// Look up an edge by name.
    pub fn edge_id(&self, name: &str) -> Result<EdgeId> {
        self.edge_index.get(name).copied().ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }
    /// Look up a vertex by name.
    pub fn vertex_id(&self, name: &str) -> Result<VertexId> {
        self.vertex_index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }
    /// Position of the edge's name in the sorted list of edge names.
    pub fn name_rank(&self, e: EdgeId) -> usize {
        self.rank[e]
    }
    /// Whether every edge has strictly positive degree.
    pub fn positively_graded(&self) -> bool {
        self.edges.iter().all(|e| e.deg > 0)
    }
    /// Whether all edge names are a single character (enables compact printing).
    pub fn short_names(&self) -> bool {
        self.edges.iter().all(|e| e.name.chars().count() == 1)
    }
    /// Edge ids leaving `v`.
    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().enumerate().filter(move |(_, e)| e.src == v).map(|(i, _)| i)
    }
    /// Matrix `h(V)_{ij}` of edge counts `i → j` of each degree: `counts[d][i][j]`.
    pub fn edge_count_matrix(&self, deg: i32) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut m = vec![vec![0; n]; n];
        for e in &self.edges {
            if e.deg == deg {
                m[e.src][e.tgt] += 1;
            }
        }
        m
    }
}
