//! Paths in a quiver and cyclic words.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::quiver::{EdgeId, Quiver, VertexId};

/// A composable path, read left to right: consecutive edges `a, b` satisfy
/// `target(a) = source(b)`.  The empty path at `i` is the idempotent `1_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    edges: Vec<EdgeId>,
    start: VertexId,
    end: VertexId,
}

impl Path {
    /// The trivial path `1_v`.
    pub fn trivial(v: VertexId) -> Self {
        Path { edges: Vec::new(), start: v, end: v }
    }

    /// A single edge.
    pub fn edge(q: &Quiver, e: EdgeId) -> Self {
        let ed = q.edge(e);
        Path { edges: vec![e], start: ed.src, end: ed.tgt }
    }

    /// Build from an edge sequence, checking composability.
    pub fn new(q: &Quiver, edges: Vec<EdgeId>) -> Result<Self> {
        let first = *edges.first().ok_or_else(|| {
            Error::NotComposable("empty edge list: use Path::trivial for idempotents".into())
        })?;
        for w in edges.windows(2) {
            if q.edge(w[0]).tgt != q.edge(w[1]).src {
                return Err(Error::NotComposable(format!(
                    "`{}` then `{}`",
                    q.edge(w[0]).name,
                    q.edge(w[1]).name
                )));
            }
        }
        let last = *edges.last().unwrap();
        Ok(Path { start: q.edge(first).src, end: q.edge(last).tgt, edges })
    }

    /// Build from edge names.
    pub fn from_names(q: &Quiver, names: &[&str]) -> Result<Self> {
        let ids = names.iter().map(|n| q.edge_id(n)).collect::<Result<Vec<_>>>()?;
        Self::new(q, ids)
    }

    /// Build without checks; caller guarantees composability and endpoints.
    pub(crate) fn from_raw(edges: Vec<EdgeId>, start: VertexId, end: VertexId) -> Self {
        Path { edges, start, end }
    }

    /// The edges, left to right.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }
    /// Source vertex.
    pub fn start(&self) -> VertexId {
        self.start
    }
    /// Target vertex.
    pub fn end(&self) -> VertexId {
        self.end
    }
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }
    /// Whether there are no edges.
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
    /// Whether this is a trivial path.
    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }
    /// Whether the path starts and ends at the same vertex.
    pub fn is_closed(&self) -> bool {
        self.start == self.end
    }
    /// Sum of edge degrees.
    pub fn degree(&self, q: &Quiver) -> i32 {
        self.edges.iter().map(|&e| q.edge(e).deg).sum()
    }

    /// Concatenation `self · other`, or `None` if not composable.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.end != other.start {
            return None;
        }
        let mut edges = Vec::with_capacity(self.edges.len() + other.edges.len());
        edges.extend_from_slice(&self.edges);
        edges.extend_from_slice(&other.edges);
        Some(Path { edges, start: self.start, end: other.end })
    }

    /// The sub-path of edges `[a, b)`; endpoints are resolved in `q`.
    pub fn slice(&self, q: &Quiver, a: usize, b: usize) -> Path {
        if a == b {
            let v = if a == 0 {
                self.start
            } else {
                q.edge(self.edges[a - 1]).tgt
            };
            return Path::trivial(v);
        }
        Path {
            edges: self.edges[a..b].to_vec(),
            start: q.edge(self.edges[a]).src,
            end: q.edge(self.edges[b - 1]).tgt,
        }
    }

    /// Render with edge names.
    pub fn render(&self, q: &Quiver) -> String {
        if self.edges.is_empty() {
            return if q.num_vertices() == 1 {
                "1".to_string()
            } else {
                format!("1_{}", q.vertices()[self.start])
            };
        }
        let sep = if q.short_names() { "" } else { "·" };
        self.edges.iter().map(|&e| q.edge(e).name.as_str()).collect::<Vec<_>>().join(sep)
    }
}

/// A closed path up to rotation, stored in canonical rotation: the
/// lexicographically minimal rotation of the edge-name sequence.  The empty
/// cycle at `v` is the class of `1_v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    edges: Vec<EdgeId>,
    vertex: VertexId,
}

/// Compare rotations `a` and `b` of `w` by edge-name rank.
fn cmp_rotation(q: &Quiver, w: &[EdgeId], a: usize, b: usize) -> Ordering {
    let n = w.len();
    for k in 0..n {
        let x = q.name_rank(w[(a + k) % n]);
        let y = q.name_rank(w[(b + k) % n]);
        match x.cmp(&y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Index of the canonical (minimal, earliest on ties) rotation of `w`.
pub(crate) fn canonical_shift(q: &Quiver, w: &[EdgeId]) -> usize {
    let mut best = 0;
    for s in 1..w.len() {
        if cmp_rotation(q, w, s, best) == Ordering::Less {
            best = s;
        }
    }
    best
}

impl Cycle {
    /// The class of a closed path, canonicalized; `None` for open paths.
    pub fn from_path(q: &Quiver, p: &Path) -> Option<Cycle> {
        if !p.is_closed() {
            return None;
        }
        if p.is_trivial() {
            return Some(Cycle { edges: Vec::new(), vertex: p.start() });
        }
        let s = canonical_shift(q, p.edges());
        Some(Self::rotated(q, p.edges(), s))
    }

    fn rotated(q: &Quiver, w: &[EdgeId], s: usize) -> Cycle {
        let mut edges = Vec::with_capacity(w.len());
        edges.extend_from_slice(&w[s..]);
        edges.extend_from_slice(&w[..s]);
        let vertex = q.edge(edges[0]).src;
        Cycle { edges, vertex }
    }

    /// Build from a sequence of edges that must form a closed path.
    pub fn new(q: &Quiver, edges: Vec<EdgeId>) -> Result<Cycle> {
        let p = Path::new(q, edges)?;
        Cycle::from_path(q, &p).ok_or_else(|| {
            Error::NotComposable(format!("path `{}` is not closed", p.render(q)))
        })
    }

    /// Build from edge names.
    pub fn from_names(q: &Quiver, names: &[&str]) -> Result<Cycle> {
        let ids = names.iter().map(|n| q.edge_id(n)).collect::<Result<Vec<_>>>()?;
        Cycle::new(q, ids)
    }

    /// The unit class `1_v`.
    pub fn trivial(v: VertexId) -> Cycle {
        Cycle { edges: Vec::new(), vertex: v }
    }

    /// Already-canonical constructor; caller ensures canonical rotation.
    pub(crate) fn from_canonical(edges: Vec<EdgeId>, vertex: VertexId) -> Cycle {
        Cycle { edges, vertex }
    }

    /// Canonical edge sequence.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }
    /// Base vertex of the canonical representative.
    pub fn vertex(&self) -> VertexId {
        self.vertex
    }
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }
    /// Whether there are no edges.
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
    /// Whether this is the class of an idempotent.
    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }
    /// Sum of edge degrees.
    pub fn degree(&self, q: &Quiver) -> i32 {
        self.edges.iter().map(|&e| q.edge(e).deg).sum()
    }
    /// The canonical representative path.
    pub fn to_path(&self) -> Path {
        if self.edges.is_empty() {
            return Path::trivial(self.vertex);
        }
        Path::from_raw(self.edges.clone(), self.vertex, self.vertex)
    }
    /// Representative path rotated to start at position `s`.
    pub fn rotation(&self, q: &Quiver, s: usize) -> Path {
        if self.edges.is_empty() {
            return Path::trivial(self.vertex);
        }
        let n = self.edges.len();
        let edges: Vec<EdgeId> = (0..n).map(|k| self.edges[(s + k) % n]).collect();
        let v = q.edge(edges[0]).src;
        Path::from_raw(edges, v, v)
    }
    /// Render with edge names.
    pub fn render(&self, q: &Quiver) -> String {
        self.to_path().render(q)
    }
}
