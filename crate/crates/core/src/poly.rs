//! Noncommutative polynomials in a path algebra, their cyclic quotient,
//! and tensor powers.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::path::{Cycle, Path};
use crate::quiver::{EdgeId, Quiver, VertexId};
use crate::scalar::{coeff_prefix, Coeff, Rational};

pub(crate) fn same_quiver(a: &Arc<Quiver>, b: &Arc<Quiver>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn add_into<T: Ord, K: Coeff>(map: &mut BTreeMap<T, K>, key: T, c: K) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get().clone() + c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

fn render_terms<'a, K: Coeff + 'a>(items: impl Iterator<Item = (String, &'a K)>) -> String {
    let mut out = String::new();
    for (i, (word, c)) in items.enumerate() {
        let (neg, mag) = coeff_prefix(c);
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag.is_empty() {
            out.push_str(&word);
        } else if word == "1" {
            out.push_str(&mag);
        } else {
            out.push_str(&mag);
            out.push(' ');
            out.push_str(&word);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Element of the path algebra ℂQ: a finite linear combination of paths.
#[derive(Clone)]
pub struct NCPoly<K: Coeff = Rational> {
    quiver: Arc<Quiver>,
    terms: BTreeMap<Path, K>,
}

impl<K: Coeff> PartialEq for NCPoly<K> {
    fn eq(&self, other: &Self) -> bool {
        same_quiver(&self.quiver, &other.quiver) && self.terms == other.terms
    }
}

impl<K: Coeff> fmt::Debug for NCPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly({})", self.render())
    }
}

impl<K: Coeff> fmt::Display for NCPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<K: Coeff> NCPoly<K> {
    /// The zero element.
    pub fn zero(q: &Arc<Quiver>) -> Self {
        NCPoly { quiver: q.clone(), terms: BTreeMap::new() }
    }
    /// `c · p`.
    pub fn monomial(q: &Arc<Quiver>, p: Path, c: K) -> Self {
        let mut r = Self::zero(q);
        r.add_term(p, c);
        r
    }
    /// A single edge with coefficient 1.
    pub fn edge(q: &Arc<Quiver>, e: EdgeId) -> Self {
        Self::monomial(q, Path::edge(q, e), K::one())
    }
    /// The idempotent `1_v`.
    pub fn idempotent(q: &Arc<Quiver>, v: VertexId) -> Self {
        Self::monomial(q, Path::trivial(v), K::one())
    }
    /// The unit `Σ_i 1_i`.
    pub fn unit(q: &Arc<Quiver>) -> Self {
        let mut r = Self::zero(q);
        for v in 0..q.num_vertices() {
            r.add_term(Path::trivial(v), K::one());
        }
        r
    }
    /// Build from `(path, coeff)` pairs.
    pub fn from_terms(q: &Arc<Quiver>, terms: impl IntoIterator<Item = (Path, K)>) -> Self {
        let mut r = Self::zero(q);
        for (p, c) in terms {
            r.add_term(p, c);
        }
        r
    }
    /// The quiver this element lives over.
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }
    /// Nonzero terms in path order.
    pub fn terms(&self) -> impl Iterator<Item = (&Path, &K)> {
        self.terms.iter()
    }
    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    /// Whether there are no terms (the element is zero).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    /// Whether this is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    /// Coefficient of a path.
    pub fn coeff(&self, p: &Path) -> K {
        self.terms.get(p).cloned().unwrap_or_else(K::zero)
    }
    /// Add `c · p` in place.
    pub fn add_term(&mut self, p: Path, c: K) {
        add_into(&mut self.terms, p, c);
    }
    /// Add `c · other` in place.
    pub fn add_scaled(&mut self, other: &Self, c: &K) {
        assert!(same_quiver(&self.quiver, &other.quiver), "quiver mismatch");
        for (p, a) in &other.terms {
            add_into(&mut self.terms, p.clone(), a.clone() * c.clone());
        }
    }
    /// `c · self`.
    pub fn scale(&self, c: &K) -> Self {
        let mut r = Self::zero(&self.quiver);
        r.add_scaled(self, c);
        r
    }
    /// Sum, failing on quiver mismatch.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if !same_quiver(&self.quiver, &other.quiver) {
            return Err(Error::QuiverMismatch);
        }
        let mut r = self.clone();
        r.add_scaled(other, &K::one());
        Ok(r)
    }
    /// Product: bilinear extension of concatenation.  Non-composable
    /// concatenations contribute zero.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if !same_quiver(&self.quiver, &other.quiver) {
            return Err(Error::QuiverMismatch);
        }
        let mut r = Self::zero(&self.quiver);
        for (p, a) in &self.terms {
            for (s, b) in &other.terms {
                if let Some(ps) = p.concat(s) {
                    r.add_term(ps, a.clone() * b.clone());
                }
            }
        }
        Ok(r)
    }
    /// `self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(self.multiply(other)? - other.multiply(self)?)
    }
    /// Total degree if homogeneous (zero counts as homogeneous of any degree:
    /// returns `None` for zero and for inhomogeneous input).
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut degs = self.terms.keys().map(|p| p.degree(&self.quiver));
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }
    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: i32) -> Self {
        let terms = self.terms.iter().filter(|(p, _)| p.degree(&self.quiver) == d);
        Self::from_terms(&self.quiver, terms.map(|(p, c)| (p.clone(), c.clone())))
    }
    /// Distinct degrees present, ascending.
    pub fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.terms.keys().map(|p| p.degree(&self.quiver)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
    /// Convert coefficients into another ring.
    pub fn map_coeffs<L: Coeff>(&self, f: impl Fn(&K) -> L) -> NCPoly<L> {
        NCPoly::from_terms(&self.quiver, self.terms.iter().map(|(p, c)| (p.clone(), f(c))))
    }
    /// `1_i · self · 1_j`.
    pub fn corner(&self, i: VertexId, j: VertexId) -> Self {
        let terms = self.terms.iter().filter(|(p, _)| p.start() == i && p.end() == j);
        Self::from_terms(&self.quiver, terms.map(|(p, c)| (p.clone(), c.clone())))
    }
    /// Human-readable rendering, e.g. `yz - zy`.
    pub fn render(&self) -> String {
        render_terms(self.terms.iter().map(|(p, c)| (p.render(&self.quiver), c)))
    }
    /// Parse a polynomial written in edge names, e.g. `"xyz - 2 yxz + 1/2 z^2"`.
    pub fn parse(q: &Arc<Quiver>, text: &str) -> Result<Self> {
        let mut r = Self::zero(q);
        for (c, word) in parse_terms(q, text)? {
            let p = match word {
                Word::Edges(es) => Path::new(q, es)?,
                Word::Trivial(v) => Path::trivial(v),
            };
            r.add_term(p, K::from_rational(&c));
        }
        Ok(r)
    }
}

impl<K: Coeff> std::ops::Add for NCPoly<K> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("quiver mismatch")
    }
}

impl<K: Coeff> std::ops::Sub for NCPoly<K> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self.add_scaled(&rhs, &(-K::one()));
        self
    }
}

impl<K: Coeff> std::ops::Neg for NCPoly<K> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(&(-K::one()))
    }
}

impl<K: Coeff> std::ops::Mul for &NCPoly<K> {
    type Output = NCPoly<K>;
    fn mul(self, rhs: Self) -> NCPoly<K> {
        self.multiply(rhs).expect("quiver mismatch")
    }
}

/// Element of the cyclic quotient ℂQ/[ℂQ,ℂQ]: a linear combination of
/// cycles in canonical rotation.  Potentials live here.
#[derive(Clone)]
pub struct CyclicPoly<K: Coeff = Rational> {
    quiver: Arc<Quiver>,
    terms: BTreeMap<Cycle, K>,
}

impl<K: Coeff> PartialEq for CyclicPoly<K> {
    fn eq(&self, other: &Self) -> bool {
        same_quiver(&self.quiver, &other.quiver) && self.terms == other.terms
    }
}

impl<K: Coeff> fmt::Debug for CyclicPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicPoly({})", self.render())
    }
}

impl<K: Coeff> fmt::Display for CyclicPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<K: Coeff> CyclicPoly<K> {
    /// The zero class.
    pub fn zero(q: &Arc<Quiver>) -> Self {
        CyclicPoly { quiver: q.clone(), terms: BTreeMap::new() }
    }
    /// `c · [cycle]`.
    pub fn monomial(q: &Arc<Quiver>, c: Cycle, k: K) -> Self {
        let mut r = Self::zero(q);
        r.add_term(c, k);
        r
    }
    /// Build from `(cycle, coeff)` pairs.
    pub fn from_terms(q: &Arc<Quiver>, terms: impl IntoIterator<Item = (Cycle, K)>) -> Self {
        let mut r = Self::zero(q);
        for (c, k) in terms {
            r.add_term(c, k);
        }
        r
    }
    /// The quiver.
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }
    /// Nonzero terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Cycle, &K)> {
        self.terms.iter()
    }
    /// Number of nonzero classes.
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    /// Whether there are no terms (the element is zero).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    /// Whether this is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    /// Coefficient of a cycle class.
    pub fn coeff(&self, c: &Cycle) -> K {
        self.terms.get(c).cloned().unwrap_or_else(K::zero)
    }
    /// Add `k · [c]` in place.
    pub fn add_term(&mut self, c: Cycle, k: K) {
        add_into(&mut self.terms, c, k);
    }
    /// Add `k · other` in place.
    pub fn add_scaled(&mut self, other: &Self, k: &K) {
        assert!(same_quiver(&self.quiver, &other.quiver), "quiver mismatch");
        for (c, a) in &other.terms {
            add_into(&mut self.terms, c.clone(), a.clone() * k.clone());
        }
    }
    /// `k · self`.
    pub fn scale(&self, k: &K) -> Self {
        let mut r = Self::zero(&self.quiver);
        r.add_scaled(self, k);
        r
    }
    /// The projection ℂQ → ℂQ_cyc: open paths die, rotations are identified.
    pub fn project(a: &NCPoly<K>) -> Self {
        let q = a.quiver();
        let mut r = Self::zero(q);
        for (p, c) in a.terms() {
            if let Some(cy) = Cycle::from_path(q, p) {
                r.add_term(cy, c.clone());
            }
        }
        r
    }
    /// Canonical-representative section of the projection.
    pub fn lift(&self) -> NCPoly<K> {
        NCPoly::from_terms(&self.quiver, self.terms.iter().map(|(c, k)| (c.to_path(), k.clone())))
    }
    /// Total degree if homogeneous.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut degs = self.terms.keys().map(|c| c.degree(&self.quiver));
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }
    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: i32) -> Self {
        let terms = self.terms.iter().filter(|(c, _)| c.degree(&self.quiver) == d);
        Self::from_terms(&self.quiver, terms.map(|(c, k)| (c.clone(), k.clone())))
    }
    /// Distinct degrees present, ascending.
    pub fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.terms.keys().map(|c| c.degree(&self.quiver)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
    /// Convert coefficients into another ring.
    pub fn map_coeffs<L: Coeff>(&self, f: impl Fn(&K) -> L) -> CyclicPoly<L> {
        CyclicPoly::from_terms(&self.quiver, self.terms.iter().map(|(c, k)| (c.clone(), f(k))))
    }
    /// Reinterpret over an equal quiver held in a different `Arc`.
    pub fn with_quiver(&self, q: &Arc<Quiver>) -> Result<Self> {
        if !same_quiver(&self.quiver, q) {
            return Err(Error::QuiverMismatch);
        }
        Ok(CyclicPoly { quiver: q.clone(), terms: self.terms.clone() })
    }
    /// Human-readable rendering.
    pub fn render(&self) -> String {
        render_terms(self.terms.iter().map(|(c, k)| (c.render(&self.quiver), k)))
    }
    /// Parse a potential written in edge names; every word must be closed.
    pub fn parse(q: &Arc<Quiver>, text: &str) -> Result<Self> {
        let p = NCPoly::<K>::parse(q, text)?;
        if let Some((open, _)) = p.terms().find(|(p, _)| !p.is_closed()) {
            return Err(Error::NotComposable(format!("word `{}` is not a cycle", open.render(q))));
        }
        Ok(Self::project(&p))
    }
}

impl<K: Coeff> std::ops::Add for CyclicPoly<K> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.add_scaled(&rhs, &K::one());
        self
    }
}

impl<K: Coeff> std::ops::Sub for CyclicPoly<K> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self.add_scaled(&rhs, &(-K::one()));
        self
    }
}

/// Element of the r-fold tensor power: combinations of r-tuples of paths.
#[derive(Clone)]
pub struct TensorPoly<K: Coeff = Rational> {
    quiver: Arc<Quiver>,
    rank: usize,
    terms: BTreeMap<Vec<Path>, K>,
}

impl<K: Coeff> PartialEq for TensorPoly<K> {
    fn eq(&self, other: &Self) -> bool {
        same_quiver(&self.quiver, &other.quiver) && self.rank == other.rank && self.terms == other.terms
    }
}

impl<K: Coeff> fmt::Debug for TensorPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorPoly[{}]({})", self.rank, self.render())
    }
}

impl<K: Coeff> fmt::Display for TensorPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<K: Coeff> TensorPoly<K> {
    /// Zero of tensor rank `rank`.
    pub fn zero(q: &Arc<Quiver>, rank: usize) -> Self {
        assert!(rank >= 1, "tensor rank must be positive");
        TensorPoly { quiver: q.clone(), rank, terms: BTreeMap::new() }
    }
    /// Embed an NCPoly at rank 1.
    pub fn from_poly(p: &NCPoly<K>) -> Self {
        let mut r = Self::zero(p.quiver(), 1);
        for (path, c) in p.terms() {
            r.add_term(vec![path.clone()], c.clone());
        }
        r
    }
    /// The quiver.
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }
    /// Tensor rank.
    pub fn rank(&self) -> usize {
        self.rank
    }
    /// Nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Path>, &K)> {
        self.terms.iter()
    }
    /// Whether zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    /// Whether there are no terms (the element is zero).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    /// Add `c · (p₁⊗…⊗p_r)`.
    pub fn add_term(&mut self, factors: Vec<Path>, c: K) {
        assert_eq!(factors.len(), self.rank, "tensor rank mismatch");
        add_into(&mut self.terms, factors, c);
    }
    /// Add `c · other`.
    pub fn add_scaled(&mut self, other: &Self, c: &K) {
        assert_eq!(self.rank, other.rank, "tensor rank mismatch");
        for (f, a) in &other.terms {
            add_into(&mut self.terms, f.clone(), a.clone() * c.clone());
        }
    }
    /// Rank-1 element as an NCPoly.
    pub fn to_poly(&self) -> Result<NCPoly<K>> {
        if self.rank != 1 {
            return Err(Error::Shape(format!("tensor of rank {} is not a polynomial", self.rank)));
        }
        Ok(NCPoly::from_terms(&self.quiver, self.terms.iter().map(|(f, c)| (f[0].clone(), c.clone()))))
    }
    /// Apply a permutation of tensor slots: result slot `k` holds input slot `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rank);
        let mut r = Self::zero(&self.quiver, self.rank);
        for (f, c) in &self.terms {
            r.add_term(perm.iter().map(|&k| f[k].clone()).collect(), c.clone());
        }
        r
    }
    /// Swap the two factors of a rank-2 tensor.
    pub fn flip(&self) -> Self {
        assert_eq!(self.rank, 2, "flip needs rank 2");
        self.permute(&[1, 0])
    }
    /// Human-readable rendering with `⊗`.
    pub fn render(&self) -> String {
        render_terms(self.terms.iter().map(|(f, c)| {
            let s: Vec<String> = f.iter().map(|p| p.render(&self.quiver)).collect();
            (s.join("⊗"), c)
        }))
    }
}

impl<K: Coeff> std::ops::Sub for TensorPoly<K> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self.add_scaled(&rhs, &(-K::one()));
        self
    }
}

impl<K: Coeff> std::ops::Add for TensorPoly<K> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.add_scaled(&rhs, &K::one());
        self
    }
}

enum Word {
    Edges(Vec<EdgeId>),
    Trivial(VertexId),
}

/// Tokenize `"c₁ w₁ ± c₂ w₂ …"` into rational coefficients and words.
fn parse_terms(q: &Quiver, text: &str) -> Result<Vec<(Rational, Word)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    let bad = |msg: &str, at: usize| Error::Domain(format!("cannot parse `{}` at {}: {}", text, at, msg));
    let mut names: Vec<(Vec<char>, EdgeId)> =
        q.edges().iter().enumerate().map(|(i, e)| (e.name.chars().collect(), i)).collect();
    names.sort_by(|a, b| b.0.len().cmp(&a.0.len()));
    skip_ws(&mut i);
    if i == chars.len() {
        return Ok(out);
    }
    if chars[i] == '0' && chars[i + 1..].iter().all(|c| c.is_whitespace()) {
        return Ok(out);
    }
    let mut first = true;
    while i < chars.len() {
        skip_ws(&mut i);
        let mut sign = 1i64;
        if i < chars.len() && (chars[i] == '+' || chars[i] == '-' || chars[i] == '−') {
            if chars[i] != '+' {
                sign = -1;
            }
            i += 1;
        } else if !first {
            return Err(bad("expected + or -", i));
        }
        first = false;
        skip_ws(&mut i);
        // Optional coefficient.
        let mut coeff = Rational::from_integer(sign.into());
        let start = i;
        let idempotent_next = i + 1 < chars.len() && chars[i] == '1' && chars[i + 1] == '_';
        while !idempotent_next && i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let mut has_coeff = false;
        if i > start {
            let num: String = chars[start..i].iter().collect();
            let mut val = Rational::from_integer(num.parse::<num_bigint::BigInt>().unwrap());
            if i < chars.len() && chars[i] == '/' {
                i += 1;
                let ds = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(bad("expected denominator", i));
                }
                let den: String = chars[ds..i].iter().collect();
                let d = den.parse::<num_bigint::BigInt>().unwrap();
                if d.is_zero() {
                    return Err(bad("zero denominator", i));
                }
                val /= Rational::from_integer(d);
            }
            coeff *= val;
            has_coeff = true;
            skip_ws(&mut i);
            if i < chars.len() && chars[i] == '*' {
                i += 1;
                skip_ws(&mut i);
            }
        }
        // Word.
        let mut edges = Vec::new();
        let mut trivial = None;
        loop {
            if i >= chars.len() || chars[i] == '+' || chars[i] == '-' || chars[i] == '−' || chars[i].is_whitespace() {
                // Whitespace may separate factors of one word; look ahead.
                let mut j = i;
                while j < chars.len() && chars[j].is_whitespace() {
                    j += 1;
                }
                if j < chars.len() && !matches!(chars[j], '+' | '-' | '−') && !edges.is_empty() {
                    i = j;
                    continue;
                }
                i = j;
                break;
            }
            if matches!(chars[i], '.' | '·' | '*') && !edges.is_empty() {
                i += 1;
                continue;
            }
            if chars[i] == '1' && trivial.is_none() && edges.is_empty() {
                i += 1;
                if i < chars.len() && chars[i] == '_' {
                    i += 1;
                    let vs = i;
                    while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    let vname: String = chars[vs..i].iter().collect();
                    trivial = Some(q.vertex_id(&vname)?);
                } else if q.num_vertices() == 1 {
                    trivial = Some(0);
                } else {
                    return Err(bad("`1` is ambiguous in a multi-vertex quiver; write 1_v", i));
                }
                continue;
            }
            let m = names.iter().find(|(n, _)| chars[i..].starts_with(n));
            let (n, e) = m.ok_or_else(|| {
                let tail: String = chars[i..].iter().take_while(|c| c.is_alphanumeric() || **c == '*' || **c == '_').collect();
                Error::UnknownEdge(format!("{tail} (in `{text}`)"))
            })?;
            i += n.len();
            let mut pow = 1usize;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let ps = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                pow = chars[ps..i].iter().collect::<String>().parse().map_err(|_| bad("bad exponent", i))?;
            }
            for _ in 0..pow {
                edges.push(*e);
            }
        }
        let word = match (trivial, edges.is_empty()) {
            (Some(v), true) => Word::Trivial(v),
            (None, false) => Word::Edges(edges),
            (None, true) if has_coeff && q.num_vertices() == 1 => Word::Trivial(0),
            _ => return Err(bad("missing word", i)),
        };
        out.push((coeff, word));
    }
    Ok(out)
}
