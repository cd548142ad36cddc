//! Seeded random quivers, potentials and one-forms for property tests.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::path::{Cycle, Path};
use crate::poly::CyclicPoly;
use crate::quiver::{EdgeId, Quiver, VertexId};
use crate::scalar::{qi, Rational};

/// The deterministic generator used everywhere a seed is accepted.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random quiver with 1..=`max_vertices` vertices: a directed cycle through
/// all vertices (or two loops for one vertex) plus up to `extra` random edges; all degrees 1.
pub fn random_quiver<R: Rng>(rng: &mut R, max_vertices: usize, extra: usize) -> Quiver {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges: Vec<(String, usize, usize)> = Vec::new();
    if n == 1 {
        edges.push(("a".into(), 0, 0));
        edges.push(("b".into(), 0, 0));
    } else {
        for i in 0..n {
            edges.push((String::new(), i, (i + 1) % n));
        }
    }
    for _ in 0..rng.gen_range(0..=extra) {
        let s = rng.gen_range(0..n);
        let t = rng.gen_range(0..n);
        edges.push((String::new(), s, t));
    }
    const LETTERS: &[u8] = b"abcdefghijklmnopqrsuvwxyz";
    let named: Vec<(String, usize, usize)> =
        edges.into_iter().enumerate().map(|(k, (_, s, t))| ((LETTERS[k % LETTERS.len()] as char).to_string(), s, t)).collect();
    let spec: Vec<(&str, &str, &str, i32)> =
        named.iter().map(|(e, s, t)| (e.as_str(), names[*s].as_str(), names[*t].as_str(), 1)).collect();
    Quiver::new(&names, &spec).expect("generated quiver is valid")
}

/// A random closed path of exactly `len` edges, if the walk closes within `tries` attempts.
pub fn random_cycle<R: Rng>(q: &Quiver, rng: &mut R, len: usize, tries: usize) -> Option<Cycle> {
    for _ in 0..tries {
        let start: VertexId = rng.gen_range(0..q.num_vertices());
        let mut v = start;
        let mut edges: Vec<EdgeId> = Vec::with_capacity(len);
        let mut stuck = false;
        for _ in 0..len {
            let outs: Vec<EdgeId> = q.out_edges(v).collect();
            if outs.is_empty() {
                stuck = true;
                break;
            }
            let e = outs[rng.gen_range(0..outs.len())];
            edges.push(e);
            v = q.edge(e).tgt;
        }
        if !stuck && v == start {
            return Cycle::from_path(q, &Path::new(q, edges).ok()?);
        }
    }
    None
}

/// A random homogeneous potential of degree `deg` with up to `terms` cyclic
/// words and nonzero integer coefficients in [−3, 3].
pub fn random_potential<R: Rng>(q: &Arc<Quiver>, rng: &mut R, deg: usize, terms: usize) -> CyclicPoly<Rational> {
    let mut phi = CyclicPoly::zero(q);
    for _ in 0..terms * 4 {
        if phi.len() >= terms {
            break;
        }
        if let Some(c) = random_cycle(q, rng, deg, 200) {
            let mut k = rng.gen_range(-3i64..=3);
            if k == 0 {
                k = 1;
            }
            phi.add_term(c, qi(k));
        }
    }
    phi
}

/// A random (quiver, potential) pair with at most three vertices and degree 3–5,
/// retrying until the potential is nonzero.
pub fn random_quiver_with_potential<R: Rng>(rng: &mut R) -> (Arc<Quiver>, CyclicPoly<Rational>) {
    loop {
        let q = Arc::new(random_quiver(rng, 3, 3));
        let deg = rng.gen_range(3..=5);
        let phi = random_potential(&q, rng, deg, 4);
        if !phi.is_zero() {
            return (q, phi);
        }
    }
}
