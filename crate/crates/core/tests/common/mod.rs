//! Shared helpers and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use ncpot::path::Path;
use ncpot::random::rng_from_seed;
use ncpot::{qi, CyclicPoly, EdgeId, NCPoly, Quiver, Rational, VertexId};
use num_traits::{Signed, ToPrimitive};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Modulus used by the test-side rank oracle (independent of the library's prime).
pub const P: u64 = 1_000_000_007;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rng_from_seed(seed)
}

/// Free algebra on the given loop names.
pub fn free(names: &[&str]) -> Arc<Quiver> {
    Arc::new(Quiver::free(names))
}

/// A random element of ℂQ: up to `terms` random walks of length < `max_len`.
pub fn random_poly<R: Rng>(q: &Arc<Quiver>, rng: &mut R, terms: usize, max_len: usize) -> NCPoly<Rational> {
    let mut a = NCPoly::zero(q);
    for _ in 0..terms {
        let mut v = rng.gen_range(0..q.num_vertices());
        let len = rng.gen_range(0..max_len.max(1));
        let start = v;
        let mut edges = Vec::new();
        for _ in 0..len {
            let outs: Vec<EdgeId> = q.out_edges(v).collect();
            if outs.is_empty() {
                break;
            }
            let e = outs[rng.gen_range(0..outs.len())];
            edges.push(e);
            v = q.edge(e).tgt;
        }
        let p = if edges.is_empty() { Path::trivial(start) } else { Path::new(q, edges).unwrap() };
        let c = rng.gen_range(-3i64..=3);
        if c != 0 {
            a.add_term(p, qi(c));
        }
    }
    a
}

/// Occurrence-deletion oracle for ∂Φ/∂x: for every occurrence of x in every
/// cyclic word, read the word starting just after the deleted letter.
pub fn brute_cyclic_derive(phi: &CyclicPoly<Rational>, x: EdgeId) -> NCPoly<Rational> {
    let q = phi.quiver();
    let mut out = NCPoly::zero(q);
    for (c, k) in phi.terms() {
        let w = c.edges();
        for s in 0..w.len() {
            if w[s] != x {
                continue;
            }
            let word: Vec<EdgeId> = w[s + 1..].iter().chain(w[..s].iter()).copied().collect();
            let p = if word.is_empty() { Path::trivial(q.edge(x).tgt) } else { Path::new(q, word).unwrap() };
            out.add_term(p, k.clone());
        }
    }
    out
}

fn modp(r: &Rational) -> u64 {
    let p = num_bigint::BigInt::from(P);
    let n = ((r.numer() % &p) + &p) % &p;
    let d = ((r.denom() % &p) + &p) % &p;
    let n = n.to_u64().unwrap();
    let d = d.abs().to_u64().unwrap();
    n * pow(d, P - 2) % P
}

fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// All paths of total degree `n` from each vertex, keyed by (start, end).
fn paths_by_degree(q: &Quiver, n: i32) -> Vec<Vec<EdgeId>> {
    fn go(q: &Quiver, v: VertexId, left: i32, cur: &mut Vec<EdgeId>, out: &mut Vec<(VertexId, Vec<EdgeId>)>, start: VertexId) {
        if left == 0 {
            out.push((start, cur.clone()));
            return;
        }
        for e in q.out_edges(v) {
            let d = q.edge(e).deg;
            if d <= left {
                cur.push(e);
                go(q, q.edge(e).tgt, left - d, cur, out, start);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    for v in 0..q.num_vertices() {
        go(q, v, n, &mut Vec::new(), &mut out, v);
    }
    out.into_iter().map(|(_, w)| w).collect()
}

fn endpoints(q: &Quiver, w: &[EdgeId], start: VertexId) -> VertexId {
    w.last().map_or(start, |&e| q.edge(e).tgt)
}

/// Independent graded-dimension oracle: dim 1_i·(ℂQ/(∂Φ))_n·1_j for n ≤ N,
/// by sparse elimination mod `P` over the span of u·(∂Φ/∂x)·v.
pub fn brute_graded_dims(phi: &CyclicPoly<Rational>, order: usize) -> Vec<Vec<Vec<usize>>> {
    let q = phi.quiver();
    let nv = q.num_vertices();
    let m = phi.homogeneous_degree().expect("homogeneous potential");
    let rels: Vec<(EdgeId, NCPoly<Rational>)> =
        (0..q.num_edges()).map(|x| (x, brute_cyclic_derive(phi, x))).filter(|(_, r)| !r.is_zero()).collect();
    let mut out = vec![vec![vec![0usize; order + 1]; nv]; nv];
    // paths of each degree with their start vertices
    let mut by_deg: Vec<Vec<(VertexId, VertexId, Vec<EdgeId>)>> = Vec::new();
    for n in 0..=order as i32 {
        let mut list = Vec::new();
        if n == 0 {
            for v in 0..nv {
                list.push((v, v, vec![]));
            }
        } else {
            for w in paths_by_degree(q, n) {
                let s = q.edge(w[0]).src;
                list.push((s, endpoints(q, &w, s), w));
            }
        }
        by_deg.push(list);
    }
    for n in 0..=order {
        let index: HashMap<&Vec<EdgeId>, usize> = by_deg[n]
            .iter()
            .enumerate()
            .filter(|(_, (_, _, w))| !w.is_empty())
            .map(|(k, (_, _, w))| (w, k))
            .collect();
        // rank per corner
        let mut pivots: Vec<Vec<HashMap<usize, BTreeMap<usize, u64>>>> = vec![vec![HashMap::new(); nv]; nv];
        let mut ranks = vec![vec![0usize; nv]; nv];
        for (x, r) in &rels {
            let rdeg = m - q.edge(*x).deg;
            for a in 0..=n {
                let b_deg = n as i32 - a as i32 - rdeg;
                if b_deg < 0 {
                    continue;
                }
                let b = b_deg as usize;
                for (us, ue, u) in &by_deg[a] {
                    if *ue != q.edge(*x).tgt {
                        continue;
                    }
                    for (vs, ve, v) in &by_deg[b] {
                        if *vs != q.edge(*x).src {
                            continue;
                        }
                        let mut row: BTreeMap<usize, u64> = BTreeMap::new();
                        for (p, c) in r.terms() {
                            let w: Vec<EdgeId> = u.iter().chain(p.edges().iter()).chain(v.iter()).copied().collect();
                            if w.is_empty() {
                                continue;
                            }
                            let col = index[&w];
                            let e = row.entry(col).or_insert(0);
                            *e = (*e + modp(c)) % P;
                        }
                        row.retain(|_, v| *v != 0);
                        let piv = &mut pivots[*us][*ve];
                        loop {
                            let Some((&lead, &lv)) = row.iter().next() else { break };
                            match piv.get(&lead) {
                                None => {
                                    let inv = pow(lv, P - 2);
                                    for val in row.values_mut() {
                                        *val = *val * inv % P;
                                    }
                                    piv.insert(lead, row.clone());
                                    ranks[*us][*ve] += 1;
                                    break;
                                }
                                Some(prow) => {
                                    for (&col, &pv) in prow {
                                        let e = row.entry(col).or_insert(0);
                                        *e = (*e + P - lv * pv % P) % P;
                                    }
                                    row.retain(|_, v| *v != 0);
                                }
                            }
                        }
                    }
                }
            }
        }
        for (s, e, _) in &by_deg[n] {
            out[*s][*e][n] += 1;
        }
        for i in 0..nv {
            for j in 0..nv {
                out[i][j][n] -= ranks[i][j];
            }
        }
    }
    out
}

/// Integer power-series helpers for oracles: truncated product and inverse.
pub fn series_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut c = vec![0i64; n + 1];
    for i in 0..=n {
        for j in 0..=n - i {
            c[i + j] += a.get(i).copied().unwrap_or(0) * b.get(j).copied().unwrap_or(0);
        }
    }
    c
}

/// Inverse of an integer series with constant term 1.
pub fn series_inv(a: &[i64], n: usize) -> Vec<i64> {
    assert_eq!(a[0], 1);
    let mut b = vec![0i64; n + 1];
    b[0] = 1;
    for k in 1..=n {
        let mut s = 0;
        for i in 1..=k {
            s += a.get(i).copied().unwrap_or(0) * b[k - i];
        }
        b[k] = -s;
    }
    b
}

/// Binomial coefficient.
pub fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Integer coefficients of a library series.
pub fn ints(s: &ncpot::series::Series) -> Vec<i64> {
    s.to_integers().expect("integral series")
}
