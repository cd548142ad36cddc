//! Filtered dimensions for inhomogeneous potentials (degree filtration).

use std::collections::HashMap;

use crate::calculus::gradient;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Field, SparseVec};
use crate::path::Path;
use crate::poly::CyclicPoly;
use crate::scalar::Coeff;

use super::quotient::paths_of_degree;

/// Highest-degree homogeneous component of a potential.
pub fn top_component<K: Coeff>(phi: &CyclicPoly<K>) -> CyclicPoly<K> {
    match phi.degrees().last() {
        Some(&d) => phi.component(d),
        None => phi.clone(),
    }
}

/// dim of T_{≤n} modulo the span of all u·(∂Φ/∂x)·v of total degree ≤ n,
/// for n = 0..=order.  This bounds dim F_n 𝔄 from above and is equal to it
/// when the top-degree parts of the relations already present the
/// associated graded algebra (PBW-type deformations).
pub fn filtered_dims<K: Coeff, F: Field>(phi: &CyclicPoly<K>, field: &F, order: usize, bound: usize) -> Result<Vec<usize>> {
    let q = phi.quiver().clone();
    if !q.positively_graded() {
        return Err(Error::Domain("filtered dimensions need positive edge degrees".into()));
    }
    let grads = gradient(phi)?;
    let words: Vec<Vec<Path>> = (0..=order).map(|n| paths_of_degree(&q, n)).collect();
    let mut out = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let all: Vec<&Path> = words[..=n].iter().flatten().collect();
        if all.len() > bound {
            return Err(Error::MemoryGuard { what: format!("filtration level {}", n), dim: all.len(), bound });
        }
        let index: HashMap<&Path, usize> = all.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let mut ech = Echelon::new(field.clone());
        for (x, r) in grads.iter().enumerate() {
            let Some(&top) = r.degrees().last() else { continue };
            let top = top as usize;
            if top > n {
                continue;
            }
            let e = q.edge(x);
            for total in 0..=(n - top) {
                for a in 0..=total {
                    for u in &words[a] {
                        if u.end() != e.tgt {
                            continue;
                        }
                        for v in &words[total - a] {
                            if v.start() != e.src {
                                continue;
                            }
                            let mut row = Vec::new();
                            for (p, c) in r.terms() {
                                let w = u.concat(p).and_then(|up| up.concat(v)).expect("composable");
                                row.push((index[&w], field.from_coeff(c)?));
                            }
                            ech.insert(&SparseVec::from_pairs(field, row));
                        }
                    }
                }
            }
        }
        out.push(all.len() - ech.rank());
    }
    Ok(out)
}
