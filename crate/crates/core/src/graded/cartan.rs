//! Cartan polynomial, its inverse, and the CY3 Hilbert-series identity.

use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::scalar::qi;
use crate::series::{MatrixSeries, Series};

/// The Cartan polynomial p(V,Φ;t) = 𝟙 − h(V;t) + tᵐ·h(V;t⁻¹)ᵀ − tᵐ·𝟙 as a
/// matrix series of order `m`.
///
/// Here `h(V;t)_{ij}` counts edges `i → j` weighted by `t^deg`; the dual
/// generators x* run `target(x) → source(x)`, hence the transpose.
pub fn cartan_polynomial(q: &Quiver, m: i32) -> Result<MatrixSeries> {
    if m <= 2 {
        return Err(Error::Domain(format!("potential degree must exceed 2, got {}", m)));
    }
    if !q.positively_graded() {
        return Err(Error::Domain("Cartan polynomial needs positive edge degrees".into()));
    }
    let n = q.num_vertices();
    let order = m as usize;
    let mut p = MatrixSeries::identity(n, order);
    for i in 0..n {
        let s = p.entry(i, i).sub(&Series::monomial(order, order, qi(1)));
        *p.entry_mut(i, i) = s;
    }
    for e in q.edges() {
        if e.deg >= m {
            return Err(Error::Domain(format!("edge `{}` has degree ≥ m", e.name)));
        }
        let a = p.entry(e.src, e.tgt).sub(&Series::monomial(order, e.deg as usize, qi(1)));
        *p.entry_mut(e.src, e.tgt) = a;
        let b = p.entry(e.tgt, e.src).add(&Series::monomial(order, (m - e.deg) as usize, qi(1)));
        *p.entry_mut(e.tgt, e.src) = b;
    }
    Ok(p)
}

/// Truncated inverse p⁻¹ to order `n`.
pub fn hilbert_from_cartan(p: &MatrixSeries, n: usize) -> Result<MatrixSeries> {
    p.with_order(n).inverse()
}

/// First disagreement between two matrix series.
#[derive(Clone, Debug, PartialEq)]
pub struct Discrepancy {
    /// Degree.
    pub degree: usize,
    /// Row vertex.
    pub i: usize,
    /// Column vertex.
    pub j: usize,
    /// Value from the oracle.
    pub oracle: String,
    /// Value predicted by the Cartan inverse.
    pub predicted: String,
}

/// First `(degree, i, j)` where two series differ, scanning by degree.
pub fn first_discrepancy(a: &MatrixSeries, b: &MatrixSeries) -> Option<Discrepancy> {
    let order = a.order().min(b.order());
    for d in 0..=order {
        for i in 0..a.size() {
            for j in 0..a.size() {
                let (x, y) = (a.entry(i, j).coeff(d), b.entry(i, j).coeff(d));
                if x != y {
                    return Some(Discrepancy { degree: d, i, j, oracle: x.to_string(), predicted: y.to_string() });
                }
            }
        }
    }
    None
}

/// Outcome of comparing graded dimensions with p⁻¹.
#[derive(Clone, Debug)]
pub struct HilbertReport {
    /// Truncation order.
    pub order: usize,
    /// Graded dimensions of the quotient.
    pub oracle: MatrixSeries,
    /// Cartan-inverse prediction.
    pub predicted: MatrixSeries,
    /// First mismatch, if any.
    pub discrepancy: Option<Discrepancy>,
}

impl HilbertReport {
    /// Whether the identity held to the order.
    pub fn pass(&self) -> bool {
        self.discrepancy.is_none()
    }
}

/// Compare `oracle` against p⁻¹.
pub fn compare_with_cartan(q: &Quiver, m: i32, oracle: &MatrixSeries) -> Result<HilbertReport> {
    let p = cartan_polynomial(q, m)?;
    let predicted = hilbert_from_cartan(&p, oracle.order())?;
    let discrepancy = first_discrepancy(oracle, &predicted);
    Ok(HilbertReport { order: oracle.order(), oracle: oracle.clone(), predicted, discrepancy })
}
