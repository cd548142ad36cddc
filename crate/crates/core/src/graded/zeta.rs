//! The ζ-characteristic ∏_s 1/det p(V,Φ;tˢ).

use crate::error::Result;
use crate::quiver::Quiver;
use crate::series::Series;

use super::cartan::cartan_polynomial;

/// ∏_{s=1}^{S} 1/det p(V,Φ;tˢ) modulo t^{N+1}.  Factors with s > N are 1
/// modulo t^{N+1}, so S ≥ N gives the full product to order N.
pub fn zeta_characteristic(q: &Quiver, m: i32, order: usize, factors: usize) -> Result<Series> {
    let p = cartan_polynomial(q, m)?.with_order(order);
    let mut acc = Series::one(order);
    for s in 1..=factors.min(order.max(1)) {
        let d = p.substitute_power(s).det()?;
        acc = acc.mul(&d.inverse()?);
    }
    Ok(acc)
}
