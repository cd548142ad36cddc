//! Graded invariants of 𝔄(T_R V, Φ): Hilbert series, the Cartan polynomial,
//! the CY3 identity h(𝔄;t) = p(V,Φ;t)⁻¹, the extended cotangent complex and
//! the ζ-characteristic.

mod cartan;
mod cotangent;
mod filtered;
mod quotient;
mod zeta;

pub use cartan::{cartan_polynomial, compare_with_cartan, first_discrepancy, hilbert_from_cartan, Discrepancy, HilbertReport};
pub use cotangent::{cotangent_complex_check, CotangentReport, DegreeReport};
pub use filtered::{filtered_dims, top_component};
pub use quotient::{graded_dims_direct, AVec, BasisElem, GradedQuotient, DEFAULT_DIM_BOUND};
pub use zeta::zeta_characteristic;

use crate::error::{Error, Result};
use crate::linalg::{Field, PrimeField, Rationals};
use crate::poly::CyclicPoly;
use crate::scalar::Coeff;
use crate::series::MatrixSeries;

/// Exact graded dimensions dim 1_i 𝔄_n 1_j for n ≤ `order`, computed over
/// the given field.
pub fn graded_dims<K: Coeff, F: Field>(phi: &CyclicPoly<K>, field: F, order: usize) -> Result<MatrixSeries> {
    Ok(GradedQuotient::new(phi, field, order)?.hilbert_series())
}

/// Graded dimensions over a prime field, confirmed by an exact rational pass.
pub fn graded_dims_certified<K: Coeff>(phi: &CyclicPoly<K>, prime: PrimeField, order: usize) -> Result<MatrixSeries> {
    let fast = graded_dims(phi, prime.clone(), order)?;
    let exact = graded_dims(phi, Rationals, order)?;
    if fast != exact {
        return Err(Error::Internal(format!(
            "rank over {} differs from the exact rank (unlucky prime)",
            prime.describe()
        )));
    }
    Ok(exact)
}

/// The necessary CY3 Hilbert identity h(𝔄;t) = p(V,Φ;t)⁻¹ to order N.
pub fn cy_hilbert_check<K: Coeff, F: Field>(phi: &CyclicPoly<K>, field: F, order: usize) -> Result<HilbertReport> {
    let gq = GradedQuotient::new(phi, field, order)?;
    compare_with_cartan(phi.quiver(), gq.potential_degree(), &gq.hilbert_series())
}
