//! Exact computer algebra for quivers with potentials.
//!
//! * [`poly`] and [`calculus`]: noncommutative polynomials in a path algebra,
//!   cyclic words, cyclic and double derivatives, Hessians, Euler and
//!   Poincaré-type integration of closed one-forms.
//! * [`graded`]: Hilbert series of graded Jacobi algebras by exact linear
//!   algebra, the Cartan-polynomial prediction for Calabi–Yau potentials,
//!   the cotangent complex and the zeta characteristic.
//! * [`superalg`]: the DG algebra 𝔇(F,Φ), Hamiltonian derivations, the
//!   necklace bracket, the BRST potential and the BV operator.
//! * [`rep`]: trace functions on representation spaces and critical points.
//! * [`mckay`]: McKay quivers of finite subgroups of SL₃ with their
//!   potentials and Molien series.
//! * [`io`] and [`cli`]: the JSON interchange format and the `ncpot` verbs.

pub mod calculus;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod graded;
pub mod io;
pub mod linalg;
pub mod mckay;
pub mod path;
pub mod poly;
pub mod quiver;
pub mod random;
pub mod rep;
pub mod scalar;
pub mod series;
pub mod superalg;

pub use error::{Error, Result};
pub use path::{Cycle, Path};
pub use poly::{CyclicPoly, NCPoly, TensorPoly};
pub use quiver::{Edge, EdgeId, Quiver, VertexId};
pub use scalar::{q, qi, Coeff, Rational, Scalar};
