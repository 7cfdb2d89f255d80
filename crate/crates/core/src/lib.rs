//! High-precision elliptic trilogarithms, Eisenstein–Kronecker lattice
//! sums, three-variable Mahler measures of K3 families, and the L-values
//! that appear in their closed forms.

pub mod curves;
pub mod elliptic;
pub mod error;
pub mod lfunctions;
pub mod mahler;
pub mod modular;
pub mod numeric;
pub mod polylog;
pub mod relations;

pub use error::{Error, Result};
pub use numeric::{BigComplex, BigReal, PrecisionCtx};
