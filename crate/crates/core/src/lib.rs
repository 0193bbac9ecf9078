//! Spectra of the singular harmonic operator
//! `G = -d^2/dx^2 + xi^2 x^2 + (nu^2 - 1/4) / x^2` on `(0, 1)` and the
//! parameter zeros of Kummer's function `M(a, 1 + nu, xi)`.

pub mod azero;
pub mod bounds;
pub mod eigensolver;
pub mod error;
pub mod precision;
pub mod quadrature;
pub mod quasimode;
pub mod specfun;

pub use error::{Error, Result};
pub use precision::{Certified, PrecisionPolicy, SplitReal};
