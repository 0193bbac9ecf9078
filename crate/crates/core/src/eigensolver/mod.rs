//! Operator instances, the finite-difference spectrum and closed-form
//! eigenfunctions.

mod eigenfunction;
mod fd;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use eigenfunction::{eigenfunction, eigenfunction_split, oscillation_index, oscillation_index_split};
pub(crate) use eigenfunction::{scan_samples, sign_changes_in_x};
pub use fd::{eigen_fd, eigen_fd_unit_interval, eigen_fd_with, FdOptions, Grid};

/// One operator `G = -d^2/dx^2 + xi^2 x^2 + (nu^2 - 1/4)/x^2` on `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralProblem {
    pub nu: f64,
    pub xi: f64,
}

impl SpectralProblem {
    pub fn new(nu: f64, xi: f64) -> Result<Self> {
        if !(nu >= 0.0 && nu.is_finite()) {
            return Err(Error::InvalidParams(format!("nu must be >= 0, got {nu}")));
        }
        if !(xi > 0.0 && xi.is_finite()) {
            return Err(Error::InvalidParams(format!("xi must be > 0, got {xi}")));
        }
        Ok(Self { nu, xi })
    }

    /// Kummer parameter `b = 1 + nu`.
    pub fn b(&self) -> f64 {
        1.0 + self.nu
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    KummerRoot,
    FiniteDifference,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::KummerRoot => "kummer",
            Method::FiniteDifference => "fd",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenResult {
    pub k: usize,
    pub lambda: f64,
    pub lambda_tilde: f64,
    pub a_zero: f64,
    pub kappa_zero: f64,
    pub method: Method,
    pub residual: f64,
    pub error_est: f64,
    /// `lambda_tilde - mu(k, nu)`. For Kummer roots this is formed from the
    /// split representation of the a-zero and keeps its relative accuracy
    /// even when it is far below `lambda_tilde * f64::EPSILON`.
    pub delta: f64,
}

/// `mu_k = 4k + 2(1 + nu)`, the eigenvalues of the half-line operator.
pub fn mu(k: usize, nu: f64) -> f64 {
    4.0 * k as f64 + 2.0 * (1.0 + nu)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_examples() {
        assert_eq!(mu(0, 0.0), 2.0);
        assert_eq!(mu(3, 0.5), 15.0);
        for k in 0..20 {
            assert!((mu(k + 1, 1.3) - mu(k, 1.3) - 4.0).abs() < 1e-13);
        }
    }

    #[test]
    fn problem_validation() {
        assert!(SpectralProblem::new(-0.1, 1.0).is_err());
        assert!(SpectralProblem::new(0.0, 0.0).is_err());
        assert_eq!(SpectralProblem::new(0.5, 3.0).unwrap().b(), 1.5);
    }
}
