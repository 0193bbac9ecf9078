use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One step of the three-term recurrence:
/// `L_{k+1} = ((2k+1+alpha-r) L_k - (k+alpha) L_{k-1}) / (k+1)`.
pub fn laguerre_recurrence_step(k: usize, alpha: f64, r: f64, lk: f64, lkm1: f64) -> f64 {
    let kf = k as f64;
    ((2.0 * kf + 1.0 + alpha - r) * lk - (kf + alpha) * lkm1) / (kf + 1.0)
}

/// Generalized Laguerre polynomial `L_n^{(alpha)}(r)` by forward recurrence.
pub fn laguerre(n: usize, alpha: f64, r: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 0..n {
        let next = laguerre_recurrence_step(k, alpha, r, cur, prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Admissible window for the Plancherel–Rotach main terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PrRegime {
    /// `r = (4n+2alpha+2) cos^2 theta` with `eps0 <= theta <= pi/2 - eps/n`.
    Oscillatory { eps0: f64, eps: f64 },
    /// `r = (4n+2alpha+2) cosh^2 theta` with `eps <= theta <= omega`.
    Exponential { eps: f64, omega: f64 },
}

impl PrRegime {
    pub fn oscillatory() -> Self {
        Self::Oscillatory { eps0: 0.05, eps: 1.0 }
    }

    pub fn exponential() -> Self {
        Self::Exponential {
            eps: 0.05,
            omega: 3.0,
        }
    }

    fn check(&self, n: usize, theta: f64) -> Result<()> {
        let ok = match *self {
            Self::Oscillatory { eps0, eps } => n > 0 && theta >= eps0 && theta <= PI / 2.0 - eps / n as f64,
            Self::Exponential { eps, omega } => eps > 0.0 && theta >= eps && theta <= omega,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::DomainError(format!(
                "theta = {theta} outside {self:?} window for n = {n}"
            )))
        }
    }
}

/// The point `r` at which the main term approximates `e^{-r/2} L_n^{(alpha)}(r)`.
pub fn plancherel_rotach_argument(n: usize, alpha: f64, theta: f64, regime: &PrRegime) -> f64 {
    let scale = 4.0 * n as f64 + 2.0 * alpha + 2.0;
    match regime {
        PrRegime::Oscillatory { .. } => scale * theta.cos().powi(2),
        PrRegime::Exponential { .. } => scale * theta.cosh().powi(2),
    }
}

/// Main term of the Plancherel–Rotach asymptotics of `e^{-r/2} L_n^{(alpha)}(r)`,
/// without the `O(1/n)` remainder.
pub fn plancherel_rotach(n: usize, alpha: f64, theta: f64, regime: &PrRegime) -> Result<f64> {
    regime.check(n, theta)?;
    let r = plancherel_rotach_argument(n, alpha, theta, regime);
    let nf = n as f64;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let shift = nf + (alpha + 1.0) / 2.0;
    let power = nf.powf(alpha / 2.0 - 0.25) / r.powf(alpha / 2.0 + 0.25);
    let value = match regime {
        PrRegime::Oscillatory { .. } => {
            let phase = shift * ((2.0 * theta).sin() - 2.0 * theta) + 0.75 * PI;
            power * phase.sin() / (PI * theta.sin()).sqrt()
        }
        PrRegime::Exponential { .. } => {
            let decay = (shift * (2.0 * theta - (2.0 * theta).sinh())).exp();
            0.5 * power * decay / (PI * theta.sinh()).sqrt()
        }
    };
    Ok(sign * value)
}

/// `e^{-r/2} L_n^{(alpha)}(r)` at the Plancherel–Rotach point, for comparison.
pub fn plancherel_rotach_exact(n: usize, alpha: f64, theta: f64, regime: &PrRegime) -> f64 {
    let r = plancherel_rotach_argument(n, alpha, theta, regime);
    (-r / 2.0).exp() * laguerre(n, alpha, r)
}

/// Amplitude `n^{alpha/2-1/4} r^{-alpha/2-1/4} / sqrt(pi sin theta)` of the
/// oscillatory main term.
pub fn plancherel_rotach_amplitude(n: usize, alpha: f64, theta: f64) -> f64 {
    let r = plancherel_rotach_argument(n, alpha, theta, &PrRegime::oscillatory());
    (n as f64).powf(alpha / 2.0 - 0.25) / r.powf(alpha / 2.0 + 0.25) / (PI * theta.sin()).sqrt()
}

/// Error of the oscillatory main term relative to its amplitude. A pointwise
/// relative error is meaningless near the zeros of the oscillation.
pub fn plancherel_rotach_error(n: usize, alpha: f64, theta: f64) -> Result<f64> {
    let osc = PrRegime::oscillatory();
    let approx = plancherel_rotach(n, alpha, theta, &osc)?;
    let exact = plancherel_rotach_exact(n, alpha, theta, &osc);
    Ok((approx - exact).abs() / plancherel_rotach_amplitude(n, alpha, theta))
}
