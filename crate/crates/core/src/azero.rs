//! Zeros of `a -> M(a, b, xi)` and their correspondence with eigenvalues.
//!
//! An a-zero is stored as `a = -m - t` with an integer anchor `m` and an
//! offset `t` in `[0, 1.25]`, both exact. Near the harmonic-oscillator
//! levels `a = -k` the offset can be far below `f64::EPSILON`, and this
//! split keeps the gap `-a - k` fully resolved.

use serde::{Deserialize, Serialize};

use crate::eigensolver::{mu, scan_samples, sign_changes_in_x, EigenResult, Method, SpectralProblem};
use crate::error::{Error, Result};
use crate::precision::{PrecisionPolicy, SplitReal};
use crate::specfun::{bessel_zero, kummer_m_split};

/// Initial step of the downward sign scan in `a`.
pub const SCAN_STEP: f64 = 0.25;
/// Number of step halvings tried before giving up.
const MAX_HALVINGS: usize = 4;
const MAX_BISECTIONS: usize = 200;

/// `lambda = 2 xi (1 + nu) - 4 xi a`.
pub fn a_to_lambda(a: f64, nu: f64, xi: f64) -> f64 {
    2.0 * xi * (1.0 + nu) - 4.0 * xi * a
}

/// Inverse of [`a_to_lambda`].
pub fn lambda_to_a(lambda: f64, nu: f64, xi: f64) -> f64 {
    -(lambda - 2.0 * xi * (1.0 + nu)) / (4.0 * xi)
}

/// `kappa = b/2 - a`.
pub fn a_to_kappa(a: f64, b: f64) -> f64 {
    b / 2.0 - a
}

/// An interval in `a` whose endpoint values of `M(., b, xi)` have certified,
/// opposite signs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo_sign: i8,
    pub f_hi_sign: i8,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AZero {
    pub k: usize,
    /// Nearest double to the zero.
    pub a: f64,
    pub kappa: f64,
    pub lambda: f64,
    /// Scan bracket; exactly one zero lies inside.
    pub bracket: Bracket,
    /// `|M(a, b, xi)|` at the returned zero.
    pub refinement_residual: f64,
    /// Integer anchor `m` of `a = -m - offset`.
    pub anchor: u64,
    /// Offset in `[0, 1.25]`; the zero lies in `offset +- offset_halfwidth`.
    pub offset: f64,
    pub offset_halfwidth: f64,
    /// `-a - k`, formed without cancellation. Positive iff `a < -k`.
    pub excess: f64,
}

impl AZero {
    /// Exact split form of the zero.
    pub fn split(&self) -> SplitReal {
        SplitReal::new(-(self.anchor as f64), -self.offset)
    }

    /// `lambda / xi - mu_k = 4 (-a - k)`.
    pub fn delta(&self) -> f64 {
        4.0 * self.excess
    }
}

/// Certified sign of `M(a, b, xi)`; 0 for an exact zero.
fn certified_sign(a: SplitReal, b: f64, xi: f64, policy: &PrecisionPolicy) -> Result<i8> {
    let m = kummer_m_split(a, b, xi, policy, true)?;
    if m.is_exact_zero() {
        return Ok(0);
    }
    m.sign().ok_or(Error::AmbiguousSign {
        noise: m.abs_err,
        bits: m.bits,
    })
}

/// Lowest `a` the scan may reach: eigenvalue `count - 1` satisfies
/// `lambda <= j_{nu,count-1}^2 + xi^2`.
pub fn scan_floor(b: f64, xi: f64, count: usize, policy: &PrecisionPolicy) -> Result<f64> {
    let nu = b - 1.0;
    let j = bessel_zero(nu, count - 1, policy)?;
    Ok(lambda_to_a(j * j + xi * xi, nu, xi))
}

fn scan(
    b: f64,
    xi: f64,
    count: usize,
    step: f64,
    floor: f64,
    policy: &PrecisionPolicy,
) -> Result<Vec<Bracket>> {
    let mut brackets = Vec::with_capacity(count);
    let mut prev_a = 0.0;
    let mut prev_s = certified_sign(SplitReal::from(0.0), b, xi, policy)?;
    let mut j = 1u64;
    while brackets.len() < count {
        let a = -(j as f64) * step;
        if a < floor - step {
            return Err(Error::BracketingFailure(format!(
                "found {} of {count} a-zeros above the floor a = {floor}",
                brackets.len()
            )));
        }
        let mut s = certified_sign(SplitReal::from(a), b, xi, policy)?;
        let mut a = a;
        if s == 0 {
            // The scan point is itself a zero; bracket it with the next point.
            j += 1;
            a = -(j as f64) * step;
            s = certified_sign(SplitReal::from(a), b, xi, policy)?;
            if s != -prev_s {
                return Err(Error::BracketingFailure(format!(
                    "no sign change across the exact zero at a = {}",
                    a + step
                )));
            }
        }
        if s != prev_s {
            brackets.push(Bracket {
                lo: a,
                hi: prev_a,
                f_lo_sign: s,
                f_hi_sign: prev_s,
            });
        }
        prev_a = a;
        prev_s = s;
        j += 1;
    }
    Ok(brackets)
}

/// Number of a-zeros above `a_end`, by counting the zeros in `(0, 1]` of the
/// solution `x -> M(a_end, b, xi x^2)` (Sturm oscillation).
fn zeros_above(a_end: f64, b: f64, xi: f64, policy: &PrecisionPolicy) -> Result<usize> {
    let problem = SpectralProblem::new(b - 1.0, xi)?;
    let n = scan_samples(a_to_lambda(a_end, b - 1.0, xi));
    sign_changes_in_x(problem, a_end.into(), 1.0, n, policy)
}

fn refine(k: usize, bracket: Bracket, b: f64, xi: f64, policy: &PrecisionPolicy) -> Result<AZero> {
    let anchor = (-bracket.hi).floor();
    let mut t_lo = -bracket.hi - anchor;
    let mut t_hi = -bracket.lo - anchor;
    let s_lo_t = bracket.f_hi_sign;
    let at = |t: f64| SplitReal::new(-anchor, -t);
    for _ in 0..MAX_BISECTIONS {
        if t_hi - t_lo <= policy.target_tol * t_hi.min(1.0) {
            break;
        }
        let mid = if t_lo == 0.0 {
            t_hi / 65536.0
        } else if t_hi > 2.0 * t_lo {
            (t_lo * t_hi).sqrt()
        } else {
            0.5 * (t_lo + t_hi)
        };
        if mid <= t_lo || mid >= t_hi {
            break;
        }
        let m = kummer_m_split(at(mid), b, xi, policy, false)?;
        match m.sign() {
            // Indistinguishable from zero at working precision.
            None => {
                t_lo = mid;
                t_hi = mid;
                break;
            }
            Some(s) if s == s_lo_t => t_lo = mid,
            Some(_) => t_hi = mid,
        }
    }
    let t = 0.5 * (t_lo + t_hi);
    let residual = kummer_m_split(at(t), b, xi, policy, false)?.value.abs();
    let a = -anchor - t;
    Ok(AZero {
        k,
        a,
        kappa: a_to_kappa(a, b),
        lambda: 2.0 * xi * b + 4.0 * xi * (anchor + t),
        bracket,
        refinement_residual: residual,
        anchor: anchor as u64,
        offset: t,
        offset_halfwidth: 0.5 * (t_hi - t_lo),
        excess: (anchor - k as f64) + t,
    })
}

/// The `count` largest a-zeros of `M(., b, xi)`, in decreasing order.
///
/// The scan walks down from `a = 0` in steps of 1/4 (so every `-k` is a
/// scan point) until `count` sign changes are found. The total is then
/// certified by a Sturm count at the last scan point; on a mismatch the step
/// is halved. Each bracket is refined by bisection on the offset.
pub fn find_azeros(b: f64, xi: f64, count: usize, policy: &PrecisionPolicy) -> Result<Vec<AZero>> {
    if !(b >= 1.0 && b.is_finite()) {
        return Err(Error::InvalidParams(format!("b must be >= 1, got {b}")));
    }
    if !(xi > 0.0 && xi.is_finite()) {
        return Err(Error::InvalidParams(format!("xi must be > 0, got {xi}")));
    }
    if count == 0 {
        return Err(Error::InvalidParams("count must be >= 1".into()));
    }
    policy.validate()?;
    let floor = scan_floor(b, xi, count, policy)?;
    let mut step = SCAN_STEP;
    for _ in 0..=MAX_HALVINGS {
        let brackets = scan(b, xi, count, step, floor, policy)?;
        let a_end = brackets[count - 1].lo;
        if zeros_above(a_end, b, xi, policy)? == count {
            return brackets
                .into_iter()
                .enumerate()
                .map(|(k, br)| refine(k, br, b, xi, policy))
                .collect();
        }
        step /= 2.0;
    }
    Err(Error::BracketingFailure(format!(
        "Sturm count never matched the scan for b = {b}, xi = {xi}"
    )))
}

/// The `kmax + 1` lowest eigenvalues of `G` from its a-zeros.
pub fn spectrum_via_kummer(
    problem: SpectralProblem,
    kmax: usize,
    policy: &PrecisionPolicy,
) -> Result<Vec<EigenResult>> {
    let SpectralProblem { nu, xi } = problem;
    let zeros = find_azeros(problem.b(), xi, kmax + 1, policy)?;
    Ok(zeros.iter().map(|z| to_eigen(z, nu, xi)).collect())
}

pub(crate) fn to_eigen(z: &AZero, nu: f64, xi: f64) -> EigenResult {
    let lambda_tilde = 2.0 * (1.0 + nu) + 4.0 * (z.anchor as f64 + z.offset);
    debug_assert!((lambda_tilde - mu(z.k, nu) - z.delta()).abs() <= 1e-12 * lambda_tilde);
    EigenResult {
        k: z.k,
        lambda: z.lambda,
        lambda_tilde,
        a_zero: z.a,
        kappa_zero: z.kappa,
        method: Method::KummerRoot,
        residual: z.refinement_residual,
        error_est: 4.0 * xi * z.offset_halfwidth,
        delta: z.delta(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions() {
        assert_eq!(a_to_lambda(0.0, 0.5, 3.0), 9.0);
        assert_eq!(a_to_lambda(-3.0, 1.0, 2.0) / 2.0, mu(3, 1.0));
        let a = -3.7;
        assert!((lambda_to_a(a_to_lambda(a, 1.0, 10.0), 1.0, 10.0) - a).abs() < 1e-15);
        assert_eq!(a_to_kappa(0.0, 2.0), 1.0);
        assert_eq!(a_to_kappa(-4.0, 1.5), 4.75);
    }

    #[test]
    fn low_regime_zeros() {
        let p = PrecisionPolicy::default();
        let zeros = find_azeros(1.0, 40.0, 6, &p).unwrap();
        for (k, z) in zeros.iter().enumerate() {
            assert_eq!(z.k, k);
            assert!(z.excess > 0.0 && z.excess < 0.01, "k={k} excess={}", z.excess);
            assert!(z.bracket.hi <= -(k as f64));
        }
        for w in zeros.windows(2) {
            assert!(w[1].a < w[0].a);
        }
    }

    #[test]
    fn tiny_gap_resolved() {
        // xi = 50: a_1 + 1 is about -2e-17, below f64 resolution of a_1.
        let p = PrecisionPolicy::default();
        let zeros = find_azeros(1.0, 50.0, 2, &p).unwrap();
        assert_eq!(zeros[1].a, -1.0);
        assert!(zeros[1].excess > 0.0 && zeros[1].excess < 1e-15);
    }

    #[test]
    fn zero_on_scan_point() {
        // M(-1, 2, 2) = 1 - 2/2 vanishes exactly.
        let p = PrecisionPolicy::default();
        let zeros = find_azeros(2.0, 2.0, 3, &p).unwrap();
        assert_eq!(zeros[0].a, -1.0);
        assert_eq!(zeros[0].refinement_residual, 0.0);
        assert!(zeros[1].a < -2.0);
    }

    #[test]
    fn bad_arguments() {
        let p = PrecisionPolicy::default();
        assert!(find_azeros(0.5, 1.0, 1, &p).is_err());
        assert!(find_azeros(1.0, 0.0, 1, &p).is_err());
        assert!(find_azeros(1.0, 1.0, 0, &p).is_err());
    }
}
