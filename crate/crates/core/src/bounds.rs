//! Machine-checkable forms of the eigenvalue and a-zero bounds.

use serde::{Deserialize, Serialize};

use crate::azero::{spectrum_via_kummer, AZero};
use crate::eigensolver::{mu, EigenResult, SpectralProblem};
use crate::error::Result;
use crate::precision::PrecisionPolicy;
use crate::specfun::bessel_zero;

pub const BOUND_HARMONIC: &str = "lambda/xi > 4k + 2(1+nu)";
pub const BOUND_QUADRATIC: &str = "lambda >= c k^2";
pub const BOUND_BESSEL: &str = "|lambda - j_{nu,k}^2| <= xi^2";
pub const BOUND_AZERO_STRICT: &str = "a_k < -k";
pub const BOUND_AZERO_QUADRATIC: &str = "a_k <= -c k^2/(4 xi) + b/2";
pub const BOUND_AZERO_ENVELOPE: &str = "a_k >= -k - eps";
pub const BOUND_AZERO_ORDER: &str = "a_k decreasing";
pub const BOUND_MONOTONE: &str = "lambda_k increasing";

/// Default `delta` in the quadratic defining `c`.
pub const DEFAULT_C_DELTA: f64 = 0.1;

/// Positive root of `(1+delta)/16 c^2 + c - pi^2 = 0`.
pub fn solve_c(delta: f64) -> f64 {
    let d = 1.0 + delta;
    8.0 * ((1.0 + d * std::f64::consts::PI.powi(2) / 4.0).sqrt() - 1.0) / d
}

/// Residual of the quadratic at `c`.
pub fn c_residual(c: f64, delta: f64) -> f64 {
    (1.0 + delta) / 16.0 * c * c + c - std::f64::consts::PI.powi(2)
}

/// Smallest `k >= 1` with `c k^2 >= xi (4k + 2b)`, i.e. where the quadratic
/// bound overtakes the harmonic one.
pub fn bound2_crossover_k(xi: f64, b: f64, c: f64) -> usize {
    let disc = (4.0 * xi).powi(2) + 8.0 * c * xi * b;
    let k = ((4.0 * xi + disc.sqrt()) / (2.0 * c)).ceil().max(1.0) as usize;
    // Guard against rounding at the boundary.
    (k.saturating_sub(1).max(1)..=k + 1)
        .find(|&k| bound2_dominates(k, xi, b, c))
        .unwrap_or(k)
}

/// True when `c k^2 >= xi mu_k`.
pub fn bound2_dominates(k: usize, xi: f64, b: f64, c: f64) -> bool {
    let kf = k as f64;
    c * kf * kf >= xi * (4.0 * kf + 2.0 * b)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub k: usize,
    pub bound: String,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsEntry {
    pub nu: f64,
    pub xi: f64,
    pub kmax: usize,
    pub violations: Vec<Violation>,
    /// Indices where the check holds only trivially or carries no information.
    pub weak: Vec<usize>,
    /// Whether `lambda >= c k^2` held for every `k`, recorded even when the
    /// entry lies below the checked range of `xi`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadratic_holds: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub entries: Vec<BoundsEntry>,
    pub pass: bool,
}

impl BoundsReport {
    pub fn from_entries(entries: Vec<BoundsEntry>) -> Self {
        let pass = entries.iter().all(|e| e.violations.is_empty());
        Self { entries, pass }
    }

    pub fn merge(reports: impl IntoIterator<Item = BoundsReport>) -> Self {
        Self::from_entries(reports.into_iter().flat_map(|r| r.entries).collect())
    }

    /// Smallest grid `xi` from which `lambda >= c k^2` held at every larger
    /// grid point, from entries produced by [`verify_lower_bounds`].
    pub fn empirical_xi_check(&self) -> Option<f64> {
        let mut sorted: Vec<(f64, bool)> = self
            .entries
            .iter()
            .filter_map(|e| e.quadratic_holds.map(|h| (e.xi, h)))
            .collect();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut best = None;
        for &(xi, holds) in sorted.iter().rev() {
            if !holds {
                break;
            }
            best = Some(xi);
        }
        best
    }

    pub fn violations_named(&self, bound: &str) -> usize {
        self.entries
            .iter()
            .flat_map(|e| &e.violations)
            .filter(|v| v.bound == bound)
            .count()
    }

    pub fn violation_count(&self) -> usize {
        self.entries.iter().map(|e| e.violations.len()).sum()
    }
}

fn entry(problem: &SpectralProblem, results: &[EigenResult]) -> BoundsEntry {
    BoundsEntry {
        nu: problem.nu,
        xi: problem.xi,
        kmax: results.len().saturating_sub(1),
        violations: Vec::new(),
        weak: Vec::new(),
        quadratic_holds: None,
    }
}

/// Checks `lambda/xi > mu_k` (via the exact gap `delta`) for every result,
/// monotonicity in `k`, and `lambda >= c k^2` when `xi >= xi_check`.
pub fn verify_lower_bounds(
    results: &[EigenResult],
    problem: &SpectralProblem,
    c: f64,
    xi_check: f64,
) -> BoundsReport {
    let mut e = entry(problem, results);
    e.quadratic_holds = Some(results.iter().all(|r| r.lambda >= c * (r.k * r.k) as f64));
    for r in results {
        if !(r.delta > 0.0) {
            e.violations.push(Violation {
                k: r.k,
                bound: BOUND_HARMONIC.into(),
                lhs: r.lambda_tilde,
                rhs: mu(r.k, problem.nu),
            });
        }
        if problem.xi >= xi_check {
            let rhs = c * (r.k * r.k) as f64;
            if r.lambda < rhs {
                e.violations.push(Violation {
                    k: r.k,
                    bound: BOUND_QUADRATIC.into(),
                    lhs: r.lambda,
                    rhs,
                });
            }
            if !bound2_dominates(r.k, problem.xi, problem.b(), c) {
                e.weak.push(r.k);
            }
        }
    }
    for w in results.windows(2) {
        if !(w[1].lambda > w[0].lambda) {
            e.violations.push(Violation {
                k: w[1].k,
                bound: BOUND_MONOTONE.into(),
                lhs: w[1].lambda,
                rhs: w[0].lambda,
            });
        }
    }
    BoundsReport::from_entries(vec![e])
}

/// Checks `|lambda_k - j_{nu,k}^2| <= xi^2`. Entries with `xi^2 > lambda_k`
/// are flagged weak.
pub fn verify_bessel_window(
    results: &[EigenResult],
    problem: &SpectralProblem,
    policy: &PrecisionPolicy,
) -> Result<BoundsReport> {
    let mut e = entry(problem, results);
    let window = problem.xi * problem.xi;
    for r in results {
        let j = if problem.nu == 0.5 {
            (r.k as f64 + 1.0) * std::f64::consts::PI
        } else {
            bessel_zero(problem.nu, r.k, policy)?
        };
        let lhs = (r.lambda - j * j).abs();
        if lhs > window {
            e.violations.push(Violation {
                k: r.k,
                bound: BOUND_BESSEL.into(),
                lhs,
                rhs: window,
            });
        }
        if window > r.lambda {
            e.weak.push(r.k);
        }
    }
    Ok(BoundsReport::from_entries(vec![e]))
}

/// Checks the a-zero localization. `a_k < -k` is read off the certified
/// bracket and the exact excess; the quadratic bound is checked for all `k`
/// (indices below `sqrt(2 b xi / c)` are flagged weak); the envelope
/// `-k - envelope <= a_k` applies for `k <= floor(tau xi / 4)`.
pub fn verify_azero_bounds(
    azeros: &[AZero],
    b: f64,
    xi: f64,
    c: f64,
    tau: f64,
    envelope: f64,
) -> BoundsReport {
    let mut e = BoundsEntry {
        nu: b - 1.0,
        xi,
        kmax: azeros.len().saturating_sub(1),
        violations: Vec::new(),
        weak: Vec::new(),
        quadratic_holds: None,
    };
    let low = (tau * xi / 4.0).floor() as usize;
    let trivial_below = (2.0 * b * xi / c).sqrt();
    for z in azeros {
        let k = z.k as f64;
        if !(z.excess > 0.0 && z.bracket.hi <= -k) {
            e.violations.push(Violation {
                k: z.k,
                bound: BOUND_AZERO_STRICT.into(),
                lhs: z.a,
                rhs: -k,
            });
        }
        let rhs = -c * k * k / (4.0 * xi) + b / 2.0;
        if z.a > rhs {
            e.violations.push(Violation {
                k: z.k,
                bound: BOUND_AZERO_QUADRATIC.into(),
                lhs: z.a,
                rhs,
            });
        }
        if k < trivial_below {
            e.weak.push(z.k);
        }
        if z.k <= low && z.excess > envelope {
            e.violations.push(Violation {
                k: z.k,
                bound: BOUND_AZERO_ENVELOPE.into(),
                lhs: z.a,
                rhs: -k - envelope,
            });
        }
    }
    for w in azeros.windows(2) {
        if !(w[1].a < w[0].a || w[1].anchor as f64 + w[1].offset > w[0].anchor as f64 + w[0].offset) {
            e.violations.push(Violation {
                k: w[1].k,
                bound: BOUND_AZERO_ORDER.into(),
                lhs: w[1].a,
                rhs: w[0].a,
            });
        }
    }
    BoundsReport::from_entries(vec![e])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EntryStatus {
    Conclusive,
    /// The gap is not resolved by the certified accuracy of `lambda`.
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapEntry {
    pub xi: f64,
    pub k: usize,
    pub delta: f64,
    pub delta_err: f64,
    pub status: EntryStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioCheck {
    pub k: usize,
    pub xi_from: f64,
    pub xi_to: f64,
    pub ratio: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub nu: f64,
    pub tau: f64,
    pub xi_grid: Vec<f64>,
    pub k_list: Vec<usize>,
    pub gaps: Vec<GapEntry>,
    /// Least-squares slope of `ln delta` against `xi`, per `k`.
    pub rates: Vec<(usize, f64)>,
    /// Largest per-`k` slope.
    pub fitted_rate: f64,
    pub ratio_checks: Vec<RatioCheck>,
    pub pass: bool,
}

impl DecayReport {
    /// Largest conclusive gap, i.e. the measured envelope of `-a_k - k`
    /// after division by 4.
    pub fn max_delta(&self) -> f64 {
        self.gaps
            .iter()
            .filter(|g| g.status == EntryStatus::Conclusive)
            .map(|g| g.delta)
            .fold(0.0, f64::max)
    }
}

pub(crate) fn slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Spectral gaps `delta(xi, k) = lambda/xi - mu_k` over an ascending `xi`
/// grid for `k <= floor(tau * xi_min / 4)`, with a per-`k` decay test.
pub fn verify_exponential_gap(
    nu: f64,
    xi_grid: &[f64],
    tau: f64,
    policy: &PrecisionPolicy,
) -> Result<DecayReport> {
    use crate::error::Error;
    if xi_grid.len() < 4 || xi_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParams(
            "xi grid must be ascending with at least 4 points".into(),
        ));
    }
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::InvalidParams(format!("tau must lie in (0, 1), got {tau}")));
    }
    let kmax = (tau * xi_grid[0] / 4.0).floor() as usize;
    let k_list: Vec<usize> = (0..=kmax).collect();
    let mut gaps = Vec::new();
    for &xi in xi_grid {
        let spectrum = spectrum_via_kummer(SpectralProblem::new(nu, xi)?, kmax, policy)?;
        for r in &spectrum {
            let delta_err = r.error_est / xi;
            let status = if r.delta > delta_err {
                EntryStatus::Conclusive
            } else {
                EntryStatus::Inconclusive
            };
            gaps.push(GapEntry {
                xi,
                k: r.k,
                delta: r.delta,
                delta_err,
                status,
            });
        }
    }
    let mut rates = Vec::new();
    let mut ratio_checks = Vec::new();
    let mut pass = gaps.iter().all(|g| g.delta > 0.0);
    for &k in &k_list {
        let series: Vec<&GapEntry> = gaps
            .iter()
            .filter(|g| g.k == k && g.status == EntryStatus::Conclusive)
            .collect();
        for w in series.windows(2) {
            let ratio = w[1].delta / w[0].delta;
            let ok = ratio < 1.0;
            pass &= ok;
            ratio_checks.push(RatioCheck {
                k,
                xi_from: w[0].xi,
                xi_to: w[1].xi,
                ratio,
                pass: ok,
            });
        }
        if series.len() >= 2 {
            let pts: Vec<(f64, f64)> = series.iter().map(|g| (g.xi, g.delta.ln())).collect();
            rates.push((k, slope(&pts)));
        }
    }
    let fitted_rate = rates.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max);
    pass &= !rates.is_empty() && fitted_rate < 0.0;
    Ok(DecayReport {
        nu,
        tau,
        xi_grid: xi_grid.to_vec(),
        k_list,
        gaps,
        rates,
        fitted_rate,
        ratio_checks,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_root() {
        for &d in &[0.0, 0.1, 0.5, 2.0] {
            let c = solve_c(d);
            assert!(c_residual(c, d).abs() <= 1e-12);
            assert!(c > 0.0 && c < std::f64::consts::PI.powi(2));
        }
        assert!((solve_c(0.0) - 6.896_767_112_948_693).abs() < 1e-13);
        assert!((solve_c(0.1) - 6.743_350_787_170_027).abs() < 1e-13);
        assert!(solve_c(0.0) > solve_c(0.1) && solve_c(0.1) > solve_c(0.5));
    }

    #[test]
    fn crossover() {
        let c = solve_c(0.1);
        let (xi, b) = (50.0, 1.0);
        let k = bound2_crossover_k(xi, b, c);
        assert!(bound2_dominates(k, xi, b, c));
        assert!(!bound2_dominates(k - 1, xi, b, c));
        // k >= (4 xi / c)(1 + b/(2k)) is the same condition.
        let kf = k as f64;
        assert!(kf >= 4.0 * xi / c * (1.0 + b / (2.0 * kf)));
    }

    #[test]
    fn slope_of_line() {
        let pts: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, 3.0 - 0.5 * i as f64)).collect();
        assert!((slope(&pts) + 0.5).abs() < 1e-14);
    }

    #[test]
    fn empirical_threshold() {
        let e = |xi: f64, holds: Option<bool>| BoundsEntry {
            nu: 0.0,
            xi,
            kmax: 5,
            violations: vec![],
            weak: vec![],
            quadratic_holds: holds,
        };
        let r = BoundsReport::from_entries(vec![
            e(40.0, Some(true)),
            e(5.0, Some(true)),
            e(10.0, Some(false)),
            e(20.0, Some(true)),
            e(30.0, None),
        ]);
        assert_eq!(r.empirical_xi_check(), Some(20.0));
        assert_eq!(
            BoundsReport::from_entries(vec![e(1.0, Some(false))]).empirical_xi_check(),
            None
        );
    }

    #[test]
    fn report_flags_violations() {
        let p = SpectralProblem::new(0.0, 10.0).unwrap();
        let fake = EigenResult {
            k: 1,
            lambda: 50.0,
            lambda_tilde: 5.0,
            a_zero: -0.75,
            kappa_zero: 1.25,
            method: crate::eigensolver::Method::KummerRoot,
            residual: 0.0,
            error_est: 0.0,
            delta: -1.0,
        };
        let r = verify_lower_bounds(&[fake], &p, solve_c(0.1), 100.0);
        assert!(!r.pass);
        assert_eq!(r.violations_named(BOUND_HARMONIC), 1);
    }
}
