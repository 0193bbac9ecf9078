//! Half-line eigenfunctions `Phi_k`, the boundary-corrected quasi-modes on
//! `(0, sqrt(xi))` and the spectral-distance quotients they give.

use serde::{Deserialize, Serialize};

use crate::azero::spectrum_via_kummer;
use crate::bounds::{slope, EntryStatus};
use crate::eigensolver::{mu, SpectralProblem};
use crate::error::{Error, Result};
use crate::precision::PrecisionPolicy;
use crate::quadrature::{panels, Composite};
use crate::specfun::{gamma, kummer_m, laguerre, KummerArgs};

const ORDER: usize = 20;
/// Default panel width of the composite rule.
pub const PANEL_WIDTH: f64 = 0.25;
/// Distance past `sqrt(mu_k)` at which the half-line integral is cut.
pub const HALFLINE_MARGIN: f64 = 12.0;

/// `k! / (1+nu)_k`.
fn laguerre_normalizer(k: usize, nu: f64) -> f64 {
    (1..=k).map(|j| j as f64 / (nu + j as f64)).product()
}

/// `Phi_k(x) = e^{-x^2/2} x^{1/2+nu} k!/(1+nu)_k L_k^{(nu)}(x^2)`.
pub fn phi(k: usize, nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let envelope = (-0.5 * x * x + (0.5 + nu) * x.ln()).exp();
    envelope * laguerre_normalizer(k, nu) * laguerre(k, nu, x * x)
}

/// `Phi_k(x)` with the polynomial factor `M(-k, 1+nu, x^2)` summed under
/// `policy`.
pub fn phi_precise(k: usize, nu: f64, x: f64, policy: &PrecisionPolicy) -> Result<f64> {
    if x == 0.0 {
        return Ok(0.0);
    }
    let m = kummer_m(KummerArgs::new(-(k as f64), 1.0 + nu, x * x)?, policy)?;
    Ok((-0.5 * x * x + (0.5 + nu) * x.ln()).exp() * m)
}

/// `Gamma(nu+1)/2 * k!/(1+nu)_k`, the squared norm of `Phi_k` on `(0, inf)`.
pub fn phi_norm_sq_halfline(k: usize, nu: f64) -> f64 {
    0.5 * gamma(nu + 1.0) * laguerre_normalizer(k, nu)
}

fn rule_breaks(end: f64, nu: f64, width: f64) -> Vec<f64> {
    panels(end, width, nu < 0.5)
}

/// `int_0^end Phi_k^2` with panels of at most `width`.
pub fn phi_norm_sq_to(k: usize, nu: f64, end: f64, width: f64) -> f64 {
    Composite::new(ORDER).integrate(&rule_breaks(end, nu, width), |x| phi(k, nu, x).powi(2))
}

/// `int_0^X Phi_k^2` with `X = sqrt(mu_k) + 12`; the neglected tail is below
/// `e^{-100}` relative.
pub fn phi_norm_sq_numeric(k: usize, nu: f64) -> f64 {
    phi_norm_sq_to(k, nu, mu(k, nu).sqrt() + HALFLINE_MARGIN, PANEL_WIDTH)
}

/// `int_0^{sqrt(xi)} Phi_k^2`.
pub fn phi_norm_sq_domain(k: usize, nu: f64, xi: f64) -> f64 {
    phi_norm_sq_to(k, nu, xi.sqrt(), PANEL_WIDTH)
}

/// Coefficient `Phi_k(sqrt(xi)) / xi^{1/4+nu/2}` of the boundary correction.
fn correction(boundary: f64, nu: f64, xi: f64) -> f64 {
    boundary / xi.powf(0.25 + 0.5 * nu)
}

/// `phi_{xi,k}(x) = Phi_k(x) - x^{1/2+nu} Phi_k(sqrt(xi)) / xi^{1/4+nu/2}`.
pub fn quasimode_value(problem: SpectralProblem, k: usize, x: f64) -> Result<f64> {
    let SpectralProblem { nu, xi } = problem;
    if !(0.0..=xi.sqrt()).contains(&x) {
        return Err(Error::InvalidParams(format!(
            "x must lie in [0, sqrt(xi)] = [0, {}], got {x}",
            xi.sqrt()
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let c = correction(phi(k, nu, xi.sqrt()), nu, xi);
    Ok(phi(k, nu, x) - c * x.powf(0.5 + nu))
}

/// `(G~ - mu_k) phi_{xi,k}` at `x`, in closed form:
/// `-c (x^{5/2+nu} - mu_k x^{1/2+nu})`.
pub fn quasimode_residual(problem: SpectralProblem, k: usize, x: f64) -> f64 {
    let SpectralProblem { nu, xi } = problem;
    let c = correction(phi(k, nu, xi.sqrt()), nu, xi);
    -c * (x.powf(2.5 + nu) - mu(k, nu) * x.powf(0.5 + nu))
}

/// `||x^{5/2+nu} - mu x^{1/2+nu}||^2` on `(0, sqrt(xi))`.
fn residual_shape_norm_sq(nu: f64, xi: f64, mu: f64) -> f64 {
    xi.powf(3.0 + nu) / (6.0 + 2.0 * nu) - 2.0 * mu * xi.powf(2.0 + nu) / (4.0 + 2.0 * nu)
        + mu * mu * xi.powf(1.0 + nu) / (2.0 + 2.0 * nu)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuasimodeReport {
    pub nu: f64,
    pub xi: f64,
    pub k: usize,
    /// `Phi_k(sqrt(xi))`.
    pub phi_boundary: f64,
    /// `int_0^{sqrt(xi)} Phi_k^2`.
    pub phi_norm_sq_domain: f64,
    /// `||phi_{xi,k}||` on `(0, sqrt(xi))`.
    pub quasimode_norm: f64,
    /// `||(G~ - mu_k) phi_{xi,k}||`.
    pub residual_norm: f64,
    /// `residual_norm / quasimode_norm`.
    pub quotient: f64,
    /// The leading-term estimate `|c| ||x^{5/2+nu}|| / ||phi_{xi,k}||`,
    /// which drops the `mu_k x^{1/2+nu}` part of the residual.
    pub quotient_leading: f64,
    /// `|lambda~_k - mu_k|` from the Kummer-root spectrum.
    pub spectral_dist: f64,
    pub status: EntryStatus,
    pub pass: bool,
}

fn check_regime(k: usize, xi: f64) -> Result<()> {
    if k as f64 > (xi / 4.0).floor() {
        return Err(Error::InvalidParams(format!(
            "k = {k} lies outside the low regime k <= floor(xi/4) for xi = {xi}"
        )));
    }
    Ok(())
}

/// Quasi-mode quotient for index `k`, compared with the spectral gap.
pub fn spectral_distance_quotient(
    problem: SpectralProblem,
    k: usize,
    policy: &PrecisionPolicy,
) -> Result<QuasimodeReport> {
    let SpectralProblem { nu, xi } = problem;
    check_regime(k, xi)?;
    let root = xi.sqrt();
    let phi_boundary = phi_precise(k, nu, root, policy)?;
    let c = correction(phi_boundary, nu, xi);
    let rule = Composite::new(ORDER);
    let breaks = rule_breaks(root, nu, PANEL_WIDTH);
    let phi_norm_sq_domain = rule.integrate(&breaks, |x| phi(k, nu, x).powi(2));
    let quasimode_norm = rule
        .integrate(&breaks, |x| {
            let v = phi(k, nu, x) - c * x.powf(0.5 + nu);
            v * v
        })
        .sqrt();
    let m = mu(k, nu);
    let residual_norm = c.abs() * residual_shape_norm_sq(nu, xi, m).sqrt();
    let leading = c.abs() * (xi.powf(3.0 + nu) / (6.0 + 2.0 * nu)).sqrt();
    let spectrum = spectrum_via_kummer(problem, k, policy)?;
    let spectral_dist = spectrum[k].delta.abs();
    let quotient = residual_norm / quasimode_norm;
    // A boundary value lost to underflow leaves nothing to compare.
    let status = if phi_boundary.abs() < f64::MIN_POSITIVE {
        EntryStatus::Inconclusive
    } else {
        EntryStatus::Conclusive
    };
    Ok(QuasimodeReport {
        nu,
        xi,
        k,
        phi_boundary,
        phi_norm_sq_domain,
        quasimode_norm,
        residual_norm,
        quotient,
        quotient_leading: leading / quasimode_norm,
        spectral_dist,
        status,
        pass: status == EntryStatus::Inconclusive || spectral_dist <= quotient,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuasimodeSweep {
    pub reports: Vec<QuasimodeReport>,
    /// Per `k`: whether the quotient strictly decreases along the grid.
    pub decreasing: Vec<(usize, bool)>,
    pub pass: bool,
}

/// [`spectral_distance_quotient`] over an ascending `xi` grid.
pub fn quasimode_sweep(
    nu: f64,
    xi_grid: &[f64],
    k_list: &[usize],
    policy: &PrecisionPolicy,
) -> Result<QuasimodeSweep> {
    let mut reports = Vec::new();
    for &xi in xi_grid {
        let problem = SpectralProblem::new(nu, xi)?;
        for &k in k_list {
            reports.push(spectral_distance_quotient(problem, k, policy)?);
        }
    }
    let decreasing: Vec<(usize, bool)> = k_list
        .iter()
        .map(|&k| {
            let q: Vec<f64> = reports
                .iter()
                .filter(|r| r.k == k && r.status == EntryStatus::Conclusive)
                .map(|r| r.quotient)
                .collect();
            (k, q.windows(2).all(|w| w[1] < w[0]))
        })
        .collect();
    let pass = reports.iter().all(|r| r.pass) && decreasing.iter().all(|d| d.1);
    Ok(QuasimodeSweep {
        reports,
        decreasing,
        pass,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryEntry {
    pub xi: f64,
    pub k: usize,
    pub phi_boundary: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryDecayReport {
    pub nu: f64,
    pub tau: f64,
    pub entries: Vec<BoundaryEntry>,
    /// Per `k`: slope of `ln |Phi_k(sqrt(xi))|` against `xi`.
    pub rates: Vec<(usize, f64)>,
    pub strictly_decreasing: bool,
    /// `|Phi_{k+1}(x)| >= |Phi_k(x)|` at every sampled `x >= sqrt(xi)`.
    pub ordered_in_k: bool,
    /// `sign Phi_k(x) = (-1)^k` at every sampled `x >= sqrt(xi)`.
    pub sign_pattern: bool,
    pub pass: bool,
}

/// Number of sample points beyond `sqrt(xi)` used by the comparisons.
const TAIL_SAMPLES: usize = 16;

/// Decay of `|Phi_k(sqrt(xi))|` in `xi`, plus the ordering and sign pattern
/// of `Phi_k` beyond the boundary point.
pub fn boundary_decay_check(
    nu: f64,
    tau: f64,
    xi_grid: &[f64],
    k_list: &[usize],
    policy: &PrecisionPolicy,
) -> Result<BoundaryDecayReport> {
    if xi_grid.len() < 2 || xi_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParams(
            "xi grid must be ascending with at least 2 points".into(),
        ));
    }
    let mut entries = Vec::new();
    let mut ordered_in_k = true;
    let mut sign_pattern = true;
    for &xi in xi_grid {
        let root = xi.sqrt();
        for &k in k_list {
            if k as f64 > (tau * xi / 4.0).floor() {
                return Err(Error::InvalidParams(format!(
                    "k = {k} exceeds floor(tau xi / 4) at xi = {xi}"
                )));
            }
            entries.push(BoundaryEntry {
                xi,
                k,
                phi_boundary: phi_precise(k, nu, root, policy)?,
            });
            for i in 0..TAIL_SAMPLES {
                let x = root + i as f64 * 0.25;
                let v = phi_precise(k, nu, x, policy)?;
                let expected = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign_pattern &= v * expected > 0.0;
                if k_list.contains(&(k + 1)) {
                    ordered_in_k &= phi_precise(k + 1, nu, x, policy)?.abs() >= v.abs();
                }
            }
        }
    }
    let mut strictly_decreasing = true;
    let mut rates = Vec::new();
    for &k in k_list {
        let series: Vec<&BoundaryEntry> = entries.iter().filter(|e| e.k == k).collect();
        strictly_decreasing &= series
            .windows(2)
            .all(|w| w[1].phi_boundary.abs() < w[0].phi_boundary.abs());
        let pts: Vec<(f64, f64)> = series.iter().map(|e| (e.xi, e.phi_boundary.abs().ln())).collect();
        rates.push((k, slope(&pts)));
    }
    let pass = strictly_decreasing && ordered_in_k && sign_pattern && rates.iter().all(|r| r.1 < 0.0);
    Ok(BoundaryDecayReport {
        nu,
        tau,
        entries,
        rates,
        strictly_decreasing,
        ordered_in_k,
        sign_pattern,
        pass,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormEntry {
    pub xi: f64,
    pub k: usize,
    pub domain: f64,
    pub halfline: f64,
    pub ratio: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub nu: f64,
    pub delta: f64,
    pub entries: Vec<NormEntry>,
    pub pass: bool,
}

/// `int_0^{sqrt(xi)} Phi_k^2 >= (1 - delta) ||Phi_k||^2_{(0,inf)}` per entry.
pub fn norm_lower_check(nu: f64, xi_grid: &[f64], k_list: &[usize], delta: f64) -> Result<NormReport> {
    if !(0.0..1.0).contains(&delta) {
        return Err(Error::InvalidParams(format!(
            "delta must lie in [0, 1), got {delta}"
        )));
    }
    let mut entries = Vec::new();
    for &xi in xi_grid {
        for &k in k_list {
            check_regime(k, xi)?;
            let domain = phi_norm_sq_domain(k, nu, xi);
            let halfline = phi_norm_sq_halfline(k, nu);
            entries.push(NormEntry {
                xi,
                k,
                domain,
                halfline,
                ratio: domain / halfline,
                pass: domain >= (1.0 - delta) * halfline,
            });
        }
    }
    let pass = entries.iter().all(|e| e.pass);
    Ok(NormReport {
        nu,
        delta,
        entries,
        pass,
    })
}
