use super::SpectralProblem;
use crate::error::{Error, Result};
use crate::precision::{PrecisionPolicy, SplitReal};
use crate::specfun::kummer_m_split;

/// Unnormalized eigenfunction `e^{-xi x^2/2} x^{1/2+nu} M(a, 1+nu, xi x^2)`
/// for an a-zero `a`.
pub fn eigenfunction(problem: SpectralProblem, a_zero: f64, x: f64, policy: &PrecisionPolicy) -> Result<f64> {
    eigenfunction_split(problem, a_zero.into(), x, policy)
}

pub fn eigenfunction_split(
    problem: SpectralProblem,
    a_zero: SplitReal,
    x: f64,
    policy: &PrecisionPolicy,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidParams(format!("x must lie in [0, 1], got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let SpectralProblem { nu, xi } = problem;
    let m = kummer_m_split(a_zero, problem.b(), xi * x * x, policy, false)?;
    let prefactor = (-0.5 * xi * x * x + (0.5 + nu) * x.ln()).exp();
    Ok(prefactor * m.value)
}

/// Sample count for sign scans on `(0, 1]`: four samples per shortest
/// possible half-wavelength `pi / sqrt(lambda)`.
pub(crate) fn scan_samples(lambda: f64) -> usize {
    4 * (lambda.max(1.0).sqrt() / std::f64::consts::PI).ceil() as usize + 32
}

/// Interior sign changes of `x -> M(a, b, xi x^2)` on `(0, 1)`. For an
/// a-zero this is the index of the eigenvalue.
pub fn oscillation_index(problem: SpectralProblem, a_zero: f64, policy: &PrecisionPolicy) -> Result<usize> {
    oscillation_index_split(problem, a_zero.into(), policy)
}

pub fn oscillation_index_split(
    problem: SpectralProblem,
    a_zero: SplitReal,
    policy: &PrecisionPolicy,
) -> Result<usize> {
    let lambda = crate::azero::a_to_lambda(a_zero.approx(), problem.nu, problem.xi);
    let n = scan_samples(lambda);
    // Stop short of x = 1, where the function vanishes.
    let x_end = 1.0 - 0.5 / n as f64;
    sign_changes_in_x(problem, a_zero, x_end, n, policy)
}

/// Sign changes of `x -> M(a, b, xi x^2)` over `n` equally spaced points of
/// `(0, x_end]`; every sample's sign must be certified.
pub(crate) fn sign_changes_in_x(
    problem: SpectralProblem,
    a: SplitReal,
    x_end: f64,
    n: usize,
    policy: &PrecisionPolicy,
) -> Result<usize> {
    let mut last = 1i8;
    let mut changes = 0;
    for i in 1..=n {
        let x = x_end * i as f64 / n as f64;
        let m = kummer_m_split(a, problem.b(), problem.xi * x * x, policy, true)?;
        let s = m.sign().ok_or(Error::AmbiguousSign {
            noise: m.abs_err,
            bits: m.bits,
        })?;
        if s != last {
            changes += 1;
            last = s;
        }
    }
    Ok(changes)
}
