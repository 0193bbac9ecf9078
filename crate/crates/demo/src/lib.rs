//! Browser bindings. Every function returns a flat `Float64Array`; layouts
//! are given per function.

use singular_spectra::azero::{find_azeros, spectrum_via_kummer};
use singular_spectra::eigensolver::{eigenfunction_split, mu, SpectralProblem};
use singular_spectra::specfun::{kummer_m, KummerArgs};
use singular_spectra::{Error, PrecisionPolicy};
use wasm_bindgen::prelude::*;

/// Caps that keep a single call interactive in the browser.
const MAX_K: usize = 40;
const MAX_SAMPLES: usize = 4000;

fn js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

fn check(n: usize, max: usize, what: &str) -> Result<(), JsError> {
    if n == 0 || n > max {
        return Err(JsError::new(&format!("{what} must lie in 1..={max}, got {n}")));
    }
    Ok(())
}

/// Eigenfunctions `u_0..u_kmax` on `samples` equispaced points of `[0, 1]`,
/// each scaled to unit maximum modulus and positive near `x = 0`.
///
/// Layout: `[x_0..x_{n-1}, u_0(x_0)..u_0(x_{n-1}), u_1(..), ...]`.
#[wasm_bindgen]
pub fn eigenfunction_curves(nu: f64, xi: f64, kmax: usize, samples: usize) -> Result<Vec<f64>, JsError> {
    check(kmax + 1, MAX_K + 1, "kmax + 1")?;
    check(samples, MAX_SAMPLES, "samples")?;
    let policy = PrecisionPolicy::default();
    let problem = SpectralProblem::new(nu, xi).map_err(js)?;
    let zeros = find_azeros(problem.b(), xi, kmax + 1, &policy).map_err(js)?;
    let xs: Vec<f64> = (0..samples)
        .map(|i| {
            if samples == 1 {
                1.0
            } else {
                i as f64 / (samples - 1) as f64
            }
        })
        .collect();
    let mut out = xs.clone();
    for z in &zeros {
        let u = xs
            .iter()
            .map(|&x| eigenfunction_split(problem, z.split(), x, &policy))
            .collect::<Result<Vec<f64>, Error>>()
            .map_err(js)?;
        let peak = u.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let first = u.iter().copied().find(|v| *v != 0.0).unwrap_or(1.0);
        let scale = if peak > 0.0 { first.signum() / peak } else { 1.0 };
        out.extend(u.iter().map(|v| v * scale));
    }
    Ok(out)
}

/// Scaled eigenvalues `lambda_k / xi` over `steps` equispaced `xi` in
/// `[xi_min, xi_max]`, next to the half-line values `mu_k`.
///
/// Layout: `[mu_0..mu_kmax, then per xi: xi, lt_0..lt_kmax]`.
#[wasm_bindgen]
pub fn spectrum_vs_mu(
    nu: f64,
    xi_min: f64,
    xi_max: f64,
    steps: usize,
    kmax: usize,
) -> Result<Vec<f64>, JsError> {
    check(kmax + 1, MAX_K + 1, "kmax + 1")?;
    check(steps, 400, "steps")?;
    if !(xi_min > 0.0 && xi_max >= xi_min) {
        return Err(JsError::new("need 0 < xi_min <= xi_max"));
    }
    let policy = PrecisionPolicy::default();
    let mut out: Vec<f64> = (0..=kmax).map(|k| mu(k, nu)).collect();
    for i in 0..steps {
        let xi = if steps == 1 {
            xi_min
        } else {
            xi_min + (xi_max - xi_min) * i as f64 / (steps - 1) as f64
        };
        let problem = SpectralProblem::new(nu, xi).map_err(js)?;
        out.push(xi);
        out.extend(
            spectrum_via_kummer(problem, kmax, &policy)
                .map_err(js)?
                .iter()
                .map(|r| r.lambda_tilde),
        );
    }
    Ok(out)
}

/// `M(a, b, xi)` on `samples` equispaced `a` in `[a_min, a_max]`.
///
/// Layout: `[a_0..a_{n-1}, M(a_0)..M(a_{n-1})]`.
#[wasm_bindgen]
pub fn kummer_vs_a(b: f64, xi: f64, a_min: f64, a_max: f64, samples: usize) -> Result<Vec<f64>, JsError> {
    check(samples, MAX_SAMPLES, "samples")?;
    if !(a_max >= a_min) {
        return Err(JsError::new("need a_min <= a_max"));
    }
    let policy = PrecisionPolicy::default();
    let a: Vec<f64> = (0..samples)
        .map(|i| {
            if samples == 1 {
                a_min
            } else {
                a_min + (a_max - a_min) * i as f64 / (samples - 1) as f64
            }
        })
        .collect();
    let mut out = a.clone();
    for &ai in &a {
        out.push(kummer_m(KummerArgs::new(ai, b, xi).map_err(js)?, &policy).map_err(js)?);
    }
    Ok(out)
}

/// The `count` largest zeros of `a -> M(a, b, xi)`, in decreasing order.
#[wasm_bindgen]
pub fn azeros(b: f64, xi: f64, count: usize) -> Result<Vec<f64>, JsError> {
    check(count, MAX_K + 1, "count")?;
    let zeros = find_azeros(b, xi, count, &PrecisionPolicy::default()).map_err(js)?;
    Ok(zeros.iter().map(|z| z.a).collect())
}
