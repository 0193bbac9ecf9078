use serde::Serialize;
use singular_spectra::azero::{find_azeros, spectrum_via_kummer, AZero};
use singular_spectra::bounds::{
    solve_c, verify_azero_bounds, verify_bessel_window, verify_exponential_gap, verify_lower_bounds,
    BoundsReport, EntryStatus,
};
use singular_spectra::eigensolver::{eigen_fd, mu, EigenResult, Grid, SpectralProblem};
use singular_spectra::quasimode::quasimode_sweep;
use singular_spectra::specfun::{
    bessel_zero, kummer_m_certified, kummer_m_second_certified, laguerre, plancherel_rotach,
    whittaker_m_certified, KummerArgs,
};
use singular_spectra::PrecisionPolicy;

use crate::config::{EvalTask, Format, MethodArg, RunConfig, Suite, Task};
use crate::table::{num, render_json, render_table, Table};
use crate::CliError;

/// Rendered output and whether every check passed.
pub struct Output {
    pub text: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalRow {
    pub function: String,
    pub value: f64,
    pub abs_err: f64,
}

impl Table for EvalRow {
    const HEADER: &'static [&'static str] = &["function", "value", "abs_err"];
    fn cells(&self) -> Vec<String> {
        vec![self.function.clone(), num(self.value), num(self.abs_err)]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRow {
    pub nu: f64,
    pub xi: f64,
    pub k: usize,
    pub lambda: f64,
    pub lambda_tilde: f64,
    pub mu: f64,
    pub delta: f64,
    pub a_zero: f64,
    pub kappa_zero: f64,
    pub method: String,
    pub error_est: f64,
}

impl SpectrumRow {
    fn new(r: &EigenResult, p: &SpectralProblem) -> Self {
        Self {
            nu: p.nu,
            xi: p.xi,
            k: r.k,
            lambda: r.lambda,
            lambda_tilde: r.lambda_tilde,
            mu: mu(r.k, p.nu),
            delta: r.delta,
            a_zero: r.a_zero,
            kappa_zero: r.kappa_zero,
            method: r.method.to_string(),
            error_est: r.error_est,
        }
    }
}

impl Table for SpectrumRow {
    const HEADER: &'static [&'static str] = &[
        "nu",
        "xi",
        "k",
        "lambda",
        "lambda_tilde",
        "mu",
        "delta",
        "a_zero",
        "kappa_zero",
        "method",
        "error_est",
    ];
    fn cells(&self) -> Vec<String> {
        vec![
            num(self.nu),
            num(self.xi),
            self.k.to_string(),
            num(self.lambda),
            num(self.lambda_tilde),
            num(self.mu),
            num(self.delta),
            num(self.a_zero),
            num(self.kappa_zero),
            self.method.clone(),
            num(self.error_est),
        ]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AZeroRow {
    pub k: usize,
    pub a: f64,
    pub kappa: f64,
    pub lambda: f64,
    pub residual: f64,
    /// `-a - k`, resolved below the spacing of doubles near `a`.
    pub excess: f64,
}

impl From<&AZero> for AZeroRow {
    fn from(z: &AZero) -> Self {
        Self {
            k: z.k,
            a: z.a,
            kappa: z.kappa,
            lambda: z.lambda,
            residual: z.refinement_residual,
            excess: z.excess,
        }
    }
}

impl Table for AZeroRow {
    const HEADER: &'static [&'static str] = &["k", "a", "kappa", "lambda", "residual", "excess"];
    fn cells(&self) -> Vec<String> {
        vec![
            self.k.to_string(),
            num(self.a),
            num(self.kappa),
            num(self.lambda),
            num(self.residual),
            num(self.excess),
        ]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ViolationRow {
    pub nu: f64,
    pub xi: f64,
    pub k: usize,
    pub bound: String,
    pub lhs: f64,
    pub rhs: f64,
}

impl Table for ViolationRow {
    const HEADER: &'static [&'static str] = &["nu", "xi", "k", "bound", "lhs", "rhs"];
    fn cells(&self) -> Vec<String> {
        vec![
            num(self.nu),
            num(self.xi),
            self.k.to_string(),
            self.bound.clone(),
            num(self.lhs),
            num(self.rhs),
        ]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GapRow {
    pub xi: f64,
    pub k: usize,
    pub delta: f64,
    pub delta_err: f64,
    pub conclusive: bool,
}

impl Table for GapRow {
    const HEADER: &'static [&'static str] = &["xi", "k", "delta", "delta_err", "conclusive"];
    fn cells(&self) -> Vec<String> {
        vec![
            num(self.xi),
            self.k.to_string(),
            num(self.delta),
            num(self.delta_err),
            self.conclusive.to_string(),
        ]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QuasimodeRow {
    pub xi: f64,
    pub k: usize,
    pub phi_boundary: f64,
    pub quotient: f64,
    pub quotient_leading: f64,
    pub spectral_dist: f64,
    pub conclusive: bool,
    pub pass: bool,
}

impl Table for QuasimodeRow {
    const HEADER: &'static [&'static str] = &[
        "xi",
        "k",
        "phi_boundary",
        "quotient",
        "quotient_leading",
        "spectral_dist",
        "conclusive",
        "pass",
    ];
    fn cells(&self) -> Vec<String> {
        vec![
            num(self.xi),
            self.k.to_string(),
            num(self.phi_boundary),
            num(self.quotient),
            num(self.quotient_leading),
            num(self.spectral_dist),
            self.conclusive.to_string(),
            self.pass.to_string(),
        ]
    }
}

pub fn execute(config: &RunConfig) -> Result<Output, CliError> {
    let policy = &config.policy;
    let format = config.format;
    match &config.task {
        Task::Eval(task) => eval(task, policy, format),
        &Task::Spectrum {
            nu,
            xi,
            kmax,
            method,
            grid,
        } => spectrum(nu, xi, kmax, method, grid, policy, format),
        &Task::AZeros { b, xi, count } => {
            let zeros = find_azeros(b, xi, count, policy)?;
            let rows: Vec<AZeroRow> = zeros.iter().map(AZeroRow::from).collect();
            Ok(Output {
                text: render_table(&rows, format)?,
                pass: true,
            })
        }
        Task::Verify { suite, .. } => match suite {
            Suite::Bounds => verify_bounds(config),
            Suite::Bessel => verify_bessel(config),
            Suite::Decay => verify_decay(config),
            Suite::Quasimode => verify_quasimode(config),
            Suite::Azeros => verify_azeros(config),
        },
        Task::Report { nu, xi_grid, kmax } => {
            let mut rows = Vec::new();
            for &xi in xi_grid {
                let p = SpectralProblem::new(*nu, xi)?;
                rows.extend(
                    spectrum_via_kummer(p, *kmax, policy)?
                        .iter()
                        .map(|r| SpectrumRow::new(r, &p)),
                );
            }
            Ok(Output {
                text: render_table(&rows, format)?,
                pass: true,
            })
        }
    }
}

fn eval(task: &EvalTask, policy: &PrecisionPolicy, format: Format) -> Result<Output, CliError> {
    let (name, value, abs_err) = match *task {
        EvalTask::Kummer { a, b, z } => {
            let c = kummer_m_certified(KummerArgs::new(a, b, z)?, policy)?;
            ("kummer", c.value, c.abs_err)
        }
        EvalTask::Kummer2 { a, b, z } => {
            let c = kummer_m_second_certified(KummerArgs::new(a, b, z)?, policy)?;
            ("kummer2", c.value, c.abs_err)
        }
        EvalTask::Whittaker { kappa, mu, z } => {
            let c = whittaker_m_certified(kappa, mu, z, policy)?;
            ("whittaker", c.value, c.abs_err)
        }
        EvalTask::Laguerre { n, alpha, r } => ("laguerre", laguerre(n, alpha, r), 0.0),
        EvalTask::BesselZero { nu, k } => ("besselzero", bessel_zero(nu, k, policy)?, 0.0),
        EvalTask::PlancherelRotach {
            n,
            alpha,
            theta,
            regime,
        } => ("pr", plancherel_rotach(n, alpha, theta, &regime)?, 0.0),
    };
    let text = match format {
        Format::Text => format!("{}\n", num(value)),
        _ => render_table(
            &[EvalRow {
                function: name.into(),
                value,
                abs_err,
            }],
            format,
        )?,
    };
    Ok(Output { text, pass: true })
}

fn spectrum(
    nu: f64,
    xi: f64,
    kmax: usize,
    method: MethodArg,
    grid: usize,
    policy: &PrecisionPolicy,
    format: Format,
) -> Result<Output, CliError> {
    let p = SpectralProblem::new(nu, xi)?;
    let mut rows = Vec::new();
    if matches!(method, MethodArg::Kummer | MethodArg::Both) {
        rows.extend(
            spectrum_via_kummer(p, kmax, policy)?
                .iter()
                .map(|r| SpectrumRow::new(r, &p)),
        );
    }
    if matches!(method, MethodArg::Fd | MethodArg::Both) {
        if nu == 0.0 && method == MethodArg::Both {
            eprintln!("note: finite differences skipped at nu = 0; Kummer roots only");
        } else {
            if nu > 0.0 && nu < 0.5 {
                eprintln!("note: finite-difference accuracy is reduced for nu < 1/2");
            }
            let fd = eigen_fd(p, kmax, Grid::new(grid)?)?;
            rows.extend(fd.iter().map(|r| SpectrumRow::new(r, &p)));
        }
    }
    // Ascending in k, Kummer before FD within one k.
    rows.sort_by_key(|r| r.k);
    Ok(Output {
        text: render_table(&rows, format)?,
        pass: true,
    })
}

fn violation_rows(report: &BoundsReport) -> Vec<ViolationRow> {
    report
        .entries
        .iter()
        .flat_map(|e| {
            e.violations.iter().map(move |v| ViolationRow {
                nu: e.nu,
                xi: e.xi,
                k: v.k,
                bound: v.bound.clone(),
                lhs: v.lhs,
                rhs: v.rhs,
            })
        })
        .collect()
}

fn bounds_text(title: &str, report: &BoundsReport, extra: &[String]) -> String {
    let mut s = format!(
        "{title}: {} ({} entries, {} violations)\n",
        if report.pass { "PASS" } else { "FAIL" },
        report.entries.len(),
        report.violation_count()
    );
    for line in extra {
        s += &format!("  {line}\n");
    }
    for e in &report.entries {
        s += &format!(
            "  nu = {}, xi = {}, kmax = {}: {} violations, weak k = {:?}\n",
            e.nu,
            e.xi,
            e.kmax,
            e.violations.len(),
            e.weak
        );
        for v in &e.violations {
            s += &format!(
                "    k = {}: {} fails ({} vs {})\n",
                v.k,
                v.bound,
                num(v.lhs),
                num(v.rhs)
            );
        }
    }
    s
}

fn render_bounds<T: Serialize>(
    title: &str,
    report: &BoundsReport,
    json: &T,
    extra: &[String],
    format: Format,
) -> Result<Output, CliError> {
    let text = match format {
        Format::Json => render_json(json)?,
        Format::Csv => render_table(&violation_rows(report), format)?,
        Format::Text => bounds_text(title, report, extra),
    };
    Ok(Output {
        text,
        pass: report.pass,
    })
}

struct VerifyArgs<'a> {
    nu: f64,
    xi_grid: &'a [f64],
    kmax: usize,
    count: usize,
    tau: f64,
    delta: f64,
    xi_check: f64,
    envelope: Option<f64>,
}

fn verify_args(config: &RunConfig) -> VerifyArgs<'_> {
    match &config.task {
        Task::Verify {
            nu,
            xi_grid,
            kmax,
            count,
            tau,
            delta,
            xi_check,
            envelope,
            ..
        } => VerifyArgs {
            nu: *nu,
            xi_grid,
            kmax: *kmax,
            count: *count,
            tau: *tau,
            delta: *delta,
            xi_check: *xi_check,
            envelope: *envelope,
        },
        _ => unreachable!("verify suite dispatched for a non-verify task"),
    }
}

#[derive(Serialize)]
struct BoundsJson<'a> {
    suite: &'static str,
    c: f64,
    delta: f64,
    xi_check: f64,
    /// Smallest grid `xi` from which `lambda >= c k^2` held throughout.
    empirical_xi_check: Option<f64>,
    report: &'a BoundsReport,
}

fn verify_bounds(config: &RunConfig) -> Result<Output, CliError> {
    let v = verify_args(config);
    if v.delta < 0.0 {
        return Err(CliError::Usage(format!("--delta must be >= 0, got {}", v.delta)));
    }
    let c = solve_c(v.delta);
    let mut reports = Vec::new();
    for &xi in v.xi_grid {
        let p = SpectralProblem::new(v.nu, xi)?;
        let spectrum = spectrum_via_kummer(p, v.kmax, &config.policy)?;
        reports.push(verify_lower_bounds(&spectrum, &p, c, v.xi_check));
    }
    let report = BoundsReport::merge(reports);
    let empirical = report.empirical_xi_check();
    let json = BoundsJson {
        suite: "bounds",
        c,
        delta: v.delta,
        xi_check: v.xi_check,
        empirical_xi_check: empirical,
        report: &report,
    };
    let extra = vec![
        format!("c = {c} (delta = {})", v.delta),
        format!("lambda >= c k^2 asserted for xi >= {}", v.xi_check),
        match empirical {
            Some(x) => format!("lambda >= c k^2 holds on the grid from xi = {x}"),
            None => "lambda >= c k^2 fails at the largest grid xi".into(),
        },
    ];
    render_bounds("bounds", &report, &json, &extra, config.format)
}

#[derive(Serialize)]
struct SuiteJson<'a, T: Serialize> {
    suite: &'static str,
    report: &'a T,
}

fn verify_bessel(config: &RunConfig) -> Result<Output, CliError> {
    let v = verify_args(config);
    let mut reports = Vec::new();
    for &xi in v.xi_grid {
        let p = SpectralProblem::new(v.nu, xi)?;
        let spectrum = spectrum_via_kummer(p, v.kmax, &config.policy)?;
        reports.push(verify_bessel_window(&spectrum, &p, &config.policy)?);
    }
    let report = BoundsReport::merge(reports);
    let json = SuiteJson {
        suite: "bessel",
        report: &report,
    };
    render_bounds("bessel", &report, &json, &[], config.format)
}

fn verify_decay(config: &RunConfig) -> Result<Output, CliError> {
    let v = verify_args(config);
    let r = verify_exponential_gap(v.nu, v.xi_grid, v.tau, &config.policy)?;
    let text = match config.format {
        Format::Json => render_json(&SuiteJson {
            suite: "decay",
            report: &r,
        })?,
        Format::Csv => {
            let rows: Vec<GapRow> = r
                .gaps
                .iter()
                .map(|g| GapRow {
                    xi: g.xi,
                    k: g.k,
                    delta: g.delta,
                    delta_err: g.delta_err,
                    conclusive: g.status == EntryStatus::Conclusive,
                })
                .collect();
            render_table(&rows, Format::Csv)?
        }
        Format::Text => {
            let mut s = format!(
                "decay: {} (nu = {}, tau = {}, k <= {})\n",
                if r.pass { "PASS" } else { "FAIL" },
                r.nu,
                r.tau,
                r.k_list.last().copied().unwrap_or(0)
            );
            for (k, rate) in &r.rates {
                s += &format!("  k = {k}: fitted rate {rate:.6}\n");
            }
            for c in &r.ratio_checks {
                s += &format!(
                    "  k = {}: delta({}) / delta({}) = {:.6e}{}\n",
                    c.k,
                    c.xi_to,
                    c.xi_from,
                    c.ratio,
                    if c.pass { "" } else { "  FAIL" }
                );
            }
            let inconclusive = r
                .gaps
                .iter()
                .filter(|g| g.status == EntryStatus::Inconclusive)
                .count();
            s += &format!("  inconclusive entries: {inconclusive}\n");
            s
        }
    };
    Ok(Output { text, pass: r.pass })
}

fn verify_quasimode(config: &RunConfig) -> Result<Output, CliError> {
    let v = verify_args(config);
    let kmax = (v.tau * v.xi_grid[0] / 4.0).floor() as usize;
    let k_list: Vec<usize> = (0..=kmax).collect();
    let s = quasimode_sweep(v.nu, v.xi_grid, &k_list, &config.policy)?;
    let text = match config.format {
        Format::Json => render_json(&SuiteJson {
            suite: "quasimode",
            report: &s,
        })?,
        Format::Csv => {
            let rows: Vec<QuasimodeRow> = s
                .reports
                .iter()
                .map(|r| QuasimodeRow {
                    xi: r.xi,
                    k: r.k,
                    phi_boundary: r.phi_boundary,
                    quotient: r.quotient,
                    quotient_leading: r.quotient_leading,
                    spectral_dist: r.spectral_dist,
                    conclusive: r.status == EntryStatus::Conclusive,
                    pass: r.pass,
                })
                .collect();
            render_table(&rows, Format::Csv)?
        }
        Format::Text => {
            let mut out = format!(
                "quasimode: {} (nu = {}, k <= {kmax})\n",
                if s.pass { "PASS" } else { "FAIL" },
                v.nu
            );
            for r in &s.reports {
                out += &format!(
                    "  xi = {}, k = {}: |lambda~ - mu| = {:.3e} <= quotient {:.3e}{}\n",
                    r.xi,
                    r.k,
                    r.spectral_dist,
                    r.quotient,
                    if r.pass { "" } else { "  FAIL" }
                );
            }
            for (k, dec) in &s.decreasing {
                out += &format!("  k = {k}: quotient decreasing in xi: {dec}\n");
            }
            out
        }
    };
    Ok(Output { text, pass: s.pass })
}

/// Fallback low-regime envelope when no decay grid is available.
const DEFAULT_ENVELOPE: f64 = 0.01;

#[derive(Serialize)]
struct AZeroJson<'a> {
    suite: &'static str,
    envelope: f64,
    envelope_source: &'static str,
    report: &'a BoundsReport,
}

fn verify_azeros(config: &RunConfig) -> Result<Output, CliError> {
    let v = verify_args(config);
    let b = 1.0 + v.nu;
    let (envelope, source) = match v.envelope {
        Some(e) => (e, "given"),
        None if v.xi_grid.len() >= 4 => {
            let decay = verify_exponential_gap(v.nu, v.xi_grid, v.tau, &config.policy)?;
            // lambda/xi - mu_k = 4(-a - k)
            (decay.max_delta() / 4.0, "measured")
        }
        None => (DEFAULT_ENVELOPE, "default"),
    };
    let c = solve_c(v.delta);
    let mut reports = Vec::new();
    for &xi in v.xi_grid {
        let zeros = find_azeros(b, xi, v.count, &config.policy)?;
        reports.push(verify_azero_bounds(&zeros, b, xi, c, v.tau, envelope));
    }
    let report = BoundsReport::merge(reports);
    let json = AZeroJson {
        suite: "azeros",
        envelope,
        envelope_source: source,
        report: &report,
    };
    let extra = vec![format!("envelope = {envelope:e} ({source})")];
    render_bounds("azeros", &report, &json, &extra, config.format)
}
