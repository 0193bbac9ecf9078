use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use singular_spectra::specfun::PrRegime;
use singular_spectra::PrecisionPolicy;

use crate::CliError;

/// Environment variable that sets the default minimum working precision.
pub const PREC_BITS_ENV: &str = "SINGULAR_SPECTRA_PREC_BITS";

#[derive(Debug, Parser)]
#[command(
    name = "singular-spectra",
    version,
    about = "Spectra of -d^2/dx^2 + xi^2 x^2 + (nu^2 - 1/4)/x^2 on (0,1) and a-zeros of Kummer functions"
)]
struct Cli {
    #[command(subcommand)]
    command: CommandArg,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Debug, Subcommand)]
enum CommandArg {
    /// Evaluate a special function.
    Eval {
        #[arg(value_enum)]
        function: EvalFn,
    },
    /// Lowest eigenvalues of the operator.
    Spectrum,
    /// Largest zeros of a -> M(a, b, xi).
    Azeros,
    /// Check the eigenvalue and a-zero bounds on a parameter grid.
    Verify {
        #[arg(value_enum)]
        suite: Option<Suite>,
        #[arg(long = "suite", value_enum)]
        suite_flag: Option<Suite>,
    },
    /// Tidy spectrum table over a grid of xi, for plotting.
    Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalFn {
    Kummer,
    Kummer2,
    Whittaker,
    Laguerre,
    Besselzero,
    Pr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Bounds,
    Decay,
    Bessel,
    Quasimode,
    Azeros,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Kummer,
    Fd,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Oscillatory,
    Exponential,
}

#[derive(Debug, Default, Clone, Args)]
struct Opts {
    /// Flat `key = value` file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    nu: Option<f64>,
    #[arg(long, global = true)]
    xi: Option<f64>,
    /// Comma-separated ascending list.
    #[arg(long, global = true)]
    xi_grid: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long, global = true)]
    kmax: Option<usize>,
    #[arg(long, global = true)]
    count: Option<usize>,
    #[arg(long, global = true, value_enum)]
    method: Option<MethodArg>,
    #[arg(long, global = true)]
    tau: Option<f64>,
    /// Parameter of the quadratic defining c (bounds), or of the norm check.
    #[arg(long, global = true)]
    delta: Option<f64>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    prec_bits: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Finite-difference grid points.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Smallest xi at which lambda >= c k^2 is asserted.
    #[arg(long, global = true)]
    xi_check: Option<f64>,
    /// Low-regime a-zero envelope; measured from the gap decay when omitted.
    #[arg(long, global = true)]
    envelope: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    z: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    kappa: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    mu: Option<f64>,
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, global = true)]
    r: Option<f64>,
    #[arg(long, global = true)]
    theta: Option<f64>,
    #[arg(long, global = true)]
    k: Option<usize>,
    #[arg(long, global = true, value_enum)]
    regime: Option<RegimeArg>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EvalTask {
    Kummer {
        a: f64,
        b: f64,
        z: f64,
    },
    Kummer2 {
        a: f64,
        b: f64,
        z: f64,
    },
    Whittaker {
        kappa: f64,
        mu: f64,
        z: f64,
    },
    Laguerre {
        n: usize,
        alpha: f64,
        r: f64,
    },
    BesselZero {
        nu: f64,
        k: usize,
    },
    PlancherelRotach {
        n: usize,
        alpha: f64,
        theta: f64,
        regime: PrRegime,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    Eval(EvalTask),
    Spectrum {
        nu: f64,
        xi: f64,
        kmax: usize,
        method: MethodArg,
        grid: usize,
    },
    AZeros {
        b: f64,
        xi: f64,
        count: usize,
    },
    Verify {
        suite: Suite,
        nu: f64,
        xi_grid: Vec<f64>,
        kmax: usize,
        count: usize,
        tau: f64,
        delta: f64,
        xi_check: f64,
        envelope: Option<f64>,
    },
    Report {
        nu: f64,
        xi_grid: Vec<f64>,
        kmax: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub task: Task,
    pub policy: PrecisionPolicy,
    pub format: Format,
    pub out: Option<PathBuf>,
}

pub const DEFAULT_KMAX: usize = 10;
pub const DEFAULT_COUNT: usize = 6;
pub const DEFAULT_TAU: f64 = 0.5;
pub const DEFAULT_DELTA: f64 = 0.1;
pub const DEFAULT_XI_CHECK: f64 = 50.0;
pub const DEFAULT_DECAY_GRID: [f64; 4] = [16.0, 24.0, 32.0, 40.0];

/// Reads a flat `key = value` file. Blank lines and `#` comments are skipped;
/// dashes in keys are treated as underscores.
pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config file {}: {e}", path.display())))?;
    parse_config_text(&text)
}

pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected `key = value`", i + 1)))?;
        let key = key.trim().replace('-', "_");
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!(
                "config line {}: unknown key `{key}`",
                i + 1
            )));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

const KNOWN_KEYS: &[&str] = &[
    "nu",
    "xi",
    "xi_grid",
    "b",
    "kmax",
    "count",
    "method",
    "tau",
    "delta",
    "tol",
    "prec_bits",
    "format",
    "out",
    "grid",
    "xi_check",
    "envelope",
    "a",
    "z",
    "kappa",
    "mu",
    "n",
    "alpha",
    "r",
    "theta",
    "k",
    "regime",
];

fn from_file<T: FromStr>(
    slot: &mut Option<T>,
    file: &BTreeMap<String, String>,
    key: &str,
) -> Result<(), CliError> {
    if slot.is_none() {
        if let Some(v) = file.get(key) {
            *slot = Some(
                v.parse()
                    .map_err(|_| CliError::Usage(format!("invalid value `{v}` for `{key}`")))?,
            );
        }
    }
    Ok(())
}

fn enum_from_file<T: ValueEnum>(
    slot: &mut Option<T>,
    file: &BTreeMap<String, String>,
    key: &str,
) -> Result<(), CliError> {
    if slot.is_none() {
        if let Some(v) = file.get(key) {
            *slot = Some(
                T::from_str(v, true)
                    .map_err(|_| CliError::Usage(format!("invalid value `{v}` for `{key}`")))?,
            );
        }
    }
    Ok(())
}

fn merge_file(opts: &mut Opts, file: &BTreeMap<String, String>) -> Result<(), CliError> {
    from_file(&mut opts.nu, file, "nu")?;
    from_file(&mut opts.xi, file, "xi")?;
    from_file(&mut opts.xi_grid, file, "xi_grid")?;
    from_file(&mut opts.b, file, "b")?;
    from_file(&mut opts.kmax, file, "kmax")?;
    from_file(&mut opts.count, file, "count")?;
    enum_from_file(&mut opts.method, file, "method")?;
    from_file(&mut opts.tau, file, "tau")?;
    from_file(&mut opts.delta, file, "delta")?;
    from_file(&mut opts.tol, file, "tol")?;
    from_file(&mut opts.prec_bits, file, "prec_bits")?;
    enum_from_file(&mut opts.format, file, "format")?;
    from_file(&mut opts.out, file, "out")?;
    from_file(&mut opts.grid, file, "grid")?;
    from_file(&mut opts.xi_check, file, "xi_check")?;
    from_file(&mut opts.envelope, file, "envelope")?;
    from_file(&mut opts.a, file, "a")?;
    from_file(&mut opts.z, file, "z")?;
    from_file(&mut opts.kappa, file, "kappa")?;
    from_file(&mut opts.mu, file, "mu")?;
    from_file(&mut opts.n, file, "n")?;
    from_file(&mut opts.alpha, file, "alpha")?;
    from_file(&mut opts.r, file, "r")?;
    from_file(&mut opts.theta, file, "theta")?;
    from_file(&mut opts.k, file, "k")?;
    enum_from_file(&mut opts.regime, file, "regime")?;
    Ok(())
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("missing required --{flag}")))
}

pub fn parse_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let grid = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("invalid value `{t}` in --xi-grid")))
        })
        .map(|r| r.and_then(|x| positive(x, "xi-grid")))
        .collect::<Result<Vec<f64>, _>>()?;
    if grid.is_empty() || grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(CliError::Usage(
            "--xi-grid must be a non-empty ascending list".into(),
        ));
    }
    Ok(grid)
}

fn positive(v: f64, flag: &str) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Usage(format!("--{flag} must be positive, got {v}")))
    }
}

/// Builds a [`RunConfig`] from the command line, an optional config file
/// named by `--config`, and the value of [`PREC_BITS_ENV`].
pub fn parse_config<I, T>(argv: I, env_prec_bits: Option<&str>) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            CliError::Help(e.to_string())
        }
        _ => CliError::Usage(e.to_string()),
    })?;
    let mut opts = cli.opts;
    if let Some(path) = opts.config.clone() {
        merge_file(&mut opts, &read_config_file(&path)?)?;
    }

    let mut policy = PrecisionPolicy::default();
    if let Some(bits) = env_prec_bits {
        policy.min_bits = bits
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("invalid value `{bits}` for {PREC_BITS_ENV}")))?;
    }
    if let Some(bits) = opts.prec_bits {
        policy.min_bits = bits;
    }
    if let Some(tol) = opts.tol {
        policy.target_tol = positive(tol, "tol")?;
    }
    policy.validate().map_err(|e| CliError::Usage(e.to_string()))?;

    let nu = opts.nu.unwrap_or(0.0);
    if !(nu >= 0.0) {
        return Err(CliError::Usage(format!("--nu must be >= 0, got {nu}")));
    }
    let single_or_grid = |opts: &Opts| -> Result<Vec<f64>, CliError> {
        match (&opts.xi_grid, opts.xi) {
            (Some(g), _) => parse_grid(g),
            (None, Some(xi)) => Ok(vec![positive(xi, "xi")?]),
            (None, None) => Err(CliError::Usage("missing required --xi or --xi-grid".into())),
        }
    };

    let task = match cli.command {
        CommandArg::Eval { function } => Task::Eval(match function {
            EvalFn::Kummer => EvalTask::Kummer {
                a: need(opts.a, "a")?,
                b: need(opts.b, "b")?,
                z: need(opts.z, "z")?,
            },
            EvalFn::Kummer2 => EvalTask::Kummer2 {
                a: need(opts.a, "a")?,
                b: need(opts.b, "b")?,
                z: need(opts.z, "z")?,
            },
            EvalFn::Whittaker => EvalTask::Whittaker {
                kappa: need(opts.kappa, "kappa")?,
                mu: need(opts.mu, "mu")?,
                z: need(opts.z, "z")?,
            },
            EvalFn::Laguerre => EvalTask::Laguerre {
                n: need(opts.n, "n")?,
                alpha: opts.alpha.unwrap_or(0.0),
                r: need(opts.r, "r")?,
            },
            EvalFn::Besselzero => EvalTask::BesselZero {
                nu,
                k: need(opts.k, "k")?,
            },
            EvalFn::Pr => EvalTask::PlancherelRotach {
                n: need(opts.n, "n")?,
                alpha: opts.alpha.unwrap_or(0.0),
                theta: need(opts.theta, "theta")?,
                regime: match opts.regime.unwrap_or(RegimeArg::Oscillatory) {
                    RegimeArg::Oscillatory => PrRegime::oscillatory(),
                    RegimeArg::Exponential => PrRegime::exponential(),
                },
            },
        }),
        CommandArg::Spectrum => Task::Spectrum {
            nu,
            xi: positive(need(opts.xi, "xi")?, "xi")?,
            kmax: opts.kmax.unwrap_or(DEFAULT_KMAX),
            method: opts.method.unwrap_or(MethodArg::Kummer),
            grid: opts.grid.unwrap_or(8000),
        },
        CommandArg::Azeros => Task::AZeros {
            b: opts.b.unwrap_or(1.0 + nu),
            xi: positive(need(opts.xi, "xi")?, "xi")?,
            count: opts.count.unwrap_or(DEFAULT_COUNT),
        },
        CommandArg::Verify { suite, suite_flag } => {
            let suite = suite
                .or(suite_flag)
                .ok_or_else(|| CliError::Usage("missing verification suite".into()))?;
            let xi_grid = match suite {
                Suite::Decay | Suite::Quasimode if opts.xi_grid.is_none() && opts.xi.is_none() => {
                    DEFAULT_DECAY_GRID.to_vec()
                }
                _ => single_or_grid(&opts)?,
            };
            let tau = opts.tau.unwrap_or(DEFAULT_TAU);
            if !(tau > 0.0 && tau < 1.0) {
                return Err(CliError::Usage(format!("--tau must lie in (0, 1), got {tau}")));
            }
            let nu = match (suite, opts.b) {
                (Suite::Azeros, Some(b)) => b - 1.0,
                _ => nu,
            };
            Task::Verify {
                suite,
                nu,
                xi_grid,
                kmax: opts.kmax.unwrap_or(DEFAULT_KMAX),
                count: opts.count.unwrap_or(DEFAULT_COUNT),
                tau,
                delta: opts.delta.unwrap_or(DEFAULT_DELTA),
                xi_check: opts.xi_check.unwrap_or(DEFAULT_XI_CHECK),
                envelope: opts.envelope,
            }
        }
        CommandArg::Report => Task::Report {
            nu,
            xi_grid: match (&opts.xi_grid, opts.xi) {
                (None, None) => DEFAULT_DECAY_GRID.to_vec(),
                _ => single_or_grid(&opts)?,
            },
            kmax: opts.kmax.unwrap_or(DEFAULT_KMAX),
        },
    };
    Ok(RunConfig {
        task,
        policy,
        format: opts.format.unwrap_or(Format::Text),
        out: opts.out,
    })
}
