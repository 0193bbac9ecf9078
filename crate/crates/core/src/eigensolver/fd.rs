use serde::{Deserialize, Serialize};

use super::{mu, EigenResult, Method, SpectralProblem};
use crate::azero::{a_to_kappa, lambda_to_a};
use crate::error::{Error, Result};

/// Cell-centred grid on `(0, L)`: `x_j = (j + 1/2) h` with `h = L / (n + 1/2)`,
/// so the Dirichlet node `x_n = L` lies one cell past the last unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub n_points: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Self { n_points: 8000 }
    }
}

impl Grid {
    pub const MIN_POINTS: usize = 64;

    pub fn new(n_points: usize) -> Result<Self> {
        if n_points < Self::MIN_POINTS {
            return Err(Error::InvalidParams(format!(
                "grid needs at least {} points, got {n_points}",
                Self::MIN_POINTS
            )));
        }
        Ok(Self { n_points })
    }

    pub fn spacing(&self, length: f64) -> f64 {
        length / (self.n_points as f64 + 0.5)
    }

    pub fn point(&self, j: usize, length: f64) -> f64 {
        (j as f64 + 0.5) * self.spacing(length)
    }

    pub fn refined(&self) -> Self {
        Self {
            n_points: 2 * self.n_points,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdOptions {
    pub grid: Grid,
    /// Largest accepted `error_est / lambda` for `nu >= 1/2`.
    pub tol: f64,
    /// Largest accepted `error_est / lambda` for `0 < nu < 1/2`.
    pub low_nu_tol: f64,
}

impl Default for FdOptions {
    fn default() -> Self {
        Self {
            grid: Grid::default(),
            tol: 1e-6,
            low_nu_tol: 1e-3,
        }
    }
}

/// Symmetric tridiagonal matrix, `diag` and `off` (constant off-diagonal).
struct Tridiagonal {
    diag: Vec<f64>,
    off: f64,
}

impl Tridiagonal {
    /// Number of eigenvalues strictly below `x` (Sturm count via `LDL^T`).
    fn count_below(&self, x: f64) -> usize {
        let e2 = self.off * self.off;
        let mut count = 0;
        let mut q = 1.0;
        for (i, &d) in self.diag.iter().enumerate() {
            q = if i == 0 { d - x } else { d - x - e2 / q };
            if q == 0.0 {
                q = -f64::EPSILON * (d.abs() + x.abs() + self.off.abs());
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let r = 2.0 * self.off.abs();
        let lo = self.diag.iter().fold(f64::INFINITY, |m, &d| m.min(d - r));
        let hi = self.diag.iter().fold(f64::NEG_INFINITY, |m, &d| m.max(d + r));
        (lo, hi)
    }

    /// The `i`-th smallest eigenvalue by bisection.
    fn eigenvalue(&self, i: usize) -> f64 {
        let (mut lo, mut hi) = self.gershgorin();
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                return mid;
            }
            if self.count_below(mid) > i {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }
}

/// `-u'' + V u` on `(0, length)` with the cell-centred grid. At the left end
/// the ghost value mirrors `u_0` with opposite sign, so `u` vanishes at 0.
fn assemble(grid: &Grid, length: f64, potential: impl Fn(f64) -> f64) -> Tridiagonal {
    let h = grid.spacing(length);
    let inv_h2 = 1.0 / (h * h);
    let mut diag: Vec<f64> = (0..grid.n_points)
        .map(|j| 2.0 * inv_h2 + potential(grid.point(j, length)))
        .collect();
    diag[0] += inv_h2;
    Tridiagonal { diag, off: -inv_h2 }
}

fn lowest(matrix: &Tridiagonal, count: usize) -> Vec<f64> {
    (0..count).map(|i| matrix.eigenvalue(i)).collect()
}

/// Eigenvalue pairs on grids `n` and `2n`, extrapolated.
struct Extrapolated {
    value: f64,
    error_est: f64,
}

fn extrapolate(coarse: f64, fine: f64, grid: &Grid, nu: f64) -> Extrapolated {
    let n = grid.n_points as f64;
    // (h_coarse / h_fine)^2
    let r = ((2.0 * n + 0.5) / (n + 0.5)).powi(2);
    if nu >= 0.5 {
        Extrapolated {
            value: (r * fine - coarse) / (r - 1.0),
            error_est: (fine - coarse).abs() / (r - 1.0),
        }
    } else {
        // Error decays like h^{2 nu}; extrapolating would overshoot.
        Extrapolated {
            value: fine,
            error_est: (fine - coarse).abs() / (r.powf(nu) - 1.0),
        }
    }
}

fn check_applicable(problem: &SpectralProblem, kmax: usize, grid: &Grid) -> Result<()> {
    if problem.nu == 0.0 {
        return Err(Error::NotApplicable(
            "finite differences do not capture the nu = 0 form domain; use Kummer roots".into(),
        ));
    }
    if grid.n_points < 20 * (kmax + 1) {
        return Err(Error::InvalidParams(format!(
            "{} grid points cannot resolve {} eigenfunctions",
            grid.n_points,
            kmax + 1
        )));
    }
    Ok(())
}

fn finish(
    problem: &SpectralProblem,
    values: Vec<Extrapolated>,
    scale: f64,
    options: &FdOptions,
) -> Result<Vec<EigenResult>> {
    let SpectralProblem { nu, xi } = *problem;
    let tol = if nu >= 0.5 {
        options.tol
    } else {
        options.low_nu_tol
    };
    values
        .into_iter()
        .enumerate()
        .map(|(k, e)| {
            let lambda = e.value * scale;
            let error_est = e.error_est * scale;
            if error_est > tol * lambda {
                return Err(Error::GridTooCoarse {
                    k,
                    error_est: error_est / lambda,
                    tol,
                });
            }
            let lambda_tilde = lambda / xi;
            let a_zero = lambda_to_a(lambda, nu, xi);
            Ok(EigenResult {
                k,
                lambda,
                lambda_tilde,
                a_zero,
                kappa_zero: a_to_kappa(a_zero, problem.b()),
                method: Method::FiniteDifference,
                residual: 0.0,
                error_est,
                delta: lambda_tilde - mu(k, nu),
            })
        })
        .collect()
}

/// The `kmax + 1` lowest eigenvalues of `G`, from the dilated operator
/// `-d^2/dy^2 + y^2 + (nu^2 - 1/4)/y^2` on `(0, sqrt(xi))` discretized on
/// `grid` and `grid.refined()`.
pub fn eigen_fd(problem: SpectralProblem, kmax: usize, grid: Grid) -> Result<Vec<EigenResult>> {
    eigen_fd_with(
        problem,
        kmax,
        &FdOptions {
            grid,
            ..FdOptions::default()
        },
    )
}

pub fn eigen_fd_with(problem: SpectralProblem, kmax: usize, options: &FdOptions) -> Result<Vec<EigenResult>> {
    let grid = options.grid;
    check_applicable(&problem, kmax, &grid)?;
    let SpectralProblem { nu, xi } = problem;
    let length = xi.sqrt();
    let c = nu * nu - 0.25;
    let potential = |y: f64| y * y + c / (y * y);
    let coarse = lowest(&assemble(&grid, length, potential), kmax + 1);
    let fine = lowest(&assemble(&grid.refined(), length, potential), kmax + 1);
    let values = coarse
        .iter()
        .zip(&fine)
        .map(|(&c, &f)| extrapolate(c, f, &grid, nu))
        .collect();
    finish(&problem, values, xi, options)
}

/// Same spectrum computed directly on `(0, 1)`, without the dilation.
pub fn eigen_fd_unit_interval(
    problem: SpectralProblem,
    kmax: usize,
    options: &FdOptions,
) -> Result<Vec<EigenResult>> {
    let grid = options.grid;
    check_applicable(&problem, kmax, &grid)?;
    let SpectralProblem { nu, xi } = problem;
    let c = nu * nu - 0.25;
    let potential = |x: f64| xi * xi * x * x + c / (x * x);
    let coarse = lowest(&assemble(&grid, 1.0, potential), kmax + 1);
    let fine = lowest(&assemble(&grid.refined(), 1.0, potential), kmax + 1);
    let values = coarse
        .iter()
        .zip(&fine)
        .map(|(&c, &f)| extrapolate(c, f, &grid, nu))
        .collect();
    finish(&problem, values, 1.0, options)
}
