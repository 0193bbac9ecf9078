//! Frozen reference values (computed independently with mpmath at 40
//! digits) and worked examples.

use singular_spectra::azero::{a_to_lambda, find_azeros, lambda_to_a, spectrum_via_kummer};
use singular_spectra::bounds::{
    bound2_crossover_k, bound2_dominates, solve_c, verify_bessel_window, verify_lower_bounds, BOUND_HARMONIC,
    BOUND_QUADRATIC,
};
use singular_spectra::eigensolver::{
    eigen_fd, eigen_fd_unit_interval, eigenfunction, oscillation_index, FdOptions, Grid, SpectralProblem,
};
use singular_spectra::quasimode::{
    boundary_decay_check, norm_lower_check, phi, phi_norm_sq_domain, phi_norm_sq_to, PANEL_WIDTH,
};
use singular_spectra::specfun::{
    bessel_j, kummer_m, kummer_m_second, kummer_reflect, whittaker_m, KummerArgs, SecondSolutionBranch,
};
use singular_spectra::PrecisionPolicy;

fn pol() -> PrecisionPolicy {
    PrecisionPolicy::default()
}

fn args(a: f64, b: f64, z: f64) -> KummerArgs {
    KummerArgs::new(a, b, z).unwrap()
}

fn close(x: f64, y: f64, rel: f64) -> bool {
    (x - y).abs() <= rel * y.abs().max(1e-300)
}

// (b, xi, [a_k])
const AZEROS: &[(f64, f64, &[f64])] = &[
    (
        1.5,
        10.0,
        &[
            -0.001_341_762_354_790_722_860_7,
            -1.046_596_958_831_352_346_1,
            -2.331_444_653_103_875_033_3,
            -4.054_000_780_976_514_137_8,
            -6.267_887_946_658_718_125_6,
        ],
    ),
    (
        1.0,
        5.0,
        &[
            -0.027_473_039_996_238_703_681,
            -1.419_797_700_334_988_464,
            -3.656_840_789_853_804_417_4,
            -6.867_074_252_507_606_851_3,
        ],
    ),
    (
        3.5,
        20.0,
        &[
            -0.000_018_023_051_557_160_821_547,
            -1.001_163_902_808_056_958_4,
            -2.020_248_578_215_565_923_7,
        ],
    ),
    (
        2.0,
        0.5,
        &[
            -6.382_621_976_585_076_724_6,
            -23.650_902_049_118_406_4,
            -50.791_398_767_681_902_101,
        ],
    ),
];

#[test]
fn azeros_match_reference() {
    for &(b, xi, want) in AZEROS {
        let got = find_azeros(b, xi, want.len(), &pol()).unwrap();
        for (z, &a) in got.iter().zip(want) {
            // The offset below the anchor is resolved to relative 1e-10.
            let excess_want = -a - z.k as f64;
            assert!(
                (z.excess - excess_want).abs() <= 1e-9 * excess_want.abs().max(1e-3),
                "b={b} xi={xi} k={}: {} vs {excess_want}",
                z.k,
                z.excess
            );
            assert!(close(z.a, a, 1e-10));
            assert!(close(z.lambda, a_to_lambda(a, b - 1.0, xi), 1e-11));
        }
    }
}

#[test]
fn eigenvalue_reference_via_fd() {
    // lambda_0 for (nu, xi) = (1/2, 10) is 30.0536704941916289.
    let p = SpectralProblem::new(0.5, 10.0).unwrap();
    let fd = eigen_fd(p, 4, Grid::default()).unwrap();
    assert!(close(fd[0].lambda, 30.053_670_494_191_628_914, 1e-7));
    assert!(close(fd[4].lambda, 280.715_517_866_348_725_03, 1e-7));
    let t = fd[0].lambda_tilde;
    assert!(t > 3.0 && t < 3.5);
}

#[test]
fn kummer_examples() {
    assert_eq!(kummer_m(args(-1.0, 2.0, 1.0), &pol()).unwrap(), 0.5);
    assert!(close(
        kummer_reflect(args(-1.0, 2.0, 1.0), &pol()).unwrap(),
        0.5,
        1e-12
    ));
    for &(b, z) in &[(1.0, 3.0), (2.5, 17.0)] {
        assert!(close(
            kummer_reflect(args(0.0, b, z), &pol()).unwrap(),
            1.0,
            1e-12
        ));
        assert_eq!(kummer_m(args(-2.7, b, 0.0), &pol()).unwrap(), 1.0);
    }
    let a = args(-5.2, 3.0, 20.0);
    assert!(close(
        kummer_m(a, &pol()).unwrap(),
        kummer_reflect(a, &pol()).unwrap(),
        1e-10
    ));
}

#[test]
fn whittaker_reference_and_link() {
    assert!(close(
        whittaker_m(1.3, 0.75, 2.2, &pol()).unwrap(),
        0.835_710_717_826_018_502_32,
        1e-11
    ));
    let (a, b, z) = (-2.0, 2.0, 3.0);
    let w = whittaker_m(b / 2.0 - a, (b - 1.0) / 2.0, z, &pol()).unwrap();
    let m = kummer_m(args(a, b, z), &pol()).unwrap();
    assert!(close(w, (-z / 2.0f64).exp() * z.powf(b / 2.0) * m, 1e-12));
    // 1/2 + mu - kappa = 0 leaves only the prefactor.
    let v = whittaker_m(1.25, 0.75, 2.0, &pol()).unwrap();
    assert!(close(v, (-1.0f64).exp() * 2f64.powf(1.25), 1e-14));
}

/// `f''` from five-point central differences, extrapolated once.
fn second_derivative(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

fn first_derivative(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

#[test]
fn second_solution_branches() {
    let v = kummer_m_second(args(-0.4, 1.5, 2.0), &pol()).unwrap();
    let want = 2f64.powf(-0.5) * kummer_m(args(-0.9, 0.5, 2.0), &pol()).unwrap();
    assert!(close(v, want, 1e-12));
    assert_eq!(
        SecondSolutionBranch::select(-0.4, 1.5).unwrap(),
        SecondSolutionBranch::NonIntegerB
    );
    // ODE residual z w'' + (b - z) w' - a w for every branch. Finite
    // differences in double precision limit this oracle to about 1e-7.
    for &(a, b) in &[(-0.4, 1.5), (-0.4, 2.0), (-2.0, 1.0), (2.0, 3.0), (0.0, 3.0)] {
        let w = |z: f64| kummer_m_second(args(a, b, z), &pol()).unwrap();
        let z = 2.0;
        let (w0, w1, w2) = (w(z), first_derivative(w, z, 1e-2), second_derivative(w, z, 1e-2));
        let scale = w0.abs() + w1.abs() + w2.abs();
        let residual = z * w2 + (b - z) * w1 - a * w0;
        assert!(residual.abs() <= 1e-7 * scale, "a={a} b={b}: {residual:e}");
    }
    // Wronskian with M at z = 1, b = 1.5.
    let (a, b, z) = (-0.4, 1.5, 1.0);
    let m = |z: f64| kummer_m(args(a, b, z), &pol()).unwrap();
    let s = |z: f64| kummer_m_second(args(a, b, z), &pol()).unwrap();
    let wr = m(z) * first_derivative(s, z, 1e-2) - s(z) * first_derivative(m, z, 1e-2);
    // Exact value (1 - b) z^{-b} e^z.
    assert!(close(wr, (1.0 - b) * z.powf(-b) * z.exp(), 1e-7));
}

#[test]
fn whittaker_ode_residual() {
    let (kappa, mu, z) = (1.0, 0.25, 2.0);
    let w = |z: f64| whittaker_m(kappa, mu, z, &pol()).unwrap();
    let coeff = -0.25 + kappa / z + (0.25 - mu * mu) / (z * z);
    let residual = second_derivative(w, z, 1e-2) + coeff * w(z);
    assert!(residual.abs() <= 1e-8 * w(z).abs());
}

#[test]
fn bessel_reference() {
    assert!(close(
        bessel_j(0.5, 3.0, &pol()).unwrap(),
        0.065_008_182_877_375_778_114,
        1e-12
    ));
    assert!(close(
        bessel_j(2.5, 7.1, &pol()).unwrap(),
        -0.291_904_326_592_445_403_02,
        1e-12
    ));
}

#[test]
fn fd_examples() {
    let p = SpectralProblem::new(0.5, 0.1).unwrap();
    let r = eigen_fd(p, 0, Grid::default()).unwrap();
    let pi2 = std::f64::consts::PI.powi(2);
    assert!((r[0].lambda - pi2).abs() <= 0.01);
    for &(nu, xi) in &[(0.5, 10.0), (1.0, 3.0), (2.5, 20.0)] {
        let p = SpectralProblem::new(nu, xi).unwrap();
        for e in eigen_fd(p, 5, Grid::default()).unwrap() {
            assert!(e.delta > 0.0, "nu={nu} xi={xi} k={}", e.k);
            assert_eq!(e.a_zero, lambda_to_a(e.lambda, nu, xi));
        }
    }
}

#[test]
fn low_nu_fd_is_downgraded() {
    let p = SpectralProblem::new(0.25, 5.0).unwrap();
    let fd = eigen_fd(p, 3, Grid::default()).unwrap();
    let exact = spectrum_via_kummer(p, 3, &pol()).unwrap();
    for (f, e) in fd.iter().zip(&exact) {
        assert!((f.lambda - e.lambda).abs() <= 1e-3 * e.lambda);
        assert!(f.error_est <= FdOptions::default().low_nu_tol * f.lambda);
    }
}

#[test]
fn dilation_consistency() {
    let p = SpectralProblem::new(0.5, 6.0).unwrap();
    let opts = FdOptions::default();
    let dilated = eigen_fd(p, 4, opts.grid).unwrap();
    let direct = eigen_fd_unit_interval(p, 4, &opts).unwrap();
    for (a, b) in dilated.iter().zip(&direct) {
        assert!(close(a.lambda, b.lambda, 1e-6));
    }
}

#[test]
fn eigenfunctions_and_indexing() {
    let p = SpectralProblem::new(0.5, 10.0).unwrap();
    let spectrum = spectrum_via_kummer(p, 8, &pol()).unwrap();
    let zeros = find_azeros(p.b(), p.xi, 9, &pol()).unwrap();
    for (r, z) in spectrum.iter().zip(&zeros) {
        assert_eq!(oscillation_index(p, r.a_zero, &pol()).unwrap(), r.k);
        let g1 = eigenfunction(p, r.a_zero, 1.0, &pol()).unwrap();
        let peak = (1..50)
            .map(|i| eigenfunction(p, r.a_zero, i as f64 / 50.0, &pol()).unwrap().abs())
            .fold(0.0, f64::max);
        assert!(g1.abs() <= 1e-8 * peak, "k={} g(1)={g1:e}", r.k);
        // Reflection at the zero and the corresponding Whittaker value.
        let m = kummer_m(args(z.a, p.b(), p.xi), &pol()).unwrap();
        let refl = kummer_reflect(args(z.a, p.b(), p.xi), &pol()).unwrap();
        assert!((m - refl).abs() <= 1e-6);
        let w = whittaker_m(z.kappa, p.nu / 2.0, p.xi, &pol()).unwrap();
        assert!(w.abs() <= 1e-6);
    }
}

#[test]
fn bound_examples() {
    let c = solve_c(0.1);
    let p = SpectralProblem::new(0.5, 20.0).unwrap();
    let spectrum = spectrum_via_kummer(p, 10, &pol()).unwrap();
    let r = verify_lower_bounds(&spectrum, &p, c, f64::INFINITY);
    assert_eq!(r.violations_named(BOUND_HARMONIC), 0);

    // Crossover of the two lower bounds on the (0, 50) spectrum.
    let p = SpectralProblem::new(0.0, 50.0).unwrap();
    let k = bound2_crossover_k(50.0, 1.0, c);
    let spectrum = spectrum_via_kummer(p, k + 2, &pol()).unwrap();
    for e in &spectrum {
        let harmonic = 50.0 * (4.0 * e.k as f64 + 2.0);
        let quadratic = c * (e.k * e.k) as f64;
        assert_eq!(quadratic >= harmonic, bound2_dominates(e.k, 50.0, 1.0, c));
        assert!(e.lambda >= quadratic.max(harmonic));
    }
    let r = verify_lower_bounds(&spectrum, &p, c, 50.0);
    assert_eq!(r.violations_named(BOUND_QUADRATIC), 0);
    assert_eq!(r.entries[0].weak.len(), k);

    // Reproducibility.
    let again = verify_lower_bounds(&spectrum, &p, c, 50.0);
    assert_eq!(r, again);
}

#[test]
fn bessel_window_half_integer() {
    let p = SpectralProblem::new(0.5, 0.1).unwrap();
    let spectrum = spectrum_via_kummer(p, 5, &pol()).unwrap();
    for e in &spectrum {
        let j = (e.k as f64 + 1.0) * std::f64::consts::PI;
        assert!((e.lambda - j * j).abs() <= 0.01);
    }
    let r = verify_bessel_window(&spectrum, &p, &pol()).unwrap();
    assert!(r.pass && r.entries[0].weak.is_empty());
}

#[test]
fn domain_integral_reference() {
    assert!(close(
        phi_norm_sq_domain(3, 0.5, 20.0),
        0.201_780_987_346_126_157_95,
        1e-11
    ));
}

#[test]
fn quadrature_self_consistency() {
    for &(k, nu, xi) in &[(0, 0.0, 16.0), (4, 0.5, 25.0), (9, 2.0, 40.0), (2, 0.2, 12.0)] {
        let a = phi_norm_sq_to(k, nu, f64::sqrt(xi), PANEL_WIDTH);
        let b = phi_norm_sq_to(k, nu, f64::sqrt(xi), PANEL_WIDTH / 2.0);
        assert!((a - b).abs() <= 1e-10 * b, "k={k} nu={nu}");
    }
}

#[test]
fn boundary_and_norm_checks() {
    let r = boundary_decay_check(0.0, 0.5, &[16.0, 24.0, 32.0], &[0], &pol()).unwrap();
    assert!(r.pass && r.strictly_decreasing && r.sign_pattern);
    assert!(phi(1, 0.0, 6.0).abs() >= phi(0, 0.0, 6.0).abs());
    let r = boundary_decay_check(0.0, 0.5, &[24.0, 36.0], &[0, 1, 2], &pol()).unwrap();
    assert!(r.ordered_in_k && r.pass);

    let ks: Vec<usize> = (0..=9).collect();
    let n = norm_lower_check(0.0, &[36.0], &ks, 0.1).unwrap();
    assert!(n.pass);
    // Up to rounding: the neglected tail is below e^{-30} here.
    assert!(n.entries.iter().all(|e| e.domain <= e.halfline * (1.0 + 1e-13)));
    let m = norm_lower_check(0.0, &[12.0, 24.0, 48.0], &[2], 0.1).unwrap();
    assert!(m.entries.windows(2).all(|w| w[1].ratio > w[0].ratio));
}

/// Largest sign change of `Phi_k` located by a fine scan and bisection.
fn largest_root(k: usize, nu: f64) -> f64 {
    let f = |x: f64| phi(k, nu, x);
    let mut x = (4.0 * k as f64 + 2.0 * nu + 10.0).sqrt();
    while f(x).signum() == f(x - 1e-3).signum() {
        x -= 1e-3;
    }
    let (mut lo, mut hi) = (x - 1e-3, x);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if f(mid).signum() == f(hi).signum() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn largest_root_bound() {
    for &nu in &[0.0, 0.5, 2.0] {
        for k in 1..=20 {
            let r = largest_root(k, nu);
            let s = 2.0 * k as f64 + 1.0 + nu;
            assert!(r * r < s + (s * s + 0.25 - nu * nu).sqrt(), "k={k} nu={nu}");
        }
    }
}

#[test]
fn tail_monotone_decreasing() {
    let delta = 0.1;
    for &nu in &[0.0, 1.0] {
        for k in [0, 3, 8] {
            let start = ((1.0 + delta) * singular_spectra::eigensolver::mu(k, nu)).sqrt();
            let samples: Vec<f64> = (0..200)
                .map(|i| phi(k, nu, start + 0.05 * i as f64).abs())
                .collect();
            assert!(samples.windows(2).all(|w| w[1] < w[0]), "k={k} nu={nu}");
        }
    }
}
