use proptest::prelude::*;

use singular_spectra::azero::{a_to_kappa, a_to_lambda, find_azeros, lambda_to_a};
use singular_spectra::bounds::{c_residual, solve_c, verify_azero_bounds, verify_lower_bounds};
use singular_spectra::eigensolver::{mu, SpectralProblem};
use singular_spectra::quadrature::gauss_legendre;
use singular_spectra::specfun::{
    bessel_zero, count_positive_z_zeros, default_samples, kummer_m, kummer_m_certified,
    kummer_reflect_certified, laguerre, laguerre_recurrence_step, pochhammer, sign_changes_in_z, z_scan,
    KummerArgs, SecondSolutionBranch,
};
use singular_spectra::PrecisionPolicy;

fn pol() -> PrecisionPolicy {
    PrecisionPolicy::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kummer_at_origin_is_one(a in -20.0f64..20.0, b in 0.5f64..6.0) {
        prop_assert_eq!(kummer_m(KummerArgs::new(a, b, 0.0).unwrap(), &pol()).unwrap(), 1.0);
    }

    #[test]
    fn reflection_identity(a in -10.0f64..2.0, b in 1.0f64..4.0, z in 0.0f64..50.0) {
        let args = KummerArgs::new(a, b, z).unwrap();
        let m = kummer_m_certified(args, &pol()).unwrap();
        let r = kummer_reflect_certified(args, &pol()).unwrap();
        let allowed = 10.0 * pol().target_tol * m.value.abs() + m.abs_err + r.abs_err;
        prop_assert!((m.value - r.value).abs() <= allowed, "{} vs {}", m.value, r.value);
    }

    #[test]
    fn terminating_matches_laguerre(n in 0usize..=30, alpha in 0.0f64..3.0, r in 0.0f64..60.0) {
        let norm: f64 = (1..=n).map(|j| j as f64 / (alpha + j as f64)).product();
        let m = kummer_m(KummerArgs::new(-(n as f64), alpha + 1.0, r).unwrap(), &pol()).unwrap();
        let scale = m.abs().max((0.5 * r).exp());
        prop_assert!((m - norm * laguerre(n, alpha, r)).abs() <= 1e-10 * scale);
    }

    #[test]
    fn recurrence_closure(alpha in prop::sample::select(vec![0.0, 0.5, 1.0, 2.5]), r in 0.0f64..100.0) {
        let (mut prev, mut cur) = (0.0, 1.0);
        for n in 0..=50 {
            prop_assert_eq!(cur, laguerre(n, alpha, r));
            let next = laguerre_recurrence_step(n, alpha, r, cur, prev);
            prev = cur;
            cur = next;
        }
    }

    #[test]
    fn pochhammer_step(a in -5.0f64..5.0, k in 0usize..12) {
        let lhs = pochhammer(a, k + 1);
        let rhs = pochhammer(a, k) * (a + k as f64);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
    }

    #[test]
    fn branch_selection_is_total(a in -6i32..6, frac in prop::sample::select(vec![0.0, 0.3]), b in 1u32..5) {
        let a = a as f64 + frac;
        for b in [b as f64, b as f64 + 0.5] {
            let branch = SecondSolutionBranch::select(a, b).unwrap();
            prop_assert_eq!(branch == SecondSolutionBranch::NonIntegerB, b.fract() != 0.0);
        }
    }

    #[test]
    fn solve_c_root(delta in 0.0f64..5.0) {
        let c = solve_c(delta);
        prop_assert!(c > 0.0 && c < std::f64::consts::PI.powi(2));
        prop_assert!(c_residual(c, delta).abs() <= 1e-12);
        prop_assert!(solve_c(delta + 0.1) < c);
    }

    #[test]
    fn parameter_conversions(a in -200.0f64..1.0, nu in 0.0f64..4.0, xi in 0.1f64..100.0) {
        let lambda = a_to_lambda(a, nu, xi);
        prop_assert!((lambda_to_a(lambda, nu, xi) - a).abs() <= 1e-12 * a.abs().max(1.0));
        prop_assert_eq!(a_to_kappa(a, 1.0 + nu), (1.0 + nu) / 2.0 - a);
        // lambda/xi - mu_k = 4(-a - k)
        let k = 3;
        let gap = lambda / xi - mu(k, nu);
        prop_assert!((gap - 4.0 * (-a - k as f64)).abs() <= 1e-9 * (lambda / xi).abs().max(1.0));
    }

    #[test]
    fn gauss_legendre_exact(n in 1usize..30, deg_seed in 0usize..100) {
        let deg = deg_seed % (2 * n);
        let (x, w) = gauss_legendre(n);
        let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
        let want = if deg % 2 == 0 { 2.0 / (deg as f64 + 1.0) } else { 0.0 };
        prop_assert!((q - want).abs() <= 1e-13);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn counting_matches_sign_scan(i in 1usize..=12, b in prop::sample::select(vec![1.0, 1.5, 3.0])) {
        let a = -0.5 * i as f64;
        let z = z_scan(a, b);
        let n = sign_changes_in_z(a.into(), b, z, default_samples(a, b, z), &pol()).unwrap();
        prop_assert_eq!(n, count_positive_z_zeros(a, b));
    }

    #[test]
    fn bessel_zeros_increase(nu in 0.0f64..5.0) {
        let zeros: Vec<f64> = (0..40).map(|k| bessel_zero(nu, k, &pol()).unwrap()).collect();
        prop_assert!(zeros.windows(2).all(|w| w[1] > w[0]));
        let gap = zeros[39] - zeros[38];
        prop_assert!((gap - std::f64::consts::PI).abs() < 0.05);
    }

    #[test]
    fn azeros_strictly_localized(nu in 0.0f64..3.0, xi in 0.5f64..30.0) {
        let b = 1.0 + nu;
        let zeros = find_azeros(b, xi, 8, &pol()).unwrap();
        let report = verify_azero_bounds(&zeros, b, xi, solve_c(0.1), 0.5, f64::INFINITY);
        prop_assert!(report.pass, "{:?}", report);

        // Eigenvalue and a-zero representations agree on every check.
        let p = SpectralProblem::new(nu, xi).unwrap();
        let spectrum: Vec<_> = zeros
            .iter()
            .map(|z| singular_spectra::eigensolver::EigenResult {
                k: z.k,
                lambda: z.lambda,
                lambda_tilde: z.lambda / xi,
                a_zero: z.a,
                kappa_zero: z.kappa,
                method: singular_spectra::eigensolver::Method::KummerRoot,
                residual: 0.0,
                error_est: 0.0,
                delta: z.delta(),
            })
            .collect();
        let lower = verify_lower_bounds(&spectrum, &p, solve_c(0.1), 0.0);
        prop_assert_eq!(lower.pass, report.pass);
    }
}
