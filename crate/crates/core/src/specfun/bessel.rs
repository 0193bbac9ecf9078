use std::f64::consts::PI;

use astro_float::BigFloat;

use crate::error::{Error, Result};
use crate::precision::{
    add_exact, certified_sum, exact, mul_exact, Certified, PrecisionPolicy, RatioSeries, RM,
};

const NEWTON_MAX_ITER: usize = 60;

/// `S_nu(x) = 0F1(; nu+1; -x^2/4) = Gamma(nu+1) (2/x)^nu J_nu(x)`.
struct ReducedBessel {
    nu: f64,
    w: f64,
    w_big: BigFloat,
}

impl ReducedBessel {
    fn new(nu: f64, x: f64) -> Self {
        let w = -x * x / 4.0;
        // x^2/4 is formed exactly in big float.
        let xb = exact(x);
        let w_big = mul_exact(&mul_exact(&xb, &xb), &exact(-0.25));
        Self { nu, w, w_big }
    }
}

impl RatioSeries for ReducedBessel {
    fn ratio_f64(&self, k: usize) -> f64 {
        let k = k as f64;
        self.w / ((self.nu + 1.0 + k) * (k + 1.0))
    }

    fn apply_ratio(&self, t: &BigFloat, k: usize, p: usize) -> Option<BigFloat> {
        let kf = k as f64;
        let den = mul_exact(&add_exact(&exact(self.nu + 1.0), &exact(kf)), &exact(kf + 1.0));
        Some(t.mul(&self.w_big, p, RM).div(&den, p, RM))
    }

    fn tail_bounded(&self, k: usize) -> bool {
        let k = k as f64;
        (self.nu + 1.0 + k) * (k + 1.0) >= 2.0 * self.w.abs()
    }
}

fn reduced(nu: f64, x: f64, policy: &PrecisionPolicy) -> Result<Certified> {
    // The alternating series loses about x / ln 2 bits, the same as a
    // Kummer series at argument x.
    certified_sum(&ReducedBessel::new(nu, x), policy, x, false)
}

/// `J_nu(x)` from its power series, for `nu >= 0` and `x >= 0`.
pub fn bessel_j(nu: f64, x: f64, policy: &PrecisionPolicy) -> Result<f64> {
    if !(nu >= 0.0 && x >= 0.0 && x.is_finite()) {
        return Err(Error::InvalidParams(format!(
            "bessel_j needs nu, x >= 0, got {nu}, {x}"
        )));
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    let s = reduced(nu, x, policy)?.value;
    let log_pref = nu * (x / 2.0).ln() - libm::lgamma(nu + 1.0);
    Ok(s * log_pref.exp())
}

/// McMahon's large-zero expansion, used as the Newton seed.
pub fn mcmahon_seed(nu: f64, k: usize) -> f64 {
    let beta = (k as f64 + 1.0 + nu / 2.0 - 0.25) * PI;
    let mu = 4.0 * nu * nu;
    let e = 8.0 * beta;
    beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e.powi(3))
}

/// `j_{nu,k}`, the `(k+1)`-th positive zero of `J_nu` (`k = 0` is the first).
pub fn bessel_zero(nu: f64, k: usize, policy: &PrecisionPolicy) -> Result<f64> {
    if !(nu >= 0.0 && nu.is_finite()) {
        return Err(Error::InvalidParams(format!(
            "bessel_zero needs nu >= 0, got {nu}"
        )));
    }
    let seed = mcmahon_seed(nu, k);
    let mut x = seed;
    for _ in 0..NEWTON_MAX_ITER {
        let s = reduced(nu, x, policy)?.value;
        let s1 = reduced(nu + 1.0, x, policy)?.value;
        // S_nu'(x) = -x / (2 (nu+1)) S_{nu+1}(x)
        let ds = -x / (2.0 * (nu + 1.0)) * s1;
        if ds == 0.0 {
            break;
        }
        let step = (s / ds).clamp(-0.5, 0.5);
        x -= step;
        if step.abs() <= 4.0 * f64::EPSILON * x {
            if (x - seed).abs() > PI / 2.0 {
                return Err(Error::ConvergenceFailure(format!(
                    "Newton for j_({nu},{k}) drifted from {seed} to {x}"
                )));
            }
            return Ok(x);
        }
    }
    Err(Error::ConvergenceFailure(format!(
        "Newton for j_({nu},{k}) did not settle in {NEWTON_MAX_ITER} iterations"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_integer_order() {
        let p = PrecisionPolicy::default();
        for k in 0..12 {
            let j = bessel_zero(0.5, k, &p).unwrap();
            let want = (k as f64 + 1.0) * PI;
            assert!((j - want).abs() < 1e-12 * want, "k={k}: {j}");
        }
    }

    #[test]
    fn reference_zeros() {
        // mpmath.besseljzero
        let p = PrecisionPolicy::default();
        let cases = [
            (0.0, 0, 2.404_825_557_695_772_8),
            (1.0, 0, 3.831_705_970_207_512_3),
            (2.5, 0, 5.763_459_196_894_549_8),
            (3.0, 10, 38.370_472_434_756_944),
            (1.0, 20, 66.753_226_734_098_493),
            (0.0, 150, 473.595_356_466_447_1),
        ];
        for (nu, k, want) in cases {
            let j = bessel_zero(nu, k, &p).unwrap();
            assert!((j - want).abs() < 1e-12 * want, "j_({nu},{k}) = {j}, want {want}");
        }
    }

    #[test]
    fn series_values() {
        let p = PrecisionPolicy::default();
        // J_{1/2}(x) = sqrt(2/(pi x)) sin x
        for &x in &[0.3, 2.0, 17.5] {
            let want = (2.0 / (PI * x)).sqrt() * x.sin();
            assert!((bessel_j(0.5, x, &p).unwrap() - want).abs() < 1e-14);
        }
        assert_eq!(bessel_j(0.0, 0.0, &p).unwrap(), 1.0);
    }
}
