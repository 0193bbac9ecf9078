use std::f64::consts::PI;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: f64, k: usize) -> f64 {
    let mut p = 1.0;
    for j in 0..k {
        p *= a + j as f64;
    }
    p
}

/// `ln |(a)_k|`, for arguments where the product itself would overflow.
pub fn ln_pochhammer_abs(a: f64, k: usize) -> f64 {
    (0..k).map(|j| (a + j as f64).abs().ln()).sum()
}

pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// Digamma function `psi(x) = Gamma'(x) / Gamma(x)`.
///
/// Upward recurrence to `x >= 10`, then the asymptotic series in `1/x^2`.
/// Negative non-integer arguments go through the reflection formula;
/// the poles at nonpositive integers return NaN.
pub fn digamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 {
        if x.fract() == 0.0 {
            return f64::NAN;
        }
        return digamma(1.0 - x) - PI / (PI * x).tan();
    }
    let mut acc = 0.0;
    let mut y = x;
    while y < 10.0 {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    // Bernoulli coefficients B_{2n} / (2n).
    let series = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * 691.0 / 32760.0)))));
    acc + y.ln() - 0.5 / y - series
}

/// `psi(n)` for a positive integer `n`: `-gamma + H_{n-1}`.
pub fn digamma_int(n: usize) -> f64 {
    assert!(n >= 1, "digamma_int requires n >= 1");
    -EULER_GAMMA + (1..n).map(|j| 1.0 / j as f64).sum::<f64>()
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, j| acc * j as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(7.3, 0), 1.0);
        assert_eq!(pochhammer(3.0, 2), 12.0);
        assert_eq!(pochhammer(1.0, 3), 6.0);
        assert_eq!(pochhammer(-2.0, 3), 0.0);
    }

    #[test]
    fn digamma_reference_values() {
        assert!((digamma(1.0) + EULER_GAMMA).abs() < 4e-15);
        assert!((digamma(0.5) + EULER_GAMMA + 2.0 * 2f64.ln()).abs() < 1e-14);
        // mpmath.digamma
        assert!((digamma(12.7) - 2.501_715_566_419_337_6).abs() < 1e-14);
        assert!((digamma(-2.5) - 1.103_156_640_645_243_6).abs() < 1e-13);
        assert!((digamma(3e-3) + 333.905_624_985_407_46).abs() < 1e-10);
        assert!(digamma(-3.0).is_nan());
    }

    #[test]
    fn digamma_integer_matches_general() {
        for n in 1..40 {
            assert!((digamma_int(n) - digamma(n as f64)).abs() < 1e-14 * (1.0 + digamma_int(n).abs()));
        }
    }

    #[test]
    fn digamma_recurrence() {
        for &x in &[0.1, 0.9, 2.3, 7.77, 15.5] {
            let lhs = digamma(x + 1.0) - digamma(x);
            assert!((lhs - 1.0 / x).abs() < 1e-13 / x.min(1.0));
        }
    }
}
