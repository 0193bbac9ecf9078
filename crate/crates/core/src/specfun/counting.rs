use super::kummer::kummer_m_split;
use crate::error::Result;
use crate::precision::{PrecisionPolicy, SplitReal};

/// Number of positive zeros of `z -> M(a, b, z)` for `b >= 0`:
/// zero when `a >= 0`, otherwise `ceil(-a)`.
pub fn count_positive_z_zeros(a: f64, _b: f64) -> usize {
    if a >= 0.0 {
        0
    } else {
        (-a).ceil() as usize
    }
}

/// Upper end of the interval that contains every positive z-zero:
/// `4 (2 ceil(-a) + b) + 10`.
pub fn z_scan(a: f64, b: f64) -> f64 {
    4.0 * (2.0 * (-a).max(0.0).ceil() + b) + 10.0
}

/// Sign changes of `z -> M(a, b, z)` over `samples` equally spaced points of
/// `(0, z_max]`. Samples whose sign cannot be certified are skipped.
pub fn sign_changes_in_z(
    a: SplitReal,
    b: f64,
    z_max: f64,
    samples: usize,
    policy: &PrecisionPolicy,
) -> Result<usize> {
    let mut last = 1i8; // M(a, b, 0) = 1
    let mut changes = 0;
    for i in 1..=samples {
        let z = z_max * i as f64 / samples as f64;
        let m = kummer_m_split(a, b, z, policy, false)?;
        if let Some(s) = m.sign() {
            if s != last {
                changes += 1;
                last = s;
            }
        }
    }
    Ok(changes)
}

/// Sample count that resolves the zeros of `M(a, b, .)` on `(0, z_max]`:
/// neighbouring zeros near `z_max` sit roughly `pi sqrt(z / kappa)` apart
/// with `kappa = b/2 - a`, and closest near the origin.
pub fn default_samples(a: f64, b: f64, z_max: f64) -> usize {
    let kappa = (b / 2.0 - a).max(0.5);
    let first = 5.78 / (4.0 * kappa);
    ((z_max / first) * 8.0).ceil().max(64.0) as usize
}
