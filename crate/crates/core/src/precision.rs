//! Working-precision selection and certified summation of hypergeometric-type
//! series in adjustable-precision floating point.
//!
//! Every series handled here is normalised so that its zeroth term is 1 and
//! successive terms are linked by a rational ratio `t_{k+1} = t_k * r_k`.
//! A cheap `f64` survey in log space estimates the size of the largest
//! partial sums, which fixes the number of bits lost to cancellation. The
//! sum is then formed twice, at `p` and `p + 32` bits, and the two results
//! must agree within their error bounds before a value is released.

use astro_float::{BigFloat, RoundingMode, Sign, WORD_BIT_SIZE};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

/// Extra bits used for the mandatory recomputation.
pub const RECHECK_BITS: usize = 32;

/// Hard ceiling on working precision before giving up.
pub const MAX_BITS: usize = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    /// Relative tolerance requested from every evaluation.
    pub target_tol: f64,
    /// Lower bound on the working precision, at least 53.
    pub min_bits: usize,
    /// Bits added on top of the estimated cancellation, at least 32.
    pub guard_bits: usize,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        Self {
            target_tol: 1e-10,
            min_bits: 64,
            guard_bits: 32,
        }
    }
}

impl PrecisionPolicy {
    pub fn new(target_tol: f64, min_bits: usize, guard_bits: usize) -> Result<Self> {
        let policy = Self {
            target_tol,
            min_bits,
            guard_bits,
        };
        policy.validate()?;
        Ok(policy)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.target_tol > 0.0 && self.target_tol < 1.0) {
            return Err(Error::InvalidParams(format!(
                "target_tol must lie in (0, 1), got {}",
                self.target_tol
            )));
        }
        if self.min_bits < 53 {
            return Err(Error::InvalidParams(format!(
                "min_bits must be at least 53, got {}",
                self.min_bits
            )));
        }
        if self.guard_bits < 32 {
            return Err(Error::InvalidParams(format!(
                "guard_bits must be at least 32, got {}",
                self.guard_bits
            )));
        }
        Ok(())
    }

    /// Bits needed to express `target_tol`.
    pub fn tol_bits(&self) -> usize {
        (-self.target_tol.log2()).ceil().max(1.0) as usize
    }

    /// Baseline precision for a Kummer series at argument `z`:
    /// `max(min_bits, ceil(|z| log2 e) + ceil(10 log2(|z| + 2)) + guard_bits)`.
    pub fn bits_for_argument(&self, z: f64) -> usize {
        let z = z.abs();
        let growth = (z * std::f64::consts::LOG2_E).ceil() as usize;
        let poly = (10.0 * (z + 2.0).log2()).ceil() as usize;
        self.min_bits.max(growth + poly + self.guard_bits)
    }

    /// Precision that keeps the absolute rounding error of a sum with
    /// `n_terms` terms and `log2_sum_abs = log2(sum |t_k|)` below
    /// `target_tol * 2^-guard_bits`.
    pub fn bits_for_cancellation(&self, log2_sum_abs: f64, n_terms: usize) -> usize {
        let lost = log2_sum_abs.max(0.0).ceil() as usize;
        let count = ((3 * n_terms + 4) as f64).log2().ceil() as usize;
        lost + self.tol_bits() + count + self.guard_bits
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.target_tol = tol;
        self
    }

    pub fn with_min_bits(mut self, bits: usize) -> Self {
        self.min_bits = bits;
        self
    }
}

/// A real number stored as the exact (unrounded) sum `hi + lo` of two
/// doubles. Used for parameters that sit a tiny distance away from an
/// integer, such as an a-zero `-k - 1e-20`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitReal {
    pub hi: f64,
    pub lo: f64,
}

impl SplitReal {
    pub fn new(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    pub fn approx(&self) -> f64 {
        self.hi + self.lo
    }

    pub(crate) fn to_big(self) -> BigFloat {
        add_exact(&exact(self.hi), &exact(self.lo))
    }

    /// `self + k` as an `f64`, rounding once. Exactly zero only when the
    /// true sum is zero, provided `hi + k` is exact.
    pub(crate) fn shifted_approx(&self, k: f64) -> f64 {
        (self.hi + k) + self.lo
    }

    /// True when the value is exactly a nonpositive integer.
    pub fn is_nonpositive_integer(&self) -> bool {
        self.lo == 0.0 && self.hi <= 0.0 && self.hi.fract() == 0.0
            || self.hi == 0.0 && self.lo <= 0.0 && self.lo.fract() == 0.0
    }
}

impl From<f64> for SplitReal {
    fn from(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }
}

/// Exact sum. `add_full_prec` does not handle a zero operand, so zeros are
/// short-circuited here.
pub(crate) fn add_exact(x: &BigFloat, y: &BigFloat) -> BigFloat {
    if x.is_zero() {
        y.clone()
    } else if y.is_zero() {
        x.clone()
    } else {
        x.add_full_prec(y)
    }
}

/// Exact product, with the same zero handling as [`add_exact`].
pub(crate) fn mul_exact(x: &BigFloat, y: &BigFloat) -> BigFloat {
    if x.is_zero() || y.is_zero() {
        BigFloat::from_f64(0.0, 64)
    } else {
        x.mul_full_prec(y)
    }
}

/// Exact big-float copy of a double.
pub(crate) fn exact(x: f64) -> BigFloat {
    BigFloat::from_f64(x, 64)
}

/// Leading mantissa bits read when converting to `f64`. Enough that the
/// final `f64` rounding is correct except in near-halfway cases.
const LEADING_BITS: usize = 128;

/// Leading mantissa words scaled to `[1/2, 1)`.
fn leading_fraction(words: &[astro_float::Word]) -> f64 {
    let scale = 2f64.powi(-(WORD_BIT_SIZE as i32));
    let take = LEADING_BITS.div_ceil(WORD_BIT_SIZE).min(words.len());
    // Least significant first, so small parts accumulate before the large ones.
    words[words.len() - take..]
        .iter()
        .fold(0.0, |acc, &w| (acc + w as f64) * scale)
}

/// Nearest double to a big float (saturating to infinity / zero at the ends
/// of the exponent range).
pub(crate) fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let Some((words, _, sign, exponent, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let v = libm::scalbn(leading_fraction(words), exponent);
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

/// `log2 |x|`, accurate to a few ulps; `-inf` for zero.
pub(crate) fn log2_abs(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    match x.as_raw_parts() {
        Some((words, _, _, exponent, _)) => exponent as f64 + leading_fraction(words).log2(),
        None => f64::NAN,
    }
}

fn log2_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (1.0 + (lo - hi).exp2()).log2()
}

/// A series `sum_k t_k` with `t_0 = 1` and `t_{k+1} = t_k * r_k`.
pub(crate) trait RatioSeries {
    /// `r_k` in double precision. Exactly zero when the series terminates.
    fn ratio_f64(&self, k: usize) -> f64;
    /// `t * r_k` rounded to `p` bits; `None` if the series terminates after term `k`.
    fn apply_ratio(&self, t: &BigFloat, k: usize, p: usize) -> Option<BigFloat>;
    /// True when `|r_j| <= 1/2` for every `j >= k`, which bounds the tail
    /// after term `k + 1` by `|t_{k+1}|`.
    fn tail_bounded(&self, k: usize) -> bool;
}

/// Log-space survey of a ratio series.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Survey {
    pub log2_sum_abs: f64,
    pub n_terms: usize,
}

/// Hard cap on series length; far above anything the supported parameter
/// ranges require.
const MAX_TERMS: usize = 2_000_000;

pub(crate) fn survey<S: RatioSeries>(series: &S, floor_log2: f64) -> Result<Survey> {
    let mut log_t = 0.0f64;
    let mut log_sum = 0.0f64;
    let mut k = 0usize;
    loop {
        let r = series.ratio_f64(k);
        if r == 0.0 {
            return Ok(Survey {
                log2_sum_abs: log_sum,
                n_terms: k + 1,
            });
        }
        log_t += r.abs().log2();
        log_sum = log2_add(log_sum, log_t);
        k += 1;
        if series.tail_bounded(k) && log_t < floor_log2.min(log_sum - 60.0) {
            return Ok(Survey {
                log2_sum_abs: log_sum,
                n_terms: k + 1,
            });
        }
        if k > MAX_TERMS {
            return Err(Error::ConvergenceFailure(format!(
                "series survey did not settle within {MAX_TERMS} terms"
            )));
        }
    }
}

/// Plain summation at `p` bits. Returns the sum, the term count and
/// `log2 |last term|` (used as the tail bound).
pub(crate) fn sum_at<S: RatioSeries>(
    series: &S,
    p: usize,
    log2_sum_abs: f64,
) -> Result<(BigFloat, usize, f64)> {
    let mut term = BigFloat::from_f64(1.0, p);
    let mut sum = term.clone();
    let cutoff = log2_sum_abs - p as f64 - 2.0;
    let mut k = 0usize;
    loop {
        match series.apply_ratio(&term, k, p) {
            None => return Ok((sum, k + 1, f64::NEG_INFINITY)),
            Some(next) => term = next,
        }
        sum = sum.add(&term, p, RM);
        k += 1;
        let lt = log2_abs(&term);
        if series.tail_bounded(k) && lt < cutoff {
            return Ok((sum, k + 1, lt));
        }
        if k > MAX_TERMS {
            return Err(Error::ConvergenceFailure(format!(
                "series did not converge within {MAX_TERMS} terms"
            )));
        }
    }
}

/// A value together with a rigorous-in-spirit absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Certified {
    pub value: f64,
    pub abs_err: f64,
    pub bits: usize,
    /// `log2 sum |t_k|`, the cancellation scale of the underlying series.
    pub log2_scale: f64,
}

impl Certified {
    /// Sign of the value if it is certain, `None` when `|value| <= abs_err`
    /// (including an exact zero).
    pub fn sign(&self) -> Option<i8> {
        if self.value.abs() > self.abs_err {
            Some(if self.value > 0.0 { 1 } else { -1 })
        } else {
            None
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.value == 0.0 && self.abs_err == 0.0
    }

    pub(crate) fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            abs_err: self.abs_err * factor.abs(),
            ..self
        }
    }
}

pub(crate) fn rounding_bound(log2_sum_abs: f64, p: usize, n_terms: usize, log2_tail: f64) -> f64 {
    let rounding = (log2_sum_abs - p as f64).exp2() * (3 * n_terms + 4) as f64 * 2.0;
    rounding + 2.0 * log2_tail.exp2()
}

/// Evaluates a ratio series to the policy's tolerance with the `+32`-bit
/// recheck. With `require_sign`, precision is escalated until the sign of
/// the sum is certain.
pub(crate) fn certified_sum<S: RatioSeries>(
    series: &S,
    policy: &PrecisionPolicy,
    z: f64,
    require_sign: bool,
) -> Result<Certified> {
    policy.validate()?;
    let floor = -((policy.tol_bits() + policy.guard_bits + 16) as f64);
    let sv = survey(series, floor)?;
    let mut p = policy
        .bits_for_argument(z)
        .max(policy.bits_for_cancellation(sv.log2_sum_abs, sv.n_terms));
    loop {
        if p > MAX_BITS {
            return Err(Error::PrecisionExhausted { bits: p });
        }
        let (v1, n1, tail1) = sum_at(series, p, sv.log2_sum_abs)?;
        let (v2, n2, tail2) = sum_at(series, p + RECHECK_BITS, sv.log2_sum_abs)?;
        let e1 = rounding_bound(sv.log2_sum_abs, p, n1, tail1);
        let e2 = rounding_bound(sv.log2_sum_abs, p + RECHECK_BITS, n2, tail2);
        let diff = to_f64(&v1.sub(&v2, p + RECHECK_BITS, RM)).abs();
        let value = to_f64(&v2);
        let agrees = diff <= e1 + e2 || diff <= policy.target_tol * value.abs() * 1e-3;
        let out = Certified {
            value,
            abs_err: e2.max(diff),
            bits: p + RECHECK_BITS,
            log2_scale: sv.log2_sum_abs,
        };
        // Both precisions cancel to exactly zero: an exact zero of a
        // terminating series, reported with zero error.
        if v1.is_zero() && v2.is_zero() {
            return Ok(Certified {
                value: 0.0,
                abs_err: 0.0,
                ..out
            });
        }
        if agrees && (!require_sign || out.sign().is_some()) {
            return Ok(out);
        }
        if agrees && 2 * p > MAX_BITS {
            return Err(Error::AmbiguousSign {
                noise: out.abs_err,
                bits: out.bits,
            });
        }
        p *= 2;
    }
}
