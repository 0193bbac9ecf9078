use astro_float::BigFloat;
use serde::{Deserialize, Serialize};

use super::gamma::{digamma, digamma_int, factorial, pochhammer};
use crate::error::{Error, Result};
use crate::precision::{
    add_exact, certified_sum, exact, log2_abs, mul_exact, rounding_bound, survey, to_f64, Certified,
    PrecisionPolicy, RatioSeries, SplitReal, MAX_BITS, RECHECK_BITS, RM,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KummerArgs {
    pub a: f64,
    pub b: f64,
    pub z: f64,
}

impl KummerArgs {
    pub fn new(a: f64, b: f64, z: f64) -> Result<Self> {
        let args = Self { a, b, z };
        args.validate()?;
        Ok(args)
    }

    pub fn validate(&self) -> Result<()> {
        check_b(self.b)?;
        if !self.a.is_finite() {
            return Err(Error::InvalidParams(format!("a must be finite, got {}", self.a)));
        }
        if !(self.z.is_finite() && self.z >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "z must be finite and nonnegative, got {}",
                self.z
            )));
        }
        Ok(())
    }
}

fn check_b(b: f64) -> Result<()> {
    if !b.is_finite() {
        return Err(Error::InvalidParams(format!("b must be finite, got {b}")));
    }
    if b <= 0.0 && b.fract() == 0.0 {
        return Err(Error::InvalidParams(format!(
            "b must not be zero or a negative integer, got {b}"
        )));
    }
    Ok(())
}

fn is_integer(x: f64) -> bool {
    x.is_finite() && x.fract() == 0.0
}

/// Parameter classes for the second solution of Kummer's equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SecondSolutionBranch {
    /// `b` not an integer: `z^{1-b} M(a+1-b, 2-b, z)`.
    NonIntegerB,
    /// `b = 1+n`, `a` neither a nonpositive integer nor in `1..=n`.
    IntegerBGenericA,
    /// `b = 1+n`, `a = -m` with `m >= 0`.
    IntegerBNegIntA,
    /// `b = 1+n`, `a` an integer in `1..=n`: a finite sum in `1/z`.
    IntegerBPosIntA,
}

impl SecondSolutionBranch {
    pub fn select(a: f64, b: f64) -> Result<Self> {
        check_b(b)?;
        if !a.is_finite() {
            return Err(Error::InvalidParams(format!("a must be finite, got {a}")));
        }
        if !is_integer(b) {
            return Ok(Self::NonIntegerB);
        }
        let n = b - 1.0;
        if is_integer(a) {
            if a <= 0.0 {
                return Ok(Self::IntegerBNegIntA);
            }
            if a <= n {
                return Ok(Self::IntegerBPosIntA);
            }
        }
        Ok(Self::IntegerBGenericA)
    }
}

/// Kummer series `sum (a)_k / ((b)_k k!) z^k` with an exactly represented `a`.
pub(crate) struct KummerSeries {
    a: SplitReal,
    a_big: BigFloat,
    b: f64,
    z: f64,
    z_big: BigFloat,
    a_abs: f64,
}

impl KummerSeries {
    pub(crate) fn new(a: SplitReal, b: f64, z: f64) -> Self {
        Self {
            a,
            a_big: a.to_big(),
            b,
            z,
            z_big: exact(z),
            a_abs: a.approx().abs(),
        }
    }
}

impl RatioSeries for KummerSeries {
    fn ratio_f64(&self, k: usize) -> f64 {
        let kf = k as f64;
        let num = self.a.shifted_approx(kf);
        if num == 0.0 && add_exact(&self.a_big, &exact(kf)).is_zero() {
            return 0.0;
        }
        // A vanishing f64 numerator that is not exactly zero: use a tiny
        // stand-in so the survey keeps going.
        let num = if num == 0.0 { f64::MIN_POSITIVE } else { num };
        num * self.z / ((self.b + kf) * (kf + 1.0))
    }

    fn apply_ratio(&self, t: &BigFloat, k: usize, p: usize) -> Option<BigFloat> {
        let kf = exact(k as f64);
        let num = add_exact(&self.a_big, &kf);
        if num.is_zero() {
            return None;
        }
        let numz = mul_exact(&num, &self.z_big);
        let den = mul_exact(&add_exact(&exact(self.b), &kf), &exact(k as f64 + 1.0));
        Some(t.mul(&numz, p, RM).div(&den, p, RM))
    }

    fn tail_bounded(&self, k: usize) -> bool {
        let j = k as f64;
        let z = self.z.abs();
        j + self.b >= 1.0
            && (j + self.b) * (j + 1.0) >= 2.0 * (j + self.a_abs) * z
            && 2.0 * j + self.b + 1.0 >= 2.0 * z
    }
}

/// `M(a, b, z)` for an exactly split `a` and any real `z`, certified to the
/// policy tolerance. With `require_sign` the precision is raised until the
/// sign of the result is certain.
pub fn kummer_m_split(
    a: SplitReal,
    b: f64,
    z: f64,
    policy: &PrecisionPolicy,
    require_sign: bool,
) -> Result<Certified> {
    check_b(b)?;
    if !(a.hi.is_finite() && a.lo.is_finite() && z.is_finite()) {
        return Err(Error::InvalidParams("non-finite Kummer argument".into()));
    }
    if z == 0.0 {
        return Ok(Certified {
            value: 1.0,
            abs_err: 0.0,
            bits: policy.min_bits,
            log2_scale: 0.0,
        });
    }
    certified_sum(&KummerSeries::new(a, b, z), policy, z, require_sign)
}

/// Kummer's function `M(a, b, z)` for `z >= 0`.
pub fn kummer_m(args: KummerArgs, policy: &PrecisionPolicy) -> Result<f64> {
    kummer_m_certified(args, policy).map(|c| c.value)
}

pub fn kummer_m_certified(args: KummerArgs, policy: &PrecisionPolicy) -> Result<Certified> {
    args.validate()?;
    kummer_m_split(args.a.into(), args.b, args.z, policy, false)
}

/// Right-hand side of Kummer's transformation, `e^z M(b-a, b, -z)`.
pub fn kummer_reflect(args: KummerArgs, policy: &PrecisionPolicy) -> Result<f64> {
    kummer_reflect_certified(args, policy).map(|c| c.value)
}

pub fn kummer_reflect_certified(args: KummerArgs, policy: &PrecisionPolicy) -> Result<Certified> {
    args.validate()?;
    let inner = kummer_m_split(SplitReal::new(args.b, -args.a), args.b, -args.z, policy, false)?;
    Ok(inner.scaled(args.z.exp()))
}

/// Whittaker's function `M_{kappa,mu}(z) = e^{-z/2} z^{1/2+mu} M(1/2+mu-kappa, 1+2mu, z)`.
pub fn whittaker_m(kappa: f64, mu: f64, z: f64, policy: &PrecisionPolicy) -> Result<f64> {
    whittaker_m_certified(kappa, mu, z, policy).map(|c| c.value)
}

pub fn whittaker_m_certified(kappa: f64, mu: f64, z: f64, policy: &PrecisionPolicy) -> Result<Certified> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::InvalidParams(format!("z must be positive, got {z}")));
    }
    let two_mu = 2.0 * mu;
    if two_mu < 0.0 && two_mu.fract() == 0.0 {
        return Err(Error::InvalidParams(format!(
            "2 mu must not be a negative integer, got mu = {mu}"
        )));
    }
    let a = 0.5 + mu - kappa;
    let m = kummer_m_split(a.into(), 1.0 + two_mu, z, policy, false)?;
    let prefactor = (-0.5 * z + (0.5 + mu) * z.ln()).exp();
    Ok(m.scaled(prefactor))
}

/// Second fundamental solution of Kummer's equation at `z > 0`.
pub fn kummer_m_second(args: KummerArgs, policy: &PrecisionPolicy) -> Result<f64> {
    kummer_m_second_certified(args, policy).map(|c| c.value)
}

pub fn kummer_m_second_certified(args: KummerArgs, policy: &PrecisionPolicy) -> Result<Certified> {
    args.validate()?;
    let KummerArgs { a, b, z } = args;
    if z <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "second solution needs z > 0, got {z}"
        )));
    }
    match SecondSolutionBranch::select(a, b)? {
        SecondSolutionBranch::NonIntegerB => {
            let m = kummer_m_split(SplitReal::new(a, 1.0 - b), 2.0 - b, z, policy, false)?;
            Ok(m.scaled(z.powf(1.0 - b)))
        }
        SecondSolutionBranch::IntegerBPosIntA => {
            let n = (b - 1.0) as usize;
            let ai = a as usize;
            let mut sum = 0.0;
            let mut abs = 0.0;
            for k in ai..=n {
                let t = factorial(k - 1) / (factorial(n - k) * factorial(k - ai)) * z.powi(-(k as i32));
                sum += t;
                abs += t.abs();
            }
            Ok(Certified {
                value: sum,
                abs_err: abs * 4.0 * f64::EPSILON * (n + 1) as f64,
                bits: 53,
                log2_scale: abs.log2(),
            })
        }
        SecondSolutionBranch::IntegerBGenericA | SecondSolutionBranch::IntegerBNegIntA => {
            logarithmic_second(a, (b - 1.0) as usize, z, policy)
        }
    }
}

/// `F(z) = sum_{k=1}^{n} n! (k-1)! / ((n-k)! (1-a)_k) z^{-k}` with its
/// absolute-value sum.
fn finite_negative_powers(a: f64, n: usize, z: f64) -> (f64, f64) {
    let mut sum = 0.0;
    let mut abs = 0.0;
    for k in 1..=n {
        let t = factorial(n) * factorial(k - 1) / (factorial(n - k) * pochhammer(1.0 - a, k))
            * z.powi(-(k as i32));
        sum += t;
        abs += t.abs();
    }
    (sum, abs)
}

/// Cases with `b = 1 + n` that carry `ln z`. Writing `t_k` for the Kummer
/// terms of `M(a, n+1, z)`, the solution is
/// `F(z) - sum_k t_k w_k + R(z)`, where `w_k = ln z + psi(a+k) - psi(1+k) - psi(n+1+k)`.
/// For `a = -m` the digamma at a pole is replaced by `psi(1-a-k)`, the sum
/// stops at `k = m`, and `R` is the remaining power series
/// `(-1)^{1+m} m! sum_{k>m} (k-1-m)! / ((n+1)_k k!) z^k`. Otherwise `R = 0`.
fn logarithmic_second(a: f64, n: usize, z: f64, policy: &PrecisionPolicy) -> Result<Certified> {
    let neg_int = a <= 0.0 && a.fract() == 0.0;
    let b = (n + 1) as f64;
    let psi_a = if neg_int {
        digamma_int(1 + (-a) as usize)
    } else {
        digamma(a)
    };
    let w0 = z.ln() + psi_a - digamma_int(1) - digamma_int(n + 1);
    let (f_val, f_abs) = finite_negative_powers(a, n, z);

    let series = KummerSeries::new(a.into(), b, z);
    let floor = -((policy.tol_bits() + policy.guard_bits + 16) as f64);
    let sv = survey(&series, floor)?;
    let w_scale = w0.abs() + 2.0 * ((sv.n_terms + n + 2) as f64).ln() + 2.0;
    let mut log2_scale = sv.log2_sum_abs + w_scale.log2();

    let rest = if neg_int {
        Some(NegIntRemainder::new((-a) as usize, n, z))
    } else {
        None
    };
    if let Some(r) = &rest {
        log2_scale = log2_scale.max(r.log2_scale());
    }

    let mut p = policy
        .bits_for_argument(z)
        .max(policy.bits_for_cancellation(log2_scale, sv.n_terms) + 8);
    let const_err = 8.0 * f64::EPSILON * (w0.abs() + psi_a.abs() + 2.0) * sv.log2_sum_abs.exp2()
        + 8.0 * f64::EPSILON * f_abs * (n as f64 + 1.0);
    loop {
        if p > MAX_BITS {
            return Err(Error::PrecisionExhausted { bits: p });
        }
        let (s1, e1) = log_series_at(&series, &rest, a, n, w0, p, log2_scale)?;
        let (s2, e2) = log_series_at(&series, &rest, a, n, w0, p + RECHECK_BITS, log2_scale)?;
        let diff = to_f64(&s1.sub(&s2, p + RECHECK_BITS, RM)).abs();
        if diff <= e1 + e2 {
            let value = f_val + to_f64(&s2);
            return Ok(Certified {
                value,
                abs_err: e2.max(diff) + const_err,
                bits: p + RECHECK_BITS,
                log2_scale,
            });
        }
        p *= 2;
    }
}

/// `-sum t_k w_k + R` at `p` bits, with its rounding/truncation bound.
fn log_series_at(
    series: &KummerSeries,
    rest: &Option<NegIntRemainder>,
    a: f64,
    n: usize,
    w0: f64,
    p: usize,
    log2_scale: f64,
) -> Result<(BigFloat, f64)> {
    let one = exact(1.0);
    let mut t = BigFloat::from_f64(1.0, p);
    let mut w = BigFloat::from_f64(w0, p);
    let mut acc = t.mul(&w, p, RM);
    let cutoff = log2_scale - p as f64 - 2.0;
    let mut k = 0usize;
    let mut last = f64::NEG_INFINITY;
    loop {
        let Some(next) = series.apply_ratio(&t, k, p) else {
            last = f64::NEG_INFINITY;
            break;
        };
        t = next;
        let kf = k as f64;
        let inc = one
            .div(&add_exact(&exact(a), &exact(kf)), p, RM)
            .sub(&one.div(&exact(kf + 1.0), p, RM), p, RM)
            .sub(&one.div(&exact((n + 1) as f64 + kf), p, RM), p, RM);
        w = w.add(&inc, p, RM);
        let tw = t.mul(&w, p, RM);
        acc = acc.add(&tw, p, RM);
        k += 1;
        let lt = log2_abs(&tw);
        if lt.is_finite() {
            last = lt;
        }
        if series.tail_bounded(k) && lt < cutoff {
            break;
        }
        if k > 2_000_000 {
            return Err(Error::ConvergenceFailure(
                "logarithmic series did not converge".into(),
            ));
        }
    }
    let mut total = acc.neg();
    let mut err = rounding_bound(log2_scale, p, 3 * (k + 1), last) * 2.0;
    if let Some(r) = rest {
        let (v, e) = r.sum_at(p, log2_scale);
        total = total.add(&v, p, RM);
        err += e;
    }
    Ok((total, err))
}

/// `(-1)^{1+m} m! sum_{k>m} (k-1-m)! / ((n+1)_k k!) z^k`.
struct NegIntRemainder {
    m: usize,
    n: usize,
    z: f64,
    first_log2: f64,
}

impl NegIntRemainder {
    fn new(m: usize, n: usize, z: f64) -> Self {
        let k = m + 1;
        let first_log2 = (factorial(m).ln() + k as f64 * z.ln()
            - super::gamma::ln_pochhammer_abs((n + 1) as f64, k)
            - factorial(k).ln())
            / std::f64::consts::LN_2;
        Self { m, n, z, first_log2 }
    }

    fn log2_scale(&self) -> f64 {
        // Terms grow at most like e^z relative to the first.
        self.first_log2 + self.z * std::f64::consts::LOG2_E + 1.0
    }

    fn sum_at(&self, p: usize, log2_scale: f64) -> (BigFloat, f64) {
        let (m, n, z) = (self.m, self.n, self.z);
        let zb = exact(z);
        // First term m! z^{m+1} / ((n+1)_{m+1} (m+1)!) built exactly-ish at p bits.
        let mut s = BigFloat::from_f64(1.0, p);
        for j in 1..=m {
            s = s.mul(&exact(j as f64), p, RM);
        }
        for j in 0..=m {
            s = s
                .mul(&zb, p, RM)
                .div(&exact((n + 1 + j) as f64), p, RM)
                .div(&exact((j + 1) as f64), p, RM);
        }
        let mut acc = s.clone();
        let cutoff = log2_scale - p as f64 - 2.0;
        let mut k = m + 1;
        let mut count = 1usize;
        loop {
            let num = mul_exact(&exact((k - m) as f64), &zb);
            let den = mul_exact(&exact((n + 1 + k) as f64), &exact((k + 1) as f64));
            s = s.mul(&num, p, RM).div(&den, p, RM);
            acc = acc.add(&s, p, RM);
            k += 1;
            count += 1;
            if (k as f64) >= 2.0 * z && log2_abs(&s) < cutoff {
                break;
            }
        }
        let tail = log2_abs(&s);
        let err = rounding_bound(log2_scale, p, 2 * count, tail);
        if m % 2 == 0 {
            acc = acc.neg();
        }
        (acc, err)
    }
}
