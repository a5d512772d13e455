//! Log-space bounds on `E(R^k)` and a saddle-point approximation of the
//! Stirling numbers.
//!
//! Quantities such as `n^k p` overflow `f64` long before `k` reaches the
//! hundreds, so every value here is a natural logarithm.

use std::fmt;

use crate::asymptote::{chi_of_tau, ln_exp_m1};
use crate::error::{domain, Result};
use crate::exact::{raw_moment_stirling, ExactRational, MomentQuery};

/// Natural log of a nonnegative quantity. `log_e == -inf` stands for zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogValue {
    pub log_e: f64,
    pub descriptor: &'static str,
}

impl LogValue {
    pub fn new(log_e: f64, descriptor: &'static str) -> Self {
        Self { log_e, descriptor }
    }

    pub fn zero(descriptor: &'static str) -> Self {
        Self::new(f64::NEG_INFINITY, descriptor)
    }

    pub fn is_zero(&self) -> bool {
        self.log_e == f64::NEG_INFINITY
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.descriptor, self.log_e)
    }
}

/// `ln x` for an exact nonnegative rational.
pub fn log_of_exact(x: &ExactRational) -> Result<LogValue> {
    if x.sign() == num_bigint::Sign::Minus {
        return domain(format!("log of negative value {x}"));
    }
    Ok(LogValue::new(x.ln_abs(), "exact"))
}

fn ln_p(q: &MomentQuery) -> f64 {
    q.p().ln_abs()
}

/// `k log(n p)`, from `E(R^k) >= (E R)^k`.
pub fn log_trivial_lower(q: &MomentQuery) -> LogValue {
    let lp = ln_p(q);
    if lp == f64::NEG_INFINITY {
        return LogValue::zero("trivial_lower");
    }
    LogValue::new(q.k() as f64 * ((q.n() as f64).ln() + lp), "trivial_lower")
}

/// `k log n`, from `R <= n`.
pub fn log_trivial_upper_n(q: &MomentQuery) -> LogValue {
    LogValue::new(q.k() as f64 * (q.n() as f64).ln(), "trivial_upper_n")
}

/// `k log n + log p`, from `p^j <= p` in the Stirling form.
pub fn log_trivial_upper_p(q: &MomentQuery) -> LogValue {
    let lp = ln_p(q);
    if lp == f64::NEG_INFINITY {
        return LogValue::zero("trivial_upper_p");
    }
    LogValue::new(q.k() as f64 * (q.n() as f64).ln() + lp, "trivial_upper_p")
}

/// `k log n + n (1 - (1 - 1/n)^k) log p`, from Jensen's inequality applied
/// to `E(p^S)` with `E(S) = n (1 - (1 - 1/n)^k)`.
pub fn log_jensen_lower(q: &MomentQuery) -> LogValue {
    let lp = ln_p(q);
    if lp == f64::NEG_INFINITY {
        return LogValue::zero("jensen_lower");
    }
    let n = q.n() as f64;
    let k = q.k() as f64;
    // 1 - (1 - 1/n)^k without cancellation; n = 1 gives ln1p(-1) = -inf -> 1.
    let expected_distinct = n * -(k * (-1.0 / n).ln_1p()).exp_m1();
    LogValue::new(k * n.ln() + expected_distinct * lp, "jensen_lower")
}

/// `k (log k - log log(1 + k/(n p)))`.
pub fn log_ahle_upper(q: &MomentQuery) -> Result<LogValue> {
    if q.p().is_zero() {
        return domain("Ahle bound requires p > 0");
    }
    let k = q.k() as f64;
    let np = q.n() as f64 * q.p().to_f64();
    let t = (k / np).max(1e-15);
    Ok(LogValue::new(k * (k.ln() - t.ln_1p().ln()), "ahle_upper"))
}

/// Exact moment next to every bound, all as natural logs.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub query: MomentQuery,
    pub log_exact: LogValue,
    pub log_trivial_lower: LogValue,
    pub log_jensen_lower: LogValue,
    pub log_trivial_upper_n: LogValue,
    pub log_trivial_upper_p: LogValue,
    pub log_ahle_upper: LogValue,
}

impl BoundReport {
    /// Requires `p > 0` for the Ahle bound.
    pub fn compute(q: &MomentQuery) -> Result<Self> {
        let exact = raw_moment_stirling(q);
        Ok(Self {
            query: q.clone(),
            log_exact: log_of_exact(&exact)?,
            log_trivial_lower: log_trivial_lower(q),
            log_jensen_lower: log_jensen_lower(q),
            log_trivial_upper_n: log_trivial_upper_n(q),
            log_trivial_upper_p: log_trivial_upper_p(q),
            log_ahle_upper: log_ahle_upper(q)?,
        })
    }

    /// Every link of `trivial_lower <= jensen_lower <= exact <= ahle_upper`
    /// and `exact <= trivial_upper_p <= trivial_upper_n`, up to `slack`.
    pub fn violations(&self, slack: f64) -> Vec<(&'static str, &'static str)> {
        let chain = [
            (&self.log_trivial_lower, &self.log_jensen_lower),
            (&self.log_jensen_lower, &self.log_exact),
            (&self.log_exact, &self.log_ahle_upper),
            (&self.log_exact, &self.log_trivial_upper_p),
            (&self.log_trivial_upper_p, &self.log_trivial_upper_n),
        ];
        chain
            .into_iter()
            .filter(|(lo, hi)| lo.log_e > hi.log_e + slack)
            .map(|(lo, hi)| (lo.descriptor, hi.descriptor))
            .collect()
    }

    pub fn sandwich_holds(&self, slack: f64) -> bool {
        self.violations(slack).is_empty()
    }
}

fn ln_binomial(k: u64, j: u64) -> f64 {
    let j = j.min(k - j);
    (0..j).map(|i| ((k - i) as f64).ln() - ((i + 1) as f64).ln()).sum()
}

fn temme_chi(k: u64, j: u64) -> Result<f64> {
    if j == 0 || j >= k {
        return domain(format!("Temme approximation needs 1 <= j <= k-1, got k={k}, j={j}"));
    }
    chi_of_tau(j as f64 / k as f64)
}

/// `(k - j) / (k (chi - k/j + 1))`, the argument of the square-root factor.
pub fn temme_sqrt_factor(k: u64, j: u64) -> Result<f64> {
    let chi = temme_chi(k, j)?;
    let (kf, jf) = (k as f64, j as f64);
    Ok(((kf - jf) / (kf * (chi - kf / jf + 1.0))).sqrt())
}

/// Saddle-point approximation of `log {k j}`:
/// `C(k,j) ((k-j)/e)^(k-j) (e^chi - 1)^j / chi^k * sqrt((k-j) / (k (chi - k/j + 1)))`
/// with `chi` the positive root of `k/chi = j e^chi / (e^chi - 1)`.
pub fn temme_stirling(k: u64, j: u64) -> Result<LogValue> {
    let chi = temme_chi(k, j)?;
    let (kf, jf) = (k as f64, j as f64);
    let rest = kf - jf;
    let log_sqrt = 0.5 * (rest / (kf * (chi - kf / jf + 1.0))).ln();
    let value = ln_binomial(k, j) + rest * (rest.ln() - 1.0) + jf * ln_exp_m1(chi)
        - kf * chi.ln()
        + log_sqrt;
    Ok(LogValue::new(value, "temme"))
}
