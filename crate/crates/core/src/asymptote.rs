//! Saddle-point asymptote of `E(R^k)` when `n / k -> beta`.
//!
//! With `j = tau k` distinct balls in the sample, the summand
//! `{k j} (n)_j p^j` behaves like `exp(k log k + k psi(tau))`, where
//!
//! ```text
//! psi(tau) = tau log(e^chi - 1) - log chi + tau log(beta/tau - 1)
//!            - beta log(1 - tau/beta) + tau log p - 1
//! ```
//!
//! and `chi` is the positive saddle point tied to `tau` by
//! `tau = (1 - e^-chi) / chi`. The maximum of `psi` is `log Psi` and
//! `E(R^k) = k^k (Psi + o(1))^k`.
//!
//! The closed form usually quoted for `Psi`,
//! `beta^beta (e^chi - 1)^tau / (tau^tau (beta - tau)^(beta - tau) chi)`,
//! lacks the factor `p^tau / e` carried by `psi`. Both are computed;
//! [`SaddleSolution::log_psi`] is the maximum of `psi` and the closed form
//! is kept in [`SaddleSolution::log_psi_printed_form`] for comparison.

use crate::error::{domain, Result};
use crate::lambert::{lambert_w, WBranch};

/// Distance kept from the vertical asymptotes of `psi`.
const TAU_GUARD: f64 = 1e-9;

/// `(beta, p)` with `beta > 0` the limiting ratio `n / k` and `0 < p < 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoteInputs {
    beta: f64,
    p: f64,
}

impl AsymptoteInputs {
    pub fn new(beta: f64, p: f64) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return domain(format!("beta = {beta} must be positive and finite"));
        }
        if !(p > 0.0 && p < 1.0) {
            return domain(format!("p = {p} must lie in the open interval (0, 1)"));
        }
        Ok(Self { beta, p })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Right end of the admissible `tau` interval, `min(1, beta)`.
    pub fn tau_limit(&self) -> f64 {
        self.beta.min(1.0)
    }

    fn saddle_w(&self) -> Result<f64> {
        let arg = (-1.0 / self.beta).exp() * (1.0 - self.p) / (self.beta * self.p);
        lambert_w(WBranch::Principal, arg)
    }
}

/// The maximiser of `psi` and the resulting asymptotic base.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SaddleSolution {
    pub beta: f64,
    pub p: f64,
    pub chi0: f64,
    pub tau0: f64,
    /// `psi(tau0)`, the natural log of `Psi`.
    pub log_psi: f64,
    /// Log of the closed-form product evaluated at `(chi0, tau0)`.
    pub log_psi_printed_form: f64,
}

impl SaddleSolution {
    pub fn psi(&self) -> f64 {
        self.log_psi.exp()
    }

    pub fn psi_printed_form(&self) -> f64 {
        self.log_psi_printed_form.exp()
    }

    /// `log_psi_printed_form - log_psi`, which equals `1 - tau0 log p`.
    pub fn printed_form_discrepancy(&self) -> f64 {
        self.log_psi_printed_form - self.log_psi
    }

    /// Whether the closed form respects `Psi <= beta`, implied by
    /// `E(R^k) <= n^k`.
    pub fn printed_form_within_ceiling(&self) -> bool {
        self.log_psi_printed_form <= self.beta.ln()
    }
}

/// `chi0 = 1/beta + W0(e^(-1/beta) (1-p) / (beta p))`.
pub fn chi_star(inp: &AsymptoteInputs) -> Result<f64> {
    Ok(1.0 / inp.beta + inp.saddle_w()?)
}

/// `tau0 = beta/(1-p) * (1/(beta W + 1) - p)` with the same `W` as
/// [`chi_star`].
pub fn tau_star(inp: &AsymptoteInputs) -> Result<f64> {
    let w = inp.saddle_w()?;
    let (beta, p) = (inp.beta, inp.p);
    Ok(beta / (1.0 - p) * (1.0 / (beta * w + 1.0) - p))
}

/// `tau = (1 - e^-chi) / chi`, mapping `chi > 0` into `(0, 1)`.
pub fn tau_of_chi(chi: f64) -> Result<f64> {
    if !(chi > 0.0 && chi.is_finite()) {
        return domain(format!("chi = {chi} must be positive and finite"));
    }
    Ok(-(-chi).exp_m1() / chi)
}

/// Inverse of [`tau_of_chi`]: `chi = W0(-e^(-1/tau) / tau) + 1/tau`.
pub fn chi_of_tau(tau: f64) -> Result<f64> {
    if !(tau > 0.0 && tau < 1.0) {
        return domain(format!("tau = {tau} must lie in (0, 1)"));
    }
    let inv = 1.0 / tau;
    let w = lambert_w(WBranch::Principal, -(-inv).exp() * inv)?;
    Ok(w + inv)
}

/// `ln(e^chi - 1)` without overflow for large `chi`.
pub(crate) fn ln_exp_m1(chi: f64) -> f64 {
    if chi > 1.0 {
        chi + (-(-chi).exp()).ln_1p()
    } else {
        chi.exp_m1().ln()
    }
}

// Rejects the closed endpoints, then keeps TAU_GUARD away from them.
fn guarded_tau(tau: f64, inp: &AsymptoteInputs) -> Result<f64> {
    let limit = inp.tau_limit();
    if !(tau > 0.0 && tau < limit) {
        return domain(format!("tau = {tau} must lie in (0, {limit})"));
    }
    Ok(tau.clamp(TAU_GUARD, limit - TAU_GUARD))
}

/// Exponential growth rate `psi(tau)` of the summand at `j = tau k`.
pub fn psi_of_tau(tau: f64, inp: &AsymptoteInputs) -> Result<f64> {
    let tau = guarded_tau(tau, inp)?;
    let chi = chi_of_tau(tau)?;
    let (beta, p) = (inp.beta, inp.p);
    Ok(tau * ln_exp_m1(chi) - chi.ln() + tau * (beta / tau - 1.0).ln()
        - beta * (-tau / beta).ln_1p()
        + tau * p.ln()
        - 1.0)
}

/// `psi'(tau) = chi + log chi + log(beta - tau) + log p`.
pub fn psi_prime(tau: f64, inp: &AsymptoteInputs) -> Result<f64> {
    let tau = guarded_tau(tau, inp)?;
    let chi = chi_of_tau(tau)?;
    Ok(chi + chi.ln() + (inp.beta - tau).ln() + inp.p.ln())
}

/// Solve for `(chi0, tau0)` and evaluate `log Psi = psi(tau0)`.
pub fn log_psi(inp: &AsymptoteInputs) -> Result<SaddleSolution> {
    let chi0 = chi_star(inp)?;
    let tau0 = tau_star(inp)?;
    let log_psi = psi_of_tau(tau0, inp)?;
    let beta = inp.beta;
    let log_psi_printed_form = beta * beta.ln() + tau0 * ln_exp_m1(chi0)
        - tau0 * tau0.ln()
        - (beta - tau0) * (beta - tau0).ln()
        - chi0.ln();
    Ok(SaddleSolution {
        beta,
        p: inp.p,
        chi0,
        tau0,
        log_psi,
        log_psi_printed_form,
    })
}
