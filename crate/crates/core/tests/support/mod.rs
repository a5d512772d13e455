//! Reference computations that share no code path with the library.
#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Root of a monotone `f` on `[lo, hi]` by plain bisection.
pub fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let f_lo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if (f(mid) > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `chi > 0` with `(1 - e^-chi) / chi = tau`, by bisection.
pub fn chi_for_tau(tau: f64) -> f64 {
    bisect(1e-300, 1.0 / tau + 1.0, |c| -(-c).exp_m1() / c - tau)
}

/// Saddle point from the first-order condition `e^chi chi (beta - tau(chi)) p = 1`.
pub fn chi0_bisect(beta: f64, p: f64) -> f64 {
    // tau(chi) < beta must hold; beyond that the left side only grows.
    let g = |c: f64| {
        let tau = -(-c).exp_m1() / c;
        c.exp() * c * (beta - tau) * p - 1.0
    };
    let lo = if beta < 1.0 {
        chi_for_tau(beta) * (1.0 + 1e-12)
    } else {
        1e-12
    };
    bisect(lo, 50.0, g)
}

/// The exponent `psi(tau)` written out with `chi` from [`chi_for_tau`].
pub fn psi_reference(tau: f64, beta: f64, p: f64) -> f64 {
    let chi = chi_for_tau(tau);
    tau * (chi + (-(-chi).exp()).ln_1p()) - chi.ln() + tau * (beta / tau - 1.0).ln()
        - beta * (1.0 - tau / beta).ln()
        + tau * p.ln()
        - 1.0
}

/// Max of [`psi_reference`] over `points` evenly spaced interior points of
/// `(0, min(1, beta))`.
pub fn psi_grid_max(beta: f64, p: f64, points: usize) -> (f64, f64) {
    let limit = beta.min(1.0);
    let mut best = (f64::NEG_INFINITY, 0.0);
    for i in 1..=points {
        let tau = limit * i as f64 / (points + 1) as f64;
        let v = psi_reference(tau, beta, p);
        if v > best.0 {
            best = (v, tau);
        }
    }
    best
}

/// Stirling row by the explicit inclusion-exclusion formula
/// `{k j} = (1/j!) sum_i (-1)^i C(j,i) (j-i)^k`.
pub fn stirling_explicit(k: u32, j: u32) -> BigUint {
    let mut total = BigInt::zero();
    let mut binom = BigInt::one();
    let mut fact = BigInt::one();
    for i in 0..=j {
        if i > 0 {
            binom = binom * (j - i + 1) / i;
        }
        let term = &binom * num_traits::pow(BigInt::from(j - i), k as usize);
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    for t in 1..=j {
        fact *= t;
    }
    (total / fact).to_biguint().unwrap()
}

const FIXED_BITS: u64 = 800;

fn atanh_fixed(z: &BigInt) -> BigInt {
    // z is scaled by 2^FIXED_BITS with |z| <= 1/3.
    let z2 = (z * z) >> FIXED_BITS;
    let mut term = z.clone();
    let mut sum = BigInt::zero();
    let mut i = 0u32;
    // Arithmetic shifts floor toward -inf, so a negative term bottoms out at -1.
    while term.magnitude() > &BigUint::one() {
        sum += &term / (2 * i + 1);
        term = (&term * &z2) >> FIXED_BITS;
        i += 1;
    }
    sum
}

/// `ln(num / den)` with ~240 correct decimal digits via atanh series in
/// 800-bit fixed point, rounded to `f64` at the end.
pub fn ln_high_precision(num: &BigUint, den: &BigUint) -> f64 {
    let one = BigInt::one() << FIXED_BITS;
    let ln2 = atanh_fixed(&(&one / 3)) * 2;

    let e = num.bits() as i64 - den.bits() as i64;
    let (m, d) = if e >= 0 {
        (BigInt::from(num.clone()), BigInt::from(den << (e as u64)))
    } else {
        (BigInt::from(num << e.unsigned_abs()), BigInt::from(den.clone()))
    };
    // m/d in (1/2, 2): z = (m - d) / (m + d) in (-1/3, 1/3).
    let z = ((&m - &d) << FIXED_BITS) / (&m + &d);
    let total: BigInt = ln2 * BigInt::from(e) + atanh_fixed(&z) * 2;

    let shift = FIXED_BITS - 64;
    let top = &total >> shift;
    let sign = if total.is_negative() { -1.0 } else { 1.0 };
    let mag = top.abs().to_f64().unwrap();
    sign * mag / 2f64.powi(64)
}
