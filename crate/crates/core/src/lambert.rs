//! Real branches of the Lambert W function, the inverse of `w e^w`.

use std::f64::consts::E;

use crate::error::{domain, Result};

const INV_E: f64 = 1.0 / E;
// Low-order part of 1/e, so that x + 1/e is accurate near the branch point.
const INV_E_LO: f64 = -1.2428753672788363e-17;

const MAX_ITERATIONS: usize = 60;
const STEP_TOL: f64 = 1e-14;
const BRANCH_CLAMP: f64 = 1e-15;

/// Which real branch of W to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WBranch {
    /// `W0`, defined on `[-1/e, inf)` with values `>= -1`.
    Principal,
    /// `W-1`, defined on `[-1/e, 0)` with values `<= -1`.
    MinusOne,
}

/// Evaluate `W(x)` on the requested real branch.
///
/// Halley iteration on `w e^w - x` from a branch-specific starting point.
/// Arguments up to `1e-15` below `-1/e` are treated as the branch point.
pub fn lambert_w(branch: WBranch, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return domain(format!("lambert_w argument {x} is not finite"));
    }
    let dist = (x + INV_E) + INV_E_LO;
    if dist < 0.0 {
        if dist >= -BRANCH_CLAMP {
            return Ok(-1.0);
        }
        return domain(format!("lambert_w argument {x} below -1/e"));
    }
    if dist == 0.0 {
        return Ok(-1.0);
    }
    if branch == WBranch::MinusOne && x >= 0.0 {
        return domain(format!("W-1 is undefined for x = {x} >= 0"));
    }
    if x == 0.0 {
        return Ok(0.0);
    }

    let mut w = initial_guess(branch, x, dist);
    for _ in 0..MAX_ITERATIONS {
        let wp1 = w + 1.0;
        if wp1 == 0.0 {
            break;
        }
        let ew = w.exp();
        let f = w * ew - x;
        if f == 0.0 {
            break;
        }
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        if !step.is_finite() {
            break;
        }
        w -= step;
        if step.abs() <= STEP_TOL * w.abs() {
            break;
        }
    }
    Ok(match branch {
        WBranch::Principal => w.max(-1.0),
        WBranch::MinusOne => w.min(-1.0),
    })
}

fn initial_guess(branch: WBranch, x: f64, dist: f64) -> f64 {
    if x < -0.25 {
        // Series in p = +-sqrt(2 (e x + 1)) about the branch point.
        let p = (2.0 * E * dist).sqrt();
        let p = match branch {
            WBranch::Principal => p,
            WBranch::MinusOne => -p,
        };
        return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
    }
    match branch {
        WBranch::Principal if x < 3.0 => x.ln_1p(),
        WBranch::Principal => {
            let l1 = x.ln();
            let l2 = l1.ln();
            l1 - l2 + l2 / l1
        }
        WBranch::MinusOne => {
            let l1 = (-x).ln();
            let l2 = (-l1).ln();
            l1 - l2 + l2 / l1
        }
    }
}
