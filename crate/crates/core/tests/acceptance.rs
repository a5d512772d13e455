//! Acceptance suite. Runs every criterion at its pinned tolerance, prints one
//! PASS/FAIL line per criterion and exits non-zero if any fails.

mod support;

use std::f64::consts::E;
use std::process::ExitCode;
use std::time::Instant;

use binomial_moments::{
    all_red_probability, converge_table, lambert_w, lemma_sweep, log_psi, mc_all_red, psi_prime,
    raw_moment_direct, raw_moment_stirling, stirling_row, temme_stirling, AsymptoteInputs,
    BoundReport, ExactRational, MomentQuery, Natural, StirlingRows, WBranch,
};
use num_traits::Pow;

type Outcome = Result<String, String>;

fn r(s: &str) -> ExactRational {
    s.parse().unwrap()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// C1: Urn-sum and Stirling-sum forms agree exactly.
fn c1_exact_identity() -> Outcome {
    let ps = ["0", "1/7", "1/3", "1/2", "9/10", "1"].map(r);
    let mut cases = 0;
    for n in 1..=30 {
        for k in 1..=30 {
            for p in &ps {
                let q = MomentQuery::new(n, p.clone(), k).unwrap();
                let (a, b) = (raw_moment_direct(&q), raw_moment_stirling(&q));
                check(a == b, || format!("mismatch at {q}: {a} != {b}"))?;
                cases += 1;
            }
        }
    }
    check(cases == 5400, || format!("ran {cases} cases, expected 5400"))?;
    Ok(format!("{cases} cases exact"))
}

/// C2: sum_j {k j} (x)_j = x^k for k <= 200, x in 0..=50.
fn c2_stirling_identity() -> Outcome {
    let mut cases = 0;
    for row in StirlingRows::new().take(200) {
        for x in 0..=50u64 {
            let want: Natural = Pow::pow(Natural::from(x), row.k());
            check(row.falling_factorial_sum(x) == want, || {
                format!("identity fails at k={}, x={x}", row.k())
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (k, x) pairs exact"))
}

/// C3: Klaner inequality and log-concavity/unimodality of the three sequences.
fn c3_lemma() -> Outcome {
    let reports = lemma_sweep(200, &[r("1/3"), r("1/2")]).map_err(|e| e.to_string())?;
    let bad: Vec<_> = reports.iter().filter(|r| !r.all_hold()).collect();
    check(bad.is_empty(), || format!("{} violations, first {:?}", bad.len(), bad.first()))?;
    Ok(format!("{} (k, n, p) cases, zero violations", reports.len()))
}

/// C4: Lambert W residuals and round trips on both branches.
fn c4_lambert() -> Outcome {
    let residual = |w: f64, x: f64| (w * w.exp() - x).abs() / x.abs().max(1.0);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for i in 0..=600 {
        let w = -1.0 + i as f64 * 0.01;
        let x = w * w.exp();
        let got = lambert_w(WBranch::Principal, x).map_err(|e| e.to_string())?;
        check((got - w).abs() <= 1e-10, || format!("W0 round trip at w={w}: {got}"))?;
        worst = worst.max(residual(got, x));
        count += 1;
    }
    for i in 0..=1900 {
        let w = -20.0 + i as f64 * 0.01;
        let x = w * w.exp();
        let got = lambert_w(WBranch::MinusOne, x).map_err(|e| e.to_string())?;
        check(((got - w) / w).abs() <= 1e-9, || format!("W-1 round trip at w={w}: {got}"))?;
        worst = worst.max(residual(got, x));
        count += 1;
    }
    // W(-x e^-x) = -x on the branch holding -x.
    for i in 1..=100 {
        let x = i as f64 / 100.0;
        let got = lambert_w(WBranch::Principal, -x * (-x).exp()).map_err(|e| e.to_string())?;
        check(((got + x) / x).abs() <= 1e-9, || format!("W0(-x e^-x) at x={x}: {got}"))?;
        worst = worst.max(residual(got, -x * (-x).exp()));
    }
    for i in 0..=1900 {
        let x = 1.0 + i as f64 / 100.0;
        let got = lambert_w(WBranch::MinusOne, -x * (-x).exp()).map_err(|e| e.to_string())?;
        check(((got + x) / x).abs() <= 1e-9, || format!("W-1(-x e^-x) at x={x}: {got}"))?;
        worst = worst.max(residual(got, -x * (-x).exp()));
    }
    check(worst <= 1e-12, || format!("worst scaled residual {worst:e}"))?;
    for branch in [WBranch::Principal, WBranch::MinusOne] {
        let v = lambert_w(branch, -1.0 / E).map_err(|e| e.to_string())?;
        check((v + 1.0).abs() <= 1e-7, || format!("{branch:?} at -1/e gives {v}"))?;
    }
    let e_val = lambert_w(WBranch::Principal, E).unwrap();
    check((e_val - 1.0).abs() <= 1e-7, || format!("W0(e) = {e_val}"))?;
    Ok(format!("{count} grid points, worst scaled residual {worst:.2e}"))
}

const BETAS: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 5.0];
const PS: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];

/// C5: Saddle point consistency on the 25-point (beta, p) grid.
fn c5_saddle() -> Outcome {
    let mut worst = [0f64; 4];
    for beta in BETAS {
        for p in PS {
            let inp = AsymptoteInputs::new(beta, p).unwrap();
            let s = log_psi(&inp).map_err(|e| e.to_string())?;
            let foc = (s.chi0.exp() * s.chi0 * (beta - s.tau0) * p - 1.0).abs();
            let sub = (s.tau0 - (-(-s.chi0).exp_m1()) / s.chi0).abs();
            let deriv = psi_prime(s.tau0, &inp).map_err(|e| e.to_string())?.abs();
            let (grid_max, _) = support::psi_grid_max(beta, p, 100_000);
            let grid = (s.log_psi - grid_max).abs();
            let at = format!("(beta={beta}, p={p})");
            check(foc <= 1e-9, || format!("first-order residual {foc:e} at {at}"))?;
            check(sub <= 1e-10, || format!("tau substitution off by {sub:e} at {at}"))?;
            check(deriv <= 1e-8, || format!("|psi'(tau0)| = {deriv:e} at {at}"))?;
            check(grid <= 1e-6, || format!("grid max differs by {grid:e} at {at}"))?;
            for (w, v) in worst.iter_mut().zip([foc, sub, deriv, grid]) {
                *w = w.max(v);
            }
        }
    }
    Ok(format!(
        "max residuals: foc {:.1e}, tau {:.1e}, psi' {:.1e}, grid {:.1e}",
        worst[0], worst[1], worst[2], worst[3]
    ))
}

/// C6: Gap to log Psi shrinks monotonically and at least halves from k=50 to
/// k=400; the closed-form product fails the beta ceiling.
fn c6_convergence() -> Outcome {
    let mut summary = Vec::new();
    for (beta, p) in [(1.0, "1/2"), (2.0, "1/3")] {
        let p = r(p);
        let rows = converge_table(beta, &p, &[50, 100, 200, 400]).map_err(|e| e.to_string())?;
        let gaps: Vec<f64> = rows.iter().map(|row| row.gap).collect();
        check(gaps.windows(2).all(|w| w[1] < w[0]), || {
            format!("gaps not strictly decreasing at beta={beta}: {gaps:?}")
        })?;
        check(gaps[3] < gaps[0] / 2.0, || format!("gap(400) not < gap(50)/2: {gaps:?}"))?;
        check(rows.iter().all(|row| row.sandwich_holds(1e-9)), || "row sandwich".into())?;

        let s = log_psi(&AsymptoteInputs::new(beta, p.to_f64()).unwrap()).unwrap();
        check(!s.printed_form_within_ceiling(), || {
            format!("closed form {} unexpectedly within beta={beta}", s.psi_printed_form())
        })?;
        check(s.psi() <= beta, || format!("Psi {} above beta", s.psi()))?;
        let last = &rows[3];
        check(last.gap_printed_form > 10.0 * last.gap, || {
            format!("closed form tracks data as well as psi: {} vs {}", last.gap_printed_form, last.gap)
        })?;
        summary.push(format!(
            "beta={beta}: gap {:.2e} -> {:.2e}, Psi {:.4}, closed form {:.4}",
            gaps[0],
            gaps[3],
            s.psi(),
            s.psi_printed_form()
        ));
    }
    Ok(summary.join("; "))
}

/// C7: trivial_lower <= jensen_lower <= exact <= ahle_upper, exact <= p n^k.
fn c7_bounds() -> Outcome {
    let mut cases = 0;
    for n in 1..=30 {
        for k in 1..=30 {
            for p in ["1/7", "1/3", "1/2", "9/10"] {
                let q = MomentQuery::new(n, r(p), k).unwrap();
                let rep = BoundReport::compute(&q).map_err(|e| e.to_string())?;
                check(rep.sandwich_holds(1e-9), || {
                    format!("violations {:?} at {q}", rep.violations(1e-9))
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases, zero violations at 1e-9 slack"))
}

/// C8: Temme approximation at j = k/2.
fn c8_temme() -> Outcome {
    let rel_err = |k: u64| -> f64 {
        let row = stirling_row(k).unwrap();
        let exact = ExactRational::from(row.entries()[(k / 2) as usize].clone()).ln_abs();
        let approx = temme_stirling(k, k / 2).unwrap().log_e;
        (approx - exact).abs() / exact.abs()
    };
    let errs: Vec<f64> = [20, 40, 80, 160, 320].into_iter().map(rel_err).collect();
    check(errs.windows(2).all(|w| w[1] <= w[0]), || format!("not monotone: {errs:?}"))?;
    let at50 = rel_err(50);
    check(at50 < 0.02, || format!("relative error at k=50 is {at50}"))?;
    let listed: Vec<String> = errs.iter().map(|e| format!("{e:.1e}")).collect();
    Ok(format!("errors [{}]; k=50: {at50:.1e}", listed.join(", ")))
}

/// C9: Monte Carlo urn simulation within 3 standard errors; reproducible.
fn c9_monte_carlo() -> Outcome {
    let q = MomentQuery::new(10, r("1/2"), 3).unwrap();
    let exact = all_red_probability(&q).to_f64();
    let a = mc_all_red(10, 0.5, 3, 1_000_000, 42).map_err(|e| e.to_string())?;
    let b = mc_all_red(10, 0.5, 3, 1_000_000, 42).map_err(|e| e.to_string())?;
    check(a == b, || "reruns with one seed differ".into())?;
    let z = a.z_score(exact);
    check(z.abs() <= 3.0, || format!("estimate {} vs exact {exact}: z = {z}", a.estimate))?;
    Ok(format!("estimate {:.6} vs exact {exact:.6} (z = {z:+.2})", a.estimate))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("C1 exact identity urn-sum = Stirling-sum", c1_exact_identity),
        ("C2 Stirling row identity", c2_stirling_identity),
        ("C3 Klaner inequality and unimodality", c3_lemma),
        ("C4 Lambert W both branches", c4_lambert),
        ("C5 saddle consistency", c5_saddle),
        ("C6 convergence to log Psi", c6_convergence),
        ("C7 bound sandwich", c7_bounds),
        ("C8 Temme approximation", c8_temme),
        ("C9 Monte Carlo all-red probability", c9_monte_carlo),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name} [{secs:.1}s]: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name} [{secs:.1}s]: {detail}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 9 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 9 criteria failed");
        ExitCode::FAILURE
    }
}
