use binomial_moments::{
    converge_table, klaner_check, log_ahle_upper, log_jensen_lower, log_of_exact,
    log_trivial_lower, log_trivial_upper_p, log_psi, mc_all_red, all_red_probability,
    raw_moment_stirling, stirling_row, temme_stirling, unimodality_check, AsymptoteInputs,
    ExactRational, MomentQuery,
};

fn r(s: &str) -> ExactRational {
    s.parse().unwrap()
}

fn q(n: u64, p: &str, k: u64) -> MomentQuery {
    MomentQuery::new(n, r(p), k).unwrap()
}

fn log_exact(q: &MomentQuery) -> f64 {
    log_of_exact(&raw_moment_stirling(q)).unwrap().log_e
}

#[test]
fn lower_bounds_ordered_at_ten() {
    let x = q(10, "1/2", 10);
    let e = log_exact(&x);
    assert!(log_trivial_lower(&x).log_e <= log_jensen_lower(&x).log_e);
    assert!(log_jensen_lower(&x).log_e <= e);
    assert!(e <= log_trivial_upper_p(&x).log_e);
}

#[test]
fn ordering_at_twenty_quarter() {
    let x = q(20, "1/4", 8);
    let e = log_exact(&x);
    assert!(log_trivial_lower(&x).log_e <= e && e <= log_trivial_upper_p(&x).log_e);
}

#[test]
fn ahle_dominates_exact() {
    for n in 1..=30 {
        for k in 1..=30 {
            for p in ["1/7", "1/2", "9/10"] {
                let x = q(n, p, k);
                assert!(log_exact(&x) <= log_ahle_upper(&x).unwrap().log_e + 1e-9, "{x}");
            }
        }
    }
}

fn temme_rel_err(k: u64, j: u64) -> f64 {
    let exact = ExactRational::from(stirling_row(k).unwrap().entries()[j as usize].clone()).ln_abs();
    ((temme_stirling(k, j).unwrap().log_e - exact) / exact).abs()
}

#[test]
fn temme_close_and_improving() {
    assert!(temme_rel_err(50, 25) < 0.02);
    assert!(temme_rel_err(200, 100) < temme_rel_err(100, 50));
    // Interior ratios stay accurate across the row.
    for j in 10..=90 {
        assert!(temme_rel_err(100, j) < 1e-3, "j={j}");
    }
}

#[test]
fn klaner_holds_to_two_hundred() {
    let out = klaner_check(200).unwrap();
    assert!(out.holds);
    assert_eq!(out.first_violation, None);
}

#[test]
fn mode_near_saddle_at_sixty() {
    let rep = unimodality_check(60, 60, &r("1/2")).unwrap();
    assert!(rep.all_hold());
    let tau0 = log_psi(&AsymptoteInputs::new(1.0, 0.5).unwrap()).unwrap().tau0;
    assert!((rep.mode_index as f64 / 60.0 - tau0).abs() < 0.1);
}

#[test]
fn mode_fraction_converges() {
    let rows = converge_table(1.0, &r("1/2"), &[50, 400]).unwrap();
    let off = |i: usize| (rows[i].mode_fraction() - rows[i].tau0).abs();
    assert!(off(1) < off(0), "{} vs {}", off(1), off(0));
}

#[test]
fn converge_near_p_one() {
    let rows = converge_table(1.0, &r("0.999"), &[200]).unwrap();
    assert!(rows[0].normalized_log_moment.abs() < 0.05);
    assert!(rows[0].log_psi.abs() < 0.05);
}

#[test]
fn convergence_rows_respect_bounds() {
    for (beta, p) in [(0.5, "1/2"), (1.0, "1/7"), (3.0, "9/10")] {
        for row in converge_table(beta, &r(p), &[10, 40, 160]).unwrap() {
            assert!(row.sandwich_holds(1e-9), "beta={beta} p={p} k={}", row.k);
            assert_eq!(row.n, (beta * row.k as f64).round() as u64);
            assert!(row.gap >= 0.0);
        }
    }
}

#[test]
fn monte_carlo_agrees_and_repeats() {
    let exact = all_red_probability(&q(10, "1/2", 3)).to_f64();
    let a = mc_all_red(10, 0.5, 3, 200_000, 9).unwrap();
    assert!(a.z_score(exact).abs() < 3.0);
    assert_eq!(a, mc_all_red(10, 0.5, 3, 200_000, 9).unwrap());
    assert_ne!(a.hits, mc_all_red(10, 0.5, 3, 200_000, 10).unwrap().hits);
}

#[test]
fn monte_carlo_independent_of_thread_count() {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let single = pool.install(|| mc_all_red(7, 0.3, 2, 150_000, 3).unwrap());
    assert_eq!(single, mc_all_red(7, 0.3, 2, 150_000, 3).unwrap());
}
