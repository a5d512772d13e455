//! Experiments tying the exact, asymptotic, and bound modules together:
//! log-concavity sweeps, convergence tables, and Monte Carlo spot checks.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::asymptote::{log_psi, AsymptoteInputs, SaddleSolution};
use crate::bounds::{log_jensen_lower, log_of_exact, log_trivial_upper_p};
use crate::error::{domain, Result};
use crate::exact::{moment_terms_with_row, stirling_row, ExactRational, MomentQuery, Natural};

/// Outcome of the exact check of `j {k j}^2 >= (j+1) {k j+1} {k j-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KlanerOutcome {
    pub k: u64,
    pub holds: bool,
    /// Smallest `j` where the inequality fails.
    pub first_violation: Option<u64>,
}

/// Checks the strengthened log-concavity inequality for every
/// `2 <= j <= k - 1` by integer cross-multiplication.
pub fn klaner_check(k: u64) -> Result<KlanerOutcome> {
    if k < 3 {
        return domain(format!("Klaner inequality needs k >= 3, got {k}"));
    }
    let row = stirling_row(k)?;
    Ok(klaner_on_row(k, row.entries()))
}

fn klaner_on_row(k: u64, s: &[Natural]) -> KlanerOutcome {
    let first_violation = (2..k).find(|&j| {
        let j_us = j as usize;
        let lhs = &s[j_us] * &s[j_us] * j;
        let rhs = &s[j_us + 1] * &s[j_us - 1] * (j + 1);
        lhs < rhs
    });
    KlanerOutcome {
        k,
        holds: first_violation.is_none(),
        first_violation,
    }
}

/// `a_j^2 >= a_{j-1} a_{j+1}` for every interior index, and no zero entries.
pub fn is_log_concave(seq: &[Natural]) -> bool {
    if seq.iter().any(Zero::is_zero) {
        return false;
    }
    seq.windows(3).all(|w| &w[1] * &w[1] >= &w[0] * &w[2])
}

/// Weakly rises to a peak, then weakly falls: no strict decrease is ever
/// followed by a strict increase.
pub fn is_unimodal<T: Ord>(seq: &[T]) -> bool {
    let mut falling = false;
    for w in seq.windows(2) {
        if w[1] < w[0] {
            falling = true;
        } else if w[1] > w[0] && falling {
            return false;
        }
    }
    true
}

/// Index of the first maximal element.
pub fn mode_index<T: Ord>(seq: &[T]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, v) in seq.iter().enumerate() {
        match best {
            Some(b) if *v <= seq[b] => {}
            _ => best = Some(i),
        }
    }
    best
}

/// Log-concavity and unimodality of `{k j}`, `{k j} (n)_j` and
/// `{k j} (n)_j p^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub k: u64,
    pub n: u64,
    pub p: ExactRational,
    pub klaner_holds: bool,
    pub unimodal_stirling: bool,
    pub unimodal_with_falling: bool,
    pub unimodal_with_p: bool,
    /// `j` (1-based) of the largest `{k j} (n)_j p^j`, smallest on ties.
    pub mode_index: u64,
}

impl PropertyReport {
    pub fn all_hold(&self) -> bool {
        self.klaner_holds && self.unimodal_stirling && self.unimodal_with_falling && self.unimodal_with_p
    }
}

/// Each sequence is checked for log-concavity by exact cross-multiplication
/// and then, independently, for unimodality. A flag is true only if both
/// hold. The Stirling sequence runs over the whole row `1..=k`; the other
/// two over `1..=min(k, n)` where they are positive.
pub fn unimodality_check(k: u64, n: u64, p: &ExactRational) -> Result<PropertyReport> {
    if p.is_zero() {
        return domain("unimodality check needs p > 0");
    }
    let query = MomentQuery::new(n, p.clone(), k)?;
    let row = stirling_row(k)?;
    let top = k.min(n) as usize;

    let stirling = &row.entries()[1..];
    let mut with_falling = Vec::with_capacity(top);
    let mut ff = Natural::from(1u32);
    for j in 1..=top {
        ff *= n - j as u64 + 1;
        with_falling.push(&stirling[j - 1] * &ff);
    }
    let with_p = moment_terms_with_row(&query, &row).terms;

    let check = |seq: &[Natural]| is_log_concave(seq) && is_unimodal(seq);
    let klaner_holds = k < 3 || klaner_on_row(k, row.entries()).holds;
    Ok(PropertyReport {
        k,
        n,
        p: p.clone(),
        klaner_holds,
        unimodal_stirling: check(stirling),
        unimodal_with_falling: check(&with_falling),
        unimodal_with_p: check(&with_p),
        mode_index: mode_index(&with_p).map_or(0, |i| i as u64 + 1),
    })
}

/// Runs [`unimodality_check`] for every `k` in `1..=kmax`, every
/// `n in {max(1, k/2), k, 2k}` and every `p`, in parallel. Reports come back
/// ordered by `(k, n, p)` as enumerated.
pub fn lemma_sweep(kmax: u64, ps: &[ExactRational]) -> Result<Vec<PropertyReport>> {
    let mut cases = Vec::new();
    for k in 1..=kmax {
        let mut ns = vec![(k / 2).max(1), k, 2 * k];
        ns.dedup();
        for n in ns {
            for p in ps {
                cases.push((k, n, p));
            }
        }
    }
    cases
        .into_par_iter()
        .map(|(k, n, p)| unimodality_check(k, n, p))
        .collect()
}

/// One line of the convergence study at `n = round(beta k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub k: u64,
    pub n: u64,
    /// `(log E(R^k) - k log k) / k`.
    pub normalized_log_moment: f64,
    pub log_psi: f64,
    /// `|normalized_log_moment - log_psi|`.
    pub gap: f64,
    /// Same gap measured against the closed-form product.
    pub gap_printed_form: f64,
    pub log_moment: f64,
    pub log_jensen_lower: f64,
    pub log_trivial_upper_p: f64,
    /// `j` of the largest summand `{k j} (n)_j p^j`.
    pub mode_index: u64,
    pub tau0: f64,
}

impl ConvergenceRow {
    /// `jensen_lower <= log E(R^k) <= trivial_upper_p` up to `slack`.
    pub fn sandwich_holds(&self, slack: f64) -> bool {
        self.log_jensen_lower <= self.log_moment + slack
            && self.log_moment <= self.log_trivial_upper_p + slack
    }

    pub fn mode_fraction(&self) -> f64 {
        self.mode_index as f64 / self.k as f64
    }
}

/// Exact `E(R^k)` at `n = round(beta k)` for each `k`, compared against the
/// asymptote. Rows are computed in parallel and returned in ascending `k`
/// with duplicates removed.
pub fn converge_table(beta: f64, p: &ExactRational, ks: &[u64]) -> Result<Vec<ConvergenceRow>> {
    let solution = log_psi(&AsymptoteInputs::new(beta, p.to_f64())?)?;
    let mut ks = ks.to_vec();
    ks.sort_unstable();
    ks.dedup();
    for &k in &ks {
        if k < 2 {
            return domain(format!("convergence rows need k >= 2, got {k}"));
        }
        if (beta * k as f64).round() < 1.0 {
            return domain(format!("round(beta * k) = 0 for beta = {beta}, k = {k}"));
        }
    }
    ks.par_iter()
        .map(|&k| convergence_row(&solution, p, k))
        .collect()
}

fn convergence_row(solution: &SaddleSolution, p: &ExactRational, k: u64) -> Result<ConvergenceRow> {
    let n = (solution.beta * k as f64).round() as u64;
    let q = MomentQuery::new(n, p.clone(), k)?;
    let row = stirling_row(k)?;
    let terms = moment_terms_with_row(&q, &row);
    let log_moment = log_of_exact(&terms.sum())?.log_e;
    let kf = k as f64;
    let normalized = (log_moment - kf * kf.ln()) / kf;
    Ok(ConvergenceRow {
        k,
        n,
        normalized_log_moment: normalized,
        log_psi: solution.log_psi,
        gap: (normalized - solution.log_psi).abs(),
        gap_printed_form: (normalized - solution.log_psi_printed_form).abs(),
        log_moment,
        log_jensen_lower: log_jensen_lower(&q).log_e,
        log_trivial_upper_p: log_trivial_upper_p(&q).log_e,
        mode_index: mode_index(&terms.terms).map_or(0, |i| i as u64 + 1),
        tau0: solution.tau0,
    })
}

/// Point estimate of a probability with its binomial standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub samples: u64,
    pub hits: u64,
    pub estimate: f64,
    pub std_error: f64,
}

impl McEstimate {
    /// `(estimate - exact) / std_error`; zero when both agree exactly.
    pub fn z_score(&self, exact: f64) -> f64 {
        let diff = self.estimate - exact;
        if diff == 0.0 {
            0.0
        } else {
            diff / self.std_error
        }
    }
}

/// Samples per independent ChaCha8 stream.
const MC_BLOCK: u64 = 1 << 16;

/// Simulates the urn experiment: paint `n` balls red with probability `p`,
/// draw `k` with replacement, and record whether every draw is red.
///
/// Samples are split into fixed blocks of 65536; block `b` uses a ChaCha8
/// generator seeded with `seed` on stream `b`. Blocks run in parallel and
/// the result does not depend on the number of threads.
pub fn mc_all_red(n: u64, p: f64, k: u64, samples: u64, seed: u64) -> Result<McEstimate> {
    if n == 0 || k == 0 {
        return domain("Monte Carlo needs n >= 1 and k >= 1");
    }
    if samples == 0 {
        return domain("Monte Carlo needs at least one sample");
    }
    if !(0.0..=1.0).contains(&p) {
        return domain(format!("p = {p} outside [0, 1]"));
    }
    let blocks = samples.div_ceil(MC_BLOCK);
    let hits: u64 = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let count = MC_BLOCK.min(samples - b * MC_BLOCK);
            let mut red = vec![false; n as usize];
            let mut hits = 0u64;
            for _ in 0..count {
                for ball in red.iter_mut() {
                    *ball = rng.random_bool(p);
                }
                if (0..k).all(|_| red[rng.random_range(0..n as usize)]) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let estimate = hits as f64 / samples as f64;
    let std_error = (estimate * (1.0 - estimate) / samples as f64).sqrt();
    Ok(McEstimate {
        samples,
        hits,
        estimate,
        std_error,
    })
}
