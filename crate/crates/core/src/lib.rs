//! Raw moments `E(R^k)` of the binomial distribution `B(n, p)`.
//!
//! * [`exact`]: arbitrary-precision Stirling numbers, falling factorials and
//!   the moment itself by two independent formulas.
//! * [`lambert`]: both real branches of the Lambert W function.
//! * [`asymptote`]: the saddle point `(chi0, tau0)` and `log Psi` with
//!   `E(R^k) = k^k (Psi + o(1))^k` as `n / k -> beta`.
//! * [`bounds`]: log-space lower and upper bounds and a saddle-point
//!   approximation of the Stirling numbers.
//! * [`analysis`]: property sweeps, convergence tables and Monte Carlo.
//!
//! ```
//! use binomial_moments::{raw_moment_stirling, MomentQuery};
//!
//! let q = MomentQuery::new(2, "1/2".parse().unwrap(), 2).unwrap();
//! assert_eq!(raw_moment_stirling(&q).to_string(), "3/2");
//! ```

pub mod analysis;
pub mod asymptote;
pub mod bounds;
pub mod error;
pub mod exact;
pub mod lambert;
pub mod report;

pub use analysis::{
    converge_table, klaner_check, lemma_sweep, mc_all_red, unimodality_check, ConvergenceRow,
    KlanerOutcome, McEstimate, PropertyReport,
};
pub use asymptote::{
    chi_of_tau, chi_star, log_psi, psi_of_tau, psi_prime, tau_of_chi, tau_star, AsymptoteInputs,
    SaddleSolution,
};
pub use bounds::{
    log_ahle_upper, log_jensen_lower, log_of_exact, log_trivial_lower, log_trivial_upper_n,
    log_trivial_upper_p, temme_sqrt_factor, temme_stirling, BoundReport, LogValue,
};
pub use error::{Error, Result};
pub use exact::{
    all_red_probability, falling_factorial, moment_terms, raw_moment_direct, raw_moment_stirling,
    sample_size_pmf, stirling_row, ExactRational, MomentQuery, MomentTerms, Natural, StirlingRow,
    StirlingRows,
};
pub use lambert::{lambert_w, WBranch};
