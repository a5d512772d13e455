//! Flat record form of the result types, for CSV and table output.
//!
//! Floats are written with 12 significant digits, exact rationals as
//! `num/den`.

use crate::analysis::{ConvergenceRow, McEstimate, PropertyReport};
use crate::asymptote::SaddleSolution;
use crate::bounds::BoundReport;

/// A value that serializes to one CSV row under a fixed header.
pub trait Record {
    fn header() -> &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

/// `x` with 12 significant digits, `%.12g` style.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

impl Record for BoundReport {
    fn header() -> &'static [&'static str] {
        &[
            "n",
            "p",
            "k",
            "log_exact",
            "log_trivial_lower",
            "log_jensen_lower",
            "log_trivial_upper_n",
            "log_trivial_upper_p",
            "log_ahle_upper",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.query.n().to_string(),
            self.query.p().to_fraction_string(),
            self.query.k().to_string(),
            fmt_float(self.log_exact.log_e),
            fmt_float(self.log_trivial_lower.log_e),
            fmt_float(self.log_jensen_lower.log_e),
            fmt_float(self.log_trivial_upper_n.log_e),
            fmt_float(self.log_trivial_upper_p.log_e),
            fmt_float(self.log_ahle_upper.log_e),
        ]
    }
}

impl Record for SaddleSolution {
    fn header() -> &'static [&'static str] {
        &["beta", "p", "chi0", "tau0", "log_psi", "psi", "log_psi_printed_form", "psi_printed_form"]
    }

    fn fields(&self) -> Vec<String> {
        [
            self.beta,
            self.p,
            self.chi0,
            self.tau0,
            self.log_psi,
            self.psi(),
            self.log_psi_printed_form,
            self.psi_printed_form(),
        ]
        .into_iter()
        .map(fmt_float)
        .collect()
    }
}

impl Record for ConvergenceRow {
    fn header() -> &'static [&'static str] {
        &[
            "k",
            "n",
            "normalized_log_moment",
            "log_psi",
            "gap",
            "gap_printed_form",
            "log_moment",
            "log_jensen_lower",
            "log_trivial_upper_p",
            "mode_index",
            "mode_fraction",
            "tau0",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.k.to_string(),
            self.n.to_string(),
            fmt_float(self.normalized_log_moment),
            fmt_float(self.log_psi),
            fmt_float(self.gap),
            fmt_float(self.gap_printed_form),
            fmt_float(self.log_moment),
            fmt_float(self.log_jensen_lower),
            fmt_float(self.log_trivial_upper_p),
            self.mode_index.to_string(),
            fmt_float(self.mode_fraction()),
            fmt_float(self.tau0),
        ]
    }
}

impl Record for PropertyReport {
    fn header() -> &'static [&'static str] {
        &[
            "k",
            "n",
            "p",
            "klaner_holds",
            "unimodal_stirling",
            "unimodal_with_falling",
            "unimodal_with_p",
            "mode_index",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.k.to_string(),
            self.n.to_string(),
            self.p.to_fraction_string(),
            self.klaner_holds.to_string(),
            self.unimodal_stirling.to_string(),
            self.unimodal_with_falling.to_string(),
            self.unimodal_with_p.to_string(),
            self.mode_index.to_string(),
        ]
    }
}

impl Record for McEstimate {
    fn header() -> &'static [&'static str] {
        &["samples", "hits", "estimate", "std_error"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.samples.to_string(),
            self.hits.to_string(),
            fmt_float(self.estimate),
            fmt_float(self.std_error),
        ]
    }
}
