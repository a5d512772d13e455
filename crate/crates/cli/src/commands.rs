use binomial_moments::report::{fmt_float, Record};
use binomial_moments::{
    all_red_probability, converge_table, lemma_sweep, log_of_exact, log_psi, mc_all_red,
    raw_moment_direct, raw_moment_stirling, stirling_row, temme_stirling, AsymptoteInputs,
    BoundReport, Error, ExactRational, MomentQuery, Result,
};

use crate::output::Report;

/// Log-space slack for ordering checks.
const SLACK: f64 = 1e-9;
/// Monte Carlo gate in standard errors.
const MC_SIGMAS: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Direct,
    Stirling,
}

pub struct RawQuery {
    pub n: u64,
    pub p: ExactRational,
    pub k: u64,
}

impl RawQuery {
    fn build(&self) -> Result<MomentQuery> {
        MomentQuery::new(self.n, self.p.clone(), self.k)
    }
}

fn record_report<T: Record>(rows: &[T]) -> Report {
    let mut report = Report::new(T::header());
    report.rows = rows.iter().map(Record::fields).collect();
    report
}

fn key_values(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    pairs
        .iter()
        .map(|(k, v)| format!("{k:<width$}  {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn moment(raw: &RawQuery, method: Method, all_red: bool) -> Result<Report> {
    let q = raw.build()?;
    let value = match method {
        Method::Direct => raw_moment_direct(&q),
        Method::Stirling => raw_moment_stirling(&q),
    };
    let prob = all_red_probability(&q);
    let mut report = Report::new(&["n", "p", "k", "moment", "all_red_probability", "log_moment"]);
    report.rows.push(vec![
        q.n().to_string(),
        q.p().to_fraction_string(),
        q.k().to_string(),
        value.to_fraction_string(),
        prob.to_fraction_string(),
        fmt_float(log_of_exact(&value)?.log_e),
    ]);
    report.plain = Some(if all_red { prob.to_string() } else { value.to_string() });
    Ok(report)
}

pub fn asymptote(beta: f64, p: &ExactRational) -> Result<Report> {
    let s = log_psi(&AsymptoteInputs::new(beta, p.to_f64())?)?;
    let mut report = record_report(&[s]);
    report.plain = Some(key_values(&[
        ("beta", fmt_float(s.beta)),
        ("p", fmt_float(s.p)),
        ("chi0", fmt_float(s.chi0)),
        ("tau0", fmt_float(s.tau0)),
        ("logPsi", fmt_float(s.log_psi)),
        ("Psi", fmt_float(s.psi())),
        ("printed_logPsi", fmt_float(s.log_psi_printed_form)),
        ("printed_Psi", fmt_float(s.psi_printed_form())),
    ]));
    let ceiling = if s.printed_form_within_ceiling() {
        "within"
    } else {
        "above"
    };
    report.notes.push(format!(
        "the closed-form product beta^beta (e^chi-1)^tau / (tau^tau (beta-tau)^(beta-tau) chi) \
         differs from exp(psi(tau0)) by a factor e^{} = exp(1 - tau0 log p); it is {ceiling} \
         the ceiling Psi <= beta = {}",
        fmt_float(s.printed_form_discrepancy()),
        fmt_float(beta)
    ));
    Ok(report)
}

pub fn bounds(raw: &RawQuery) -> Result<Report> {
    let q = raw.build()?;
    let rep = BoundReport::compute(&q)?;
    let mut report = record_report(std::slice::from_ref(&rep));
    let entries = [
        &rep.log_trivial_lower,
        &rep.log_jensen_lower,
        &rep.log_exact,
        &rep.log_ahle_upper,
        &rep.log_trivial_upper_p,
        &rep.log_trivial_upper_n,
    ];
    let mut lines = vec![format!("query {q}")];
    lines.push(key_values(
        &entries
            .iter()
            .map(|v| (v.descriptor, fmt_float(v.log_e)))
            .collect::<Vec<_>>(),
    ));
    report.plain = Some(lines.join("\n"));
    if rep.log_ahle_upper.log_e > rep.log_trivial_upper_p.log_e {
        report
            .notes
            .push("the Ahle bound is weaker than p n^k here".to_string());
    }
    let violations = rep.violations(SLACK);
    if !violations.is_empty() {
        report.violation = Some(format!("bound ordering broken: {violations:?}"));
    }
    Ok(report)
}

pub fn temme(k: u64, j: Option<u64>) -> Result<Report> {
    if k < 2 {
        return Err(Error::Domain(format!("temme needs k >= 2, got {k}")));
    }
    let row = stirling_row(k)?;
    let js: Vec<u64> = match j {
        Some(j) => vec![j],
        None => (1..k).collect(),
    };
    let mut report = Report::new(&["k", "j", "tau", "log_temme", "log_exact", "rel_error", "asserted"]);
    for j in js {
        let approx = temme_stirling(k, j)?.log_e;
        let exact = ExactRational::from(row.entries()[j as usize].clone()).ln_abs();
        let tau = j as f64 / k as f64;
        let rel = if exact == 0.0 {
            f64::NAN
        } else {
            ((approx - exact) / exact).abs()
        };
        report.rows.push(vec![
            k.to_string(),
            j.to_string(),
            fmt_float(tau),
            fmt_float(approx),
            fmt_float(exact),
            fmt_float(rel),
            (0.1..=0.9).contains(&tau).to_string(),
        ]);
    }
    report
        .notes
        .push("rows with j/k outside [0.1, 0.9] are reported, not asserted".to_string());
    Ok(report)
}

pub fn converge(beta: f64, p: &ExactRational, ks: &[u64], kmax_hard: u64) -> Result<Report> {
    if let Some(&k) = ks.iter().find(|&&k| k > kmax_hard) {
        return Err(Error::Domain(format!(
            "k = {k} exceeds the cap {kmax_hard}; raise it with --kmax-hard"
        )));
    }
    let rows = converge_table(beta, p, ks)?;
    let mut report = record_report(&rows);
    if let (Some(first), Some(last)) = (rows.first(), rows.last()) {
        report.notes.push(format!(
            "gap {} at k={} -> {} at k={}",
            fmt_float(first.gap),
            first.k,
            fmt_float(last.gap),
            last.k
        ));
    }
    let broken: Vec<u64> = rows
        .iter()
        .filter(|r| !r.sandwich_holds(SLACK))
        .map(|r| r.k)
        .collect();
    if !broken.is_empty() {
        report.violation = Some(format!("moment outside its bounds at k = {broken:?}"));
    }
    Ok(report)
}

pub fn check(kmax: u64, ps: &[ExactRational]) -> Result<Report> {
    if kmax == 0 {
        return Err(Error::Domain("check needs kmax >= 1".into()));
    }
    let reports = lemma_sweep(kmax, ps)?;
    let bad = reports.iter().filter(|r| !r.all_hold()).count();
    let mut report = record_report(&reports);
    report.plain = Some(key_values(&[
        ("kmax", kmax.to_string()),
        ("cases", reports.len().to_string()),
        ("violations", bad.to_string()),
        (
            "status",
            if bad == 0 {
                "all log-concavity and unimodality properties hold".to_string()
            } else {
                "VIOLATED".to_string()
            },
        ),
    ]));
    if bad > 0 {
        report.violation = Some(format!("{bad} cases violate log-concavity or unimodality"));
    }
    Ok(report)
}

pub fn mc(n: u64, p: &ExactRational, k: u64, samples: u64, seed: u64) -> Result<Report> {
    let q = MomentQuery::new(n, p.clone(), k)?;
    let exact = all_red_probability(&q);
    let est = mc_all_red(n, p.to_f64(), k, samples, seed)?;
    let z = est.z_score(exact.to_f64());
    let mut report = Report::new(&["n", "p", "k", "seed", "samples", "hits", "estimate", "std_error", "exact", "z"]);
    let mut row = vec![n.to_string(), p.to_fraction_string(), k.to_string(), seed.to_string()];
    row.extend(est.fields());
    row.push(exact.to_fraction_string());
    row.push(fmt_float(z));
    report.rows.push(row);
    report.plain = Some(key_values(&[
        ("estimate", fmt_float(est.estimate)),
        ("std_error", fmt_float(est.std_error)),
        ("exact", format!("{} ({})", exact, fmt_float(exact.to_f64()))),
        ("z", fmt_float(z)),
    ]));
    if z.abs() > MC_SIGMAS {
        report.violation = Some(format!("estimate is {} standard errors from exact", fmt_float(z)));
    }
    Ok(report)
}
