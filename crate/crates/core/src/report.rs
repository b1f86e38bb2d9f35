//! Rendering of results as CSV and plain text.
//!
//! CSV output is locale independent: `.` decimals, `,` separators, `\n` line
//! endings, and a header row on every table.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::divisors::{BoundCheck, DivisorSieve};
use crate::error::Result;
use crate::stats::{theoretical_kuzmin, theoretical_kuzmin_tail, BoundSweep, SweepReport};
use crate::surd::{cf_period, classify, discriminant, normalize, CfPeriod, Classification, Discriminant, ProblemPoint};
use crate::topograph::{cycle_to_period, river_cycle, PeriodMatch, RiverCycle};

pub const SUMMARY_HEADER: [&str; 10] = [
    "radius",
    "omega_size",
    "t_hat_num",
    "t_hat_den",
    "a_mean_num",
    "a_mean_den",
    "a_prime_num",
    "a_prime_den",
    "w",
    "discrepancy",
];

pub const HISTOGRAM_HEADER: [&str; 4] = ["k", "arnold_freq", "weighted_freq", "theoretical"];

/// `x` with 15 significant digits in positional notation.
pub fn sig15(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (14 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn rational_decimal(r: &BigRational) -> String {
    sig15(r.to_f64().unwrap_or(f64::NAN))
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

/// The summary table followed, after a blank line, by the histogram table.
pub fn sweep_csv(rep: &SweepReport) -> String {
    let summary = vec![
        rep.radius.to_string(),
        rep.omega_size.to_string(),
        rep.t_hat.numer().to_string(),
        rep.t_hat.denom().to_string(),
        rep.a_mean.numer().to_string(),
        rep.a_mean.denom().to_string(),
        rep.a_prime.numer().to_string(),
        rep.a_prime.denom().to_string(),
        rep.weight.to_string(),
        rep.discrepancy.map(sig15).unwrap_or_default(),
    ];
    let mut rows: Vec<Vec<String>> = rep
        .arnold_hist
        .iter()
        .map(|(k, arnold)| {
            vec![
                k.to_string(),
                sig15(arnold),
                sig15(rep.weighted_hist.get(k)),
                sig15(theoretical_kuzmin(k)),
            ]
        })
        .collect();
    rows.push(vec![
        "overflow".into(),
        sig15(rep.arnold_hist.overflow()),
        sig15(rep.weighted_hist.overflow()),
        sig15(theoretical_kuzmin_tail(rep.arnold_hist.k_cap())),
    ]);
    let mut out = csv_table(&SUMMARY_HEADER, &[summary]);
    out.push('\n');
    out.push_str(&csv_table(&HISTOGRAM_HEADER, &rows));
    out
}

pub fn sweep_text(rep: &SweepReport) -> String {
    let mut s = String::new();
    let frac = |r: &BigRational| format!("{r} ~ {}", rational_decimal(r));
    let _ = writeln!(s, "radius        {}", rep.radius);
    let _ = writeln!(
        s,
        "omega_size    {} (excluded: {} non-real, {} rational)",
        rep.omega_size, rep.nonreal, rep.rational
    );
    let _ = writeln!(s, "t_hat         {}", frac(&rep.t_hat));
    let _ = writeln!(s, "a_mean        {}", frac(&rep.a_mean));
    let _ = writeln!(s, "a_prime       {}", frac(&rep.a_prime));
    let _ = writeln!(s, "w             {}", rep.weight);
    if let Some(d) = rep.discrepancy {
        let _ = writeln!(s, "discrepancy   {} over {} points", sig15(d), rep.discrepancy_sample);
    }
    let _ = writeln!(s, "elapsed       {:.3}s", rep.elapsed.as_secs_f64());
    let _ = writeln!(s);
    let _ = writeln!(s, "{:>8} {:>18} {:>18} {:>18}", "k", "arnold", "weighted", "gauss-kuzmin");
    for (k, arnold) in rep.arnold_hist.iter().take(10) {
        let _ = writeln!(
            s,
            "{k:>8} {:>18} {:>18} {:>18}",
            sig15(arnold),
            sig15(rep.weighted_hist.get(k)),
            sig15(theoretical_kuzmin(k))
        );
    }
    s
}

/// Everything known about a single point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointAnalysis {
    pub point: ProblemPoint,
    pub classification: Classification,
    pub normalized: ProblemPoint,
    pub delta: i64,
    pub cf: CfPeriod,
    pub bound: BoundCheck,
    pub f_value: u64,
    pub river: RiverCycle,
    pub river_match: PeriodMatch,
}

pub fn analyze_point(pt: ProblemPoint) -> Result<PointAnalysis> {
    let classification = classify(pt);
    let normalized = normalize(pt)?;
    let delta = discriminant(pt)?;
    let cf = cf_period(pt)?;
    let sieve = DivisorSieve::for_discriminant(delta)?;
    let f_value = sieve.f_of_discriminant(Discriminant::new(delta)?)?;
    let bound = sieve.period_sum_bound(pt, &cf)?;
    let river = river_cycle(normalized)?;
    let river_match = cycle_to_period(&river, &cf);
    Ok(PointAnalysis {
        point: pt,
        classification,
        normalized,
        delta,
        cf,
        bound,
        f_value,
        river,
        river_match,
    })
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn bound_status(b: &BoundCheck) -> &'static str {
    match (b.holds, b.is_tight()) {
        (false, _) => "violated",
        (true, true) => "tight",
        (true, false) => "holds",
    }
}

pub fn point_text(a: &PointAnalysis) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "point        {}", a.point);
    let _ = writeln!(s, "class        {}", a.classification);
    let _ = writeln!(s, "normalized   {}", a.normalized);
    let _ = writeln!(s, "delta        {}", a.delta);
    let _ = writeln!(s, "a0           {}", a.cf.a0);
    let _ = writeln!(s, "period       ({})", join(&a.cf.period));
    let _ = writeln!(s, "T            {}", a.cf.len());
    let _ = writeln!(s, "sum          {}", a.bound.lhs);
    let _ = writeln!(s, "f(delta/4)   {}", a.f_value);
    let _ = writeln!(s, "bound        {} ({})", a.bound.rhs, bound_status(&a.bound));
    let _ = writeln!(s, "river n1     {}", a.river.n1());
    let _ = writeln!(s, "river runs   ({})", join(&a.river.runs));
    let _ = writeln!(
        s,
        "river        {}",
        if a.river_match.is_match() { "match" } else { "mismatch" }
    );
    s
}

pub const POINT_HEADER: [&str; 15] = [
    "p", "q", "class", "p_norm", "q_norm", "delta", "a0", "period", "t", "sum", "f", "bound",
    "status", "river_runs", "river",
];

pub fn point_csv(a: &PointAnalysis) -> String {
    let row = vec![
        a.point.p.to_string(),
        a.point.q.to_string(),
        a.classification.to_string(),
        a.normalized.p.to_string(),
        a.normalized.q.to_string(),
        a.delta.to_string(),
        a.cf.a0.to_string(),
        join(&a.cf.period),
        a.cf.len().to_string(),
        a.bound.lhs.to_string(),
        a.f_value.to_string(),
        a.bound.rhs.to_string(),
        bound_status(&a.bound).to_string(),
        join(&a.river.runs),
        if a.river_match.is_match() { "match" } else { "mismatch" }.to_string(),
    ];
    csv_table(&POINT_HEADER, &[row])
}

pub fn bound_csv(b: &BoundSweep) -> String {
    let summary = vec![
        b.radius.to_string(),
        b.omega_size.to_string(),
        b.violations.len().to_string(),
        b.tight.to_string(),
    ];
    let rows: Vec<Vec<String>> = b
        .doubled_slack
        .iter()
        .map(|(&twice, &count)| {
            let slack = format!("{}", twice as f64 / 2.0);
            vec![slack, count.to_string()]
        })
        .collect();
    let mut out = csv_table(&["radius", "omega_size", "violations", "tight"], &[summary]);
    out.push('\n');
    out.push_str(&csv_table(&["slack", "count"], &rows));
    out
}
