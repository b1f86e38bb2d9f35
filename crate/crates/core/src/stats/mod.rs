//! Statistics over the integer points of a disc.
//!
//! `Omega_R` is the set of `(p, q)` with `p^2 + q^2 <= R^2` whose root
//! `x+(p, q)` is a quadratic irrational. The disc is cut into stripes of
//! constant `p`; stripes are processed in parallel and merged in ascending
//! `p`, so every result is independent of the number of worker threads.
//! Period and element totals are exact integers and the derived means exact
//! rationals.

mod discrepancy;
mod kuzmin;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::divisors::{BoundCheck, DivisorSieve};
use crate::error::{Error, Result};
use crate::surd::{cf_period, classify, Classification, ProblemPoint, MAX_RADIUS};

pub use discrepancy::{
    equidistribution_discrepancy, equidistribution_discrepancy_with, radius_ordered_points,
    star_discrepancy, SampleSet, DEFAULT_PRECISION,
};
pub use kuzmin::{
    theoretical_kuzmin, theoretical_kuzmin_tail, weighted_distribution, KuzminHistogram, Weight,
};

pub const DEFAULT_K_CAP: u64 = 100;
pub const DEFAULT_WEIGHT: f64 = 0.99;

fn check_radius(radius: u64) -> Result<()> {
    if radius > MAX_RADIUS {
        Err(Error::InputOutOfRange(format!(
            "radius {radius} exceeds {MAX_RADIUS}"
        )))
    } else {
        Ok(())
    }
}

/// Every lattice point with `p = stripe` inside the disc, `q` ascending.
fn stripe(radius: u64, p: i64) -> impl Iterator<Item = ProblemPoint> {
    let r = radius as i64;
    let qmax = ((r * r - p * p) as u64).isqrt() as i64;
    (-qmax..=qmax).map(move |q| ProblemPoint::new(p, q))
}

fn stripes(radius: u64) -> std::ops::RangeInclusive<i64> {
    let r = radius as i64;
    -r..=r
}

/// The points of `Omega_R` in `(p, q)` order, plus what was left out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaEnumeration {
    pub radius: u64,
    pub points: Vec<ProblemPoint>,
    pub nonreal: u64,
    pub rational: u64,
}

impl OmegaEnumeration {
    /// Lattice points scanned: `|Omega_R|` plus the excluded ones.
    pub fn scanned(&self) -> u64 {
        self.points.len() as u64 + self.nonreal + self.rational
    }
}

pub fn enumerate_omega(radius: u64) -> Result<OmegaEnumeration> {
    check_radius(radius)?;
    let mut out = OmegaEnumeration {
        radius,
        points: Vec::new(),
        nonreal: 0,
        rational: 0,
    };
    for p in stripes(radius) {
        for pt in stripe(radius, p) {
            match classify(pt) {
                Classification::NonReal => out.nonreal += 1,
                Classification::Rational => out.rational += 1,
                Classification::QuadraticIrrational => out.points.push(pt),
            }
        }
    }
    Ok(out)
}

/// What a sweep computes besides the exact period totals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub radius: u64,
    pub weight: Weight,
    pub k_cap: u64,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Fractional bits for the discrepancy sample; `None` skips it.
    pub discrepancy_bits: Option<u32>,
}

impl SweepConfig {
    pub fn new(radius: u64) -> Self {
        Self {
            radius,
            weight: Weight::new(DEFAULT_WEIGHT).expect("default weight is valid"),
            k_cap: DEFAULT_K_CAP,
            threads: None,
            discrepancy_bits: Some(DEFAULT_PRECISION),
        }
    }

    pub fn weight(mut self, w: f64) -> Result<Self> {
        self.weight = Weight::new(w)?;
        Ok(self)
    }

    pub fn k_cap(mut self, k_cap: u64) -> Self {
        self.k_cap = k_cap;
        self
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads);
        self
    }

    pub fn discrepancy_bits(mut self, bits: Option<u32>) -> Self {
        self.discrepancy_bits = bits;
        self
    }
}

/// Partial sums for a set of stripes.
#[derive(Debug, Clone)]
struct Tally {
    omega_size: u64,
    nonreal: u64,
    rational: u64,
    period_total: u64,
    element_total: u64,
    // period length T -> sum over points with that T of their element sums
    element_sum_by_len: BTreeMap<u64, u64>,
    arnold_counts: Vec<u64>,
    weighted_mass: Vec<f64>,
    fractions: Vec<u64>,
}

impl Tally {
    fn new(k_cap: u64) -> Self {
        Self {
            omega_size: 0,
            nonreal: 0,
            rational: 0,
            period_total: 0,
            element_total: 0,
            element_sum_by_len: BTreeMap::new(),
            arnold_counts: vec![0; k_cap as usize + 1],
            weighted_mass: vec![0.0; k_cap as usize + 1],
            fractions: Vec::new(),
        }
    }

    fn absorb(&mut self, other: Tally) {
        self.omega_size += other.omega_size;
        self.nonreal += other.nonreal;
        self.rational += other.rational;
        self.period_total += other.period_total;
        self.element_total += other.element_total;
        for (t, s) in other.element_sum_by_len {
            *self.element_sum_by_len.entry(t).or_default() += s;
        }
        for (x, y) in self.arnold_counts.iter_mut().zip(other.arnold_counts) {
            *x += y;
        }
        for (x, y) in self.weighted_mass.iter_mut().zip(other.weighted_mass) {
            *x += y;
        }
        self.fractions.extend(other.fractions);
    }

    fn stripe(cfg: &SweepConfig, p: i64) -> Result<Tally> {
        let mut tally = Tally::new(cfg.k_cap);
        for pt in stripe(cfg.radius, p) {
            match classify(pt) {
                Classification::NonReal => tally.nonreal += 1,
                Classification::Rational => tally.rational += 1,
                Classification::QuadraticIrrational => {
                    if let Some(bits) = cfg.discrepancy_bits {
                        tally.fractions.push(discrepancy::fractional_bits(pt, bits)?);
                    }
                    let cf = cf_period(pt)?;
                    let t = cf.len() as u64;
                    let sum = cf.sum();
                    tally.omega_size += 1;
                    tally.period_total += t;
                    tally.element_total += sum;
                    *tally.element_sum_by_len.entry(t).or_default() += sum;
                    for &a in &cf.period {
                        tally.arnold_counts[kuzmin::bucket(a, cfg.k_cap)] += 1;
                    }
                    kuzmin::add_weighted(&cf.period, cfg.weight, cfg.k_cap, &mut tally.weighted_mass);
                }
            }
        }
        Ok(tally)
    }

    fn disc(cfg: &SweepConfig) -> Result<Tally> {
        check_radius(cfg.radius)?;
        if cfg.k_cap == 0 {
            return Err(Error::InputOutOfRange("k_cap must be positive".into()));
        }
        let run = || -> Result<Tally> {
            let parts: Vec<Tally> = stripes(cfg.radius)
                .collect::<Vec<_>>()
                .into_par_iter()
                .map(|p| Tally::stripe(cfg, p))
                .collect::<Result<_>>()?;
            // Ordered merge keeps the floating-point sums partition independent.
            let mut total = Tally::new(cfg.k_cap);
            for part in parts {
                total.absorb(part);
            }
            Ok(total)
        };
        match cfg.threads {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InputOutOfRange(format!("thread pool: {e}")))?
                .install(run),
            None => run(),
        }
    }

    fn require_nonempty(&self, radius: u64) -> Result<()> {
        if self.omega_size == 0 {
            Err(Error::EmptyOmega(radius))
        } else {
            Ok(())
        }
    }

    fn t_hat(&self) -> BigRational {
        ratio(self.period_total, self.omega_size)
    }

    fn a_prime(&self) -> BigRational {
        ratio(self.element_total, self.period_total)
    }

    fn a_mean(&self) -> BigRational {
        let sum: BigRational = self
            .element_sum_by_len
            .iter()
            .map(|(&t, &s)| ratio(s, t))
            .sum();
        sum / BigInt::from(self.omega_size)
    }

    fn weighted(&self, k_cap: u64) -> KuzminHistogram {
        let n = self.omega_size as f64;
        KuzminHistogram::from_mass(k_cap, self.weighted_mass.iter().map(|m| m / n).collect())
    }
}

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn tally_for(radius: u64, weight: Option<f64>, k_cap: u64) -> Result<Tally> {
    let mut cfg = SweepConfig::new(radius)
        .k_cap(k_cap)
        .discrepancy_bits(None);
    if let Some(w) = weight {
        cfg = cfg.weight(w)?;
    }
    let tally = Tally::disc(&cfg)?;
    tally.require_nonempty(radius)?;
    Ok(tally)
}

/// Exact mean period length over `Omega_R`.
pub fn mean_period(radius: u64) -> Result<BigRational> {
    Ok(tally_for(radius, None, DEFAULT_K_CAP)?.t_hat())
}

/// `A(R)`: the mean over `Omega_R` of each point's mean period element.
pub fn mean_a_hat(radius: u64) -> Result<BigRational> {
    Ok(tally_for(radius, None, DEFAULT_K_CAP)?.a_mean())
}

/// `A'_R`: all period elements pooled, divided by all periods pooled.
pub fn a_prime(radius: u64) -> Result<BigRational> {
    Ok(tally_for(radius, None, DEFAULT_K_CAP)?.a_prime())
}

/// Mean period of `sqrt(q)` over `1 <= q <= q_max`, with square `q`
/// contributing a period of 0.
pub fn mean_period_sqrt(q_max: u64) -> Result<BigRational> {
    if q_max == 0 {
        return Err(Error::InputOutOfRange("q_max must be positive".into()));
    }
    let q_max_i = i64::try_from(q_max).map_err(|_| Error::InputOutOfRange("q_max".into()))?;
    let total = (1..=q_max_i)
        .into_par_iter()
        .map(|q| match classify(ProblemPoint::new(0, q)) {
            Classification::QuadraticIrrational => {
                cf_period(ProblemPoint::new(0, q)).map(|cf| cf.len() as u64)
            }
            _ => Ok(0),
        })
        .try_reduce(|| 0, |x, y| Ok(x + y))?;
    Ok(ratio(total, q_max))
}

/// Frequency of each partial quotient among all period elements of all
/// points of `Omega_R` pooled together.
pub fn kuzmin_arnold(radius: u64, k_cap: u64) -> Result<KuzminHistogram> {
    let tally = tally_for(radius, None, k_cap)?;
    Ok(KuzminHistogram::from_counts(k_cap, &tally.arnold_counts))
}

/// Per-point geometrically weighted distributions, averaged uniformly over
/// `Omega_R`.
pub fn kuzmin_weighted(radius: u64, w: f64, k_cap: u64) -> Result<KuzminHistogram> {
    let tally = tally_for(radius, Some(w), k_cap)?;
    Ok(tally.weighted(k_cap))
}

/// Everything a sweep measures, from a single pass over the disc.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub radius: u64,
    pub omega_size: u64,
    pub nonreal: u64,
    pub rational: u64,
    pub period_total: u64,
    pub element_total: u64,
    pub t_hat: BigRational,
    pub a_mean: BigRational,
    pub a_prime: BigRational,
    pub arnold_hist: KuzminHistogram,
    pub weighted_hist: KuzminHistogram,
    pub weight: Weight,
    /// Star discrepancy of `{x+}` over `Omega_R`; `None` when not requested.
    pub discrepancy: Option<f64>,
    pub discrepancy_sample: usize,
    pub elapsed: Duration,
}

pub fn sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    let started = Instant::now();
    let tally = Tally::disc(cfg)?;
    tally.require_nonempty(cfg.radius)?;
    let discrepancy = cfg
        .discrepancy_bits
        .map(|bits| star_discrepancy(&tally.fractions, bits));
    Ok(SweepReport {
        radius: cfg.radius,
        omega_size: tally.omega_size,
        nonreal: tally.nonreal,
        rational: tally.rational,
        period_total: tally.period_total,
        element_total: tally.element_total,
        t_hat: tally.t_hat(),
        a_mean: tally.a_mean(),
        a_prime: tally.a_prime(),
        arnold_hist: KuzminHistogram::from_counts(cfg.k_cap, &tally.arnold_counts),
        weighted_hist: tally.weighted(cfg.k_cap),
        weight: cfg.weight,
        discrepancy,
        discrepancy_sample: tally.fractions.len(),
        elapsed: started.elapsed(),
    })
}

/// Period-sum bound checked over all of `Omega_R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundSweep {
    pub radius: u64,
    pub omega_size: u64,
    pub violations: Vec<ProblemPoint>,
    pub tight: u64,
    /// `rhs - lhs` -> number of points; twice the slack, so it is an integer.
    pub doubled_slack: BTreeMap<i64, u64>,
}

pub fn bound_sweep(radius: u64) -> Result<BoundSweep> {
    check_radius(radius)?;
    let sieve = DivisorSieve::for_radius(radius.max(1))?;
    let parts: Vec<Vec<(ProblemPoint, BoundCheck)>> = stripes(radius)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|p| {
            stripe(radius, p)
                .filter(|&pt| classify(pt) == Classification::QuadraticIrrational)
                .map(|pt| Ok((pt, sieve.period_sum_bound(pt, &cf_period(pt)?)?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut out = BoundSweep {
        radius,
        omega_size: 0,
        violations: Vec::new(),
        tight: 0,
        doubled_slack: BTreeMap::new(),
    };
    for (pt, check) in parts.into_iter().flatten() {
        out.omega_size += 1;
        if !check.holds {
            out.violations.push(pt);
        }
        if check.is_tight() {
            out.tight += 1;
        }
        let slack = check.slack() * 2;
        *out.doubled_slack.entry(slack.to_integer()).or_default() += 1;
    }
    Ok(out)
}
