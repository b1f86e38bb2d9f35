use crate::error::{Error, Result};
use crate::surd::{classify, fractional_value, Classification, ProblemPoint};

/// Default number of fractional bits for equidistribution samples.
pub const DEFAULT_PRECISION: u32 = 60;

/// Star discrepancy of a sample of fixed-point values `x / 2^bits` in `[0, 1)`.
///
/// With the sample sorted, `D* = max_i max(i/N - x_i, x_i - (i-1)/N)`. The
/// maximum is taken exactly in integers and converted once at the end.
pub fn star_discrepancy(values: &[u64], bits: u32) -> f64 {
    assert!(bits <= 64, "at most 64 fractional bits");
    if values.is_empty() {
        return 0.0;
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    let n = sorted.len() as i128;
    let one = 1i128 << bits;
    let worst = sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let i = i as i128;
            let x = x as i128 * n;
            ((i + 1) * one - x).max(x - i * one)
        })
        .max()
        .unwrap_or(0);
    worst as f64 / (n as f64 * one as f64)
}

/// Which points feed the equidistribution sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SampleSet {
    /// Points of `Omega`: `x+` is a quadratic irrational.
    #[default]
    Irrational,
    /// Every point with `p^2 + 4q > 0`. Rational roots are integers, so each
    /// one adds an atom at 0.
    RealRoots,
}

impl SampleSet {
    fn admits(self, pt: ProblemPoint) -> bool {
        match self {
            SampleSet::Irrational => classify(pt) == Classification::QuadraticIrrational,
            SampleSet::RealRoots => classify(pt) != Classification::NonReal,
        }
    }
}

/// The first `count` admitted points ordered by distance from the origin,
/// ties broken lexicographically by `(p, q)`.
pub fn radius_ordered_points(count: usize, set: SampleSet) -> Vec<ProblemPoint> {
    if count == 0 {
        return Vec::new();
    }
    let mut radius = (count as f64).sqrt().ceil() as i64 + 1;
    loop {
        let r2 = radius * radius;
        let mut pts: Vec<ProblemPoint> = (-radius..=radius)
            .flat_map(|p| {
                let qmax = ((r2 - p * p) as u64).isqrt() as i64;
                (-qmax..=qmax).map(move |q| ProblemPoint::new(p, q))
            })
            .filter(|&pt| set.admits(pt))
            .collect();
        if pts.len() >= count {
            pts.sort_unstable_by_key(|pt| (pt.p * pt.p + pt.q * pt.q, pt.p, pt.q));
            pts.truncate(count);
            return pts;
        }
        radius = radius * 3 / 2 + 1;
    }
}

pub fn equidistribution_discrepancy(count: usize) -> Result<f64> {
    equidistribution_discrepancy_with(count, DEFAULT_PRECISION, SampleSet::default())
}

/// Star discrepancy of `{x+(p, q)}` over the first `count` radius-ordered
/// points of `set`, each truncated to `bits` fractional bits.
pub fn equidistribution_discrepancy_with(count: usize, bits: u32, set: SampleSet) -> Result<f64> {
    if count == 0 {
        return Err(Error::InputOutOfRange("sample size must be positive".into()));
    }
    if bits == 0 || bits > 64 {
        return Err(Error::InputOutOfRange(format!(
            "precision {bits} is outside 1..=64 bits"
        )));
    }
    let values = radius_ordered_points(count, set)
        .into_iter()
        .map(|pt| fractional_bits(pt, bits))
        .collect::<Result<Vec<u64>>>()?;
    Ok(star_discrepancy(&values, bits))
}

pub(crate) fn fractional_bits(pt: ProblemPoint, bits: u32) -> Result<u64> {
    let v = fractional_value(pt, bits)?;
    Ok(v.to_u64().expect("at most 64 bits"))
}
