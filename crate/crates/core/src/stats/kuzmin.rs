use std::fmt;

use crate::error::{Error, Result};
use crate::surd::CfPeriod;

/// Gauss-Kuzmin mass at `k`: `log2(1 + 1 / (k (k + 2)))`.
pub fn theoretical_kuzmin(k: u64) -> f64 {
    assert!(k >= 1, "partial quotients start at 1");
    let k = k as f64;
    (1.0 / (k * (k + 2.0))).ln_1p() / std::f64::consts::LN_2
}

/// Gauss-Kuzmin mass of all `k > k_cap`; the sum telescopes to
/// `log2(1 + 1 / (k_cap + 1))`.
pub fn theoretical_kuzmin_tail(k_cap: u64) -> f64 {
    (1.0 / (k_cap as f64 + 1.0)).ln_1p() / std::f64::consts::LN_2
}

/// A weight `w` in the open interval `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Weight(f64);

impl Weight {
    pub fn new(w: f64) -> Result<Self> {
        if w > 0.0 && w < 1.0 {
            Ok(Self(w))
        } else {
            Err(Error::InvalidWeight(w))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Frequencies of partial quotients `1..=k_cap`, with everything larger
/// pooled into one overflow bucket.
#[derive(Debug, Clone, PartialEq)]
pub struct KuzminHistogram {
    k_cap: u64,
    // mass[k - 1] for k in 1..=k_cap, then the overflow bucket
    mass: Vec<f64>,
}

impl KuzminHistogram {
    pub(crate) fn from_mass(k_cap: u64, mass: Vec<f64>) -> Self {
        debug_assert_eq!(mass.len() as u64, k_cap + 1);
        Self { k_cap, mass }
    }

    pub(crate) fn from_counts(k_cap: u64, counts: &[u64]) -> Self {
        let total: u64 = counts.iter().sum();
        let mass = counts
            .iter()
            .map(|&c| if total == 0 { 0.0 } else { c as f64 / total as f64 })
            .collect();
        Self::from_mass(k_cap, mass)
    }

    pub fn k_cap(&self) -> u64 {
        self.k_cap
    }

    /// Mass at `k`; zero for `k = 0`, the overflow bucket for `k > k_cap`.
    pub fn get(&self, k: u64) -> f64 {
        match k {
            0 => 0.0,
            k if k > self.k_cap => self.overflow(),
            k => self.mass[k as usize - 1],
        }
    }

    pub fn overflow(&self) -> f64 {
        self.mass[self.k_cap as usize]
    }

    pub fn total(&self) -> f64 {
        self.mass.iter().sum()
    }

    /// `(k, mass)` for `k in 1..=k_cap`, excluding the overflow bucket.
    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        (1..=self.k_cap).map(|k| (k, self.mass[k as usize - 1]))
    }

    /// Largest absolute difference over all buckets.
    pub fn max_abs_diff(&self, other: &KuzminHistogram) -> f64 {
        assert_eq!(self.k_cap, other.k_cap);
        self.mass
            .iter()
            .zip(&other.mass)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }
}

pub(crate) fn bucket(k: u64, k_cap: u64) -> usize {
    debug_assert!(k >= 1);
    (k.min(k_cap + 1) - 1) as usize
}

/// Adds the geometrically weighted distribution of one purely periodic
/// expansion into `mass`.
///
/// Position `i` of the infinite expansion gets `(1 - w) w^(i - 1)`. Folding
/// the repeats of a period of length `T` gives position `i <= T` the weight
/// `w^(i - 1) (1 - w) / (1 - w^T)`. The normalizer is taken as the sum of
/// `w^(i - 1)` directly, which avoids cancellation in `1 - w^T` near `w = 1`.
pub(crate) fn add_weighted(period: &[u64], w: Weight, k_cap: u64, mass: &mut [f64]) {
    let w = w.get();
    let mut weights = Vec::with_capacity(period.len());
    let mut wi = 1.0;
    for _ in period {
        weights.push(wi);
        wi *= w;
    }
    let total: f64 = weights.iter().sum();
    for (&a, wi) in period.iter().zip(weights) {
        mass[bucket(a, k_cap)] += wi / total;
    }
}

/// Geometrically weighted distribution of partial quotients for a single
/// point.
pub fn weighted_distribution(cf: &CfPeriod, w: Weight, k_cap: u64) -> KuzminHistogram {
    let mut mass = vec![0.0; k_cap as usize + 1];
    add_weighted(&cf.period, w, k_cap, &mut mass);
    KuzminHistogram::from_mass(k_cap, mass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theoretical_values() {
        assert!((theoretical_kuzmin(1) - 0.415_037_499_278_843_8).abs() < 1e-15);
        assert!((theoretical_kuzmin(2) - 0.169_925_001_442_312_4).abs() < 1e-15);
        let partial: f64 = (1..=1000).map(theoretical_kuzmin).sum();
        assert!((partial + theoretical_kuzmin_tail(1000) - 1.0).abs() < 1e-12);
        let head: f64 = (1..=100).map(theoretical_kuzmin).sum();
        assert!((theoretical_kuzmin_tail(100) - (1.0 - head)).abs() < 1e-12);
    }

    #[test]
    fn weight_range() {
        assert!(Weight::new(0.5).is_ok());
        assert_eq!(Weight::new(0.0), Err(Error::InvalidWeight(0.0)));
        assert_eq!(Weight::new(1.0), Err(Error::InvalidWeight(1.0)));
        assert!(Weight::new(f64::NAN).is_err());
    }

    #[test]
    fn weighted_single_point() {
        let cf = CfPeriod {
            a0: 1,
            period: vec![1, 2],
        };
        let h = weighted_distribution(&cf, Weight::new(0.5).unwrap(), 10);
        assert!((h.get(1) - 2.0 / 3.0).abs() < 1e-15);
        assert!((h.get(2) - 1.0 / 3.0).abs() < 1e-15);
        assert!((h.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn weighted_period_one_is_point_mass() {
        let cf = CfPeriod {
            a0: 1,
            period: vec![7],
        };
        for w in [0.01, 0.5, 0.999_999] {
            let h = weighted_distribution(&cf, Weight::new(w).unwrap(), 5);
            assert_eq!(h.overflow(), 1.0);
            assert_eq!(h.get(7), 1.0);
            assert_eq!(h.get(1), 0.0);
        }
    }
}
