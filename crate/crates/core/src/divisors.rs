//! Divisor-count sieve and the period-sum bound `f(delta / 4)`.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::surd::{discriminant, isqrt, CfPeriod, Discriminant, ProblemPoint};

/// Table of `tau(n)` for `1 <= n <= limit`.
#[derive(Debug, Clone)]
pub struct DivisorSieve {
    limit: u64,
    // tau[0] is unused.
    tau: Vec<u32>,
}

impl DivisorSieve {
    /// Harmonic sieve: every `d` adds one to each of its multiples.
    pub fn new(limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::InputOutOfRange("sieve limit must be positive".into()));
        }
        let len = usize::try_from(limit)
            .ok()
            .and_then(|l| l.checked_add(1))
            .ok_or(Error::ResourceLimit(limit))?;
        let mut tau = Vec::new();
        tau.try_reserve_exact(len)
            .map_err(|_| Error::ResourceLimit(limit))?;
        tau.resize(len, 0u32);
        for d in 1..len {
            for m in (d..len).step_by(d) {
                tau[m] += 1;
            }
        }
        Ok(Self { limit, tau })
    }

    /// A sieve large enough for every `f(delta / 4)` with `delta <= max_delta`.
    pub fn for_discriminant(max_delta: i64) -> Result<Self> {
        Self::new((max_delta.max(4) / 4) as u64)
    }

    /// A sieve covering every discriminant that occurs in the disc of
    /// radius `radius`: `delta <= R^2 + 4R`.
    pub fn for_radius(radius: u64) -> Result<Self> {
        let r = radius as i64;
        Self::for_discriminant(r * r + 4 * r)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn tau(&self, n: u64) -> Result<u32> {
        if n == 0 {
            return Err(Error::InputOutOfRange("tau(0) is undefined".into()));
        }
        self.tau
            .get(n as usize)
            .copied()
            .ok_or(Error::SieveTooSmall {
                limit: self.limit,
                needed: n,
            })
    }

    fn require(&self, n: u64) -> Result<()> {
        if n > self.limit {
            Err(Error::SieveTooSmall {
                limit: self.limit,
                needed: n,
            })
        } else {
            Ok(())
        }
    }

    /// `D(n) = sum_{u=1}^{isqrt(n)} tau(n - u^2)`, skipping the zero term of
    /// a square `n`.
    pub fn big_d(&self, n: u64) -> Result<u64> {
        self.require(n)?;
        Ok((1..=isqrt(n))
            .map(|u| n - u * u)
            .filter(|&m| m > 0)
            .map(|m| self.tau[m as usize] as u64)
            .sum())
    }

    /// `f(delta / 4)`: `2 D(n) + tau(n)` for `delta = 4n`, and
    /// `2 sum_{i odd, i^2 < delta} tau((delta - i^2) / 4)` for `delta = 1 mod 4`.
    pub fn f_of_discriminant(&self, delta: Discriminant) -> Result<u64> {
        let delta = delta.get();
        match delta.rem_euclid(4) {
            0 => {
                let n = (delta / 4) as u64;
                Ok(2 * self.big_d(n)? + self.tau(n)? as u64)
            }
            1 => {
                self.require((delta / 4) as u64)?;
                let delta = delta as u64;
                Ok(2 * (1..)
                    .step_by(2)
                    .take_while(|i| i * i < delta)
                    .map(|i| self.tau[((delta - i * i) / 4) as usize] as u64)
                    .sum::<u64>())
            }
            _ => Err(Error::InvalidDiscriminant(delta)),
        }
    }

    /// Checks `sum(period) <= f(delta / 4)`, with the right-hand side halved
    /// for odd period length.
    pub fn period_sum_bound(&self, pt: ProblemPoint, cf: &CfPeriod) -> Result<BoundCheck> {
        let delta = Discriminant::new(discriminant(pt)?)
            .map_err(|_| Error::NotAnIrrational { p: pt.p, q: pt.q })?;
        let f = self.f_of_discriminant(delta)?;
        let lhs = cf.sum();
        let rhs = if cf.len() % 2 == 1 {
            Ratio::new(f, 2)
        } else {
            Ratio::from_integer(f)
        };
        Ok(BoundCheck {
            holds: Ratio::from_integer(lhs) <= rhs,
            lhs,
            rhs,
        })
    }
}

/// Outcome of the period-sum bound for one point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundCheck {
    pub holds: bool,
    pub lhs: u64,
    pub rhs: Ratio<u64>,
}

impl BoundCheck {
    pub fn is_tight(&self) -> bool {
        Ratio::from_integer(self.lhs) == self.rhs
    }

    /// `rhs - lhs`; negative on a violation.
    pub fn slack(&self) -> Ratio<i64> {
        Ratio::new(*self.rhs.numer() as i64, *self.rhs.denom() as i64) - self.lhs as i64
    }
}
