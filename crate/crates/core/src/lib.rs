//! Periodic continued fractions of the quadratic irrationalities
//! `x+(p, q) = (sqrt(p^2 + 4q) - p) / 2`, computed two independent ways:
//! the reduced-surd recurrence ([`surd`]) and a walk along the river of the
//! form `v^2 + p v u - q u^2` ([`topograph`]).
//!
//! [`divisors`] bounds the sum of period elements by a divisor sum of the
//! discriminant, and [`stats`] aggregates period lengths, partial-quotient
//! frequencies and equidistribution over all integer points in a disc.

pub mod divisors;
pub mod error;
pub mod report;
pub mod stats;
pub mod surd;
pub mod topograph;

pub use divisors::{BoundCheck, DivisorSieve};
pub use error::{Error, Result};
pub use stats::{
    equidistribution_discrepancy, kuzmin_arnold, kuzmin_weighted, mean_a_hat, mean_period,
    mean_period_sqrt, sweep, theoretical_kuzmin, KuzminHistogram, OmegaEnumeration, SweepConfig,
    SweepReport, Weight,
};
pub use surd::{
    cf_period, classify, discriminant, floor_surd, fractional_value, isqrt, normalize, CfPeriod,
    Classification, Discriminant, FixedFraction, ProblemPoint, SurdState,
};
pub use topograph::{
    count_river_triplets, cycle_to_period, form_value, initial_river_state, polyline,
    river_cycle, river_step, PeriodMatch, Polyline, RiverCycle, RiverState, Side,
};
