//! Quadratic irrationalities `x+(p, q) = (sqrt(p^2 + 4q) - p) / 2` and their
//! purely periodic continued fractions.
//!
//! The expansion runs the classical reduced-surd recurrence on states
//! `(P + sqrt(D)) / Q`. All arithmetic is exact; anything that would leave
//! 64-bit range is reported as [`Error::InputOutOfRange`].

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{overflow, Error, Result};

/// Default cap on the number of recurrence steps spent looking for a period.
pub const DEFAULT_PERIOD_CAP: usize = 10_000_000;

/// Largest sweep radius for which every `p^2 + 4q` and every intermediate
/// fits comfortably in `i64`.
pub const MAX_RADIUS: u64 = 100_000;

/// A coefficient pair of the equation `x^2 + p x = q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProblemPoint {
    pub p: i64,
    pub q: i64,
}

impl ProblemPoint {
    pub const fn new(p: i64, q: i64) -> Self {
        Self { p, q }
    }
}

impl fmt::Display for ProblemPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// A positive, non-square discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Discriminant(i64);

impl Discriminant {
    pub fn new(delta: i64) -> Result<Self> {
        if delta <= 0 {
            return Err(Error::InputOutOfRange(format!(
                "discriminant {delta} is not positive"
            )));
        }
        let r = isqrt(delta as u64);
        if r * r == delta as u64 {
            return Err(Error::InputOutOfRange(format!(
                "discriminant {delta} is a perfect square"
            )));
        }
        Ok(Self(delta))
    }

    pub fn of(pt: ProblemPoint) -> Result<Self> {
        match classify(pt) {
            Classification::QuadraticIrrational => Ok(Self(discriminant(pt)?)),
            _ => Err(Error::NotAnIrrational { p: pt.p, q: pt.q }),
        }
    }

    pub fn get(self) -> i64 {
        self.0
    }
}

/// What kind of number `x+(p, q)` is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    /// `p^2 + 4q <= 0`
    NonReal,
    /// `p^2 + 4q` is a positive perfect square.
    Rational,
    QuadraticIrrational,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::NonReal => "non-real",
            Classification::Rational => "rational",
            Classification::QuadraticIrrational => "quadratic-irrational",
        })
    }
}

/// `p^2 + 4q`.
pub fn discriminant(pt: ProblemPoint) -> Result<i64> {
    pt.p.checked_mul(pt.p)
        .and_then(|pp| pt.q.checked_mul(4).and_then(|q4| pp.checked_add(q4)))
        .ok_or_else(|| overflow("discriminant"))
}

pub fn classify(pt: ProblemPoint) -> Classification {
    // i128 cannot overflow here for any pair of i64 inputs.
    let delta = (pt.p as i128) * (pt.p as i128) + 4 * (pt.q as i128);
    if delta <= 0 {
        return Classification::NonReal;
    }
    let r = (delta as u128).isqrt();
    if r * r == delta as u128 {
        Classification::Rational
    } else {
        Classification::QuadraticIrrational
    }
}

/// Shift `(p, q)` to the equivalent point with `p in {0, 1}`.
///
/// `x+(p, q)` and `x+(p + 2, q - p - 1)` differ by an integer, so every
/// irrational point has a representative with the same discriminant and
/// the same fractional part.
pub fn normalize(pt: ProblemPoint) -> Result<ProblemPoint> {
    if classify(pt) != Classification::QuadraticIrrational {
        return Err(Error::NotAnIrrational { p: pt.p, q: pt.q });
    }
    let delta = discriminant(pt)?;
    let p = delta.rem_euclid(2);
    Ok(ProblemPoint::new(p, (delta - p * p) / 4))
}

/// Exact `floor(sqrt(n))`.
pub fn isqrt(n: u64) -> u64 {
    n.isqrt()
}

/// The quadratic surd `(P + sqrt(D)) / Q` with `Q | D - P^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurdState {
    pub p: i64,
    pub q: i64,
    pub d: i64,
}

impl SurdState {
    pub fn new(p: i64, q: i64, d: i64) -> Result<Self> {
        Discriminant::new(d)?;
        if q == 0 {
            return Err(Error::InputOutOfRange("surd denominator is zero".into()));
        }
        let rest = (d as i128) - (p as i128) * (p as i128);
        if rest % (q as i128) != 0 {
            return Err(Error::InputOutOfRange(format!(
                "{q} does not divide {d} - {p}^2"
            )));
        }
        Ok(Self { p, q, d })
    }

    /// The surd `x+(p, q) = (-p + sqrt(p^2 + 4q)) / 2`.
    pub fn of_point(pt: ProblemPoint) -> Result<Self> {
        let delta = Discriminant::of(pt)?.get();
        let p = pt.p.checked_neg().ok_or_else(|| overflow("-p"))?;
        Ok(Self { p, q: 2, d: delta })
    }

    /// One step of the recurrence: returns the partial quotient and the
    /// state representing `1 / (x - floor(x))`.
    pub fn step(&self) -> Result<(i64, SurdState)> {
        let a = floor_surd(self)?;
        let p = a
            .checked_mul(self.q)
            .and_then(|aq| aq.checked_sub(self.p))
            .ok_or_else(|| overflow("surd recurrence"))?;
        let q = p
            .checked_mul(p)
            .and_then(|pp| self.d.checked_sub(pp))
            .ok_or_else(|| overflow("surd recurrence"))?
            / self.q;
        Ok((a, SurdState { p, q, d: self.d }))
    }

    /// True when the value exceeds 1 and its conjugate lies in `(-1, 0)`.
    pub fn is_reduced(&self) -> bool {
        let (p, q, d) = (self.p as i128, self.q as i128, self.d as i128);
        q > 0 && lt_sqrt(q - p, d) && lt_sqrt(p, d) && !lt_sqrt(p + q, d)
    }
}

/// `x < sqrt(d)` for non-square `d > 0`.
fn lt_sqrt(x: i128, d: i128) -> bool {
    x < 0 || x * x < d
}

/// Exact `floor((P + sqrt(D)) / Q)` for either sign of `P` and `Q`.
pub fn floor_surd(s: &SurdState) -> Result<i64> {
    let root = isqrt(s.d as u64) as i128;
    let (p, q) = (s.p as i128, s.q as i128);
    let floored = if q > 0 {
        (p + root).div_euclid(q)
    } else {
        // floor(-P - sqrt(D)) = -P - root - 1 since sqrt(D) is irrational
        (-p - root - 1).div_euclid(-q)
    };
    i64::try_from(floored).map_err(|_| overflow("surd floor"))
}

/// Integer part and purely periodic tail of the continued fraction of
/// `x+(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CfPeriod {
    pub a0: i64,
    pub period: Vec<u64>,
}

impl CfPeriod {
    /// Period length `T`.
    pub fn len(&self) -> usize {
        self.period.len()
    }

    pub fn is_empty(&self) -> bool {
        self.period.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.period.iter().sum()
    }
}

impl fmt::Display for CfPeriod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; ", self.a0)?;
        let body: Vec<String> = self.period.iter().map(|a| a.to_string()).collect();
        write!(f, "({})]", body.join(","))
    }
}

pub fn cf_period(pt: ProblemPoint) -> Result<CfPeriod> {
    cf_period_with_cap(pt, DEFAULT_PERIOD_CAP)
}

/// Expands `x+(p, q)` until a recurrence state `(P, Q)` repeats.
///
/// The first state after removing the integer part must be the one that
/// repeats; any other repetition is reported as [`Error::PrePeriod`].
pub fn cf_period_with_cap(pt: ProblemPoint, cap: usize) -> Result<CfPeriod> {
    let start = SurdState::of_point(pt)?;
    let (a0, mut state) = start.step()?;
    let mut seen: HashMap<(i64, i64), usize> = HashMap::new();
    let mut period = Vec::new();
    loop {
        if let Some(&first) = seen.get(&(state.p, state.q)) {
            if first != 0 {
                return Err(Error::PrePeriod { len: first });
            }
            return Ok(CfPeriod { a0, period });
        }
        if period.len() >= cap {
            return Err(Error::PeriodOverflow { cap });
        }
        seen.insert((state.p, state.q), period.len());
        let (a, next) = state.step()?;
        period.push(a as u64);
        state = next;
    }
}

/// A binary fixed-point number `numer / 2^bits` in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FixedFraction {
    pub numer: BigUint,
    pub bits: u32,
}

impl FixedFraction {
    pub fn to_f64(&self) -> f64 {
        // Keep the top 64 bits so the conversion is correctly rounded.
        let shift = self.bits.saturating_sub(64);
        let top = (&self.numer >> shift).to_f64().unwrap_or(0.0);
        top / 2f64.powi((self.bits - shift) as i32)
    }

    /// The numerator as a `u64`, when `bits <= 64`.
    pub fn to_u64(&self) -> Option<u64> {
        if self.bits > 64 {
            return None;
        }
        self.numer.to_u64()
    }
}

impl fmt::Display for FixedFraction {
    /// Exact decimal expansion truncated to `ceil(bits * log10 2)` digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.bits as f64 * std::f64::consts::LOG10_2).ceil() as usize;
        let one = BigUint::from(1u8) << self.bits;
        let mut rest = self.numer.clone();
        let mut out = String::from("0.");
        for _ in 0..digits.max(1) {
            rest *= 10u8;
            let (d, r) = rest.div_rem(&one);
            out.push(char::from(b'0' + d.to_u8().unwrap_or(0)));
            rest = r;
        }
        f.write_str(&out)
    }
}

/// `{x+(p, q)}` truncated to `precision` binary digits, so the absolute
/// error is below `2^-precision`.
///
/// Works for rational roots too. `floor(2^k x+)` equals
/// `floor((isqrt(D 4^k) - p 2^k) / 2)` exactly.
pub fn fractional_value(pt: ProblemPoint, precision: u32) -> Result<FixedFraction> {
    if classify(pt) == Classification::NonReal {
        return Err(Error::InputOutOfRange(format!("x+{pt} is not real")));
    }
    if precision == 0 {
        return Err(Error::InputOutOfRange("precision must be positive".into()));
    }
    let delta = BigUint::from(discriminant(pt)? as u64);
    let scaled_root = BigInt::from((delta << (2 * precision)).sqrt());
    let shifted_p = BigInt::from(pt.p) << precision;
    let whole = (scaled_root - shifted_p).div_floor(&BigInt::from(2));
    let modulus = BigInt::from(1u8) << precision;
    let frac = whole.mod_floor(&modulus);
    debug_assert!(!frac.is_negative());
    let numer = frac.to_biguint().unwrap_or_else(BigUint::zero);
    Ok(FixedFraction {
        numer,
        bits: precision,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(p: i64, q: i64) -> ProblemPoint {
        ProblemPoint::new(p, q)
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(pt(0, 2)), Ok(8));
        assert_eq!(discriminant(pt(1, 1)), Ok(5));
        assert_eq!(discriminant(pt(2, 3)), Ok(16));
        assert!(matches!(
            discriminant(pt(i64::MAX, 0)),
            Err(Error::InputOutOfRange(_))
        ));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(pt(0, -1)), Classification::NonReal);
        assert_eq!(classify(pt(2, 3)), Classification::Rational);
        assert_eq!(classify(pt(0, 2)), Classification::QuadraticIrrational);
        assert_eq!(classify(pt(0, 0)), Classification::NonReal);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(pt(2, 2)), Ok(pt(0, 3)));
        assert_eq!(normalize(pt(-1, 1)), Ok(pt(1, 1)));
        assert_eq!(normalize(pt(0, 2)), Ok(pt(0, 2)));
        assert_eq!(
            normalize(pt(2, 3)),
            Err(Error::NotAnIrrational { p: 2, q: 3 })
        );
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(8), 2);
        assert_eq!(isqrt(1_000_000), 1000);
        assert_eq!(isqrt(u64::MAX), 4_294_967_295);
    }

    #[test]
    fn floor_surd_examples() {
        let s = |p, q, d| SurdState::new(p, q, d).unwrap();
        assert_eq!(floor_surd(&s(0, 1, 2)), Ok(1));
        assert_eq!(floor_surd(&s(1, 2, 5)), Ok(1));
        assert_eq!(floor_surd(&s(-3, 2, 13)), Ok(0));
        // negative denominators: (1 + sqrt 5) / -2 ~ -1.618
        assert_eq!(floor_surd(&s(1, -2, 5)), Ok(-2));
        // (-5 + sqrt 13) / -3 ~ 0.465
        assert_eq!(floor_surd(&s(-5, -3, 13)), Ok(0));
    }

    #[test]
    fn surd_state_rejects_bad_input() {
        assert!(SurdState::new(0, 0, 2).is_err());
        assert!(SurdState::new(0, 1, 4).is_err());
        assert!(SurdState::new(1, 3, 5).is_err());
    }

    #[test]
    fn cf_period_examples() {
        let cf = cf_period(pt(0, 2)).unwrap();
        assert_eq!((cf.a0, cf.period.clone(), cf.len()), (1, vec![2], 1));
        let cf = cf_period(pt(0, 3)).unwrap();
        assert_eq!((cf.a0, cf.period.clone()), (1, vec![1, 2]));
        let cf = cf_period(pt(1, 1)).unwrap();
        assert_eq!((cf.a0, cf.period.clone()), (0, vec![1]));
        let cf = cf_period(pt(0, 19)).unwrap();
        assert_eq!((cf.a0, cf.period.clone()), (4, vec![2, 1, 3, 1, 2, 8]));
        assert_eq!(cf.to_string(), "[4; (2,1,3,1,2,8)]");
    }

    #[test]
    fn cf_period_errors() {
        assert_eq!(
            cf_period(pt(2, 3)),
            Err(Error::NotAnIrrational { p: 2, q: 3 })
        );
        assert_eq!(
            cf_period_with_cap(pt(0, 19), 3),
            Err(Error::PeriodOverflow { cap: 3 })
        );
    }

    #[test]
    fn negative_root_has_same_tail() {
        // x+(5, -3) = (sqrt 13 - 5) / 2 ~ -0.697
        let cf = cf_period(pt(5, -3)).unwrap();
        assert_eq!(cf.a0, -1);
        assert_eq!(cf.period, cf_period(normalize(pt(5, -3)).unwrap()).unwrap().period);
    }

    #[test]
    fn fractional_value_examples() {
        let v = fractional_value(pt(0, 2), 30).unwrap();
        assert!((v.to_f64() - (2f64.sqrt() - 1.0)).abs() < 2f64.powi(-30));
        assert!(v.to_string().starts_with("0.41421356"));
        let v = fractional_value(pt(1, 1), 30).unwrap();
        assert!(v.to_string().starts_with("0.61803398"));
        let v = fractional_value(pt(2, 2), 30).unwrap();
        assert!(v.to_string().starts_with("0.73205080"));
        // rational root x+(2, 3) = 1
        assert_eq!(fractional_value(pt(2, 3), 10).unwrap().numer, BigUint::zero());
        // x+(1, 0) = 0 and x+(-1, 0) = 1
        assert_eq!(fractional_value(pt(-1, 0), 8).unwrap().numer, BigUint::zero());
        assert!(fractional_value(pt(0, -1), 10).is_err());
    }

    #[test]
    fn fractional_value_high_precision() {
        // sqrt 2 - 1 to 200 bits against a digit string
        let v = fractional_value(pt(0, 2), 200).unwrap();
        assert!(v
            .to_string()
            .starts_with("0.4142135623730950488016887242096980785696718753769480731766"));
    }

    #[test]
    fn reduced_states() {
        let s = SurdState::of_point(pt(0, 19)).unwrap();
        let (_, mut s) = s.step().unwrap();
        for _ in 0..6 {
            assert!(s.is_reduced(), "{s:?}");
            s = s.step().unwrap().1;
        }
        // sqrt 2 itself has conjugate -1.41, so it is not reduced
        assert!(!SurdState::new(0, 1, 2).unwrap().is_reduced());
    }
}
