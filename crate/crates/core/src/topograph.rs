//! The river of the indefinite form `Q(u, v) = v^2 + p v u - q u^2`.
//!
//! A river edge separates a face with positive value `a` from a face with
//! negative value `b`. With `h` the common difference of the arithmetic
//! progression across the edge, `h^2 - 4ab` equals the discriminant
//! everywhere along the river. Walking downstream, the face met next has
//! value `c = a + b + h` and replaces whichever side has the same sign.
//!
//! Run lengths of consecutive same-side steps over one cycle reproduce the
//! continued fraction period of `x+(p, q)`, which gives an oracle for
//! [`crate::surd::cf_period`] that shares none of its arithmetic.

use std::collections::HashSet;
use std::fmt;

use crate::error::{overflow, Error, Result};
use crate::surd::{classify, isqrt, CfPeriod, Classification, Discriminant, ProblemPoint};

pub const DEFAULT_CYCLE_CAP: usize = 10_000_000;

/// A lattice vector `(u, v)`; it stands for the fraction `v / u`.
pub type Lattice = (i64, i64);

/// `v^2 + p v u - q u^2`.
pub fn form_value(pt: ProblemPoint, u: i64, v: i64) -> Result<i64> {
    let (p, q, u, v) = (pt.p as i128, pt.q as i128, u as i128, v as i128);
    i64::try_from(v * v + p * v * u - q * u * u).map_err(|_| overflow("form value"))
}

/// The polar form `Q(x + y) - Q(x) - Q(y)`.
fn polar(pt: ProblemPoint, x: Lattice, y: Lattice) -> Result<i64> {
    let (p, q) = (pt.p as i128, pt.q as i128);
    let (u1, v1, u2, v2) = (x.0 as i128, x.1 as i128, y.0 as i128, y.1 as i128);
    let value = 2 * v1 * v2 + p * (v1 * u2 + v2 * u1) - 2 * q * u1 * u2;
    i64::try_from(value).map_err(|_| overflow("polar form"))
}

/// Which face the downstream step replaced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Above,
    Below,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RiverState {
    pub a: i64,
    pub b: i64,
    pub h: i64,
}

impl RiverState {
    pub fn new(a: i64, b: i64, h: i64) -> Result<Self> {
        if a <= 0 || b >= 0 {
            return Err(Error::InputOutOfRange(format!(
                "river state needs a > 0 > b, got a={a}, b={b}"
            )));
        }
        Ok(Self { a, b, h })
    }

    /// `h^2 - 4ab`.
    pub fn discriminant(&self) -> i128 {
        let (a, b, h) = (self.a as i128, self.b as i128, self.h as i128);
        h * h - 4 * a * b
    }
}

impl fmt::Display for RiverState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.h)
    }
}

/// The edge between the faces `(0, 1)` and `(1, 0)`: `(1, -q, p)`.
pub fn initial_river_state(pt: ProblemPoint) -> Result<RiverState> {
    if classify(pt) != Classification::QuadraticIrrational {
        return Err(Error::NotAnIrrational { p: pt.p, q: pt.q });
    }
    if pt.p != 0 && pt.p != 1 {
        return Err(Error::NotNormalized { p: pt.p, q: pt.q });
    }
    RiverState::new(1, -pt.q, pt.p)
}

/// One downstream step by the arithmetic-progression rule.
pub fn river_step(s: RiverState) -> Result<(RiverState, Side)> {
    let c = s
        .a
        .checked_add(s.b)
        .and_then(|ab| ab.checked_add(s.h))
        .ok_or_else(|| overflow("river step"))?;
    let shift = |x: i64| {
        x.checked_mul(2)
            .and_then(|x2| s.h.checked_add(x2))
            .ok_or_else(|| overflow("river step"))
    };
    match c.signum() {
        1 => Ok((
            RiverState {
                a: c,
                b: s.b,
                h: shift(s.b)?,
            },
            Side::Above,
        )),
        -1 => Ok((
            RiverState {
                a: s.a,
                b: c,
                h: shift(s.a)?,
            },
            Side::Below,
        )),
        _ => Err(Error::DegenerateForm {
            a: s.a,
            b: s.b,
            h: s.h,
        }),
    }
}

/// One full period of the river.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiverCycle {
    /// `states[i]` is the state before step `i`; `states[0]` is the start.
    pub states: Vec<RiverState>,
    /// Side of the face replaced by step `i`.
    pub sides: Vec<Side>,
    /// Cyclic run lengths of `sides`, starting at a run boundary.
    pub runs: Vec<u64>,
}

impl RiverCycle {
    /// Number of steps in the cycle.
    pub fn n1(&self) -> usize {
        self.states.len()
    }
}

pub fn river_cycle(pt: ProblemPoint) -> Result<RiverCycle> {
    river_cycle_with_cap(pt, DEFAULT_CYCLE_CAP)
}

pub fn river_cycle_with_cap(pt: ProblemPoint, cap: usize) -> Result<RiverCycle> {
    let start = initial_river_state(pt)?;
    let mut states = vec![start];
    let mut sides = Vec::new();
    let mut state = start;
    loop {
        let (next, side) = river_step(state)?;
        sides.push(side);
        if next == start {
            break;
        }
        if states.len() >= cap {
            return Err(Error::CycleOverflow { cap });
        }
        states.push(next);
        state = next;
    }
    let runs = cyclic_runs(&sides);
    Ok(RiverCycle {
        states,
        sides,
        runs,
    })
}

/// Run lengths of a cyclic sequence, merged across the wrap-around and
/// starting at the first index where the value changes.
fn cyclic_runs<T: PartialEq>(seq: &[T]) -> Vec<u64> {
    let n = seq.len();
    let Some(start) = (0..n).find(|&i| seq[i] != seq[(i + n - 1) % n]) else {
        return if n == 0 { vec![] } else { vec![n as u64] };
    };
    let mut runs = Vec::new();
    let mut len = 0u64;
    for k in 0..n {
        let i = (start + k) % n;
        if k > 0 && seq[i] != seq[(i + n - 1) % n] {
            runs.push(len);
            len = 0;
        }
        len += 1;
    }
    runs.push(len);
    runs
}

/// Result of comparing a river cycle against a continued fraction period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeriodMatch {
    Match,
    Mismatch { runs: Vec<u64>, expected: Vec<u64> },
}

impl PeriodMatch {
    pub fn is_match(&self) -> bool {
        matches!(self, PeriodMatch::Match)
    }
}

/// The river runs must equal the period (twice over when `T` is odd), up to
/// rotation.
pub fn cycle_to_period(rc: &RiverCycle, cf: &CfPeriod) -> PeriodMatch {
    let mut expected = cf.period.clone();
    if expected.len() % 2 == 1 {
        expected.extend_from_slice(&cf.period);
    }
    if is_rotation(&rc.runs, &expected) {
        PeriodMatch::Match
    } else {
        PeriodMatch::Mismatch {
            runs: rc.runs.clone(),
            expected,
        }
    }
}

fn is_rotation(x: &[u64], y: &[u64]) -> bool {
    x.len() == y.len()
        && (x.is_empty() || (0..y.len()).any(|r| x.iter().eq(y[r..].iter().chain(&y[..r]))))
}

fn tau_trial(m: u64) -> u64 {
    let r = isqrt(m);
    let pairs = (1..=r).filter(|d| m % d == 0).count() as u64;
    if r * r == m {
        2 * pairs - 1
    } else {
        2 * pairs
    }
}

/// Number of integer triplets with `a > 0 > b` and `h^2 - 4ab = delta`,
/// counted by trial division.
pub fn count_river_triplets(delta: Discriminant) -> u64 {
    let delta = delta.get() as u64;
    let r = isqrt(delta) as i64;
    (-r..=r)
        .filter_map(|h| {
            let rest = delta - (h * h) as u64;
            (rest % 4 == 0).then_some(rest / 4)
        })
        .map(tau_trial)
        .sum()
}

/// Every triplet counted by [`count_river_triplets`].
pub fn river_triplets(delta: Discriminant) -> HashSet<RiverState> {
    let delta = delta.get();
    let r = isqrt(delta as u64) as i64;
    let mut out = HashSet::new();
    for h in -r..=r {
        let rest = delta - h * h;
        if rest % 4 != 0 {
            continue;
        }
        let m = rest / 4;
        for a in (1..=m).filter(|a| m % a == 0) {
            out.insert(RiverState { a, b: -m / a, h });
        }
    }
    out
}

/// Points visited by the mediant walk towards `x+(p, q)`, starting from
/// `(1, 1)` inside the interval `(0/1, 1/0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyline {
    /// `(u_n, v_n)`.
    pub points: Vec<Lattice>,
    /// Side of the line `v = x u` each point lies on.
    pub sides: Vec<Side>,
    /// The vector added to `points[n]` to reach `points[n + 1]`.
    pub vectors: Vec<Lattice>,
    /// Segment number of each step; it advances when the added vector changes.
    pub segments: Vec<usize>,
}

impl Polyline {
    /// River state on the edge between the faces `points[n]` and `vectors[n]`.
    pub fn river_states(&self, pt: ProblemPoint) -> Result<Vec<RiverState>> {
        self.points
            .iter()
            .zip(&self.vectors)
            .map(|(&x, &e)| {
                let (fx, fe) = (form_value(pt, x.0, x.1)?, form_value(pt, e.0, e.1)?);
                let (a, b) = if fx > 0 { (fx, fe) } else { (fe, fx) };
                RiverState::new(a, b, polar(pt, x, e)?)
            })
            .collect()
    }

    /// Lengths of the maximal same-side runs, in order.
    pub fn side_runs(&self) -> Vec<u64> {
        let mut runs: Vec<u64> = Vec::new();
        for (i, s) in self.sides.iter().enumerate() {
            if i > 0 && self.sides[i - 1] == *s {
                *runs.last_mut().unwrap() += 1;
            } else {
                runs.push(1);
            }
        }
        runs
    }
}

/// Exact side of `(u, v)`, `u > 0`, relative to `v = x+ u`.
fn side_of(pt: ProblemPoint, delta: i64, (u, v): Lattice) -> Result<Side> {
    let t = 2 * v as i128 + pt.p as i128 * u as i128;
    if t <= 0 {
        return Ok(Side::Below);
    }
    let lhs = t.checked_mul(t);
    let rhs = (delta as i128)
        .checked_mul(u as i128)
        .and_then(|x| x.checked_mul(u as i128));
    match lhs.zip(rhs) {
        Some((l, r)) if l > r => Ok(Side::Above),
        Some(_) => Ok(Side::Below),
        None => Err(overflow("polyline side test")),
    }
}

/// The first `steps` points of the gradual walk.
pub fn polyline(pt: ProblemPoint, steps: usize) -> Result<Polyline> {
    let delta = Discriminant::of(pt)?.get();
    // x+ > 0  <=>  sqrt(delta) > p  <=>  q > 0 or p < 0
    if pt.q <= 0 && pt.p >= 0 {
        return Err(Error::NonPositiveRoot { p: pt.p, q: pt.q });
    }
    let mut lower: Lattice = (1, 0);
    let mut upper: Lattice = (0, 1);
    let mut line = Polyline {
        points: Vec::with_capacity(steps),
        sides: Vec::with_capacity(steps),
        vectors: Vec::with_capacity(steps),
        segments: Vec::with_capacity(steps),
    };
    let mut segment = 0;
    let mut point: Lattice = (1, 1);
    for n in 0..steps {
        let side = side_of(pt, delta, point)?;
        let vector = match side {
            Side::Below => {
                lower = point;
                upper
            }
            Side::Above => {
                upper = point;
                lower
            }
        };
        if n > 0 && line.vectors[n - 1] != vector {
            segment += 1;
        }
        line.points.push(point);
        line.sides.push(side);
        line.vectors.push(vector);
        line.segments.push(segment);
        point = point
            .0
            .checked_add(vector.0)
            .zip(point.1.checked_add(vector.1))
            .ok_or_else(|| overflow("polyline"))?;
    }
    Ok(line)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surd::cf_period;

    fn pt(p: i64, q: i64) -> ProblemPoint {
        ProblemPoint::new(p, q)
    }

    fn st(a: i64, b: i64, h: i64) -> RiverState {
        RiverState::new(a, b, h).unwrap()
    }

    #[test]
    fn form_value_examples() {
        assert_eq!(form_value(pt(0, 2), 1, 1), Ok(-1));
        assert_eq!(form_value(pt(0, 2), 5, 7), Ok(-1));
        assert_eq!(form_value(pt(0, 2), 0, 1), Ok(1));
    }

    #[test]
    fn initial_state_examples() {
        assert_eq!(initial_river_state(pt(0, 2)), Ok(st(1, -2, 0)));
        assert_eq!(initial_river_state(pt(1, 1)), Ok(st(1, -1, 1)));
        assert_eq!(initial_river_state(pt(0, 3)), Ok(st(1, -3, 0)));
        assert_eq!(
            initial_river_state(pt(2, 2)),
            Err(Error::NotNormalized { p: 2, q: 2 })
        );
        assert_eq!(
            initial_river_state(pt(0, 4)),
            Err(Error::NotAnIrrational { p: 0, q: 4 })
        );
    }

    #[test]
    fn river_step_examples() {
        assert_eq!(river_step(st(1, -1, 2)), Ok((st(2, -1, 0), Side::Above)));
        assert_eq!(river_step(st(2, -1, 0)), Ok((st(1, -1, -2), Side::Above)));
        assert_eq!(river_step(st(1, -1, -2)), Ok((st(1, -2, 0), Side::Below)));
        assert_eq!(river_step(st(1, -2, 0)), Ok((st(1, -1, 2), Side::Below)));
    }

    #[test]
    fn river_step_degenerate() {
        // c = 0 here; the discriminant is the square 4
        assert_eq!(
            river_step(st(1, -1, 0)),
            Err(Error::DegenerateForm { a: 1, b: -1, h: 0 })
        );
    }

    #[test]
    fn river_cycle_examples() {
        let rc = river_cycle(pt(0, 2)).unwrap();
        assert_eq!((rc.n1(), rc.runs.clone()), (4, vec![2, 2]));
        let rc = river_cycle(pt(0, 3)).unwrap();
        assert_eq!((rc.n1(), rc.runs.clone()), (3, vec![1, 2]));
        assert_eq!(
            rc.states,
            vec![st(1, -3, 0), st(1, -2, 2), st(1, -2, -2)]
        );
        let rc = river_cycle(pt(1, 1)).unwrap();
        assert_eq!((rc.n1(), rc.runs.clone()), (2, vec![1, 1]));
        assert_eq!(
            river_cycle_with_cap(pt(0, 19), 2),
            Err(Error::CycleOverflow { cap: 2 })
        );
    }

    #[test]
    fn cyclic_runs_merge_wraparound() {
        assert_eq!(cyclic_runs(&[1, 0, 1]), vec![1, 2]);
        assert_eq!(cyclic_runs(&[1, 1, 0, 0]), vec![2, 2]);
        assert_eq!(cyclic_runs(&[0, 1, 1, 0, 0, 0]), vec![2, 4]);
        assert_eq!(cyclic_runs(&[3, 3]), vec![2]);
    }

    #[test]
    fn cycle_to_period_examples() {
        let rc = |runs: Vec<u64>| RiverCycle {
            states: vec![],
            sides: vec![],
            runs,
        };
        let cf = |period: Vec<u64>| CfPeriod { a0: 1, period };
        assert!(cycle_to_period(&rc(vec![2, 2]), &cf(vec![2])).is_match());
        assert!(cycle_to_period(&rc(vec![1, 2]), &cf(vec![1, 2])).is_match());
        assert!(cycle_to_period(&rc(vec![2, 1]), &cf(vec![1, 2])).is_match());
        assert_eq!(
            cycle_to_period(&rc(vec![1, 2]), &cf(vec![2])),
            PeriodMatch::Mismatch {
                runs: vec![1, 2],
                expected: vec![2, 2]
            }
        );
    }

    #[test]
    fn river_matches_cf_for_19() {
        let p = pt(0, 19);
        let rc = river_cycle(p).unwrap();
        assert!(cycle_to_period(&rc, &cf_period(p).unwrap()).is_match());
    }

    #[test]
    fn triplet_examples() {
        let d = |x| Discriminant::new(x).unwrap();
        assert_eq!(count_river_triplets(d(8)), 4);
        assert_eq!(count_river_triplets(d(5)), 2);
        assert_eq!(count_river_triplets(d(12)), 6);
        assert_eq!(river_triplets(d(8)).len(), 4);
    }

    #[test]
    fn polyline_sqrt2() {
        let line = polyline(pt(0, 2), 5).unwrap();
        assert_eq!(line.points, vec![(1, 1), (1, 2), (2, 3), (3, 4), (5, 7)]);
        assert_eq!(line.segments, vec![0, 1, 1, 2, 2]);
    }

    #[test]
    fn polyline_sqrt3_and_golden() {
        let line = polyline(pt(0, 3), 4).unwrap();
        assert_eq!(&line.points[..3], &[(1, 1), (1, 2), (2, 3)]);
        let line = polyline(pt(0, 3), 30).unwrap();
        // sqrt 3 = [1; 1, 2, 1, 2, ...]; the last run may be cut short
        let runs = line.side_runs();
        assert_eq!(&runs[..7], &[1, 1, 2, 1, 2, 1, 2]);
        assert_eq!(polyline(pt(1, 1), 1).unwrap().points, vec![(1, 1)]);
        assert_eq!(
            polyline(pt(2, 3), 3),
            Err(Error::NotAnIrrational { p: 2, q: 3 })
        );
        assert_eq!(
            polyline(pt(3, -1), 3),
            Err(Error::NonPositiveRoot { p: 3, q: -1 })
        );
        // golden-ratio walk grows like phi^n and leaves 64 bits
        assert!(matches!(
            polyline(pt(1, 1), 200),
            Err(Error::InputOutOfRange(_))
        ));
    }

    #[test]
    fn polyline_river_states_reproduce_table() {
        let p = pt(0, 2);
        let states = polyline(p, 5).unwrap().river_states(p).unwrap();
        let a: Vec<i64> = states.iter().map(|s| s.a).collect();
        let b: Vec<i64> = states.iter().map(|s| s.b).collect();
        let h: Vec<i64> = states.iter().map(|s| s.h).collect();
        assert_eq!(a, vec![1, 2, 1, 1, 1]);
        assert_eq!(b, vec![-1, -1, -1, -2, -1]);
        assert_eq!(h, vec![2, 0, -2, 0, 2]);
    }
}
