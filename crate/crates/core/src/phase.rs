//! Exact arithmetic in the tropical phase hyperfield and the sign hyperfield.
//!
//! Points of the unit circle are stored as rational angles measured in turns,
//! so antipodes, arc lengths and the half-turn threshold are all exact.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rational;

fn half() -> Rational {
    Rational::new(1, 2)
}

/// Reduces a rational number of turns into `[0, 1)`.
pub(crate) fn wrap(turns: Rational) -> Rational {
    turns - turns.floor()
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
            let q: i64 = q.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
            if q == 0 {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Rational::new(p, q)
        }
        None => Rational::from_integer(s.parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?),
    };
    Ok(parsed)
}

/// A point of the unit circle, as a reduced rational number of turns in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(Rational);

impl Angle {
    pub fn new(turns: Rational) -> Self {
        Angle(wrap(turns))
    }

    /// The angle `p/q` turns.
    pub fn frac(p: i64, q: i64) -> Self {
        Angle::new(Rational::new(p, q))
    }

    pub fn zero() -> Self {
        Angle(Rational::zero())
    }

    pub fn turns(self) -> Rational {
        self.0
    }

    pub fn antipode(self) -> Self {
        Angle::new(self.0 + half())
    }

    /// Multiplicative inverse on the circle (complex conjugate).
    pub fn inverse(self) -> Self {
        Angle::new(-self.0)
    }

    pub fn rotate(self, by: Angle) -> Self {
        Angle::new(self.0 + by.0)
    }

    /// Counter-clockwise distance from `self` to `to`, in `[0, 1)`.
    pub fn ccw_to(self, to: Angle) -> Rational {
        wrap(to.0 - self.0)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Angle {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s).map(Angle::new)
    }
}

/// An element of the tropical phase hyperfield: the origin or a unit complex number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    Zero,
    Unit(Angle),
}

impl Phase {
    pub fn unit(p: i64, q: i64) -> Self {
        Phase::Unit(Angle::frac(p, q))
    }

    pub fn is_zero(self) -> bool {
        matches!(self, Phase::Zero)
    }

    pub fn angle(self) -> Option<Angle> {
        match self {
            Phase::Zero => None,
            Phase::Unit(a) => Some(a),
        }
    }

    /// Additive inverse `-x`.
    pub fn neg(self) -> Self {
        match self {
            Phase::Zero => Phase::Zero,
            Phase::Unit(a) => Phase::Unit(a.antipode()),
        }
    }
}

/// Hyperfield multiplication (complex multiplication restricted to the circle and origin).
pub fn mul(a: Phase, b: Phase) -> Phase {
    match (a, b) {
        (Phase::Unit(x), Phase::Unit(y)) => Phase::Unit(x.rotate(y)),
        _ => Phase::Zero,
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        mul(self, rhs)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phase::Zero => f.write_str("z"),
            Phase::Unit(a) => a.fmt(f),
        }
    }
}

impl FromStr for Phase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "z" | "Z" => Ok(Phase::Zero),
            other => other.parse().map(Phase::Unit),
        }
    }
}

/// A closed arc of the circle running counter-clockwise from `start` for `length` turns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    start: Angle,
    length: Rational,
}

impl Arc {
    pub fn new(start: Angle, length: Rational) -> Result<Self> {
        if length < Rational::zero() || length > Rational::one() {
            return Err(Error::InvalidParameter(format!("arc length {length} outside [0,1]")));
        }
        if length == Rational::one() {
            return Ok(Arc::full());
        }
        Ok(Arc { start, length })
    }

    pub fn point(at: Angle) -> Self {
        Arc { start: at, length: Rational::zero() }
    }

    pub fn full() -> Self {
        Arc { start: Angle::zero(), length: Rational::one() }
    }

    pub fn start(&self) -> Angle {
        self.start
    }

    pub fn length(&self) -> Rational {
        self.length
    }

    pub fn end(&self) -> Angle {
        Angle::new(self.start.turns() + self.length)
    }

    pub fn is_full(&self) -> bool {
        self.length == Rational::one()
    }

    pub fn contains(&self, a: Angle) -> bool {
        self.is_full() || self.start.ccw_to(a) <= self.length
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}+{}]", self.start, self.length)
    }
}

/// A value of an iterated hyperfield sum: optionally the origin, plus a union of arcs.
///
/// Arcs are kept disjoint, non-touching and sorted by start; the whole circle
/// is always the single canonical full arc, so equal sets compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhaseSet {
    contains_zero: bool,
    arcs: Vec<Arc>,
}

impl PhaseSet {
    pub fn new(contains_zero: bool, arcs: Vec<Arc>) -> Self {
        PhaseSet { contains_zero, arcs: normalize_arcs(arcs) }
    }

    /// The singleton `{0}`.
    pub fn origin() -> Self {
        PhaseSet { contains_zero: true, arcs: Vec::new() }
    }

    pub fn point(a: Angle) -> Self {
        PhaseSet { contains_zero: false, arcs: vec![Arc::point(a)] }
    }

    pub fn singleton(p: Phase) -> Self {
        match p {
            Phase::Zero => PhaseSet::origin(),
            Phase::Unit(a) => PhaseSet::point(a),
        }
    }

    /// `S^1 ∪ {0}`.
    pub fn everything() -> Self {
        PhaseSet { contains_zero: true, arcs: vec![Arc::full()] }
    }

    pub fn contains_zero(&self) -> bool {
        self.contains_zero
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn is_full_circle(&self) -> bool {
        self.arcs.len() == 1 && self.arcs[0].is_full()
    }

    pub fn contains(&self, p: Phase) -> bool {
        match p {
            Phase::Zero => self.contains_zero,
            Phase::Unit(a) => self.arcs.iter().any(|arc| arc.contains(a)),
        }
    }

    /// Re-normalizes; a no-op on any value built through this API.
    pub fn normalized(&self) -> Self {
        PhaseSet::new(self.contains_zero, self.arcs.clone())
    }

    /// Rotates every element by `by`.
    pub fn rotate(&self, by: Angle) -> Self {
        let arcs = self
            .arcs
            .iter()
            .map(|a| if a.is_full() { *a } else { Arc::point(a.start.rotate(by)).with_length(a.length) })
            .collect();
        PhaseSet::new(self.contains_zero, arcs)
    }

    /// `A ⊞ p = ⋃_{a ∈ A} a ⊞ p`.
    pub fn add_phase(&self, p: Phase) -> Self {
        let u = match p {
            Phase::Zero => return self.clone(),
            Phase::Unit(u) => u,
        };
        let anti = u.antipode();
        let mut out = Vec::with_capacity(self.arcs.len() + 1);
        if self.contains_zero {
            out.push(Arc::point(u));
        }
        for arc in &self.arcs {
            if arc.contains(anti) {
                return PhaseSet::everything();
            }
            // Centered coordinate around u; the arc avoids -u so it does not wrap.
            let lo = wrap(u.ccw_to(arc.start) + half()) - half();
            let hi = lo + arc.length;
            let from = if lo < Rational::zero() { lo } else { Rational::zero() };
            let to = if hi > Rational::zero() { hi } else { Rational::zero() };
            out.push(Arc::point(Angle::new(u.turns() + from)).with_length(to - from));
        }
        PhaseSet::new(false, out)
    }
}

impl Arc {
    fn with_length(mut self, length: Rational) -> Self {
        if length >= Rational::one() {
            return Arc::full();
        }
        self.length = length;
        self
    }
}

impl fmt::Display for PhaseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.contains_zero {
            parts.push("0".into());
        }
        parts.extend(self.arcs.iter().map(|a| a.to_string()));
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn normalize_arcs(mut arcs: Vec<Arc>) -> Vec<Arc> {
    if arcs.iter().any(Arc::is_full) {
        return vec![Arc::full()];
    }
    if arcs.is_empty() {
        return arcs;
    }
    arcs.sort();
    // Linear merge on [0, 2), then fold the wrap-around overlap.
    let mut merged: Vec<(Rational, Rational)> = Vec::with_capacity(arcs.len());
    for a in &arcs {
        let (s, e) = (a.start.turns(), a.start.turns() + a.length);
        match merged.last_mut() {
            Some(last) if s <= last.1 => {
                if e > last.1 {
                    last.1 = e;
                }
            }
            _ => merged.push((s, e)),
        }
    }
    while merged.len() > 1 {
        let first = merged[0];
        let last = merged.last_mut().expect("non-empty");
        if last.1 >= first.0 + Rational::one() {
            let wrapped_end = first.1 + Rational::one();
            if wrapped_end > last.1 {
                last.1 = wrapped_end;
            }
            merged.remove(0);
        } else {
            break;
        }
    }
    if merged.iter().any(|(s, e)| *e - *s >= Rational::one()) {
        return vec![Arc::full()];
    }
    let mut out: Vec<Arc> = merged
        .into_iter()
        .map(|(s, e)| Arc { start: Angle::new(s), length: e - s })
        .collect();
    out.sort();
    out
}

/// The hyperfield sum of two phases.
pub fn hsum_pair(a: Phase, b: Phase) -> PhaseSet {
    match (a, b) {
        (Phase::Zero, other) | (other, Phase::Zero) => PhaseSet::singleton(other),
        (Phase::Unit(x), Phase::Unit(y)) => {
            if y == x.antipode() {
                return PhaseSet::everything();
            }
            let d = x.ccw_to(y);
            let arc = if d <= half() { Arc { start: x, length: d } } else { Arc { start: y, length: Rational::one() - d } };
            PhaseSet { contains_zero: false, arcs: vec![arc] }
        }
    }
}

/// All values of `x_1 ⊞ ⋯ ⊞ x_m`, folded from the left.
pub fn hsum_fold(xs: &[Phase]) -> Result<PhaseSet> {
    let (first, rest) = xs.split_first().ok_or(Error::EmptyInput("hsum_fold needs at least one phase"))?;
    Ok(rest.iter().fold(PhaseSet::singleton(*first), |acc, p| acc.add_phase(*p)))
}

/// Shortest closed arc containing every angle: the complement of the largest cyclic gap.
///
/// When the largest gap occurs more than once, the arc with the smallest start is returned.
pub fn min_enclosing_arc(angles: &[Angle]) -> Result<Arc> {
    if angles.is_empty() {
        return Err(Error::EmptyInput("min_enclosing_arc needs at least one angle"));
    }
    let distinct: BTreeSet<Angle> = angles.iter().copied().collect();
    let sorted: Vec<Angle> = distinct.into_iter().collect();
    if sorted.len() == 1 {
        return Ok(Arc::point(sorted[0]));
    }
    let k = sorted.len();
    let mut best: Option<(Rational, Angle)> = None;
    for i in 0..k {
        let next = sorted[(i + 1) % k];
        let gap = sorted[i].ccw_to(next);
        let better = match best {
            None => true,
            Some((g, s)) => gap > g || (gap == g && next < s),
        };
        if better {
            best = Some((gap, next));
        }
    }
    let (gap, start) = best.expect("k >= 2");
    Ok(Arc { start, length: Rational::one() - gap })
}

/// An element of the sign hyperfield.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub const ALL: [Sign; 3] = [Sign::Neg, Sign::Zero, Sign::Pos];

    pub fn value(self) -> i8 {
        match self {
            Sign::Neg => -1,
            Sign::Zero => 0,
            Sign::Pos => 1,
        }
    }

    pub fn neg(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match self.value() * rhs.value() {
            1 => Sign::Pos,
            -1 => Sign::Neg,
            _ => Sign::Zero,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Neg => "-",
            Sign::Zero => "0",
            Sign::Pos => "+",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "-" | "-1" => Ok(Sign::Neg),
            "0" => Ok(Sign::Zero),
            "+" | "1" | "+1" => Ok(Sign::Pos),
            other => Err(Error::Parse(format!("bad sign `{other}`"))),
        }
    }
}

/// Sign hyperfield addition. `1 ⊞ -1` is the whole field unconditionally.
pub fn sign_hsum(a: Sign, b: Sign) -> BTreeSet<Sign> {
    match (a, b) {
        (Sign::Zero, x) | (x, Sign::Zero) => BTreeSet::from([x]),
        (x, y) if x == y => BTreeSet::from([x]),
        _ => Sign::ALL.into_iter().collect(),
    }
}

/// Left fold of [`sign_hsum`] over a non-empty list.
pub fn sign_hsum_fold(xs: &[Sign]) -> Result<BTreeSet<Sign>> {
    let (first, rest) = xs.split_first().ok_or(Error::EmptyInput("sign_hsum_fold needs at least one sign"))?;
    Ok(rest.iter().fold(BTreeSet::from([*first]), |acc, y| {
        acc.iter().flat_map(|x| sign_hsum(*x, *y)).collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(p: i64, q: i64) -> Phase {
        Phase::unit(p, q)
    }

    #[test]
    fn multiplication() {
        assert_eq!(u(1, 4) * u(1, 2), u(3, 4));
        assert_eq!(Phase::Zero * u(1, 3), Phase::Zero);
        assert_eq!(u(3, 4) * u(3, 4), u(1, 2));
    }

    #[test]
    fn angle_normalization() {
        assert_eq!(Angle::frac(5, 4), Angle::frac(1, 4));
        assert_eq!(Angle::frac(-1, 4), Angle::frac(3, 4));
        let a = Angle::frac(1, 3);
        assert_eq!(a.antipode().antipode(), a);
        assert_eq!(a.antipode(), Angle::frac(5, 6));
    }

    #[test]
    fn pair_sums_follow_the_three_axioms() {
        let s = hsum_pair(u(0, 1), Phase::Zero);
        assert_eq!(s, PhaseSet::point(Angle::zero()));
        assert!(!s.contains_zero());

        assert_eq!(hsum_pair(u(0, 1), u(1, 2)), PhaseSet::everything());

        let s = hsum_pair(u(0, 1), u(1, 4));
        assert!(!s.contains_zero());
        assert_eq!(s.arcs(), &[Arc::new(Angle::zero(), Rational::new(1, 4)).unwrap()]);

        // Shortest arc goes the other way round.
        let s = hsum_pair(u(0, 1), u(3, 4));
        assert_eq!(s.arcs(), &[Arc::new(Angle::frac(3, 4), Rational::new(1, 4)).unwrap()]);

        assert_eq!(hsum_pair(u(1, 3), u(1, 3)), PhaseSet::point(Angle::frac(1, 3)));
        assert_eq!(hsum_pair(Phase::Zero, Phase::Zero), PhaseSet::origin());
    }

    #[test]
    fn folds() {
        assert_eq!(hsum_fold(&[u(0, 1)]).unwrap(), PhaseSet::point(Angle::zero()));
        let s = hsum_fold(&[u(0, 1), u(1, 4)]).unwrap();
        assert_eq!(s, hsum_pair(u(0, 1), u(1, 4)));
        assert_eq!(hsum_fold(&[u(0, 1), u(1, 2), u(1, 4)]).unwrap(), PhaseSet::everything());
        assert_eq!(hsum_fold(&[]), Err(Error::EmptyInput("hsum_fold needs at least one phase")));
        // {0} ⊞ p = {p}: the origin does not persist.
        assert_eq!(hsum_fold(&[Phase::Zero, u(1, 3)]).unwrap(), PhaseSet::point(Angle::frac(1, 3)));
    }

    #[test]
    fn arc_plus_point_extends_toward_the_point() {
        let s = hsum_fold(&[u(0, 1), u(1, 8), u(1, 4)]).unwrap();
        assert_eq!(s.arcs(), &[Arc::new(Angle::zero(), Rational::new(1, 4)).unwrap()]);
        // Extension across angle 0.
        let s = hsum_fold(&[u(7, 8), u(15, 16), u(1, 16)]).unwrap();
        assert_eq!(s.arcs(), &[Arc::new(Angle::frac(7, 8), Rational::new(3, 16)).unwrap()]);
        assert!(!s.contains_zero());
    }

    #[test]
    fn enclosing_arcs() {
        let arc = min_enclosing_arc(&[Angle::zero(), Angle::frac(1, 8), Angle::frac(1, 4)]).unwrap();
        assert_eq!((arc.start(), arc.length()), (Angle::zero(), Rational::new(1, 4)));
        let arc = min_enclosing_arc(&[Angle::zero(), Angle::frac(1, 2)]).unwrap();
        assert_eq!(arc.length(), Rational::new(1, 2));
        assert_eq!(arc.start(), Angle::zero());
        let arc = min_enclosing_arc(&[Angle::frac(1, 3)]).unwrap();
        assert_eq!((arc.start(), arc.length()), (Angle::frac(1, 3), Rational::zero()));
        assert!(min_enclosing_arc(&[]).is_err());
        // Wrapping arc.
        let arc = min_enclosing_arc(&[Angle::frac(7, 8), Angle::frac(1, 8)]).unwrap();
        assert_eq!((arc.start(), arc.length()), (Angle::frac(7, 8), Rational::new(1, 4)));
    }

    #[test]
    fn normalization_merges_touching_and_wrapping_arcs() {
        let a = Arc::new(Angle::frac(3, 4), Rational::new(1, 2)).unwrap();
        let b = Arc::new(Angle::frac(1, 4), Rational::new(1, 8)).unwrap();
        let s = PhaseSet::new(false, vec![b, a]);
        assert_eq!(s.arcs(), &[Arc::new(Angle::frac(3, 4), Rational::new(5, 8)).unwrap()]);
        let c = Arc::new(Angle::frac(3, 8), Rational::new(3, 8)).unwrap();
        let s = PhaseSet::new(false, vec![a, b, c]);
        assert!(s.is_full_circle());
        let s = PhaseSet::new(false, vec![Arc::point(Angle::zero()), Arc::point(Angle::frac(1, 2))]);
        assert_eq!(s.arcs().len(), 2);
        assert_eq!(s.normalized(), s);
    }

    #[test]
    fn sign_sums() {
        assert_eq!(sign_hsum(Sign::Pos, Sign::Neg), BTreeSet::from(Sign::ALL));
        assert_eq!(sign_hsum(Sign::Pos, Sign::Pos), BTreeSet::from([Sign::Pos]));
        assert_eq!(sign_hsum(Sign::Neg, Sign::Zero), BTreeSet::from([Sign::Neg]));
        assert!(sign_hsum_fold(&[Sign::Pos, Sign::Pos, Sign::Neg]).unwrap().contains(&Sign::Zero));
    }

    #[test]
    fn text_round_trip() {
        let p: Phase = "3/8".parse().unwrap();
        assert_eq!(p, u(3, 8));
        assert_eq!("z".parse::<Phase>().unwrap(), Phase::Zero);
        assert_eq!(u(3, 8).to_string(), "3/8");
        assert_eq!(u(0, 1).to_string(), "0");
        assert!("1/0".parse::<Phase>().is_err());
        assert_eq!("-".parse::<Sign>().unwrap(), Sign::Neg);
    }
}
