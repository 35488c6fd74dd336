//! Two coordinate systems for points of the topological order complex of `Φ^n`.
//!
//! A [`JoinPoint`] is a convex combination of a chain of vectors (join
//! coordinates); a [`ModelPoint`] is a tuple of points of the closed unit disc.
//! [`gamma`] and [`gamma_inv`] convert between them.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::covector::{is_covector, leq_vec, PhaseVector};
use crate::error::{Error, Result};
use crate::phase::{parse_rational, Angle, Phase};
use crate::Rational;

/// A point of the closed unit disc in polar form; the center always has angle 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiscPoint {
    radius: Rational,
    angle: Angle,
}

impl DiscPoint {
    pub fn new(radius: Rational, angle: Angle) -> Result<Self> {
        if radius < Rational::zero() || radius > Rational::one() {
            return Err(Error::InvalidParameter(format!("radius {radius} outside [0,1]")));
        }
        let angle = if radius.is_zero() { Angle::zero() } else { angle };
        Ok(DiscPoint { radius, angle })
    }

    pub fn center() -> Self {
        DiscPoint { radius: Rational::zero(), angle: Angle::zero() }
    }

    /// The point of the unit circle at `angle`.
    pub fn boundary(angle: Angle) -> Self {
        DiscPoint { radius: Rational::one(), angle }
    }

    pub fn radius(&self) -> Rational {
        self.radius
    }

    pub fn angle(&self) -> Angle {
        self.angle
    }

    pub fn on_circle(&self) -> bool {
        self.radius.is_one()
    }

    /// The phase of this point: zero at the center, otherwise its angle.
    pub fn phase(&self) -> Phase {
        if self.radius.is_zero() {
            Phase::Zero
        } else {
            Phase::Unit(self.angle)
        }
    }

    pub fn rotate(&self, by: Angle) -> Self {
        if self.radius.is_zero() {
            *self
        } else {
            DiscPoint { radius: self.radius, angle: self.angle.rotate(by) }
        }
    }
}

impl fmt::Display for DiscPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.radius, self.angle)
    }
}

impl FromStr for DiscPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (r, a) = s.split_once('@').ok_or_else(|| Error::Parse(format!("expected r@a, got `{s}`")))?;
        DiscPoint::new(parse_rational(r)?, a.parse()?)
    }
}

/// A point of the polydisc `𝔹^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModelPoint(Vec<DiscPoint>);

impl ModelPoint {
    pub fn new(coords: Vec<DiscPoint>) -> Self {
        ModelPoint(coords)
    }

    pub fn coords(&self) -> &[DiscPoint] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coord(&self, j: usize) -> DiscPoint {
        self.0[j]
    }

    /// Drops the last coordinate.
    pub fn drop_last(&self) -> ModelPoint {
        ModelPoint(self.0[..self.0.len().saturating_sub(1)].to_vec())
    }

    /// Multiplies each coordinate by the matching unit of `v`.
    pub fn rescale(&self, v: &PhaseVector) -> Result<ModelPoint> {
        if v.len() != self.len() {
            return Err(Error::LengthMismatch { expected: v.len(), found: self.len() });
        }
        self.0
            .iter()
            .zip(v.entries())
            .map(|(d, p)| p.angle().map(|a| d.rotate(a)).ok_or(Error::ZeroInUnitVector))
            .collect::<Result<Vec<_>>>()
            .map(ModelPoint)
    }
}

impl fmt::Display for ModelPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(DiscPoint::to_string).collect();
        f.write_str(&parts.join(";"))
    }
}

impl FromStr for ModelPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.split(';').map(str::parse).collect::<Result<Vec<_>>>().map(ModelPoint)
    }
}

/// A weighted chain `Σ t_k x_k` in join coordinates, terms sorted by grade.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JoinPoint {
    terms: Vec<(Rational, PhaseVector)>,
}

impl JoinPoint {
    /// Validates weights (positive, summing to 1) and the strict chain condition.
    pub fn new(terms: Vec<(Rational, PhaseVector)>) -> Result<Self> {
        let n = terms.first().map(|(_, x)| x.len()).ok_or_else(|| Error::InvalidJoinPoint("no terms".into()))?;
        let mut total = Rational::zero();
        for (w, x) in &terms {
            if *w <= Rational::zero() {
                return Err(Error::InvalidJoinPoint(format!("non-positive weight {w}")));
            }
            if x.len() != n {
                return Err(Error::LengthMismatch { expected: n, found: x.len() });
            }
            total += *w;
        }
        if !total.is_one() {
            return Err(Error::InvalidJoinPoint(format!("weights sum to {total}")));
        }
        for pair in terms.windows(2) {
            let (lo, hi) = (&pair[0].1, &pair[1].1);
            if lo.grade() >= hi.grade() || !leq_vec(lo, hi)? {
                return Err(Error::InvalidJoinPoint(format!("{lo} < {hi} is not a strict chain step")));
            }
        }
        Ok(JoinPoint { terms })
    }

    pub fn terms(&self) -> &[(Rational, PhaseVector)] {
        &self.terms
    }

    pub fn dim(&self) -> usize {
        self.terms[0].1.len()
    }
}

impl fmt::Display for JoinPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(w, x)| format!("{w}*({x})")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Join coordinates to polydisc coordinates.
///
/// Coordinate `j` has radius equal to the total weight of chain terms supported
/// at `j`, and the common phase of those terms as its angle.
pub fn gamma(p: &JoinPoint) -> ModelPoint {
    let n = p.dim();
    let coords = (0..n)
        .map(|j| {
            let mut radius = Rational::zero();
            let mut angle = None;
            for (w, x) in &p.terms {
                if let Phase::Unit(a) = x.get(j) {
                    radius += *w;
                    angle.get_or_insert(a);
                }
            }
            DiscPoint::new(radius, angle.unwrap_or_else(Angle::zero)).expect("weights lie in [0,1]")
        })
        .collect();
    ModelPoint(coords)
}

/// Polydisc coordinates to join coordinates by level sets of the radii.
pub fn gamma_inv(z: &ModelPoint) -> JoinPoint {
    let n = z.len();
    let mut radii: Vec<Rational> = z.0.iter().map(|d| d.radius).filter(|r| !r.is_zero()).collect();
    radii.sort_unstable_by(|a, b| b.cmp(a));
    radii.dedup();
    let mut terms = Vec::with_capacity(radii.len() + 1);
    let top = radii.first().copied().unwrap_or_else(Rational::zero);
    if top < Rational::one() {
        terms.push((Rational::one() - top, PhaseVector::zeros(n)));
    }
    for (i, r) in radii.iter().enumerate() {
        let next = radii.get(i + 1).copied().unwrap_or_else(Rational::zero);
        terms.push((*r - next, level_vector(z, *r)));
    }
    JoinPoint { terms }
}

/// Phases of the coordinates with radius at least `r`, zero elsewhere.
pub fn level_vector(z: &ModelPoint, r: Rational) -> PhaseVector {
    PhaseVector::new(z.0.iter().map(|d| if d.radius >= r { d.phase() } else { Phase::Zero }).collect())
}

/// Whether `z` lies in the order complex of `v^⊥ - {0}`.
pub fn delta_member(v: &PhaseVector, z: &ModelPoint) -> Result<bool> {
    if v.len() != z.len() {
        return Err(Error::LengthMismatch { expected: v.len(), found: z.len() });
    }
    if v.entries().iter().any(|p| p.is_zero()) {
        return Err(Error::ZeroInUnitVector);
    }
    let mut radii: Vec<Rational> = z.0.iter().map(|d| d.radius).filter(|r| !r.is_zero()).collect();
    if !radii.iter().any(|r| r.is_one()) {
        return Ok(false);
    }
    radii.sort_unstable();
    radii.dedup();
    for r in radii {
        if !is_covector(v, &level_vector(z, r))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The induced rotation `Δ(g_y)` in polydisc coordinates.
pub fn rotate(y: Angle, z: &ModelPoint) -> ModelPoint {
    ModelPoint(z.0.iter().map(|d| d.rotate(y)).collect())
}

fn random_fraction<R: Rng + ?Sized>(rng: &mut R, max_den: i64) -> Rational {
    let q = rng.gen_range(1..=max_den);
    Rational::new(rng.gen_range(0..=q), q)
}

pub fn random_angle<R: Rng + ?Sized>(rng: &mut R) -> Angle {
    Angle::new(random_fraction(rng, 24))
}

pub fn random_disc_point<R: Rng + ?Sized>(rng: &mut R) -> DiscPoint {
    DiscPoint::new(random_fraction(rng, 16), random_angle(rng)).expect("fraction in [0,1]")
}

pub fn random_model_point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ModelPoint {
    ModelPoint((0..n).map(|_| random_disc_point(rng)).collect())
}

/// A random canonical join point of `Δ(Φ^n)`.
pub fn random_join_point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> JoinPoint {
    let mut order: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.8)).collect();
    order.shuffle(rng);
    let top: Vec<Phase> = (0..n).map(|_| Phase::Unit(random_angle(rng))).collect();
    let mut grades: Vec<usize> = (0..=order.len()).filter(|_| rng.gen_bool(0.5)).collect();
    if grades.is_empty() {
        grades.push(rng.gen_range(0..=order.len()));
    }
    let raw: Vec<i64> = grades.iter().map(|_| rng.gen_range(1..=9)).collect();
    let total: i64 = raw.iter().sum();
    let terms = grades
        .iter()
        .zip(&raw)
        .map(|(&g, &w)| {
            let mut x = vec![Phase::Zero; n];
            for &j in &order[..g] {
                x[j] = top[j];
            }
            (Rational::new(w, total), PhaseVector::new(x))
        })
        .collect();
    JoinPoint::new(terms).expect("constructed as a strict chain")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    fn mp(s: &str) -> ModelPoint {
        s.parse().unwrap()
    }

    fn pv(s: &str) -> PhaseVector {
        s.parse().unwrap()
    }

    #[test]
    fn gamma_examples() {
        let p = JoinPoint::new(vec![(q(1, 1), pv("z,z,z"))]).unwrap();
        assert_eq!(gamma(&p), mp("0@0;0@0;0@0"));

        let p = JoinPoint::new(vec![(q(1, 2), pv("z,z")), (q(1, 2), pv("0,1/2"))]).unwrap();
        assert_eq!(gamma(&p), mp("1/2@0;1/2@1/2"));

        let p = JoinPoint::new(vec![(q(1, 4), pv("0,1/2,z")), (q(3, 4), pv("0,1/2,1/4"))]).unwrap();
        assert_eq!(gamma(&p), mp("1@0;1@1/2;3/4@1/4"));
    }

    #[test]
    fn gamma_inverse_examples() {
        assert_eq!(gamma_inv(&mp("0@0;0@0")).terms(), &[(q(1, 1), pv("z,z"))]);
        assert_eq!(gamma_inv(&mp("1@0;1@1/2")).terms(), &[(q(1, 1), pv("0,1/2"))]);
        let expected = JoinPoint::new(vec![(q(1, 4), pv("0,1/2,z")), (q(3, 4), pv("0,1/2,1/4"))]).unwrap();
        assert_eq!(gamma_inv(&mp("1@0;1@1/2;3/4@1/4")), expected);
    }

    #[test]
    fn join_point_validation() {
        assert!(JoinPoint::new(vec![]).is_err());
        assert!(JoinPoint::new(vec![(q(1, 2), pv("0,z"))]).is_err());
        assert!(JoinPoint::new(vec![(q(1, 2), pv("0,z")), (q(1, 2), pv("1/2,1/2"))]).is_err());
        assert!(JoinPoint::new(vec![(q(1, 2), pv("0,1/2")), (q(1, 2), pv("0,z"))]).is_err());
        assert!(JoinPoint::new(vec![(q(0, 1), pv("z,z")), (q(1, 1), pv("0,z"))]).is_err());
    }

    #[test]
    fn membership_examples() {
        let ones2 = PhaseVector::ones(2);
        assert!(delta_member(&ones2, &mp("1@0;1@1/2")).unwrap());
        assert!(!delta_member(&ones2, &mp("1@0;3/4@1/2")).unwrap());
        assert!(delta_member(&PhaseVector::ones(3), &mp("1@0;1@1/2;3/4@1/4")).unwrap());
        // max radius below 1 means a grade-0 term is present
        assert!(!delta_member(&ones2, &mp("1/2@0;1/2@1/2")).unwrap());
        assert!(delta_member(&ones2, &mp("1@0")).is_err());
    }

    #[test]
    fn rotation_examples() {
        let z = mp("1@0;1@1/2");
        assert_eq!(rotate(Angle::zero(), &z), z);
        assert_eq!(rotate(Angle::frac(1, 4), &z), mp("1@1/4;1@3/4"));
        assert_eq!(rotate(Angle::frac(1, 4), &mp("0@0;1/2@0")), mp("0@0;1/2@1/4"));
    }

    #[test]
    fn disc_points_are_canonical() {
        assert_eq!(DiscPoint::new(q(0, 1), Angle::frac(1, 3)).unwrap(), DiscPoint::center());
        assert!(DiscPoint::new(q(3, 2), Angle::zero()).is_err());
        assert_eq!("0@1/3".parse::<DiscPoint>().unwrap(), DiscPoint::center());
        assert_eq!(mp("1/2@1/4;0@0").to_string(), "1/2@1/4;0@0");
    }
}
