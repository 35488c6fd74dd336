//! Cell labels for the ball decomposition of the slice `{z_n = 1}`.
//!
//! A label assigns to every coordinate an element of the five-element poset
//! `{1, -1} < {U, L} < Φ`; the realized ball `B(X)` constrains each coordinate
//! to a point, a closed half-circle, or the whole disc, with `t_β ≤ t_α` for
//! every upper/lower pair. Indices in this module are 0-based, so the fixed
//! coordinate is `n - 1`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order_complex::{DiscPoint, ModelPoint};
use crate::phase::Angle;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PLabel {
    One,
    MinusOne,
    U,
    L,
    Phi,
}

impl PLabel {
    pub const ALL: [PLabel; 5] = [PLabel::One, PLabel::MinusOne, PLabel::U, PLabel::L, PLabel::Phi];

    pub fn leq(self, other: PLabel) -> bool {
        use PLabel::*;
        self == other
            || matches!((self, other), (One | MinusOne, U | L | Phi) | (U | L, Phi))
    }

    pub fn precedes(self, other: PLabel) -> bool {
        self != other && self.leq(other)
    }

    /// Meet away from the fixed coordinate, where `U ∧ L = -1`.
    fn meet_free(self, other: PLabel) -> Option<PLabel> {
        use PLabel::*;
        match (self, other) {
            (a, b) if a == b => Some(a),
            (Phi, x) | (x, Phi) => Some(x),
            (U, L) | (L, U) | (MinusOne, U | L) | (U | L, MinusOne) => Some(MinusOne),
            _ => None,
        }
    }

    fn is_arc(self) -> bool {
        matches!(self, PLabel::U | PLabel::L)
    }
}

impl fmt::Display for PLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PLabel::One => "1",
            PLabel::MinusOne => "-1",
            PLabel::U => "U",
            PLabel::L => "L",
            PLabel::Phi => "F",
        })
    }
}

impl FromStr for PLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" => Ok(PLabel::One),
            "-1" => Ok(PLabel::MinusOne),
            "U" => Ok(PLabel::U),
            "L" => Ok(PLabel::L),
            "F" => Ok(PLabel::Phi),
            other => Err(Error::Parse(format!("bad cell label token `{other}`"))),
        }
    }
}

/// Membership test for the lattice of admissible labels.
pub fn in_pn(labels: &[PLabel]) -> bool {
    let n = labels.len();
    if n < 3 {
        return false;
    }
    let free = &labels[..n - 1];
    if labels[n - 1] != PLabel::One || free.contains(&PLabel::One) {
        return false;
    }
    if !free.iter().any(|l| matches!(l, PLabel::MinusOne | PLabel::U | PLabel::L)) {
        return false;
    }
    free.iter().enumerate().all(|(a, la)| {
        !la.is_arc()
            || free.iter().enumerate().any(|(b, lb)| {
                b != a && matches!(lb, PLabel::U | PLabel::L | PLabel::MinusOne) && lb != la
            })
    })
}

/// An admissible label `X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellLabel(Vec<PLabel>);

impl CellLabel {
    pub fn new(labels: Vec<PLabel>) -> Result<Self> {
        if !in_pn(&labels) {
            let shown: Vec<String> = labels.iter().map(PLabel::to_string).collect();
            return Err(Error::InvalidParameter(format!("({}) is not an admissible label", shown.join(","))));
        }
        Ok(CellLabel(labels))
    }

    pub fn labels(&self) -> &[PLabel] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, alpha: usize) -> PLabel {
        self.0[alpha]
    }

    pub fn leq(&self, other: &CellLabel) -> bool {
        self.n() == other.n() && self.0.iter().zip(&other.0).all(|(a, b)| a.leq(*b))
    }

    pub fn precedes(&self, other: &CellLabel) -> bool {
        self != other && self.leq(other)
    }

    pub fn coords_with(&self, label: PLabel) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(move |(_, l)| **l == label).map(|(a, _)| a)
    }
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(PLabel::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for CellLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CellLabel::new(s.split(',').map(str::parse).collect::<Result<Vec<_>>>()?)
    }
}

/// The top-dimensional generator `X^(j,k)` for 0-based `j <= k < n - 1`.
///
/// `j == k` puts `-1` at `j`; otherwise `U` sits at `j` and `L` at `k`.
pub fn generator(j: usize, k: usize, n: usize) -> Result<CellLabel> {
    if j > k {
        return Err(Error::IndexOutOfRange(format!("generator ({j},{k}) needs j <= k")));
    }
    generator_pair(j, k, n)
}

/// Like [`generator`] but for any ordered pair, so `U` may sit after `L`.
pub fn generator_pair(j: usize, k: usize, n: usize) -> Result<CellLabel> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("n must be at least 3, got {n}")));
    }
    if j >= n - 1 || k >= n - 1 {
        return Err(Error::IndexOutOfRange(format!("generator ({j},{k}) needs indices below {}", n - 1)));
    }
    let mut labels = vec![PLabel::Phi; n];
    labels[n - 1] = PLabel::One;
    if j == k {
        labels[j] = PLabel::MinusOne;
    } else {
        labels[j] = PLabel::U;
        labels[k] = PLabel::L;
    }
    CellLabel::new(labels)
}

/// Greatest lower bound of two labels.
pub fn meet(x: &CellLabel, y: &CellLabel) -> Result<CellLabel> {
    if x.n() != y.n() {
        return Err(Error::LengthMismatch { expected: x.n(), found: y.n() });
    }
    let n = x.n();
    let mut labels = Vec::with_capacity(n);
    for (alpha, (a, b)) in x.0.iter().zip(&y.0).enumerate() {
        let m = if alpha == n - 1 {
            (a == b).then_some(*a)
        } else {
            a.meet_free(*b)
        };
        labels.push(m.ok_or_else(|| Error::InvalidParameter(format!("no meet of {a} and {b} at {alpha}")))?);
    }
    CellLabel::new(labels)
}

/// Meet of a non-empty family.
pub fn meet_all<'a, I>(labels: I) -> Result<CellLabel>
where
    I: IntoIterator<Item = &'a CellLabel>,
{
    let mut it = labels.into_iter();
    let first = it.next().ok_or(Error::EmptyInput("meet of an empty family"))?.clone();
    it.try_fold(first, |acc, x| meet(&acc, x))
}

/// `ν(X) = |X⁻¹(U)| + |X⁻¹(L)| + 2|X⁻¹(Φ)|`, the dimension of `B(X)`.
pub fn nu(x: &CellLabel) -> i64 {
    x.0.iter()
        .map(|l| match l {
            PLabel::U | PLabel::L => 1,
            PLabel::Phi => 2,
            _ => 0,
        })
        .sum()
}

/// Every admissible label for a given `n`, in lexicographic order.
pub fn all_labels(n: usize) -> Vec<CellLabel> {
    if n < 3 {
        return Vec::new();
    }
    let free = [PLabel::MinusOne, PLabel::U, PLabel::L, PLabel::Phi];
    let total = 4usize.pow((n - 1) as u32);
    (0..total)
        .filter_map(|mut i| {
            let mut labels = vec![PLabel::One; n];
            for slot in labels[..n - 1].iter_mut().rev() {
                *slot = free[i % 4];
                i /= 4;
            }
            CellLabel::new(labels).ok()
        })
        .collect()
}

/// Checks that `meet(x, y)` is below both and above every common lower bound in `universe`.
pub fn is_glb(x: &CellLabel, y: &CellLabel, m: &CellLabel, universe: &[CellLabel]) -> bool {
    m.leq(x) && m.leq(y) && universe.iter().filter(|z| z.leq(x) && z.leq(y)).all(|z| z.leq(m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    Closed,
    Interior,
}

/// Parameter `t ∈ [0,1]` of a point on the upper half-circle (`angle = t/2`).
pub fn upper_param(d: DiscPoint) -> Option<Rational> {
    let a = d.angle().turns();
    (d.on_circle() && a <= Rational::new(1, 2)).then(|| a * 2)
}

/// Parameter `t ∈ [0,1]` of a point on the lower half-circle (`angle = 1/2 + t/2`).
pub fn lower_param(d: DiscPoint) -> Option<Rational> {
    if !d.on_circle() {
        return None;
    }
    let a = d.angle().turns();
    if a.is_zero() {
        Some(Rational::one())
    } else if a >= Rational::new(1, 2) {
        Some(a * 2 - 1)
    } else {
        None
    }
}

/// Exact membership of `z` in `B(X)` (closed) or in its interior.
pub fn bx_member(x: &CellLabel, z: &ModelPoint, mode: Membership) -> bool {
    if z.len() != x.n() {
        return false;
    }
    let strict = mode == Membership::Interior;
    let open_unit = |t: Rational| !strict || (t > Rational::zero() && t < Rational::one());
    let mut uppers = Vec::new();
    let mut lowers = Vec::new();
    for (alpha, label) in x.0.iter().enumerate() {
        let d = z.coord(alpha);
        let ok = match label {
            PLabel::One => d == DiscPoint::boundary(Angle::zero()),
            PLabel::MinusOne => d == DiscPoint::boundary(Angle::frac(1, 2)),
            PLabel::U => match upper_param(d) {
                Some(t) if open_unit(t) => {
                    uppers.push(t);
                    true
                }
                _ => false,
            },
            PLabel::L => match lower_param(d) {
                Some(t) if open_unit(t) => {
                    lowers.push(t);
                    true
                }
                _ => false,
            },
            PLabel::Phi => !strict || d.radius() < Rational::one(),
        };
        if !ok {
            return false;
        }
    }
    uppers.iter().all(|tu| lowers.iter().all(|tl| if strict { tl < tu } else { tl <= tu }))
}

/// How sample coordinates are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sampling {
    /// Rationals with small random denominators.
    Fine,
    /// Values on the grid `k/steps`, which lands on shared faces often.
    Grid(u32),
}

fn draw<R: Rng + ?Sized>(rng: &mut R, lo: Rational, hi: Rational, sampling: Sampling, open: bool) -> Rational {
    match sampling {
        Sampling::Grid(steps) if !open => {
            let steps = steps.max(1) as i64;
            let lo_k = (lo * steps).ceil().to_integer();
            let hi_k = (hi * steps).floor().to_integer();
            if lo_k > hi_k {
                return lo;
            }
            Rational::new(rng.gen_range(lo_k..=hi_k), steps)
        }
        _ => {
            // Strictly inside (lo, hi) when open; otherwise the endpoints are reachable.
            let q: i64 = rng.gen_range(2..=24);
            let k = if open { rng.gen_range(1..q) } else { rng.gen_range(0..=q) };
            lo + (hi - lo) * Rational::new(k, q)
        }
    }
}

fn draw_disc<R: Rng + ?Sized>(rng: &mut R, sampling: Sampling, open: bool) -> DiscPoint {
    let r = match sampling {
        Sampling::Grid(steps) if !open => {
            let choices = [Rational::zero(), Rational::new(1, 2), Rational::one()];
            let _ = steps;
            choices[rng.gen_range(0..choices.len())]
        }
        _ => {
            let q: i64 = rng.gen_range(1..=16);
            let top = if open { q - 1 } else { q };
            Rational::new(rng.gen_range(0..=top), q)
        }
    };
    let angle = match sampling {
        Sampling::Grid(steps) => Angle::frac(rng.gen_range(0..2 * steps.max(1) as i64), 2 * steps.max(1) as i64),
        Sampling::Fine => Angle::frac(rng.gen_range(0..48), 48),
    };
    DiscPoint::new(r, angle).expect("radius in [0,1]")
}

fn embed(x: &CellLabel, uppers: &dyn Fn(usize) -> Rational, lowers: &dyn Fn(usize) -> Rational, disc: &mut dyn FnMut() -> DiscPoint) -> ModelPoint {
    let coords = x
        .0
        .iter()
        .enumerate()
        .map(|(alpha, l)| match l {
            PLabel::One => DiscPoint::boundary(Angle::zero()),
            PLabel::MinusOne => DiscPoint::boundary(Angle::frac(1, 2)),
            PLabel::U => DiscPoint::boundary(Angle::new(uppers(alpha) / 2)),
            PLabel::L => DiscPoint::boundary(Angle::new(Rational::new(1, 2) + lowers(alpha) / 2)),
            PLabel::Phi => disc(),
        })
        .collect();
    ModelPoint::new(coords)
}

/// A deterministic-given-`rng` sample of `B(X)`, or of its interior.
pub fn bx_sample<R: Rng + ?Sized>(x: &CellLabel, rng: &mut R, sampling: Sampling, mode: Membership) -> ModelPoint {
    let open = mode == Membership::Interior;
    let n = x.n();
    let cut = draw(rng, Rational::zero(), Rational::one(), sampling, open);
    let mut t = vec![Rational::zero(); n];
    for (alpha, l) in x.0.iter().enumerate() {
        t[alpha] = match l {
            PLabel::U => draw(rng, cut, Rational::one(), sampling, open),
            PLabel::L => draw(rng, Rational::zero(), cut, sampling, open),
            _ => Rational::zero(),
        };
    }
    let mut discs = Vec::new();
    for l in &x.0 {
        if *l == PLabel::Phi {
            discs.push(draw_disc(rng, sampling, open));
        }
    }
    let mut it = discs.into_iter();
    embed(x, &|a| t[a], &|a| t[a], &mut || it.next().expect("one disc per Φ"))
}

/// The vertex of `B(X)` with every half-circle parameter 0 and every disc at its center.
pub fn bx_corner(x: &CellLabel) -> ModelPoint {
    embed(x, &|_| Rational::zero(), &|_| Rational::zero(), &mut DiscPoint::center)
}

/// An interior point: upper parameters 2/3, lower parameters 1/3, discs at the center.
pub fn bx_center(x: &CellLabel) -> ModelPoint {
    embed(x, &|_| Rational::new(2, 3), &|_| Rational::new(1, 3), &mut DiscPoint::center)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn label(s: &str) -> CellLabel {
        s.parse().unwrap()
    }

    fn raw(s: &str) -> Vec<PLabel> {
        s.split(',').map(|t| t.parse().unwrap()).collect()
    }

    fn mp(s: &str) -> ModelPoint {
        s.parse().unwrap()
    }

    #[test]
    fn hasse_relations() {
        use PLabel::*;
        let strict: Vec<(PLabel, PLabel)> = PLabel::ALL
            .iter()
            .flat_map(|a| PLabel::ALL.iter().map(move |b| (*a, *b)))
            .filter(|(a, b)| a.precedes(*b))
            .collect();
        let expected = [
            (One, U), (One, L), (One, Phi), (MinusOne, U), (MinusOne, L), (MinusOne, Phi), (U, Phi), (L, Phi),
        ];
        assert_eq!(strict.len(), expected.len());
        for pair in expected {
            assert!(strict.contains(&pair));
        }
        assert!(!U.leq(L) && !L.leq(U) && !One.leq(MinusOne) && !MinusOne.leq(One));
    }

    #[test]
    fn admissibility_examples() {
        assert!(in_pn(&raw("U,L,F,1")));
        assert!(in_pn(&raw("U,U,-1,1")));
        assert!(!in_pn(&raw("U,U,F,1")));
        assert!(!in_pn(&raw("F,F,F,1")));
        assert!(!in_pn(&raw("1,-1,F,1")));
        assert!(!in_pn(&raw("-1,F,F,F")));
        assert!(!in_pn(&raw("-1,1")));
    }

    #[test]
    fn generators() {
        assert_eq!(generator(0, 1, 4).unwrap(), label("U,L,F,1"));
        assert_eq!(generator(0, 0, 4).unwrap(), label("-1,F,F,1"));
        assert!(matches!(generator(1, 0, 4), Err(Error::IndexOutOfRange(_))));
        assert_eq!(generator_pair(1, 0, 4).unwrap(), label("L,U,F,1"));
        assert!(matches!(generator(0, 3, 4), Err(Error::IndexOutOfRange(_))));
        assert!(generator(0, 0, 2).is_err());
    }

    #[test]
    fn meets() {
        let g = |j, k| generator(j, k, 4).unwrap();
        assert_eq!(meet(&g(0, 1), &g(0, 2)).unwrap(), label("U,L,L,1"));
        assert_eq!(meet(&g(0, 1), &g(1, 2)).unwrap(), label("U,-1,L,1"));
        assert_eq!(meet(&g(0, 1), &g(0, 1)).unwrap(), g(0, 1));
        assert!(meet(&g(0, 1), &generator(0, 1, 5).unwrap()).is_err());
    }

    #[test]
    fn dimensions() {
        assert_eq!(nu(&label("U,L,F,1")), 4);
        assert_eq!(nu(&label("-1,F,F,1")), 4);
        assert_eq!(nu(&label("U,L,L,1")), 3);
        for n in 3..=6 {
            for x in all_labels(n) {
                let v = nu(&x);
                // all-(-1) labels are points, so the floor is 0
                assert!((0..=2 * n as i64 - 4).contains(&v), "{x}: {v}");
            }
        }
    }

    #[test]
    fn membership_examples() {
        let x = label("U,L,1");
        let z = mp("1@1/4;1@5/8;1@0");
        assert!(bx_member(&x, &z, Membership::Closed));
        assert!(bx_member(&x, &z, Membership::Interior));
        let z = mp("1@1/4;1@7/8;1@0");
        assert!(!bx_member(&x, &z, Membership::Closed));
        let z = mp("1@1/2;1@5/8;1@0");
        assert!(bx_member(&x, &z, Membership::Closed));
        assert!(!bx_member(&x, &z, Membership::Interior));
        // z_n must be exactly 1
        assert!(!bx_member(&x, &mp("1@1/4;1@5/8;1@1/8"), Membership::Closed));
        // L at angle 0 is t = 1, which no U parameter dominates unless it is 1 too
        assert!(!bx_member(&x, &mp("1@1/4;1@0;1@0"), Membership::Closed));
        assert!(bx_member(&x, &mp("1@1/2;1@0;1@0"), Membership::Closed));
    }

    #[test]
    fn samples_land_in_their_cells() {
        let corner = bx_corner(&generator(0, 1, 3).unwrap());
        assert_eq!(corner, mp("1@0;1@1/2;1@0"));
        let center = bx_center(&generator(0, 0, 4).unwrap());
        assert_eq!(center, mp("1@1/2;0@0;0@0;1@0"));
        assert!(bx_member(&generator(0, 0, 4).unwrap(), &center, Membership::Interior));

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 3..=5 {
            for x in all_labels(n) {
                for sampling in [Sampling::Fine, Sampling::Grid(4)] {
                    let z = bx_sample(&x, &mut rng, sampling, Membership::Closed);
                    assert!(bx_member(&x, &z, Membership::Closed), "{x} {z}");
                }
                let z = bx_sample(&x, &mut rng, Sampling::Fine, Membership::Interior);
                assert!(bx_member(&x, &z, Membership::Interior), "{x} {z}");
            }
        }
    }
}
