//! The ambient triangulation every chart lives in.
//!
//! Each coordinate disc is the cone over a `2m`-gon: vertices are the center
//! and ring points `r_i` at angle `i/(2m)`. Edges are locally ordered (center
//! first, `r_i` before `r_{i+1}` cyclically), which is acyclic on every
//! triangle. The product of the discs is triangulated by the staircase rule:
//! a simplex is a chain of vertex tuples, increasing coordinatewise in the
//! local orders, whose projection to each disc is a simplex of that disc.
//! On grid cubes of ring paths this is the Kuhn/Freudenthal subdivision, so
//! every hyperplane `t_a - t_b = const` on the grid is a union of faces.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::order_complex::{DiscPoint, ModelPoint};
use crate::phase::Angle;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FanVertex {
    Center,
    Ring(u32),
}

impl FanVertex {
    pub fn ring(i: i64, m: u32) -> FanVertex {
        FanVertex::Ring(i.rem_euclid(2 * m as i64) as u32)
    }

    pub fn point(self, m: u32) -> DiscPoint {
        match self {
            FanVertex::Center => DiscPoint::center(),
            FanVertex::Ring(i) => DiscPoint::boundary(Angle::frac(i as i64, 2 * m as i64)),
        }
    }
}

impl fmt::Display for FanVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanVertex::Center => f.write_str("c"),
            FanVertex::Ring(i) => write!(f, "r{i}"),
        }
    }
}

/// A vertex of the product: one fan vertex per coordinate.
pub type Tuple = Vec<FanVertex>;

pub fn tuple_point(t: &[FanVertex], m: u32) -> ModelPoint {
    ModelPoint::new(t.iter().map(|v| v.point(m)).collect())
}

/// A locally ordered complex on a group of coordinates, listed by facets.
///
/// Each facet is its vertex list in local order; each vertex assigns fan
/// vertices to the factor's coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub coords: Vec<usize>,
    pub facets: Vec<Vec<Vec<FanVertex>>>,
}

impl Factor {
    pub fn point(coord: usize, v: FanVertex) -> Factor {
        Factor { coords: vec![coord], facets: vec![vec![vec![v]]] }
    }

    /// The ring path `r_start → … → r_{start+len}`.
    pub fn path(coord: usize, m: u32, start: i64, len: u32) -> Factor {
        let facets = if len == 0 {
            vec![vec![vec![FanVertex::ring(start, m)]]]
        } else {
            (0..len as i64)
                .map(|i| vec![vec![FanVertex::ring(start + i, m)], vec![FanVertex::ring(start + i + 1, m)]])
                .collect()
        };
        Factor { coords: vec![coord], facets }
    }

    /// The whole `2m`-gon boundary.
    pub fn ring(coord: usize, m: u32) -> Factor {
        let mut f = Factor::path(coord, m, 0, 2 * m);
        f.facets.sort();
        f
    }

    /// The cone over the `2m`-gon.
    pub fn fan(coord: usize, m: u32) -> Factor {
        let facets = (0..2 * m as i64)
            .map(|i| vec![vec![FanVertex::Center], vec![FanVertex::ring(i, m)], vec![FanVertex::ring(i + 1, m)]])
            .collect();
        Factor { coords: vec![coord], facets }
    }

    /// The circle `{(x, -x)}` on two coordinates, along diagonal edges.
    pub fn antipodal(a: usize, b: usize, m: u32) -> Factor {
        let mm = m as i64;
        let facets = (0..2 * mm)
            .map(|i| {
                vec![
                    vec![FanVertex::ring(i, m), FanVertex::ring(i + mm, m)],
                    vec![FanVertex::ring(i + 1, m), FanVertex::ring(i + 1 + mm, m)],
                ]
            })
            .collect();
        Factor { coords: vec![a, b], facets }
    }
}

fn interleavings(lens: &[usize], pos: &mut Vec<usize>, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if pos.iter().zip(lens).all(|(p, l)| p + 1 == *l) {
        out.push(path.clone());
        return;
    }
    for i in 0..lens.len() {
        if pos[i] + 1 < lens[i] {
            pos[i] += 1;
            path.push(i);
            interleavings(lens, pos, path, out);
            path.pop();
            pos[i] -= 1;
        }
    }
}

/// Staircase triangulation of a product of factors covering all `n` coordinates.
///
/// Returns every top simplex as its chain of tuples.
pub fn staircase(n: usize, factors: &[Factor]) -> Vec<Vec<Tuple>> {
    let mut covered = vec![false; n];
    for f in factors {
        for &c in &f.coords {
            assert!(!covered[c], "coordinate {c} covered twice");
            covered[c] = true;
        }
    }
    assert!(covered.iter().all(|&c| c), "every coordinate needs a factor");

    let mut out = Vec::new();
    let mut choice = vec![0usize; factors.len()];
    loop {
        let pieces: Vec<&Vec<Vec<FanVertex>>> = factors.iter().zip(&choice).map(|(f, &i)| &f.facets[i]).collect();
        let lens: Vec<usize> = pieces.iter().map(|p| p.len()).collect();
        let mut paths = Vec::new();
        interleavings(&lens, &mut vec![0; lens.len()], &mut Vec::new(), &mut paths);
        for steps in paths {
            let mut pos = vec![0usize; factors.len()];
            let build = |pos: &[usize]| {
                let mut t = vec![FanVertex::Center; n];
                for ((f, piece), &p) in factors.iter().zip(&pieces).zip(pos) {
                    for (c, v) in f.coords.iter().zip(&piece[p]) {
                        t[*c] = *v;
                    }
                }
                t
            };
            let mut chain = vec![build(&pos)];
            for s in steps {
                pos[s] += 1;
                chain.push(build(&pos));
            }
            out.push(chain);
        }
        // odometer over facet choices
        let mut i = 0;
        loop {
            if i == factors.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < factors[i].facets.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Rank of each fan vertex inside a projected simplex, or `None` if the set
/// is not a simplex of the fan.
fn local_ranks(vs: &[FanVertex], m: u32) -> Option<Vec<(FanVertex, u8)>> {
    let mut ring: Vec<u32> = vs.iter().filter_map(|v| if let FanVertex::Ring(i) = v { Some(*i) } else { None }).collect();
    ring.sort_unstable();
    ring.dedup();
    let mut ranks = Vec::new();
    if vs.contains(&FanVertex::Center) {
        ranks.push((FanVertex::Center, 0));
    }
    let size = 2 * m;
    match ring.as_slice() {
        [] => {}
        [a] => ranks.push((FanVertex::Ring(*a), 1)),
        [a, b] => {
            let (first, second) = if (a + 1) % size == *b {
                (*a, *b)
            } else if (b + 1) % size == *a {
                (*b, *a)
            } else {
                return None;
            };
            ranks.push((FanVertex::Ring(first), 1));
            ranks.push((FanVertex::Ring(second), 2));
        }
        _ => return None,
    }
    Some(ranks)
}

/// Whether a set of tuples is a simplex of the ambient staircase product.
pub fn is_ambient_simplex(tuples: &[Tuple], m: u32) -> bool {
    let Some(n) = tuples.first().map(Vec::len) else { return true };
    let mut rank_of: Vec<Vec<(FanVertex, u8)>> = Vec::with_capacity(n);
    for c in 0..n {
        let column: Vec<FanVertex> = tuples.iter().map(|t| t[c]).collect();
        match local_ranks(&column, m) {
            Some(r) => rank_of.push(r),
            None => return false,
        }
    }
    let rank = |c: usize, v: FanVertex| rank_of[c].iter().find(|(w, _)| *w == v).map(|(_, r)| *r).unwrap_or(0);
    let mut ranked: Vec<Vec<u8>> = tuples.iter().map(|t| (0..n).map(|c| rank(c, t[c])).collect()).collect();
    ranked.sort_by_key(|r| r.iter().map(|&x| x as u32).sum::<u32>());
    ranked.windows(2).all(|w| w[0] != w[1] && w[0].iter().zip(&w[1]).all(|(a, b)| a <= b))
}

/// The barycenter of a simplex, carried to the model space by the polar PL
/// map of each fan: radius `1 -` (weight on the center), angle the weighted
/// mean of the ring angles along the projected edge.
pub fn barycenter(tuples: &[Tuple], m: u32) -> ModelPoint {
    let n = tuples[0].len();
    let k = tuples.len() as i64;
    let size = 2 * m as i64;
    let coords = (0..n)
        .map(|c| {
            let column: Vec<FanVertex> = tuples.iter().map(|t| t[c]).collect();
            let ring: Vec<i64> =
                column.iter().filter_map(|v| if let FanVertex::Ring(i) = v { Some(*i as i64) } else { None }).collect();
            if ring.is_empty() {
                return DiscPoint::center();
            }
            // unwrap the edge r_{2m-1} → r_0
            let wraps = ring.contains(&0) && ring.contains(&(size - 1));
            let total: i64 = ring.iter().map(|&i| if wraps && i == 0 { size } else { i }).sum();
            let radius = Rational::new(ring.len() as i64, k);
            let angle = Angle::new(Rational::new(total, size * ring.len() as i64));
            if radius.is_zero() {
                DiscPoint::center()
            } else {
                DiscPoint::new(radius, angle).expect("radius in (0,1]")
            }
        })
        .collect();
    ModelPoint::new(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use FanVertex::*;

    #[test]
    fn fan_and_paths() {
        let fan = staircase(1, &[Factor::fan(0, 8)]);
        assert_eq!(fan.len(), 16);
        let grid = staircase(2, &[Factor::path(0, 2, 0, 2), Factor::path(1, 2, 2, 2)]);
        // 2×2 grid, two Kuhn triangles per square
        assert_eq!(grid.len(), 8);
        assert!(grid.iter().all(|s| is_ambient_simplex(s, 2)));
    }

    #[test]
    fn product_counts() {
        // triangle × triangle has C(4,2) staircase 4-simplices
        let t = staircase(2, &[Factor::fan(0, 2), Factor::fan(1, 2)]);
        assert_eq!(t.len(), 4 * 4 * 6);
        assert!(t.iter().all(|s| s.len() == 5 && is_ambient_simplex(s, 2)));
    }

    #[test]
    fn ambient_membership() {
        let m = 2;
        assert!(is_ambient_simplex(&[vec![Ring(3), Ring(1)], vec![Ring(0), Ring(2)]], m));
        assert!(!is_ambient_simplex(&[vec![Ring(0), Ring(2)], vec![Ring(1), Ring(1)]], m));
        assert!(!is_ambient_simplex(&[vec![Ring(0)], vec![Ring(2)]], m));
        assert!(is_ambient_simplex(&[vec![Center], vec![Ring(3)], vec![Ring(0)]], m));
    }

    #[test]
    fn barycenters() {
        let b = barycenter(&[vec![Center], vec![Ring(3)], vec![Ring(0)]], 2);
        assert_eq!(b.coord(0), DiscPoint::new(Rational::new(2, 3), Angle::frac(7, 8)).unwrap());
        let b = barycenter(&[vec![Ring(1)], vec![Ring(2)]], 2);
        assert_eq!(b.coord(0), DiscPoint::boundary(Angle::frac(3, 8)));
    }
}
