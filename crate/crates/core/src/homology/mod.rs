//! Simplicial homology over ℚ and 𝔽₂, order complexes of finite posets, and
//! Mayer–Vietoris assembly.

pub mod field;
pub mod reduce;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh::{Simplex, SimplicialComplex};
use field::{Field, Gf2, Q};
use reduce::{reduce, Column};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    #[serde(rename = "q")]
    Rationals,
    #[serde(rename = "f2")]
    Gf2,
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldKind::Rationals => "q",
            FieldKind::Gf2 => "f2",
        })
    }
}

impl FromStr for FieldKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "q" | "rationals" => Ok(FieldKind::Rationals),
            "f2" | "gf2" => Ok(FieldKind::Gf2),
            other => Err(Error::Parse(format!("unknown field `{other}` (expected q or f2)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiReport {
    pub field: FieldKind,
    pub betti: Vec<usize>,
    pub euler: i64,
}

impl fmt::Display for BettiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.betti.iter().map(usize::to_string).collect();
        write!(f, "field={} betti=({}) euler={}", self.field, b.join(","), self.euler)
    }
}

/// Simplices by dimension with an index for each.
struct Chains {
    by_dim: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl Chains {
    fn new(k: &SimplicialComplex) -> Self {
        let by_dim = k.simplices_by_dim();
        let index = by_dim.iter().map(|s| s.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect()).collect();
        Chains { by_dim, index }
    }

    fn count(&self, d: usize) -> usize {
        self.by_dim.get(d).map_or(0, Vec::len)
    }

    /// Columns of `∂_d : C_d → C_{d-1}`.
    fn boundary<F: Field>(&self, d: usize) -> Vec<Column<F>> {
        if d == 0 || d >= self.by_dim.len() {
            return vec![Vec::new(); self.count(d)];
        }
        self.by_dim[d]
            .iter()
            .map(|s| {
                let mut col: Column<F> = (0..s.len())
                    .map(|i| {
                        let face: Simplex = s.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &v)| v).collect();
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        (self.index[d - 1][&face], F::from_i64(sign))
                    })
                    .collect();
                col.sort_by_key(|(r, _)| *r);
                col
            })
            .collect()
    }
}

/// Betti numbers over a generic field.
pub fn betti_numbers<F: Field>(k: &SimplicialComplex) -> Vec<usize> {
    let chains = Chains::new(k);
    let top = chains.by_dim.len();
    let ranks: Vec<usize> = (0..=top).map(|d| reduce::rank(chains.boundary::<F>(d))).collect();
    (0..top).map(|d| chains.count(d) - ranks[d] - ranks[d + 1]).collect()
}

pub fn betti(k: &SimplicialComplex, field: FieldKind) -> BettiReport {
    let betti = match field {
        FieldKind::Rationals => betti_numbers::<Q>(k),
        FieldKind::Gf2 => betti_numbers::<Gf2>(k),
    };
    BettiReport { field, betti, euler: k.euler_characteristic() }
}

pub fn euler_characteristic(k: &SimplicialComplex) -> i64 {
    k.euler_characteristic()
}

/// Alternating sum of Betti numbers.
pub fn betti_euler(betti: &[usize]) -> i64 {
    betti.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
}

/// The order complex of a finite poset on `0..len`: simplices are chains.
///
/// The relation is checked for reflexivity, antisymmetry and transitivity first.
pub fn order_complex_of_poset(len: usize, leq: impl Fn(usize, usize) -> bool) -> Result<SimplicialComplex> {
    let rel: Vec<Vec<bool>> = (0..len).map(|a| (0..len).map(|b| leq(a, b)).collect()).collect();
    for a in 0..len {
        if !rel[a][a] {
            return Err(Error::NotAPoset(format!("{a} is not below itself")));
        }
        for b in 0..len {
            if a != b && rel[a][b] && rel[b][a] {
                return Err(Error::NotAPoset(format!("{a} and {b} are mutually below each other")));
            }
            if rel[a][b] && (0..len).any(|c| rel[b][c] && !rel[a][c]) {
                return Err(Error::NotAPoset(format!("transitivity fails through {a} <= {b}")));
            }
        }
    }
    // Covers, then maximal chains as paths from minimal to maximal elements.
    let lt = |a: usize, b: usize| a != b && rel[a][b];
    let covers: Vec<Vec<usize>> =
        (0..len).map(|a| (0..len).filter(|&b| lt(a, b) && !(0..len).any(|c| lt(a, c) && lt(c, b))).collect()).collect();
    let minimal: Vec<usize> = (0..len).filter(|&b| !(0..len).any(|a| lt(a, b))).collect();
    let mut facets = Vec::new();
    let mut stack: Vec<Vec<usize>> = minimal.into_iter().map(|a| vec![a]).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().expect("non-empty chain");
        if covers[last].is_empty() {
            facets.push(chain);
        } else {
            for &b in covers[last].iter().rev() {
                let mut next = chain.clone();
                next.push(b);
                stack.push(next);
            }
        }
    }
    SimplicialComplex::from_facets(len, facets)
}

/// Homology of `A ∪ B` from `A`, `B`, `C = A ∩ B`, via the long exact sequence
/// `… → H_k(C) → H_k(A) ⊕ H_k(B) → H_k(A ∪ B) → H_{k-1}(C) → …`.
///
/// `to_a[v]` and `to_b[v]` send vertices of `C` to vertices of `A` and `B`;
/// both must be injective simplicial inclusions.
pub fn mayer_vietoris_assemble(
    ka: &SimplicialComplex,
    kb: &SimplicialComplex,
    kc: &SimplicialComplex,
    to_a: &[usize],
    to_b: &[usize],
    field: FieldKind,
) -> Result<BettiReport> {
    let betti = match field {
        FieldKind::Rationals => mayer_vietoris::<Q>(ka, kb, kc, to_a, to_b)?,
        FieldKind::Gf2 => mayer_vietoris::<Gf2>(ka, kb, kc, to_a, to_b)?,
    };
    let euler = betti_euler(&betti);
    Ok(BettiReport { field, betti, euler })
}

/// Image of a simplex under a vertex map, with the permutation sign.
fn push_simplex(s: &[usize], map: &[usize]) -> Result<(Simplex, i64)> {
    let mut img: Vec<usize> = s
        .iter()
        .map(|&v| map.get(v).copied().ok_or_else(|| Error::NonSimplicialInclusion(format!("vertex {v} unmapped"))))
        .collect::<Result<_>>()?;
    let mut sign = 1;
    for i in 0..img.len() {
        for j in 0..img.len() - i - 1 {
            if img[j] > img[j + 1] {
                img.swap(j, j + 1);
                sign = -sign;
            } else if img[j] == img[j + 1] {
                return Err(Error::NonSimplicialInclusion(format!("simplex {s:?} collapses")));
            }
        }
    }
    if img.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::NonSimplicialInclusion(format!("simplex {s:?} collapses")));
    }
    Ok((img, sign))
}

fn mayer_vietoris<F: Field>(
    ka: &SimplicialComplex,
    kb: &SimplicialComplex,
    kc: &SimplicialComplex,
    to_a: &[usize],
    to_b: &[usize],
) -> Result<Vec<usize>> {
    let (ca, cb, cc) = (Chains::new(ka), Chains::new(kb), Chains::new(kc));
    let top = ca.by_dim.len().max(cb.by_dim.len()).max(cc.by_dim.len() + 1);
    let homology = |ch: &Chains| -> Vec<usize> {
        let ranks: Vec<usize> = (0..=top).map(|d| reduce::rank(ch.boundary::<F>(d))).collect();
        (0..top).map(|d| ch.count(d) - ranks[d] - ranks[d + 1]).collect()
    };
    let (ha, hb, hc) = (homology(&ca), homology(&cb), homology(&cc));

    // rank of φ_k : H_k(C) → H_k(A) ⊕ H_k(B), x ↦ (i_A x, -i_B x)
    let mut phi_rank = vec![0usize; top + 1];
    for d in 0..top.min(cc.by_dim.len()) {
        let na = ca.count(d);
        let kernel = reduce(cc.boundary::<F>(d), true).kernel();
        let mut images: Vec<Column<F>> = Vec::with_capacity(kernel.len());
        for z in &kernel {
            let mut col: Column<F> = Vec::new();
            for (i, coeff) in z {
                let s = &cc.by_dim[d][*i];
                let (sa, ea) = push_simplex(s, to_a)?;
                let (sb, eb) = push_simplex(s, to_b)?;
                let ia = *ca.index.get(d).and_then(|ix| ix.get(&sa)).ok_or_else(|| {
                    Error::NonSimplicialInclusion(format!("{s:?} maps to {sa:?}, not a simplex of A"))
                })?;
                let ib = *cb.index.get(d).and_then(|ix| ix.get(&sb)).ok_or_else(|| {
                    Error::NonSimplicialInclusion(format!("{s:?} maps to {sb:?}, not a simplex of B"))
                })?;
                col.push((ia, coeff.mul(&F::from_i64(ea))));
                col.push((na + ib, coeff.mul(&F::from_i64(-eb))));
            }
            col.sort_by_key(|(r, _)| *r);
            // merge duplicates
            let mut merged: Column<F> = Vec::with_capacity(col.len());
            for (r, v) in col {
                match merged.last_mut() {
                    Some((lr, lv)) if *lr == r => *lv = lv.add(&v),
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|(_, v)| !v.is_zero());
            images.push(merged);
        }
        let mut boundaries: Vec<Column<F>> = ca.boundary::<F>(d + 1);
        boundaries.extend(cb.boundary::<F>(d + 1).into_iter().map(|c| c.into_iter().map(|(r, v)| (na + r, v)).collect()));
        let base = reduce::rank(boundaries.clone());
        boundaries.extend(images);
        phi_rank[d] = reduce::rank(boundaries) - base;
    }
    let at = |h: &Vec<usize>, d: usize| h.get(d).copied().unwrap_or(0);
    let mut betti: Vec<usize> = (0..top)
        .map(|d| {
            let coker = at(&ha, d) + at(&hb, d) - phi_rank[d];
            let ker = if d == 0 { 0 } else { at(&hc, d - 1) - phi_rank[d - 1] };
            coker + ker
        })
        .collect();
    while betti.len() > 1 && betti.last() == Some(&0) {
        betti.pop();
    }
    Ok(betti)
}
