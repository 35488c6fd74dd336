//! Sparse column reduction.
//!
//! Columns are reduced left to right against earlier pivots (lowest non-zero
//! row), which is deterministic and keeps boundary matrices sparse in practice.
//! Optionally records the column operations so kernel vectors can be read off.

use std::collections::HashMap;

use super::field::Field;

/// A sparse column: `(row, value)` pairs sorted by row, no zeros.
pub type Column<F> = Vec<(usize, F)>;

/// `a + c·b` for sorted sparse columns.
pub fn axpy<F: Field>(a: &Column<F>, c: &F, b: &Column<F>) -> Column<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, c.mul(&b[j].1)));
            j += 1;
        } else {
            let v = a[i].1.add(&c.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct Reduction<F> {
    /// Reduced columns; zero columns are empty.
    pub reduced: Vec<Column<F>>,
    /// Column operations (`R = M·V`), when tracked.
    pub v: Option<Vec<Column<F>>>,
}

impl<F: Field> Reduction<F> {
    pub fn rank(&self) -> usize {
        self.reduced.iter().filter(|c| !c.is_empty()).count()
    }

    /// A basis of the null space, as combinations of the original columns.
    pub fn kernel(&self) -> Vec<Column<F>> {
        let v = self.v.as_ref().expect("kernel needs tracked column operations");
        self.reduced.iter().zip(v).filter(|(r, _)| r.is_empty()).map(|(_, v)| v.clone()).collect()
    }
}

pub fn reduce<F: Field>(columns: Vec<Column<F>>, track: bool) -> Reduction<F> {
    let mut pivot_of: HashMap<usize, usize> = HashMap::new();
    let mut reduced: Vec<Column<F>> = Vec::with_capacity(columns.len());
    let mut v: Vec<Column<F>> = Vec::new();
    for (j, mut col) in columns.into_iter().enumerate() {
        let mut ops: Column<F> = if track { vec![(j, F::one())] } else { Vec::new() };
        while let Some((low, val)) = col.last().cloned() {
            let Some(&p) = pivot_of.get(&low) else { break };
            let pv = &reduced[p].last().expect("pivot column non-empty").1;
            let c = val.mul(&pv.inv()).neg();
            col = axpy(&col, &c, &reduced[p]);
            if track {
                ops = axpy(&ops, &c, &v[p]);
            }
        }
        if let Some((low, _)) = col.last() {
            pivot_of.insert(*low, j);
        }
        reduced.push(col);
        if track {
            v.push(ops);
        }
    }
    Reduction { reduced, v: track.then_some(v) }
}

pub fn rank<F: Field>(columns: Vec<Column<F>>) -> usize {
    reduce(columns, false).rank()
}

#[cfg(test)]
mod tests {
    use super::super::field::{Gf2, Q};
    use super::*;

    fn col(v: &[(usize, i64)]) -> Column<Q> {
        v.iter().map(|&(r, x)| (r, Q::from_i64(x))).collect()
    }

    #[test]
    fn ranks() {
        // boundary of a triangle: rank 2 over both fields
        let d1 = vec![col(&[(0, -1), (1, 1)]), col(&[(0, -1), (2, 1)]), col(&[(1, -1), (2, 1)])];
        let r = reduce(d1.clone(), true);
        assert_eq!(r.rank(), 2);
        let k = r.kernel();
        assert_eq!(k.len(), 1);
        let gf: Vec<Column<Gf2>> =
            d1.iter().map(|c| c.iter().map(|(i, x)| (*i, Gf2(!x.is_zero()))).collect()).collect();
        assert_eq!(rank(gf), 2);
    }

    #[test]
    fn torsion_shows_up_only_mod_two() {
        // a single column with entry 2
        assert_eq!(rank(vec![col(&[(0, 2)])]), 1);
        assert_eq!(rank::<Gf2>(vec![vec![]]), 0);
    }
}
