//! Charts of the slice cells and of the full space, and their assembly.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::ambient::{barycenter, is_ambient_simplex, staircase, tuple_point, Factor, FanVertex, Tuple};
use super::complex::{faces_of, SimplicialComplex};
use crate::cell::{bx_member, generator_pair, CellLabel, Membership, PLabel};
use crate::covector::PhaseVector;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::order_complex::delta_member;
use crate::Rational;

/// One chart: a named subcomplex of the ambient product, kept as tuple chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshChart {
    pub name: String,
    pub cell: Option<CellLabel>,
    pub m: u32,
    pub simplices: Vec<Vec<Tuple>>,
}

impl MeshChart {
    pub fn complex(&self) -> Result<SimplicialComplex> {
        assemble(std::slice::from_ref(self))
    }
}

fn check_resolution(m: u32) -> Result<()> {
    if m < 2 || !m.is_multiple_of(2) {
        return Err(Error::OddResolution(m));
    }
    Ok(())
}

/// `t` for a ring vertex on the upper half-circle path `r_0 … r_m`.
fn upper_t(v: FanVertex, m: u32) -> Option<Rational> {
    match v {
        FanVertex::Ring(i) if i <= m => Some(Rational::new(i as i64, m as i64)),
        _ => None,
    }
}

/// `t` for a ring vertex on the lower path `r_m … r_{2m} = r_0`.
fn lower_t(v: FanVertex, m: u32) -> Option<Rational> {
    match v {
        FanVertex::Ring(0) => Some(Rational::one()),
        FanVertex::Ring(i) if i >= m => Some(Rational::new(i as i64 - m as i64, m as i64)),
        _ => None,
    }
}

/// Triangulates `B(X)`: grid order polytope (Kuhn) times fans, staircase product.
pub fn mesh_cell(x: &CellLabel, m: u32) -> Result<MeshChart> {
    check_resolution(m)?;
    let mm = m as i64;
    let factors: Vec<Factor> = x
        .labels()
        .iter()
        .enumerate()
        .map(|(a, l)| match l {
            PLabel::One => Factor::point(a, FanVertex::Ring(0)),
            PLabel::MinusOne => Factor::point(a, FanVertex::Ring(m)),
            PLabel::U => Factor::path(a, m, 0, m),
            PLabel::L => Factor::path(a, m, mm, m),
            PLabel::Phi => Factor::fan(a, m),
        })
        .collect();
    let uppers: Vec<usize> = x.coords_with(PLabel::U).collect();
    let lowers: Vec<usize> = x.coords_with(PLabel::L).collect();
    let ok = |t: &Tuple| {
        uppers.iter().all(|&a| {
            lowers.iter().all(|&b| match (upper_t(t[a], m), lower_t(t[b], m)) {
                (Some(ta), Some(tb)) => tb <= ta,
                _ => false,
            })
        })
    };
    let simplices = staircase(x.n(), &factors).into_iter().filter(|s| s.iter().all(ok)).collect();
    Ok(MeshChart { name: x.to_string(), cell: Some(x.clone()), m, simplices })
}

/// Glues charts by exact vertex identification.
pub fn assemble(charts: &[MeshChart]) -> Result<SimplicialComplex> {
    let m = charts.first().map(|c| c.m).ok_or(Error::EmptyInput("no charts"))?;
    let mut tuples: BTreeSet<&Tuple> = BTreeSet::new();
    for c in charts {
        if c.m != m {
            return Err(Error::InvalidComplex(format!("chart {} has resolution {}, expected {m}", c.name, c.m)));
        }
        for s in &c.simplices {
            tuples.extend(s.iter());
        }
    }
    let n = tuples.iter().next().map(|t| t.len()).unwrap_or(0);
    let index: HashMap<&Tuple, usize> = tuples.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let coords = tuples.iter().map(|t| tuple_point(t, m)).collect();
    let facets = charts.iter().flat_map(|c| c.simplices.iter().map(|s| s.iter().map(|t| index[t]).collect())).collect();
    SimplicialComplex::with_coordinates(n, m, coords, facets)
}

/// Slice charts `B(X^(j,k))` for every ordered pair `j, k < n - 1`.
pub fn slice_charts(n: usize, m: u32, exec: Execution) -> Result<Vec<MeshChart>> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("slice needs n >= 3, got {n}")));
    }
    check_resolution(m)?;
    let labels: Vec<CellLabel> =
        (0..n - 1).flat_map(|j| (0..n - 1).map(move |k| (j, k))).map(|(j, k)| generator_pair(j, k, n)).collect::<Result<_>>()?;
    exec::map_slice(exec, &labels, |x| mesh_cell(x, m)).into_iter().collect()
}

/// Report of the interface check between charts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub charts: usize,
    pub simplices_checked: usize,
    pub pairs_checked: usize,
    pub failures: Vec<String>,
}

impl ValidityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn chart_faces(c: &MeshChart) -> BTreeSet<Vec<Tuple>> {
    let mut out = BTreeSet::new();
    for s in &c.simplices {
        let ids: Vec<usize> = (0..s.len()).collect();
        for f in faces_of(&ids) {
            out.insert(f.iter().map(|&i| s[i].clone()).collect::<Vec<_>>());
        }
    }
    out
}

/// Checks that every chart simplex is an ambient simplex, that every simplex
/// of a slice chart lies in its cell, and that any two charts induce the same
/// triangulation on their common region: the faces of chart `X` lying in
/// `B(Y)` are exactly the faces of chart `Y` lying in `B(X)`.
pub fn validate_slice_charts(charts: &[MeshChart], exec: Execution) -> ValidityReport {
    let faces: Vec<BTreeSet<Vec<Tuple>>> = exec::map_slice(exec, charts, chart_faces);
    let m = charts.first().map(|c| c.m).unwrap_or(2);
    let mut report = ValidityReport { charts: charts.len(), ..Default::default() };
    let bary: Vec<Vec<(Vec<Tuple>, crate::order_complex::ModelPoint)>> = exec::map_slice(exec, &faces, |fs| {
        fs.iter().map(|f| (f.clone(), barycenter(f, m))).collect()
    });
    for (c, fs) in charts.iter().zip(&bary) {
        report.simplices_checked += fs.len();
        for (f, b) in fs {
            if !is_ambient_simplex(f, m) {
                report.failures.push(format!("chart {}: {} is not an ambient simplex", c.name, show(f)));
            }
            if let Some(x) = &c.cell {
                if !bx_member(x, b, Membership::Closed) {
                    report.failures.push(format!("chart {}: barycenter {b} of {} outside the cell", c.name, show(f)));
                }
            }
        }
    }
    let pairs: Vec<(usize, usize)> =
        (0..charts.len()).flat_map(|i| (i + 1..charts.len()).map(move |j| (i, j))).collect();
    let results = exec::map_slice(exec, &pairs, |&(i, j)| {
        let (Some(x), Some(y)) = (&charts[i].cell, &charts[j].cell) else { return None };
        let from_x: BTreeSet<&Vec<Tuple>> =
            bary[i].iter().filter(|(_, b)| bx_member(y, b, Membership::Closed)).map(|(f, _)| f).collect();
        let from_y: BTreeSet<&Vec<Tuple>> =
            bary[j].iter().filter(|(_, b)| bx_member(x, b, Membership::Closed)).map(|(f, _)| f).collect();
        (from_x != from_y).then(|| {
            let witness = from_x.symmetric_difference(&from_y).next().map(|f| show(f)).unwrap_or_default();
            format!("charts {} and {} disagree on their common region, e.g. {witness}", charts[i].name, charts[j].name)
        })
    });
    report.pairs_checked = pairs.len();
    report.failures.extend(results.into_iter().flatten());
    report
}

fn show(s: &[Tuple]) -> String {
    let parts: Vec<String> =
        s.iter().map(|t| t.iter().map(FanVertex::to_string).collect::<Vec<_>>().join(" ")).collect();
    format!("[{}]", parts.join(" | "))
}

/// Slice complex and its validity report.
pub fn assemble_slice(n: usize, m: u32, exec: Execution) -> Result<(SimplicialComplex, ValidityReport)> {
    let charts = slice_charts(n, m, exec)?;
    let report = validate_slice_charts(&charts, exec);
    if let Some(f) = report.failures.first() {
        return Err(Error::Validity(f.clone()));
    }
    Ok((assemble(&charts)?, report))
}

/// Output of [`assemble_full`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FullAssembly {
    Glued(SimplicialComplex),
    /// Charts whose interfaces did not match, for a Mayer–Vietoris computation.
    Split { a: SimplicialComplex, b: SimplicialComplex, interface: SimplicialComplex, reason: String },
}

/// Charts of the full space for `n = 3`: the antipodal strata (a pair on the
/// circle, opposite, times a disc) and the stratum with all three coordinates
/// on the circle.
pub fn full_charts(m: u32) -> Result<Vec<MeshChart>> {
    check_resolution(m)?;
    let n = 3;
    let mut charts = Vec::new();
    for (a, b, c) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        let simplices = staircase(n, &[Factor::antipodal(a, b, m), Factor::fan(c, m)]);
        charts.push(MeshChart { name: format!("antipodal {a}{b} x disc {c}"), cell: None, m, simplices });
    }
    let ones = PhaseVector::ones(n);
    let simplices = staircase(n, &[Factor::ring(0, m), Factor::ring(1, m), Factor::ring(2, m)])
        .into_iter()
        .filter(|s| delta_member(&ones, &barycenter(s, m)).expect("unit vector"))
        .collect();
    charts.push(MeshChart { name: "circle^3 covectors".into(), cell: None, m, simplices });
    Ok(charts)
}

/// The full complex for `n = 2` (a `2m`-gon) or `n = 3`.
pub fn assemble_full(n: usize, m: u32) -> Result<FullAssembly> {
    check_resolution(m)?;
    match n {
        2 => {
            let simplices = staircase(2, &[Factor::antipodal(0, 1, m)]);
            let chart = MeshChart { name: "antipodal circle".into(), cell: None, m, simplices };
            Ok(FullAssembly::Glued(chart.complex()?))
        }
        3 => {
            let charts = full_charts(m)?;
            let bad: Vec<String> = charts
                .iter()
                .flat_map(|c| c.simplices.iter().filter(|s| !is_ambient_simplex(s, m)).map(move |s| format!("{}: {}", c.name, show(s))))
                .collect();
            let k = assemble(&charts)?;
            if let Some(reason) = bad.first() {
                let (a, b, interface) = full_regions(&k)?;
                return Ok(FullAssembly::Split { a, b, interface, reason: reason.clone() });
            }
            Ok(FullAssembly::Glued(k))
        }
        _ => Err(Error::InvalidParameter(format!("full assembly is limited to n in {{2, 3}}, got {n}"))),
    }
}

/// Splits the `n = 3` full complex into `A` (facets with the last coordinate
/// on the circle), `B` (facets over the antipodal pair on the first two
/// coordinates with the last one inside the disc) and their common part.
pub fn full_regions(k: &SimplicialComplex) -> Result<(SimplicialComplex, SimplicialComplex, SimplicialComplex)> {
    let on_circle = |v: usize| k.vertex(v).is_some_and(|p| p.coord(2).on_circle());
    let a = k.select_facets(|f| f.iter().all(|&v| on_circle(v)));
    let b = k.select_facets(|f| !f.iter().all(|&v| on_circle(v)));
    let c = a.intersection(&b)?;
    Ok((a, b, c))
}

/// Every simplex barycenter lies in the full space (`delta_member` for `1_n`).
pub fn full_carrier_failures(k: &SimplicialComplex, exec: Execution) -> Vec<String> {
    let ones = PhaseVector::ones(k.n());
    let all: Vec<Vec<usize>> = k.simplices_by_dim().into_iter().flatten().collect();
    exec::map_slice(exec, &all, |s| {
        let pts: Vec<_> = s.iter().map(|&v| k.coordinates()[v].clone()).collect();
        let b = point_barycenter(&pts, k.m());
        (!delta_member(&ones, &b).unwrap_or(false)).then(|| format!("simplex {s:?} has barycenter {b} outside"))
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Barycenter of vertices given as model points that are fan vertices of resolution `m`.
pub fn point_barycenter(pts: &[crate::order_complex::ModelPoint], m: u32) -> crate::order_complex::ModelPoint {
    let tuples: Vec<Tuple> = pts
        .iter()
        .map(|p| {
            p.coords()
                .iter()
                .map(|d| {
                    if d.on_circle() {
                        FanVertex::ring((d.angle().turns() * (2 * m as i64)).to_integer(), m)
                    } else {
                        FanVertex::Center
                    }
                })
                .collect()
        })
        .collect();
    barycenter(&tuples, m)
}

/// f-vectors of each chart, keyed by name; handy in reports.
pub fn chart_summary(charts: &[MeshChart]) -> BTreeMap<String, usize> {
    charts.iter().map(|c| (c.name.clone(), c.simplices.len())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell::generator;
    use crate::mesh::complex::{complex_isomorphic, VertexMapHint};

    #[test]
    fn order_polytope_cell() {
        let x: CellLabel = "U,L,1".parse().unwrap();
        let k = mesh_cell(&x, 2).unwrap().complex().unwrap();
        assert_eq!(k.f_vector(), vec![6, 9, 4]);
        assert_eq!(k.euler_characteristic(), 1);
        assert!(mesh_cell(&x, 3).is_err());
    }

    #[test]
    fn disc_fan_counts() {
        let k = MeshChart { name: "fan".into(), cell: None, m: 8, simplices: staircase(1, &[Factor::fan(0, 8)]) };
        let k = k.complex().unwrap();
        assert_eq!(k.f_vector(), vec![17, 32, 16]);
        assert_eq!(k.euler_characteristic(), 1);
    }

    #[test]
    fn slice_three_is_a_disc_with_antipodal_boundary() {
        for m in [2, 4] {
            let (k, report) = assemble_slice(3, m, Execution::Sequential).unwrap();
            assert_eq!(report.charts, 4);
            assert_eq!(k.dim(), 2);
            assert_eq!(k.euler_characteristic(), 1);
            assert!(k.pseudomanifold().unwrap().with_boundary);
            let b = k.boundary_subcomplex().unwrap();
            assert_eq!(b.num_vertices(), 2 * m as usize);
            for p in b.coordinates() {
                assert!(p.coord(0).on_circle() && p.coord(1) == p.coord(0).rotate(crate::phase::Angle::frac(1, 2)));
            }
            let FullAssembly::Glued(polygon) = assemble_full(2, m).unwrap() else { panic!() };
            assert!(complex_isomorphic(&b, &polygon, VertexMapHint::DropLast).isomorphic);
        }
    }

    #[test]
    fn slice_cells_carry() {
        let x = generator(0, 0, 4).unwrap();
        let c = mesh_cell(&x, 2).unwrap();
        for s in &c.simplices {
            assert!(bx_member(&x, &barycenter(s, 2), Membership::Closed));
        }
    }

    #[test]
    fn full_three_is_closed() {
        let FullAssembly::Glued(k) = assemble_full(3, 2).unwrap() else { panic!("split") };
        assert_eq!(k.dim(), 3);
        assert!(k.pseudomanifold().unwrap().closed);
        assert_eq!(k.euler_characteristic(), 0);
        assert!(full_carrier_failures(&k, Execution::Sequential).is_empty());
    }
}
