//! Hypothesis checker for gluing families of balls, and the end-to-end
//! verification of the slice decomposition.
//!
//! A family of `m` cells in ambient dimension `d` glues to a `d`-ball when
//! `m ≤ d + 1`, every `|J| > 1` intersection is a `(d - |J| + 1)`-ball, and
//! every such intersection lies in the boundary of each intersection obtained
//! by dropping one index. For cell labels, intersections are meets, dimensions
//! are `ν`, and boundary containment is strict lattice order.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cell::{
    self, all_labels, bx_member, bx_sample, generator_pair, meet, meet_all, nu, CellLabel, Membership, PLabel,
    Sampling,
};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::order_complex::{DiscPoint, ModelPoint};
use crate::phase::Angle;
use crate::Rational;

/// Oracles describing a candidate gluing family.
pub trait GluingFamily: Sync {
    type Cell: Clone + fmt::Display + Send + Sync;

    fn cells(&self) -> &[Self::Cell];
    fn ambient_dim(&self) -> i64;
    fn dim(&self, cell: &Self::Cell) -> i64;
    /// Intersection of the given cells; `Err` means the oracle is undefined there.
    fn meet(&self, cells: &[&Self::Cell]) -> Result<Self::Cell>;
    /// Whether `inner ⊆ ∂(outer)`.
    fn in_boundary(&self, inner: &Self::Cell, outer: &Self::Cell) -> bool;
}

/// Cells indexed by admissible labels, with `ν` as dimension.
#[derive(Clone, Debug)]
pub struct LabelFamily {
    cells: Vec<CellLabel>,
    d: i64,
}

impl LabelFamily {
    pub fn new(cells: Vec<CellLabel>, d: i64) -> Self {
        LabelFamily { cells, d }
    }
}

impl GluingFamily for LabelFamily {
    type Cell = CellLabel;

    fn cells(&self) -> &[CellLabel] {
        &self.cells
    }

    fn ambient_dim(&self) -> i64 {
        self.d
    }

    fn dim(&self, cell: &CellLabel) -> i64 {
        nu(cell)
    }

    fn meet(&self, cells: &[&CellLabel]) -> Result<CellLabel> {
        meet_all(cells.iter().copied())
    }

    fn in_boundary(&self, inner: &CellLabel, outer: &CellLabel) -> bool {
        inner.precedes(outer)
    }
}

/// Wraps a family and shifts every reported dimension; used for fault injection.
#[derive(Clone, Debug)]
pub struct DimOffset<F> {
    pub inner: F,
    pub offset: i64,
}

impl<F: GluingFamily> GluingFamily for DimOffset<F> {
    type Cell = F::Cell;

    fn cells(&self) -> &[F::Cell] {
        self.inner.cells()
    }

    fn ambient_dim(&self) -> i64 {
        self.inner.ambient_dim()
    }

    fn dim(&self, cell: &F::Cell) -> i64 {
        self.inner.dim(cell) + self.offset
    }

    fn meet(&self, cells: &[&F::Cell]) -> Result<F::Cell> {
        self.inner.meet(cells)
    }

    fn in_boundary(&self, inner: &F::Cell, outer: &F::Cell) -> bool {
        self.inner.in_boundary(inner, outer)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hypothesis {
    /// `m ≤ d + 1`.
    CellCount,
    /// The meet oracle failed.
    Meet,
    /// `dim ⋂_J = d - |J| + 1`.
    Dimension,
    /// `⋂_J ⊆ ∂ ⋂_{J - r}`.
    Boundary,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hypothesis::CellCount => "cell-count",
            Hypothesis::Meet => "meet",
            Hypothesis::Dimension => "dimension",
            Hypothesis::Boundary => "boundary",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// 0-based positions into the family's cell list.
    pub subset: Vec<usize>,
    pub hypothesis: Hypothesis,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingReport {
    pub subsets_checked: usize,
    pub violations: Vec<Violation>,
}

impl GluingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn members(mask: u64, m: usize) -> Vec<usize> {
    (0..m).filter(|i| mask >> i & 1 == 1).collect()
}

fn check_subset<F: GluingFamily>(f: &F, mask: u64) -> Vec<Violation> {
    let cells = f.cells();
    let idx = members(mask, cells.len());
    let pick = |ids: &[usize]| ids.iter().map(|&i| &cells[i]).collect::<Vec<_>>();
    let mut out = Vec::new();
    let whole = match f.meet(&pick(&idx)) {
        Ok(c) => c,
        Err(e) => {
            out.push(Violation { subset: idx, hypothesis: Hypothesis::Meet, detail: e.to_string() });
            return out;
        }
    };
    let want = f.ambient_dim() - idx.len() as i64 + 1;
    let got = f.dim(&whole);
    if got != want {
        out.push(Violation {
            subset: idx.clone(),
            hypothesis: Hypothesis::Dimension,
            detail: format!("meet {whole} has dimension {got}, expected {want}"),
        });
    }
    if idx.len() == 1 {
        return out;
    }
    for &r in &idx {
        let rest: Vec<usize> = idx.iter().copied().filter(|&i| i != r).collect();
        match f.meet(&pick(&rest)) {
            Ok(outer) if f.in_boundary(&whole, &outer) => {}
            Ok(outer) => out.push(Violation {
                subset: idx.clone(),
                hypothesis: Hypothesis::Boundary,
                detail: format!("dropping cell {r}: {whole} is not in the boundary of {outer}"),
            }),
            Err(e) => out.push(Violation { subset: rest, hypothesis: Hypothesis::Meet, detail: e.to_string() }),
        }
    }
    out
}

/// Checks every hypothesis over all non-empty subsets; singletons only carry
/// the dimension condition (each cell is a `d`-ball).
///
/// Families with more than 63 cells are rejected; the subset lattice would not be desk scale anyway.
pub fn check_gluing<F: GluingFamily>(f: &F, exec: Execution) -> Result<GluingReport> {
    let m = f.cells().len();
    if m > 63 {
        return Err(Error::InvalidParameter(format!("{m} cells is too many for exhaustive subset checks")));
    }
    let mut violations = Vec::new();
    if m as i64 > f.ambient_dim() + 1 {
        violations.push(Violation {
            subset: (0..m).collect(),
            hypothesis: Hypothesis::CellCount,
            detail: format!("{m} cells exceed d + 1 = {}", f.ambient_dim() + 1),
        });
    }
    let masks: Vec<u64> = (0..1u64 << m).filter(|mask| mask.count_ones() > 0).collect();
    let per_subset = exec::map_slice(exec, &masks, |&mask| check_subset(f, mask));
    violations.extend(per_subset.into_iter().flatten());
    Ok(GluingReport { subsets_checked: masks.len(), violations })
}

/// Outcome of one named claim inside [`verify_slice_claims`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimOutcome {
    pub claim: String,
    pub checked: u64,
    /// Number of failed instances; only the first few witnesses are kept.
    pub failures: u64,
    pub witnesses: Vec<String>,
    /// `true` when the claim had no applicable instance at this `n`.
    pub vacuous: bool,
}

const MAX_WITNESSES: usize = 5;

impl ClaimOutcome {
    fn new(claim: impl Into<String>) -> Self {
        ClaimOutcome { claim: claim.into(), checked: 0, failures: 0, witnesses: Vec::new(), vacuous: false }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    fn absorb(&mut self, other: ClaimOutcome) {
        self.checked += other.checked;
        self.failures += other.failures;
        for w in other.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w);
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceReport {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub claims: Vec<ClaimOutcome>,
}

impl SliceReport {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(ClaimOutcome::passed)
    }
}

/// `X^(j,k)` for the 0-based pair, `-1` at `j` when `j == k`.
fn gen(j: usize, k: usize, n: usize) -> CellLabel {
    generator_pair(j, k, n).expect("indices checked by caller")
}

/// `⋀_{j ∈ js} X^(j,k)`.
fn family_meet(js: &[usize], k: usize, n: usize) -> Result<CellLabel> {
    let gens: Vec<CellLabel> = js.iter().map(|&j| gen(j, k, n)).collect();
    meet_all(&gens)
}

fn subsets(size: usize, min: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..1u64 << size).filter(move |m| m.count_ones() as usize >= min).map(move |m| members(m, size))
}

fn fmt_subset(js: &[usize]) -> String {
    let parts: Vec<String> = js.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

/// Skeleton checks that need no sampling: gluing hypotheses for every slice family.
pub fn slice_combinatorics(n: usize, exec: Execution) -> Result<Vec<ClaimOutcome>> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("slice claims need n >= 3, got {n}")));
    }
    let free = n - 1;
    let d = 2 * n as i64 - 4;
    let mut out = Vec::new();

    let mut fam = ClaimOutcome::new("glue B_j from X^(j,k)");
    for j in 0..free {
        let cells = (0..free).map(|k| gen(j, k, n)).collect();
        let report = check_gluing(&LabelFamily::new(cells, d), exec)?;
        fam.record(report.passed(), || format!("j={j}: {:?}", report.violations.first()));
    }
    out.push(fam);

    let js: Vec<Vec<usize>> = subsets(free, 2).collect();
    let nus = exec::map_slice(exec, &js, |j_set| {
        let mut o = ClaimOutcome::new("");
        for k in 0..free {
            let want = 2 * n as i64 - 3 - j_set.len() as i64;
            match family_meet(j_set, k, n) {
                Ok(x) => o.record(nu(&x) == want, || format!("J={} k={k}: nu({x}) = {} != {want}", fmt_subset(j_set), nu(&x))),
                Err(e) => o.record(false, || format!("J={} k={k}: {e}", fmt_subset(j_set))),
            }
        }
        o
    });
    let mut nu_claim = ClaimOutcome::new("nu of J-meets is 2n-3-|J|");
    nus.into_iter().for_each(|o| nu_claim.absorb(o));
    out.push(nu_claim);

    let fams = exec::map_slice(exec, &js, |j_set| {
        let mut o = ClaimOutcome::new("");
        let cells: Result<Vec<CellLabel>> = (0..free).map(|k| family_meet(j_set, k, n)).collect();
        match cells.and_then(|c| check_gluing(&LabelFamily::new(c, d + 1 - j_set.len() as i64), Execution::Sequential)) {
            Ok(report) => o.record(report.passed(), || format!("J={}: {:?}", fmt_subset(j_set), report.violations.first())),
            Err(e) => o.record(false, || format!("J={}: {e}", fmt_subset(j_set))),
        }
        o
    });
    let mut glue_claim = ClaimOutcome::new("glue J-intersections from J-meets");
    fams.into_iter().for_each(|o| glue_claim.absorb(o));
    out.push(glue_claim);

    // Boundary condition for the top family, at the level of generating cells:
    // each piece of ⋂_J sits strictly below the matching piece of ⋂_{J-r}.
    let tops = exec::map_slice(exec, &js, |j_set| {
        let mut o = ClaimOutcome::new("");
        for &r in j_set {
            let rest: Vec<usize> = j_set.iter().copied().filter(|&j| j != r).collect();
            for k in 0..free {
                let ok = match (family_meet(j_set, k, n), family_meet(&rest, k, n)) {
                    (Ok(a), Ok(b)) => a.precedes(&b),
                    _ => false,
                };
                o.record(ok, || format!("J={} r={r} k={k}", fmt_subset(j_set)));
            }
        }
        o
    });
    let mut top_claim = ClaimOutcome::new("J-meets lie below (J-r)-meets");
    tops.into_iter().for_each(|o| top_claim.absorb(o));
    out.push(top_claim);
    Ok(out)
}

/// Exhaustive lattice checks on `𝒫ₙ`: the meet is the glb and `ν` is strictly monotone.
pub fn lattice_checks(n: usize, exec: Execution) -> Vec<ClaimOutcome> {
    let all = all_labels(n);
    let rows = exec::map_slice(exec, &all, |x| {
        let mut glb = ClaimOutcome::new("");
        let mut mono = ClaimOutcome::new("");
        for y in &all {
            let has_lower = all.iter().any(|z| z.leq(x) && z.leq(y));
            if has_lower {
                match meet(x, y) {
                    Ok(m) => glb.record(cell::is_glb(x, y, &m, &all), || format!("{x} ^ {y} = {m} is not the glb")),
                    Err(e) => glb.record(false, || format!("{x} ^ {y}: {e}")),
                }
            }
            if x.precedes(y) {
                mono.record(nu(x) < nu(y), || format!("{x} < {y} but nu {} >= {}", nu(x), nu(y)));
            }
        }
        (glb, mono)
    });
    let mut glb = ClaimOutcome::new("meet is the greatest lower bound");
    let mut mono = ClaimOutcome::new("nu strictly monotone");
    for (g, m) in rows {
        glb.absorb(g);
        mono.absorb(m);
    }
    vec![glb, mono]
}

/// A point of the slice model on a coarse grid, biased towards the circle so
/// that it lands on the lower-dimensional cells often.
pub fn grid_point<R: Rng + ?Sized>(n: usize, steps: u32, rng: &mut R) -> ModelPoint {
    let ring = 2 * steps.max(1) as i64;
    let mut coords: Vec<DiscPoint> = (0..n - 1)
        .map(|_| match rng.gen_range(0..8) {
            0 => DiscPoint::center(),
            1 => DiscPoint::new(Rational::new(1, 2), Angle::frac(rng.gen_range(0..ring), ring)).expect("radius 1/2"),
            _ => DiscPoint::boundary(Angle::frac(rng.gen_range(0..ring), ring)),
        })
        .collect();
    coords.push(DiscPoint::boundary(Angle::zero()));
    ModelPoint::new(coords)
}

fn in_all(labels: &[CellLabel], z: &ModelPoint) -> bool {
    labels.iter().all(|x| bx_member(x, z, Membership::Closed))
}

fn in_any(labels: &[CellLabel], z: &ModelPoint) -> bool {
    labels.iter().any(|x| bx_member(x, z, Membership::Closed))
}

/// A seed stream per (claim, instance) so results do not depend on scheduling.
fn rng_for(seed: u64, claim: u64, instance: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(claim << 32 | instance);
    rng
}

/// Draws a test point: a coarse grid point, or a point of one of `sources`.
fn mixed_point(n: usize, sources: &[CellLabel], rng: &mut ChaCha8Rng, i: u64) -> ModelPoint {
    match i % 3 {
        0 => grid_point(n, 2, rng),
        1 if !sources.is_empty() => {
            let x = &sources[rng.gen_range(0..sources.len())];
            bx_sample(x, rng, Sampling::Grid(2), Membership::Closed)
        }
        _ if !sources.is_empty() => {
            let x = &sources[rng.gen_range(0..sources.len())];
            bx_sample(x, rng, Sampling::Fine, Membership::Closed)
        }
        _ => grid_point(n, 2, rng),
    }
}

/// Sampled checks of boundary inclusion, the intersection identity, the union
/// identity for every `J`, and the routing dichotomy between them.
pub fn slice_sampled(n: usize, samples: u64, seed: u64, exec: Execution) -> Result<Vec<ClaimOutcome>> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("slice claims need n >= 3, got {n}")));
    }
    let free = n - 1;
    let mut out = Vec::new();

    // Boundary inclusion: X < Y, z ∈ B(X) ⇒ z ∈ B(Y) \ int B(Y).
    let all = all_labels(n);
    let pairs: Vec<(CellLabel, CellLabel)> = all
        .iter()
        .flat_map(|x| all.iter().filter(|y| x.precedes(y)).map(move |y| (x.clone(), y.clone())))
        .collect();
    let per_pair = exec::map_indexed(exec, pairs.len(), |p| {
        let (x, y) = &pairs[p];
        let mut rng = rng_for(seed, 1, p as u64);
        let mut o = ClaimOutcome::new("");
        for i in 0..samples {
            let sampling = if i % 2 == 0 { Sampling::Fine } else { Sampling::Grid(2) };
            let z = bx_sample(x, &mut rng, sampling, Membership::Closed);
            let ok = bx_member(y, &z, Membership::Closed) && !bx_member(y, &z, Membership::Interior);
            o.record(ok, || format!("{x} < {y}, z = {z}"));
        }
        o
    });
    let mut boundary = ClaimOutcome::new("boundary inclusion (sampled)");
    per_pair.into_iter().for_each(|o| boundary.absorb(o));
    out.push(boundary);

    // Intersection identity, both directions, for both index orders.
    let mut instances: Vec<(usize, Vec<usize>, bool)> = Vec::new();
    for j in 0..free {
        for j_set in subsets(free, 2) {
            instances.push((j, j_set.clone(), false));
            instances.push((j, j_set, true));
        }
    }
    let per_inst = exec::map_indexed(exec, instances.len(), |i| {
        let (j, ks, flipped) = &instances[i];
        let gens: Vec<CellLabel> = ks.iter().map(|&k| if *flipped { gen(k, *j, n) } else { gen(*j, k, n) }).collect();
        let mut o = ClaimOutcome::new("");
        let m = match meet_all(&gens) {
            Ok(m) => m,
            Err(e) => {
                o.record(false, || format!("j={j} K={}: {e}", fmt_subset(ks)));
                return o;
            }
        };
        let mut sources = gens.clone();
        sources.push(m.clone());
        let mut rng = rng_for(seed, 2, i as u64);
        for s in 0..samples {
            let z = mixed_point(n, &sources, &mut rng, s);
            let lhs = in_all(&gens, &z);
            let rhs = bx_member(&m, &z, Membership::Closed);
            o.record(lhs == rhs, || format!("j={j} K={} flipped={flipped}: z = {z}, all={lhs}, meet={rhs}", fmt_subset(ks)));
        }
        o
    });
    let mut inter = ClaimOutcome::new("intersection identity (sampled)");
    per_inst.into_iter().for_each(|o| inter.absorb(o));
    out.push(inter);

    // Union claim: ⋂_{j∈J} B_j = ⋃_k B(⋀_{j∈J} X^(j,k)).
    let js: Vec<Vec<usize>> = subsets(free, 2).collect();
    let pieces: Vec<Vec<CellLabel>> = (0..free).map(|j| (0..free).map(|k| gen(j, k, n)).collect()).collect();
    let per_j = exec::map_indexed(exec, js.len(), |i| {
        let j_set = &js[i];
        let mut o = ClaimOutcome::new("");
        let meets: Result<Vec<CellLabel>> = (0..free).map(|k| family_meet(j_set, k, n)).collect();
        let meets = match meets {
            Ok(m) => m,
            Err(e) => {
                o.record(false, || format!("J={}: {e}", fmt_subset(j_set)));
                return o;
            }
        };
        let mut sources = meets.clone();
        sources.extend(j_set.iter().flat_map(|&j| pieces[j].iter().cloned()));
        let mut rng = rng_for(seed, 3, i as u64);
        for s in 0..samples {
            let z = mixed_point(n, &sources, &mut rng, s);
            let lhs = j_set.iter().all(|&j| in_any(&pieces[j], &z));
            let rhs = in_any(&meets, &z);
            o.record(lhs == rhs, || format!("J={}: z = {z}, intersection={lhs}, union={rhs}", fmt_subset(j_set)));
        }
        o
    });
    let mut union = ClaimOutcome::new("union identity for every J (sampled)");
    per_j.into_iter().for_each(|o| union.absorb(o));
    out.push(union);

    out.push(routing_dichotomy(n, samples, seed, exec));
    Ok(out)
}

/// Samples `z ∈ B(X^(a,k)) ∩ B(X^(b,l))` with `U` at `a, b` and `L` at `k, l`.
fn sample_two_pieces(n: usize, a: usize, b: usize, k: usize, l: usize, rng: &mut ChaCha8Rng) -> ModelPoint {
    let grid = 6;
    let mut t = |hi: i64| Rational::new(rng.gen_range(0..=hi), grid);
    let ta = t(grid);
    let tb = t(grid);
    let tk = t((ta * grid).to_integer());
    let tl = t((tb * grid).to_integer());
    let mut labels = vec![PLabel::Phi; n];
    labels[n - 1] = PLabel::One;
    let mut coords = vec![DiscPoint::center(); n];
    coords[n - 1] = DiscPoint::boundary(Angle::zero());
    coords[a] = DiscPoint::boundary(Angle::new(ta / 2));
    coords[b] = DiscPoint::boundary(Angle::new(tb / 2));
    coords[k] = DiscPoint::boundary(Angle::new(Rational::new(1, 2) + tk / 2));
    coords[l] = DiscPoint::boundary(Angle::new(Rational::new(1, 2) + tl / 2));
    for (alpha, c) in coords.iter_mut().enumerate().take(n - 1) {
        if ![a, b, k, l].contains(&alpha) {
            let r = Rational::new(rng.gen_range(0..=4), 4);
            *c = DiscPoint::new(r, Angle::frac(rng.gen_range(0..12), 12)).expect("radius in [0,1]");
        }
    }
    ModelPoint::new(coords)
}

/// For distinct `k, l` outside `{a, b}`: a point of `B(X^(a,k)) ∩ B(X^(b,l))`
/// lies in the `k`-piece of the meet family when `t_k ≤ t_l`, and in the
/// `l`-piece otherwise. Needs `n ≥ 5`; vacuous below.
pub fn routing_dichotomy(n: usize, samples: u64, seed: u64, exec: Execution) -> ClaimOutcome {
    let free = n - 1;
    let mut quads = Vec::new();
    for a in 0..free {
        for b in 0..free {
            for k in 0..free {
                for l in 0..free {
                    let distinct = a != b && k != l && ![a, b].contains(&k) && ![a, b].contains(&l);
                    if distinct && a < b {
                        quads.push((a, b, k, l));
                    }
                }
            }
        }
    }
    let mut claim = ClaimOutcome::new("routing dichotomy (sampled)");
    if quads.is_empty() {
        claim.vacuous = true;
        return claim;
    }
    let per = exec::map_indexed(exec, quads.len(), |q| {
        let (a, b, k, l) = quads[q];
        let mut o = ClaimOutcome::new("");
        let k_piece = meet(&gen(a, k, n), &gen(b, k, n));
        let l_piece = meet(&gen(a, l, n), &gen(b, l, n));
        let (Ok(kp), Ok(lp)) = (k_piece, l_piece) else {
            o.record(false, || format!("meets undefined for ({a},{b},{k},{l})"));
            return o;
        };
        let mut rng = rng_for(seed, 4, q as u64);
        for _ in 0..samples {
            let z = sample_two_pieces(n, a, b, k, l, &mut rng);
            let tk = cell::lower_param(z.coord(k)).expect("on the lower arc");
            let tl = cell::lower_param(z.coord(l)).expect("on the lower arc");
            let target = if tk <= tl { &kp } else { &lp };
            let ok = bx_member(&gen(a, k, n), &z, Membership::Closed)
                && bx_member(&gen(b, l, n), &z, Membership::Closed)
                && bx_member(target, &z, Membership::Closed);
            o.record(ok, || format!("({a},{b},{k},{l}): z = {z} not in {target}"));
        }
        o
    });
    per.into_iter().for_each(|o| claim.absorb(o));
    claim
}

/// Runs the combinatorial and sampled layers for one `n`.
pub fn verify_slice_claims(n: usize, samples: u64, seed: u64, exec: Execution) -> Result<SliceReport> {
    let mut claims = slice_combinatorics(n, exec)?;
    if n <= 5 {
        claims.extend(lattice_checks(n, exec));
    }
    if samples > 0 {
        claims.extend(slice_sampled(n, samples, seed, exec)?);
    }
    Ok(SliceReport { n, samples, seed, claims })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell::generator;

    #[test]
    fn generator_family_glues() {
        let cells = (0..3).map(|k| gen(0, k, 4)).collect();
        let report = check_gluing(&LabelFamily::new(cells, 4), Execution::Sequential).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.subsets_checked, 7);
    }

    #[test]
    fn wrong_dimension_is_reported() {
        let cells = vec![generator(0, 1, 4).unwrap(), generator(0, 2, 4).unwrap()];
        // claimed ambient dimension 5 makes the pairwise meet (ν = 3) two short of d
        let report = check_gluing(&LabelFamily::new(cells, 5), Execution::Sequential).unwrap();
        // every subset is flagged: the cells themselves are 4-dimensional
        assert_eq!(report.violations.len(), 3);
        assert!(report.violations.iter().all(|v| v.hypothesis == Hypothesis::Dimension));
        assert_eq!(report.violations[2].subset, vec![0, 1]);
    }

    #[test]
    fn too_many_cells_is_reported() {
        let cells = all_labels(3);
        assert!(cells.len() as i64 > 2 + 1);
        let report = check_gluing(&LabelFamily::new(cells, 2), Execution::Sequential).unwrap();
        assert_eq!(report.violations[0].hypothesis, Hypothesis::CellCount);
    }

    #[test]
    fn corrupted_nu_fails_every_subset() {
        let cells = (0..3).map(|k| gen(1, k, 4)).collect();
        let f = DimOffset { inner: LabelFamily::new(cells, 4), offset: 1 };
        let report = check_gluing(&f, Execution::Sequential).unwrap();
        let dim_hits = report.violations.iter().filter(|v| v.hypothesis == Hypothesis::Dimension).count();
        assert_eq!(dim_hits, report.subsets_checked);
    }

    #[test]
    fn slice_claims_small() {
        for n in 3..=4 {
            let report = verify_slice_claims(n, 40, 11, Execution::default()).unwrap();
            assert!(report.passed(), "{report:#?}");
        }
    }

    #[test]
    fn routing_vacuous_below_five() {
        assert!(routing_dichotomy(4, 10, 0, Execution::Sequential).vacuous);
        let c = routing_dichotomy(5, 20, 3, Execution::Sequential);
        assert!(!c.vacuous && c.passed() && c.checked > 0, "{c:?}");
    }

    #[test]
    fn literal_routing_has_counterexamples() {
        // t_0 = 1/2, t_1 = 1, t_k = 0, t_l = 1: here t_k ≤ t_l, yet t_l > t_0
        // keeps the point out of the l-piece.
        let n = 5;
        let (a, b, k, l) = (0, 1, 2, 3);
        let z: ModelPoint = "1@1/4;1@1/2;1@1/2;1@0;1@0".parse().unwrap();
        assert!(bx_member(&gen(a, k, n), &z, Membership::Closed));
        assert!(bx_member(&gen(b, l, n), &z, Membership::Closed));
        let l_piece = meet(&gen(a, l, n), &gen(b, l, n)).unwrap();
        let k_piece = meet(&gen(a, k, n), &gen(b, k, n)).unwrap();
        assert!(!bx_member(&l_piece, &z, Membership::Closed));
        assert!(bx_member(&k_piece, &z, Membership::Closed));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = verify_slice_claims(4, 25, 99, Execution::Parallel).unwrap();
        let b = verify_slice_claims(4, 25, 99, Execution::Sequential).unwrap();
        assert_eq!(a, b);
    }
}
