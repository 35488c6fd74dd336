//! Named verification suites and their reports.
//!
//! Each suite corresponds to one acceptance criterion; `all` runs them in order.
//! Reports are deterministic for a given suite, parameters and seed: check
//! order is fixed and runtimes are only included on request.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::covector::{enumerate_sign_covectors, scan_zero_criterion, scan_zero_triples};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::gluing::{lattice_checks, routing_dichotomy, slice_combinatorics, slice_sampled, ClaimOutcome};
use crate::homology::{betti, mayer_vietoris_assemble, order_complex_of_poset, BettiReport, FieldKind};
use crate::mesh::{
    assemble_full, assemble_slice, complex_isomorphic, full_carrier_failures, full_regions, FullAssembly,
    SimplicialComplex, VertexMapHint,
};
use crate::order_complex::{gamma, gamma_inv, random_join_point, random_model_point};
use crate::phase::Angle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    LemmaZeroOracle,
    Pieces,
    SignSpheres,
    GammaRoundtrip,
    PnCombinatorics,
    SliceClaims,
    SliceMesh,
    BoundaryIdent,
    FullSphere,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::LemmaZeroOracle,
        Suite::Pieces,
        Suite::SignSpheres,
        Suite::GammaRoundtrip,
        Suite::PnCombinatorics,
        Suite::SliceClaims,
        Suite::SliceMesh,
        Suite::BoundaryIdent,
        Suite::FullSphere,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::LemmaZeroOracle => "lemma-zero-oracle",
            Suite::Pieces => "pieces",
            Suite::SignSpheres => "sign-spheres",
            Suite::GammaRoundtrip => "gamma-roundtrip",
            Suite::PnCombinatorics => "pn-combinatorics",
            Suite::SliceClaims => "slice-claims",
            Suite::SliceMesh => "slice-mesh",
            Suite::BoundaryIdent => "boundary-ident",
            Suite::FullSphere => "full-sphere",
            Suite::All => "all",
        }
    }

    /// Largest `n` the suite accepts, and its default.
    fn n_range(self) -> (usize, usize) {
        match self {
            Suite::LemmaZeroOracle | Suite::Pieces => (6, 5),
            Suite::SignSpheres => (6, 5),
            Suite::GammaRoundtrip => (10, 6),
            Suite::PnCombinatorics => (8, 7),
            Suite::SliceClaims => (5, 4),
            Suite::SliceMesh | Suite::BoundaryIdent => (4, 4),
            Suite::FullSphere => (3, 3),
            Suite::All => (usize::MAX, usize::MAX),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Suite parameters; `None` selects the suite's own default.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteParams {
    pub max_n: Option<usize>,
    /// Grid/mesh resolution. Enumeration suites use every even value up to it.
    pub m: Option<u32>,
    pub samples: Option<u64>,
    pub seed: u64,
    #[serde(skip)]
    pub exec: Execution,
    /// Include wall-clock runtimes (makes reports non-reproducible).
    #[serde(skip)]
    pub timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub suite: String,
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub runtime_ms: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub params: SuiteParams,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("suite: {}\nseed: {}\n", self.suite, self.seed);
        for c in &self.checks {
            out.push_str(&format!("[{}] {}/{}: {}", c.status, c.suite, c.name, c.detail));
            if let Some(ms) = c.runtime_ms {
                out.push_str(&format!(" ({ms} ms)"));
            }
            out.push('\n');
            for w in &c.witnesses {
                out.push_str(&format!("    witness: {w}\n"));
            }
        }
        out.push_str(&format!("result: {}\n", if self.passed { "PASS" } else { "FAIL" }));
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

struct Ctx<'a> {
    suite: Suite,
    params: &'a SuiteParams,
    checks: Vec<CheckResult>,
}

impl Ctx<'_> {
    fn push(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>, witnesses: Vec<String>, t: Instant) {
        self.checks.push(CheckResult {
            suite: self.suite.name().into(),
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
            witnesses,
            runtime_ms: self.params.timings.then(|| t.elapsed().as_millis()),
        });
    }

    fn skip(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(CheckResult {
            suite: self.suite.name().into(),
            name: name.into(),
            status: Status::Skip,
            detail: detail.into(),
            witnesses: Vec::new(),
            runtime_ms: None,
        });
    }

    fn error(&mut self, name: impl Into<String>, e: Error) {
        self.push(name, false, format!("error: {e}"), Vec::new(), Instant::now());
    }

    fn claim(&mut self, prefix: &str, c: ClaimOutcome, t: Instant) {
        let name = format!("{prefix}{}", c.claim);
        if c.vacuous {
            self.skip(name, "no applicable instance");
        } else {
            let detail = format!("{} instances, {} failures", c.checked, c.failures);
            self.push(name, c.passed() && c.checked > 0, detail, c.witnesses, t);
        }
    }

    fn exec(&self) -> Execution {
        self.params.exec
    }
}

fn max_n(suite: Suite, params: &SuiteParams) -> Result<usize> {
    let (cap, default) = suite.n_range();
    match params.max_n {
        None => Ok(default),
        Some(n) if suite == Suite::All || n <= cap => Ok(n),
        Some(n) => Err(Error::InvalidParameter(format!("suite {suite} supports n up to {cap}, got {n}"))),
    }
}

fn resolutions(params: &SuiteParams, default: &[u32]) -> Result<Vec<u32>> {
    match params.m {
        None => Ok(default.to_vec()),
        Some(m) if m >= 2 && m.is_multiple_of(2) => Ok((1..=m / 2).map(|k| 2 * k).collect()),
        Some(m) => Err(Error::OddResolution(m)),
    }
}

fn show_betti(b: &BettiReport) -> String {
    let v: Vec<String> = b.betti.iter().map(usize::to_string).collect();
    format!("({})", v.join(","))
}

/// Betti over both fields; passes when both equal `expected`.
fn betti_both(k: &SimplicialComplex, expected: &[usize]) -> (bool, String) {
    let q = betti(k, FieldKind::Rationals);
    let f2 = betti(k, FieldKind::Gf2);
    let ok = q.betti == expected && f2.betti == expected && q.euler == crate::homology::betti_euler(&q.betti);
    (ok, format!("betti q={} f2={} euler={}", show_betti(&q), show_betti(&f2), q.euler))
}

fn sphere_betti(d: usize) -> Vec<usize> {
    let mut b = vec![0; d + 1];
    b[0] += 1;
    b[d] += 1;
    b
}

fn ball_betti(d: usize) -> Vec<usize> {
    let mut b = vec![0; d + 1];
    b[0] = 1;
    b
}

fn zero_oracle(ctx: &mut Ctx) -> Result<()> {
    let top = max_n(ctx.suite, ctx.params)?;
    for m in resolutions(ctx.params, &[2, 4, 6, 8])? {
        for n in 2..=top {
            let t = Instant::now();
            let s = scan_zero_criterion(n, m, ctx.exec())?;
            let detail = format!("{} vectors, {} mismatches", s.checked, s.failures);
            ctx.push(format!("n={n} m={m}"), s.failures == 0, detail, s.first_failure.into_iter().collect(), t);
        }
    }
    Ok(())
}

fn pieces(ctx: &mut Ctx) -> Result<()> {
    let top = max_n(ctx.suite, ctx.params)?;
    for m in resolutions(ctx.params, &[2, 4, 6, 8])? {
        for n in 3..=top {
            let t = Instant::now();
            let s = scan_zero_triples(n, m, ctx.exec())?;
            let detail = format!("{} covectors with support >= 3, {} without a triple", s.relevant, s.failures);
            ctx.push(format!("n={n} m={m}"), s.failures == 0, detail, s.first_failure.into_iter().collect(), t);
        }
    }
    Ok(())
}

/// Order complex of the nonzero sign covectors of `1_n`.
pub fn sign_covector_complex(n: usize) -> Result<SimplicialComplex> {
    let cov = enumerate_sign_covectors(n)?;
    order_complex_of_poset(cov.len(), |a, b| cov[a].leq(&cov[b]))
}

fn sign_spheres(ctx: &mut Ctx) -> Result<()> {
    let top = max_n(ctx.suite, ctx.params)?;
    for n in 3..=top {
        let t = Instant::now();
        let k = sign_covector_complex(n)?;
        let (ok, detail) = betti_both(&k, &sphere_betti(n - 2));
        ctx.push(format!("n={n}"), ok, format!("{} covectors, {detail}", k.num_vertices()), Vec::new(), t);
    }
    Ok(())
}

fn gamma_roundtrip(ctx: &mut Ctx) -> Result<()> {
    let top = max_n(ctx.suite, ctx.params)?;
    let samples = ctx.params.samples.unwrap_or(10_000);
    let seed = ctx.params.seed;
    let t = Instant::now();
    let dims: Vec<usize> = (1..=top).collect();
    let results = exec::map_slice(ctx.exec(), &dims, |&n| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64) << 40);
        let mut failures = Vec::new();
        for _ in 0..samples {
            let p = random_join_point(&mut rng, n);
            if gamma_inv(&gamma(&p)) != p {
                failures.push(format!("join point {p}"));
            }
            let z = random_model_point(&mut rng, n);
            if gamma(&gamma_inv(&z)) != z {
                failures.push(format!("model point {z}"));
            }
        }
        failures
    });
    let failures: Vec<String> = results.into_iter().flatten().collect();
    let detail = format!("{samples} samples per direction for each n=1..={top}, {} failures", failures.len());
    ctx.push("round trips", failures.is_empty(), detail, failures.into_iter().take(5).collect(), t);
    Ok(())
}

fn pn_combinatorics(ctx: &mut Ctx) -> Result<()> {
    let top = max_n(ctx.suite, ctx.params)?;
    for n in 3..=top {
        let t = Instant::now();
        for c in slice_combinatorics(n, ctx.exec())? {
            ctx.claim(&format!("n={n} "), c, t);
        }
        if n <= 5 {
            let t = Instant::now();
            for c in lattice_checks(n, ctx.exec()) {
                ctx.claim(&format!("n={n} "), c, t);
            }
        }
    }
    Ok(())
}

fn slice_claims(ctx: &mut Ctx) -> Result<()> {
    let top = max_n(ctx.suite, ctx.params)?.min(4);
    let samples = ctx.params.samples.unwrap_or(1000);
    for n in 3..=top {
        let t = Instant::now();
        for c in slice_sampled(n, samples, ctx.params.seed, ctx.exec())? {
            ctx.claim(&format!("n={n} "), c, t);
        }
    }
    // The routing dichotomy first has instances at n = 5.
    let t = Instant::now();
    let c = routing_dichotomy(5, samples, ctx.params.seed, ctx.exec());
    ctx.claim("n=5 ", c, t);
    Ok(())
}

fn slice_mesh_cases(params: &SuiteParams, top: usize) -> Result<Vec<(usize, u32)>> {
    let mut cases = Vec::new();
    if top >= 3 {
        for m in resolutions(params, &[2, 4])? {
            cases.push((3, m));
        }
    }
    if top >= 4 {
        let m = params.m.unwrap_or(2);
        cases.push((4, m));
    }
    Ok(cases)
}

fn slice_mesh(ctx: &mut Ctx) -> Result<()> {
    let top = max_n(ctx.suite, ctx.params)?;
    for (n, m) in slice_mesh_cases(ctx.params, top)? {
        let t = Instant::now();
        let name = format!("slice n={n} m={m}");
        match assemble_slice(n, m, ctx.exec()) {
            Ok((k, report)) => {
                let (ok, detail) = betti_both(&k, &ball_betti(2 * n - 4));
                let pm = k.pseudomanifold()?;
                let euler_ok = k.euler_characteristic() == 1;
                let detail = format!(
                    "{} charts, {} chart pairs valid, f={:?}, {detail}, ridges in <=2 facets: {}",
                    report.charts,
                    report.pairs_checked,
                    k.f_vector(),
                    pm.with_boundary
                );
                ctx.push(name, ok && euler_ok && pm.with_boundary && k.dim() == 2 * n as isize - 4, detail, Vec::new(), t);
            }
            Err(e) => ctx.error(name, e),
        }
    }
    Ok(())
}

fn full_complex(n: usize, m: u32) -> Result<SimplicialComplex> {
    match assemble_full(n, m)? {
        FullAssembly::Glued(k) => Ok(k),
        FullAssembly::Split { reason, .. } => Err(Error::Validity(reason)),
    }
}

fn boundary_ident(ctx: &mut Ctx) -> Result<()> {
    let top = max_n(ctx.suite, ctx.params)?;
    if top >= 3 {
        for m in resolutions(ctx.params, &[2, 4])? {
            let t = Instant::now();
            let (k, _) = assemble_slice(3, m, ctx.exec())?;
            let b = k.boundary_subcomplex()?;
            let polygon = full_complex(2, m)?;
            let iso = complex_isomorphic(&b, &polygon, VertexMapHint::DropLast);
            let detail = match &iso.mismatch {
                None => format!("boundary has {} vertices and matches the {}-gon under drop-last", b.num_vertices(), 2 * m),
                Some(why) => why.clone(),
            };
            ctx.push(format!("n=3 m={m}"), iso.isomorphic, detail, Vec::new(), t);
        }
    }
    if top >= 4 {
        let m = ctx.params.m.unwrap_or(2);
        let t = Instant::now();
        let (k, _) = assemble_slice(4, m, ctx.exec())?;
        let b = k.boundary_subcomplex()?;
        let (ok, detail) = betti_both(&b, &sphere_betti(3));
        let closed = b.pseudomanifold()?.closed;
        ctx.push(format!("n=4 m={m}"), ok && closed, format!("boundary {detail}, closed pseudomanifold: {closed}"), Vec::new(), t);
    }
    Ok(())
}

fn full_sphere(ctx: &mut Ctx) -> Result<()> {
    let top = max_n(ctx.suite, ctx.params)?;
    for m in resolutions(ctx.params, &[2, 4])? {
        let t = Instant::now();
        let k = full_complex(2, m)?;
        let (ok, detail) = betti_both(&k, &[1, 1]);
        ctx.push(format!("n=2 m={m}"), ok && k.pseudomanifold()?.closed, format!("{}-gon, {detail}", 2 * m), Vec::new(), t);
    }
    if top < 3 {
        return Ok(());
    }
    let m = ctx.params.m.unwrap_or(2);
    let t = Instant::now();
    let k = match assemble_full(3, m)? {
        FullAssembly::Glued(k) => k,
        FullAssembly::Split { a, b, interface, reason } => {
            let to_a = interface.vertex_map_into(&a)?;
            let to_b = interface.vertex_map_into(&b)?;
            for field in [FieldKind::Rationals, FieldKind::Gf2] {
                let r = mayer_vietoris_assemble(&a, &b, &interface, &to_a, &to_b, field)?;
                ctx.push(format!("n=3 m={m} {field} (fallback)"), r.betti == sphere_betti(3), format!("{r}; {reason}"), Vec::new(), t);
            }
            return Ok(());
        }
    };
    let (ok, detail) = betti_both(&k, &sphere_betti(3));
    ctx.push(format!("n=3 m={m} homology"), ok, format!("f={:?}, {detail}", k.f_vector()), Vec::new(), t);

    let t = Instant::now();
    let pm = k.pseudomanifold()?;
    ctx.push(format!("n=3 m={m} closed pseudomanifold"), pm.closed, format!("{} ridges, max incidence {}", pm.ridges, pm.max_incidence), Vec::new(), t);

    let t = Instant::now();
    let bad = full_carrier_failures(&k, ctx.exec());
    ctx.push(format!("n=3 m={m} carriers"), bad.is_empty(), format!("{} simplices outside the space", bad.len()), bad.into_iter().take(5).collect(), t);

    let t = Instant::now();
    let (a, b, c) = full_regions(&k)?;
    let to_a = c.vertex_map_into(&a)?;
    let to_b = c.vertex_map_into(&b)?;
    let mut mv_ok = true;
    let mut parts = Vec::new();
    for field in [FieldKind::Rationals, FieldKind::Gf2] {
        let r = mayer_vietoris_assemble(&a, &b, &c, &to_a, &to_b, field)?;
        mv_ok &= r.betti == sphere_betti(3);
        parts.push(r.to_string());
    }
    let pieces = format!(
        "A {} B {} interface {}",
        show_betti(&betti(&a, FieldKind::Rationals)),
        show_betti(&betti(&b, FieldKind::Rationals)),
        show_betti(&betti(&c, FieldKind::Rationals))
    );
    ctx.push(format!("n=3 m={m} mayer-vietoris"), mv_ok, format!("{pieces}; {}", parts.join("; ")), Vec::new(), t);

    // The fiber over z_3 = 1 is the slice complex, and rotating every
    // coordinate by one ring step is a symmetry.
    let t = Instant::now();
    let one = crate::order_complex::DiscPoint::boundary(Angle::zero());
    let fiber = k.induced(|v| k.coordinates()[v].coord(2) == one);
    let (slice, _) = assemble_slice(3, m, ctx.exec())?;
    let iso = complex_isomorphic(&fiber, &slice, VertexMapHint::Identity);
    ctx.push(format!("n=3 m={m} slice fiber"), iso.isomorphic, iso.mismatch.unwrap_or_else(|| "fiber equals the slice complex".into()), Vec::new(), t);

    let t = Instant::now();
    let step = Angle::frac(1, 2 * m as i64);
    let rot = complex_isomorphic(&k, &k, VertexMapHint::Rotate(step));
    ctx.push(format!("n=3 m={m} rotation symmetry"), rot.isomorphic, rot.mismatch.unwrap_or_else(|| format!("invariant under rotation by {}", step.turns())), Vec::new(), t);
    Ok(())
}

/// Runs a suite (or all of them) and assembles the report.
pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<VerificationReport> {
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut checks = Vec::new();
    for s in suites {
        let mut ctx = Ctx { suite: s, params, checks: Vec::new() };
        let sub = SuiteParams { max_n: params.max_n.map(|n| n.min(s.n_range().0)), ..params.clone() };
        let params_for = if suite == Suite::All { &sub } else { params };
        ctx.params = params_for;
        let outcome = match s {
            Suite::LemmaZeroOracle => zero_oracle(&mut ctx),
            Suite::Pieces => pieces(&mut ctx),
            Suite::SignSpheres => sign_spheres(&mut ctx),
            Suite::GammaRoundtrip => gamma_roundtrip(&mut ctx),
            Suite::PnCombinatorics => pn_combinatorics(&mut ctx),
            Suite::SliceClaims => slice_claims(&mut ctx),
            Suite::SliceMesh => slice_mesh(&mut ctx),
            Suite::BoundaryIdent => boundary_ident(&mut ctx),
            Suite::FullSphere => full_sphere(&mut ctx),
            Suite::All => unreachable!("expanded above"),
        };
        match outcome {
            Ok(()) => {}
            Err(e @ (Error::InvalidParameter(_) | Error::OddResolution(_))) => return Err(e),
            Err(e) => ctx.error("suite", e),
        }
        checks.extend(ctx.checks);
    }
    let passed = checks.iter().all(|c| c.status != Status::Fail);
    Ok(VerificationReport { suite: suite.name().into(), seed: params.seed, params: params.clone(), checks, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!(matches!("nope".parse::<Suite>(), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn out_of_range_is_rejected() {
        let params = SuiteParams { max_n: Some(5), ..Default::default() };
        assert!(run_suite(Suite::FullSphere, &params).is_err());
        let params = SuiteParams { m: Some(3), ..Default::default() };
        assert!(run_suite(Suite::SliceMesh, &params).is_err());
    }

    #[test]
    fn small_suites_pass_and_are_deterministic() {
        let params = SuiteParams { max_n: Some(3), m: Some(2), samples: Some(50), seed: 4, ..Default::default() };
        for s in [Suite::LemmaZeroOracle, Suite::SignSpheres, Suite::GammaRoundtrip, Suite::SliceMesh] {
            let a = run_suite(s, &params).unwrap();
            assert!(a.passed, "{}", a.to_text());
            let seq = SuiteParams { exec: Execution::Sequential, ..params.clone() };
            let b = run_suite(s, &seq).unwrap();
            assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
        }
    }
}
