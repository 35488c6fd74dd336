//! Acceptance suite: one line per criterion, non-zero exit on any failure.
//!
//! Runs without the libtest harness so the summary is always printed.
//! Tolerances are exact (all predicates are rational); runtime limits are
//! pinned below and measured on the build profile in use.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use phasesphere_core::covector::{scan_zero_criterion, scan_zero_triples};
use phasesphere_core::gluing::{lattice_checks, slice_combinatorics, slice_sampled, ClaimOutcome};
use phasesphere_core::homology::{betti, FieldKind};
use phasesphere_core::mesh::{
    assemble_full, assemble_slice, complex_isomorphic, FullAssembly, SimplicialComplex, VertexMapHint,
};
use phasesphere_core::verify::{run_suite, sign_covector_complex, Suite, SuiteParams};
use phasesphere_core::Execution;

const SEED: u64 = 20_240_601;
const RESOLUTIONS: [u32; 4] = [2, 4, 6, 8];
const MIN_SAMPLES: u64 = 1_000;
const ROUNDTRIP_SAMPLES: u64 = 10_000;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn both_fields(k: &SimplicialComplex, expected: &[usize], what: &str) -> Result<(), String> {
    for field in [FieldKind::Rationals, FieldKind::Gf2] {
        let r = betti(k, field);
        ensure(r.betti == expected, format!("{what}: {r}, expected {expected:?}"))?;
        ensure(r.euler == k.euler_characteristic(), format!("{what}: euler mismatch {r}"))?;
    }
    Ok(())
}

fn sphere(d: usize) -> Vec<usize> {
    let mut b = vec![0; d + 1];
    b[0] += 1;
    b[d] += 1;
    b
}

fn ball(d: usize) -> Vec<usize> {
    let mut b = vec![0; d + 1];
    b[0] = 1;
    b
}

fn suite_passes(suite: Suite, params: SuiteParams) -> Result<(), String> {
    let r = run_suite(suite, &params).map_err(|e| e.to_string())?;
    let failed: Vec<String> = r.failed().map(|c| format!("{}: {}", c.name, c.detail)).collect();
    ensure(r.passed, format!("suite {suite} failed: {}", failed.join("; ")))
}

fn claims_clean(claims: &[ClaimOutcome], min_checked: u64) -> Result<u64, String> {
    let mut total = 0;
    for c in claims.iter().filter(|c| !c.vacuous) {
        ensure(c.passed(), format!("{}: {} failures, e.g. {:?}", c.claim, c.failures, c.witnesses.first()))?;
        ensure(c.checked >= min_checked, format!("{}: only {} instances", c.claim, c.checked))?;
        total += c.checked;
    }
    Ok(total)
}

fn zero_oracle() -> Outcome {
    let mut total = 0u64;
    for m in RESOLUTIONS {
        for n in 2..=5usize {
            let s = scan_zero_criterion(n, m, Execution::default()).map_err(|e| e.to_string())?;
            ensure(s.checked == u64::from(m + 1).pow(n as u32), format!("n={n} m={m}: grid not exhaustive"))?;
            ensure(s.failures == 0, format!("n={n} m={m}: {} mismatches, first {:?}", s.failures, s.first_failure))?;
            total += s.checked;
        }
    }
    suite_passes(Suite::LemmaZeroOracle, SuiteParams { max_n: Some(5), seed: SEED, ..Default::default() })?;
    Ok(format!("{total} grid vectors, 0 mismatches"))
}

fn zero_triples() -> Outcome {
    let mut relevant = 0u64;
    for m in RESOLUTIONS {
        for n in 3..=5usize {
            let s = scan_zero_triples(n, m, Execution::default()).map_err(|e| e.to_string())?;
            ensure(s.failures == 0, format!("n={n} m={m}: {} without a triple, first {:?}", s.failures, s.first_failure))?;
            relevant += s.relevant;
        }
    }
    ensure(relevant > 0, "no covector with support >= 3 was found")?;
    suite_passes(Suite::Pieces, SuiteParams { max_n: Some(5), seed: SEED, ..Default::default() })?;
    Ok(format!("{relevant} covectors with support >= 3, every one has a zero triple"))
}

fn sign_spheres() -> Outcome {
    let mut sizes = Vec::new();
    for n in 3..=5 {
        let k = sign_covector_complex(n).map_err(|e| e.to_string())?;
        both_fields(&k, &sphere(n - 2), &format!("n={n}"))?;
        sizes.push(k.num_vertices());
    }
    // Nonzero sign covectors of the all-ones vector: 3^n minus the all-zero
    // vector, the n single-support vectors and the two constant-sign vectors
    // of each support (those with support >= 2 missing one sign).
    for (n, &size) in (3u32..).zip(&sizes) {
        let expected: usize = (2..=n as usize).map(|s| binom(n as usize, s) * ((1usize << s) - 2)).sum();
        ensure(size == expected, format!("n={n}: {size} covectors, expected {expected}"))?;
    }
    Ok(format!("order complexes on {sizes:?} covectors are spheres of dims 1,2,3 over q and f2"))
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn gamma_roundtrip() -> Outcome {
    let params = SuiteParams { max_n: Some(6), samples: Some(ROUNDTRIP_SAMPLES), seed: SEED, ..Default::default() };
    suite_passes(Suite::GammaRoundtrip, params)?;
    Ok(format!("{ROUNDTRIP_SAMPLES} samples per direction for each n <= 6, 0 failures"))
}

fn pn_combinatorics() -> Outcome {
    let mut instances = 0;
    for n in 3..=7 {
        let claims = slice_combinatorics(n, Execution::default()).map_err(|e| e.to_string())?;
        ensure(claims.iter().all(|c| !c.vacuous), format!("n={n}: a combinatorial claim had no instances"))?;
        instances += claims_clean(&claims, 1)?;
        if n <= 5 {
            instances += claims_clean(&lattice_checks(n, Execution::default()), 1)?;
        }
    }
    Ok(format!("{instances} combinatorial instances for n=3..=7, glb exhaustive for n<=5"))
}

fn sampled_geometry() -> Outcome {
    let mut instances = 0;
    for n in 3..=4 {
        let claims = slice_sampled(n, MIN_SAMPLES, SEED, Execution::default()).map_err(|e| e.to_string())?;
        instances += claims_clean(&claims, MIN_SAMPLES)?;
    }
    suite_passes(Suite::SliceClaims, SuiteParams { samples: Some(MIN_SAMPLES), seed: SEED, ..Default::default() })?;
    Ok(format!("{instances} sampled instances (>= {MIN_SAMPLES} per claim), 0 violations"))
}

fn slice_ball() -> Outcome {
    let mut parts = Vec::new();
    for (n, m) in [(3, 2), (3, 4), (4, 2)] {
        let (k, report) = assemble_slice(n, m, Execution::default()).map_err(|e| e.to_string())?;
        ensure(report.passed(), format!("n={n} m={m}: {:?}", report.failures.first()))?;
        ensure(k.dim() == 2 * n as isize - 4, format!("n={n} m={m}: dimension {}", k.dim()))?;
        both_fields(&k, &ball(2 * n - 4), &format!("n={n} m={m}"))?;
        ensure(k.euler_characteristic() == 1, format!("n={n} m={m}: euler {}", k.euler_characteristic()))?;
        ensure(k.pseudomanifold().map_err(|e| e.to_string())?.with_boundary, "ridge in three facets")?;
        parts.push(format!("n={n} m={m}: {} facets", k.facets().len()));
    }
    Ok(parts.join(", "))
}

fn full(n: usize, m: u32) -> Result<SimplicialComplex, String> {
    match assemble_full(n, m).map_err(|e| e.to_string())? {
        FullAssembly::Glued(k) => Ok(k),
        FullAssembly::Split { reason, .. } => Err(format!("full({n},{m}) did not glue: {reason}")),
    }
}

fn boundary_ident() -> Outcome {
    for m in [2, 4] {
        let (k, _) = assemble_slice(3, m, Execution::default()).map_err(|e| e.to_string())?;
        let b = k.boundary_subcomplex().map_err(|e| e.to_string())?;
        let iso = complex_isomorphic(&b, &full(2, m)?, VertexMapHint::DropLast);
        ensure(iso.isomorphic, format!("m={m}: {:?}", iso.mismatch))?;
    }
    let (k, _) = assemble_slice(4, 2, Execution::default()).map_err(|e| e.to_string())?;
    let b = k.boundary_subcomplex().map_err(|e| e.to_string())?;
    both_fields(&b, &sphere(3), "boundary of slice(4,2)")?;
    ensure(b.pseudomanifold().map_err(|e| e.to_string())?.closed, "boundary of slice(4,2) is not closed")?;
    let full3 = betti(&full(3, 2)?, FieldKind::Rationals);
    ensure(full3.betti == betti(&b, FieldKind::Rationals).betti, "boundary and full(3,2) homology differ")?;
    Ok("boundary(slice(3,m)) = full(2,m) for m=2,4; boundary(slice(4,2)) has betti (1,0,0,1), closed".into())
}

fn full_sphere() -> Outcome {
    for m in [2, 4] {
        let k = full(2, m)?;
        both_fields(&k, &[1, 1], &format!("full(2,{m})"))?;
    }
    let k = full(3, 2)?;
    both_fields(&k, &sphere(3), "full(3,2)")?;
    ensure(k.pseudomanifold().map_err(|e| e.to_string())?.closed, "full(3,2) is not a closed pseudomanifold")?;
    suite_passes(Suite::FullSphere, SuiteParams { m: Some(2), seed: SEED, ..Default::default() })?;
    Ok(format!("full(2,m) circles; full(3,2) f={:?} has betti (1,0,0,1) over q and f2, closed", k.f_vector()))
}

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "zero criterion vs fold oracle", limit: Some(Duration::from_secs(60)), run: zero_oracle },
        Criterion { id: 2, name: "zero triples", limit: Some(Duration::from_secs(60)), run: zero_triples },
        Criterion { id: 3, name: "sign covector spheres", limit: Some(Duration::from_secs(60)), run: sign_spheres },
        Criterion { id: 4, name: "gamma round trips", limit: None, run: gamma_roundtrip },
        Criterion { id: 5, name: "label combinatorics", limit: Some(Duration::from_secs(300)), run: pn_combinatorics },
        Criterion { id: 6, name: "sampled slice geometry", limit: None, run: sampled_geometry },
        Criterion { id: 7, name: "slice is a ball", limit: Some(Duration::from_secs(300)), run: slice_ball },
        Criterion { id: 8, name: "boundary identification", limit: None, run: boundary_ident },
        Criterion { id: 9, name: "full space is a sphere", limit: Some(Duration::from_secs(600)), run: full_sphere },
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for c in &criteria {
        if !filter.is_empty() && !filter.iter().any(|f| c.name.contains(f.as_str()) || c.id.to_string() == *f) {
            continue;
        }
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if took > limit => Err(format!("runtime {took:.1?} exceeds {limit:?}")),
            (o, _) => o,
        };
        let limit = c.limit.map_or("none".to_string(), |l| format!("{l:?}"));
        match outcome {
            Ok(detail) => println!("criterion {} [{}]: PASS ({detail}; {took:.2?}, limit {limit})", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("criterion {} [{}]: FAIL ({why}; {took:.2?}, limit {limit})", c.id, c.name);
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
