use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use phasesphere_core::covector::scan_zero_criterion;
use phasesphere_core::gluing::{slice_combinatorics, slice_sampled};
use phasesphere_core::homology::{betti, FieldKind};
use phasesphere_core::mesh::{assemble_full, assemble_slice, FullAssembly};
use phasesphere_core::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn zero_scan(c: &mut Criterion) {
    let mut g = c.benchmark_group("zero_scan_n5");
    for m in [4u32, 8] {
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, m), &m, |b, &m| {
                b.iter(|| scan_zero_criterion(5, m, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn combinatorics(c: &mut Criterion) {
    let mut g = c.benchmark_group("slice_combinatorics");
    for n in [6usize, 7] {
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| b.iter(|| slice_combinatorics(n, exec).unwrap()));
        }
    }
    g.finish();
}

fn sampling(c: &mut Criterion) {
    let mut g = c.benchmark_group("slice_sampled_n4");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| slice_sampled(4, 200, 1, exec).unwrap()));
    }
    g.finish();
}

fn meshing_and_homology(c: &mut Criterion) {
    let mut g = c.benchmark_group("mesh");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new("slice_4_2", name), |b| b.iter(|| assemble_slice(4, 2, exec).unwrap()));
    }
    let FullAssembly::Glued(k) = assemble_full(3, 2).unwrap() else { panic!("full complex did not glue") };
    for field in [FieldKind::Rationals, FieldKind::Gf2] {
        g.bench_function(BenchmarkId::new("betti_full_3_2", field.to_string()), |b| b.iter(|| betti(black_box(&k), field)));
    }
    g.finish();
}

criterion_group!(benches, zero_scan, combinatorics, sampling, meshing_and_homology);
criterion_main!(benches);
