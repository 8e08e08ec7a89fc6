use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use setopt_bench::*;
use setopt_core::convex;
use setopt_core::duality;
use setopt_core::grid::{self, GridOracle};
use setopt_core::lattice;
use setopt_core::rational::{int, ratio};
use setopt_core::{lp_solve, Frontier, Sense};

fn inf_of(c: &mut Criterion) {
    let mut g = c.benchmark_group("inf_of");
    for n in [16, 64, 256] {
        for dim in [2, 3] {
            let (cone, pts) = point_cloud(1, dim, n);
            g.bench_with_input(BenchmarkId::new(format!("q{dim}"), n), &pts, |b, pts| {
                b.iter(|| Frontier::inf_of(&cone, black_box(pts)).unwrap())
            });
        }
    }
    g.finish();
}

fn families(c: &mut Criterion) {
    let fam = family(2, 8, 6);
    c.bench_function("sup_family/8x6", |b| b.iter(|| lattice::sup_family(black_box(&fam)).unwrap()));
    c.bench_function("inf_family/8x6", |b| b.iter(|| lattice::inf_family(black_box(&fam)).unwrap()));
    c.bench_function("leq/pairs", |b| b.iter(|| fam.windows(2).filter(|w| w[0].leq(&w[1]).unwrap()).count()));
}

fn oracle(c: &mut Criterion) {
    let (cone, pts) = point_cloud(3, 2, 8);
    let g = grid::default_grid(2);
    c.bench_function("grid_oracle/build_q2", |b| b.iter(|| GridOracle::new(black_box(&pts), &cone, &g).unwrap()));
}

fn lp(c: &mut Criterion) {
    let mut g = c.benchmark_group("lp_solve");
    for (n, rows) in [(3, 6), (6, 12), (10, 20)] {
        let (a, b, obj) = bounded_lp(4, n, rows);
        g.bench_function(BenchmarkId::from_parameter(format!("{n}x{rows}")), |bench| {
            bench.iter(|| lp_solve(black_box(&a), &b, &obj, Sense::Maximize).unwrap())
        });
    }
    g.finish();
}

fn duality_values(c: &mut Criterion) {
    let inst = instance(5, 2, 2, 10);
    let duals = duality::dual_grid(2, &int(0), &int(2), &ratio(1, 2)).unwrap();
    c.bench_function("dual_value/25_duals", |b| b.iter(|| duality::dual_value(&inst, black_box(&duals)).unwrap()));
    c.bench_function("gap_report/25_duals", |b| b.iter(|| duality::gap_report(&inst, black_box(&duals), &[]).unwrap()));
}

fn certify(c: &mut Criterion) {
    let mut g = c.benchmark_group("certify_strong_duality");
    g.sample_size(20);
    for d in [3, 8] {
        let cv = convex_instance(6, d);
        g.bench_function(BenchmarkId::from_parameter(d), |b| {
            b.iter(|| convex::certify_strong_duality(black_box(&cv)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, inf_of, families, oracle, lp, duality_values, certify);
criterion_main!(benches);
