use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use quadmops::backlund::GammaSequence;
use quadmops::quadratic::{decompose, xu_case_study};
use quadmops::rational::{rat, rat_int};
use quadmops::{MomentFunctional, MopsFamily, RatMatrix};
use quadmops_bench::dense_matrix;

fn bench_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("fraction_free_solve");
    for n in [8usize, 16, 32] {
        let a = dense_matrix(n, 42);
        let b = RatMatrix::identity(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |bench, _| {
            bench.iter(|| black_box(a.solve(&b).unwrap()));
        });
    }
    group.finish();
}

fn bench_build_mops(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_mops_degree8");
    let square = MomentFunctional::square_legendre();
    group.bench_function("square_legendre", |bench| {
        bench.iter(|| black_box(MopsFamily::build(&square, 8).unwrap()));
    });
    let ball = MomentFunctional::ball(rat(1, 2)).unwrap();
    group.bench_function("ball_half", |bench| {
        bench.iter(|| black_box(MopsFamily::build(&ball, 8).unwrap()));
    });
    group.finish();
}

fn bench_decompose(c: &mut Criterion) {
    let square = MomentFunctional::square_legendre();
    let fam = MopsFamily::build(&square, 9).unwrap();
    c.bench_function("decompose_square_n4", |bench| {
        bench.iter(|| black_box(decompose(&fam, 4).unwrap()));
    });
}

fn bench_gamma_sequence(c: &mut Criterion) {
    let ball = MomentFunctional::ball(rat_int(1)).unwrap();
    let fam = MopsFamily::build(&ball, 11).unwrap();
    c.bench_function("gamma_sequence_ball_depth11", |bench| {
        bench.iter(|| black_box(GammaSequence::build(&fam, 11).unwrap()));
    });
}

fn bench_case_study(c: &mut Criterion) {
    c.bench_function("xu_case_study_mu0_n3", |bench| {
        bench.iter(|| black_box(xu_case_study(&rat_int(0), 3).unwrap()));
    });
}

criterion_group!(
    benches,
    bench_solve,
    bench_build_mops,
    bench_decompose,
    bench_gamma_sequence,
    bench_case_study
);
criterion_main!(benches);
