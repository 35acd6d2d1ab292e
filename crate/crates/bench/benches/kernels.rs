use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use fastsyrk::{gemm_winograd, syrk_classical, syrk_dc, syrk_fast, Field, Matrix, OpCount};
use fastsyrk_bench::fixture;
use std::hint::black_box;

const SIZES: [usize; 3] = [128, 256, 512];
const THRESHOLD: usize = 64;

fn symmetric(c: &mut Criterion) {
    let mut g = c.benchmark_group("syrk_f131071");
    g.sample_size(10);
    for n in SIZES {
        let fx = fixture(n, THRESHOLD, 7);
        let f = &fx.field;
        g.throughput(Throughput::Elements((n * n * n) as u64));
        g.bench_with_input(BenchmarkId::new("classical", n), &n, |b, _| {
            b.iter(|| {
                let mut out = Matrix::zeros(f, n, n);
                syrk_classical(f, f.one(), fx.a.as_ref(), f.zero(), out.as_mut(), &mut OpCount::default()).unwrap();
                black_box(out)
            })
        });
        g.bench_with_input(BenchmarkId::new("winograd_gemm", n), &n, |b, _| {
            b.iter(|| black_box(gemm_winograd(f, &fx.a, &fx.at, &fx.policy, &mut OpCount::default()).unwrap()))
        });
        g.bench_with_input(BenchmarkId::new("divide_conquer", n), &n, |b, _| {
            b.iter(|| black_box(syrk_dc(f, &fx.a, &fx.policy, &mut OpCount::default()).unwrap()))
        });
        g.bench_with_input(BenchmarkId::new("fast", n), &n, |b, _| {
            b.iter(|| black_box(syrk_fast(&fx.plan, &fx.a, &mut OpCount::default()).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, symmetric);
criterion_main!(benches);
