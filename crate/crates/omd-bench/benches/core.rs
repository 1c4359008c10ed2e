use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use omd_bench::fixture;
use omd_core::{
    auto_phase_track, decompose_full, project_band, BandInterval, SearchConfig,
};

/// Off-grid interpolant evaluation across the whole span (the kernel cost
/// every downstream stage pays).
fn bench_interpolant(c: &mut Criterion) {
    let u = fixture(6);
    let span = u.half_span();
    let points: Vec<f64> = (0..1000).map(|i| span * (i as f64 / 999.0 * 2.0 - 1.0) * 0.97).collect();
    c.bench_function("interpolant_eval_1000_points_n201", |b| {
        b.iter(|| {
            let mut acc = 0.0;
            for &t in &points {
                acc += u.interpolant_eval(black_box(t));
            }
            black_box(acc)
        })
    });
}

fn bench_projection(c: &mut Criterion) {
    let u = fixture(6);
    let l = u.half_len();
    let band = BandInterval::new(26, 36, l).unwrap();
    c.bench_function("project_band_11_bins_n201", |b| {
        b.iter(|| project_band(black_box(&u), band).unwrap())
    });
}

fn bench_phase_track(c: &mut Criterion) {
    let u = fixture(1);
    c.bench_function("auto_phase_track_os8_n201", |b| {
        b.iter(|| auto_phase_track(black_box(&u), 8).unwrap())
    });
}

fn bench_decompose(c: &mut Criterion) {
    let u = fixture(6);
    let cfg = SearchConfig::default();
    c.bench_function("decompose_full_ex6_five_modes", |b| {
        b.iter_batched(
            || u.clone(),
            |sig| decompose_full(&sig, None, &cfg).unwrap(),
            BatchSize::LargeInput,
        )
    });
}

criterion_group!(
    benches,
    bench_interpolant,
    bench_projection,
    bench_phase_track,
    bench_decompose
);
criterion_main!(benches);
