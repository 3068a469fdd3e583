use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use lvg_core::harness::gen_sized_instance;
use lvg_core::{compute_dmees, naive_recognize_level, recognize_level, ClassId};

fn pipeline(c: &mut Criterion) {
    for class in ClassId::ALL {
        let mut group = c.benchmark_group(format!("level/{class}"));
        group.sample_size(10);
        for exp in [12, 14, 16] {
            let m = 1usize << exp;
            let wg = gen_sized_instance(class, m, 64, exp);
            group.throughput(Throughput::Elements(m as u64));
            group.bench_with_input(BenchmarkId::new("pipeline", m), &wg, |b, wg| {
                b.iter(|| recognize_level(wg, class))
            });
            if exp <= 14 {
                group.bench_with_input(BenchmarkId::new("naive", m), &wg, |b, wg| {
                    b.iter(|| naive_recognize_level(wg, class))
                });
            }
        }
        group.finish();
    }
}

fn scheme(c: &mut Criterion) {
    let mut group = c.benchmark_group("dmees");
    group.sample_size(10);
    for exp in [14, 16, 18] {
        let m = 1usize << exp;
        let wg = gen_sized_instance(ClassId::Threshold, m, 256, exp);
        group.throughput(Throughput::Elements(m as u64));
        group.bench_with_input(BenchmarkId::from_parameter(m), &wg, |b, wg| b.iter(|| compute_dmees(wg)));
    }
    group.finish();
}

criterion_group!(benches, pipeline, scheme);
criterion_main!(benches);
