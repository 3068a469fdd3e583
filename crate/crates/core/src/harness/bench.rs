//! Wall-clock comparison of the linear pipeline with the per-level baseline.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use super::gen::gen_sized_instance;
use crate::level::{naive_recognize_level, recognize_level};
use crate::recognize::ClassId;

/// The baseline is skipped for instances with more edges than this.
pub const NAIVE_MAX_M: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub m: usize,
    pub n: usize,
    pub k: u32,
    pub t_pipeline: Duration,
    pub t_naive: Option<Duration>,
}

impl BenchRow {
    /// `t_naive / t_pipeline`.
    pub fn ratio(&self) -> Option<f64> {
        self.t_naive.map(|t| t.as_secs_f64() / self.t_pipeline.as_secs_f64())
    }
}

/// Median wall time of `repeats` runs of `f` (at least one run), after one
/// untimed warm-up run.
pub fn median_time<T>(repeats: usize, mut f: impl FnMut() -> T) -> Duration {
    std::hint::black_box(f());
    let mut times: Vec<Duration> = (0..repeats.max(1))
        .map(|_| {
            let start = Instant::now();
            std::hint::black_box(f());
            start.elapsed()
        })
        .collect();
    times.sort_unstable();
    times[times.len() / 2]
}

/// Times both recognizers on one yes-instance per size. Instance
/// generation is outside the timed region; row `i` uses seed `seed + i`.
pub fn bench(class: ClassId, sizes: &[usize], k: u32, repeats: usize, seed: u64) -> Vec<BenchRow> {
    sizes
        .iter()
        .enumerate()
        .map(|(i, &m)| {
            let wg = gen_sized_instance(class, m, k, seed + i as u64);
            let t_pipeline = median_time(repeats, || {
                let v = recognize_level(&wg, class);
                assert!(v.accepted, "generated yes-instance rejected");
            });
            let t_naive = (wg.graph().m() <= NAIVE_MAX_M).then(|| {
                median_time(repeats, || {
                    let v = naive_recognize_level(&wg, class);
                    assert!(v.accepted, "generated yes-instance rejected");
                })
            });
            BenchRow { m: wg.graph().m(), n: wg.graph().n(), k: wg.k(), t_pipeline, t_naive }
        })
        .collect()
}

/// Tab-separated table with a header line; times in seconds.
pub fn format_table(rows: &[BenchRow]) -> String {
    let mut out = String::from("m\tn\tk\tt_pipeline\tt_naive\tratio\n");
    for r in rows {
        let naive = r.t_naive.map_or("-".to_string(), |t| format!("{:.6}", t.as_secs_f64()));
        let ratio = r.ratio().map_or("-".to_string(), |x| format!("{x:.2}"));
        writeln!(out, "{}\t{}\t{}\t{:.6}\t{naive}\t{ratio}", r.m, r.n, r.k, r.t_pipeline.as_secs_f64()).unwrap();
    }
    out
}
