//! Executable form of degree sandwich monotonicity: in a class member, every
//! degree-minimal edge of a safe edge set is itself safe.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use super::gen::{gen_class_graph, rng, safe_elimination_order};
use crate::dmees::degree_minimal_edges;
use crate::graph::{EdgeId, Graph};
use crate::recognize::{brute_safe, ClassId};

/// Rejection-sampling attempts for a safe edge set before falling back to a
/// prefix of a safe elimination order.
pub const SAFE_SET_ATTEMPTS: usize = 50;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DsmReport {
    pub trials: usize,
    /// Trials whose safe set came from the fallback.
    pub fallbacks: usize,
    /// Degree-minimal (edge, orientation) pairs checked.
    pub edges_checked: usize,
    pub counterexamples: Vec<String>,
    /// Violations of: for a degree-minimal `xy` and every `xz` in the set,
    /// `d(z) >= d(y)`.
    pub lemma_violations: Vec<String>,
}

impl DsmReport {
    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty() && self.lemma_violations.is_empty()
    }
}

impl fmt::Display for DsmReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "trials\t{}", self.trials)?;
        writeln!(f, "fallbacks\t{}", self.fallbacks)?;
        writeln!(f, "edges_checked\t{}", self.edges_checked)?;
        writeln!(f, "counterexamples\t{}", self.counterexamples.len())?;
        writeln!(f, "lemma_violations\t{}", self.lemma_violations.len())?;
        for line in self.counterexamples.iter().chain(&self.lemma_violations) {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

fn describe(g: &Graph, set: &[EdgeId], e: EdgeId) -> String {
    let edges: Vec<String> = g.edges().iter().map(|(u, v)| format!("{}-{}", u + 1, v + 1)).collect();
    let set: Vec<String> = set
        .iter()
        .map(|&f| {
            let (u, v) = g.endpoints(f);
            format!("{}-{}", u + 1, v + 1)
        })
        .collect();
    let (u, v) = g.endpoints(e);
    format!("n={} edges=[{}] set=[{}] edge={}-{}", g.n(), edges.join(" "), set.join(" "), u + 1, v + 1)
}

/// Samples a non-empty safe edge set of `g`.
fn sample_safe_set<R: Rng>(class: ClassId, g: &Graph, rng: &mut R) -> (Vec<EdgeId>, bool) {
    for _ in 0..SAFE_SET_ATTEMPTS {
        let p = rng.gen_range(0.05..0.95);
        let set: Vec<EdgeId> = (0..g.m()).filter(|_| rng.gen_bool(p)).collect();
        if set.is_empty() {
            continue;
        }
        let mut gone = vec![false; g.m()];
        for &e in &set {
            gone[e] = true;
        }
        if class.contains(&g.spanning_subgraph(|e| !gone[e])) {
            return (set, false);
        }
    }
    let mut order = safe_elimination_order(class, g, rng);
    let len = rng.gen_range(1..=order.len());
    order.truncate(len);
    order.shuffle(rng);
    (order, true)
}

/// Runs `trials` random trials on class members with `1..=n_max` vertices.
pub fn dsm_property_check(class: ClassId, trials: usize, n_max: usize, seed: u64) -> DsmReport {
    let mut master = rng(seed);
    let mut report = DsmReport { trials, ..Default::default() };
    for _ in 0..trials {
        let n = master.gen_range(1..=n_max.max(1));
        let g = gen_class_graph(class, n, master.gen());
        if g.m() == 0 {
            continue;
        }
        let mut trial_rng = rng(master.gen());
        let (set, fallback) = sample_safe_set(class, &g, &mut trial_rng);
        report.fallbacks += usize::from(fallback);

        let alive = vec![true; g.m()];
        let degree = g.degrees();
        for (e, x) in degree_minimal_edges(&g, &alive, &set) {
            report.edges_checked += 1;
            if !brute_safe(class, &g, e).expect("member") {
                report.counterexamples.push(format!("{class}: unsafe degree-minimal {}", describe(&g, &set, e)));
            }
            let (a, b) = g.endpoints(e);
            for (x, y) in [(x, if a == x { b } else { a }), (if a == x { b } else { a }, x)] {
                for &f in &set {
                    let (p, q) = g.endpoints(f);
                    let z = if p == x {
                        q
                    } else if q == x {
                        p
                    } else {
                        continue;
                    };
                    if degree[z] < degree[y] {
                        report
                            .lemma_violations
                            .push(format!("{class}: neighbor degree at {} {}", x + 1, describe(&g, &set, e)));
                    }
                }
            }
        }
    }
    report
}
