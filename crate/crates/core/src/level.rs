//! Level-class recognition: the linear pipeline and the per-level baseline.

use std::fmt;

use crate::dmees::{compute_dmees, EliminationScheme};
use crate::dynamic::{replay, Replay};
use crate::error::RecognizeError;
use crate::forbidden::{find_forbidden, PatternWitness};
use crate::graph::{EdgeId, Graph, WeightedGraph};
use crate::recognize::ClassId;

/// Largest level graph for which the baseline searches a forbidden-subgraph
/// witness; the search is `O(n^5)`.
pub const WITNESS_MAX_N: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LevelVerdict {
    pub accepted: bool,
    /// Smallest level whose level graph is outside the class, when known.
    pub failing_level: Option<u32>,
    /// 1-based position in the elimination scheme where replay rejected.
    pub failing_edge_position: Option<usize>,
    pub witness: Option<PatternWitness>,
}

impl LevelVerdict {
    fn accept() -> Self {
        LevelVerdict { accepted: true, ..Default::default() }
    }
}

impl fmt::Display for LevelVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.accepted {
            return f.write_str("ACCEPT");
        }
        f.write_str("REJECT")?;
        if let Some(level) = self.failing_level {
            write!(f, " level={level}")?;
        }
        Ok(())
    }
}

/// Copy of `wg` with edge ids renumbered by weight (stable), plus the
/// original id of every new id. `None` if the ids are already in weight
/// order. Keeps the later passes, which sweep weight classes, on
/// contiguous memory.
fn weight_ordered(wg: &WeightedGraph) -> Option<(WeightedGraph, Vec<EdgeId>)> {
    if wg.weights().windows(2).all(|w| w[0] <= w[1]) {
        return None;
    }
    let k = wg.k() as usize;
    let mut start = vec![0usize; k + 2];
    for &w in wg.weights() {
        start[w as usize + 1] += 1;
    }
    for i in 0..=k {
        start[i + 1] += start[i];
    }
    let m = wg.graph().m();
    let mut new_id = vec![0; m];
    let mut weights = vec![0; m];
    let mut original = vec![0; m];
    for (e, &w) in wg.weights().iter().enumerate() {
        let p = start[w as usize];
        start[w as usize] += 1;
        new_id[e] = p;
        weights[p] = w;
        original[p] = e;
    }
    let h = wg.graph().renumber_edges(&new_id);
    Some((WeightedGraph::new(h, weights, wg.k()).expect("same weights"), original))
}

fn pipeline(wg: &WeightedGraph, class: ClassId) -> (LevelVerdict, Option<EliminationScheme>) {
    if !class.contains(wg.graph()) {
        let verdict = LevelVerdict { failing_level: Some(1), ..Default::default() };
        return (verdict, None);
    }
    match weight_ordered(wg) {
        None => run(wg, class),
        Some((sorted, original)) => {
            let (verdict, tau) = run(&sorted, class);
            let tau = tau.map(|t| {
                let order = t.order().iter().map(|&e| original[e]).collect();
                EliminationScheme::new(wg.graph().m(), order).expect("relabelled permutation")
            });
            (verdict, tau)
        }
    }
}

/// The pipeline after the static membership check.
fn run(wg: &WeightedGraph, class: ClassId) -> (LevelVerdict, Option<EliminationScheme>) {
    let g = wg.graph();
    let tau = compute_dmees(wg);
    match replay(class, g, tau.order()).expect("scheme is a permutation and g is a member") {
        Replay::AcceptAll => (LevelVerdict::accept(), Some(tau)),
        Replay::RejectedAt(p) => {
            // Every edge lighter than e_p precedes it in the scheme, so the
            // failing level graph lies above the weight of e_p.
            let candidate = wg.weight(tau.order()[p - 1]) + 1;
            let level = wg.level_graph(candidate).expect("candidate <= k + 1");
            let verdict = LevelVerdict {
                accepted: false,
                failing_level: (!class.contains(&level)).then_some(candidate),
                failing_edge_position: Some(p),
                witness: None,
            };
            (verdict, None)
        }
    }
}

/// Decides whether every level graph of `wg` is in `class`, in `O(n + m)`.
pub fn recognize_level(wg: &WeightedGraph, class: ClassId) -> LevelVerdict {
    pipeline(wg, class).0
}

/// Recognizes every level graph separately. On rejection the witness is
/// filled in for level graphs with at most [`WITNESS_MAX_N`] vertices.
pub fn naive_recognize_level(wg: &WeightedGraph, class: ClassId) -> LevelVerdict {
    for level in 1..=wg.k() + 1 {
        let g = wg.level_graph(level).expect("level in range");
        if !class.contains(&g) {
            let witness = (g.n() <= WITNESS_MAX_N)
                .then(|| find_forbidden(&g, class.forbidden()))
                .flatten();
            return LevelVerdict { accepted: false, failing_level: Some(level), failing_edge_position: None, witness };
        }
    }
    LevelVerdict::accept()
}

/// Checks that deleting the edges of `order` one by one never leaves the
/// class.
pub fn check_scheme(class: ClassId, g: &Graph, order: &[EdgeId]) -> Result<Replay, RecognizeError> {
    replay(class, g, order)
}

/// A weight-sorted class-safe elimination scheme, if `wg` is level-`class`.
pub fn sorted_safe_scheme(wg: &WeightedGraph, class: ClassId) -> Option<EliminationScheme> {
    pipeline(wg, class).1
}
