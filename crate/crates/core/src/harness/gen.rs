//! Seeded random generators for class members and level instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dmees::compute_dmees;
use crate::dynamic::{DynRecognizer, Verdict};
use crate::graph::{EdgeId, Graph, WeightedGraph};
use crate::recognize::ClassId;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Builds a member of `class` on `n` vertices. `density` in `[0, 1]`
/// controls the expected share of possible edges that appear.
pub fn random_member<R: Rng>(class: ClassId, n: usize, density: f64, rng: &mut R) -> Graph {
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let mut edges = Vec::new();
    match class {
        ClassId::Split => {
            let c = rng.gen_range(0..=n);
            for i in 0..c {
                for j in i + 1..c {
                    edges.push((i, j));
                }
            }
            for i in c..n {
                for j in 0..c {
                    if rng.gen_bool(density) {
                        edges.push((i, j));
                    }
                }
            }
        }
        ClassId::Threshold => {
            // creation sequence: each new vertex is isolated or dominating
            for i in 1..n {
                if rng.gen_bool(density) {
                    edges.extend((0..i).map(|j| (i, j)));
                }
            }
        }
        ClassId::Chain => {
            let (a, b): (Vec<usize>, Vec<usize>) = (0..n).partition(|_| rng.gen_bool(0.5));
            for &x in &a {
                let reach = if rng.gen_bool(density) {
                    rng.gen_range(0..=b.len())
                } else {
                    rng.gen_range(0..=b.len() / 4)
                };
                edges.extend(b[..reach].iter().map(|&y| (x, y)));
            }
        }
    }
    let mut edges: Vec<_> = edges.into_iter().map(|(u, v)| (label[u], label[v])).collect();
    edges.shuffle(rng);
    Graph::new(n, edges).expect("generated edges are simple")
}

/// A random member of `class` on `n` vertices, a deterministic function of
/// `seed`.
pub fn gen_class_graph(class: ClassId, n: usize, seed: u64) -> Graph {
    let mut rng = rng(seed);
    let density = rng.gen_range(0.1..0.9);
    random_member(class, n, density, &mut rng)
}

/// An order of all edges of `g` in which every deletion keeps the graph in
/// `class`. A few randomized passes of trial deletions are followed by a
/// degree-minimal scheme of what is left.
pub fn safe_elimination_order<R: Rng>(class: ClassId, g: &Graph, rng: &mut R) -> Vec<EdgeId> {
    let mut r = DynRecognizer::preprocess(class, g).expect("g is a class member");
    let mut order = Vec::with_capacity(g.m());
    let mut remaining: Vec<EdgeId> = (0..g.m()).collect();
    let pass = |remaining: &mut Vec<EdgeId>, order: &mut Vec<EdgeId>, r: &mut DynRecognizer| {
        remaining.retain(|&e| {
            let accepted = r.try_delete(e).expect("alive edge") == Verdict::Accept;
            if accepted {
                order.push(e);
            }
            !accepted
        });
    };
    for _ in 0..3 {
        if remaining.is_empty() {
            break;
        }
        remaining.shuffle(rng);
        pass(&mut remaining, &mut order, &mut r);
    }
    if !remaining.is_empty() {
        remaining.sort_unstable();
        let rest = WeightedGraph::uniform(g.spanning_subgraph(|e| r.is_alive(e)));
        let mut tail: Vec<EdgeId> = compute_dmees(&rest).order().iter().map(|&e| remaining[e]).collect();
        while !tail.is_empty() {
            pass(&mut tail, &mut order, &mut r);
        }
    }
    order
}

/// Weight of the edge at scheme position `p` is `1 + p k / m`, which is
/// non-decreasing along the scheme and hits every value in `1..=k` when
/// `k <= m`.
pub fn weights_from_order(m: usize, order: &[EdgeId], k: u32) -> (Vec<u32>, u32) {
    let k = (k as usize).min(m) as u32;
    let mut weights = vec![0; m];
    for (p, &e) in order.iter().enumerate() {
        weights[e] = 1 + (p as u64 * u64::from(k) / m as u64) as u32;
    }
    (weights, k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    /// Level-class by construction.
    Yes,
    /// A yes-instance with two weights swapped; membership unknown.
    Perturbed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub class: ClassId,
    pub n: usize,
    pub k: u32,
    pub seed: u64,
    pub polarity: Polarity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub wg: WeightedGraph,
    /// `true` when the instance is level-class by construction; `false`
    /// means unknown.
    pub known_yes: bool,
}

/// Builds a level instance: a class member, a safe elimination order, and
/// weights bucketed along that order. `k` is capped at the edge count;
/// `k = 0`, or a class member that keeps coming out edgeless, gives the
/// edgeless graph.
pub fn gen_level_instance(spec: GenSpec) -> Instance {
    if spec.k == 0 {
        return Instance { wg: WeightedGraph::uniform(Graph::edgeless(spec.n)), known_yes: true };
    }
    let mut rng = rng(spec.seed);
    let mut g = Graph::edgeless(spec.n);
    for _ in 0..16 {
        let density = rng.gen_range(0.1..0.9);
        g = random_member(spec.class, spec.n, density, &mut rng);
        if g.m() > 0 {
            break;
        }
    }
    let order = safe_elimination_order(spec.class, &g, &mut rng);
    let (mut weights, k) = weights_from_order(g.m(), &order, spec.k);
    let mut known_yes = true;
    if spec.polarity == Polarity::Perturbed && k >= 2 {
        let e = rng.gen_range(0..g.m());
        let others: Vec<EdgeId> = (0..g.m()).filter(|&f| weights[f] != weights[e]).collect();
        let f = others[rng.gen_range(0..others.len())];
        weights.swap(e, f);
        known_yes = false;
    }
    let wg = WeightedGraph::new(g, weights, k).expect("weights are surjective");
    Instance { wg, known_yes }
}

/// A level yes-instance with exactly `m` edges (when the class admits that
/// many on some vertex count) and `min(k, m)` weights. The class member is
/// grown until it has at least `m` edges, then the first edges of a safe
/// elimination order are dropped.
pub fn gen_sized_instance(class: ClassId, m: usize, k: u32, seed: u64) -> WeightedGraph {
    let mut rng = rng(seed);
    let spread = match class {
        ClassId::Chain => 13.0,
        _ => 4.0,
    };
    let mut n = ((spread * m as f64).sqrt() * 1.05) as usize + 2;
    let g = loop {
        let g = random_member(class, n, 0.5, &mut rng);
        if g.m() >= m {
            break g;
        }
        n += n / 10 + 1;
    };
    let order = safe_elimination_order(class, &g, &mut rng);
    let drop = g.m() - m;
    let mut keep_rank = vec![usize::MAX; g.m()];
    for (p, &e) in order[drop..].iter().enumerate() {
        keep_rank[e] = p;
    }
    let h = g.spanning_subgraph(|e| keep_rank[e] != usize::MAX);
    // spanning_subgraph keeps the relative edge order, so new ids follow old
    let mut tail = vec![0; m];
    let mut next = 0;
    for e in 0..g.m() {
        if keep_rank[e] != usize::MAX {
            tail[keep_rank[e]] = next;
            next += 1;
        }
    }
    let (weights, k) = weights_from_order(m, &tail, k);
    WeightedGraph::new(h, weights, k).expect("weights are surjective")
}
