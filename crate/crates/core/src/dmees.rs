//! Degree-minimal edge elimination schemes.
//!
//! An edge `uv` of an edge set `F` is degree-minimal in `F` (with respect to
//! a host graph `H`) if `u` has minimum `H`-degree among all endpoints of
//! `F`, and `v` has minimum `H`-degree among the `F`-neighbors of `u`. A
//! scheme `e_1, …, e_m` is degree-minimal when every `e_i` is degree-minimal
//! in the set of minimum-weight edges of `G - {e_1, …, e_{i-1}}`.
//!
//! [`compute_dmees`] builds one in `O(n + m)` in three phases:
//!
//! 1. [`slice`]: for every weight `i` and every vertex `v` incident to a
//!    weight-`i` edge, a copy `v_i` carrying `d_i(v)`, the degree of `v` in
//!    the `i`-th level graph.
//! 2. [`order_copies`]: per weight, repeatedly emit a copy of minimum
//!    current degree from a [`BucketOrder`]; the edges of the emitted copy
//!    towards not yet emitted copies form its *star*.
//! 3. [`order_edges`]: inside each star, sort edges by the partner's degree
//!    in the graph that still contains this star and all later ones.
//!
//! Ties are broken by the lowest array position throughout.

use crate::bucket::{BucketOrder, KeyRange};
use crate::error::SchemeError;
use crate::graph::{EdgeId, Graph, VertexId, WeightedGraph};

pub type CopyId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexCopy {
    pub vertex: VertexId,
    pub level: u32,
    /// Degree of `vertex` in the `level`-th level graph.
    pub level_degree: usize,
}

/// Output of the slicing phase.
#[derive(Debug, Clone)]
pub struct Slices {
    copies: Vec<VertexCopy>,
    level_start: Vec<usize>,
    edge_copies: Vec<(CopyId, CopyId)>,
    incidence_offsets: Vec<usize>,
    incidence: Vec<EdgeId>,
}

impl Slices {
    /// All copies, grouped by level and sorted by level degree within each
    /// level (stable in edge-traversal order).
    pub fn copies(&self) -> &[VertexCopy] {
        &self.copies
    }

    pub fn k(&self) -> u32 {
        (self.level_start.len() - 1) as u32
    }

    /// Copy ids of level `i` (`1..=k`).
    pub fn level(&self, i: u32) -> std::ops::Range<CopyId> {
        self.level_start[i as usize - 1]..self.level_start[i as usize]
    }

    /// Copies of the two endpoints of `e` at the weight of `e`, in the
    /// orientation of the edge list.
    pub fn edge_copies(&self, e: EdgeId) -> (CopyId, CopyId) {
        self.edge_copies[e]
    }

    /// Weight-`i` edges at copy `c` of level `i`, in edge-list order.
    pub fn incident(&self, c: CopyId) -> &[EdgeId] {
        &self.incidence[self.incidence_offsets[c]..self.incidence_offsets[c + 1]]
    }

    pub fn copy_of(&self, v: VertexId, level: u32) -> Option<CopyId> {
        self.level(level).find(|&c| self.copies[c].vertex == v)
    }
}

fn edges_by_weight(wg: &WeightedGraph) -> Vec<EdgeId> {
    let k = wg.k() as usize;
    let mut start = vec![0usize; k + 2];
    for &w in wg.weights() {
        start[w as usize + 1] += 1;
    }
    for i in 0..=k {
        start[i + 1] += start[i];
    }
    let mut out = vec![0; wg.graph().m()];
    for (e, &w) in wg.weights().iter().enumerate() {
        out[start[w as usize]] = e;
        start[w as usize] += 1;
    }
    out
}

/// Stable counting sort of `0..keys.len()` by `keys`, values below `bound`.
fn counting_order(keys: impl ExactSizeIterator<Item = usize> + Clone, bound: usize) -> Vec<usize> {
    let mut start = vec![0usize; bound + 1];
    for key in keys.clone() {
        start[key + 1] += 1;
    }
    for i in 0..bound {
        start[i + 1] += start[i];
    }
    let mut out = vec![0; keys.len()];
    for (i, key) in keys.enumerate() {
        out[start[key]] = i;
        start[key] += 1;
    }
    out
}

/// Phase 1. One sweep over the edges in weight order creates each copy at
/// the first weight-`i` edge of its vertex; at that moment all lighter
/// edges at the vertex have been counted, so `d_i(v)` is the degree minus
/// that count.
pub fn slice(wg: &WeightedGraph) -> Slices {
    let g = wg.graph();
    let n = g.n();
    let k = wg.k();
    let by_weight = edges_by_weight(wg);

    let mut last_level = vec![0u32; n];
    let mut current = vec![0usize; n];
    let mut lighter = vec![0usize; n];
    let mut raw: Vec<VertexCopy> = Vec::new();
    let mut raw_edge = vec![(0, 0); g.m()];
    for &e in &by_weight {
        let w = wg.weight(e);
        let (u, v) = g.endpoints(e);
        for x in [u, v] {
            if last_level[x] != w {
                last_level[x] = w;
                current[x] = raw.len();
                raw.push(VertexCopy { vertex: x, level: w, level_degree: g.degree(x) - lighter[x] });
            }
        }
        raw_edge[e] = (current[u], current[v]);
        lighter[u] += 1;
        lighter[v] += 1;
    }

    // Radix sort: by degree, then by level.
    let by_degree = counting_order(raw.iter().map(|c| c.level_degree), n + 1);
    let by_level = counting_order(by_degree.iter().map(|&i| raw[i].level as usize), k as usize + 1);
    let mut rank = vec![0usize; raw.len()];
    let copies: Vec<VertexCopy> = by_level
        .iter()
        .enumerate()
        .map(|(pos, &j)| {
            let c = by_degree[j];
            rank[c] = pos;
            raw[c]
        })
        .collect();

    let mut level_start = vec![0usize; k as usize + 1];
    for c in &copies {
        level_start[c.level as usize] += 1;
    }
    for i in 0..k as usize {
        level_start[i + 1] += level_start[i];
    }

    let edge_copies: Vec<_> = raw_edge.iter().map(|&(a, b)| (rank[a], rank[b])).collect();
    let mut incidence_offsets = vec![0usize; copies.len() + 1];
    for &(a, b) in &edge_copies {
        incidence_offsets[a + 1] += 1;
        incidence_offsets[b + 1] += 1;
    }
    for i in 0..copies.len() {
        incidence_offsets[i + 1] += incidence_offsets[i];
    }
    let mut cursor = incidence_offsets[..copies.len()].to_vec();
    let mut incidence = vec![0; 2 * g.m()];
    for &e in &by_weight {
        let (a, b) = edge_copies[e];
        for c in [a, b] {
            incidence[cursor[c]] = e;
            cursor[c] += 1;
        }
    }

    Slices { copies, level_start, edge_copies, incidence_offsets, incidence }
}

/// The copy order `σ` with the star of every copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stars {
    pub sigma: Vec<CopyId>,
    offsets: Vec<usize>,
    edges: Vec<EdgeId>,
}

impl Stars {
    /// Star of the `p`-th copy of `σ`.
    pub fn star(&self, p: usize) -> &[EdgeId] {
        &self.edges[self.offsets[p]..self.offsets[p + 1]]
    }

    /// Concatenation of the stars in `σ` order.
    pub fn rho(&self) -> &[EdgeId] {
        &self.edges
    }
}

fn partner(slices: &Slices, e: EdgeId, c: CopyId) -> CopyId {
    let (a, b) = slices.edge_copies[e];
    if a == c {
        b
    } else {
        a
    }
}

/// Phase 2, with an instrumentation counter added to `work`.
fn order_copies_counted(slices: &Slices, work: &mut u64) -> Stars {
    let total = slices.copies.len();
    let mut emitted = vec![false; total];
    let mut sigma = Vec::with_capacity(total);
    let mut offsets = Vec::with_capacity(total + 1);
    let mut edges = Vec::with_capacity(slices.incidence.len() / 2);
    offsets.push(0);
    for i in 1..=slices.k() {
        let range = slices.level(i);
        let base = range.start;
        let pairs: Vec<_> = range.clone().map(|c| (c - base, slices.copies[c].level_degree)).collect();
        let max = pairs.last().map_or(0, |&(_, d)| d);
        let mut bucket = BucketOrder::build(&pairs, KeyRange::new(0, max)).expect("keys within range");
        while let Ok(local) = bucket.delete_min() {
            let c = base + local;
            emitted[c] = true;
            sigma.push(c);
            for &e in slices.incident(c) {
                let z = partner(slices, e, c);
                if !emitted[z] {
                    bucket.decrease_key(z - base).expect("degree stays non-negative");
                    edges.push(e);
                }
            }
            offsets.push(edges.len());
            *work += slices.incident(c).len() as u64 + 1;
        }
        *work += bucket.steps() + range.len() as u64;
    }
    Stars { sigma, offsets, edges }
}

/// Phase 2: the copy order `σ` and its stars.
pub fn order_copies(slices: &Slices) -> Stars {
    order_copies_counted(slices, &mut 0)
}

/// Stars induced by an externally supplied copy order, for checking phase 3
/// in isolation. `sigma` must list every copy once, level by level.
pub fn stars_for_order(slices: &Slices, sigma: &[CopyId]) -> Stars {
    let mut at = vec![usize::MAX; slices.copies.len()];
    for (p, &c) in sigma.iter().enumerate() {
        at[c] = p;
    }
    let mut offsets = vec![0];
    let mut edges = Vec::new();
    for (p, &c) in sigma.iter().enumerate() {
        edges.extend(slices.incident(c).iter().filter(|&&e| at[partner(slices, e, c)] > p));
        offsets.push(edges.len());
    }
    Stars { sigma: sigma.to_vec(), offsets, edges }
}

/// A total order on the edges of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationScheme {
    order: Vec<EdgeId>,
}

impl EliminationScheme {
    /// Wraps `order` after checking that it is a permutation of `0..m`.
    pub fn new(m: usize, order: Vec<EdgeId>) -> Result<Self, SchemeError> {
        check_permutation(m, &order)?;
        Ok(EliminationScheme { order })
    }

    pub fn order(&self) -> &[EdgeId] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn into_order(self) -> Vec<EdgeId> {
        self.order
    }

    /// `G - {e_1, …, e_i}`.
    pub fn prefix_graph(&self, g: &Graph, i: usize) -> Graph {
        let mut gone = vec![false; g.m()];
        for &e in &self.order[..i] {
            gone[e] = true;
        }
        g.spanning_subgraph(|e| !gone[e])
    }

    pub fn is_weight_sorted(&self, wg: &WeightedGraph) -> bool {
        self.order.windows(2).all(|w| wg.weight(w[0]) <= wg.weight(w[1]))
    }
}

pub fn check_permutation(m: usize, order: &[EdgeId]) -> Result<(), SchemeError> {
    if order.len() != m {
        return Err(SchemeError::WrongLength { expected: m, found: order.len() });
    }
    let mut seen = vec![false; m];
    for &e in order {
        if e >= m {
            return Err(SchemeError::UnknownEdge(e));
        }
        if std::mem::replace(&mut seen[e], true) {
            return Err(SchemeError::Repeated(e));
        }
    }
    Ok(())
}

/// Phase 3. Partner degrees are read in a forward sweep over the stars
/// before each star is removed, then all edges are counting-sorted by that
/// degree (stable on `ρ`) and dealt back into their stars.
pub fn order_edges(wg: &WeightedGraph, slices: &Slices, stars: &Stars) -> EliminationScheme {
    let g = wg.graph();
    let m = g.m();
    let rho = stars.rho();
    let mut degree = g.degrees();
    let mut key = vec![0usize; m];
    let mut owner = vec![0usize; m];
    for p in 0..stars.sigma.len() {
        let v = slices.copies[stars.sigma[p]].vertex;
        let star = stars.star(p);
        for (j, &e) in star.iter().enumerate() {
            let (a, b) = g.endpoints(e);
            let z = if a == v { b } else { a };
            key[stars.offsets[p] + j] = degree[z];
            owner[stars.offsets[p] + j] = p;
        }
        for &e in star {
            let (a, b) = g.endpoints(e);
            degree[a] -= 1;
            degree[b] -= 1;
        }
    }
    let sorted = counting_order(key.iter().copied(), g.n());
    let mut cursor = stars.offsets.clone();
    let mut order = vec![0; m];
    for i in sorted {
        let p = owner[i];
        order[cursor[p]] = rho[i];
        cursor[p] += 1;
    }
    EliminationScheme { order }
}

/// Runs the three phases and returns the scheme together with an
/// elementary-step count (bucket operations plus scanned incidences).
pub fn compute_dmees_instrumented(wg: &WeightedGraph) -> (EliminationScheme, u64) {
    let slices = slice(wg);
    let mut work = (wg.graph().n() + slices.copies.len() + 2 * wg.graph().m()) as u64;
    let stars = order_copies_counted(&slices, &mut work);
    let scheme = order_edges(wg, &slices, &stars);
    work += 2 * wg.graph().m() as u64;
    (scheme, work)
}

pub fn compute_dmees(wg: &WeightedGraph) -> EliminationScheme {
    compute_dmees_instrumented(wg).0
}

/// Degree-minimal edges of `candidates` with respect to the graph formed by
/// the edges of `g` flagged in `alive`. Each result is `(edge, u)` where `u`
/// is the endpoint playing the minimum-degree role; an edge can appear
/// twice, once per orientation.
pub fn degree_minimal_edges(g: &Graph, alive: &[bool], candidates: &[EdgeId]) -> Vec<(EdgeId, VertexId)> {
    let mut degree = vec![0usize; g.n()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if alive[e] {
            degree[u] += 1;
            degree[v] += 1;
        }
    }
    let Some(low) = candidates
        .iter()
        .flat_map(|&e| {
            let (u, v) = g.endpoints(e);
            [degree[u], degree[v]]
        })
        .min()
    else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for &e in candidates {
        let (a, b) = g.endpoints(e);
        for (u, v) in [(a, b), (b, a)] {
            if degree[u] != low {
                continue;
            }
            let best = candidates
                .iter()
                .filter_map(|&f| {
                    let (x, y) = g.endpoints(f);
                    if x == u {
                        Some(degree[y])
                    } else if y == u {
                        Some(degree[x])
                    } else {
                        None
                    }
                })
                .min()
                .expect("e is incident to u");
            if degree[v] == best {
                out.push((e, u));
            }
        }
    }
    out
}

/// Checks `order` against the definition from scratch, recomputing degrees
/// of every prefix graph. Returns `Ok(None)` if the scheme is degree-minimal
/// and `Ok(Some(p))` with the 1-based position of the first violation
/// otherwise. Runs in `O(m (n + m))`.
pub fn verify_dmees(wg: &WeightedGraph, order: &[EdgeId]) -> Result<Option<usize>, SchemeError> {
    let g = wg.graph();
    check_permutation(g.m(), order)?;
    let mut alive = vec![true; g.m()];
    for (i, &e) in order.iter().enumerate() {
        let lightest = (0..g.m()).filter(|&f| alive[f]).map(|f| wg.weight(f)).min().expect("e alive");
        let minimum: Vec<EdgeId> = (0..g.m()).filter(|&f| alive[f] && wg.weight(f) == lightest).collect();
        if !degree_minimal_edges(g, &alive, &minimum).iter().any(|&(f, _)| f == e) {
            return Ok(Some(i + 1));
        }
        alive[e] = false;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weighted(n: usize, edges: &[(usize, usize, u32)]) -> WeightedGraph {
        let g = Graph::new(n, edges.iter().map(|&(u, v, _)| (u, v)).collect()).unwrap();
        let k = edges.iter().map(|e| e.2).max().unwrap_or(0);
        WeightedGraph::new(g, edges.iter().map(|e| e.2).collect(), k).unwrap()
    }

    #[test]
    fn single_edge() {
        let wg = weighted(2, &[(0, 1, 1)]);
        let s = slice(&wg);
        let d: Vec<_> = s.copies().iter().map(|c| c.level_degree).collect();
        assert_eq!(d, vec![1, 1]);
        let stars = order_copies(&s);
        assert_eq!(stars.sigma.len(), 2);
        assert_eq!(compute_dmees(&wg).order(), &[0]);
        assert_eq!(verify_dmees(&wg, &[0]), Ok(None));
    }

    #[test]
    fn edgeless_gives_empty_scheme() {
        let wg = WeightedGraph::uniform(Graph::edgeless(3));
        assert!(compute_dmees(&wg).is_empty());
        assert_eq!(verify_dmees(&wg, &[]), Ok(None));
    }

    #[test]
    fn one_edge_star_is_unchanged_and_stars_partition_edges() {
        // path 0-1-2-3 with weights 2,1,2
        let wg = weighted(4, &[(0, 1, 2), (1, 2, 1), (2, 3, 2)]);
        let s = slice(&wg);
        let stars = order_copies(&s);
        let mut rho = stars.rho().to_vec();
        rho.sort_unstable();
        assert_eq!(rho, vec![0, 1, 2]);
        let tau = compute_dmees(&wg);
        assert_eq!(tau.order()[0], 1);
        assert!(tau.is_weight_sorted(&wg));
        assert_eq!(verify_dmees(&wg, tau.order()), Ok(None));
    }

    #[test]
    fn verifier_rejects_non_minimal_first_edge() {
        // star centred at 0 plus pendant 1-4: 0 has degree 3, leaves 1
        let wg = weighted(5, &[(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 4, 1)]);
        assert_eq!(verify_dmees(&wg, &[0, 1, 2, 3]), Ok(Some(1)));
        assert_eq!(verify_dmees(&wg, &[1, 0, 2, 3]), Ok(Some(2)));
        assert_eq!(verify_dmees(&wg, compute_dmees(&wg).order()), Ok(None));
        assert_eq!(verify_dmees(&wg, &[0, 1]), Err(SchemeError::WrongLength { expected: 4, found: 2 }));
        assert_eq!(verify_dmees(&wg, &[0, 1, 1, 2]), Err(SchemeError::Repeated(1)));
    }
}
