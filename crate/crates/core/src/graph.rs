//! Simple undirected graphs and edge-weighted graphs.
//!
//! Vertices are dense `0..n` indices and edges are identified by their
//! position in the edge list. Adjacency is stored in compressed form with
//! every neighbor list sorted by vertex id, which makes `has_edge` a binary
//! search and keeps iteration order deterministic.

use crate::error::GraphError;

pub type VertexId = usize;
pub type EdgeId = usize;

/// One entry of an adjacency list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Neighbor {
    pub vertex: VertexId,
    pub edge: EdgeId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    offsets: Vec<usize>,
    adjacency: Vec<Neighbor>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, parallel edges and out-of-range
    /// endpoints. Runs in `O(n + m)`.
    pub fn new(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self, GraphError> {
        for (id, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { edge: id, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { edge: id, vertex: u });
            }
        }
        let g = Self::build_unchecked(n, edges);
        for v in 0..n {
            let list = g.neighbors(v);
            if let Some(w) = list.windows(2).find(|w| w[0].vertex == w[1].vertex) {
                return Err(GraphError::DuplicateEdge {
                    edge: w[0].edge.max(w[1].edge),
                    u: v.min(w[0].vertex),
                    v: v.max(w[0].vertex),
                });
            }
        }
        Ok(g)
    }

    pub fn edgeless(n: usize) -> Self {
        Self::build_unchecked(n, Vec::new())
    }

    /// Adjacency construction by two bucket passes; the second pass visits
    /// sources in increasing order so each list comes out sorted.
    fn build_unchecked(n: usize, edges: Vec<(VertexId, VertexId)>) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in &edges {
            offsets[u + 1] += 1;
            offsets[v + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let placeholder = Neighbor { vertex: 0, edge: 0 };
        let mut unsorted = vec![placeholder; 2 * edges.len()];
        let mut cursor = offsets[..n].to_vec();
        for (e, &(u, v)) in edges.iter().enumerate() {
            unsorted[cursor[u]] = Neighbor { vertex: v, edge: e };
            cursor[u] += 1;
            unsorted[cursor[v]] = Neighbor { vertex: u, edge: e };
            cursor[v] += 1;
        }
        let mut adjacency = vec![placeholder; 2 * edges.len()];
        cursor.copy_from_slice(&offsets[..n]);
        for u in 0..n {
            for nb in &unsorted[offsets[u]..offsets[u + 1]] {
                let v = nb.vertex;
                adjacency[cursor[v]] = Neighbor { vertex: u, edge: nb.edge };
                cursor[v] += 1;
            }
        }
        Graph { n, edges, offsets, adjacency }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[Neighbor] {
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let list = self.neighbors(u);
        list.binary_search_by_key(&v, |nb| nb.vertex)
            .ok()
            .map(|i| list[i].edge)
    }

    #[inline]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u != v && self.edge_between(u, v).is_some()
    }

    /// Spanning subgraph keeping the edges for which `keep` holds, in their
    /// original relative order.
    pub fn spanning_subgraph(&self, mut keep: impl FnMut(EdgeId) -> bool) -> Graph {
        let edges = (0..self.m())
            .filter(|&e| keep(e))
            .map(|e| self.edges[e])
            .collect();
        Self::build_unchecked(self.n, edges)
    }

    pub fn without_edge(&self, e: EdgeId) -> Graph {
        self.spanning_subgraph(|f| f != e)
    }

    /// Subgraph induced by `vertices`, relabelled `0..vertices.len()` in the
    /// given order.
    pub fn induced(&self, vertices: &[VertexId]) -> Graph {
        let mut edges = Vec::new();
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    edges.push((i, j));
                }
            }
        }
        Self::build_unchecked(vertices.len(), edges)
    }

    /// The same graph with edge `e` renamed `new_id[e]`; `new_id` must be a
    /// permutation. Adjacency lists keep their order.
    pub(crate) fn renumber_edges(&self, new_id: &[EdgeId]) -> Graph {
        let mut edges = vec![(0, 0); self.m()];
        for (e, &uv) in self.edges.iter().enumerate() {
            edges[new_id[e]] = uv;
        }
        let adjacency = self
            .adjacency
            .iter()
            .map(|nb| Neighbor { vertex: nb.vertex, edge: new_id[nb.edge] })
            .collect();
        Graph { n: self.n, edges, offsets: self.offsets.clone(), adjacency }
    }

    /// Edge sets compared as sets of unordered pairs.
    pub fn same_edge_set(&self, other: &Graph) -> bool {
        self.n == other.n
            && self.m() == other.m()
            && self.edges.iter().all(|&(u, v)| other.has_edge(u, v))
    }
}

/// A graph with a surjective edge weighting onto `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    graph: Graph,
    weights: Vec<u32>,
    k: u32,
}

impl WeightedGraph {
    /// Rejects weights outside `1..=k` and weightings that miss a value.
    pub fn new(graph: Graph, weights: Vec<u32>, k: u32) -> Result<Self, GraphError> {
        if weights.len() != graph.m() {
            return Err(GraphError::WeightCount {
                expected: graph.m(),
                found: weights.len(),
            });
        }
        if graph.m() == 0 {
            if k != 0 {
                return Err(GraphError::NotSurjective { k, missing: 1 });
            }
            return Ok(WeightedGraph { graph, weights, k: 0 });
        }
        let mut seen = vec![false; k as usize + 1];
        for (e, &w) in weights.iter().enumerate() {
            if w == 0 || w > k {
                return Err(GraphError::WeightOutOfRange { edge: e, weight: w, k });
            }
            seen[w as usize] = true;
        }
        if let Some(missing) = (1..=k).find(|&w| !seen[w as usize]) {
            return Err(GraphError::NotSurjective { k, missing });
        }
        Ok(WeightedGraph { graph, weights, k })
    }

    /// Remaps arbitrary positive weights densely onto `1..=k`, keeping their
    /// relative order.
    pub fn normalized(graph: Graph, raw: Vec<u32>) -> Result<Self, GraphError> {
        if raw.len() != graph.m() {
            return Err(GraphError::WeightCount {
                expected: graph.m(),
                found: raw.len(),
            });
        }
        let mut distinct = raw.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let weights = raw
            .iter()
            .map(|w| distinct.binary_search(w).expect("present") as u32 + 1)
            .collect();
        let k = distinct.len() as u32;
        Self::new(graph, weights, k)
    }

    /// Every edge gets weight 1.
    pub fn uniform(graph: Graph) -> Self {
        let k = u32::from(graph.m() > 0);
        let weights = vec![1; graph.m()];
        WeightedGraph { graph, weights, k }
    }

    #[inline]
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    #[inline]
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    #[inline]
    pub fn weight(&self, e: EdgeId) -> u32 {
        self.weights[e]
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn into_parts(self) -> (Graph, Vec<u32>, u32) {
        (self.graph, self.weights, self.k)
    }

    /// The `level`-th level graph: all vertices, edges of weight `>= level`.
    /// Valid levels are `1..=k+1`.
    pub fn level_graph(&self, level: u32) -> Result<Graph, GraphError> {
        if level == 0 || level > self.k + 1 {
            return Err(GraphError::LevelOutOfRange { level, k: self.k });
        }
        Ok(self.graph.spanning_subgraph(|e| self.weights[e] >= level))
    }
}
