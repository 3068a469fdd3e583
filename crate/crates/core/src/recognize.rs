//! Static recognition of split, threshold and chain graphs, and the
//! safe-edge predicates for deletion.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::bucket::{BucketOrder, KeyRange};
use crate::error::RecognizeError;
use crate::forbidden::Pattern;
use crate::graph::{EdgeId, Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassId {
    Split,
    Threshold,
    Chain,
}

impl ClassId {
    pub const ALL: [ClassId; 3] = [ClassId::Split, ClassId::Threshold, ClassId::Chain];

    /// Induced subgraphs excluded by the class. Chain graphs must also be
    /// bipartite, which no finite list expresses.
    pub fn forbidden(self) -> &'static [Pattern] {
        match self {
            ClassId::Split => &[Pattern::TwoK2, Pattern::C4, Pattern::C5],
            ClassId::Threshold => &[Pattern::TwoK2, Pattern::P4, Pattern::C4],
            ClassId::Chain => &[Pattern::TwoK2],
        }
    }

    pub fn contains(self, g: &Graph) -> bool {
        match self {
            ClassId::Split => is_split(g).is_some(),
            ClassId::Threshold => is_threshold(g),
            ClassId::Chain => chain_partition(g).is_some(),
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassId::Split => "split",
            ClassId::Threshold => "threshold",
            ClassId::Chain => "chain",
        })
    }
}

impl FromStr for ClassId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "split" => Ok(ClassId::Split),
            "threshold" => Ok(ClassId::Threshold),
            "chain" => Ok(ClassId::Chain),
            _ => Err(format!("unknown class `{s}` (expected split, threshold or chain)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPartition {
    pub clique: Vec<VertexId>,
    pub independent: Vec<VertexId>,
}

impl SplitPartition {
    pub fn is_valid(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.n()];
        for &v in self.clique.iter().chain(&self.independent) {
            if v >= g.n() || std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        let clique = self.clique.iter().enumerate().all(|(i, &u)| {
            self.clique[i + 1..].iter().all(|&v| g.has_edge(u, v))
        });
        let independent = self.independent.iter().enumerate().all(|(i, &u)| {
            self.independent[i + 1..].iter().all(|&v| !g.has_edge(u, v))
        });
        seen.iter().all(|&s| s) && clique && independent
    }
}

/// Vertices by non-increasing degree; equal degrees put the higher id
/// first.
fn descending_degree_order(g: &Graph) -> Vec<VertexId> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let mut start = vec![0usize; n];
    for v in 0..n {
        start[n - 1 - g.degree(v)] += 1;
    }
    let mut acc = 0;
    for s in start.iter_mut() {
        let c = *s;
        *s = acc;
        acc += c;
    }
    let mut out = vec![0; n];
    for v in (0..n).rev() {
        let slot = &mut start[n - 1 - g.degree(v)];
        out[*slot] = v;
        *slot += 1;
    }
    out
}

/// Splittance test on the degree sequence: with `d_1 >= … >= d_n` and
/// `h = max{i : d_i >= i - 1}`, the graph is split iff
/// `d_1 + … + d_h = h (h - 1) + d_{h+1} + … + d_n`. The top `h` vertices then
/// form the clique.
pub fn is_split(g: &Graph) -> Option<SplitPartition> {
    let order = descending_degree_order(g);
    let d: Vec<usize> = order.iter().map(|&v| g.degree(v)).collect();
    let h = (1..=d.len()).filter(|&i| d[i - 1] + 1 >= i).max().unwrap_or(0);
    let top: usize = d[..h].iter().sum();
    let rest: usize = d[h..].iter().sum();
    (top == h * h.saturating_sub(1) + rest).then(|| SplitPartition {
        clique: order[..h].to_vec(),
        independent: order[h..].to_vec(),
    })
}

/// Peels isolated vertices from the low end and dominating vertices from the
/// high end of a degree-ordered [`BucketOrder`].
pub fn is_threshold(g: &Graph) -> bool {
    let n = g.n();
    let mut bucket = BucketOrder::from_keys(&g.degrees(), KeyRange::new(0, n)).expect("degree < n");
    let mut remaining = n;
    while remaining > 0 {
        let (_, low) = bucket.peek_min().expect("non-empty");
        if low == 0 {
            bucket.delete_min().unwrap();
        } else {
            let (_, high) = bucket.peek_max().expect("non-empty");
            if high != remaining - 1 {
                return false;
            }
            let v = bucket.delete_max().unwrap();
            for nb in g.neighbors(v) {
                if bucket.is_live(nb.vertex) {
                    bucket.decrease_key(nb.vertex).unwrap();
                }
            }
        }
        remaining -= 1;
    }
    true
}

/// Ordered partition `(A_1, B_1, …, A_k, B_k, I)`: `x in A_i` and `y in B_j`
/// are adjacent iff `i <= j`; `I` holds the isolated vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainPartition {
    pub groups: Vec<(Vec<VertexId>, Vec<VertexId>)>,
    pub isolated: Vec<VertexId>,
}

impl ChainPartition {
    pub fn k(&self) -> usize {
        self.groups.len()
    }

    /// Checks the defining property in `O(n + m)`.
    pub fn check(&self, g: &Graph) -> Result<(), String> {
        const UNSET: usize = usize::MAX;
        let n = g.n();
        // side 0 = A, 1 = B, 2 = I
        let mut side = vec![UNSET; n];
        let mut index = vec![0usize; n];
        let mut place = |v: VertexId, s: usize, i: usize| -> Result<(), String> {
            if v >= n || side[v] != UNSET {
                return Err(format!("vertex {v} listed twice or out of range"));
            }
            side[v] = s;
            index[v] = i;
            Ok(())
        };
        for (i, (a, b)) in self.groups.iter().enumerate() {
            if a.is_empty() || b.is_empty() {
                return Err(format!("group {} is empty", i + 1));
            }
            for &v in a {
                place(v, 0, i)?;
            }
            for &v in b {
                place(v, 1, i)?;
            }
        }
        for &v in &self.isolated {
            place(v, 2, 0)?;
        }
        if let Some(v) = side.iter().position(|&s| s == UNSET) {
            return Err(format!("vertex {v} is not covered"));
        }
        let k = self.groups.len();
        let mut b_suffix = vec![0usize; k + 1];
        let mut a_prefix = vec![0usize; k + 1];
        for i in 0..k {
            b_suffix[k - 1 - i] = b_suffix[k - i] + self.groups[k - 1 - i].1.len();
            a_prefix[i + 1] = a_prefix[i] + self.groups[i].0.len();
        }
        for v in 0..n {
            let i = index[v];
            let (expected, ok) = match side[v] {
                0 => (b_suffix[i], g.neighbors(v).iter().all(|nb| side[nb.vertex] == 1 && index[nb.vertex] >= i)),
                1 => (a_prefix[i + 1], g.neighbors(v).iter().all(|nb| side[nb.vertex] == 0 && index[nb.vertex] <= i)),
                _ => (0, true),
            };
            if !ok || g.degree(v) != expected {
                return Err(format!("neighborhood of vertex {v} does not match its group"));
            }
        }
        Ok(())
    }
}

/// Builds the chain partition by peeling, or returns `None` if the graph is
/// not a chain graph. The side holding the lowest-id non-isolated vertex
/// becomes the `A` side.
pub fn chain_partition(g: &Graph) -> Option<ChainPartition> {
    let n = g.n();
    const UNSEEN: u8 = 2;
    let mut color = vec![UNSEEN; n];
    let mut isolated = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if g.degree(s) == 0 {
            isolated.push(s);
            continue;
        }
        if color[s] != UNSEEN {
            continue;
        }
        color[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for nb in g.neighbors(v) {
                let w = nb.vertex;
                if color[w] == UNSEEN {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return None;
                }
            }
        }
    }

    let side_b: Vec<(usize, usize)> = (0..n).filter(|&v| color[v] == 1).map(|v| (v, g.degree(v))).collect();
    let mut a_left = (0..n).filter(|&v| color[v] == 0).count();
    let mut a_degree = g.degrees();
    let mut bucket = BucketOrder::build(&side_b, KeyRange::new(0, n)).expect("degree < n");
    let mut peeled = Vec::new();
    while a_left > 0 {
        let mut b = Vec::new();
        let mut a = Vec::new();
        while bucket.peek_max().is_some_and(|(_, d)| d == a_left) {
            let y = bucket.delete_max().unwrap();
            b.push(y);
            for nb in g.neighbors(y) {
                a_degree[nb.vertex] -= 1;
                if a_degree[nb.vertex] == 0 {
                    a.push(nb.vertex);
                }
            }
        }
        if a.is_empty() {
            return None;
        }
        a_left -= a.len();
        peeled.push((a, b));
    }
    if !bucket.is_empty() {
        return None;
    }
    peeled.reverse();
    Some(ChainPartition { groups: peeled, isolated })
}

fn endpoints_checked(g: &Graph, e: EdgeId) -> Result<(VertexId, VertexId), RecognizeError> {
    if e >= g.m() {
        return Err(RecognizeError::UnknownEdge(e));
    }
    Ok(g.endpoints(e))
}

/// `xy` is the middle edge of an induced P4.
pub fn is_p4_middle(g: &Graph, x: VertexId, y: VertexId) -> bool {
    let private = |a: VertexId, b: VertexId| {
        g.neighbors(a)
            .iter()
            .map(|nb| nb.vertex)
            .filter(move |&u| u != b && !g.has_edge(u, b))
    };
    private(x, y).any(|u| private(y, x).any(|v| !g.has_edge(u, v)))
}

fn common_neighbors(g: &Graph, x: VertexId, y: VertexId) -> Vec<VertexId> {
    g.neighbors(x)
        .iter()
        .map(|nb| nb.vertex)
        .filter(|&u| g.has_edge(u, y))
        .collect()
}

/// `xy` is the middle edge of an induced diamond.
pub fn is_diamond_middle(g: &Graph, x: VertexId, y: VertexId) -> bool {
    let common = common_neighbors(g, x, y);
    common
        .iter()
        .enumerate()
        .any(|(i, &a)| common[i + 1..].iter().any(|&b| !g.has_edge(a, b)))
}

/// `xy` is a side edge of an induced paw: a triangle edge at the vertex of
/// degree three.
pub fn is_paw_side(g: &Graph, x: VertexId, y: VertexId) -> bool {
    let common = common_neighbors(g, x, y);
    [(x, y), (y, x)].into_iter().any(|(x, y)| {
        g.neighbors(y)
            .iter()
            .map(|nb| nb.vertex)
            .filter(|&b| b != x && !g.has_edge(b, x))
            .any(|b| common.iter().any(|&a| !g.has_edge(a, b)))
    })
}

/// Structured safety test for deleting `e` from a class member, via the
/// forbidden roles of the edge.
pub fn safe_edge(class: ClassId, g: &Graph, e: EdgeId) -> Result<bool, RecognizeError> {
    let (x, y) = endpoints_checked(g, e)?;
    if !class.contains(g) {
        return Err(RecognizeError::NotInClass(class));
    }
    Ok(match class {
        ClassId::Split => !is_p4_middle(g, x, y) && !is_diamond_middle(g, x, y),
        ClassId::Threshold => !is_diamond_middle(g, x, y) && !is_paw_side(g, x, y),
        ClassId::Chain => !is_p4_middle(g, x, y),
    })
}

/// Deletes `e` and reruns the static recognizer.
pub fn brute_safe(class: ClassId, g: &Graph, e: EdgeId) -> Result<bool, RecognizeError> {
    endpoints_checked(g, e)?;
    if !class.contains(g) {
        return Err(RecognizeError::NotInClass(class));
    }
    Ok(class.contains(&g.without_edge(e)))
}
