//! Brute-force search for small forbidden induced subgraphs.
//!
//! Every 4-subset (and every 5-subset when C5 is requested) is classified by
//! its induced edge count and degree sequence, which identifies each of the
//! six patterns uniquely. Cost is `O(n^4)` or `O(n^5)`; this is a test oracle.

use std::fmt;
use std::str::FromStr;

use crate::graph::{EdgeId, Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    TwoK2,
    C4,
    C5,
    P4,
    Diamond,
    Paw,
}

impl Pattern {
    pub const ALL: [Pattern; 6] = [
        Pattern::TwoK2,
        Pattern::C4,
        Pattern::C5,
        Pattern::P4,
        Pattern::Diamond,
        Pattern::Paw,
    ];

    pub fn vertex_count(self) -> usize {
        if self == Pattern::C5 {
            5
        } else {
            4
        }
    }

    /// Edges of the pattern on `0..vertex_count()`, matching the vertex
    /// order used by [`PatternWitness`].
    pub fn edges(self) -> &'static [(usize, usize)] {
        match self {
            Pattern::TwoK2 => &[(0, 1), (2, 3)],
            Pattern::C4 => &[(0, 1), (1, 2), (2, 3), (3, 0)],
            Pattern::C5 => &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
            Pattern::P4 => &[(0, 1), (1, 2), (2, 3)],
            Pattern::Diamond => &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)],
            Pattern::Paw => &[(0, 1), (0, 2), (1, 2), (0, 3)],
        }
    }

    /// The distinguished edge as positions into the witness vertex list:
    /// middle edge of P4 and diamond, one side edge of the paw.
    pub fn distinguished(self) -> Option<(usize, usize)> {
        match self {
            Pattern::P4 => Some((1, 2)),
            Pattern::Diamond => Some((0, 1)),
            Pattern::Paw => Some((0, 1)),
            _ => None,
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pattern::TwoK2 => "2K2",
            Pattern::C4 => "C4",
            Pattern::C5 => "C5",
            Pattern::P4 => "P4",
            Pattern::Diamond => "diamond",
            Pattern::Paw => "paw",
        })
    }
}

impl FromStr for Pattern {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pattern::ALL
            .into_iter()
            .find(|p| p.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown pattern `{s}`"))
    }
}

/// An induced occurrence of a pattern.
///
/// Vertex order: 2K2 as `a b c d` with edges `ab`, `cd`; P4 in path order;
/// cycles in cyclic order; diamond with the two degree-3 vertices first;
/// paw as centre, its two triangle partners, then the pendant vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternWitness {
    pub pattern: Pattern,
    pub vertices: Vec<VertexId>,
    pub distinguished_edge: Option<EdgeId>,
}

impl PatternWitness {
    /// Whether the listed vertices induce exactly the pattern in `g`, with
    /// the documented vertex order.
    pub fn holds_in(&self, g: &Graph) -> bool {
        let k = self.pattern.vertex_count();
        if self.vertices.len() != k {
            return false;
        }
        let edges = self.pattern.edges();
        for i in 0..k {
            for j in i + 1..k {
                let want = edges.iter().any(|&(a, b)| (a, b) == (i, j) || (b, a) == (i, j));
                if g.has_edge(self.vertices[i], self.vertices[j]) != want {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for PatternWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "induced {} on", self.pattern)?;
        for v in &self.vertices {
            write!(f, " {}", v + 1)?;
        }
        Ok(())
    }
}

fn classify4(g: &Graph, s: [VertexId; 4]) -> Option<(Pattern, [VertexId; 4])> {
    let mut adj = [[false; 4]; 4];
    let mut deg = [0usize; 4];
    let mut m = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if g.has_edge(s[i], s[j]) {
                adj[i][j] = true;
                adj[j][i] = true;
                deg[i] += 1;
                deg[j] += 1;
                m += 1;
            }
        }
    }
    let with_deg = |d: usize| (0..4).filter(move |&i| deg[i] == d);
    match m {
        2 if deg.iter().all(|&d| d == 1) => {
            let b = (1..4).find(|&j| adj[0][j]).unwrap();
            let rest: Vec<_> = (1..4).filter(|&j| j != b).collect();
            Some((Pattern::TwoK2, [s[0], s[b], s[rest[0]], s[rest[1]]]))
        }
        3 if deg.iter().filter(|&&d| d == 1).count() == 2 => {
            let a = with_deg(1).next().unwrap();
            let b = (0..4).find(|&j| adj[a][j]).unwrap();
            let c = (0..4).find(|&j| j != a && adj[b][j]).unwrap();
            let d = (0..4).find(|&j| j != b && adj[c][j]).unwrap();
            Some((Pattern::P4, [s[a], s[b], s[c], s[d]]))
        }
        4 if deg.iter().all(|&d| d == 2) => {
            let b = (1..4).find(|&j| adj[0][j]).unwrap();
            let c = (1..4).find(|&j| j != b && adj[b][j]).unwrap();
            let d = (1..4).find(|&j| j != b && j != c).unwrap();
            Some((Pattern::C4, [s[0], s[b], s[c], s[d]]))
        }
        4 => {
            let centre = with_deg(3).next()?;
            let pendant = with_deg(1).next()?;
            let tri: Vec<_> = with_deg(2).collect();
            Some((Pattern::Paw, [s[centre], s[tri[0]], s[tri[1]], s[pendant]]))
        }
        5 => {
            let mid: Vec<_> = with_deg(3).collect();
            let ends: Vec<_> = with_deg(2).collect();
            Some((Pattern::Diamond, [s[mid[0]], s[mid[1]], s[ends[0]], s[ends[1]]]))
        }
        _ => None,
    }
}

fn c5_order(g: &Graph, s: [VertexId; 5]) -> Option<[VertexId; 5]> {
    let mut deg = [0usize; 5];
    let mut m = 0;
    for i in 0..5 {
        for j in i + 1..5 {
            if g.has_edge(s[i], s[j]) {
                deg[i] += 1;
                deg[j] += 1;
                m += 1;
            }
        }
    }
    if m != 5 || deg.iter().any(|&d| d != 2) {
        return None;
    }
    let mut order = [s[0]; 5];
    let mut used = [false; 5];
    used[0] = true;
    for p in 1..5 {
        let next = (0..5).find(|&j| !used[j] && g.has_edge(order[p - 1], s[j]))?;
        used[next] = true;
        order[p] = s[next];
    }
    Some(order)
}

fn witness(g: &Graph, pattern: Pattern, vertices: Vec<VertexId>) -> PatternWitness {
    let distinguished_edge = pattern
        .distinguished()
        .and_then(|(a, b)| g.edge_between(vertices[a], vertices[b]));
    PatternWitness { pattern, vertices, distinguished_edge }
}

/// Returns an induced occurrence of one of `patterns`, or `None` if `g`
/// contains none of them. Subsets are visited in lexicographic order.
pub fn find_forbidden(g: &Graph, patterns: &[Pattern]) -> Option<PatternWitness> {
    let n = g.n();
    let wants4 = patterns.iter().any(|&p| p != Pattern::C5);
    if wants4 && n >= 4 {
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        if let Some((p, vs)) = classify4(g, [a, b, c, d]) {
                            if patterns.contains(&p) {
                                return Some(witness(g, p, vs.to_vec()));
                            }
                        }
                    }
                }
            }
        }
    }
    if patterns.contains(&Pattern::C5) && n >= 5 {
        for a in 0..n {
            if g.degree(a) < 2 {
                continue;
            }
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        for e in d + 1..n {
                            if let Some(vs) = c5_order(g, [a, b, c, d, e]) {
                                return Some(witness(g, Pattern::C5, vs.to_vec()));
                            }
                        }
                    }
                }
            }
        }
    }
    None
}
