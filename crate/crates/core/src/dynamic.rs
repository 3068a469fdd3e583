//! Deletion-only dynamic recognizers.
//!
//! Each recognizer certifies that the current graph (the input minus the
//! accepted deletions) stays in its class. [`DynRecognizer::try_delete`]
//! answers whether one more edge can go and, if so, performs the deletion,
//! in `O(1)` time.
//!
//! * chain: the chain partition as a linked list of groups. An edge `xy`
//!   with `x in A_i`, `y in B_j` is safe iff `i = j`; deleting it turns
//!   `A_i, B_i` into `A_i - x, {y}, {x}, B_i - y`, with empty groups
//!   contracted into their neighbors.
//! * split: the degree sequence in a [`BucketOrder`] together with `h` and
//!   the top-`h` degree sum of the splittance condition. A rejected
//!   deletion is rolled back exactly.
//! * threshold: the degree sequence in a [`BucketOrder`]. Neighborhoods are
//!   nested by degree, so `xy` with `d(x) <= d(y)` is safe iff `y` has the
//!   smallest degree in `N(x)`, which reduces to counting the vertices of
//!   degree at least `d(y)`.

use crate::bucket::{BucketOrder, KeyRange};
use crate::dmees::check_permutation;
use crate::error::RecognizeError;
use crate::graph::{EdgeId, Graph, VertexId};
use crate::recognize::{chain_partition, is_split, is_threshold, ChainPartition, ClassId};

const NIL: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject,
}

/// Result of replaying an edge order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Replay {
    AcceptAll,
    /// 1-based position of the first unsafe edge.
    RejectedAt(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    A,
    B,
}

#[derive(Debug, Clone, Copy)]
struct Group {
    side: Side,
    head: usize,
    len: usize,
    prev: usize,
    next: usize,
}

#[derive(Debug, Clone)]
struct ChainState {
    groups: Vec<Group>,
    free: Vec<usize>,
    first: usize,
    group_of: Vec<usize>,
    vprev: Vec<usize>,
    vnext: Vec<usize>,
    isolated: Vec<VertexId>,
}

impl ChainState {
    fn new(n: usize, p: &ChainPartition) -> Self {
        let mut s = ChainState {
            groups: Vec::with_capacity(2 * p.k()),
            free: Vec::new(),
            first: NIL,
            group_of: vec![NIL; n],
            vprev: vec![NIL; n],
            vnext: vec![NIL; n],
            isolated: p.isolated.clone(),
        };
        let mut last = NIL;
        for (a, b) in &p.groups {
            for (side, members) in [(Side::A, a), (Side::B, b)] {
                let g = s.new_group(side, last);
                for &v in members {
                    s.push(g, v);
                }
                last = g;
            }
        }
        s
    }

    /// New empty group spliced in after `after` (or at the front if NIL).
    fn new_group(&mut self, side: Side, after: usize) -> usize {
        let next = if after == NIL { self.first } else { self.groups[after].next };
        let group = Group { side, head: NIL, len: 0, prev: after, next };
        let g = match self.free.pop() {
            Some(g) => {
                self.groups[g] = group;
                g
            }
            None => {
                self.groups.push(group);
                self.groups.len() - 1
            }
        };
        if after == NIL {
            self.first = g;
        } else {
            self.groups[after].next = g;
        }
        if next != NIL {
            self.groups[next].prev = g;
        }
        g
    }

    fn drop_group(&mut self, g: usize) {
        let Group { prev, next, .. } = self.groups[g];
        if prev == NIL {
            self.first = next;
        } else {
            self.groups[prev].next = next;
        }
        if next != NIL {
            self.groups[next].prev = prev;
        }
        self.free.push(g);
    }

    fn push(&mut self, g: usize, v: VertexId) {
        let head = self.groups[g].head;
        self.vprev[v] = NIL;
        self.vnext[v] = head;
        if head != NIL {
            self.vprev[head] = v;
        }
        self.groups[g].head = v;
        self.groups[g].len += 1;
        self.group_of[v] = g;
    }

    fn push_or_isolate(&mut self, g: usize, v: VertexId) {
        if g == NIL {
            self.group_of[v] = NIL;
            self.isolated.push(v);
        } else {
            self.push(g, v);
        }
    }

    fn remove(&mut self, v: VertexId) {
        let g = self.group_of[v];
        let (p, q) = (self.vprev[v], self.vnext[v]);
        if p == NIL {
            self.groups[g].head = q;
        } else {
            self.vnext[p] = q;
        }
        if q != NIL {
            self.vprev[q] = p;
        }
        self.groups[g].len -= 1;
        self.group_of[v] = NIL;
    }

    fn try_delete(&mut self, u: VertexId, v: VertexId) -> Verdict {
        let (x, y) = if self.groups[self.group_of[u]].side == Side::A { (u, v) } else { (v, u) };
        let (gx, gy) = (self.group_of[x], self.group_of[y]);
        if self.groups[gx].next != gy {
            return Verdict::Reject;
        }
        self.remove(x);
        self.remove(y);
        match (self.groups[gx].len == 0, self.groups[gy].len == 0) {
            (false, false) => {
                let b = self.new_group(Side::B, gx);
                self.push(b, y);
                let a = self.new_group(Side::A, b);
                self.push(a, x);
            }
            (true, false) => {
                let prev = self.groups[gx].prev;
                self.push_or_isolate(prev, y);
                self.push(gx, x);
            }
            (false, true) => {
                let next = self.groups[gy].next;
                self.push_or_isolate(next, x);
                self.push(gy, y);
            }
            (true, true) => {
                let prev = self.groups[gx].prev;
                let next = self.groups[gy].next;
                self.drop_group(gx);
                self.drop_group(gy);
                self.push_or_isolate(prev, y);
                self.push_or_isolate(next, x);
            }
        }
        Verdict::Accept
    }

    fn members(&self, g: usize) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.groups[g].len);
        let mut v = self.groups[g].head;
        while v != NIL {
            out.push(v);
            v = self.vnext[v];
        }
        out
    }

    fn partition(&self) -> ChainPartition {
        let mut groups = Vec::new();
        let mut g = self.first;
        while g != NIL {
            let b = self.groups[g].next;
            groups.push((self.members(g), self.members(b)));
            g = self.groups[b].next;
        }
        ChainPartition { groups, isolated: self.isolated.clone() }
    }
}

/// Degree sequence plus the running terms of the splittance condition.
#[derive(Debug, Clone)]
struct SplitState {
    degrees: BucketOrder,
    n: usize,
    h: usize,
    top: usize,
    total: usize,
}

impl SplitState {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let degrees = BucketOrder::from_keys(&g.degrees(), KeyRange::new(0, n)).expect("degree < n");
        // descending position p sits at array position n - p
        let h = (1..=n).take_while(|&p| degrees.key_at(n - p) + 1 >= p).last().unwrap_or(0);
        let top = (1..=h).map(|p| degrees.key_at(n - p)).sum();
        SplitState { degrees, n, h, top, total: 2 * g.m() }
    }

    fn holds(&self) -> bool {
        self.top == self.h * self.h.saturating_sub(1) + (self.total - self.top)
    }

    /// Lowers the degree of `v` by one and returns its former array position.
    fn decrement(&mut self, v: VertexId) -> usize {
        let before = self.degrees.position(v);
        let (front, _) = self.degrees.block_bounds(v);
        self.degrees.decrease_key(v).expect("positive degree");
        if self.n - front <= self.h {
            self.top -= 1;
        }
        let h = self.h;
        if h > 0 && self.degrees.key_at(self.n - h) + 1 < h {
            self.top -= self.degrees.key_at(self.n - h);
            self.h -= 1;
        }
        self.total -= 1;
        before
    }

    /// Exact inverse of [`SplitState::decrement`] for the array contents.
    fn undo(&mut self, v: VertexId, position: usize) {
        self.degrees.increase_key(v).expect("was decremented");
        self.degrees.move_within_block(v, position);
    }

    fn try_delete(&mut self, x: VertexId, y: VertexId) -> Verdict {
        let saved = (self.h, self.top, self.total);
        let px = self.decrement(x);
        let py = self.decrement(y);
        if self.holds() {
            Verdict::Accept
        } else {
            self.undo(y, py);
            self.undo(x, px);
            (self.h, self.top, self.total) = saved;
            Verdict::Reject
        }
    }
}

#[derive(Debug, Clone)]
struct ThresholdState {
    degrees: BucketOrder,
    n: usize,
}

impl ThresholdState {
    fn try_delete(&mut self, u: VertexId, v: VertexId) -> Verdict {
        let (x, y) = if self.degrees.key(u) <= self.degrees.key(v) { (u, v) } else { (v, u) };
        let dx = self.degrees.key(x);
        let (front, _) = self.degrees.block_bounds(y);
        let at_least = self.n - front - usize::from(dx == self.degrees.key(y));
        if dx > at_least {
            return Verdict::Reject;
        }
        self.degrees.decrease_key(x).expect("positive degree");
        self.degrees.decrease_key(y).expect("positive degree");
        Verdict::Accept
    }
}

#[derive(Debug, Clone)]
enum State {
    Split(SplitState),
    Threshold(ThresholdState),
    Chain(ChainState),
}

/// A class member under edge deletions.
#[derive(Debug, Clone)]
pub struct DynRecognizer<'g> {
    class: ClassId,
    graph: &'g Graph,
    alive: Vec<bool>,
    deleted: usize,
    state: State,
    chain_work: u64,
}

impl<'g> DynRecognizer<'g> {
    /// Linear-time setup; fails if `g` is not in `class`.
    pub fn preprocess(class: ClassId, g: &'g Graph) -> Result<Self, RecognizeError> {
        let not_member = RecognizeError::NotInClass(class);
        let state = match class {
            ClassId::Split => {
                is_split(g).ok_or(not_member)?;
                State::Split(SplitState::new(g))
            }
            ClassId::Threshold => {
                if !is_threshold(g) {
                    return Err(not_member);
                }
                let degrees = BucketOrder::from_keys(&g.degrees(), KeyRange::new(0, g.n())).expect("degree < n");
                State::Threshold(ThresholdState { degrees, n: g.n() })
            }
            ClassId::Chain => {
                let p = chain_partition(g).ok_or(not_member)?;
                State::Chain(ChainState::new(g.n(), &p))
            }
        };
        Ok(DynRecognizer { class, graph: g, alive: vec![true; g.m()], deleted: 0, state, chain_work: 0 })
    }

    pub fn class(&self) -> ClassId {
        self.class
    }

    /// Number of accepted deletions so far.
    pub fn deleted(&self) -> usize {
        self.deleted
    }

    pub fn is_alive(&self, e: EdgeId) -> bool {
        self.alive[e]
    }

    /// Deletes `e` if the result stays in the class.
    pub fn try_delete(&mut self, e: EdgeId) -> Result<Verdict, RecognizeError> {
        if e >= self.graph.m() {
            return Err(RecognizeError::UnknownEdge(e));
        }
        if !self.alive[e] {
            return Err(RecognizeError::AlreadyDeleted(e));
        }
        let (u, v) = self.graph.endpoints(e);
        let verdict = match &mut self.state {
            State::Split(s) => s.try_delete(u, v),
            State::Threshold(s) => s.try_delete(u, v),
            State::Chain(s) => {
                self.chain_work += 8;
                s.try_delete(u, v)
            }
        };
        if verdict == Verdict::Accept {
            self.alive[e] = false;
            self.deleted += 1;
        }
        Ok(verdict)
    }

    /// Elementary steps performed so far (bucket operations for split and
    /// threshold, a fixed charge per deletion for chain).
    pub fn work(&self) -> u64 {
        match &self.state {
            State::Split(s) => s.degrees.steps(),
            State::Threshold(s) => s.degrees.steps(),
            State::Chain(_) => self.chain_work,
        }
    }

    /// The current graph, materialized.
    pub fn current_graph(&self) -> Graph {
        self.graph.spanning_subgraph(|e| self.alive[e])
    }

    /// The maintained chain partition (chain recognizers only).
    pub fn chain_partition(&self) -> Option<ChainPartition> {
        match &self.state {
            State::Chain(s) => Some(s.partition()),
            _ => None,
        }
    }

    /// Debug dump of the maintained degree structure (split and threshold).
    pub fn degree_dump(&self) -> Option<String> {
        match &self.state {
            State::Split(s) => Some(format!("h={} top={} total={}\n{}", s.h, s.top, s.total, s.degrees.dump())),
            State::Threshold(s) => Some(s.degrees.dump()),
            State::Chain(_) => None,
        }
    }
}

/// Deletes the edges of `order` one by one and reports the first one whose
/// deletion would leave the class.
pub fn replay(class: ClassId, g: &Graph, order: &[EdgeId]) -> Result<Replay, RecognizeError> {
    check_permutation(g.m(), order)?;
    let mut r = DynRecognizer::preprocess(class, g)?;
    for (i, &e) in order.iter().enumerate() {
        if r.try_delete(e)? == Verdict::Reject {
            return Ok(Replay::RejectedAt(i + 1));
        }
    }
    Ok(Replay::AcceptAll)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges.to_vec()).unwrap()
    }

    #[test]
    fn chain_c4_delete_then_check_partition() {
        let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let mut r = DynRecognizer::preprocess(ClassId::Chain, &c4).unwrap();
        assert_eq!(r.try_delete(0), Ok(Verdict::Accept));
        let p = r.chain_partition().unwrap();
        p.check(&r.current_graph()).unwrap();
        assert_eq!(p.groups, vec![(vec![2], vec![1]), (vec![0], vec![3])]);
        assert_eq!(r.try_delete(0), Err(RecognizeError::AlreadyDeleted(0)));
    }

    #[test]
    fn chain_p4_middle_is_rejected() {
        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let mut r = DynRecognizer::preprocess(ClassId::Chain, &p4).unwrap();
        assert_eq!(r.try_delete(1), Ok(Verdict::Reject));
        assert_eq!(r.deleted(), 0);
        assert_eq!(r.try_delete(0), Ok(Verdict::Accept));
        assert_eq!(r.try_delete(2), Ok(Verdict::Accept));
        assert_eq!(r.try_delete(1), Ok(Verdict::Accept));
        let p = r.chain_partition().unwrap();
        assert!(p.groups.is_empty());
        assert_eq!(p.isolated.len(), 4);
    }

    #[test]
    fn not_a_member_is_an_error() {
        let two_k2 = graph(4, &[(0, 1), (2, 3)]);
        assert!(matches!(
            DynRecognizer::preprocess(ClassId::Chain, &two_k2),
            Err(RecognizeError::NotInClass(ClassId::Chain))
        ));
    }

    #[test]
    fn split_reject_leaves_state_identical() {
        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let mut r = DynRecognizer::preprocess(ClassId::Split, &p4).unwrap();
        let before = r.degree_dump();
        assert_eq!(r.try_delete(1), Ok(Verdict::Reject));
        assert_eq!(r.degree_dump(), before);
        assert_eq!(replay(ClassId::Split, &p4, &[0, 2, 1]), Ok(Replay::AcceptAll));
        assert_eq!(replay(ClassId::Split, &p4, &[1, 0, 2]), Ok(Replay::RejectedAt(1)));
    }

    #[test]
    fn threshold_paw_triangle_edge() {
        // paw: triangle 0,1,2, pendant 3 at 0; edge 12 joins the two degree-2 vertices
        let paw = graph(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]);
        let mut r = DynRecognizer::preprocess(ClassId::Threshold, &paw).unwrap();
        assert_eq!(r.try_delete(0), Ok(Verdict::Reject));
        assert_eq!(r.try_delete(2), Ok(Verdict::Accept));
        assert!(is_threshold(&r.current_graph()));
    }

    #[test]
    fn single_edge_replays_for_every_class() {
        let k2 = graph(2, &[(0, 1)]);
        for class in ClassId::ALL {
            assert_eq!(replay(class, &k2, &[0]), Ok(Replay::AcceptAll));
        }
    }
}
