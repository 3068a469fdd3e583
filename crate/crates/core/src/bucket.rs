//! Array of objects kept sorted by an integer key, with the maximal runs of
//! equal keys ("blocks") threaded on a doubly linked list.
//!
//! A key change by ±1 swaps the object to the boundary of its block and
//! then either extends the neighboring block or splices a fresh singleton
//! block next to the old one. Removing an object of minimal or maximal key
//! only moves the boundary of the first or last block. Every operation
//! touches a constant number of array slots and list nodes; the `steps`
//! counter records exactly how many.
//!
//! Objects are handles `0..universe`. Live objects always occupy the
//! contiguous position range `start..end` of the array.

use std::fmt::Write as _;

use crate::error::BucketError;

const NIL: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Block {
    key: usize,
    first: usize,
    last: usize,
    prev: usize,
    next: usize,
}

/// Closed key interval accepted by a [`BucketOrder`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KeyRange {
    pub min: usize,
    pub max: usize,
}

impl KeyRange {
    pub fn new(min: usize, max: usize) -> Self {
        assert!(min <= max, "empty key range {min}..={max}");
        KeyRange { min, max }
    }

    fn check(&self, key: usize) -> Result<(), BucketError> {
        if key < self.min || key > self.max {
            Err(BucketError::KeyOutOfRange { key, min: self.min, max: self.max })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone)]
pub struct BucketOrder {
    slots: Vec<usize>,
    position: Vec<usize>,
    block_of: Vec<usize>,
    key: Vec<usize>,
    blocks: Vec<Block>,
    free: Vec<usize>,
    head: usize,
    tail: usize,
    start: usize,
    end: usize,
    range: KeyRange,
    steps: u64,
}

impl BucketOrder {
    /// Builds the structure from `(object, key)` pairs. Equal keys keep their
    /// input order. Uses counting sort when the key span is small relative
    /// to `len * log(len)` and a comparison sort otherwise.
    pub fn build(pairs: &[(usize, usize)], range: KeyRange) -> Result<Self, BucketError> {
        let len = pairs.len();
        let universe = pairs.iter().map(|&(x, _)| x + 1).max().unwrap_or(0);
        let mut position = vec![NIL; universe];
        let mut key = vec![0; universe];
        for (i, &(x, k)) in pairs.iter().enumerate() {
            range.check(k)?;
            if position[x] != NIL {
                return Err(BucketError::DuplicateObject(x));
            }
            position[x] = i;
            key[x] = k;
        }

        let span = range.max - range.min + 1;
        let log = (usize::BITS - len.leading_zeros()) as usize;
        let slots: Vec<usize> = if len + span <= len * log.max(1) {
            let mut count = vec![0usize; span + 1];
            for &(_, k) in pairs {
                count[k - range.min + 1] += 1;
            }
            for i in 0..span {
                count[i + 1] += count[i];
            }
            let mut slots = vec![0; len];
            for &(x, k) in pairs {
                let c = &mut count[k - range.min];
                slots[*c] = x;
                *c += 1;
            }
            slots
        } else {
            let mut sorted = pairs.to_vec();
            sorted.sort_by_key(|&(_, k)| k);
            sorted.into_iter().map(|(x, _)| x).collect()
        };

        let mut order = BucketOrder {
            slots,
            position,
            block_of: vec![NIL; universe],
            key,
            blocks: Vec::new(),
            free: Vec::new(),
            head: NIL,
            tail: NIL,
            start: 0,
            end: len,
            range,
            steps: 0,
        };
        let mut p = 0;
        while p < len {
            let k = order.key[order.slots[p]];
            let mut q = p;
            while q + 1 < len && order.key[order.slots[q + 1]] == k {
                q += 1;
            }
            let b = order.alloc(Block { key: k, first: p, last: q, prev: order.tail, next: NIL });
            if order.tail == NIL {
                order.head = b;
            } else {
                order.blocks[order.tail].next = b;
            }
            order.tail = b;
            for i in p..=q {
                let x = order.slots[i];
                order.position[x] = i;
                order.block_of[x] = b;
            }
            p = q + 1;
        }
        order.steps = 0;
        Ok(order)
    }

    /// Objects `0..keys.len()` with the given keys.
    pub fn from_keys(keys: &[usize], range: KeyRange) -> Result<Self, BucketError> {
        let pairs: Vec<_> = keys.iter().copied().enumerate().collect();
        Self::build(&pairs, range)
    }

    fn alloc(&mut self, block: Block) -> usize {
        self.steps += 1;
        match self.free.pop() {
            Some(b) => {
                self.blocks[b] = block;
                b
            }
            None => {
                self.blocks.push(block);
                self.blocks.len() - 1
            }
        }
    }

    fn unlink(&mut self, b: usize) {
        self.steps += 1;
        let Block { prev, next, .. } = self.blocks[b];
        if prev == NIL {
            self.head = next;
        } else {
            self.blocks[prev].next = next;
        }
        if next == NIL {
            self.tail = prev;
        } else {
            self.blocks[next].prev = prev;
        }
        self.free.push(b);
    }

    fn insert_before(&mut self, b: usize, key: usize, at: usize) -> usize {
        let prev = self.blocks[b].prev;
        let nb = self.alloc(Block { key, first: at, last: at, prev, next: b });
        if prev == NIL {
            self.head = nb;
        } else {
            self.blocks[prev].next = nb;
        }
        self.blocks[b].prev = nb;
        nb
    }

    fn insert_after(&mut self, b: usize, key: usize, at: usize) -> usize {
        let next = self.blocks[b].next;
        let nb = self.alloc(Block { key, first: at, last: at, prev: b, next });
        if next == NIL {
            self.tail = nb;
        } else {
            self.blocks[next].prev = nb;
        }
        self.blocks[b].next = nb;
        nb
    }

    fn swap_slots(&mut self, p: usize, q: usize) {
        if p != q {
            self.steps += 2;
            self.slots.swap(p, q);
            self.position[self.slots[p]] = p;
            self.position[self.slots[q]] = q;
        }
    }

    fn live_block(&self, x: usize) -> Result<usize, BucketError> {
        match self.block_of.get(x) {
            Some(&b) if b != NIL => Ok(b),
            _ => Err(BucketError::NotLive(x)),
        }
    }

    /// Lowers the key of `x` by one.
    pub fn decrease_key(&mut self, x: usize) -> Result<(), BucketError> {
        let b = self.live_block(x)?;
        let j = self.key[x];
        if j == self.range.min {
            return Err(BucketError::KeyOutOfRange { key: j.wrapping_sub(1), min: self.range.min, max: self.range.max });
        }
        let f = self.blocks[b].first;
        self.swap_slots(self.position[x], f);
        let prev = self.blocks[b].prev;
        let target = if prev != NIL && self.blocks[prev].key == j - 1 {
            self.blocks[prev].last = f;
            prev
        } else {
            self.insert_before(b, j - 1, f)
        };
        self.steps += 2;
        self.block_of[x] = target;
        self.key[x] = j - 1;
        self.blocks[b].first = f + 1;
        if self.blocks[b].first > self.blocks[b].last {
            self.unlink(b);
        }
        Ok(())
    }

    /// Raises the key of `x` by one.
    pub fn increase_key(&mut self, x: usize) -> Result<(), BucketError> {
        let b = self.live_block(x)?;
        let j = self.key[x];
        if j == self.range.max {
            return Err(BucketError::KeyOutOfRange { key: j + 1, min: self.range.min, max: self.range.max });
        }
        let l = self.blocks[b].last;
        self.swap_slots(self.position[x], l);
        let next = self.blocks[b].next;
        let target = if next != NIL && self.blocks[next].key == j + 1 {
            self.blocks[next].first = l;
            next
        } else {
            self.insert_after(b, j + 1, l)
        };
        self.steps += 2;
        self.block_of[x] = target;
        self.key[x] = j + 1;
        if self.blocks[b].first == l {
            self.unlink(b);
        } else {
            self.blocks[b].last = l - 1;
        }
        Ok(())
    }

    /// Removes and returns the object at the lowest position, which has
    /// minimal key.
    pub fn delete_min(&mut self) -> Result<usize, BucketError> {
        let b = self.head;
        if b == NIL {
            return Err(BucketError::Empty);
        }
        let f = self.blocks[b].first;
        let x = self.slots[f];
        self.steps += 2;
        self.blocks[b].first = f + 1;
        self.start = f + 1;
        if f == self.blocks[b].last {
            self.unlink(b);
        }
        self.detach(x);
        Ok(x)
    }

    /// Removes and returns the object at the highest position, which has
    /// maximal key.
    pub fn delete_max(&mut self) -> Result<usize, BucketError> {
        let b = self.tail;
        if b == NIL {
            return Err(BucketError::Empty);
        }
        let l = self.blocks[b].last;
        let x = self.slots[l];
        self.steps += 2;
        self.end = l;
        if self.blocks[b].first == l {
            self.unlink(b);
        } else {
            self.blocks[b].last = l - 1;
        }
        self.detach(x);
        Ok(x)
    }

    fn detach(&mut self, x: usize) {
        self.position[x] = NIL;
        self.block_of[x] = NIL;
    }

    pub fn peek_min(&self) -> Option<(usize, usize)> {
        (self.head != NIL).then(|| {
            let b = &self.blocks[self.head];
            (self.slots[b.first], b.key)
        })
    }

    pub fn peek_max(&self) -> Option<(usize, usize)> {
        (self.tail != NIL).then(|| {
            let b = &self.blocks[self.tail];
            (self.slots[b.last], b.key)
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    #[inline]
    pub fn is_live(&self, x: usize) -> bool {
        self.block_of.get(x).is_some_and(|&b| b != NIL)
    }

    #[inline]
    pub fn key(&self, x: usize) -> usize {
        debug_assert!(self.is_live(x));
        self.key[x]
    }

    #[inline]
    pub fn position(&self, x: usize) -> usize {
        debug_assert!(self.is_live(x));
        self.position[x]
    }

    /// Object stored at array position `p` (must be within the live range).
    #[inline]
    pub fn object_at(&self, p: usize) -> usize {
        debug_assert!(p >= self.start && p < self.end);
        self.slots[p]
    }

    #[inline]
    pub fn key_at(&self, p: usize) -> usize {
        self.key[self.object_at(p)]
    }

    /// Live position range `start..end`.
    #[inline]
    pub fn live_range(&self) -> std::ops::Range<usize> {
        self.start..self.end
    }

    /// First and last position of the block holding `x`.
    #[inline]
    pub fn block_bounds(&self, x: usize) -> (usize, usize) {
        let b = &self.blocks[self.block_of[x]];
        (b.first, b.last)
    }

    /// Moves `x` to position `p` by swapping with the current occupant. Both
    /// must carry the same key, so the order stays sorted.
    pub fn move_within_block(&mut self, x: usize, p: usize) {
        let other = self.slots[p];
        assert_eq!(self.block_of[x], self.block_of[other], "positions in different blocks");
        self.swap_slots(self.position[x], p);
    }

    /// Number of elementary slot and block-node updates since construction.
    #[inline]
    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Number of blocks currently in the list.
    pub fn block_count(&self) -> usize {
        self.blocks().count()
    }

    /// Blocks in list order as `(key, objects)`.
    pub fn blocks(&self) -> impl Iterator<Item = (usize, &[usize])> + '_ {
        let mut b = self.head;
        std::iter::from_fn(move || {
            (b != NIL).then(|| {
                let block = &self.blocks[b];
                b = block.next;
                (block.key, &self.slots[block.first..=block.last])
            })
        })
    }

    /// One line per block: `key: [objects]`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (key, objects) in self.blocks() {
            writeln!(out, "{key}: {objects:?}").unwrap();
        }
        out
    }

    /// Full structural audit; `Err` carries a description of the first
    /// broken invariant. Linear time, meant for tests.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut expected_first = self.start;
        let mut prev = NIL;
        let mut prev_key = None;
        let mut b = self.head;
        while b != NIL {
            let block = self.blocks[b];
            if block.prev != prev {
                return Err(format!("block {b}: broken back link"));
            }
            if block.first != expected_first || block.first > block.last {
                return Err(format!("block {b}: bounds {}..={} expected start {expected_first}", block.first, block.last));
            }
            if prev_key.is_some_and(|k| k >= block.key) {
                return Err(format!("block {b}: key {} not increasing", block.key));
            }
            for p in block.first..=block.last {
                let x = self.slots[p];
                if self.position[x] != p || self.block_of[x] != b || self.key[x] != block.key {
                    return Err(format!("object {x} at {p}: stale handle"));
                }
            }
            prev_key = Some(block.key);
            expected_first = block.last + 1;
            prev = b;
            b = block.next;
        }
        if prev != self.tail || expected_first != self.end {
            return Err("block list does not cover the live range".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(pairs: &[(usize, usize)], max: usize) -> BucketOrder {
        let o = BucketOrder::build(pairs, KeyRange::new(0, max)).unwrap();
        o.check_invariants().unwrap();
        o
    }

    #[test]
    fn build_groups_equal_keys() {
        // a=0, b=1, c=2
        let o = order(&[(0, 2), (1, 1), (2, 2)], 3);
        assert_eq!(o.dump(), "1: [1]\n2: [0, 2]\n");
        assert_eq!(order(&[], 3).block_count(), 0);
    }

    #[test]
    fn comparison_sort_path_is_stable() {
        let o = order(&[(0, 900), (1, 5), (2, 900), (3, 5)], 1000);
        assert_eq!(o.dump(), "5: [1, 3]\n900: [0, 2]\n");
    }

    #[test]
    fn decrease_creates_then_merges_blocks() {
        // keys 12 | 16 16 16 | 18 18 18 ; v (object 5) sits in the middle of block 18
        let pairs = [(0, 12), (1, 16), (2, 16), (3, 16), (4, 18), (5, 18), (6, 18)];
        let mut o = order(&pairs, 20);
        o.decrease_key(5).unwrap();
        o.check_invariants().unwrap();
        assert_eq!(o.dump(), "12: [0]\n16: [1, 2, 3]\n17: [5]\n18: [4, 6]\n");
        o.decrease_key(5).unwrap();
        o.check_invariants().unwrap();
        assert_eq!(o.dump(), "12: [0]\n16: [1, 2, 3, 5]\n18: [4, 6]\n");

        // the mirror image restores the configuration up to order inside blocks
        o.increase_key(5).unwrap();
        o.increase_key(5).unwrap();
        o.check_invariants().unwrap();
        let keys: Vec<_> = o.blocks().map(|(k, xs)| (k, xs.len())).collect();
        assert_eq!(keys, vec![(12, 1), (16, 3), (18, 3)]);
    }

    #[test]
    fn singleton_moves_in_place() {
        let mut o = order(&[(0, 5)], 9);
        o.decrease_key(0).unwrap();
        assert_eq!(o.dump(), "4: [0]\n");
        o.increase_key(0).unwrap();
        o.increase_key(0).unwrap();
        assert_eq!(o.dump(), "6: [0]\n");
    }

    #[test]
    fn delete_extremes() {
        let mut o = order(&[(0, 2), (1, 1), (2, 2)], 3);
        assert_eq!(o.delete_min(), Ok(1));
        assert_eq!(o.block_count(), 1);
        let top = o.delete_max().unwrap();
        assert!(top == 0 || top == 2);
        o.check_invariants().unwrap();
        assert_eq!(o.len(), 1);
        o.delete_min().unwrap();
        assert_eq!(o.delete_min(), Err(BucketError::Empty));
        assert_eq!(o.delete_max(), Err(BucketError::Empty));
    }

    #[test]
    fn contract_violations() {
        let mut o = order(&[(0, 0), (1, 3)], 3);
        assert!(matches!(o.decrease_key(0), Err(BucketError::KeyOutOfRange { .. })));
        assert!(matches!(o.increase_key(1), Err(BucketError::KeyOutOfRange { .. })));
        assert_eq!(o.decrease_key(7), Err(BucketError::NotLive(7)));
        o.delete_min().unwrap();
        assert_eq!(o.decrease_key(0), Err(BucketError::NotLive(0)));
        assert!(matches!(
            BucketOrder::build(&[(0, 4)], KeyRange::new(0, 3)),
            Err(BucketError::KeyOutOfRange { key: 4, .. })
        ));
        assert_eq!(
            BucketOrder::build(&[(0, 1), (0, 2)], KeyRange::new(0, 3)).unwrap_err(),
            BucketError::DuplicateObject(0)
        );
    }

    #[test]
    fn move_within_block_keeps_order() {
        let mut o = order(&[(0, 1), (1, 1), (2, 1)], 3);
        o.move_within_block(2, 0);
        assert_eq!(o.object_at(0), 2);
        o.check_invariants().unwrap();
    }
}
