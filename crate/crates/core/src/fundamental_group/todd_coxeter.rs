//! Coset enumeration over the trivial subgroup, HLT order with a lookahead
//! pass when the live coset count reaches the cap.

use alloc::vec;
use alloc::vec::Vec;

use super::presentation::{cyclic_reduce, letter_index, GroupPresentation};

pub const DEFAULT_COSET_CAP: usize = 100_000;

/// Never claims a group is infinite: `Unknown` only means the table did not
/// close within the cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Finiteness {
    Finite(u64),
    Unknown,
}

impl Finiteness {
    pub fn order(self) -> Option<u64> {
        match self {
            Finiteness::Finite(n) => Some(n),
            Finiteness::Unknown => None,
        }
    }
}

const NONE: u32 = u32::MAX;

struct CosetTable {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    queue: Vec<u32>,
}

impl CosetTable {
    fn new(cols: usize) -> Self {
        CosetTable {
            cols,
            table: vec![NONE; cols],
            parent: vec![0],
            live: 1,
            queue: Vec::new(),
        }
    }

    fn allocated(&self) -> usize {
        self.parent.len()
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.cols + x] = d;
    }

    fn define(&mut self, c: u32, x: usize) {
        let d = self.parent.len() as u32;
        self.parent.push(d);
        self.table.extend(core::iter::repeat_n(NONE, self.cols));
        self.live += 1;
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = c;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi as usize] = lo;
            self.live -= 1;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                self.set(f, x ^ 1, NONE);
                let (e1, f1) = (self.rep(e), self.rep(f));
                if self.get(e1, x) != NONE {
                    let t = self.get(e1, x);
                    self.merge(f1, t);
                } else if self.get(f1, x ^ 1) != NONE {
                    let t = self.get(f1, x ^ 1);
                    self.merge(e1, t);
                } else {
                    self.set(e1, x, f1);
                    self.set(f1, x ^ 1, e1);
                }
            }
        }
        self.queue.clear();
    }

    /// Scans `w` at coset `c`. With `fill`, defines new cosets to complete
    /// the scan while fewer than `fill` are live; returns `false` if it had to stop.
    fn scan(&mut self, c: u32, w: &[usize], fill: Option<usize>) -> bool {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len());
        loop {
            while i < j && self.get(f, w[i]) != NONE {
                f = self.get(f, w[i]);
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return true;
            }
            while j > i && self.get(b, w[j - 1] ^ 1) != NONE {
                b = self.get(b, w[j - 1] ^ 1);
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return true;
            }
            if j == i + 1 {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                return true;
            }
            match fill {
                Some(cap) if self.live < cap && self.allocated() < hard_limit(cap) => {
                    self.define(f, w[i])
                }
                _ => return false,
            }
        }
    }

    fn lookahead(&mut self, relators: &[Vec<usize>]) {
        let mut c = 0u32;
        while (c as usize) < self.allocated() {
            for r in relators {
                if !self.is_live(c) {
                    break;
                }
                self.scan(c, r, None);
            }
            c += 1;
        }
    }
}

/// Dead rows are never compacted, so total allocation is bounded separately.
fn hard_limit(cap: usize) -> usize {
    cap.saturating_mul(8)
}

/// Column of a letter: generator `k` at `2k`, its inverse at `2k + 1`.
fn column(l: i32) -> usize {
    2 * letter_index(l) + usize::from(l < 0)
}

/// Bounded enumeration of the cosets of the trivial subgroup.
pub fn finiteness_probe(p: &GroupPresentation, coset_cap: usize) -> Finiteness {
    if p.generator_count == 0 {
        return Finiteness::Finite(1);
    }
    let cap = coset_cap.max(1);
    let relators: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(|r| cyclic_reduce(r))
        .filter(|r| !r.is_empty())
        .map(|r| r.iter().map(|&l| column(l)).collect())
        .collect();
    let cols = 2 * p.generator_count;
    let mut t = CosetTable::new(cols);
    let mut c = 0u32;
    while (c as usize) < t.allocated() {
        for r in &relators {
            if !t.is_live(c) {
                break;
            }
            if !t.scan(c, r, Some(cap)) {
                t.lookahead(&relators);
                if !t.is_live(c) {
                    break;
                }
                if !t.scan(c, r, Some(cap)) {
                    return Finiteness::Unknown;
                }
            }
        }
        for x in 0..cols {
            if !t.is_live(c) {
                break;
            }
            if t.get(c, x) == NONE {
                if t.live >= cap || t.allocated() >= hard_limit(cap) {
                    t.lookahead(&relators);
                    if t.live >= cap || t.allocated() >= hard_limit(cap) {
                        return Finiteness::Unknown;
                    }
                }
                if t.is_live(c) && t.get(c, x) == NONE {
                    t.define(c, x);
                }
            }
        }
        c += 1;
    }
    Finiteness::Finite(t.live as u64)
}
