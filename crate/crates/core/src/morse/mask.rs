//! Vertex subsets of a graph on at most 64 vertices as `u64` masks, with
//! memoised removal-reducibility.

use crate::graph::Graph;
use std::collections::HashMap;

/// Above this size a subset is reduced greedily instead of exhaustively.
pub const EXACT_LIMIT: u32 = 16;

pub fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

pub fn mask_of(verts: impl IntoIterator<Item = usize>) -> u64 {
    verts.into_iter().fold(0, |m, v| m | 1 << v)
}

#[derive(Clone, Debug)]
pub struct MaskGraph {
    pub n: usize,
    pub adj: Vec<u64>,
    memo: HashMap<u64, bool>,
}

impl MaskGraph {
    /// `None` when the graph has more than 64 vertices.
    pub fn new(g: &Graph) -> Option<MaskGraph> {
        if g.n() > 64 {
            return None;
        }
        let adj = (0..g.n()).map(|v| mask_of(g.neighbors(v))).collect();
        Some(MaskGraph { n: g.n(), adj, memo: HashMap::new() })
    }

    pub fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn sphere(&self, v: usize, within: u64) -> u64 {
        self.adj[v] & within
    }

    /// Euler characteristic of the clique complex induced on `set`.
    pub fn euler(&self, set: u64) -> i64 {
        fn rec(adj: &[u64], cand: u64, sign: i64) -> i64 {
            let mut total = 0;
            for v in bits(cand) {
                total += sign;
                let higher = if v == 63 { 0 } else { !((1u64 << (v + 1)) - 1) };
                let next = cand & adj[v] & higher;
                if next != 0 {
                    total += rec(adj, next, -sign);
                }
            }
            total
        }
        rec(&self.adj, set, 1)
    }

    /// Exact decision whether `set` reduces to one vertex by repeatedly
    /// deleting a vertex whose unit sphere (inside the current set) is
    /// itself reducible.
    pub fn reducible(&mut self, set: u64) -> bool {
        let c = set.count_ones();
        if c <= 1 {
            return c == 1;
        }
        if let Some(&b) = self.memo.get(&set) {
            return b;
        }
        let res = if bits(set).any(|v| self.adj[v] & set == set & !(1 << v)) {
            true
        } else if self.euler(set) != 1 {
            false
        } else {
            let mut found = false;
            for v in bits(set) {
                let s = self.adj[v] & set;
                if s != 0 && self.reducible(s) && self.reducible(set & !(1 << v)) {
                    found = true;
                    break;
                }
            }
            found
        };
        self.memo.insert(set, res);
        res
    }

    /// A vertex whose removal keeps `set` reducible, if `set` is reducible.
    pub fn reduction_step(&mut self, set: u64) -> Option<usize> {
        if set.count_ones() <= 1 || !self.reducible(set) {
            return None;
        }
        bits(set).find(|&v| {
            let s = self.adj[v] & set;
            s != 0 && self.reducible(s) && self.reducible(set & !(1 << v))
        })
    }

    /// Contractibility for subsets of any size: exact up to `EXACT_LIMIT`
    /// vertices, otherwise greedy removal in the supplied vertex orders.
    /// Returns `Some(true)` with certainty, `Some(false)` only from exact
    /// search, `None` when greedy search got stuck.
    pub fn contractible(&mut self, set: u64, orders: &[Vec<usize>]) -> Option<bool> {
        if set.count_ones() <= EXACT_LIMIT {
            return Some(self.reducible(set));
        }
        for order in orders {
            let mut cur = set;
            loop {
                if cur.count_ones() <= EXACT_LIMIT {
                    if self.reducible(cur) {
                        return Some(true);
                    }
                    break;
                }
                let step = order.iter().copied().find(|&v| {
                    cur >> v & 1 == 1 && {
                        let s = self.adj[v] & cur;
                        s != 0 && self.contractible(s, orders) == Some(true)
                    }
                });
                match step {
                    Some(v) => cur &= !(1 << v),
                    None => break,
                }
            }
        }
        None
    }
}
