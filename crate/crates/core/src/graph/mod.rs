//! Finite simple graphs on dense vertex ids `0..n`.

pub mod generators;
pub mod io;
pub mod metrics;

use crate::error::{Error, Result};
use fixedbitset::FixedBitSet;
use std::collections::HashMap;

pub use generators::Kind;
pub use metrics::{metrics, Metrics};

/// Immutable simple undirected graph. Adjacency is kept both as bitset rows
/// and as a sorted edge list with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<FixedBitSet>,
    edges: Vec<(usize, usize)>,
}

/// A subgraph together with the map from its new ids back to the parent ids.
#[derive(Clone, Debug)]
pub struct Relabeled {
    pub graph: Graph,
    /// `original[i]` is the parent vertex of new vertex `i`.
    pub original: Vec<usize>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs (in either
    /// orientation) collapse to one edge.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::InvalidVertex { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Self::from_rows(rows))
    }

    pub(crate) fn from_rows(rows: Vec<FixedBitSet>) -> Graph {
        let n = rows.len();
        let mut edges = Vec::new();
        for (u, row) in rows.iter().enumerate() {
            for v in row.ones() {
                if v > u {
                    edges.push((u, v));
                }
            }
        }
        Graph { n, rows, edges }
    }

    pub fn empty(n: usize) -> Graph {
        Self::from_rows(vec![FixedBitSet::with_capacity(n); n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn rows(&self) -> &[FixedBitSet] {
        &self.rows
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones(..)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].ones()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n })
        }
    }

    /// Induced subgraph on `set`, relabeled in increasing order of the
    /// original ids.
    pub fn induced(&self, set: &[usize]) -> Result<Relabeled> {
        let mut original: Vec<usize> = set.to_vec();
        original.sort_unstable();
        original.dedup();
        for &v in &original {
            self.check_vertex(v)?;
        }
        let pos: HashMap<usize, usize> =
            original.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let m = original.len();
        let mut rows = vec![FixedBitSet::with_capacity(m); m];
        for (i, &v) in original.iter().enumerate() {
            for w in self.rows[v].ones() {
                if let Some(&j) = pos.get(&w) {
                    rows[i].insert(j);
                }
            }
        }
        Ok(Relabeled { graph: Self::from_rows(rows), original })
    }

    /// Induced subgraph on a bitset of vertices.
    pub fn induced_bits(&self, set: &FixedBitSet) -> Relabeled {
        let verts: Vec<usize> = set.ones().filter(|&v| v < self.n).collect();
        self.induced(&verts).expect("bitset vertices are in range")
    }

    /// Unit sphere `S(x)`: the subgraph induced by the neighbours of `x`.
    pub fn unit_sphere(&self, x: usize) -> Result<Relabeled> {
        self.check_vertex(x)?;
        let verts: Vec<usize> = self.rows[x].ones().collect();
        self.induced(&verts)
    }

    /// Disjoint union, the second graph's vertices shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph::new(self.n + other.n, &edges).expect("valid by construction")
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let edges: Vec<_> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Graph::new(self.n, &edges).expect("permutation of a valid graph")
    }

    /// Number of triangles (3-cliques).
    pub fn triangle_count(&self) -> usize {
        let mut count = 0;
        for &(u, v) in &self.edges {
            let mut common = self.rows[u].clone();
            common.intersect_with(&self.rows[v]);
            count += common.ones().filter(|&w| w > v).count();
        }
        count
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for w in self.rows[v].ones() {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// BFS distances from `s`; `None` for unreachable vertices.
    pub fn bfs(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[s] = Some(0);
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for w in self.rows[v].ones() {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Dense Laplacian `L_0 = deg - A` as integers.
    pub fn laplacian(&self) -> Vec<Vec<i64>> {
        let mut l = vec![vec![0i64; self.n]; self.n];
        for &(u, v) in &self.edges {
            l[u][v] = -1;
            l[v][u] = -1;
            l[u][u] += 1;
            l[v][v] += 1;
        }
        l
    }
}
