use crate::complex::SimplicialStructure;
use crate::error::{Error, Result};
use crate::graph::Graph;
use std::collections::HashMap;

pub const DEFAULT_AUTOMORPHISM_BUDGET: usize = 200_000;

/// Vertex permutation preserving adjacency: vertex `v` maps to `perm[v]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct GraphAutomorphism {
    pub perm: Vec<usize>,
}

/// Image of one simplex: target index and orientation sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimplexImage {
    pub target: usize,
    pub sign: i64,
}

/// Sign of the permutation sorting `v` into ascending order.
pub fn sort_sign(v: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

impl GraphAutomorphism {
    pub fn identity(n: usize) -> Self {
        GraphAutomorphism { perm: (0..n).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        GraphAutomorphism { perm: other.perm.iter().map(|&v| self.perm[v]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        GraphAutomorphism { perm: inv }
    }

    pub fn preserves(&self, g: &Graph) -> bool {
        self.perm.len() == g.n()
            && g.edges().iter().all(|&(u, v)| g.adjacent(self.perm[u], self.perm[v]))
    }

    /// Induced action on k-simplices with permutation signs.
    pub fn simplex_action(&self, s: &SimplicialStructure, k: usize) -> Vec<SimplexImage> {
        s.simplices(k)
            .iter()
            .map(|sim| {
                let img: Vec<usize> = sim.iter().map(|&v| self.perm[v]).collect();
                let sign = sort_sign(&img);
                let mut sorted = img;
                sorted.sort_unstable();
                SimplexImage { target: s.index_of(&sorted).expect("automorphism maps cliques to cliques"), sign }
            })
            .collect()
    }
}

fn invariants(g: &Graph) -> Vec<(usize, Vec<usize>, usize)> {
    (0..g.n())
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).map(|w| g.degree(w)).collect();
            nd.sort_unstable();
            let tri = g.unit_sphere(v).unwrap().graph.edge_count();
            (g.degree(v), nd, tri)
        })
        .collect()
}

/// All automorphisms by backtracking over vertices in BFS order, pruned by
/// degree, neighbour-degree multiset and triangle count.
pub fn automorphisms(g: &Graph) -> Result<Vec<GraphAutomorphism>> {
    automorphisms_with_budget(g, DEFAULT_AUTOMORPHISM_BUDGET)
}

pub fn automorphisms_with_budget(g: &Graph, budget: usize) -> Result<Vec<GraphAutomorphism>> {
    let n = g.n();
    let inv = invariants(g);
    let mut class: HashMap<&(usize, Vec<usize>, usize), usize> = HashMap::new();
    let cls: Vec<usize> = inv
        .iter()
        .map(|i| {
            let next = class.len();
            *class.entry(i).or_insert(next)
        })
        .collect();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = std::collections::VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut out = Vec::new();
    struct Ctx<'a> {
        g: &'a Graph,
        cls: &'a [usize],
        order: &'a [usize],
        budget: usize,
    }
    fn rec(c: &Ctx, i: usize, perm: &mut [usize], used: &mut [bool], out: &mut Vec<GraphAutomorphism>) -> Result<()> {
        if i == c.order.len() {
            out.push(GraphAutomorphism { perm: perm.to_vec() });
            if out.len() > c.budget {
                return Err(Error::Budget { what: "automorphism enumeration".into(), limit: c.budget });
            }
            return Ok(());
        }
        let v = c.order[i];
        for w in 0..c.g.n() {
            if used[w] || c.cls[w] != c.cls[v] {
                continue;
            }
            let ok = c.order[..i].iter().all(|&u| c.g.adjacent(u, v) == c.g.adjacent(perm[u], w));
            if !ok {
                continue;
            }
            perm[v] = w;
            used[w] = true;
            rec(c, i + 1, perm, used, out)?;
            used[w] = false;
            perm[v] = usize::MAX;
        }
        Ok(())
    }
    let ctx = Ctx { g, cls: &cls, order: &order, budget };
    rec(&ctx, 0, &mut perm, &mut used, &mut out)?;
    out.sort();
    Ok(out)
}

/// Closure, identity and inverses for a list of permutations.
pub fn is_group(elems: &[GraphAutomorphism]) -> bool {
    let Some(first) = elems.first() else { return false };
    let set: std::collections::HashSet<&GraphAutomorphism> = elems.iter().collect();
    let id = GraphAutomorphism::identity(first.perm.len());
    set.contains(&id)
        && elems.iter().all(|a| set.contains(&a.inverse()))
        && elems.iter().all(|a| elems.iter().all(|b| set.contains(&a.compose(b))))
}
