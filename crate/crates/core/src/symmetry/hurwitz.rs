use super::automorphisms::GraphAutomorphism;
use crate::complex::{f_vector, SimplicialStructure};
use crate::error::{Error, Result};
use crate::graph::Graph;
use serde::Serialize;
use std::collections::{BTreeSet, HashSet};

pub const MAX_SUBGROUP_ORDER: usize = 48;

/// Verified finite group of graph automorphisms.
#[derive(Clone, Debug)]
pub struct GroupAction {
    pub elements: Vec<GraphAutomorphism>,
}

impl GroupAction {
    pub fn new(elements: Vec<GraphAutomorphism>) -> Result<Self> {
        if !super::automorphisms::is_group(&elements) {
            return Err(Error::Invalid("elements do not form a group".into()));
        }
        Ok(GroupAction { elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Subgroup generated by `gens`, or `None` once it exceeds `cap` elements.
pub fn closure(gens: &[GraphAutomorphism], n: usize, cap: usize) -> Option<Vec<GraphAutomorphism>> {
    let mut set: BTreeSet<GraphAutomorphism> = BTreeSet::new();
    let id = GraphAutomorphism::identity(n);
    set.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(a) = frontier.pop() {
        for g in gens {
            let b = g.compose(&a);
            if set.insert(b.clone()) {
                if set.len() > cap {
                    return None;
                }
                frontier.push(b);
            }
        }
    }
    Some(set.into_iter().collect())
}

/// Cyclic subgroups and subgroups generated by two cyclic generators, of
/// order at most `cap`, without duplicates.
pub fn subgroups(group: &[GraphAutomorphism], cap: usize) -> Vec<Vec<GraphAutomorphism>> {
    let Some(first) = group.first() else { return vec![] };
    let n = first.perm.len();
    let mut seen: HashSet<Vec<GraphAutomorphism>> = HashSet::new();
    let mut cyclic_gens = Vec::new();
    let mut out = Vec::new();
    for g in group {
        if let Some(h) = closure(std::slice::from_ref(g), n, cap) {
            if seen.insert(h.clone()) {
                cyclic_gens.push(g.clone());
                out.push(h);
            }
        }
    }
    for i in 0..cyclic_gens.len() {
        for j in i + 1..cyclic_gens.len() {
            if let Some(h) = closure(&[cyclic_gens[i].clone(), cyclic_gens[j].clone()], n, cap) {
                if seen.insert(h.clone()) {
                    out.push(h);
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct HurwitzReport {
    pub euler: i64,
    pub order: usize,
    /// Orbit counts per dimension.
    pub orbits: Vec<usize>,
    pub quotient_euler: i64,
    /// `Σ_x (e_x - 1)`.
    pub ramification: i64,
    pub holds: bool,
    /// Orbit quotient is itself a clique complex with matching counts.
    pub realizable: bool,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }
}

/// Chain-level identity `χ(G) = n χ(G/A) - Σ_x (e_x - 1)`.
pub fn riemann_hurwitz(s: &SimplicialStructure, g: &Graph, a: &GroupAction) -> HurwitzReport {
    let mut orbits = Vec::new();
    let mut ramification = 0i64;
    let mut vertex_orbit = vec![0usize; g.n()];
    for k in 0..s.dims() {
        let m = s.count(k);
        let mut dsu = Dsu((0..m).collect());
        let sign = if k % 2 == 0 { 1 } else { -1 };
        for t in &a.elements {
            let act = t.simplex_action(s, k);
            for (i, img) in act.iter().enumerate() {
                let (x, y) = (dsu.find(i), dsu.find(img.target));
                if x != y {
                    dsu.0[x] = y;
                }
                if img.target == i && !t.is_identity() {
                    ramification += sign;
                }
            }
        }
        let roots: BTreeSet<usize> = (0..m).map(|i| dsu.find(i)).collect();
        if k == 0 {
            let ids: Vec<usize> = roots.iter().copied().collect();
            for v in 0..m {
                vertex_orbit[v] = ids.binary_search(&dsu.find(v)).unwrap();
            }
        }
        orbits.push(roots.len());
    }
    let quotient_euler: i64 =
        orbits.iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
    let euler = s.euler_characteristic();
    let holds = euler == a.order() as i64 * quotient_euler - ramification;
    let realizable = {
        let folded = g.edges().iter().any(|&(u, v)| vertex_orbit[u] == vertex_orbit[v]);
        if folded {
            false
        } else {
            let q_edges: Vec<(usize, usize)> =
                g.edges().iter().map(|&(u, v)| (vertex_orbit[u], vertex_orbit[v])).collect();
            let nq = orbits.first().copied().unwrap_or(0);
            let q = Graph::new(nq, &q_edges).expect("no loops when no folded edge");
            let fq: Vec<usize> = f_vector(&q).iter().map(|&x| x as usize).collect();
            fq == orbits
        }
    };
    HurwitzReport { euler, order: a.order(), orbits, quotient_euler, ramification, holds, realizable }
}
