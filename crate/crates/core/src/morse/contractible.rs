use super::mask::{bits, MaskGraph, EXACT_LIMIT};
use crate::complex::SimplicialStructure;
use crate::graph::generators::rng;
use crate::graph::Graph;
use crate::spectral::betti_rank_oracle;
use crate::verdict::Verdict;
use rand::seq::SliceRandom;
use serde::Serialize;

pub const DEFAULT_RESTARTS: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomotopyVerdict {
    pub verdict: Verdict,
    /// Vertices removed in order; the single survivor is listed last.
    pub witness: Vec<usize>,
    /// Betti vector when it rules out contractibility.
    pub obstruction: Option<Vec<usize>>,
    /// True when exhaustive search showed no removal sequence exists.
    pub exhausted: bool,
}

/// Random vertex orders used by greedy reduction.
pub fn restart_orders(n: usize, restarts: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut r = rng(seed);
    let mut out = vec![(0..n).collect::<Vec<_>>()];
    for _ in 1..restarts.max(1) {
        let mut o: Vec<usize> = (0..n).collect();
        o.shuffle(&mut r);
        out.push(o);
    }
    out
}

fn betti_obstruction(g: &Graph) -> Option<Vec<usize>> {
    let s = SimplicialStructure::new(g).ok()?;
    let b = betti_rank_oracle(&s);
    let trivial = b.first() == Some(&1) && b.iter().skip(1).all(|&x| x == 0);
    (!trivial).then_some(b)
}

pub fn is_contractible(g: &Graph) -> HomotopyVerdict {
    is_contractible_with(g, DEFAULT_RESTARTS, 0)
}

/// Decides contractibility. Graphs up to the exact limit are searched
/// exhaustively; larger ones greedily with `restarts` random orders.
pub fn is_contractible_with(g: &Graph, restarts: usize, seed: u64) -> HomotopyVerdict {
    let stuck = |exhausted: bool| match betti_obstruction(g) {
        Some(b) if g.n() > 0 => HomotopyVerdict { verdict: Verdict::No, witness: vec![], obstruction: Some(b), exhausted },
        _ if g.n() == 0 => HomotopyVerdict { verdict: Verdict::No, witness: vec![], obstruction: Some(vec![]), exhausted: true },
        _ => HomotopyVerdict { verdict: Verdict::Unknown, witness: vec![], obstruction: None, exhausted },
    };
    let Some(mut mg) = MaskGraph::new(g) else { return stuck(false) };
    let full = mg.full();
    let orders = restart_orders(g.n(), restarts, seed);
    let mut witness = Vec::new();
    let mut cur = full;
    if full.count_ones() > EXACT_LIMIT {
        // greedy phase down to the exact limit
        let mut done = false;
        for order in &orders {
            let mut c = full;
            let mut w = Vec::new();
            while c.count_ones() > EXACT_LIMIT {
                let step = order.iter().copied().find(|&v| {
                    c >> v & 1 == 1 && {
                        let s = mg.sphere(v, c);
                        s != 0 && mg.contractible(s, &orders) == Some(true)
                    }
                });
                match step {
                    Some(v) => {
                        c &= !(1 << v);
                        w.push(v);
                    }
                    None => break,
                }
            }
            if c.count_ones() <= EXACT_LIMIT && mg.reducible(c) {
                cur = c;
                witness = w;
                done = true;
                break;
            }
        }
        if !done {
            return stuck(false);
        }
    } else if !mg.reducible(full) {
        return stuck(true);
    }
    while cur.count_ones() > 1 {
        let v = mg.reduction_step(cur).expect("reducible set has a step");
        witness.push(v);
        cur &= !(1 << v);
    }
    witness.extend(bits(cur));
    HomotopyVerdict { verdict: Verdict::Yes, witness, obstruction: None, exhausted: false }
}

/// Replays a removal witness; true when every removed vertex had a
/// contractible sphere at its turn and one vertex remains.
pub fn replay_witness(g: &Graph, witness: &[usize]) -> bool {
    if witness.len() != g.n() || g.n() == 0 {
        return false;
    }
    let mut alive: Vec<usize> = (0..g.n()).collect();
    for &v in &witness[..witness.len() - 1] {
        let Some(pos) = alive.iter().position(|&a| a == v) else { return false };
        let sub = g.induced(&alive).unwrap();
        let local = sub.original.iter().position(|&a| a == v).unwrap();
        let sphere = sub.graph.unit_sphere(local).unwrap().graph;
        if is_contractible(&sphere).verdict != Verdict::Yes {
            return false;
        }
        alive.remove(pos);
    }
    alive == [witness[witness.len() - 1]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    #[test]
    fn examples() {
        for n in 1..7 {
            let v = is_contractible(&complete(n));
            assert_eq!(v.verdict, Verdict::Yes);
            assert!(replay_witness(&complete(n), &v.witness));
        }
        for n in 4..9 {
            let v = is_contractible(&cycle(n).unwrap());
            assert_eq!(v.verdict, Verdict::No);
            assert_eq!(v.obstruction, Some(vec![1, 1]));
        }
        let w = wheel(5).unwrap();
        let v = is_contractible(&w);
        assert_eq!(v.verdict, Verdict::Yes);
        assert!(replay_witness(&w, &v.witness));
        assert_eq!(is_contractible(&Graph::empty(0)).verdict, Verdict::No);
        assert_eq!(is_contractible(&octahedron()).verdict, Verdict::No);
    }

    #[test]
    fn large_contractible_uses_greedy() {
        let g = random_contractible(30, 4);
        let v = is_contractible(&g);
        assert_eq!(v.verdict, Verdict::Yes);
        assert!(replay_witness(&g, &v.witness));
    }
}
