use crate::graph::Graph;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Upper bound on chordless cycles listed per unit sphere.
pub const CYCLE_BUDGET: usize = 100_000;

/// Embedded wheel: a center and a chordless cycle of length at least 4 in
/// its unit sphere, listed in cyclic order by parent vertex ids.
#[derive(Clone, Debug, PartialEq)]
pub struct Wheel {
    pub center: usize,
    pub rim: Vec<usize>,
    /// `1 - (number of spikes) / 6`.
    pub curvature: BigRational,
}

#[derive(Clone, Debug)]
pub struct WheelCurvatures {
    pub wheels: Vec<Wheel>,
    /// Ricci curvature per edge (same order as `Graph::edges`).
    pub ricci: Vec<Option<BigRational>>,
    /// Scalar curvature per vertex.
    pub scalar: Vec<Option<BigRational>>,
    /// True when some sphere hit the cycle budget.
    pub truncated: bool,
}

/// Chordless cycles of length ≥ 4, each listed once with its least vertex
/// first and second vertex smaller than last.
pub fn chordless_cycles(g: &Graph, budget: usize) -> (Vec<Vec<usize>>, bool) {
    let mut out = Vec::new();
    let mut truncated = false;
    for s in 0..g.n() {
        let mut path = vec![s];
        extend(g, &mut path, &mut out, budget, &mut truncated);
        if truncated {
            break;
        }
    }
    (out, truncated)
}

fn extend(g: &Graph, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, budget: usize, truncated: &mut bool) {
    let s = path[0];
    let last = *path.last().unwrap();
    for w in g.neighbors(last).collect::<Vec<_>>() {
        if *truncated {
            return;
        }
        if w <= s || path.contains(&w) {
            continue;
        }
        if path.len() == 1 {
            path.push(w);
            extend(g, path, out, budget, truncated);
            path.pop();
            continue;
        }
        // w may touch only `last` among interior path vertices
        if path[1..path.len() - 1].iter().any(|&p| g.adjacent(p, w)) {
            continue;
        }
        if g.adjacent(s, w) {
            if path.len() >= 3 && path[1] < w {
                let mut c = path.clone();
                c.push(w);
                out.push(c);
                if out.len() >= budget {
                    *truncated = true;
                }
            }
        } else {
            path.push(w);
            extend(g, path, out, budget, truncated);
            path.pop();
        }
    }
}

fn mean(v: &[BigRational]) -> Option<BigRational> {
    if v.is_empty() {
        return None;
    }
    let s = v.iter().fold(BigRational::zero(), |a, b| a + b);
    Some(s / BigRational::from_integer(BigInt::from(v.len() as i64)))
}

/// Wheels with sectional curvatures, edge Ricci and vertex scalar curvature.
pub fn sectional_and_ricci(g: &Graph) -> WheelCurvatures {
    let mut wheels = Vec::new();
    let mut truncated = false;
    for c in 0..g.n() {
        let sphere = g.unit_sphere(c).unwrap();
        let (cycles, t) = chordless_cycles(&sphere.graph, CYCLE_BUDGET);
        truncated |= t;
        for cyc in cycles {
            let rim: Vec<usize> = cyc.iter().map(|&i| sphere.original[i]).collect();
            let curvature = BigRational::new(BigInt::from(6 - rim.len() as i64), BigInt::from(6));
            wheels.push(Wheel { center: c, rim, curvature });
        }
    }
    let edge_index: BTreeMap<(usize, usize), usize> =
        g.edges().iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    let mut per_edge: Vec<Vec<BigRational>> = vec![Vec::new(); g.edge_count()];
    for w in &wheels {
        let m = w.rim.len();
        let mut es: Vec<usize> = w.rim.iter().map(|&r| edge_index[&key(w.center, r)]).collect();
        es.extend((0..m).map(|i| edge_index[&key(w.rim[i], w.rim[(i + 1) % m])]));
        for e in es {
            per_edge[e].push(w.curvature.clone());
        }
    }
    let ricci: Vec<Option<BigRational>> = per_edge.iter().map(|v| mean(v)).collect();
    let scalar = (0..g.n())
        .map(|x| {
            let vals: Vec<BigRational> = g
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, &(u, v))| u == x || v == x)
                .filter_map(|(i, _)| ricci[i].clone())
                .collect();
            mean(&vals)
        })
        .collect();
    WheelCurvatures { wheels, ricci, scalar, truncated }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn chordless_cycle_counts() {
        assert_eq!(chordless_cycles(&cycle(5).unwrap(), 100).0.len(), 1);
        assert_eq!(chordless_cycles(&complete(5), 100).0.len(), 0);
        // K_{2,3} has three 4-cycles, all chordless
        let k23 = Graph::new(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(chordless_cycles(&k23, 100).0.len(), 3);
        // the octahedron's chordless cycles are its three equators
        assert_eq!(chordless_cycles(&octahedron(), 100).0.len(), 3);
    }

    #[test]
    fn icosahedron_wheels() {
        let w = sectional_and_ricci(&icosahedron());
        assert_eq!(w.wheels.len(), 12);
        assert!(w.wheels.iter().all(|wh| wh.rim.len() == 5 && wh.curvature == r(1, 6)));
        assert!(w.ricci.iter().all(|x| *x == Some(r(1, 6))));
        assert!(w.scalar.iter().all(|x| *x == Some(r(1, 6))));
    }

    #[test]
    fn octahedron_and_triangle_free() {
        let w = sectional_and_ricci(&octahedron());
        assert!(w.wheels.iter().all(|wh| wh.curvature == r(1, 3)));
        let t = sectional_and_ricci(&cycle(6).unwrap());
        assert!(t.wheels.is_empty());
        assert!(t.ricci.iter().all(|x| x.is_none()));
        assert!(t.scalar.iter().all(|x| x.is_none()));
    }
}
