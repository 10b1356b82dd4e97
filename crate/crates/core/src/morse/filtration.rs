use super::index::{ph_indices, VertexFunction};
use crate::complex::SimplicialStructure;
use crate::error::Result;
use crate::graph::Graph;
use crate::spectral::betti_rank_oracle;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct MorseReport {
    pub order: Vec<usize>,
    /// Poincaré–Hopf index per vertex.
    pub indices: Vec<i64>,
    /// Betti vector after each insertion, in insertion order.
    pub betti_steps: Vec<Vec<usize>>,
    /// Change of the Betti vector caused by each vertex (indexed by vertex).
    pub betti_delta: Vec<Vec<i64>>,
    /// Morse index per vertex when the filtration is Morse; `None` for
    /// regular vertices.
    pub morse_index: Vec<Option<usize>>,
    /// Critical point counts `c_m`.
    pub counts: Vec<usize>,
    pub is_morse: bool,
    pub final_betti: Vec<usize>,
    pub euler: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MorseInequalities {
    pub weak_euler: bool,
    pub weak_bounds: bool,
    pub strong: bool,
}

impl MorseInequalities {
    pub fn all(&self) -> bool {
        self.weak_euler && self.weak_bounds && self.strong
    }
}

fn betti_of(g: &Graph, prefix: &[usize]) -> Vec<usize> {
    let sub = g.induced(prefix).unwrap().graph;
    betti_rank_oracle(&SimplicialStructure::new(&sub).expect("small prefix"))
}

/// Inserts vertices by increasing `f` and tracks Betti numbers exactly.
pub fn morse_filtration(g: &Graph, f: &VertexFunction) -> Result<MorseReport> {
    let order = f.order()?;
    let indices = ph_indices(g, f)?;
    let n = g.n();
    let mut betti_steps = Vec::with_capacity(n);
    let mut betti_delta = vec![Vec::new(); n];
    let mut morse_index = vec![None; n];
    let mut is_morse = true;
    let mut prev: Vec<usize> = Vec::new();
    for i in 0..n {
        let b = betti_of(g, &order[..=i]);
        let len = b.len().max(prev.len());
        let delta: Vec<i64> = (0..len)
            .map(|k| *b.get(k).unwrap_or(&0) as i64 - *prev.get(k).unwrap_or(&0) as i64)
            .collect();
        let changed: Vec<usize> = (0..len).filter(|&k| delta[k] != 0).collect();
        let v = order[i];
        match changed.as_slice() {
            [] => {}
            [m] if delta[*m] == 1 => morse_index[v] = Some(*m),
            [m] if delta[*m] == -1 => morse_index[v] = Some(*m + 1),
            _ => is_morse = false,
        }
        betti_delta[v] = delta;
        betti_steps.push(b.clone());
        prev = b;
    }
    if is_morse {
        // a Morse critical point of index m has Poincaré–Hopf index (-1)^m
        for v in 0..n {
            let expect = match morse_index[v] {
                Some(m) => if m % 2 == 0 { 1 } else { -1 },
                None => 0,
            };
            if indices[v] != expect {
                is_morse = false;
            }
        }
    }
    let mut counts = Vec::new();
    if is_morse {
        for m in morse_index.iter().flatten() {
            if counts.len() <= *m {
                counts.resize(m + 1, 0);
            }
            counts[*m] += 1;
        }
    }
    let euler = crate::complex::euler_of_graph(g);
    Ok(MorseReport { order, indices, betti_steps, betti_delta, morse_index, counts, is_morse, final_betti: prev, euler })
}

/// Weak and strong Morse inequalities; `None` when the filtration is not Morse.
pub fn morse_inequalities_check(r: &MorseReport) -> Option<MorseInequalities> {
    if !r.is_morse {
        return None;
    }
    let top = r.counts.len().max(r.final_betti.len());
    let c = |k: usize| *r.counts.get(k).unwrap_or(&0) as i64;
    let b = |k: usize| *r.final_betti.get(k).unwrap_or(&0) as i64;
    let alt: i64 = (0..top).map(|k| if k % 2 == 0 { c(k) } else { -c(k) }).sum();
    let weak_bounds = (0..top).all(|m| b(m) <= c(m));
    let strong = (0..top).all(|m| {
        let sign = |k: usize| if k % 2 == 0 { 1 } else { -1 };
        let lhs: i64 = (0..=m).map(|k| sign(k) * b(m - k)).sum();
        let rhs: i64 = (0..=m).map(|k| sign(k) * c(m - k)).sum();
        lhs <= rhs
    });
    Some(MorseInequalities { weak_euler: alt == r.euler, weak_bounds, strong })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    #[test]
    fn octahedron_height() {
        let h = VertexFunction::from_order(&[4, 0, 2, 1, 3, 5]);
        let r = morse_filtration(&octahedron(), &h).unwrap();
        assert!(r.is_morse);
        assert_eq!(r.counts, vec![1, 0, 1]);
        assert_eq!(r.morse_index[5], Some(2));
        let ineq = morse_inequalities_check(&r).unwrap();
        assert!(ineq.all());
    }

    #[test]
    fn triangle_and_square() {
        let r = morse_filtration(&complete(3), &VertexFunction::from_order(&[2, 0, 1])).unwrap();
        assert_eq!(r.counts, vec![1]);
        let r = morse_filtration(&cycle(4).unwrap(), &VertexFunction::from_order(&[0, 1, 2, 3])).unwrap();
        assert!(r.is_morse);
        assert_eq!(r.counts, vec![1, 1]);
        assert_eq!(r.morse_index[3], Some(1));
    }

    #[test]
    fn non_morse_filtration() {
        // the hub of a 3-star inserted last merges three components at once
        let r = morse_filtration(&star(3), &VertexFunction::from_order(&[1, 2, 3, 0])).unwrap();
        assert!(!r.is_morse);
        assert_eq!(r.betti_delta[0], vec![-2, 0]);
        assert!(morse_inequalities_check(&r).is_none());
    }
}
