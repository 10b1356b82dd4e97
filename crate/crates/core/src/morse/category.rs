//! Cover number by contractible subgraphs, cup length, and the
//! comparison `cup ≤ tcap ≤ crit`.

use super::index::crit;
use super::mask::{bits, MaskGraph};
use crate::complex::{Form, SimplicialStructure};
use crate::error::{Error, Result};
use crate::graph::generators::rng;
use crate::graph::Graph;
use crate::spectral::OperatorBundle;
use nalgebra::DMatrix;
use rand::Rng;
use serde::Serialize;

pub const TCAP_EXACT_LIMIT: usize = 10;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverResult {
    pub value: usize,
    pub exact: bool,
    /// Vertex sets of the covering subgraphs.
    pub cover: Vec<Vec<usize>>,
}

/// Elements to cover: every vertex. Requiring edges as well breaks
/// `tcap ≤ crit` on a wedge of two circles with ten vertices.
fn elements(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| 1u64 << v).collect()
}

/// Grows a contractible set from `seed` by pyramid extensions, preferring
/// vertices that cover the most uncovered elements.
fn grow(mg: &mut MaskGraph, seed: u64, uncovered: &[u64]) -> u64 {
    let mut set = seed;
    loop {
        let mut best: Option<(usize, usize)> = None;
        for v in bits(mg.full() & !set) {
            let s = mg.adj[v] & set;
            if s == 0 || !contractible_small(mg, s) {
                continue;
            }
            let next = set | 1 << v;
            let gain = uncovered.iter().filter(|&&e| e & next == e && e & set != e).count();
            if best.map_or(true, |b| gain > b.1) {
                best = Some((v, gain));
            }
        }
        match best {
            Some((v, gain)) if gain > 0 => set |= 1 << v,
            _ => return set,
        }
    }
}

fn contractible_small(mg: &mut MaskGraph, s: u64) -> bool {
    mg.contractible(s, &[(0..mg.n).collect()]) == Some(true)
}

/// Greedy upper bound on the contractible cover number.
pub fn tcap_upper(g: &Graph) -> Result<CoverResult> {
    let mut mg = MaskGraph::new(g).ok_or(Error::Budget { what: "tcap".into(), limit: 64 })?;
    let mut uncovered = elements(g);
    let mut cover = Vec::new();
    while let Some(&first) = uncovered.first() {
        let set = grow(&mut mg, first, &uncovered);
        uncovered.retain(|&e| e & set != e);
        cover.push(bits(set).collect());
    }
    Ok(CoverResult { value: cover.len(), exact: false, cover })
}

/// Exact contractible cover number for graphs with at most
/// `TCAP_EXACT_LIMIT` vertices, searched over inclusion-maximal
/// contractible induced subgraphs.
pub fn tcap_exact(g: &Graph) -> Result<CoverResult> {
    let n = g.n();
    if n > TCAP_EXACT_LIMIT {
        return Err(Error::Budget { what: "exact tcap".into(), limit: TCAP_EXACT_LIMIT });
    }
    if n == 0 {
        return Ok(CoverResult { value: 0, exact: true, cover: vec![] });
    }
    let mut mg = MaskGraph::new(g).unwrap();
    let full = mg.full();
    let contractible: Vec<u64> = (1..=full).filter(|&m| mg.reducible(m)).collect();
    // replacing each member of a cover by an inclusion-maximal contractible
    // superset keeps it a cover
    let candidates: Vec<u64> = contractible
        .iter()
        .copied()
        .filter(|&m| !contractible.iter().any(|&c| c != m && c & m == m))
        .collect();
    let elems = elements(g);
    let upper = tcap_upper(g)?.value;
    for k in 1..=upper {
        let mut chosen = Vec::new();
        if cover_search(&elems, &candidates, k, &mut chosen) {
            let cover = chosen.iter().map(|&m| bits(m).collect()).collect();
            return Ok(CoverResult { value: k, exact: true, cover });
        }
    }
    let cover = tcap_upper(g)?.cover;
    Ok(CoverResult { value: upper, exact: true, cover })
}

fn cover_search(elems: &[u64], cand: &[u64], k: usize, chosen: &mut Vec<u64>) -> bool {
    let Some(&e) = elems.iter().find(|&&e| !chosen.iter().any(|&c| c & e == e)) else {
        return true;
    };
    if chosen.len() == k {
        return false;
    }
    for &c in cand.iter().filter(|&&c| c & e == e) {
        chosen.push(c);
        if cover_search(elems, cand, k, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Lower bound on cup length from harmonic representatives.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CupLength {
    /// Largest number of positive-degree classes found whose product is
    /// nonzero in cohomology (0 when all positive-degree cohomology vanishes).
    pub factors: usize,
    /// `factors + 1`, the normalisation under which `cup ≤ tcap` compares
    /// with covers and critical points.
    pub cup: usize,
}

fn harmonic_basis(b: &OperatorBundle, k: usize) -> Vec<Vec<f64>> {
    let Some(block) = b.blocks.get(k) else { return vec![] };
    let e = &block.eigen;
    (0..e.values.len())
        .filter(|&i| e.values[i] < b.tolerance)
        .map(|i| e.vectors.column(i).iter().copied().collect())
        .collect()
}

fn project_norm(basis: &[Vec<f64>], v: &[f64]) -> f64 {
    basis
        .iter()
        .map(|h| h.iter().zip(v).map(|(a, b)| a * b).sum::<f64>().powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Searches products of harmonic forms (basis elements and `trials` random
/// integer combinations) whose projection onto the harmonic forms of the
/// product degree is nonzero.
pub fn cup_length_lower(s: &SimplicialStructure, trials: usize, seed: u64) -> Result<CupLength> {
    let b = OperatorBundle::new(s)?;
    let dims = s.dims();
    let bases: Vec<Vec<Vec<f64>>> = (0..dims).map(|k| harmonic_basis(&b, k)).collect();
    let positive: Vec<usize> = (1..dims).filter(|&k| !bases[k].is_empty()).collect();
    if positive.is_empty() {
        return Ok(CupLength { factors: 0, cup: 1 });
    }
    let mut best = 1;
    let mut r = rng(seed);
    let random_class = |k: usize, r: &mut rand_chacha::ChaCha8Rng| -> Form<f64> {
        let mut v = vec![0.0; s.count(k)];
        for h in &bases[k] {
            let c = r.gen_range(-3i64..=3) as f64;
            for (a, x) in v.iter_mut().zip(h) {
                *a += c * x;
            }
        }
        Form { degree: k, coeffs: v }
    };
    let nonzero = |f: &Form<f64>| -> bool {
        let scale = f.coeffs.iter().map(|x| x.abs()).fold(0.0, f64::max);
        scale > 0.0 && project_norm(&bases[f.degree], &f.coeffs) > 1e-8 * (1.0 + scale)
    };
    // deterministic pairs of basis elements, then random chains
    for &p in &positive {
        for &q in &positive {
            if p + q >= dims || bases[p + q].is_empty() {
                continue;
            }
            for h1 in &bases[p] {
                for h2 in &bases[q] {
                    let f = Form { degree: p, coeffs: h1.clone() };
                    let g = Form { degree: q, coeffs: h2.clone() };
                    if nonzero(&s.cup(&f, &g)) {
                        best = best.max(2);
                    }
                }
            }
        }
    }
    for _ in 0..trials {
        let mut prod = random_class(positive[r.gen_range(0..positive.len())], &mut r);
        let mut len = 1;
        loop {
            let options: Vec<usize> = positive
                .iter()
                .copied()
                .filter(|&q| prod.degree + q < dims && !bases[prod.degree + q].is_empty())
                .collect();
            if options.is_empty() {
                break;
            }
            let q = options[r.gen_range(0..options.len())];
            let next = s.cup(&prod, &random_class(q, &mut r));
            if !nonzero(&next) {
                break;
            }
            prod = next;
            len += 1;
            best = best.max(len);
        }
    }
    Ok(CupLength { factors: best, cup: best + 1 })
}

#[derive(Clone, Debug, Serialize)]
pub struct LsTriple {
    pub cup: CupLength,
    pub tcap: CoverResult,
    pub crit: super::index::CritValue,
    pub holds: bool,
    pub all_exact: bool,
}

/// Computes cup length, cover number and critical-point count and checks
/// `cup ≤ tcap ≤ crit`.
pub fn ls_triple_check(g: &Graph) -> Result<LsTriple> {
    let s = SimplicialStructure::new(g)?;
    let cup = cup_length_lower(&s, 200, 0)?;
    let tcap = if g.n() <= TCAP_EXACT_LIMIT { tcap_exact(g)? } else { tcap_upper(g)? };
    let crit = crit(g)?;
    let all_exact = tcap.exact && crit.exact;
    let holds = cup.cup <= tcap.value && tcap.value <= crit.value;
    Ok(LsTriple { cup, tcap, crit, holds, all_exact })
}

/// Dense harmonic projector onto `ker L_k`, for inspection.
pub fn harmonic_projector(b: &OperatorBundle, k: usize) -> DMatrix<f64> {
    let basis = harmonic_basis(b, k);
    let n = b.blocks.get(k).map_or(0, |bl| bl.matrix.nrows());
    let mut p = DMatrix::zeros(n, n);
    for h in &basis {
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] += h[i] * h[j];
            }
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    #[test]
    fn tcap_examples() {
        assert_eq!(tcap_exact(&octahedron()).unwrap().value, 2);
        for n in 1..6 {
            assert_eq!(tcap_exact(&complete(n)).unwrap().value, 1);
        }
        assert_eq!(tcap_exact(&cycle(4).unwrap()).unwrap().value, 2);
        assert!(tcap_upper(&icosahedron()).unwrap().value >= 2);
    }

    #[test]
    fn cup_examples() {
        let c = |g: &Graph| cup_length_lower(&SimplicialStructure::new(g).unwrap(), 50, 1).unwrap();
        assert_eq!(c(&complete(5)).factors, 0);
        assert_eq!(c(&cycle(4).unwrap()).factors, 1);
        assert_eq!(c(&cycle(6).unwrap()).factors, 1);
        assert_eq!(c(&octahedron()).cup, 2);
    }

    #[test]
    fn ls_octahedron() {
        let t = ls_triple_check(&octahedron()).unwrap();
        assert_eq!((t.cup.cup, t.tcap.value, t.crit.value), (2, 2, 2));
        assert!(t.holds && t.all_exact);
    }

    #[test]
    fn wedge_of_two_circles() {
        let edges = [
            (0, 1), (0, 2), (0, 3), (0, 6), (0, 7), (0, 8), (1, 2), (1, 4), (1, 7), (1, 8), (1, 9), (2, 5),
            (2, 8), (2, 9), (3, 5), (3, 8), (3, 9), (4, 6), (4, 7), (5, 6), (5, 8), (6, 7), (7, 8),
        ];
        let g = Graph::new(10, &edges).unwrap();
        assert_eq!(crate::complex::euler_of_graph(&g), -1);
        let t = ls_triple_check(&g).unwrap();
        assert_eq!((t.tcap.value, t.crit.value), (2, 2));
        assert!(t.holds && t.all_exact);
    }
}
