use crate::graph::Graph;
use crate::morse::crit;
use crate::verdict::Verdict;
use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq)]
pub struct DimensionValue {
    /// `1 + dim S(x)` per vertex.
    pub per_vertex: Vec<BigRational>,
    /// Average of the per-vertex values; `-1` for the empty graph.
    pub graph: BigRational,
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

struct DimMemo<'a> {
    g: &'a Graph,
    memo: HashMap<FixedBitSet, BigRational>,
}

impl DimMemo<'_> {
    fn dim(&mut self, set: &FixedBitSet) -> BigRational {
        let count = set.count_ones(..);
        if count == 0 {
            return int(-1);
        }
        if let Some(v) = self.memo.get(set) {
            return v.clone();
        }
        let mut sum = BigRational::zero();
        for v in set.ones() {
            let mut sphere = self.g.row(v).clone();
            sphere.intersect_with(set);
            sum += BigRational::one() + self.dim(&sphere);
        }
        let d = sum / int(count as i64);
        self.memo.insert(set.clone(), d.clone());
        d
    }
}

/// Inductive dimension, memoised over induced vertex sets.
pub fn inductive_dimension(g: &Graph) -> DimensionValue {
    let mut m = DimMemo { g, memo: HashMap::new() };
    let per_vertex: Vec<BigRational> =
        (0..g.n()).map(|v| BigRational::one() + m.dim(g.row(v))).collect();
    let graph = if g.n() == 0 {
        int(-1)
    } else {
        per_vertex.iter().fold(BigRational::zero(), |a, b| a + b) / int(g.n() as i64)
    };
    DimensionValue { per_vertex, graph }
}

/// Polynomial in `p` as rational coefficients, lowest degree first.
pub type Poly = Vec<BigRational>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &mut Poly, b: &Poly) {
    if a.len() < b.len() {
        a.resize(b.len(), BigRational::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn poly_eval(p: &Poly, x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

pub fn poly_eval_f64(p: &Poly, x: f64) -> f64 {
    use num_traits::ToPrimitive;
    p.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap())
}

/// Expected inductive dimension of `G(n, p)` as a polynomial in `p`:
/// `d_0 = -1`, `d_{m+1} = 1 + Σ_k C(m,k) p^k (1-p)^{m-k} d_k`.
pub fn expected_dimension_polynomial(n: usize) -> Poly {
    let mut d: Vec<Poly> = vec![vec![int(-1)]];
    let p: Poly = vec![int(0), int(1)];
    let q: Poly = vec![int(1), int(-1)];
    let pow = |base: &Poly, e: usize| (0..e).fold(vec![int(1)], |acc, _| poly_mul(&acc, base));
    for m in 0..n {
        let mut next: Poly = vec![int(1)];
        for (k, dk) in d.iter().enumerate() {
            let c = int(binomial(m as i64, k as i64));
            let term = poly_mul(&poly_mul(&pow(&p, k), &pow(&q, m - k)), dk);
            poly_add(&mut next, &term.iter().map(|x| x * &c).collect());
        }
        d.push(trim(next));
    }
    d.pop().unwrap()
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeometricVerdict {
    pub verdict: Verdict,
    /// Vertex whose sphere failed, when the verdict is `No`.
    pub failing_vertex: Option<usize>,
}

/// Unit spheres larger than this are not tested for sphericity.
pub const SPHERE_TEST_LIMIT: usize = 12;

fn is_zero_sphere(g: &Graph) -> bool {
    g.n() == 2 && g.edge_count() == 0
}

/// Recursive geometricity. Dimension 1: every unit sphere is two isolated
/// vertices. Dimension `d > 1`: every unit sphere is geometric of dimension
/// `d - 1` and has minimal critical-point count 2.
pub fn is_geometric(g: &Graph, d: usize) -> GeometricVerdict {
    if d == 0 || g.n() == 0 {
        return GeometricVerdict { verdict: Verdict::No, failing_vertex: None };
    }
    let mut unknown = false;
    for x in 0..g.n() {
        let s = g.unit_sphere(x).unwrap().graph;
        if d == 1 {
            if !is_zero_sphere(&s) {
                return GeometricVerdict { verdict: Verdict::No, failing_vertex: Some(x) };
            }
            continue;
        }
        match is_geometric(&s, d - 1).verdict {
            Verdict::No => return GeometricVerdict { verdict: Verdict::No, failing_vertex: Some(x) },
            Verdict::Unknown => unknown = true,
            Verdict::Yes => {}
        }
        if s.n() > SPHERE_TEST_LIMIT {
            unknown = true;
            continue;
        }
        match crit(&s) {
            Ok(c) if c.exact && c.value == 2 => {}
            Ok(c) if c.exact => return GeometricVerdict { verdict: Verdict::No, failing_vertex: Some(x) },
            _ => unknown = true,
        }
    }
    GeometricVerdict { verdict: if unknown { Verdict::Unknown } else { Verdict::Yes }, failing_vertex: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    #[test]
    fn dimensions() {
        for n in 0..7 {
            assert_eq!(inductive_dimension(&complete(n + 1)).graph, int(n as i64));
        }
        assert_eq!(inductive_dimension(&octahedron()).graph, int(2));
        assert_eq!(inductive_dimension(&icosahedron()).graph, int(2));
        assert_eq!(inductive_dimension(&star(4)).graph, int(1));
        assert_eq!(inductive_dimension(&Graph::empty(0)).graph, int(-1));
        assert_eq!(inductive_dimension(&Graph::empty(3)).graph, int(0));
    }

    #[test]
    fn polynomial_low_orders() {
        assert!(expected_dimension_polynomial(1).is_empty());
        assert_eq!(expected_dimension_polynomial(2), vec![int(0), int(1)]);
        assert_eq!(expected_dimension_polynomial(0), vec![int(-1)]);
        for n in 1..8 {
            let p = expected_dimension_polynomial(n);
            assert!(p.len() <= n * (n - 1) / 2 + 1);
            assert_eq!(poly_eval(&p, &int(1)), int(n as i64 - 1));
        }
    }

    #[test]
    fn geometric_examples() {
        assert_eq!(is_geometric(&octahedron(), 2).verdict, Verdict::Yes);
        assert_eq!(is_geometric(&cross_polytope(3), 3).verdict, Verdict::Yes);
        assert_eq!(is_geometric(&complete(4), 2).verdict, Verdict::No);
        assert_eq!(is_geometric(&icosahedron(), 2).verdict, Verdict::Yes);
        assert_eq!(is_geometric(&cycle(5).unwrap(), 1).verdict, Verdict::Yes);
        assert_eq!(is_geometric(&cycle(3).unwrap(), 1).verdict, Verdict::No);
        assert_eq!(is_geometric(&triangular_torus(4).unwrap(), 2).verdict, Verdict::Yes);
    }
}
