use super::contractible::restart_orders;
use super::mask::{bits, MaskGraph};
use crate::error::{Error, Result};
use crate::graph::generators::rng;
use crate::graph::Graph;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use serde::Serialize;
use std::collections::HashMap;

/// Real-valued function on vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexFunction {
    pub values: Vec<f64>,
}

impl VertexFunction {
    /// The function taking value `i` at `order[i]`.
    pub fn from_order(order: &[usize]) -> VertexFunction {
        let mut values = vec![0.0; order.len()];
        for (i, &v) in order.iter().enumerate() {
            values[v] = i as f64;
        }
        VertexFunction { values }
    }

    pub fn is_injective(&self) -> bool {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        v.windows(2).all(|w| w[0] != w[1])
    }

    /// Vertices sorted by increasing value.
    pub fn order(&self) -> Result<Vec<usize>> {
        if !self.is_injective() {
            return Err(Error::NonInjective);
        }
        let mut o: Vec<usize> = (0..self.values.len()).collect();
        o.sort_by(|&a, &b| self.values[a].total_cmp(&self.values[b]));
        Ok(o)
    }
}

fn need_masks(g: &Graph) -> Result<MaskGraph> {
    MaskGraph::new(g).ok_or(Error::Budget { what: "vertex-mask routines".into(), limit: 64 })
}

/// Lower sphere masks `S⁻(x)` for the ordering.
fn lower_spheres(mg: &MaskGraph, order: &[usize]) -> Vec<u64> {
    let mut below = 0u64;
    let mut out = vec![0; mg.n];
    for &v in order {
        out[v] = mg.adj[v] & below;
        below |= 1 << v;
    }
    out
}

/// Poincaré–Hopf indices `i_f(x) = 1 - χ(S⁻(x))`.
pub fn ph_indices(g: &Graph, f: &VertexFunction) -> Result<Vec<i64>> {
    if f.values.len() != g.n() {
        return Err(Error::Shape("function length differs from vertex count".into()));
    }
    let order = f.order()?;
    let mg = need_masks(g)?;
    Ok(lower_spheres(&mg, &order).iter().map(|&s| 1 - mg.euler(s)).collect())
}

pub fn ph_index(g: &Graph, f: &VertexFunction, x: usize) -> Result<i64> {
    g.check_vertex(x)?;
    Ok(ph_indices(g, f)?[x])
}

/// `(Σ_x i_f(x), χ(G))`.
pub fn ph_check(g: &Graph, f: &VertexFunction) -> Result<(i64, i64)> {
    let sum = ph_indices(g, f)?.iter().sum();
    Ok((sum, crate::complex::euler_of_graph(g)))
}

pub const EXHAUSTIVE_EXPECTATION_LIMIT: usize = 7;

/// Exact mean index over all `n!` orderings.
pub fn index_expectation_exhaustive(g: &Graph) -> Result<Vec<BigRational>> {
    let n = g.n();
    if n > EXHAUSTIVE_EXPECTATION_LIMIT {
        return Err(Error::Budget { what: "exhaustive index expectation".into(), limit: EXHAUSTIVE_EXPECTATION_LIMIT });
    }
    let mg = need_masks(g)?;
    let mut cache: HashMap<u64, i64> = HashMap::new();
    let mut sums = vec![0i64; n];
    let mut perms = 0i64;
    let mut order: Vec<usize> = (0..n).collect();
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut visit = |order: &[usize], sums: &mut Vec<i64>| {
        for (x, s) in lower_spheres(&mg, order).into_iter().enumerate() {
            let chi = *cache.entry(s).or_insert_with(|| mg.euler(s));
            sums[x] += 1 - chi;
        }
    };
    visit(&order, &mut sums);
    perms += 1;
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            visit(&order, &mut sums);
            perms += 1;
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(sums.into_iter().map(|s| BigRational::new(BigInt::from(s), BigInt::from(perms))).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct SampledExpectation {
    pub mean: Vec<f64>,
    pub std_error: Vec<f64>,
    pub samples: usize,
}

/// Mean index and its standard error over uniformly random orderings.
pub fn index_expectation_sampled(g: &Graph, samples: usize, seed: u64) -> Result<SampledExpectation> {
    let n = g.n();
    let mg = need_masks(g)?;
    let mut r = rng(seed);
    let mut s1 = vec![0f64; n];
    let mut s2 = vec![0f64; n];
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..samples {
        order.shuffle(&mut r);
        for (x, s) in lower_spheres(&mg, &order).into_iter().enumerate() {
            let i = (1 - mg.euler(s)) as f64;
            s1[x] += i;
            s2[x] += i * i;
        }
    }
    let k = samples as f64;
    let mean: Vec<f64> = s1.iter().map(|s| s / k).collect();
    let std_error = (0..n)
        .map(|x| {
            let var = (s2[x] - k * mean[x] * mean[x]) / (k - 1.0).max(1.0);
            (var.max(0.0) / k).sqrt()
        })
        .collect();
    Ok(SampledExpectation { mean, std_error, samples })
}

/// Critical points of `f`: the lower sphere is empty or not contractible.
/// The flag is false when a lower sphere could not be decided.
pub fn critical_points(g: &Graph, f: &VertexFunction) -> Result<(Vec<usize>, bool)> {
    let order = f.order()?;
    let mut mg = need_masks(g)?;
    let orders = restart_orders(g.n(), super::contractible::DEFAULT_RESTARTS, 0);
    let mut exact = true;
    let lower = lower_spheres(&mg, &order);
    let mut crit = Vec::new();
    for &x in &order {
        let s = lower[x];
        let critical = match mg.contractible(s, &orders) {
            _ if s == 0 => true,
            Some(b) => !b,
            None => {
                exact = false;
                true
            }
        };
        if critical {
            crit.push(x);
        }
    }
    crit.sort_unstable();
    Ok((crit, exact))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CritValue {
    /// Minimum number of critical points over injective functions found.
    pub value: usize,
    /// True when the minimum is certified over all orderings.
    pub exact: bool,
    /// Ordering attaining `value`.
    pub witness: Vec<usize>,
}

/// Graphs up to this size get the exact subset dynamic programme.
pub const CRIT_EXACT_LIMIT: usize = 14;

/// Minimum critical-point count. Exact by dynamic programming over the set
/// of already inserted vertices; for larger graphs the best of random
/// orderings is returned as an upper bound.
pub fn crit(g: &Graph) -> Result<CritValue> {
    crit_with(g, 200, 0)
}

pub fn crit_with(g: &Graph, samples: usize, seed: u64) -> Result<CritValue> {
    let n = g.n();
    if n == 0 {
        return Ok(CritValue { value: 0, exact: true, witness: vec![] });
    }
    let mut mg = need_masks(g)?;
    if n <= CRIT_EXACT_LIMIT {
        let full = mg.full() as usize;
        let mut dp = vec![u32::MAX; full + 1];
        let mut from = vec![0u8; full + 1];
        dp[0] = 0;
        for mask in 0..=full {
            if dp[mask] == u32::MAX {
                continue;
            }
            for v in bits(!(mask as u64) & full as u64) {
                let s = mg.adj[v] & mask as u64;
                let c = if s == 0 || !mg.reducible(s) { 1 } else { 0 };
                let next = mask | 1 << v;
                if dp[mask] + c < dp[next] {
                    dp[next] = dp[mask] + c;
                    from[next] = v as u8;
                }
            }
        }
        let mut witness = Vec::with_capacity(n);
        let mut m = full;
        while m != 0 {
            let v = from[m] as usize;
            witness.push(v);
            m &= !(1 << v);
        }
        witness.reverse();
        return Ok(CritValue { value: dp[full] as usize, exact: true, witness });
    }
    let mut r = rng(seed);
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..samples {
        order.shuffle(&mut r);
        let (c, _) = critical_points(g, &VertexFunction::from_order(&order))?;
        if best.as_ref().map_or(true, |b| c.len() < b.0) {
            best = Some((c.len(), order.clone()));
        }
    }
    let (value, witness) = best.unwrap();
    let _ = &mut mg;
    Ok(CritValue { value, exact: false, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    /// Poles 4 (p) and 5 (n); equator a=0, b=2, c=1, d=3.
    fn height() -> VertexFunction {
        VertexFunction::from_order(&[4, 0, 2, 1, 3, 5])
    }

    #[test]
    fn octahedron_height_indices() {
        let oct = octahedron();
        let idx = ph_indices(&oct, &height()).unwrap();
        assert_eq!(idx, vec![0, 0, 0, 0, 1, 1]);
        assert_eq!(ph_check(&oct, &height()).unwrap(), (2, 2));
        assert_eq!(critical_points(&oct, &height()).unwrap(), (vec![4, 5], true));
    }

    #[test]
    fn non_injective_rejected() {
        let f = VertexFunction { values: vec![0.0, 0.0] };
        assert_eq!(ph_indices(&complete(2), &f), Err(Error::NonInjective));
    }

    #[test]
    fn expectation_matches_curvature_examples() {
        let e = index_expectation_exhaustive(&cycle(4).unwrap()).unwrap();
        assert!(e.iter().all(|x| *x == BigRational::from_integer(0.into())));
        let e = index_expectation_exhaustive(&octahedron()).unwrap();
        assert!(e.iter().all(|x| *x == BigRational::new(1.into(), 3.into())));
        assert_eq!(index_expectation_exhaustive(&complete(1)).unwrap()[0], BigRational::from_integer(1.into()));
        assert!(index_expectation_exhaustive(&complete(8)).is_err());
    }

    #[test]
    fn crit_examples() {
        assert_eq!(crit(&octahedron()).unwrap().value, 2);
        for n in 1..6 {
            assert_eq!(crit(&complete(n)).unwrap().value, 1);
        }
        assert_eq!(crit(&cycle(4).unwrap()).unwrap().value, 2);
        let ico = crit(&icosahedron()).unwrap();
        assert_eq!((ico.value, ico.exact), (2, true));
        let w = crit(&octahedron()).unwrap().witness;
        let (c, _) = critical_points(&octahedron(), &VertexFunction::from_order(&w)).unwrap();
        assert_eq!(c.len(), 2);
    }
}
