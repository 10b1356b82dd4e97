//! Chip-firing divisors on the 1-skeleton: q-reduction, Baker-Norine rank,
//! canonical divisor, Jacobian order and the Riemann-Roch identity.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{abs_big, det_i64};
use num_bigint::BigInt;
use serde::Serialize;
use std::collections::{HashMap, HashSet};

/// Cap on distinct superstable configurations explored per graph.
pub const DEFAULT_CLASS_BUDGET: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Divisor {
    pub values: Vec<i64>,
}

impl Divisor {
    pub fn new(values: Vec<i64>) -> Self {
        Divisor { values }
    }

    pub fn zero(n: usize) -> Self {
        Divisor { values: vec![0; n] }
    }

    pub fn unit(n: usize, v: usize, k: i64) -> Self {
        let mut d = Self::zero(n);
        d.values[v] = k;
        d
    }

    pub fn degree(&self) -> i64 {
        self.values.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.values.iter().all(|&x| x >= 0)
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        Divisor { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        Divisor { values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect() }
    }
}

fn require_connected(g: &Graph) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

fn check_len(g: &Graph, d: &Divisor) -> Result<()> {
    if d.values.len() != g.n() {
        return Err(Error::Shape(format!("divisor has {} values for {} vertices", d.values.len(), g.n())));
    }
    Ok(())
}

/// `K(x) = deg(x) - 2`.
pub fn canonical_divisor(g: &Graph) -> Result<Divisor> {
    require_connected(g)?;
    Ok(Divisor { values: (0..g.n()).map(|v| g.degree(v) as i64 - 2).collect() })
}

/// `D - L f`: the result of firing each vertex `v` exactly `f(v)` times.
pub fn fire(g: &Graph, d: &Divisor, f: &[i64]) -> Divisor {
    let mut out = d.values.clone();
    for v in 0..g.n() {
        out[v] -= f[v] * g.degree(v) as i64;
        for w in g.neighbors(v) {
            out[w] += f[v];
        }
    }
    Divisor { values: out }
}

/// The unique q-reduced divisor equivalent to `d`.
pub fn q_reduce(g: &Graph, d: &Divisor, q: usize) -> Result<Divisor> {
    require_connected(g)?;
    check_len(g, d)?;
    g.check_vertex(q)?;
    Ok(Divisor { values: reduce_raw(g, d.values.clone(), q) })
}

fn reduce_raw(g: &Graph, mut x: Vec<i64>, q: usize) -> Vec<i64> {
    let n = g.n();
    // borrow until nonnegative away from q
    loop {
        let Some(v) = (0..n).find(|&v| v != q && x[v] < 0) else { break };
        x[v] += g.degree(v) as i64;
        for w in g.neighbors(v) {
            x[w] -= 1;
        }
    }
    // Dhar burning: fire the unburnt set until everything burns
    loop {
        let mut burnt = vec![false; n];
        burnt[q] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..n {
                if !burnt[v] {
                    let fire_edges = g.neighbors(v).filter(|&w| burnt[w]).count() as i64;
                    if x[v] < fire_edges {
                        burnt[v] = true;
                        changed = true;
                    }
                }
            }
        }
        if burnt.iter().all(|&b| b) {
            return x;
        }
        for v in 0..n {
            if !burnt[v] {
                for w in g.neighbors(v) {
                    if burnt[w] {
                        x[v] -= 1;
                        x[w] += 1;
                    }
                }
            }
        }
    }
}

/// Whether `d` is linearly equivalent to an effective divisor.
pub fn is_effective_class(g: &Graph, d: &Divisor) -> Result<bool> {
    let r = q_reduce(g, d, 0)?;
    Ok(r.values[0] >= 0)
}

/// Rank computations on one graph, memoizing the reduction of
/// `c - e_v` for superstable configurations `c` (relative to `q = 0`).
pub struct DivisorContext<'a> {
    g: &'a Graph,
    ids: HashMap<Vec<i64>, usize>,
    configs: Vec<Vec<i64>>,
    weights: Vec<i64>,
    /// Per configuration and vertex: (target configuration, chips added at q).
    step: Vec<Vec<Option<(usize, i64)>>>,
    budget: usize,
}

impl<'a> DivisorContext<'a> {
    pub fn new(g: &'a Graph) -> Result<Self> {
        Self::with_budget(g, DEFAULT_CLASS_BUDGET)
    }

    pub fn with_budget(g: &'a Graph, budget: usize) -> Result<Self> {
        require_connected(g)?;
        Ok(DivisorContext { g, ids: HashMap::new(), configs: Vec::new(), weights: Vec::new(), step: Vec::new(), budget })
    }

    fn intern(&mut self, mut c: Vec<i64>) -> Result<usize> {
        c[0] = 0;
        if let Some(&i) = self.ids.get(&c) {
            return Ok(i);
        }
        if self.configs.len() >= self.budget {
            return Err(Error::Budget { what: "divisor classes".into(), limit: self.budget });
        }
        let i = self.configs.len();
        self.weights.push(c.iter().sum());
        self.ids.insert(c.clone(), i);
        self.configs.push(c);
        self.step.push(vec![None; self.g.n()]);
        Ok(i)
    }

    fn next(&mut self, c: usize, v: usize) -> Result<(usize, i64)> {
        if let Some(t) = self.step[c][v] {
            return Ok(t);
        }
        let mut x = self.configs[c].clone();
        x[v] -= 1;
        let red = reduce_raw(self.g, x, 0);
        let k = red[0];
        let t = (self.intern(red)?, k);
        self.step[c][v] = Some(t);
        Ok(t)
    }

    /// Baker-Norine rank: the largest `s` such that `D - E` is equivalent
    /// to an effective divisor for every effective `E` of degree `s`.
    pub fn rank(&mut self, d: &Divisor) -> Result<i64> {
        check_len(self.g, d)?;
        let deg = d.degree();
        let red = reduce_raw(self.g, d.values.clone(), 0);
        if red[0] < 0 {
            return Ok(-1);
        }
        let start = self.intern(red)?;
        // layer s holds the superstable parts of D - E over deg E = s; it
        // grows monotonically because subtracting e_q keeps the part fixed
        let mut mark = HashSet::from([start]);
        let mut frontier = vec![start];
        let mut heaviest = self.weights[start];
        let mut s = 0i64;
        loop {
            if frontier.is_empty() {
                return Ok(deg - heaviest);
            }
            s += 1;
            let mut fresh = Vec::new();
            for &c in &frontier {
                for v in 1..self.g.n() {
                    let (t, _) = self.next(c, v)?;
                    if mark.insert(t) {
                        fresh.push(t);
                        heaviest = heaviest.max(self.weights[t]);
                    }
                }
            }
            frontier = fresh;
            if deg - s < heaviest {
                return Ok(s - 1);
            }
        }
    }

    pub fn classes_seen(&self) -> usize {
        self.configs.len()
    }
}

pub fn rank(g: &Graph, d: &Divisor) -> Result<i64> {
    DivisorContext::new(g)?.rank(d)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RiemannRoch {
    pub rank: i64,
    pub dual_rank: i64,
    pub degree: i64,
    /// `|V| - |E|`.
    pub chi: i64,
    pub holds: bool,
}

/// `r(D) - r(K - D) = χ + deg(D)` with `χ = |V| - |E|`.
pub fn riemann_roch_check(ctx: &mut DivisorContext, d: &Divisor) -> Result<RiemannRoch> {
    let g = ctx.g;
    let k = canonical_divisor(g)?;
    let rank = ctx.rank(d)?;
    let dual_rank = ctx.rank(&k.sub(d))?;
    let chi = g.n() as i64 - g.edge_count() as i64;
    let degree = d.degree();
    Ok(RiemannRoch { rank, dual_rank, degree, chi, holds: rank - dual_rank == chi + degree })
}

/// `|det|` of the Laplacian with row and column 0 removed.
pub fn jacobian_order(g: &Graph) -> Result<BigInt> {
    require_connected(g)?;
    let l = g.laplacian();
    let reduced: Vec<Vec<i64>> = l[1..].iter().map(|row| row[1..].to_vec()).collect();
    Ok(abs_big(&det_i64(&reduced)))
}

/// Number of superstable configurations, found by closing the zero
/// configuration under `c -> red(c - e_v)` and `c -> red(c + e_v)`.
pub fn superstable_count(g: &Graph) -> Result<usize> {
    let mut ctx = DivisorContext::new(g)?;
    let n = g.n();
    let start = ctx.intern(vec![0; n])?;
    let mut stack = vec![start];
    let mut seen = vec![true];
    while let Some(c) = stack.pop() {
        let mut targets = Vec::new();
        for v in 1..n {
            targets.push(ctx.next(c, v)?.0);
            let mut x = ctx.configs[c].clone();
            x[v] += 1;
            let red = reduce_raw(g, x, 0);
            targets.push(ctx.intern(red)?);
        }
        for t in targets {
            if t >= seen.len() {
                seen.resize(t + 1, false);
            }
            if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    Ok(seen.iter().filter(|&&b| b).count())
}

#[cfg(test)]
pub(crate) mod oracle {
    //! Brute-force effectivity and rank for tiny graphs.
    use super::*;

    /// Searches firing scripts `f` with `0 <= f <= bound` and some zero entry.
    pub fn effective_brute(g: &Graph, d: &Divisor, bound: i64) -> bool {
        let n = g.n();
        let mut f = vec![0i64; n];
        loop {
            if f.iter().any(|&x| x == 0) && fire(g, d, &f).is_effective() {
                return true;
            }
            let mut i = 0;
            while i < n {
                f[i] += 1;
                if f[i] <= bound {
                    break;
                }
                f[i] = 0;
                i += 1;
            }
            if i == n {
                return false;
            }
        }
    }

    pub fn multisets(n: usize, s: usize) -> Vec<Vec<i64>> {
        fn rec(n: usize, s: usize, from: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if s == 0 {
                out.push(cur.clone());
                return;
            }
            for v in from..n {
                cur[v] += 1;
                rec(n, s - 1, v, cur, out);
                cur[v] -= 1;
            }
        }
        let mut out = Vec::new();
        rec(n, s, 0, &mut vec![0; n], &mut out);
        out
    }

    pub fn rank_brute(g: &Graph, d: &Divisor, bound: i64) -> i64 {
        let mut s = 0;
        loop {
            for e in multisets(g.n(), s) {
                if !effective_brute(g, &d.sub(&Divisor::new(e)), bound) {
                    return s as i64 - 1;
                }
            }
            s += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::oracle::*;
    use super::*;
    use crate::graph::generators::*;
    use crate::spectral::spanning_tree_count;
    use proptest::prelude::*;

    fn dv(v: &[i64]) -> Divisor {
        Divisor::new(v.to_vec())
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_divisor(&cycle(5).unwrap()).unwrap(), Divisor::zero(5));
        assert_eq!(canonical_divisor(&path(3)).unwrap(), dv(&[-1, 0, -1]));
        assert_eq!(canonical_divisor(&complete(4)).unwrap(), dv(&[1, 1, 1, 1]));
        assert_eq!(canonical_divisor(&Graph::empty(2)), Err(Error::Disconnected));
    }

    #[test]
    fn pentagon_ranks() {
        let g = cycle(5).unwrap();
        let mut ctx = DivisorContext::new(&g).unwrap();
        assert_eq!(ctx.rank(&Divisor::zero(5)).unwrap(), 0);
        assert_eq!(ctx.rank(&Divisor::unit(5, 2, 2)).unwrap(), 1);
        assert_eq!(ctx.rank(&Divisor::unit(5, 2, -1)).unwrap(), -1);
        assert_eq!(ctx.rank(&dv(&[1, -1, 0, 0, 0])).unwrap(), -1);
        for d in [dv(&[1, 2, -1, 0, 3]), dv(&[0, 0, 1, 0, 0]), dv(&[-2, 1, 1, 0, 0])] {
            let rr = riemann_roch_check(&mut ctx, &d).unwrap();
            assert!(rr.holds);
            assert_eq!(rr.rank - rr.dual_rank, d.degree());
        }
    }

    #[test]
    fn jacobian_examples() {
        assert_eq!(jacobian_order(&cycle(5).unwrap()).unwrap(), BigInt::from(5));
        assert_eq!(jacobian_order(&complete(2)).unwrap(), BigInt::from(1));
        assert_eq!(jacobian_order(&complete(4)).unwrap(), BigInt::from(16));
        for g in [octahedron(), wheel(5).unwrap(), random_er(7, 0.5, 2).unwrap()] {
            if g.is_connected() {
                let j = jacobian_order(&g).unwrap();
                assert_eq!(j, spanning_tree_count(&g).count);
                assert_eq!(BigInt::from(superstable_count(&g).unwrap()), j);
            }
        }
    }

    #[test]
    fn reduced_form_is_reduced() {
        let g = octahedron();
        let r = q_reduce(&g, &dv(&[3, -4, 7, 0, 2, -1]), 0).unwrap();
        assert_eq!(r.degree(), 7);
        assert!(r.values[1..].iter().all(|&x| x >= 0));
        // no nonempty set avoiding q can fire
        for mask in 1u32..(1 << 5) {
            let set: Vec<usize> = (1..6).filter(|v| mask & (1 << (v - 1)) != 0).collect();
            let ok = set.iter().all(|&v| {
                let out = g.neighbors(v).filter(|w| !set.contains(w)).count() as i64;
                r.values[v] >= out
            });
            assert!(!ok);
        }
    }

    #[test]
    fn brute_force_agreement() {
        let graphs = [cycle(4).unwrap(), complete(4), path(3), star(3), cycle(5).unwrap(), wheel(4).unwrap()];
        let mut rng_state = 7u64;
        for g in &graphs {
            let mut ctx = DivisorContext::new(g).unwrap();
            for _ in 0..15 {
                let d: Vec<i64> = (0..g.n())
                    .map(|_| {
                        rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        ((rng_state >> 33) % 4) as i64 - 1
                    })
                    .collect();
                let d = Divisor::new(d);
                assert_eq!(ctx.rank(&d).unwrap(), rank_brute(g, &d, 12), "{:?}", d.values);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_is_a_class_invariant(seed in 0u64..500, vals in prop::collection::vec(-2i64..3, 7), f in prop::collection::vec(-3i64..4, 7)) {
            let g = random_er(7, 0.5, seed).unwrap();
            prop_assume!(g.is_connected());
            let mut ctx = DivisorContext::new(&g).unwrap();
            let d = Divisor::new(vals);
            let r = ctx.rank(&d).unwrap();
            prop_assert_eq!(r, ctx.rank(&fire(&g, &d, &f)).unwrap());
            for v in 0..7 {
                let up = ctx.rank(&d.add(&Divisor::unit(7, v, 1))).unwrap();
                prop_assert!(up == r || up == r + 1);
            }
            prop_assert!(riemann_roch_check(&mut ctx, &d).unwrap().holds);
        }
    }
}
