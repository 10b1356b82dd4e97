//! Orbital networks on `Z_n` and on the nonzero residues, and the
//! number-theoretic claim suite evaluated on them.

use crate::complex::{euler_of_graph, f_vector};
use crate::error::{Error, Result};
use crate::graph::Graph;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    /// All residues `0..n`.
    Ring,
    /// Nonzero residues `1..n`; images leaving the set give no edge.
    Multiplicative,
}

/// Integer polynomial, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Poly {
    pub coeffs: Vec<i64>,
}

impl Poly {
    pub fn new(coeffs: &[i64]) -> Self {
        Poly { coeffs: coeffs.to_vec() }
    }

    /// `a x + b`.
    pub fn linear(a: i64, b: i64) -> Self {
        Poly::new(&[b, a])
    }

    /// `x^2 + a`.
    pub fn quadratic(a: i64) -> Self {
        Poly::new(&[a, 0, 1])
    }

    pub fn monomial(k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        Poly { coeffs: c }
    }

    pub fn eval_mod(&self, x: u64, n: u64) -> u64 {
        let n = n as i128;
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = (acc * x as i128 + c as i128).rem_euclid(n);
        }
        acc as u64
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            terms.push(match k {
                0 => format!("{c}"),
                1 if c == 1 => "x".to_string(),
                1 => format!("{c}x"),
                _ if c == 1 => format!("x^{k}"),
                _ => format!("{c}x^{k}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitalSpec {
    pub modulus: u64,
    pub domain: Domain,
    pub maps: Vec<Poly>,
}

impl OrbitalSpec {
    pub fn new(modulus: u64, domain: Domain, maps: Vec<Poly>) -> Self {
        OrbitalSpec { modulus, domain, maps }
    }

    /// Residue carried by each vertex.
    pub fn labels(&self) -> Vec<u64> {
        match self.domain {
            Domain::Ring => (0..self.modulus).collect(),
            Domain::Multiplicative => (1..self.modulus).collect(),
        }
    }
}

/// Edges `x - T(x)` for every map `T` and domain element `x` with
/// `T(x) ≠ x` inside the domain.
pub fn orbital_graph(spec: &OrbitalSpec) -> Result<Graph> {
    let n = spec.modulus;
    if n < 2 {
        return Err(Error::Invalid(format!("modulus {n} < 2")));
    }
    let offset = match spec.domain {
        Domain::Ring => 0,
        Domain::Multiplicative => 1,
    };
    let mut edges = Vec::new();
    for x in spec.labels() {
        for t in &spec.maps {
            let y = t.eval_mod(x, n);
            if y != x && y >= offset {
                edges.push(((x - offset) as usize, (y - offset) as usize));
            }
        }
    }
    Graph::new((n - offset) as usize, &edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NumberPredicates {
    pub is_prime: bool,
    /// `ord_n(2) = φ(n)`.
    pub two_primitive_root: bool,
    pub is_fermat_prime: bool,
    pub is_pierpont_prime: bool,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut phi = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// Multiplicative order of `a` mod `n`, if `a` is a unit.
pub fn multiplicative_order(a: u64, n: u64) -> Option<u64> {
    if n < 2 || num_integer::gcd(a, n) != 1 {
        return None;
    }
    let mut x = a % n;
    let mut k = 1;
    while x != 1 % n {
        x = x * a % n;
        k += 1;
    }
    Some(k)
}

pub fn number_predicates(n: u64) -> NumberPredicates {
    let prime = is_prime(n);
    let m = n.saturating_sub(1);
    let power_of_two = m.is_power_of_two();
    let fermat = prime && power_of_two && (m.trailing_zeros() as u64).is_power_of_two();
    let mut r = m;
    while r > 0 && r % 2 == 0 {
        r /= 2;
    }
    while r > 0 && r % 3 == 0 {
        r /= 3;
    }
    NumberPredicates {
        is_prime: prime,
        two_primitive_root: n >= 2 && multiplicative_order(2, n) == Some(euler_phi(n)),
        is_fermat_prime: fermat,
        is_pierpont_prime: prime && r == 1,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub n: u64,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub id: String,
    pub statement: String,
    pub range: String,
    pub checked: usize,
    pub counterexamples: Vec<Counterexample>,
    /// Claim-specific threshold (smallest prime from which the claim holds
    /// uniformly in the scanned range), where meaningful.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<u64>,
    pub passed: bool,
    #[serde(skip)]
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimRanges {
    /// Upper bound of `n` for the three connectivity claims.
    pub connectivity_max: u64,
    /// Primes `17 < p <= collatz_max`.
    pub collatz_max: u64,
    /// Moduli `2..=single_max` for the single quadratic generator claim.
    pub single_max: u64,
    /// Pairs claim: primes in `[pairs_min, pairs_max]` count, smaller primes
    /// only feed the threshold report.
    pub pairs_min: u64,
    pub pairs_max: u64,
    pub triangles_max: u64,
    /// Constant terms range over `0..min(p, coefficient_max)`.
    pub coefficient_max: u64,
}

impl Default for ClaimRanges {
    fn default() -> Self {
        ClaimRanges {
            connectivity_max: 2000,
            collatz_max: 2000,
            single_max: 500,
            pairs_min: 100,
            pairs_max: 500,
            triangles_max: 2000,
            coefficient_max: 50,
        }
    }
}

impl ClaimRanges {
    /// Reduced ranges for fast runs.
    pub fn quick() -> Self {
        ClaimRanges {
            connectivity_max: 300,
            collatz_max: 300,
            single_max: 60,
            pairs_min: 100,
            pairs_max: 130,
            triangles_max: 300,
            coefficient_max: 12,
        }
    }
}

pub const CLAIM_IDS: [&str; 7] = [
    "orbital-doubling",
    "orbital-squaring",
    "orbital-collatz-triangles",
    "orbital-square-cube",
    "orbital-quadratic-k4-euler",
    "orbital-quadratic-pairs",
    "orbital-quadratic-triangles",
];

fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&p| is_prime(p)).collect()
}

fn graph(n: u64, domain: Domain, maps: Vec<Poly>) -> Graph {
    orbital_graph(&OrbitalSpec::new(n, domain, maps)).expect("modulus >= 2")
}

fn finish(id: usize, statement: &str, range: String, checked: usize, mut bad: Vec<Counterexample>, start: Instant) -> ClaimReport {
    bad.sort_by(|a, b| a.n.cmp(&b.n).then(a.detail.cmp(&b.detail)));
    ClaimReport {
        id: CLAIM_IDS[id].to_string(),
        statement: statement.to_string(),
        range,
        checked,
        passed: bad.is_empty(),
        counterexamples: bad,
        threshold: None,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn iff_claim(
    id: usize,
    statement: &str,
    max: u64,
    maps: Vec<Poly>,
    rhs: impl Fn(u64) -> bool + Sync,
) -> ClaimReport {
    let start = Instant::now();
    let bad: Vec<Counterexample> = (2..=max)
        .into_par_iter()
        .filter_map(|n| {
            let lhs = graph(n, Domain::Multiplicative, maps.clone()).is_connected();
            let r = rhs(n);
            (lhs != r).then(|| Counterexample { n, detail: format!("connected={lhs} predicate={r}") })
        })
        .collect();
    finish(id, statement, format!("2 <= n <= {max}"), (max - 1) as usize, bad, start)
}

/// (1) nonzero residues with `2x` are connected iff `n` is a power of two or
/// a prime with 2 as primitive root.
pub fn claim_doubling(max: u64) -> ClaimReport {
    iff_claim(0, "(Z_n*, 2x) connected iff n = 2^m or 2 is a primitive root", max, vec![Poly::linear(2, 0)], |n| {
        n.is_power_of_two() || (is_prime(n) && multiplicative_order(2, n) == Some(n - 1))
    })
}

/// (2) nonzero residues with `x^2` are connected iff `n = 2` or `n` is a
/// Fermat prime.
pub fn claim_squaring(max: u64) -> ClaimReport {
    iff_claim(1, "(Z_n*, x^2) connected iff n = 2 or n is a Fermat prime", max, vec![Poly::monomial(2)], |n| {
        n == 2 || number_predicates(n).is_fermat_prime
    })
}

/// (3) `(Z_p, {2x, 3x+1})` has exactly four triangles for primes `p > 17`.
pub fn claim_collatz_triangles(max: u64) -> ClaimReport {
    let start = Instant::now();
    let ps = primes_in(18, max);
    let bad = ps
        .par_iter()
        .filter_map(|&p| {
            let t = graph(p, Domain::Ring, vec![Poly::linear(2, 0), Poly::linear(3, 1)]).triangle_count();
            (t != 4).then(|| Counterexample { n: p, detail: format!("triangles={t}") })
        })
        .collect();
    finish(2, "(Z_p, {2x, 3x+1}) has 4 triangles for prime p > 17", format!("primes 17 < p <= {max}"), ps.len(), bad, start)
}

/// (4) nonzero residues with `{x^2, x^3}` are connected iff `n` is a
/// Pierpont prime.
pub fn claim_square_cube(max: u64) -> ClaimReport {
    iff_claim(
        3,
        "(Z_n*, {x^2, x^3}) connected iff n is a Pierpont prime",
        max,
        vec![Poly::monomial(2), Poly::monomial(3)],
        |n| number_predicates(n).is_pierpont_prime,
    )
}

/// (5) `(Z_n, x^2 + a)` has no `K_4` and `χ >= 0`.
pub fn claim_quadratic_k4_euler(max: u64, coefficient_max: u64) -> ClaimReport {
    let start = Instant::now();
    let cases: Vec<(u64, u64)> = (2..=max).flat_map(|n| (0..n.min(coefficient_max)).map(move |a| (n, a))).collect();
    let bad = cases
        .par_iter()
        .filter_map(|&(n, a)| {
            let g = graph(n, Domain::Ring, vec![Poly::quadratic(a as i64)]);
            let f = f_vector(&g);
            let k4 = f.get(3).copied().unwrap_or(0);
            let chi = euler_of_graph(&g);
            (k4 > 0 || chi < 0).then(|| Counterexample { n, detail: format!("a={a} k4={k4} chi={chi}") })
        })
        .collect();
    finish(
        4,
        "(Z_n, x^2+a) has no K_4 and chi >= 0",
        format!("2 <= n <= {max}, 0 <= a < min(n, {coefficient_max})"),
        cases.len(),
        bad,
        start,
    )
}

/// (6) `(Z_p, {x^2+a, x^2+b})`, `a ≠ b`, has `χ < 0` for large primes.
/// Primes below `min` are scanned only to locate the threshold.
pub fn claim_quadratic_pairs(min: u64, max: u64, coefficient_max: u64) -> ClaimReport {
    let start = Instant::now();
    let ps = primes_in(2, max);
    let per_prime: Vec<(u64, Vec<Counterexample>, usize)> = ps
        .par_iter()
        .map(|&p| {
            let c = p.min(coefficient_max);
            let mut bad = Vec::new();
            let mut count = 0;
            for a in 0..c {
                for b in a + 1..c {
                    count += 1;
                    let g = graph(p, Domain::Ring, vec![Poly::quadratic(a as i64), Poly::quadratic(b as i64)]);
                    let chi = euler_of_graph(&g);
                    if chi >= 0 {
                        bad.push(Counterexample { n: p, detail: format!("a={a} b={b} chi={chi}") });
                    }
                }
            }
            (p, bad, count)
        })
        .collect();
    let threshold = per_prime.iter().rev().take_while(|(_, bad, _)| bad.is_empty()).last().map(|(p, _, _)| *p);
    let checked = per_prime.iter().filter(|(p, _, _)| *p >= min).map(|(_, _, c)| c).sum();
    let bad: Vec<Counterexample> =
        per_prime.into_iter().filter(|(p, _, _)| *p >= min).flat_map(|(_, bad, _)| bad).collect();
    let mut r = finish(
        5,
        "(Z_p, {x^2+a, x^2+b}) with a != b has chi < 0 for large primes",
        format!("primes {min} <= p <= {max}, 0 <= a < b < min(p, {coefficient_max})"),
        checked,
        bad,
        start,
    );
    r.threshold = threshold;
    r
}

/// (7) `(Z_p, x^2 + a)` has zero, one or two triangles.
pub fn claim_quadratic_triangles(max: u64, coefficient_max: u64) -> ClaimReport {
    let start = Instant::now();
    let cases: Vec<(u64, u64)> =
        primes_in(2, max).into_iter().flat_map(|p| (0..p.min(coefficient_max)).map(move |a| (p, a))).collect();
    let bad = cases
        .par_iter()
        .filter_map(|&(p, a)| {
            let t = graph(p, Domain::Ring, vec![Poly::quadratic(a as i64)]).triangle_count();
            (t > 2).then(|| Counterexample { n: p, detail: format!("a={a} triangles={t}") })
        })
        .collect();
    finish(
        6,
        "(Z_p, x^2+a) has zero, one or two triangles",
        format!("primes p <= {max}, 0 <= a < min(p, {coefficient_max})"),
        cases.len(),
        bad,
        start,
    )
}

pub fn claim_suite(r: &ClaimRanges) -> Vec<ClaimReport> {
    vec![
        claim_doubling(r.connectivity_max),
        claim_squaring(r.connectivity_max),
        claim_collatz_triangles(r.collatz_max),
        claim_square_cube(r.connectivity_max),
        claim_quadratic_k4_euler(r.single_max, r.coefficient_max),
        claim_quadratic_pairs(r.pairs_min, r.pairs_max, r.coefficient_max),
        claim_quadratic_triangles(r.triangles_max, r.coefficient_max),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct Witnesses {
    /// `(Z_311, {x^2+57, x^2+58, x^2+213})` is disconnected.
    pub z311_disconnected: bool,
    /// Triangles of `(Z_19, {2x, 3x+1})`.
    pub z19_triangles: usize,
}

pub fn witnesses() -> Witnesses {
    let g311 = graph(311, Domain::Ring, vec![Poly::quadratic(57), Poly::quadratic(58), Poly::quadratic(213)]);
    let g19 = graph(19, Domain::Ring, vec![Poly::linear(2, 0), Poly::linear(3, 1)]);
    Witnesses { z311_disconnected: !g311.is_connected(), z19_triangles: g19.triangle_count() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn doubling_mod_five() {
        let g = graph(5, Domain::Ring, vec![Poly::linear(2, 0)]);
        assert_eq!(g.edges(), &[(1, 2), (1, 3), (2, 4), (3, 4)]);
        assert_eq!(g.degree(0), 0);
    }

    #[test]
    fn small_domains() {
        let g = graph(2, Domain::Multiplicative, vec![Poly::monomial(2)]);
        assert_eq!((g.n(), g.edge_count()), (1, 0));
        assert!(g.is_connected());
        assert!(graph(17, Domain::Multiplicative, vec![Poly::monomial(2)]).is_connected());
        assert!(!graph(13, Domain::Multiplicative, vec![Poly::monomial(2)]).is_connected());
    }

    #[test]
    fn predicates() {
        assert!(number_predicates(257).is_fermat_prime);
        assert!(!number_predicates(7).is_fermat_prime);
        assert!(number_predicates(3).is_fermat_prime);
        assert!(number_predicates(11).two_primitive_root);
        assert_eq!(multiplicative_order(2, 11), Some(10));
        assert!(!number_predicates(7).two_primitive_root);
        assert!(number_predicates(13).is_pierpont_prime);
        assert!(!number_predicates(11).is_pierpont_prime);
        assert!(number_predicates(9).two_primitive_root && !number_predicates(9).is_prime);
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn known_witnesses() {
        let w = witnesses();
        assert!(w.z311_disconnected);
        assert_eq!(w.z19_triangles, 4);
        for p in primes_in(5, 97) {
            assert!(graph(p, Domain::Ring, vec![Poly::quadratic(1)]).triangle_count() <= 2);
        }
    }

    #[test]
    fn quick_suite_passes() {
        for r in claim_suite(&ClaimRanges::quick()) {
            assert!(r.passed, "{} {:?}", r.id, r.counterexamples);
        }
    }

    #[test]
    fn poly_display_and_eval() {
        assert_eq!(Poly::quadratic(57).to_string(), "x^2+57");
        assert_eq!(Poly::linear(3, 1).to_string(), "3x+1");
        assert_eq!(Poly::new(&[-1, 0, 1]).eval_mod(0, 7), 6);
    }

    proptest! {
        #[test]
        fn generator_order_irrelevant(n in 2u64..80, a in -5i64..5, b in -5i64..5, c in 0i64..4) {
            let p = Poly::new(&[a, b]);
            let q = Poly::new(&[c, 0, 1]);
            for dom in [Domain::Ring, Domain::Multiplicative] {
                let g1 = graph(n, dom, vec![p.clone(), q.clone()]);
                let g2 = graph(n, dom, vec![q.clone(), p.clone()]);
                prop_assert_eq!(g1.edges(), g2.edges());
                let g3 = graph(n, dom, vec![p.clone(), q.clone()]);
                prop_assert_eq!(g1.edges(), g3.edges());
            }
        }
    }
}
