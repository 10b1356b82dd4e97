//! Deterministic graph families and seeded random models.
//!
//! Random generators use `ChaCha8Rng::seed_from_u64`, so a seed fixes the
//! output on every platform.

use super::Graph;
use crate::error::{Error, Result};
use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges).unwrap()
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Invalid(format!("cycle needs at least 3 vertices, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges)
}

/// Path on `n` vertices.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::new(n, &edges).unwrap()
}

/// Star with hub 0 and `n` leaves.
pub fn star(n: usize) -> Graph {
    let edges: Vec<_> = (1..=n).map(|i| (0, i)).collect();
    Graph::new(n + 1, &edges).unwrap()
}

/// Wheel with hub 0 and rim cycle `1..=n`.
pub fn wheel(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Invalid(format!("wheel needs at least 3 spikes, got {n}")));
    }
    let mut edges: Vec<_> = (1..=n).map(|i| (0, i)).collect();
    edges.extend((1..=n).map(|i| (i, i % n + 1)));
    Graph::new(n + 1, &edges)
}

/// Cross-polytope on `2d + 2` vertices; `2i` and `2i + 1` are antipodes.
pub fn cross_polytope(d: usize) -> Graph {
    let n = 2 * d + 2;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if v != (u ^ 1) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

pub fn octahedron() -> Graph {
    cross_polytope(2)
}

/// Icosahedron: top 0, upper ring 1..=5, lower ring 6..=10, bottom 11.
pub fn icosahedron() -> Graph {
    let up = |i: usize| 1 + i % 5;
    let lo = |i: usize| 6 + i % 5;
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((0, up(i)));
        edges.push((up(i), up(i + 1)));
        edges.push((up(i), lo(i)));
        edges.push((up(i), lo(i + 1)));
        edges.push((lo(i), lo(i + 1)));
        edges.push((lo(i), 11));
    }
    Graph::new(12, &edges).unwrap()
}

/// Erdős–Rényi graph: pairs `(i, j)`, `i < j`, visited lexicographically, each
/// kept when the next uniform `f64` is below `p`.
pub fn random_er(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Invalid(format!("edge probability {p} outside [0,1]")));
    }
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if r.gen::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, &edges)
}

/// Grows a contractible graph from `K_1` by pyramid extensions: each new
/// vertex is joined to a random vertex `v` and a random subset of `S(v)`.
/// That attaching set is a cone with apex `v`, hence contractible.
pub fn random_contractible(n: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut rows: Vec<FixedBitSet> = Vec::with_capacity(n);
    for k in 0..n {
        let mut row = FixedBitSet::with_capacity(n);
        if k > 0 {
            let v = r.gen_range(0..k);
            row.insert(v);
            for w in rows[v].ones().collect::<Vec<_>>() {
                if r.gen_bool(0.5) {
                    row.insert(w);
                }
            }
        }
        for w in row.ones().collect::<Vec<_>>() {
            rows[w].insert(k);
        }
        rows.push(row);
    }
    Graph::from_rows(rows)
}

/// Uniform labelled tree on `n` vertices from a random Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    if n <= 2 {
        return path(n);
    }
    let mut r = rng(seed);
    let seq: Vec<usize> = (0..n - 2).map(|_| r.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut leaves: std::collections::BTreeSet<usize> =
        (0..n).filter(|&v| degree[v] == 1).collect();
    for &s in &seq {
        let leaf = *leaves.iter().next().unwrap();
        leaves.remove(&leaf);
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.insert(s);
        }
    }
    let last: Vec<usize> = leaves.into_iter().collect();
    edges.push((last[0], last[1]));
    Graph::new(n, &edges).unwrap()
}

const TRI_STEPS: [(i64, i64); 6] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)];

/// Degree-6 triangulated torus on the `m × m` grid with wrap-around.
pub fn triangular_torus(m: usize) -> Result<Graph> {
    if m < 4 {
        return Err(Error::Invalid(format!("triangular torus needs m >= 4, got {m}")));
    }
    let id = |i: i64, j: i64| (i.rem_euclid(m as i64) as usize) * m + j.rem_euclid(m as i64) as usize;
    let mut edges = Vec::new();
    for i in 0..m as i64 {
        for j in 0..m as i64 {
            for (di, dj) in TRI_STEPS {
                edges.push((id(i, j), id(i + di, j + dj)));
            }
        }
    }
    Graph::new(m * m, &edges)
}

/// Patch of the triangular lattice (hexagonal neighbourhoods) of the given
/// radius around the origin, which is vertex 0.
pub fn hex_patch(radius: usize) -> Graph {
    let r = radius as i64;
    let mut cells = vec![(0i64, 0i64)];
    for q in -r..=r {
        for s in -r..=r {
            if (q, s) != (0, 0) && (q + s).abs() <= r {
                cells.push((q, s));
            }
        }
    }
    let index: std::collections::HashMap<_, _> =
        cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut edges = Vec::new();
    for (i, &(q, s)) in cells.iter().enumerate() {
        for (dq, ds) in TRI_STEPS {
            if let Some(&j) = index.get(&(q + dq, s + ds)) {
                edges.push((i, j));
            }
        }
    }
    Graph::new(cells.len(), &edges).unwrap()
}

/// A named generator with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum Kind {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    Star(usize),
    Wheel(usize),
    CrossPolytope(usize),
    Octahedron,
    Icosahedron,
    RandomEr { n: usize, p: f64, seed: u64 },
    RandomContractible { n: usize, seed: u64 },
    RandomTree { n: usize, seed: u64 },
    TriangularTorus(usize),
    HexPatch(usize),
    Empty(usize),
}

impl Kind {
    pub fn generate(&self) -> Result<Graph> {
        Ok(match *self {
            Kind::Complete(n) => complete(n),
            Kind::Cycle(n) => cycle(n)?,
            Kind::Path(n) => path(n),
            Kind::Star(n) => star(n),
            Kind::Wheel(n) => wheel(n)?,
            Kind::CrossPolytope(d) => cross_polytope(d),
            Kind::Octahedron => octahedron(),
            Kind::Icosahedron => icosahedron(),
            Kind::RandomEr { n, p, seed } => random_er(n, p, seed)?,
            Kind::RandomContractible { n, seed } => random_contractible(n, seed),
            Kind::RandomTree { n, seed } => random_tree(n, seed),
            Kind::TriangularTorus(m) => triangular_torus(m)?,
            Kind::HexPatch(r) => hex_patch(r),
            Kind::Empty(n) => Graph::empty(n),
        })
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Complete(n) => write!(f, "complete:{n}"),
            Kind::Cycle(n) => write!(f, "cycle:{n}"),
            Kind::Path(n) => write!(f, "path:{n}"),
            Kind::Star(n) => write!(f, "star:{n}"),
            Kind::Wheel(n) => write!(f, "wheel:{n}"),
            Kind::CrossPolytope(d) => write!(f, "cross_polytope:{d}"),
            Kind::Octahedron => write!(f, "octahedron"),
            Kind::Icosahedron => write!(f, "icosahedron"),
            Kind::RandomEr { n, p, seed } => write!(f, "random_er:{n},{p},{seed}"),
            Kind::RandomContractible { n, seed } => write!(f, "random_contractible:{n},{seed}"),
            Kind::RandomTree { n, seed } => write!(f, "random_tree:{n},{seed}"),
            Kind::TriangularTorus(m) => write!(f, "triangular_torus:{m}"),
            Kind::HexPatch(r) => write!(f, "hex_patch:{r}"),
            Kind::Empty(n) => write!(f, "empty:{n}"),
        }
    }
}

fn bad(s: &str) -> Error {
    Error::Invalid(format!("cannot parse generator '{s}'"))
}

impl FromStr for Kind {
    type Err = Error;

    /// Parses `KIND[:ARGS]`, e.g. `cycle:5`, `random_er:10,0.5,7`.
    fn from_str(s: &str) -> Result<Kind> {
        let (name, args) = match s.split_once(':') {
            Some((a, b)) => (a, b),
            None => (s, ""),
        };
        let parts: Vec<&str> = if args.is_empty() { vec![] } else { args.split(',').collect() };
        let int = |i: usize| -> Result<usize> {
            parts.get(i).and_then(|p| p.trim().parse().ok()).ok_or_else(|| bad(s))
        };
        let seed = |i: usize| -> Result<u64> {
            Ok(match parts.get(i) {
                Some(p) => p.trim().parse().map_err(|_| bad(s))?,
                None => 0,
            })
        };
        Ok(match name {
            "complete" => Kind::Complete(int(0)?),
            "cycle" => Kind::Cycle(int(0)?),
            "path" => Kind::Path(int(0)?),
            "star" => Kind::Star(int(0)?),
            "wheel" => Kind::Wheel(int(0)?),
            "cross_polytope" => Kind::CrossPolytope(int(0)?),
            "octahedron" => Kind::Octahedron,
            "icosahedron" => Kind::Icosahedron,
            "random_er" => Kind::RandomEr {
                n: int(0)?,
                p: parts.get(1).and_then(|p| p.trim().parse().ok()).ok_or_else(|| bad(s))?,
                seed: seed(2)?,
            },
            "random_contractible" => Kind::RandomContractible { n: int(0)?, seed: seed(1)? },
            "random_tree" => Kind::RandomTree { n: int(0)?, seed: seed(1)? },
            "triangular_torus" => Kind::TriangularTorus(int(0)?),
            "hex_patch" => Kind::HexPatch(int(0)?),
            "empty" => Kind::Empty(int(0)?),
            _ => return Err(bad(s)),
        })
    }
}

/// Expands a generator spec that may contain one integer range `a..b`
/// (inclusive) in its first argument, e.g. `cycle:3..10`.
pub fn expand_spec(s: &str) -> Result<Vec<Kind>> {
    if let Some((name, args)) = s.split_once(':') {
        let (first, rest) = match args.split_once(',') {
            Some((a, b)) => (a, Some(b)),
            None => (args, None),
        };
        if let Some((lo, hi)) = first.split_once("..") {
            let lo: usize = lo.trim().parse().map_err(|_| bad(s))?;
            let hi: usize = hi.trim().parse().map_err(|_| bad(s))?;
            return (lo..=hi)
                .map(|k| {
                    let spec = match rest {
                        Some(r) => format!("{name}:{k},{r}"),
                        None => format!("{name}:{k}"),
                    };
                    spec.parse()
                })
                .collect();
        }
    }
    Ok(vec![s.parse()?])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        let c5 = cycle(5).unwrap();
        assert_eq!((c5.n(), c5.edge_count()), (5, 5));
        let oct = octahedron();
        assert_eq!((oct.n(), oct.edge_count(), oct.triangle_count()), (6, 12, 8));
        let ico = icosahedron();
        assert_eq!((ico.n(), ico.edge_count(), ico.triangle_count()), (12, 30, 20));
        assert!((0..12).all(|v| ico.degree(v) == 5));
        assert_eq!(cross_polytope(3).edge_count(), 24);
        assert!(wheel(2).is_err());
        assert!(cycle(2).is_err());
        assert_eq!(wheel(6).unwrap().n(), 7);
        assert_eq!(star(4).n(), 5);
    }

    #[test]
    fn octahedron_adjacency_is_non_antipodal() {
        let oct = octahedron();
        for u in 0..6 {
            for v in 0..6 {
                if u != v {
                    assert_eq!(oct.adjacent(u, v), v != (u ^ 1));
                }
            }
        }
    }

    #[test]
    fn er_extremes_and_determinism() {
        assert_eq!(random_er(7, 0.0, 3).unwrap().edge_count(), 0);
        assert_eq!(random_er(7, 1.0, 3).unwrap(), complete(7));
        assert_eq!(random_er(9, 0.5, 11).unwrap(), random_er(9, 0.5, 11).unwrap());
        assert!(random_er(3, 1.5, 0).is_err());
    }

    #[test]
    fn random_tree_is_tree() {
        for seed in 0..20 {
            let t = random_tree(9, seed);
            assert_eq!(t.edge_count(), 8);
            assert!(t.is_connected());
        }
    }

    #[test]
    fn torus_is_six_regular() {
        let t = triangular_torus(4).unwrap();
        assert_eq!((t.n(), t.edge_count()), (16, 48));
        assert!((0..16).all(|v| t.degree(v) == 6));
    }

    #[test]
    fn parse_and_expand() {
        assert_eq!("cycle:5".parse::<Kind>().unwrap(), Kind::Cycle(5));
        assert_eq!(
            "random_er:8,0.5,3".parse::<Kind>().unwrap(),
            Kind::RandomEr { n: 8, p: 0.5, seed: 3 }
        );
        assert_eq!(expand_spec("cycle:3..5").unwrap().len(), 3);
        assert!("blob".parse::<Kind>().is_err());
        for k in [Kind::Octahedron, Kind::Wheel(5), Kind::RandomTree { n: 4, seed: 2 }] {
            assert_eq!(k.to_string().parse::<Kind>().unwrap(), k);
        }
    }
}
