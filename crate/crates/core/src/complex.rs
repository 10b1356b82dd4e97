//! Whitney (clique) complex, signed exterior derivatives, chains and forms.
//!
//! Simplices are vertex tuples in ascending order; that order fixes the
//! orientation. `d[k]` maps k-forms to (k+1)-forms with
//! `(df)(x_0..x_{k+1}) = Σ_i (-1)^i f(x_0..x̂_i..x_{k+1})`.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::SparseMatrix;
use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Scalar types that forms may carry.
pub trait Scalar:
    Clone + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_i64(x: i64) -> Self;
}

impl Scalar for BigRational {
    fn from_i64(x: i64) -> Self {
        BigRational::from_integer(BigInt::from(x))
    }
}

impl Scalar for f64 {
    fn from_i64(x: i64) -> Self {
        x as f64
    }
}

impl Scalar for i64 {
    fn from_i64(x: i64) -> Self {
        x
    }
}

#[derive(Clone, Debug)]
pub struct SimplicialStructure {
    n: usize,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    d: Vec<SparseMatrix>,
}

/// Options for complex construction.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Highest simplex dimension kept (`None` for all).
    pub max_dim: Option<usize>,
    /// Maximum total number of simplices.
    pub budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_dim: None, budget: DEFAULT_BUDGET }
    }
}

fn extend(
    g: &Graph,
    current: &mut Vec<usize>,
    cand: &FixedBitSet,
    limits: &Limits,
    total: &mut usize,
    visit: &mut dyn FnMut(&[usize]),
) -> Result<()> {
    for v in cand.ones() {
        current.push(v);
        *total += 1;
        if *total > limits.budget {
            return Err(Error::Budget {
                what: format!("simplex enumeration reached dimension {}", current.len() - 1),
                limit: limits.budget,
            });
        }
        visit(current);
        if limits.max_dim.map_or(true, |m| current.len() <= m) {
            let mut next = cand.clone();
            next.intersect_with(g.row(v));
            next.set_range(..v + 1, false);
            if !next.is_clear() {
                extend(g, current, &next, limits, total, visit)?;
            }
        }
        current.pop();
    }
    Ok(())
}

/// Visits every clique of `g` in lexicographic order.
pub fn for_each_clique(g: &Graph, limits: &Limits, visit: &mut dyn FnMut(&[usize])) -> Result<()> {
    let mut all = FixedBitSet::with_capacity(g.n());
    all.insert_range(..);
    let mut total = 0;
    extend(g, &mut Vec::new(), &all, limits, &mut total, visit)
}

/// Clique counts per dimension without storing simplices.
pub fn f_vector(g: &Graph) -> Vec<u64> {
    let mut f: Vec<u64> = Vec::new();
    let limits = Limits { max_dim: None, budget: usize::MAX };
    for_each_clique(g, &limits, &mut |s| {
        if f.len() < s.len() {
            f.resize(s.len(), 0);
        }
        f[s.len() - 1] += 1;
    })
    .expect("unbounded budget");
    f
}

/// Euler characteristic from an f-vector.
pub fn euler_from_f(f: &[u64]) -> i64 {
    f.iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
}

pub fn euler_of_graph(g: &Graph) -> i64 {
    euler_from_f(&f_vector(g))
}

/// Exact form of degree `k`: one coefficient per stored k-simplex.
#[derive(Clone, Debug, PartialEq)]
pub struct Form<T = BigRational> {
    pub degree: usize,
    pub coeffs: Vec<T>,
}

/// Integer chain of degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub degree: usize,
    pub coeffs: Vec<i64>,
}

impl SimplicialStructure {
    pub fn new(g: &Graph) -> Result<Self> {
        Self::with_limits(g, Limits::default())
    }

    pub fn with_limits(g: &Graph, limits: Limits) -> Result<Self> {
        let mut simplices: Vec<Vec<Vec<usize>>> = Vec::new();
        for_each_clique(g, &limits, &mut |s| {
            let k = s.len() - 1;
            if simplices.len() <= k {
                simplices.resize(k + 1, Vec::new());
            }
            simplices[k].push(s.to_vec());
        })?;
        let index: Vec<HashMap<Vec<usize>, usize>> = simplices
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        let mut d = Vec::new();
        for k in 0..simplices.len() {
            let rows = simplices.get(k + 1).map_or(0, |v| v.len());
            let mut m = SparseMatrix::zeros(rows, simplices[k].len());
            if k + 1 < simplices.len() {
                for (r, s) in simplices[k + 1].iter().enumerate() {
                    let mut row = Vec::with_capacity(s.len());
                    for i in 0..s.len() {
                        let mut face = s.clone();
                        face.remove(i);
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        row.push((index[k][&face], sign));
                    }
                    row.sort_unstable_by_key(|e| e.0);
                    m.data[r] = row;
                }
            }
            d.push(m);
        }
        Ok(SimplicialStructure { n: g.n(), simplices, index, d })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of nonempty dimensions (top dimension + 1).
    pub fn dims(&self) -> usize {
        self.simplices.len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(|s| s.len()).collect()
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, |s| s.len())
    }

    pub fn total(&self) -> usize {
        self.simplices.iter().map(|s| s.len()).sum()
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map_or(&[], |s| s.as_slice())
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, s)| if k % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    /// `d_k`; beyond the top dimension an empty matrix of correct shape.
    pub fn d(&self, k: usize) -> SparseMatrix {
        match self.d.get(k) {
            Some(m) => m.clone(),
            None => SparseMatrix::zeros(self.count(k + 1), self.count(k)),
        }
    }

    pub fn d_ref(&self, k: usize) -> Option<&SparseMatrix> {
        self.d.get(k)
    }

    pub fn zero_form<T: Scalar>(&self, k: usize) -> Form<T> {
        Form { degree: k, coeffs: vec![T::zero(); self.count(k)] }
    }

    pub fn form<T: Scalar>(&self, k: usize, coeffs: Vec<T>) -> Result<Form<T>> {
        if coeffs.len() != self.count(k) {
            return Err(Error::Shape(format!(
                "{}-form needs {} coefficients, got {}",
                k,
                self.count(k),
                coeffs.len()
            )));
        }
        Ok(Form { degree: k, coeffs })
    }

    /// Exterior derivative applied to a form.
    pub fn exterior<T: Scalar>(&self, f: &Form<T>) -> Form<T> {
        let k = f.degree;
        let coeffs = match self.d.get(k) {
            Some(m) => m
                .data
                .iter()
                .map(|row| {
                    row.iter().fold(T::zero(), |acc, &(j, x)| acc + T::from_i64(x) * f.coeffs[j].clone())
                })
                .collect(),
            None => Vec::new(),
        };
        Form { degree: k + 1, coeffs }
    }

    /// Boundary of a chain of degree `k + 1`.
    pub fn boundary(&self, c: &Chain) -> Result<Chain> {
        if c.degree == 0 {
            return Err(Error::DegreeMismatch { expected: 1, got: 0 });
        }
        let k = c.degree - 1;
        let mut out = vec![0i64; self.count(k)];
        if let Some(m) = self.d.get(k) {
            for (r, row) in m.data.iter().enumerate() {
                for &(j, x) in row {
                    out[j] += x * c.coeffs[r];
                }
            }
        }
        Ok(Chain { degree: k, coeffs: out })
    }

    /// `(⟨c, df⟩, ⟨∂c, f⟩)` for a chain of degree `k + 1` and a k-form.
    pub fn stokes_pairing<T: Scalar>(&self, c: &Chain, f: &Form<T>) -> Result<(T, T)> {
        if c.degree != f.degree + 1 {
            return Err(Error::DegreeMismatch { expected: f.degree + 1, got: c.degree });
        }
        let df = self.exterior(f);
        let lhs = pair(&c.coeffs, &df.coeffs);
        let bc = self.boundary(c)?;
        let rhs = pair(&bc.coeffs, &f.coeffs);
        Ok((lhs, rhs))
    }

    /// Cup product `(f ∪ g)(x_0..x_{p+q}) = f(x_0..x_p) g(x_p..x_{p+q})`.
    pub fn cup<T: Scalar>(&self, f: &Form<T>, g: &Form<T>) -> Form<T> {
        let (p, q) = (f.degree, g.degree);
        let k = p + q;
        let coeffs = self
            .simplices(k)
            .iter()
            .map(|s| {
                let a = self.index[p][&s[..=p]];
                let b = self.index[q][&s[p..]];
                f.coeffs[a].clone() * g.coeffs[b].clone()
            })
            .collect();
        Form { degree: k, coeffs }
    }

    /// `d_k` as `row col value` lines.
    pub fn triplets(&self, k: usize) -> String {
        let m = self.d(k);
        let mut s = String::new();
        for (r, row) in m.data.iter().enumerate() {
            for &(c, x) in row {
                let _ = writeln!(s, "{r} {c} {x}");
            }
        }
        s
    }
}

fn pair<T: Scalar>(c: &[i64], f: &[T]) -> T {
    c.iter().zip(f).fold(T::zero(), |acc, (&a, b)| acc + T::from_i64(a) * b.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    fn rat(x: i64) -> BigRational {
        BigRational::from_i64(x)
    }

    #[test]
    fn f_vectors() {
        assert_eq!(SimplicialStructure::new(&complete(3)).unwrap().f_vector(), vec![3, 3, 1]);
        let oct = SimplicialStructure::new(&octahedron()).unwrap();
        assert_eq!(oct.f_vector(), vec![6, 12, 8]);
        assert_eq!(oct.euler_characteristic(), 2);
        let c5 = SimplicialStructure::new(&cycle(5).unwrap()).unwrap();
        assert_eq!(c5.f_vector(), vec![5, 5]);
        assert_eq!(c5.euler_characteristic(), 0);
        assert_eq!(SimplicialStructure::new(&complete(1)).unwrap().euler_characteristic(), 1);
        assert_eq!(f_vector(&icosahedron()), vec![12, 30, 20]);
    }

    #[test]
    fn gradient_on_edge() {
        let s = SimplicialStructure::new(&complete(2)).unwrap();
        assert_eq!(s.d(0).to_dense(), vec![vec![-1, 1]]);
        let k3 = SimplicialStructure::new(&complete(3)).unwrap();
        assert!(k3.d(1).mul(&k3.d(0)).is_zero());
        let c4 = SimplicialStructure::new(&cycle(4).unwrap()).unwrap();
        assert_eq!(c4.d(0).rank(), 3);
        let beyond = c4.d(3);
        assert_eq!((beyond.rows, beyond.cols), (0, 0));
        assert_eq!(c4.d(1).rows, 0);
        assert_eq!(c4.d(1).cols, 4);
    }

    #[test]
    fn budget_names_dimension() {
        let limits = Limits { max_dim: None, budget: 20 };
        match SimplicialStructure::with_limits(&complete(6), limits) {
            Err(Error::Budget { what, limit }) => {
                assert_eq!(limit, 20);
                assert!(what.contains("dimension"));
            }
            other => panic!("{other:?}"),
        }
        let capped = SimplicialStructure::with_limits(&complete(5), Limits { max_dim: Some(1), budget: 100 }).unwrap();
        assert_eq!(capped.f_vector(), vec![5, 10]);
    }

    #[test]
    fn stokes_on_triangle() {
        let s = SimplicialStructure::new(&complete(3)).unwrap();
        let c = Chain { degree: 2, coeffs: vec![1] };
        let f = s.form(1, vec![rat(2), rat(-3), rat(5)]).unwrap();
        let (l, r) = s.stokes_pairing(&c, &f).unwrap();
        // edges (0,1), (0,2), (1,2): boundary = (1,2) - (0,2) + (0,1)
        assert_eq!(l, rat(2 + 3 + 5));
        assert_eq!(l, r);
        assert!(s.stokes_pairing(&Chain { degree: 1, coeffs: vec![0; 3] }, &f).is_err());
    }

    #[test]
    fn cup_zero() {
        let s = SimplicialStructure::new(&octahedron()).unwrap();
        let f = s.zero_form::<BigRational>(1);
        let g = s.form(1, (0..12).map(rat).collect()).unwrap();
        assert!(s.cup(&f, &g).coeffs.iter().all(|x| x.is_zero()));
    }
}
