//! Exact integer linear algebra and a thin symmetric eigensolver wrapper.

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Sparse integer matrix stored row-major; each row sorted by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.cols]; self.rows];
        for (i, row) in self.data.iter().enumerate() {
            for &(j, x) in row {
                m[i][j] = x;
            }
        }
        m
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.rows, self.cols);
        for (i, row) in self.data.iter().enumerate() {
            for &(j, x) in row {
                m[(i, j)] = x as f64;
            }
        }
        m
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for &(j, x) in row {
                t.data[j].push((i, x));
            }
        }
        t
    }

    /// Exact product, entries accumulated in `i64`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = SparseMatrix::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(k, a) in row {
                for &(j, b) in &other.data[k] {
                    *acc.entry(j).or_insert(0) += a * b;
                }
            }
            out.data[i] = acc.into_iter().filter(|&(_, x)| x != 0).collect();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    /// Applies the matrix to an exact vector.
    pub fn apply<T>(&self, v: &[T]) -> Vec<T>
    where
        T: Clone + Zero + std::ops::Mul<Output = T> + From<i64>,
    {
        self.data
            .iter()
            .map(|row| {
                row.iter().fold(T::zero(), |acc, &(j, x)| acc + T::from(x) * v[j].clone())
            })
            .collect()
    }

    pub fn apply_f64(&self, v: &[f64]) -> Vec<f64> {
        self.data
            .iter()
            .map(|row| row.iter().map(|&(j, x)| x as f64 * v[j]).sum())
            .collect()
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        rank_sparse(&self.data, self.cols)
    }
}

fn normalize(row: &mut [(usize, i64)]) {
    let g = row.iter().fold(0i64, |g, &(_, x)| g.gcd(&x));
    if g > 1 {
        for e in row.iter_mut() {
            e.1 /= g;
        }
    }
}

/// `a*r - b*p` on sorted sparse rows, `None` on overflow.
fn combine(r: &[(usize, i64)], a: i64, p: &[(usize, i64)], b: i64) -> Option<Vec<(usize, i64)>> {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let (col, val) = if j >= p.len() || (i < r.len() && r[i].0 < p[j].0) {
            let e = (r[i].0, r[i].1.checked_mul(a)?);
            i += 1;
            e
        } else if i >= r.len() || p[j].0 < r[i].0 {
            let e = (p[j].0, p[j].1.checked_mul(b)?.checked_neg()?);
            j += 1;
            e
        } else {
            let e = (r[i].0, r[i].1.checked_mul(a)?.checked_sub(p[j].1.checked_mul(b)?)?);
            i += 1;
            j += 1;
            e
        };
        if val != 0 {
            out.push((col, val));
        }
    }
    Some(out)
}

/// Exact rank of a sparse integer matrix by fraction-free elimination with
/// gcd normalisation; switches to big rationals if `i64` would overflow.
pub fn rank_sparse(rows: &[Vec<(usize, i64)>], cols: usize) -> usize {
    let mut pivots: BTreeMap<usize, Vec<(usize, i64)>> = BTreeMap::new();
    for row in rows {
        let mut r = row.clone();
        r.retain(|e| e.1 != 0);
        r.sort_unstable_by_key(|e| e.0);
        normalize(&mut r);
        while let Some(&(lead, x)) = r.first() {
            match pivots.get(&lead) {
                Some(p) => {
                    let y = p[0].1;
                    let g = x.gcd(&y);
                    match combine(&r, y / g, p, x / g) {
                        Some(mut next) => {
                            normalize(&mut next);
                            r = next;
                        }
                        None => return rank_dense_rational(&to_rational(rows, cols)),
                    }
                }
                None => {
                    pivots.insert(lead, r);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn to_rational(rows: &[Vec<(usize, i64)>], cols: usize) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|row| {
            let mut dense = vec![BigRational::zero(); cols];
            for &(j, x) in row {
                dense[j] += BigRational::from_integer(BigInt::from(x));
            }
            dense
        })
        .collect()
}

/// Exact rank of a dense rational matrix by Gaussian elimination.
pub fn rank_dense_rational(m: &[Vec<BigRational>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for i in rank + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &pivot;
            for j in c..cols {
                let t = &f * &a[rank][j];
                a[i][j] -= t;
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn det_bareiss(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

pub fn det_i64(m: &[Vec<i64>]) -> BigInt {
    let big: Vec<Vec<BigInt>> =
        m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    det_bareiss(&big)
}

/// Exact determinant over `i128` with overflow detection.
pub fn det_i128(m: &[Vec<i128>]) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut a = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].checked_mul(a[k][k])?.checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = num / prev;
            }
        }
        prev = a[k][k];
    }
    Some(sign * a[n - 1][n - 1])
}

/// Eigen-decomposition of a symmetric matrix with eigenvalues sorted
/// ascending and eigenvectors as matching columns.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

impl Eigen {
    pub fn new(m: &DMatrix<f64>) -> Eigen {
        let n = m.nrows();
        if n == 0 {
            return Eigen { values: vec![], vectors: DMatrix::zeros(0, 0) };
        }
        let sym = (m + m.transpose()) * 0.5;
        let e = SymmetricEigen::new(sym);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| e.eigenvalues[i].total_cmp(&e.eigenvalues[j]));
        let values = order.iter().map(|&i| e.eigenvalues[i]).collect();
        let vectors = DMatrix::from_fn(n, n, |r, c| e.eigenvectors[(r, order[c])]);
        Eigen { values, vectors }
    }

    /// Applies `f(λ)` spectrally: `V f(Λ) Vᵀ x`.
    pub fn apply_fn(&self, x: &[f64], f: impl Fn(f64) -> f64) -> Vec<f64> {
        let n = self.values.len();
        let mut out = vec![0.0; n];
        for c in 0..n {
            let col = self.vectors.column(c);
            let coef: f64 = (0..n).map(|r| col[r] * x[r]).sum::<f64>() * f(self.values[c]);
            if coef != 0.0 {
                for r in 0..n {
                    out[r] += coef * col[r];
                }
            }
        }
        out
    }

    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn rational_from_i64(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn abs_big(x: &BigInt) -> BigInt {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense_to_sparse(m: &[Vec<i64>]) -> Vec<Vec<(usize, i64)>> {
        m.iter()
            .map(|r| r.iter().enumerate().filter(|e| *e.1 != 0).map(|(j, &x)| (j, x)).collect())
            .collect()
    }

    #[test]
    fn det_examples() {
        assert_eq!(det_i64(&[vec![2, 1], vec![1, 2]]), BigInt::from(3));
        assert_eq!(det_i64(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(det_i128(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 5]]), Some(-5));
        assert_eq!(det_i64(&[]), BigInt::one());
    }

    #[test]
    fn rank_examples() {
        let m = vec![vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]];
        assert_eq!(rank_sparse(&dense_to_sparse(&m), 3), 2);
    }

    proptest! {
        #[test]
        fn sparse_rank_matches_rational(m in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 0..7)) {
            let cols = 5;
            let rat: Vec<Vec<BigRational>> = m.iter().map(|r| r.iter().map(|&x| rational_from_i64(x)).collect()).collect();
            prop_assert_eq!(rank_sparse(&dense_to_sparse(&m), cols), rank_dense_rational(&rat));
        }

        #[test]
        fn det_paths_agree(m in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 4)) {
            let small: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
            prop_assert_eq!(BigInt::from(det_i128(&small).unwrap()), det_i64(&m));
            let f = DMatrix::from_fn(4, 4, |i, j| m[i][j] as f64);
            let d = f.determinant();
            prop_assert!((d - det_i128(&small).unwrap() as f64).abs() < 1e-6 * (1.0 + d.abs()));
        }
    }

    #[test]
    fn eigen_sorted() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, -1.0, -1.0, 1.0]);
        let e = Eigen::new(&m);
        assert!(e.values[0].abs() < 1e-12 && (e.values[1] - 2.0).abs() < 1e-12);
        let y = e.apply_fn(&[1.0, 0.0], |l| l);
        assert!((y[0] - 1.0).abs() < 1e-12 && (y[1] + 1.0).abs() < 1e-12);
    }
}
