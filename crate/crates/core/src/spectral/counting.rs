//! Spanning trees, rooted spanning forests and Cauchy–Binet expansions.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{det_i128, det_i64};
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct TreeCount {
    pub count: BigInt,
    pub connected: bool,
}

/// Spanning trees via the determinant of the reduced Laplacian.
pub fn spanning_tree_count(g: &Graph) -> TreeCount {
    if !g.is_connected() {
        return TreeCount { count: BigInt::zero(), connected: false };
    }
    let l = g.laplacian();
    let reduced: Vec<Vec<i64>> = l[1..].iter().map(|r| r[1..].to_vec()).collect();
    TreeCount { count: det_i64(&reduced), connected: true }
}

/// `det(P + L_0) / n` with `P_ij = 1/n`, in floating point.
pub fn damped_tree_count(g: &Graph) -> f64 {
    let n = g.n();
    if n == 0 {
        return 0.0;
    }
    let l = g.laplacian();
    let m = DMatrix::from_fn(n, n, |i, j| l[i][j] as f64 + 1.0 / n as f64);
    m.determinant() / n as f64
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// Counts spanning trees by testing every `(n-1)`-subset of edges.
pub fn spanning_trees_exhaustive(g: &Graph) -> Result<u64> {
    let n = g.n();
    if n > 8 {
        return Err(Error::Budget { what: "exhaustive spanning-tree enumeration".into(), limit: 8 });
    }
    if n == 0 {
        return Ok(0);
    }
    let edges = g.edges();
    let mut count = 0;
    let mut chosen = Vec::with_capacity(n - 1);
    fn rec(edges: &[(usize, usize)], start: usize, need: usize, n: usize, chosen: &mut Vec<usize>, count: &mut u64) {
        if chosen.len() == need {
            let mut dsu = Dsu::new(n);
            if chosen.iter().all(|&i| dsu.union(edges[i].0, edges[i].1)) {
                *count += 1;
            }
            return;
        }
        for i in start..edges.len() {
            if edges.len() - i < need - chosen.len() {
                break;
            }
            chosen.push(i);
            rec(edges, i + 1, need, n, chosen, count);
            chosen.pop();
        }
    }
    rec(edges, 0, n - 1, n, &mut chosen, &mut count);
    Ok(count)
}

/// Rooted spanning forests via `det(I + L_0)`.
pub fn rooted_forest_count(g: &Graph) -> BigInt {
    let mut l = g.laplacian();
    for (i, row) in l.iter_mut().enumerate() {
        row[i] += 1;
    }
    det_i64(&l)
}

/// Rooted spanning forests by listing every acyclic edge subset and
/// weighting it by the product of its component sizes (root choices).
pub fn rooted_forests_exhaustive(g: &Graph) -> Result<u64> {
    let n = g.n();
    if n > 6 {
        return Err(Error::Budget { what: "exhaustive rooted-forest enumeration".into(), limit: 6 });
    }
    let edges = g.edges();
    let mut total = 0u64;
    'subsets: for mask in 0u32..(1 << edges.len()) {
        let mut dsu = Dsu::new(n);
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 && !dsu.union(u, v) {
                continue 'subsets;
            }
        }
        let mut size = vec![0u64; n];
        for v in 0..n {
            let r = dsu.find(v);
            size[r] += 1;
        }
        total += size.iter().filter(|&&s| s > 0).product::<u64>();
    }
    Ok(total)
}

/// Both sides of `det(I + x FᵀG) = Σ_{|R|=|S|} x^{|S|} det(F_RS) det(G_RS)`
/// for `n × m` integer matrices, in exact `i128`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CauchyBinet {
    pub determinant_side: i128,
    pub minor_side: i128,
}

pub fn cauchy_binet_sum(f: &[Vec<i64>], g: &[Vec<i64>], x: i64) -> Result<CauchyBinet> {
    let n = f.len();
    let m = f.first().map_or(0, |r| r.len());
    if g.len() != n || f.iter().chain(g).any(|r| r.len() != m) {
        return Err(Error::Shape("F and G must have equal n × m shape".into()));
    }
    if n > 6 || m > 6 {
        return Err(Error::Budget { what: "minor enumeration".into(), limit: 6 });
    }
    let overflow = || Error::Invalid("integer overflow in Cauchy-Binet evaluation".into());
    let mut a = vec![vec![0i128; m]; m];
    for i in 0..m {
        for j in 0..m {
            let s: i128 = (0..n).map(|r| f[r][i] as i128 * g[r][j] as i128).sum();
            a[i][j] = s * x as i128 + i128::from(i == j);
        }
    }
    let lhs = det_i128(&a).ok_or_else(overflow)?;
    let mut rhs = 0i128;
    for rmask in 0u32..(1 << n) {
        let rows: Vec<usize> = (0..n).filter(|&i| rmask >> i & 1 == 1).collect();
        for cmask in 0u32..(1 << m) {
            if cmask.count_ones() as usize != rows.len() {
                continue;
            }
            let cols: Vec<usize> = (0..m).filter(|&j| cmask >> j & 1 == 1).collect();
            let minor = |mat: &[Vec<i64>]| -> Vec<Vec<i128>> {
                rows.iter().map(|&r| cols.iter().map(|&c| mat[r][c] as i128).collect()).collect()
            };
            let df = det_i128(&minor(f)).ok_or_else(overflow)?;
            let dg = det_i128(&minor(g)).ok_or_else(overflow)?;
            let xp = (x as i128).checked_pow(rows.len() as u32).ok_or_else(overflow)?;
            rhs = df.checked_mul(dg).and_then(|p| p.checked_mul(xp)).and_then(|t| rhs.checked_add(t)).ok_or_else(overflow)?;
        }
    }
    Ok(CauchyBinet { determinant_side: lhs, minor_side: rhs })
}

/// `det(I + FᵀF)` against the sum of squared minors.
pub fn pythagorean(f: &[Vec<i64>]) -> Result<CauchyBinet> {
    cauchy_binet_sum(f, f, 1)
}

/// All `rows × cols` matrices with entries in `{-1, 0, 1}`, in base-3 order.
pub fn ternary_matrices(rows: usize, cols: usize) -> impl Iterator<Item = Vec<Vec<i64>>> {
    let cells = rows * cols;
    (0..3u64.pow(cells as u32)).map(move |mut code| {
        let mut m = vec![vec![0i64; cols]; rows];
        for cell in 0..cells {
            m[cell / cols][cell % cols] = (code % 3) as i64 - 1;
            code /= 3;
        }
        m
    })
}

pub fn big_one() -> BigInt {
    BigInt::one()
}
