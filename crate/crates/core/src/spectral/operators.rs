use crate::complex::SimplicialStructure;
use crate::error::{Error, Result};
use crate::linalg::{Eigen, SparseMatrix};
use nalgebra::DMatrix;
use std::sync::OnceLock;

/// Largest total form dimension handled by the dense eigensolver.
pub const MAX_OPERATOR_SIZE: usize = 2000;

/// Relative kernel threshold: eigenvalues below `KERNEL_REL * (1 + ρ)` are zero.
pub const KERNEL_REL: f64 = 1e-9;

/// Form Laplacian block `L_k` in exact integers with its spectrum.
#[derive(Clone, Debug)]
pub struct Block {
    pub exact: SparseMatrix,
    pub matrix: DMatrix<f64>,
    pub eigen: Eigen,
}

/// Dirac operator `D = d + d*`, the Laplacian `L = D²` as degree blocks,
/// and their spectra.
#[derive(Debug)]
pub struct OperatorBundle {
    pub blocks: Vec<Block>,
    pub offsets: Vec<usize>,
    pub size: usize,
    d: Vec<SparseMatrix>,
    dirac_eigen: OnceLock<Eigen>,
    /// Kernel threshold used for every block.
    pub tolerance: f64,
}

/// Betti numbers from kernel dimensions of the Hodge blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct HodgeBetti {
    pub betti: Vec<usize>,
    /// Smallest nonzero eigenvalue lies within ten times the threshold.
    pub ill_separated: bool,
    pub smallest_nonzero: Option<f64>,
}

impl OperatorBundle {
    pub fn new(s: &SimplicialStructure) -> Result<OperatorBundle> {
        Self::with_tolerance(s, KERNEL_REL)
    }

    /// Bundle whose kernel threshold is `rel * (1 + ρ)`.
    pub fn with_tolerance(s: &SimplicialStructure, rel: f64) -> Result<OperatorBundle> {
        let size = s.total();
        if size > MAX_OPERATOR_SIZE {
            return Err(Error::Budget {
                what: format!("operator size {size} exceeds dense eigensolver range"),
                limit: MAX_OPERATOR_SIZE,
            });
        }
        let dims = s.dims();
        let d: Vec<SparseMatrix> = (0..dims).map(|k| s.d(k)).collect();
        let mut offsets = Vec::with_capacity(dims + 1);
        let mut acc = 0;
        for k in 0..dims {
            offsets.push(acc);
            acc += s.count(k);
        }
        offsets.push(acc);
        let mut blocks = Vec::with_capacity(dims);
        for k in 0..dims {
            let up = d[k].transpose().mul(&d[k]);
            let exact = if k == 0 { up } else { add(&d[k - 1].mul(&d[k - 1].transpose()), &up) };
            let matrix = exact.to_f64();
            let eigen = Eigen::new(&matrix);
            blocks.push(Block { exact, matrix, eigen });
        }
        let rho = blocks.iter().map(|b| b.eigen.spectral_radius()).fold(0.0, f64::max);
        Ok(OperatorBundle {
            blocks,
            offsets,
            size,
            d,
            dirac_eigen: OnceLock::new(),
            tolerance: rel * (1.0 + rho),
        })
    }

    /// Dense Dirac matrix.
    pub fn dirac(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.size, self.size);
        for (k, dk) in self.d.iter().enumerate() {
            if k + 1 >= self.blocks.len() {
                break;
            }
            let (ro, co) = (self.offsets[k + 1], self.offsets[k]);
            for (r, row) in dk.data.iter().enumerate() {
                for &(c, x) in row {
                    m[(ro + r, co + c)] = x as f64;
                    m[(co + c, ro + r)] = x as f64;
                }
            }
        }
        m
    }

    /// Dense full Laplacian assembled from the blocks.
    pub fn laplacian(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.size, self.size);
        for (k, b) in self.blocks.iter().enumerate() {
            let o = self.offsets[k];
            m.view_mut((o, o), (b.matrix.nrows(), b.matrix.ncols())).copy_from(&b.matrix);
        }
        m
    }

    pub fn dirac_eigen(&self) -> &Eigen {
        self.dirac_eigen.get_or_init(|| Eigen::new(&self.dirac()))
    }

    pub fn d(&self, k: usize) -> Option<&SparseMatrix> {
        self.d.get(k)
    }

    /// `D²` couples degree `k` to `k + 2` only through `d_{k+1} d_k`; checks
    /// these products vanish exactly.
    pub fn block_diagonal_exact(&self) -> bool {
        (0..self.d.len().saturating_sub(1)).all(|k| self.d[k + 1].mul(&self.d[k]).is_zero())
    }

    /// Compares `D²` with the assembled block Laplacian in floating point.
    pub fn dirac_square_residual(&self) -> f64 {
        let d = self.dirac();
        (&d * &d - self.laplacian()).abs().max()
    }

    pub fn spectrum(&self, k: usize) -> &[f64] {
        &self.blocks[k].eigen.values
    }

    pub fn betti_hodge(&self) -> HodgeBetti {
        let tol = self.tolerance;
        let mut smallest: Option<f64> = None;
        let betti = self
            .blocks
            .iter()
            .map(|b| {
                for &v in &b.eigen.values {
                    if v >= tol {
                        smallest = Some(smallest.map_or(v, |s: f64| s.min(v)));
                    }
                }
                b.eigen.values.iter().filter(|&&v| v < tol).count()
            })
            .collect();
        HodgeBetti {
            betti,
            ill_separated: smallest.is_some_and(|s| s < 10.0 * tol),
            smallest_nonzero: smallest,
        }
    }

    /// `Σ_k (-1)^k tr exp(-t L_k)`.
    pub fn supertrace_heat(&self, t: f64) -> f64 {
        self.blocks
            .iter()
            .enumerate()
            .map(|(k, b)| {
                let tr: f64 = b.eigen.values.iter().map(|&l| (-t * l).exp()).sum();
                if k % 2 == 0 {
                    tr
                } else {
                    -tr
                }
            })
            .sum()
    }

    /// Nonzero spectra of even and odd blocks, each sorted.
    pub fn super_pairing(&self) -> (Vec<f64>, Vec<f64>) {
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for (k, b) in self.blocks.iter().enumerate() {
            let target = if k % 2 == 0 { &mut even } else { &mut odd };
            target.extend(b.eigen.values.iter().copied().filter(|&v| v >= self.tolerance));
        }
        even.sort_by(f64::total_cmp);
        odd.sort_by(f64::total_cmp);
        (even, odd)
    }

    /// Positive eigenvalues of `D`.
    pub fn positive_dirac_eigenvalues(&self) -> Vec<f64> {
        let tol = self.tolerance.sqrt();
        self.dirac_eigen().values.iter().copied().filter(|&v| v > tol).collect()
    }

    /// Spectra as CSV lines `block,index,eigenvalue`.
    pub fn spectra_csv(&self) -> String {
        let mut s = String::from("block,index,eigenvalue\n");
        for (k, b) in self.blocks.iter().enumerate() {
            for (i, v) in b.eigen.values.iter().enumerate() {
                s.push_str(&format!("L{k},{i},{v:.12e}\n"));
            }
        }
        s
    }
}

fn add(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    let mut out = SparseMatrix::zeros(a.rows, a.cols);
    for i in 0..a.rows {
        let mut acc: std::collections::BTreeMap<usize, i64> = std::collections::BTreeMap::new();
        for &(j, x) in a.data[i].iter().chain(&b.data[i]) {
            *acc.entry(j).or_insert(0) += x;
        }
        out.data[i] = acc.into_iter().filter(|e| e.1 != 0).collect();
    }
    out
}

/// Exact Betti numbers `b_k = v_k - rank d_k - rank d_{k-1}`.
pub fn betti_rank_oracle(s: &SimplicialStructure) -> Vec<usize> {
    let ranks: Vec<usize> = (0..s.dims()).map(|k| s.d(k).rank()).collect();
    (0..s.dims())
        .map(|k| s.count(k) - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
        .collect()
}

/// Product of eigenvalues above the relative kernel threshold.
pub fn pseudo_determinant(m: &DMatrix<f64>) -> f64 {
    let e = Eigen::new(m);
    let tol = KERNEL_REL * (1.0 + e.spectral_radius());
    e.values.iter().filter(|v| v.abs() >= tol).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use crate::graph::Graph;

    fn bundle(g: &Graph) -> (SimplicialStructure, OperatorBundle) {
        let s = SimplicialStructure::new(g).unwrap();
        let b = OperatorBundle::new(&s).unwrap();
        (s, b)
    }

    #[test]
    fn k2_blocks() {
        let (_, b) = bundle(&complete(2));
        assert_eq!(b.size, 3);
        assert_eq!(b.blocks[0].exact.to_dense(), vec![vec![1, -1], vec![-1, 1]]);
        assert_eq!(b.blocks[1].exact.to_dense(), vec![vec![2]]);
        assert!(b.dirac_square_residual() < 1e-12);
    }

    #[test]
    fn k1_is_zero() {
        let (_, b) = bundle(&complete(1));
        assert_eq!(b.dirac(), DMatrix::zeros(1, 1));
        assert_eq!(b.laplacian(), DMatrix::zeros(1, 1));
    }

    #[test]
    fn block_sizes_for_simplex() {
        let (s, b) = bundle(&complete(5));
        assert_eq!(b.size, 31);
        assert_eq!(s.f_vector(), vec![5, 10, 10, 5, 1]);
        assert!(b.block_diagonal_exact());
    }

    #[test]
    fn octahedron_spectrum() {
        let (s, b) = bundle(&octahedron());
        assert_eq!(b.size, 26);
        let l0 = b.spectrum(0);
        assert!(l0[0].abs() < 1e-9 && l0[1] > 1e-3);
        assert!(l0.iter().all(|&v| v > -1e-9));
        assert_eq!(b.betti_hodge().betti, vec![1, 0, 1]);
        assert_eq!(betti_rank_oracle(&s), vec![1, 0, 1]);
        assert!((b.supertrace_heat(1.0) - 2.0).abs() < 1e-8);
        let (e, o) = b.super_pairing();
        assert_eq!(e.len(), o.len());
        assert!(e.iter().zip(&o).all(|(x, y)| (x - y).abs() < 1e-8));
    }

    #[test]
    fn betti_small_cases() {
        let (s, b) = bundle(&cycle(4).unwrap());
        assert_eq!(b.betti_hodge().betti, vec![1, 1]);
        assert_eq!(betti_rank_oracle(&s), vec![1, 1]);
        let (s, b) = bundle(&Graph::empty(2));
        assert_eq!(b.betti_hodge().betti, vec![2]);
        assert_eq!(betti_rank_oracle(&s), vec![2]);
        let (s, _) = bundle(&icosahedron());
        assert_eq!(betti_rank_oracle(&s), vec![1, 0, 1]);
        for n in 1..7 {
            let (s, _) = bundle(&complete(n));
            let mut expect = vec![0; n];
            expect[0] = 1;
            assert_eq!(betti_rank_oracle(&s), expect);
        }
    }

    #[test]
    fn supertrace_cases() {
        let (s, b) = bundle(&cycle(5).unwrap());
        assert!((b.supertrace_heat(10.0)).abs() < 1e-8);
        assert!((b.supertrace_heat(0.0) - s.euler_characteristic() as f64).abs() < 1e-12);
    }

    #[test]
    fn pseudo_det_k2() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, -1.0, -1.0, 1.0]);
        assert!((pseudo_determinant(&m) - 2.0).abs() < 1e-12);
    }
}
