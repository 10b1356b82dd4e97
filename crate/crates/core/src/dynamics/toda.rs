//! Isospectral Lax deformation `D' = [B, D]` of the Dirac operator.

use crate::error::{Error, Result};
use crate::linalg::Eigen;
use crate::spectral::OperatorBundle;
use nalgebra::DMatrix;
use serde::Serialize;

/// Abort threshold on the sorted-spectrum drift.
pub const DRIFT_ABORT: f64 = 1e-3;

#[derive(Clone, Debug, Serialize)]
pub struct DeformationSample {
    pub time: f64,
    pub drift: f64,
    /// Frobenius norm of the blocks connecting equal degrees.
    pub diagonal_norm: f64,
    /// Frobenius norm of the blocks connecting different degrees.
    pub off_diagonal_norm: f64,
    /// `‖D(t)² - D(0)²‖`, logged only.
    pub laplacian_deviation: f64,
}

#[derive(Clone, Debug)]
pub struct DeformationState {
    pub d: DMatrix<f64>,
    pub time: f64,
    pub initial_spectrum: Vec<f64>,
    pub max_drift: f64,
    pub samples: Vec<DeformationSample>,
}

fn degrees(b: &OperatorBundle) -> Vec<usize> {
    let mut out = vec![0; b.size];
    for k in 0..b.blocks.len() {
        let end = b.offsets.get(k + 1).copied().unwrap_or(b.size);
        for x in &mut out[b.offsets[k]..end] {
            *x = k;
        }
    }
    out
}

/// Degree-raising part of `D` minus its degree-lowering part.
pub fn splitting(d: &DMatrix<f64>, deg: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(d.nrows(), d.ncols(), |i, j| match deg[i].cmp(&deg[j]) {
        std::cmp::Ordering::Greater => d[(i, j)],
        std::cmp::Ordering::Less => -d[(i, j)],
        std::cmp::Ordering::Equal => 0.0,
    })
}

fn rhs(d: &DMatrix<f64>, deg: &[usize]) -> DMatrix<f64> {
    let b = splitting(d, deg);
    &b * d - d * &b
}

fn sorted_spectrum(d: &DMatrix<f64>) -> Vec<f64> {
    Eigen::new(d).values
}

fn sample(d: &DMatrix<f64>, d0sq: &DMatrix<f64>, deg: &[usize], time: f64, init: &[f64]) -> DeformationSample {
    let spec = sorted_spectrum(d);
    let drift = spec.iter().zip(init).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let (mut diag, mut off) = (0.0, 0.0);
    for i in 0..d.nrows() {
        for j in 0..d.ncols() {
            let x = d[(i, j)] * d[(i, j)];
            if deg[i] == deg[j] {
                diag += x;
            } else {
                off += x;
            }
        }
    }
    DeformationSample {
        time,
        drift,
        diagonal_norm: diag.sqrt(),
        off_diagonal_norm: off.sqrt(),
        laplacian_deviation: (d * d - d0sq).norm(),
    }
}

/// RK4 integration to `t_end`, sampling the spectrum every `sample_every`
/// steps and at the end.
pub fn toda_lax_deform(b: &OperatorBundle, t_end: f64, dt: f64, sample_every: usize) -> Result<DeformationState> {
    if dt <= 0.0 || t_end < 0.0 {
        return Err(Error::Invalid("deformation needs dt > 0 and t_end >= 0".into()));
    }
    let deg = degrees(b);
    let mut d = b.dirac();
    let d0sq = &d * &d;
    let initial_spectrum = sorted_spectrum(&d);
    let steps = (t_end / dt).round() as usize;
    let every = sample_every.max(1);
    let mut samples = vec![sample(&d, &d0sq, &deg, 0.0, &initial_spectrum)];
    let mut max_drift = 0.0f64;
    for step in 1..=steps {
        let k1 = rhs(&d, &deg);
        let k2 = rhs(&(&d + &k1 * (dt / 2.0)), &deg);
        let k3 = rhs(&(&d + &k2 * (dt / 2.0)), &deg);
        let k4 = rhs(&(&d + &k3 * dt), &deg);
        d += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
        d = (&d + d.transpose()) * 0.5;
        if step % every == 0 || step == steps {
            let s = sample(&d, &d0sq, &deg, step as f64 * dt, &initial_spectrum);
            max_drift = max_drift.max(s.drift);
            let drift = s.drift;
            samples.push(s);
            if drift > DRIFT_ABORT {
                return Err(Error::Unstable { drift, time: step as f64 * dt });
            }
        }
    }
    Ok(DeformationState { d, time: steps as f64 * dt, initial_spectrum, max_drift, samples })
}

pub fn trajectory_csv(samples: &[DeformationSample]) -> String {
    let mut out = String::from("time,drift,diagonal_norm,off_diagonal_norm,laplacian_deviation\n");
    for s in samples {
        out.push_str(&format!(
            "{:.6},{:.3e},{:.9},{:.9},{:.9}\n",
            s.time, s.drift, s.diagonal_norm, s.off_diagonal_norm, s.laplacian_deviation
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialStructure;
    use crate::graph::generators::*;
    use crate::graph::Graph;

    fn bundle(g: &Graph) -> OperatorBundle {
        OperatorBundle::new(&SimplicialStructure::new(g).unwrap()).unwrap()
    }

    #[test]
    fn edgeless_is_constant() {
        let b = bundle(&Graph::empty(3));
        let s = toda_lax_deform(&b, 1.0, 0.01, 10).unwrap();
        assert_eq!(s.d, b.dirac());
    }

    #[test]
    fn splitting_is_antisymmetric() {
        let b = bundle(&octahedron());
        let deg = degrees(&b);
        let bm = splitting(&b.dirac(), &deg);
        assert_eq!(bm.transpose(), -bm);
    }

    #[test]
    fn isospectral_small() {
        for g in [complete(2), cycle(4).unwrap(), complete(3)] {
            let b = bundle(&g);
            let s = toda_lax_deform(&b, 10.0, 1e-3, 100).unwrap();
            assert!(s.max_drift < 1e-6, "{}", s.max_drift);
        }
    }

    #[test]
    fn square_moves_mass_to_diagonal() {
        let b = bundle(&cycle(4).unwrap());
        let s = toda_lax_deform(&b, 10.0, 1e-3, 1000).unwrap();
        let (first, last) = (&s.samples[0], s.samples.last().unwrap());
        assert!(last.off_diagonal_norm < first.off_diagonal_norm);
        assert!(last.diagonal_norm > first.diagonal_norm);
    }
}
