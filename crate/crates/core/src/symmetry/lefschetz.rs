use super::automorphisms::GraphAutomorphism;
use crate::complex::SimplicialStructure;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::morse::is_contractible;
use crate::spectral::OperatorBundle;
use crate::verdict::Verdict;
use nalgebra::DMatrix;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixedSimplex {
    pub simplex: Vec<usize>,
    /// `sign(T|x) (-1)^dim x`.
    pub degree: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LefschetzReport {
    /// Traces of the induced maps on harmonic forms per degree.
    pub traces: Vec<f64>,
    /// Rounded alternating trace sum.
    pub lefschetz: i64,
    /// Distance of the alternating trace sum from the nearest integer.
    pub residual: f64,
    pub fixed: Vec<FixedSimplex>,
    pub fixed_sum: i64,
    pub equal: bool,
    /// Harmonic basis deviated from orthonormality.
    pub ill_conditioned: bool,
}

/// Orthonormal harmonic basis of degree `k` as columns.
pub fn harmonic_matrix(b: &OperatorBundle, k: usize) -> DMatrix<f64> {
    let block = &b.blocks[k];
    let cols: Vec<usize> = (0..block.eigen.values.len()).filter(|&i| block.eigen.values[i] < b.tolerance).collect();
    DMatrix::from_fn(block.matrix.nrows(), cols.len(), |r, c| block.eigen.vectors[(r, cols[c])])
}

/// Both sides of the Lefschetz formula for one automorphism.
pub fn lefschetz(s: &SimplicialStructure, b: &OperatorBundle, t: &GraphAutomorphism) -> LefschetzReport {
    let mut traces = Vec::new();
    let mut alt = 0.0;
    let mut fixed = Vec::new();
    let mut ill = false;
    for k in 0..s.dims() {
        let action = t.simplex_action(s, k);
        let h = harmonic_matrix(b, k);
        let gram = h.transpose() * &h;
        if (gram - DMatrix::identity(h.ncols(), h.ncols())).abs().max() > 1e-8 {
            ill = true;
        }
        // P e_i = sign_i e_{target_i}
        let mut ph = DMatrix::zeros(h.nrows(), h.ncols());
        for (i, img) in action.iter().enumerate() {
            for c in 0..h.ncols() {
                ph[(img.target, c)] += img.sign as f64 * h[(i, c)];
            }
        }
        let tr = (h.transpose() * ph).trace();
        traces.push(tr);
        alt += if k % 2 == 0 { tr } else { -tr };
        for (i, img) in action.iter().enumerate() {
            if img.target == i {
                let parity = if k % 2 == 0 { 1 } else { -1 };
                fixed.push(FixedSimplex { simplex: s.simplices(k)[i].clone(), degree: img.sign * parity });
            }
        }
    }
    let lefschetz = alt.round() as i64;
    let residual = (alt - lefschetz as f64).abs();
    let fixed_sum = fixed.iter().map(|f| f.degree).sum();
    LefschetzReport { traces, lefschetz, residual, equal: lefschetz == fixed_sum && residual < 1e-6, fixed, fixed_sum, ill_conditioned: ill }
}

/// Fixed simplices of `t` (setwise).
pub fn fixed_simplices(s: &SimplicialStructure, t: &GraphAutomorphism) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 0..s.dims() {
        for (i, img) in t.simplex_action(s, k).iter().enumerate() {
            if img.target == i {
                out.push(s.simplices(k)[i].clone());
            }
        }
    }
    out
}

/// For contractible `g`, whether `t` fixes some simplex.
pub fn brouwer_check(g: &Graph, t: &GraphAutomorphism) -> Result<bool> {
    let v = is_contractible(g);
    if v.verdict != Verdict::Yes {
        return Err(Error::Inapplicable(format!("contractibility verdict is {}", v.verdict)));
    }
    let s = SimplicialStructure::new(g)?;
    Ok(!fixed_simplices(&s, t).is_empty())
}

/// Coherent orientation of top-dimensional simplices, if one exists: signs
/// such that every codimension-one face shared by two top simplices
/// receives opposite induced orientations.
pub fn orientation(s: &SimplicialStructure) -> Option<Vec<i64>> {
    let top = s.dims().checked_sub(1)?;
    if top == 0 {
        return Some(vec![1; s.count(0)]);
    }
    let d = s.d(top - 1);
    // faces -> list of (top simplex, incidence sign)
    let mut by_face: Vec<Vec<(usize, i64)>> = vec![Vec::new(); s.count(top - 1)];
    for (r, row) in d.data.iter().enumerate() {
        for &(f, x) in row {
            by_face[f].push((r, x));
        }
    }
    let m = s.count(top);
    let mut eps = vec![0i64; m];
    for start in 0..m {
        if eps[start] != 0 {
            continue;
        }
        eps[start] = 1;
        let mut stack = vec![start];
        while let Some(t) = stack.pop() {
            for &(f, x) in &d.data[t] {
                for &(u, y) in &by_face[f] {
                    if u == t {
                        continue;
                    }
                    let want = -eps[t] * x * y;
                    if eps[u] == 0 {
                        eps[u] = want;
                        stack.push(u);
                    } else if eps[u] != want {
                        return None;
                    }
                }
            }
        }
    }
    Some(eps)
}

/// Whether `t` preserves a coherent orientation; `None` when the complex is
/// not orientable.
pub fn preserves_orientation(s: &SimplicialStructure, t: &GraphAutomorphism) -> Option<bool> {
    let eps = orientation(s)?;
    let top = s.dims() - 1;
    Some(t.simplex_action(s, top).iter().enumerate().all(|(i, img)| img.sign * eps[img.target] * eps[i] == 1))
}
