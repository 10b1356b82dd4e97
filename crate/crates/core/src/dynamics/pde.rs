//! Heat, wave, Schrödinger, Poisson, Maxwell and gravity equations solved
//! through eigendecompositions of the form Laplacian and Dirac operator.

use crate::complex::SimplicialStructure;
use crate::error::{Error, Result};
use crate::linalg::{norm, sub};
use crate::spectral::OperatorBundle;
use num_complex::Complex64;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FieldState {
    pub degree: usize,
    pub values: Vec<f64>,
    pub time: f64,
}

impl FieldState {
    pub fn new(degree: usize, values: Vec<f64>) -> Self {
        FieldState { degree, values, time: 0.0 }
    }
}

fn check_len(b: &OperatorBundle, k: usize, v: &[f64]) -> Result<()> {
    let want = b.blocks.get(k).map_or(0, |bl| bl.matrix.nrows());
    if v.len() != want || k >= b.blocks.len() {
        return Err(Error::Shape(format!("{k}-form needs {want} values, got {}", v.len())));
    }
    Ok(())
}

/// Orthogonal projection onto `ker L_k`.
pub fn harmonic_part(b: &OperatorBundle, k: usize, v: &[f64]) -> Vec<f64> {
    let tol = b.tolerance;
    b.blocks[k].eigen.apply_fn(v, |l| if l < tol { 1.0 } else { 0.0 })
}

/// `exp(-t L_k) u0`.
pub fn heat_evolve(b: &OperatorBundle, u0: &FieldState, t: f64) -> Result<FieldState> {
    check_len(b, u0.degree, &u0.values)?;
    if t < 0.0 {
        return Err(Error::Invalid("heat flow needs t >= 0".into()));
    }
    let values = b.blocks[u0.degree].eigen.apply_fn(&u0.values, |l| (-t * l.max(0.0)).exp());
    Ok(FieldState { degree: u0.degree, values, time: u0.time + t })
}

#[derive(Clone, Debug, Serialize)]
pub struct WaveState {
    pub u: FieldState,
    pub velocity: Vec<f64>,
    /// Kernel component of the initial velocity, which moves `u` linearly.
    pub kernel_velocity: Vec<f64>,
}

/// `u(t) = cos(√L t) u0 + sin(√L t)/√L v0` on the range of `L_k`, plus
/// the linear drift `t v0` on its kernel.
pub fn wave_evolve(b: &OperatorBundle, u0: &FieldState, v0: &[f64], t: f64) -> Result<WaveState> {
    let k = u0.degree;
    check_len(b, k, &u0.values)?;
    check_len(b, k, v0)?;
    let tol = b.tolerance;
    let e = &b.blocks[k].eigen;
    let u1 = e.apply_fn(&u0.values, |l| if l < tol { 1.0 } else { (l.sqrt() * t).cos() });
    let u2 = e.apply_fn(v0, |l| if l < tol { t } else { (l.sqrt() * t).sin() / l.sqrt() });
    let v1 = e.apply_fn(&u0.values, |l| if l < tol { 0.0 } else { -l.sqrt() * (l.sqrt() * t).sin() });
    let v2 = e.apply_fn(v0, |l| if l < tol { 1.0 } else { (l.sqrt() * t).cos() });
    let values = u1.iter().zip(&u2).map(|(a, c)| a + c).collect();
    let velocity = v1.iter().zip(&v2).map(|(a, c)| a + c).collect();
    Ok(WaveState {
        u: FieldState { degree: k, values, time: u0.time + t },
        velocity,
        kernel_velocity: harmonic_part(b, k, v0),
    })
}

/// `|u'|² + |D u|²` for a k-form, using `|Du|² = ⟨u, L_k u⟩`.
pub fn wave_energy(b: &OperatorBundle, k: usize, u: &[f64], v: &[f64]) -> f64 {
    let lu = b.blocks[k].eigen.apply_fn(u, |l| l);
    v.iter().map(|x| x * x).sum::<f64>() + u.iter().zip(&lu).map(|(a, c)| a * c).sum::<f64>()
}

/// Embeds a k-form into the full form space.
pub fn embed(b: &OperatorBundle, k: usize, v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; b.size];
    out[b.offsets[k]..b.offsets[k] + v.len()].copy_from_slice(v);
    out
}

/// `ψ = u + i D⁻¹ u'` on the full form space (the inverse taken on the
/// range of `D`; kernel components of `u'` are dropped).
pub fn psi_from_wave(b: &OperatorBundle, u: &[f64], v: &[f64]) -> Vec<Complex64> {
    let tol = b.tolerance.sqrt();
    let dinv = b.dirac_eigen().apply_fn(v, |l| if l.abs() < tol { 0.0 } else { 1.0 / l });
    u.iter().zip(&dinv).map(|(&a, &c)| Complex64::new(a, c)).collect()
}

/// `ψ(t) = exp(-i D t) ψ(0)`; its real part is the wave solution.
pub fn schrodinger_evolve(b: &OperatorBundle, psi0: &[Complex64], t: f64) -> Result<Vec<Complex64>> {
    if psi0.len() != b.size {
        return Err(Error::Shape(format!("state needs {} entries", b.size)));
    }
    let e = b.dirac_eigen();
    let re: Vec<f64> = psi0.iter().map(|z| z.re).collect();
    let im: Vec<f64> = psi0.iter().map(|z| z.im).collect();
    let c_re = e.apply_fn(&re, |l| (l * t).cos());
    let s_re = e.apply_fn(&re, |l| (l * t).sin());
    let c_im = e.apply_fn(&im, |l| (l * t).cos());
    let s_im = e.apply_fn(&im, |l| (l * t).sin());
    // (cos - i sin)(re + i im)
    Ok((0..b.size).map(|i| Complex64::new(c_re[i] + s_im[i], c_im[i] - s_re[i])).collect())
}

pub fn complex_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[derive(Clone, Debug, Serialize)]
pub struct PoissonResult {
    pub u: FieldState,
    /// Harmonic part of the source, removed before solving.
    pub removed: Vec<f64>,
    pub residual: f64,
}

/// `u = L_h⁻¹ g` on the orthogonal complement of `ker L_k`.
pub fn poisson_solve(b: &OperatorBundle, k: usize, g: &[f64]) -> Result<PoissonResult> {
    check_len(b, k, g)?;
    let tol = b.tolerance;
    let e = &b.blocks[k].eigen;
    let removed = harmonic_part(b, k, g);
    let u = e.apply_fn(g, |l| if l < tol { 0.0 } else { 1.0 / l });
    let lu = e.apply_fn(&u, |l| l);
    let exact_lu = b.blocks[k].exact.apply_f64(&u);
    let projected = sub(g, &removed);
    let residual = norm(&sub(&lu, &projected)).max(norm(&sub(&exact_lu, &projected)));
    Ok(PoissonResult { u: FieldState::new(k, u), removed, residual })
}

#[derive(Clone, Debug, Serialize)]
pub struct MaxwellResult {
    /// Vector potential (1-form) in Coulomb gauge.
    pub potential: Vec<f64>,
    /// Field `F = dA` (2-form).
    pub field: Vec<f64>,
    pub exact_part: Vec<f64>,
    pub harmonic_part: Vec<f64>,
    /// `d_2 d_1 = 0` as an integer matrix identity.
    pub df_zero_exact: bool,
    pub df_norm: f64,
    pub gauge_norm: f64,
    /// `‖d*F - j_coexact‖`.
    pub residual: f64,
}

/// Splits the current into exact, harmonic and coexact parts and solves
/// for `A` with `d*A = 0` and `d*dA = j_coexact`.
pub fn maxwell(s: &SimplicialStructure, b: &OperatorBundle, j: &[f64]) -> Result<MaxwellResult> {
    if b.blocks.len() < 2 {
        return Err(Error::Inapplicable("no 1-forms".into()));
    }
    check_len(b, 1, j)?;
    let tol = b.tolerance;
    let d0 = s.d(0);
    let d1 = s.d(1);
    let d0t = d0.transpose();
    let div = d0t.apply_f64(j);
    let phi = b.blocks[0].eigen.apply_fn(&div, |l| if l < tol { 0.0 } else { 1.0 / l });
    let exact_part = d0.apply_f64(&phi);
    let harmonic = harmonic_part(b, 1, j);
    let coexact: Vec<f64> = (0..j.len()).map(|i| j[i] - exact_part[i] - harmonic[i]).collect();
    let a = b.blocks[1].eigen.apply_fn(&coexact, |l| if l < tol { 0.0 } else { 1.0 / l });
    let field = d1.apply_f64(&a);
    let d2 = s.d(2);
    let df_zero_exact = d2.mul(&d1).is_zero();
    let df_norm = norm(&d2.apply_f64(&field));
    let gauge_norm = norm(&d0t.apply_f64(&a));
    let dstar_f = d1.transpose().apply_f64(&field);
    let residual = norm(&sub(&dstar_f, &coexact));
    Ok(MaxwellResult { potential: a, field, exact_part, harmonic_part: harmonic, df_zero_exact, df_norm, gauge_norm, residual })
}

#[derive(Clone, Debug, Serialize)]
pub struct GravityResult {
    pub potential: Vec<f64>,
    pub field: Vec<f64>,
    /// Per-component mean removed from the mass density.
    pub removed: Vec<f64>,
    /// `‖d*F - ρ_projected‖`.
    pub residual: f64,
}

/// `V = L_h⁻¹ ρ`, `F = dV`.
pub fn gravity(s: &SimplicialStructure, b: &OperatorBundle, rho: &[f64]) -> Result<GravityResult> {
    let p = poisson_solve(b, 0, rho)?;
    let d0 = s.d(0);
    let field = d0.apply_f64(&p.u.values);
    let dstar = d0.transpose().apply_f64(&field);
    let projected = sub(rho, &p.removed);
    let residual = norm(&sub(&dstar, &projected));
    Ok(GravityResult { potential: p.u.values, field, removed: p.removed, residual })
}

/// Threshold on `|sin(ωT)|` below which shooting is refused.
pub const RESONANCE_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct ShootResult {
    pub velocity: Vec<f64>,
    /// `‖u(T) - e_y‖` from replaying the wave equation.
    pub replay_error: f64,
}

/// Initial velocity `v` at `e_x` whose wave reaches `e_y` at time `T`.
pub fn hopf_rynov_shoot(b: &OperatorBundle, x: usize, y: usize, t: f64) -> Result<ShootResult> {
    let n = b.blocks.first().map_or(0, |bl| bl.matrix.nrows());
    if x >= n || y >= n {
        return Err(Error::InvalidVertex { vertex: x.max(y), n });
    }
    if t <= 0.0 {
        return Err(Error::Invalid("shooting time must be positive".into()));
    }
    let tol = b.tolerance;
    let e = &b.blocks[0].eigen;
    let mut v = vec![0.0; n];
    for (c, &l) in e.values.iter().enumerate() {
        let col = e.vectors.column(c);
        let (xc, yc) = (col[x], col[y]);
        let coef = if l < tol {
            (yc - xc) / t
        } else {
            let w = l.sqrt();
            let s = (w * t).sin();
            if s.abs() < RESONANCE_TOL {
                return Err(Error::Resonant { lambda: w });
            }
            w * (yc - (w * t).cos() * xc) / s
        };
        for r in 0..n {
            v[r] += coef * col[r];
        }
    }
    let mut ex = vec![0.0; n];
    ex[x] = 1.0;
    let mut ey = vec![0.0; n];
    ey[y] = 1.0;
    let w = wave_evolve(b, &FieldState::new(0, ex), &v, t)?;
    Ok(ShootResult { replay_error: norm(&sub(&w.u.values, &ey)), velocity: v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use crate::graph::Graph;

    fn setup(g: &Graph) -> (SimplicialStructure, OperatorBundle) {
        let s = SimplicialStructure::new(g).unwrap();
        let b = OperatorBundle::new(&s).unwrap();
        (s, b)
    }

    #[test]
    fn heat_basics() {
        let (_, b) = setup(&octahedron());
        let u0 = FieldState::new(0, vec![1.0, 0.0, 2.0, 0.0, 0.0, 3.0]);
        assert_eq!(heat_evolve(&b, &u0, 0.0).unwrap().values.iter().map(|x| (x * 1e9).round()).collect::<Vec<_>>(),
            u0.values.iter().map(|x| (x * 1e9).round()).collect::<Vec<_>>());
        let late = heat_evolve(&b, &u0, 100.0).unwrap();
        assert!(late.values.iter().all(|v| (v - 1.0).abs() < 1e-6));
        let mid = heat_evolve(&b, &u0, 0.7).unwrap();
        assert!((mid.values.iter().sum::<f64>() - 6.0).abs() < 1e-10);
    }

    #[test]
    fn wave_on_edge() {
        let (_, b) = setup(&complete(2));
        let u0 = FieldState::new(0, vec![1.0, -1.0]);
        for t in [0.3, 1.0, 4.2] {
            let w = wave_evolve(&b, &u0, &[0.0, 0.0], t).unwrap();
            let c = (2f64.sqrt() * t).cos();
            assert!((w.u.values[0] - c).abs() < 1e-12 && (w.u.values[1] + c).abs() < 1e-12);
        }
    }

    #[test]
    fn harmonic_stays() {
        let (_, b) = setup(&cycle(5).unwrap());
        let h = vec![1.0; 5];
        let w = wave_evolve(&b, &FieldState::new(0, h.clone()), &[0.0; 5], 3.0).unwrap();
        assert!(norm(&sub(&w.u.values, &h)) < 1e-12);
    }

    #[test]
    fn schrodinger_real_part_is_wave() {
        let (_, b) = setup(&octahedron());
        let u0: Vec<f64> = (0..6).map(|i| (i as f64).sin()).collect();
        let v0: Vec<f64> = (0..6).map(|i| (i as f64 * 0.7).cos()).collect();
        let v0r = sub(&v0, &harmonic_part(&b, 0, &v0));
        let psi0 = psi_from_wave(&b, &embed(&b, 0, &u0), &embed(&b, 0, &v0r));
        let t = 1.3;
        let psi = schrodinger_evolve(&b, &psi0, t).unwrap();
        let w = wave_evolve(&b, &FieldState::new(0, u0), &v0r, t).unwrap();
        for i in 0..6 {
            assert!((psi[i].re - w.u.values[i]).abs() < 1e-10);
        }
        assert!((complex_norm(&psi) - complex_norm(&psi0)).abs() < 1e-10);
    }

    #[test]
    fn poisson_examples() {
        let (_, b) = setup(&complete(2));
        let p = poisson_solve(&b, 0, &[1.0, -1.0]).unwrap();
        assert!((p.u.values[0] - 0.5).abs() < 1e-12 && (p.u.values[1] + 0.5).abs() < 1e-12);
        let (_, b) = setup(&cycle(5).unwrap());
        let p = poisson_solve(&b, 0, &[1.0; 5]).unwrap();
        assert!(norm(&p.u.values) < 1e-12);
        assert!(norm(&sub(&p.removed, &[1.0; 5])) < 1e-12);
    }

    #[test]
    fn gravity_and_maxwell() {
        let g = octahedron();
        let (s, b) = setup(&g);
        let zero = gravity(&s, &b, &[0.0; 6]).unwrap();
        assert!(norm(&zero.field) == 0.0 && norm(&zero.potential) == 0.0);
        let mut rho = vec![-1.0 / 6.0; 6];
        rho[0] += 1.0;
        let gr = gravity(&s, &b, &rho).unwrap();
        assert!(gr.residual < 1e-10);
        let strongest = gr.field.iter().map(|x| x.abs()).fold(0.0, f64::max);
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            if (gr.field[i].abs() - strongest).abs() < 1e-12 {
                assert!(u == 0 || v == 0);
            }
        }
        // equator 0-2-1-3-0 circulation
        let mut j = vec![0.0; 12];
        for (a, c) in [(0, 2), (2, 1), (1, 3), (3, 0)] {
            let (lo, hi, sgn) = if a < c { (a, c, 1.0) } else { (c, a, -1.0) };
            j[g.edges().iter().position(|&e| e == (lo, hi)).unwrap()] = sgn;
        }
        let m = maxwell(&s, &b, &j).unwrap();
        assert!(m.df_zero_exact && m.df_norm < 1e-12);
        assert!(m.residual < 1e-10 && m.gauge_norm < 1e-10);
        assert!(norm(&m.exact_part) < 1e-12);
    }

    #[test]
    fn shooting_on_edge() {
        let (_, b) = setup(&complete(2));
        let r = hopf_rynov_shoot(&b, 0, 1, 1.0).unwrap();
        let s2 = 2f64.sqrt();
        let v0 = -(1.0 + s2.cos()) / (s2 * s2.sin());
        assert!((r.velocity[0] - v0).abs() < 1e-12 && (r.velocity[1] + v0).abs() < 1e-12);
        assert!(r.replay_error < 1e-12);
        let small = hopf_rynov_shoot(&b, 0, 0, 1e-4).unwrap();
        assert!(norm(&small.velocity) < 1e-3);
        let resonant = std::f64::consts::PI / s2;
        assert!(matches!(hopf_rynov_shoot(&b, 0, 1, resonant), Err(Error::Resonant { .. })));
    }
}
