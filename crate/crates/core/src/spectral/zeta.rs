//! Dirac zeta function `ζ(s) = Σ_{λ>0} λ^{-s}` and its roots.

use num_complex::Complex64;

/// Grid spacing of the root scan in both axes.
pub const GRID_STEP: f64 = 0.05;
/// Roots are accepted when `|ζ|` falls below this value.
pub const ROOT_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct Zeta {
    logs: Vec<f64>,
}

/// Rectangle `[re_min, re_max] × [im_min, im_max]` in the complex plane.
#[derive(Clone, Copy, Debug)]
pub struct Window {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Window {
    fn contains(&self, z: Complex64) -> bool {
        let eps = 1e-12;
        z.re >= self.re_min - eps && z.re <= self.re_max + eps && z.im >= self.im_min - eps && z.im <= self.im_max + eps
    }
}

impl Zeta {
    /// Builds from positive eigenvalues; nonpositive entries are ignored.
    pub fn new(positive: &[f64]) -> Zeta {
        Zeta { logs: positive.iter().filter(|&&l| l > 0.0).map(|l| l.ln()).collect() }
    }

    pub fn len(&self) -> usize {
        self.logs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.logs.is_empty()
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.logs.iter().map(|&l| (-s * l).exp()).sum()
    }

    pub fn derivative(&self, s: Complex64) -> Complex64 {
        self.logs.iter().map(|&l| -l * (-s * l).exp()).sum()
    }

    fn newton(&self, mut z: Complex64) -> Option<Complex64> {
        for _ in 0..100 {
            let f = self.eval(z);
            if f.norm() < 1e-14 {
                return Some(z);
            }
            let df = self.derivative(z);
            if df.norm() == 0.0 {
                return None;
            }
            let step = f / df;
            z -= step;
            if !z.re.is_finite() || !z.im.is_finite() {
                return None;
            }
            if step.norm() < 1e-15 * (1.0 + z.norm()) {
                break;
            }
        }
        Some(z)
    }

    /// Scans the window on a grid, refines each local minimum of `|ζ|` by
    /// Newton's method and keeps distinct roots with `|ζ| < ROOT_TOL`.
    pub fn roots(&self, w: Window) -> Vec<Complex64> {
        let nx = ((w.re_max - w.re_min) / GRID_STEP).round() as usize + 1;
        let ny = ((w.im_max - w.im_min) / GRID_STEP).round() as usize + 1;
        let at = |i: usize, j: usize| Complex64::new(w.re_min + i as f64 * GRID_STEP, w.im_min + j as f64 * GRID_STEP);
        let grid: Vec<Vec<f64>> = (0..nx).map(|i| (0..ny).map(|j| self.eval(at(i, j)).norm()).collect()).collect();
        let mut roots: Vec<Complex64> = Vec::new();
        for i in 0..nx {
            for j in 0..ny {
                let v = grid[i][j];
                let mut is_min = true;
                for di in -1i64..=1 {
                    for dj in -1i64..=1 {
                        let (a, b) = (i as i64 + di, j as i64 + dj);
                        if (di, dj) != (0, 0) && a >= 0 && b >= 0 && (a as usize) < nx && (b as usize) < ny && grid[a as usize][b as usize] < v {
                            is_min = false;
                        }
                    }
                }
                if !is_min {
                    continue;
                }
                if let Some(z) = self.newton(at(i, j)) {
                    if w.contains(z) && self.eval(z).norm() < ROOT_TOL && !roots.iter().any(|r| (r - z).norm() < 1e-6) {
                        roots.push(z);
                    }
                }
            }
        }
        roots.sort_by(|a, b| a.im.total_cmp(&b.im).then(a.re.total_cmp(&b.re)));
        roots
    }
}

/// Positive Dirac eigenvalues of the cycle `C_n`: `2 sin(πk/n)`, `k = 1..n-1`.
pub fn cycle_dirac_positive(n: usize) -> Vec<f64> {
    (1..n).map(|k| 2.0 * (std::f64::consts::PI * k as f64 / n as f64).sin()).collect()
}

/// Median of `|Re z - 1/2|` over the given roots.
pub fn median_critical_distance(roots: &[Complex64]) -> Option<f64> {
    if roots.is_empty() {
        return None;
    }
    let mut d: Vec<f64> = roots.iter().map(|z| (z.re - 0.5).abs()).collect();
    d.sort_by(f64::total_cmp);
    let m = d.len();
    Some(if m % 2 == 1 { d[m / 2] } else { 0.5 * (d[m / 2 - 1] + d[m / 2]) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_at_zero_counts() {
        let z = Zeta::new(&[1.0, 2.0, 3.0]);
        assert!((z.eval(Complex64::new(0.0, 0.0)) - 3.0).norm() < 1e-14);
        let two = z.eval(Complex64::new(2.0, 0.0)).re;
        assert!((two - (1.0 + 0.25 + 1.0 / 9.0)).abs() < 1e-14);
    }

    #[test]
    fn derivative_matches_difference() {
        let z = Zeta::new(&cycle_dirac_positive(7));
        let s = Complex64::new(0.3, 4.0);
        let h = 1e-6;
        let fd = (z.eval(s + h) - z.eval(s - h)) / (2.0 * h);
        assert!((fd - z.derivative(s)).norm() < 1e-6);
    }

    #[test]
    fn roots_satisfy_tolerance() {
        let z = Zeta::new(&cycle_dirac_positive(10));
        let w = Window { re_min: 0.0, re_max: 1.0, im_min: 0.0, im_max: 30.0 };
        let roots = z.roots(w);
        assert!(!roots.is_empty());
        assert!(roots.iter().all(|&r| z.eval(r).norm() < ROOT_TOL));
    }
}
