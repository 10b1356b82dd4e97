use super::dimension::{is_geometric, GeometricVerdict};
use super::wheels::sectional_and_ricci;
use crate::complex::f_vector;
use crate::error::{Error, Result};
use crate::graph::{metrics, Graph};
use crate::verdict::Verdict;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureVector {
    /// `K(x)` per vertex.
    pub values: Vec<BigRational>,
    /// f-vector of each unit sphere, `V_0, V_1, ...`.
    pub sphere_f: Vec<Vec<u64>>,
}

impl CurvatureVector {
    pub fn total(&self) -> BigRational {
        self.values.iter().fold(BigRational::zero(), |a, b| a + b)
    }
}

/// `K = Σ_{k≥0} (-1)^k V_{k-1} / (k+1)` with `V_{-1} = 1`.
pub fn curvature_from_sphere(f: &[u64]) -> BigRational {
    let mut k = BigRational::from_integer(BigInt::from(1));
    for (i, &v) in f.iter().enumerate() {
        let term = BigRational::new(BigInt::from(v), BigInt::from(i as i64 + 2));
        if i % 2 == 0 {
            k -= term;
        } else {
            k += term;
        }
    }
    k
}

pub fn curvature(g: &Graph) -> CurvatureVector {
    let sphere_f: Vec<Vec<u64>> =
        (0..g.n()).map(|x| f_vector(&g.unit_sphere(x).unwrap().graph)).collect();
    let values = sphere_f.iter().map(|f| curvature_from_sphere(f)).collect();
    CurvatureVector { values, sphere_f }
}

/// True iff every curvature value vanishes, for odd-dimensional geometric
/// graphs; other inputs are rejected.
pub fn flatness_check(g: &Graph, d: usize) -> Result<bool> {
    if d % 2 == 0 {
        return Err(Error::Inapplicable(format!("dimension {d} is even")));
    }
    match is_geometric(g, d).verdict {
        Verdict::Yes => {}
        v => return Err(Error::Inapplicable(format!("geometric test for dimension {d} returned {v}"))),
    }
    Ok(curvature(g).values.iter().all(|k| k.is_zero()))
}

/// `2|S_1(x)| - |S_2(x)|` from BFS spheres of radius 1 and 2.
pub fn second_order_curvature(g: &Graph, x: usize) -> Result<i64> {
    g.check_vertex(x)?;
    let dist = g.bfs(x);
    let s1 = dist.iter().filter(|d| **d == Some(1)).count() as i64;
    let s2 = dist.iter().filter(|d| **d == Some(2)).count() as i64;
    Ok(2 * s1 - s2)
}

#[derive(Clone, Debug, Serialize)]
pub struct PositiveCurvatureReport {
    pub dimension: usize,
    pub all_sectional_positive: bool,
    pub wheel_count: usize,
    pub diameter: usize,
    pub diameter_at_most_3: bool,
}

/// Positivity of all wheel curvatures together with the diameter, for
/// graphs found geometric in some dimension `1..=max_dim`.
pub fn positive_curvature_report(g: &Graph, max_dim: usize) -> Result<PositiveCurvatureReport> {
    let dimension = (1..=max_dim)
        .find(|&d| is_geometric(g, d).verdict == Verdict::Yes)
        .ok_or_else(|| Error::Inapplicable("graph not certified geometric".into()))?;
    let w = sectional_and_ricci(g);
    let all_sectional_positive = !w.wheels.is_empty() && w.wheels.iter().all(|wh| wh.curvature.is_positive());
    let m = metrics(g);
    if m.disconnected {
        return Err(Error::Disconnected);
    }
    Ok(PositiveCurvatureReport {
        dimension,
        all_sectional_positive,
        wheel_count: w.wheels.len(),
        diameter: m.diameter,
        diameter_at_most_3: m.diameter <= 3,
    })
}

pub fn geometric_dimension(g: &Graph, max_dim: usize) -> Option<usize> {
    (1..=max_dim).find(|&d| matches!(is_geometric(g, d), GeometricVerdict { verdict: Verdict::Yes, .. }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn polytope_curvatures() {
        let ico = curvature(&icosahedron());
        assert!(ico.values.iter().all(|k| *k == r(1, 6)));
        assert_eq!(ico.total(), r(2, 1));
        let oct = curvature(&octahedron());
        assert!(oct.values.iter().all(|k| *k == r(1, 3)));
        for n in 4..9 {
            assert!(curvature(&cycle(n).unwrap()).values.iter().all(|k| k.is_zero()));
        }
        assert!(curvature(&cross_polytope(3)).values.iter().all(|k| k.is_zero()));
    }

    #[test]
    fn flatness() {
        assert_eq!(flatness_check(&cross_polytope(3), 3), Ok(true));
        assert_eq!(flatness_check(&cycle(5).unwrap(), 1), Ok(true));
        assert!(flatness_check(&octahedron(), 2).is_err());
        assert!(flatness_check(&complete(4), 3).is_err());
    }

    #[test]
    fn second_order() {
        assert!((0..12).all(|x| second_order_curvature(&icosahedron(), x).unwrap() == 5));
        assert_eq!(second_order_curvature(&complete(5), 0).unwrap(), 8);
        assert_eq!(second_order_curvature(&hex_patch(3), 0).unwrap(), 0);
    }

    #[test]
    fn positive_reports() {
        let ico = positive_curvature_report(&icosahedron(), 3).unwrap();
        assert!(ico.all_sectional_positive && ico.diameter == 3 && ico.diameter_at_most_3);
        let oct = positive_curvature_report(&octahedron(), 3).unwrap();
        assert!(oct.all_sectional_positive && oct.diameter == 2);
        let torus = positive_curvature_report(&triangular_torus(4).unwrap(), 3).unwrap();
        assert_eq!(torus.dimension, 2);
        assert!(!torus.all_sectional_positive);
        assert!(positive_curvature_report(&complete(4), 3).is_err());
    }
}
