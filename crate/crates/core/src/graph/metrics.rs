//! Distance and density statistics.

use super::Graph;
use serde::Serialize;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Metrics {
    pub components: usize,
    /// Diameter of the largest component.
    pub diameter: usize,
    /// True when the graph has more than one component, so the true
    /// diameter is infinite.
    pub disconnected: bool,
    /// Mean distance over connected pairs of distinct vertices.
    pub mean_distance: Option<f64>,
    /// Mean local clustering over vertices of degree at least 2.
    pub clustering: Option<f64>,
    /// |E| / C(n, 2).
    pub edge_density: Option<f64>,
    /// Average degree.
    pub mean_degree: f64,
}

pub fn metrics(g: &Graph) -> Metrics {
    let comps = g.components();
    let largest = comps.iter().max_by_key(|c| c.len()).cloned().unwrap_or_default();
    let mut diameter = 0;
    let (mut total, mut pairs) = (0usize, 0usize);
    for s in 0..g.n() {
        let dist = g.bfs(s);
        for (t, d) in dist.iter().enumerate() {
            if let Some(d) = *d {
                if t != s {
                    total += d;
                    pairs += 1;
                }
                if largest.binary_search(&s).is_ok() {
                    diameter = diameter.max(d);
                }
            }
        }
    }
    let mut cl = Vec::new();
    for v in 0..g.n() {
        let k = g.degree(v);
        if k >= 2 {
            let s = g.unit_sphere(v).unwrap().graph;
            cl.push(s.edge_count() as f64 / (k * (k - 1) / 2) as f64);
        }
    }
    let n = g.n();
    Metrics {
        components: comps.len(),
        diameter,
        disconnected: comps.len() > 1,
        mean_distance: (pairs > 0).then(|| total as f64 / pairs as f64),
        clustering: (!cl.is_empty()).then(|| cl.iter().sum::<f64>() / cl.len() as f64),
        edge_density: (n >= 2).then(|| g.edge_count() as f64 / (n * (n - 1) / 2) as f64),
        mean_degree: if n == 0 { 0.0 } else { 2.0 * g.edge_count() as f64 / n as f64 },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    #[test]
    fn polytopes() {
        let m = metrics(&octahedron());
        assert_eq!((m.diameter, m.components, m.disconnected), (2, 1, false));
        assert_eq!(metrics(&icosahedron()).diameter, 3);
        let k = metrics(&complete(5));
        assert_eq!(k.diameter, 1);
        assert_eq!(k.clustering, Some(1.0));
        assert_eq!(k.edge_density, Some(1.0));
    }

    #[test]
    fn disconnected_flag() {
        let g = complete(3).disjoint_union(&path(5));
        let m = metrics(&g);
        assert!(m.disconnected);
        assert_eq!(m.diameter, 4);
        assert_eq!(m.components, 2);
        assert_eq!(metrics(&cycle(5).unwrap()).clustering, Some(0.0));
    }
}
