//! Invariant reports and equation runs behind the command-line tool.

use crate::complex::{Limits, SimplicialStructure};
use crate::divisors::jacobian_order;
use crate::dynamics::{
    gravity, heat_evolve, hopf_rynov_shoot, maxwell, poisson_solve, toda_lax_deform, trajectory_csv, wave_energy,
    wave_evolve, FieldState,
};
use crate::error::{Error, Result};
use crate::geometry::{curvature, inductive_dimension};
use crate::graph::io::graph_hash;
use crate::graph::{metrics, Graph};
use crate::linalg::norm;
use crate::spectral::{betti_rank_oracle, rooted_forest_count, spanning_tree_count, OperatorBundle};
use crate::suite::{fx, run, CheckResult, CorpusItem, SuiteConfig};
use num_traits::ToPrimitive;
use serde::Serialize;
use std::fmt::Write;

#[derive(Clone, Debug, Serialize)]
pub struct Invariants {
    pub euler_characteristic: i64,
    pub f_vector: Vec<usize>,
    pub betti_hodge: Vec<usize>,
    pub betti_rank: Vec<usize>,
    pub dimension: String,
    pub curvature_sum: String,
    pub spanning_trees: String,
    pub rooted_forests: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jacobian_order: Option<String>,
    pub components: usize,
    pub diameter: usize,
    pub disconnected: bool,
    /// Mean distance.
    pub mu: Option<String>,
    /// Mean clustering.
    pub nu: Option<String>,
    /// Edge density.
    pub epsilon: Option<String>,
    /// Mean curvature.
    pub eta: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub source: String,
    pub hash: String,
    pub n: usize,
    pub m: usize,
    pub invariants: Invariants,
    pub verdicts: Vec<CheckResult>,
    pub warnings: Vec<String>,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn text(&self) -> String {
        let i = &self.invariants;
        let mut s = String::new();
        let _ = writeln!(s, "graph {} (n={}, m={}, sha256 {})", self.source, self.n, self.m, &self.hash[..16]);
        let _ = writeln!(s, "chi {}  f-vector {:?}", i.euler_characteristic, i.f_vector);
        let _ = writeln!(s, "betti (hodge) {:?}  betti (rank) {:?}", i.betti_hodge, i.betti_rank);
        let _ = writeln!(s, "dimension {}  curvature sum {}", i.dimension, i.curvature_sum);
        let _ = writeln!(s, "spanning trees {}  rooted forests {}", i.spanning_trees, i.rooted_forests);
        if let Some(j) = &i.jacobian_order {
            let _ = writeln!(s, "jacobian order {j}");
        }
        let opt = |o: &Option<String>| o.clone().unwrap_or_else(|| "-".into());
        let _ = writeln!(
            s,
            "diameter {}{}  mu {}  nu {}  epsilon {}  eta {}",
            i.diameter,
            if i.disconnected { " (disconnected)" } else { "" },
            opt(&i.mu),
            opt(&i.nu),
            opt(&i.epsilon),
            opt(&i.eta)
        );
        for v in &self.verdicts {
            for r in &v.records {
                let _ = writeln!(s, "{} {:<24} {} | {}", if r.pass { "PASS" } else { "FAIL" }, v.id, r.lhs, r.rhs);
            }
            for e in &v.errors {
                let _ = writeln!(s, "ERR  {:<24} {}", v.id, e.error);
            }
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        s
    }
}

fn fixed(x: f64) -> String {
    format!("{x:.6}")
}

pub fn cmd_info(source: &str, g: &Graph, cfg: &SuiteConfig) -> Result<ReportDocument> {
    let s = SimplicialStructure::with_limits(g, Limits { max_dim: None, budget: cfg.simplex_budget })?;
    let b = OperatorBundle::with_tolerance(&s, cfg.kernel_tolerance)?;
    let m = metrics(g);
    let k = curvature(g);
    let total = k.total();
    let connected = g.n() > 0 && g.is_connected();
    let mut warnings = Vec::new();
    if g.triangle_count() > 0 {
        warnings.push("divisor theory uses only the 1-skeleton; triangles are ignored".to_string());
    }
    let invariants = Invariants {
        euler_characteristic: s.euler_characteristic(),
        f_vector: s.f_vector(),
        betti_hodge: b.betti_hodge().betti,
        betti_rank: betti_rank_oracle(&s),
        dimension: inductive_dimension(g).graph.to_string(),
        curvature_sum: total.to_string(),
        spanning_trees: spanning_tree_count(g).count.to_string(),
        rooted_forests: rooted_forest_count(g).to_string(),
        jacobian_order: if connected { Some(jacobian_order(g)?.to_string()) } else { None },
        components: m.components,
        diameter: m.diameter,
        disconnected: m.disconnected,
        mu: m.mean_distance.map(fixed),
        nu: m.clustering.map(fixed),
        epsilon: m.edge_density.map(fixed),
        eta: (g.n() > 0).then(|| fixed(total.to_f64().unwrap_or(f64::NAN) / g.n() as f64)),
    };
    let item = CorpusItem { name: source.to_string(), kind: None, graph: g.clone(), seed: cfg.seed };
    let suite_cfg = SuiteConfig { globals: false, ..cfg.clone() };
    let verdicts = run(vec![item], &suite_cfg).checks.into_iter().filter(|c| !c.records.is_empty() || !c.errors.is_empty()).collect();
    Ok(ReportDocument {
        schema: 1,
        source: source.to_string(),
        hash: graph_hash(g),
        n: g.n(),
        m: g.edge_count(),
        invariants,
        verdicts,
        warnings,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equation {
    Heat,
    Wave,
    Poisson,
    Maxwell,
    Gravity,
    Shoot,
    Deform,
}

impl std::str::FromStr for Equation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "heat" => Equation::Heat,
            "wave" => Equation::Wave,
            "poisson" => Equation::Poisson,
            "maxwell" => Equation::Maxwell,
            "gravity" => Equation::Gravity,
            "shoot" => Equation::Shoot,
            "deform" => Equation::Deform,
            _ => return Err(Error::Invalid(format!("unknown equation '{s}'"))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct SolveParams {
    pub degree: usize,
    /// Index of the simplex carrying the unit initial field or source.
    pub source: usize,
    pub times: Vec<f64>,
    pub x: usize,
    pub y: usize,
    pub period: f64,
    pub t_end: f64,
    pub dt: f64,
    pub sample_every: usize,
}

impl Default for SolveParams {
    fn default() -> Self {
        SolveParams {
            degree: 0,
            source: 0,
            times: vec![0.0, 1.0, 10.0],
            x: 0,
            y: 1,
            period: 1.0,
            t_end: 10.0,
            dt: 1e-3,
            sample_every: 100,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Snapshot {
    pub time: String,
    /// Total mass for heat, energy for wave.
    pub conserved: String,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveOutput {
    pub equation: String,
    pub degree: usize,
    pub snapshots: Vec<Snapshot>,
    /// Named scalar diagnostics such as residuals and drifts.
    pub diagnostics: Vec<(String, String)>,
    /// Replay or conservation verification flag.
    pub verified: bool,
    #[serde(skip)]
    pub csv: String,
}

fn unit(len: usize, i: usize, what: &str) -> Result<Vec<f64>> {
    if i >= len {
        return Err(Error::Invalid(format!("source index {i} out of range for {len} {what}")));
    }
    let mut v = vec![0.0; len];
    v[i] = 1.0;
    Ok(v)
}

fn snapshots_csv(snaps: &[Snapshot], label: &str) -> String {
    let width = snaps.first().map_or(0, |s| s.values.len());
    let mut out = format!("time,{label}");
    for i in 0..width {
        let _ = write!(out, ",v{i}");
    }
    out.push('\n');
    for s in snaps {
        let _ = writeln!(out, "{},{},{}", s.time, s.conserved, s.values.join(","));
    }
    out
}

fn vector_csv(columns: &[(&str, &[f64])]) -> String {
    let mut out = String::from("index");
    for (name, _) in columns {
        let _ = write!(out, ",{name}");
    }
    out.push('\n');
    let rows = columns.iter().map(|c| c.1.len()).max().unwrap_or(0);
    for i in 0..rows {
        let _ = write!(out, "{i}");
        for (_, v) in columns {
            match v.get(i) {
                Some(x) => {
                    let _ = write!(out, ",{}", fx(*x));
                }
                None => out.push(','),
            }
        }
        out.push('\n');
    }
    out
}

fn snapshot(time: f64, conserved: f64, values: &[f64]) -> Snapshot {
    Snapshot { time: fixed(time), conserved: fx(conserved), values: values.iter().map(|&x| fx(x)).collect() }
}

fn output(equation: &str, degree: usize, diagnostics: Vec<(&str, f64)>, verified: bool, csv: String) -> SolveOutput {
    SolveOutput {
        equation: equation.to_string(),
        degree,
        snapshots: Vec::new(),
        diagnostics: diagnostics.into_iter().map(|(k, v)| (k.to_string(), fx(v))).collect(),
        verified,
        csv,
    }
}

pub fn cmd_solve(g: &Graph, eq: Equation, p: &SolveParams, cfg: &SuiteConfig) -> Result<SolveOutput> {
    let s = SimplicialStructure::with_limits(g, Limits { max_dim: None, budget: cfg.simplex_budget })?;
    let b = OperatorBundle::with_tolerance(&s, cfg.kernel_tolerance)?;
    let len = |k: usize| b.blocks.get(k).map_or(0, |bl| bl.matrix.nrows());
    Ok(match eq {
        Equation::Heat => {
            let u0 = FieldState::new(p.degree, unit(len(p.degree), p.source, "simplices")?);
            let mut snaps = Vec::new();
            let mut drift = 0.0f64;
            for &t in &p.times {
                let u = heat_evolve(&b, &u0, t)?;
                let mass: f64 = u.values.iter().sum();
                if p.degree == 0 {
                    drift = drift.max((mass - 1.0).abs());
                }
                snaps.push(snapshot(t, mass, &u.values));
            }
            let mut out = output("heat", p.degree, vec![("mass_drift", drift)], drift < 1e-10, snapshots_csv(&snaps, "mass"));
            out.snapshots = snaps;
            out
        }
        Equation::Wave => {
            let k = p.degree;
            let u0 = FieldState::new(k, unit(len(k), p.source, "simplices")?);
            let v0 = vec![0.0; len(k)];
            let e0 = wave_energy(&b, k, &u0.values, &v0);
            let mut snaps = Vec::new();
            let mut drift = 0.0f64;
            for &t in &p.times {
                let w = wave_evolve(&b, &u0, &v0, t)?;
                let e = wave_energy(&b, k, &w.u.values, &w.velocity);
                drift = drift.max((e - e0).abs());
                snaps.push(snapshot(t, e, &w.u.values));
            }
            let mut out = output("wave", k, vec![("energy_drift", drift)], drift < 1e-8, snapshots_csv(&snaps, "energy"));
            out.snapshots = snaps;
            out
        }
        Equation::Poisson => {
            let g0 = unit(len(p.degree), p.source, "simplices")?;
            let r = poisson_solve(&b, p.degree, &g0)?;
            let csv = vector_csv(&[("source", &g0), ("solution", &r.u.values), ("removed", &r.removed)]);
            let mut out = output("poisson", p.degree, vec![("residual", r.residual)], r.residual < 1e-6, csv);
            out.snapshots.push(snapshot(0.0, norm(&r.removed), &r.u.values));
            out
        }
        Equation::Maxwell => {
            let j = unit(len(1), p.source, "edges")?;
            let r = maxwell(&s, &b, &j)?;
            let csv = vector_csv(&[("current", &j), ("potential", &r.potential), ("field", &r.field)]);
            let ok = r.df_zero_exact && r.residual < 1e-6 && r.gauge_norm < 1e-6;
            let diag = vec![("residual", r.residual), ("gauge_norm", r.gauge_norm), ("df_norm", r.df_norm)];
            let mut out = output("maxwell", 1, diag, ok, csv);
            out.snapshots.push(snapshot(0.0, norm(&r.field), &r.potential));
            out
        }
        Equation::Gravity => {
            let rho = unit(len(0), p.source, "vertices")?;
            let r = gravity(&s, &b, &rho)?;
            let csv = vector_csv(&[("density", &rho), ("potential", &r.potential), ("field", &r.field)]);
            let mut out = output("gravity", 0, vec![("residual", r.residual)], r.residual < 1e-6, csv);
            out.snapshots.push(snapshot(0.0, norm(&r.field), &r.potential));
            out
        }
        Equation::Shoot => {
            let r = hopf_rynov_shoot(&b, p.x, p.y, p.period)?;
            let csv = vector_csv(&[("velocity", &r.velocity)]);
            let mut out = output("shoot", 0, vec![("replay_error", r.replay_error)], r.replay_error < 1e-6, csv);
            out.snapshots.push(snapshot(p.period, r.replay_error, &r.velocity));
            out
        }
        Equation::Deform => {
            let st = toda_lax_deform(&b, p.t_end, p.dt, p.sample_every.max(1))?;
            let diag = vec![("max_drift", st.max_drift), ("time", st.time)];
            let mut out = output("deform", 0, diag, st.max_drift < 1e-6, trajectory_csv(&st.samples));
            out.snapshots = st
                .samples
                .iter()
                .map(|x| snapshot(x.time, x.drift, &[x.diagonal_norm, x.off_diagonal_norm, x.laplacian_deviation]))
                .collect();
            out
        }
    })
}

/// Suggested retry time after a resonant shooting request.
pub fn shooting_retry(period: f64) -> f64 {
    period * (1.0 + 1e-3) + 1e-3
}
