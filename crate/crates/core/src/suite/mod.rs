//! Theorem-check suite over a graph corpus.

pub mod checks;
pub mod corpus;

pub use checks::{corruption, fx, CheckDef, CHECKS};
pub use corpus::{default_corpus, default_kinds, from_kinds, item_seed, CorpusItem};

use crate::complex::{Limits, SimplicialStructure, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::graph::io::graph_hash;
use crate::orbital::ClaimRanges;
use crate::spectral::operators::KERNEL_REL;
use crate::spectral::OperatorBundle;
use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;

pub const DEFAULT_SEED: u64 = 20_240_901;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub only: Option<Vec<String>>,
    pub kernel_tolerance: f64,
    pub simplex_budget: usize,
    pub orbital: ClaimRanges,
    pub inject_corruption: bool,
    pub timings: bool,
    /// Run checks that do not depend on the corpus.
    pub globals: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: DEFAULT_SEED,
            only: None,
            kernel_tolerance: KERNEL_REL,
            simplex_budget: DEFAULT_BUDGET,
            orbital: ClaimRanges::default(),
            inject_corruption: false,
            timings: false,
            globals: true,
        }
    }
}

impl SuiteConfig {
    pub fn selected(&self, id: &str) -> bool {
        self.only.as_ref().is_none_or(|o| o.iter().any(|x| x == id))
    }
}

/// Per-item state shared by all checks.
pub struct Prepared {
    pub index: usize,
    pub item: CorpusItem,
    pub s: SimplicialStructure,
    pub bundle: std::result::Result<OperatorBundle, Error>,
    /// Gauss-Bonnet is evaluated on a corrupted copy of this item.
    pub corrupt: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Record {
    pub item: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ItemError {
    pub item: String,
    pub error: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub theorem: String,
    pub tolerance: String,
    pub passed: bool,
    pub records: Vec<Record>,
    pub errors: Vec<ItemError>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

impl CheckResult {
    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| !r.pass).count()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub hash: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub seed: u64,
    pub corpus: Vec<CorpusEntry>,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// 0 when everything passed, 1 on a failed record, 2 on errors only.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.failures() > 0) {
            1
        } else if self.checks.iter().any(|c| !c.errors.is_empty()) {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn summary_lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                let status = if c.passed { "PASS" } else { "FAIL" };
                let mut line = format!(
                    "{status} {:<24} {} records, {} failed, {} errors",
                    c.id,
                    c.records.len(),
                    c.failures(),
                    c.errors.len()
                );
                if let Some(s) = c.seconds {
                    line.push_str(&format!(" ({s:.2}s)"));
                }
                line
            })
            .collect()
    }
}

/// Item whose Gauss-Bonnet check gets corrupted: the octahedron if present,
/// else the first item that admits an Euler-changing flip.
fn corruption_index(items: &[CorpusItem]) -> Option<usize> {
    items
        .iter()
        .position(|i| i.name == "octahedron")
        .or_else(|| items.iter().position(|i| corruption(&i.graph).is_some()))
}

pub fn prepare(items: Vec<CorpusItem>, cfg: &SuiteConfig) -> Vec<std::result::Result<Prepared, ItemError>> {
    let target = if cfg.inject_corruption { corruption_index(&items) } else { None };
    items
        .into_par_iter()
        .enumerate()
        .map(|(index, item)| {
            let limits = Limits { max_dim: None, budget: cfg.simplex_budget };
            match SimplicialStructure::with_limits(&item.graph, limits) {
                Ok(s) => {
                    let bundle = OperatorBundle::with_tolerance(&s, cfg.kernel_tolerance);
                    Ok(Prepared { index, corrupt: target == Some(index), item, s, bundle })
                }
                Err(e) => Err(ItemError { item: item.name, error: e.to_string() }),
            }
        })
        .collect()
}

pub fn run(items: Vec<CorpusItem>, cfg: &SuiteConfig) -> SuiteReport {
    let corpus = items
        .iter()
        .map(|i| CorpusEntry { name: i.name.clone(), n: i.graph.n(), m: i.graph.edge_count(), hash: graph_hash(&i.graph) })
        .collect();
    let prepared = prepare(items, cfg);
    let mut results = Vec::new();
    for def in CHECKS.iter().filter(|d| cfg.selected(d.id)) {
        let start = Instant::now();
        let mut records = Vec::new();
        let mut errors = Vec::new();
        if let Some(f) = def.item {
            let out: Vec<_> = prepared
                .par_iter()
                .map(|p| match p {
                    Ok(p) => f(p, cfg).map_err(|e| ItemError { item: p.item.name.clone(), error: e.to_string() }),
                    Err(e) => Err(e.clone()),
                })
                .collect();
            for o in out {
                match o {
                    Ok(Some(r)) => records.push(r),
                    Ok(None) => {}
                    Err(e) => errors.push(e),
                }
            }
        }
        if let (Some(f), true) = (def.global, cfg.globals) {
            match f(cfg) {
                Ok(rs) => records.extend(rs),
                Err(e) => errors.push(ItemError { item: "global".into(), error: e.to_string() }),
            }
        }
        let passed = errors.is_empty() && records.iter().all(|r| r.pass);
        results.push(CheckResult {
            id: def.id.to_string(),
            theorem: def.theorem.to_string(),
            tolerance: def.tolerance.to_string(),
            passed,
            records,
            errors,
            seconds: cfg.timings.then(|| start.elapsed().as_secs_f64()),
        });
    }
    let passed = results.iter().all(|c| c.passed);
    SuiteReport { schema: 1, seed: cfg.seed, corpus, checks: results, passed }
}

pub fn unknown_ids(ids: &[String]) -> Vec<String> {
    ids.iter().filter(|i| !CHECKS.iter().any(|c| c.id == i.as_str())).cloned().collect()
}

pub fn run_default(cfg: &SuiteConfig) -> Result<SuiteReport> {
    Ok(run(default_corpus(cfg.seed)?, cfg))
}
