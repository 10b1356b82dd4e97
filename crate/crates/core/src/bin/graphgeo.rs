use clap::{Args, Parser, Subcommand, ValueEnum};
use graphgeo::graph::generators::{expand_spec, Kind};
use graphgeo::graph::io::{parse_any, to_edge_list, to_json};
use graphgeo::report::{cmd_info, cmd_solve, shooting_retry, Equation, SolveParams};
use graphgeo::spectral::OperatorBundle;
use graphgeo::suite::{default_corpus, from_kinds, run, unknown_ids, CorpusItem, SuiteConfig, DEFAULT_SEED};
use graphgeo::{Error, Graph, SimplicialStructure};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "graphgeo", version, about = "Geometry, spectra and theorem checks for finite simple graphs")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Graph file (edge list or JSON).
    #[arg(long, global = true)]
    graph: Option<PathBuf>,
    /// Generator KIND[:ARGS]; `check` accepts several and ranges like cycle:3..10.
    #[arg(long, global = true)]
    generate: Vec<String>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Comma-separated check ids.
    #[arg(long, global = true, value_delimiter = ',')]
    only: Vec<String>,
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    #[arg(long = "budget-simplices", global = true)]
    budget_simplices: Option<usize>,
    /// Relative kernel threshold for eigenvalues.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant report for one graph.
    Info,
    /// Theorem checks over a corpus (default corpus when no graph is given).
    Check {
        /// Evaluate Gauss-Bonnet on a graph with one flipped adjacency.
        #[arg(long)]
        inject_corruption: bool,
        /// Record per-check wall time in the report.
        #[arg(long)]
        timings: bool,
        /// Use small orbital ranges.
        #[arg(long)]
        quick_orbital: bool,
    },
    /// Run one of the evolution or field equations.
    Solve {
        #[arg(value_enum)]
        equation: EquationArg,
        #[arg(long, default_value_t = 0)]
        degree: usize,
        /// Simplex index of the unit initial field or source.
        #[arg(long, default_value_t = 0)]
        source: usize,
        #[arg(long, value_delimiter = ',', default_value = "0,1,10")]
        times: Vec<f64>,
        #[arg(long, default_value_t = 0)]
        x: usize,
        #[arg(long, default_value_t = 1)]
        y: usize,
        /// Shooting time.
        #[arg(long, default_value_t = 1.0)]
        period: f64,
        #[arg(long, default_value_t = 10.0)]
        t_end: f64,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        #[arg(long, default_value_t = 100)]
        sample_every: usize,
    },
    /// Write the graph, boundary matrices or spectra.
    Export {
        #[arg(value_enum)]
        what: ExportArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EquationArg {
    Heat,
    Wave,
    Poisson,
    Maxwell,
    Gravity,
    Shoot,
    Deform,
}

impl From<EquationArg> for Equation {
    fn from(e: EquationArg) -> Self {
        match e {
            EquationArg::Heat => Equation::Heat,
            EquationArg::Wave => Equation::Wave,
            EquationArg::Poisson => Equation::Poisson,
            EquationArg::Maxwell => Equation::Maxwell,
            EquationArg::Gravity => Equation::Gravity,
            EquationArg::Shoot => Equation::Shoot,
            EquationArg::Deform => Equation::Deform,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportArg {
    EdgeList,
    Json,
    Boundaries,
    Spectra,
}

fn config(c: &Common) -> SuiteConfig {
    let mut cfg = SuiteConfig { seed: c.seed, ..SuiteConfig::default() };
    if !c.only.is_empty() {
        cfg.only = Some(c.only.clone());
    }
    if let Some(b) = c.budget_simplices {
        cfg.simplex_budget = b;
    }
    if let Some(t) = c.tolerance {
        cfg.kernel_tolerance = t;
    }
    cfg
}

fn read_graph(path: &PathBuf) -> Result<Graph, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    parse_any(&text)
}

fn single_graph(c: &Common) -> Result<(String, Graph), Error> {
    match (&c.graph, c.generate.as_slice()) {
        (Some(p), []) => Ok((p.display().to_string(), read_graph(p)?)),
        (None, [spec]) => {
            let k: Kind = spec.parse()?;
            Ok((k.to_string(), k.generate()?))
        }
        _ => Err(Error::Invalid("give exactly one of --graph FILE or --generate KIND".into())),
    }
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Invalid(format!("{}: {e}", p.display()))),
        None => Ok(()),
    }
}

fn corpus(c: &Common) -> Result<Vec<CorpusItem>, Error> {
    let mut items = Vec::new();
    if let Some(p) = &c.graph {
        let g = read_graph(p)?;
        items.push(CorpusItem { name: p.display().to_string(), kind: None, graph: g, seed: c.seed });
    }
    if !c.generate.is_empty() {
        let mut kinds = Vec::new();
        for spec in &c.generate {
            kinds.extend(expand_spec(spec)?);
        }
        items.extend(from_kinds(&kinds, c.seed)?);
    }
    if items.is_empty() {
        items = default_corpus(c.seed)?;
    }
    Ok(items)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::Resonant { .. } = e {
                if let Command::Solve { period, .. } = cli.command {
                    eprintln!("retry with --period {:.6}", shooting_retry(period));
                }
            }
            ExitCode::from(2)
        }
    }
}

fn execute(cli: &Cli) -> Result<u8, Error> {
    let c = &cli.common;
    let mut cfg = config(c);
    match &cli.command {
        Command::Info => {
            let (source, g) = single_graph(c)?;
            let doc = cmd_info(&source, &g, &cfg)?;
            print!("{}", doc.text());
            write_out(&c.json, &doc.to_json())?;
            Ok(if doc.passed() { 0 } else { 1 })
        }
        Command::Check { inject_corruption, timings, quick_orbital } => {
            if let Some(ids) = &cfg.only {
                let bad = unknown_ids(ids);
                if !bad.is_empty() {
                    return Err(Error::Invalid(format!("unknown check ids: {}", bad.join(", "))));
                }
            }
            cfg.inject_corruption = *inject_corruption;
            cfg.timings = *timings;
            if *quick_orbital {
                cfg.orbital = graphgeo::orbital::ClaimRanges::quick();
            }
            let items = corpus(c)?;
            let report = run(items, &cfg);
            let path = c.json.clone().unwrap_or_else(|| PathBuf::from("graphgeo-check.json"));
            write_out(&Some(path.clone()), &report.to_json())?;
            for line in report.summary_lines() {
                println!("{line}");
            }
            for check in &report.checks {
                for r in check.records.iter().filter(|r| !r.pass) {
                    println!("  {} {}: {} vs {}", check.id, r.item, r.lhs, r.rhs);
                    if let Some(d) = &r.detail {
                        println!("    {d}");
                    }
                }
                for e in &check.errors {
                    println!("  {} {}: error {}", check.id, e.item, e.error);
                }
            }
            println!("report written to {}", path.display());
            Ok(report.exit_code() as u8)
        }
        Command::Solve { equation, degree, source, times, x, y, period, t_end, dt, sample_every } => {
            let (_, g) = single_graph(c)?;
            let p = SolveParams {
                degree: *degree,
                source: *source,
                times: times.clone(),
                x: *x,
                y: *y,
                period: *period,
                t_end: *t_end,
                dt: *dt,
                sample_every: *sample_every,
            };
            let out = cmd_solve(&g, (*equation).into(), &p, &cfg)?;
            if c.csv.is_none() && c.json.is_none() {
                print!("{}", out.csv);
            }
            write_out(&c.csv, &out.csv)?;
            write_out(&c.json, &serde_json::to_string_pretty(&out).expect("serializes"))?;
            for (k, v) in &out.diagnostics {
                eprintln!("{k} {v}");
            }
            eprintln!("verified {}", out.verified);
            Ok(if out.verified { 0 } else { 1 })
        }
        Command::Export { what } => {
            let (_, g) = single_graph(c)?;
            let text = match what {
                ExportArg::EdgeList => to_edge_list(&g),
                ExportArg::Json => to_json(&g),
                ExportArg::Boundaries => {
                    let s = SimplicialStructure::new(&g)?;
                    (0..s.dims().saturating_sub(1)).map(|k| format!("# d_{k}\n{}", s.triplets(k))).collect()
                }
                ExportArg::Spectra => {
                    let s = SimplicialStructure::new(&g)?;
                    OperatorBundle::with_tolerance(&s, cfg.kernel_tolerance)?.spectra_csv()
                }
            };
            match (&c.json, &c.csv) {
                (None, None) => print!("{text}"),
                (j, v) => {
                    write_out(j, &text)?;
                    write_out(v, &text)?;
                }
            }
            Ok(0)
        }
    }
}
