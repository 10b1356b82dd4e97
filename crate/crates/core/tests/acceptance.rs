use graphgeo::suite::{run_default, CheckResult, SuiteConfig, SuiteReport};
use std::process::Command;
use std::time::Instant;

struct Outcome {
    pass: bool,
    note: String,
}

fn outcome(pass: bool, note: impl Into<String>) -> Outcome {
    Outcome { pass, note: note.into() }
}

fn check<'a>(r: &'a SuiteReport, id: &str) -> &'a CheckResult {
    r.check(id).unwrap_or_else(|| panic!("check {id} missing"))
}

fn record_count(c: &CheckResult, prefix: &str) -> usize {
    c.records.iter().filter(|x| x.item.starts_with(prefix)).count()
}

fn find<'a>(c: &'a CheckResult, item: &str) -> Option<&'a graphgeo::suite::Record> {
    c.records.iter().find(|x| x.item == item)
}

fn status(c: &CheckResult) -> String {
    format!("{} records, {} failed, {} errors", c.records.len(), c.failures(), c.errors.len())
}

fn all_passed(r: &SuiteReport, ids: &[&str]) -> Outcome {
    let pass = ids.iter().all(|id| check(r, id).passed);
    let note = ids.iter().map(|id| format!("{id}: {}", status(check(r, id)))).collect::<Vec<_>>().join("; ");
    outcome(pass, note)
}

fn run_cli(dir: &std::path::Path, name: &str) -> (i32, Vec<u8>) {
    let path = dir.join(name);
    let out = Command::new(env!("CARGO_BIN_EXE_graphgeo"))
        .args(["check", "--json"])
        .arg(&path)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), std::fs::read(&path).unwrap_or_default())
}

fn main() {
    let start = Instant::now();
    let gb_only = SuiteConfig { only: Some(vec!["gauss-bonnet".into()]), globals: false, ..SuiteConfig::default() };
    let gb_report = run_default(&gb_only).expect("corpus builds");
    let gb_seconds = start.elapsed().as_secs_f64();

    let cfg = SuiteConfig { timings: true, ..SuiteConfig::default() };
    let report = run_default(&cfg).expect("corpus builds");
    let n = report.corpus.len();
    let small = |limit: usize| report.corpus.iter().filter(|e| e.n <= limit).count();

    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();

    let gb = check(&gb_report, "gauss-bonnet");
    results.push((
        1,
        "Gauss-Bonnet",
        outcome(gb.passed && gb.records.len() == n && n >= 350 && gb_seconds < 60.0, format!("{}; {gb_seconds:.1}s", status(gb))),
    ));

    let ph = check(&report, "poincare-hopf");
    results.push((2, "Poincare-Hopf", outcome(ph.passed && ph.records.len() == n, status(ph))));

    let ie = check(&report, "index-expectation");
    let mc = ["octahedron sampled", "icosahedron sampled"].iter().all(|x| find(ie, x).is_some_and(|r| r.pass));
    let exhaustive = ie.records.len() - 2;
    let want = report.corpus.iter().filter(|e| e.n >= 1 && e.n <= 7).count();
    results.push((3, "index expectation", outcome(ie.passed && mc && exhaustive == want, status(ie))));

    let lf = check(&report, "lefschetz");
    let trees = record_count(lf, "random_tree");
    results.push((4, "Lefschetz", outcome(lf.passed && trees == 20 && lf.records.len() >= small(10), format!("{}; {trees} trees", status(lf)))));

    let br = check(&report, "brouwer");
    results.push((5, "Brouwer", outcome(br.passed && br.records.len() == 100, status(br))));

    let ms = check(&report, "mckean-singer");
    results.push((6, "McKean-Singer", outcome(ms.passed && ms.records.len() == n, status(ms))));

    let hd = check(&report, "hodge");
    let spheres = ["octahedron", "icosahedron"].iter().all(|x| find(hd, x).is_some_and(|r| r.rhs == "(1,0,1)" && r.pass));
    results.push((7, "Hodge-DeRham", outcome(hd.passed && hd.records.len() == n && spheres, status(hd))));

    let ls = check(&report, "lusternik-schnirelmann");
    let oct = find(ls, "octahedron").map(|r| r.lhs.clone()).unwrap_or_default();
    results.push((8, "Ljusternik-Schnirelmann", outcome(ls.passed && oct == "cup 2 tcap 2 crit 2", format!("{}; octahedron {oct}", status(ls)))));

    let kh = check(&report, "kirchhoff");
    let c5 = find(kh, "cycle:5").is_some_and(|r| r.lhs.starts_with("cofactor 5,") && r.rhs == "enumerated 5");
    results.push((9, "Kirchhoff", outcome(kh.passed && c5, format!("{}; C_5 = 5: {c5}", status(kh)))));

    let cs = check(&report, "chebotarev-shamis");
    let shapes = record_count(cs, "ternary");
    let random = record_count(cs, "random 4x4");
    let forests = cs.records.len() - shapes - random;
    results.push((
        10,
        "Chebotarev-Shamis",
        outcome(cs.passed && shapes == 12 && random == 1 && forests == small(6), format!("{}; {shapes} ternary shapes", status(cs))),
    ));

    results.push((11, "Euler-Poincare and Stokes", all_passed(&report, &["euler-poincare", "stokes"])));
    let rr = check(&report, "riemann-roch");
    let c5 = record_count(rr, "cycle:5 ");
    results.push((12, "Riemann-Roch", outcome(rr.passed && c5 == 5, format!("{}; {c5} C_5 cases", status(rr)))));

    let rh = check(&report, "riemann-hurwitz");
    let c6 = find(rh, "cycle:6 reflection").is_some_and(|r| r.pass);
    results.push((13, "Riemann-Hurwitz", outcome(rh.passed && c6, format!("{}; C_6 reflection {c6}", status(rh)))));

    results.push((14, "Morse inequalities", all_passed(&report, &["morse"])));
    results.push((15, "flatness and Bonnet diameter", all_passed(&report, &["flatness", "bonnet-diameter"])));

    let dy = check(&report, "dynamics");
    let td = check(&report, "toda-lax");
    results.push((
        16,
        "dynamics",
        outcome(dy.passed && td.passed && td.records.len() == 3, format!("dynamics: {}; toda-lax: {}", status(dy), status(td))),
    ));

    let zt = check(&report, "zeta-trend");
    let trend = find(zt, "median trend").map(|r| format!("{} {}", r.lhs, r.rhs)).unwrap_or_default();
    results.push((17, "zeta root trend", outcome(zt.passed, format!("{}; {trend}", status(zt)))));

    let ob = check(&report, "orbital");
    let secs = ob.seconds.unwrap_or(f64::INFINITY);
    results.push((18, "orbital claims", outcome(ob.passed && ob.records.len() == 9 && secs < 600.0, format!("{}; {secs:.1}s", status(ob)))));

    results.push((19, "dimension", all_passed(&report, &["dimension"])));

    let dir = tempfile::tempdir().expect("temp dir");
    let (code_a, a) = run_cli(dir.path(), "a.json");
    let (code_b, b) = run_cli(dir.path(), "b.json");
    let same = !a.is_empty() && a == b;
    results.push((20, "determinism", outcome(same && code_a == 0 && code_b == 0, format!("exit codes {code_a}/{code_b}, {} bytes, identical {same}", a.len()))));

    let mut failed = 0;
    for (i, name, o) in &results {
        println!("criterion {i:>2} {:<30} {} ({})", name, if o.pass { "PASS" } else { "FAIL" }, o.note);
        if !o.pass {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed in {:.1}s", results.len() - failed, results.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
