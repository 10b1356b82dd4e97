use std::process::{Command, Output};

fn graphgeo(args: &[&str], dir: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphgeo")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn info_octahedron() {
    let dir = tempfile::tempdir().unwrap();
    let o = graphgeo(&["info", "--generate", "octahedron", "--json", "r.json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("chi 2"));
    assert!(text.contains("betti (hodge) [1, 0, 1]"));
    assert!(text.contains("dimension 2  curvature sum 2"));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(json["schema"], 1);
    assert_eq!(json["invariants"]["betti_rank"], serde_json::json!([1, 0, 1]));
    assert!(json["verdicts"].as_array().unwrap().iter().all(|v| v["records"].as_array().unwrap().iter().all(|r| r["lhs"].is_string() && r["rhs"].is_string())));
}

#[test]
fn info_from_edge_list_files() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("e.txt"), "5 0\n").unwrap();
    let o = graphgeo(&["info", "--graph", "e.txt"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("betti (hodge) [5]"));
    std::fs::write(dir.path().join("c5.txt"), "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n").unwrap();
    let o = graphgeo(&["info", "--graph", "c5.txt"], dir.path());
    let text = stdout(&o);
    assert!(text.contains("spanning trees 5"));
    assert!(text.contains("jacobian order 5"));
    std::fs::write(dir.path().join("bad.txt"), "3 1\n0 x\n").unwrap();
    let o = graphgeo(&["info", "--graph", "bad.txt"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn check_kirchhoff_on_cycles() {
    let dir = tempfile::tempdir().unwrap();
    let o = graphgeo(&["check", "--only", "kirchhoff", "--generate", "cycle:3..10", "--json", "k.json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("k.json")).unwrap()).unwrap();
    let records = json["checks"][0]["records"].as_array().unwrap();
    assert_eq!(records.len(), 8);
    for (r, n) in records.iter().zip(3..) {
        assert!(r["lhs"].as_str().unwrap().starts_with(&format!("cofactor {n},")));
    }
}

#[test]
fn corruption_fails_with_vertex_diff() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["check", "--only", "gauss-bonnet", "--generate", "octahedron", "--generate", "cycle:5", "--inject-corruption"];
    let o = graphgeo(&args, dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("vertex 0: K="));
    assert!(dir.path().join("graphgeo-check.json").exists());
}

#[test]
fn unknown_check_id_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = graphgeo(&["check", "--only", "nonsense", "--generate", "cycle:4"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn solve_examples() {
    let dir = tempfile::tempdir().unwrap();
    let o = graphgeo(&["solve", "heat", "--generate", "octahedron", "--times", "0,1,10"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.split(',').nth(1) == Some("1.000000e0")));

    let o = graphgeo(&["solve", "shoot", "--generate", "complete:2", "--period", "1", "--json", "s.json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("s.json")).unwrap()).unwrap();
    assert_eq!(json["verified"], true);

    let o = graphgeo(&["solve", "deform", "--generate", "cycle:4", "--t-end", "10", "--csv", "d.csv"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("d.csv")).unwrap();
    assert!(csv.lines().skip(1).all(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap() < 1e-6));

    let o = graphgeo(&["solve", "shoot", "--generate", "complete:2", "--period", "2.221441469079183"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("retry with --period"));
}

#[test]
fn export_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let o = graphgeo(&["export", "json", "--generate", "wheel:5"], dir.path());
    std::fs::write(dir.path().join("w.json"), &o.stdout).unwrap();
    let a = graphgeo(&["export", "edge-list", "--graph", "w.json"], dir.path());
    let b = graphgeo(&["export", "edge-list", "--generate", "wheel:5"], dir.path());
    assert_eq!(a.stdout, b.stdout);
    let d = graphgeo(&["export", "boundaries", "--generate", "complete:3"], dir.path());
    assert!(stdout(&d).contains("# d_1"));
}
