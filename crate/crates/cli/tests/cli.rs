use std::path::Path;
use std::process::{Command, Output};

use exact_cone_cli::bundled::{ANTI_DUAL_FILE, ANTI_DUAL_REP_FILE, GAME_FILE, GAME_REP_FILE};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exact-cone"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn data_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/data"))
}

#[test]
fn analyze_reports_fourth_class() {
    let o = run(&["--json", "analyze", "--n", "4", "--system", "{a,ab,bc,abd}"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["klass"], "FourthType");
    assert_eq!(v["is_minimal"], true);
}

#[test]
fn analyze_reports_theta() {
    let o = run(&["--json", "analyze", "--n", "3", "--system", "{a,b,ab}"]);
    assert_eq!(o.status.code(), Some(0));
    let theta = &json(&o)["theta"];
    assert_eq!(theta["a"], "-1");
    assert_eq!(theta["b"], "-1");
    assert_eq!(theta["ab"], "1");
    assert_eq!(theta["0"], "1");
}

#[test]
fn analyze_reads_system_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    std::fs::write(&path, r#"{"players": ["a","b","c"], "sets": ["c", "ab"]}"#).unwrap();
    let o = run(&["--json", "analyze", "--file", path.to_str().unwrap()]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert_eq!(json(&o)["klass"], "MinBalanced");
}

#[test]
fn facet_summaries() {
    let o = run(&["facets", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "44 facets, 6 types");
    let o = run(&["facets", "--n", "2"]);
    assert_eq!(stdout(&o).trim(), "1 facet, 1 type");
    let o = run(&["--json", "facets", "--n", "3"]);
    let v = json(&o);
    assert_eq!(v["facet_count"], 6);
    assert_eq!(v["type_count"], 2);
}

#[test]
fn facet_argument_errors() {
    assert_eq!(run(&["facets", "--n", "7"]).status.code(), Some(3));
    assert_eq!(run(&["facets", "--n", "6"]).status.code(), Some(3));
    assert_eq!(run(&["facets"]).status.code(), Some(3));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(3));
}

#[test]
fn parse_errors_exit_with_two() {
    let o = run(&["analyze", "--n", "3", "--system", "{a,q}"]);
    assert_eq!(o.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(
        run(&["check-game", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
    let missing = dir.path().join("missing.json");
    assert_eq!(
        run(&["check-game", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn check_game_on_the_counterexample() {
    let file = data_dir().join(GAME_FILE);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ad.json");
    let o = run(&[
        "--json",
        "check-game",
        file.to_str().unwrap(),
        "--anti-dual",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["balanced"], true);
    assert_eq!(v["totally_balanced"], true);
    assert_eq!(v["exactness"]["status"], "NotExact");

    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let table: Value =
        serde_json::from_str(&std::fs::read_to_string(data_dir().join(ANTI_DUAL_FILE)).unwrap())
            .unwrap();
    assert_eq!(written, table);

    let o = run(&["check-game", file.to_str().unwrap(), "--totally-balanced"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn check_game_accepts_an_exact_game() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    std::fs::write(
        &path,
        r#"{"players":["a","b"],"values":{"0":"0","a":"1","b":"2","ab":"4"}}"#,
    )
    .unwrap();
    let o = run(&["--json", "check-game", path.to_str().unwrap(), "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["exactness"]["status"], "Exact");
}

#[test]
fn diagrams() {
    let o = run(&["diagram", "--n", "3", "--system", "{a,b,ab}"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "a A. | .*\nb .B | .*\nc .. | ..\nA=ax1 B=bx1 *=abx1 blank x1\n"
    );
    let o = run(&[
        "diagram",
        "--n",
        "5",
        "--system",
        "{ab,ac,bc,abd,abe}",
        "--format",
        "svg",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("<svg"));
    let o = run(&["diagram", "--n", "4", "--system", "{a,b,ab,abc,abd}"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_counterexample_passes() {
    let o = run(&["verify-counterexample"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("8/8 checks passed"));
    let o = run(&[
        "--json",
        "verify-counterexample",
        "--data-dir",
        data_dir().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["checks"].as_array().unwrap().len(), 8);
}

#[test]
fn tampered_tables_are_caught() {
    let dir = tempfile::tempdir().unwrap();
    for f in [GAME_FILE, GAME_REP_FILE, ANTI_DUAL_FILE, ANTI_DUAL_REP_FILE] {
        std::fs::copy(data_dir().join(f), dir.path().join(f)).unwrap();
    }
    let path = dir.path().join(ANTI_DUAL_FILE);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["values"]["ab"] = Value::String("-3".into());
    std::fs::write(&path, serde_json::to_string_pretty(&v).unwrap()).unwrap();

    let o = run(&[
        "verify-counterexample",
        "--data-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("anti-dual matches table"), "{err}");
}

#[test]
fn min_balanced_counts() {
    let o = run(&["min-balanced", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last(), Some("41 min-balanced systems"));
}

#[test]
fn oracle_agrees() {
    let o = run(&[
        "--json", "--seed", "11", "oracle", "--n", "4", "--games", "40",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["generator_agrees"], true);
    assert_eq!(v["facet_test_agrees"], 40);
    assert_eq!(run(&["oracle", "--n", "5"]).status.code(), Some(3));
}

#[test]
fn jobs_flag() {
    let o = run(&["--jobs", "2", "facets", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        run(&["--jobs", "0", "facets", "--n", "3"]).status.code(),
        Some(3)
    );
}
