use poset_threshold::cli::{run, CACHE_ENV, EXIT_CAPACITY, EXIT_OK, EXIT_USAGE};
use poset_threshold::poset::parse_catalog_spec;
use poset_threshold::ramsey::{encode_avoidance, CopyFamily};
use poset_threshold::simulator::{sweep_with, SweepOptions};
use poset_threshold::threshold::{c_star_with, CStarOptions};
use std::process::Command;

fn posetx(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("posetx").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("posetx-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn documented_examples() {
    let (code, out) = posetx(&["cstar", "chain:3"]);
    assert_eq!(code, EXIT_OK);
    let value: f64 = out.lines().find_map(|l| l.strip_prefix("value: ")).unwrap().parse().unwrap();
    assert!((value - 0.462098).abs() < 1e-6);
    assert!(out.contains("class: Uniform"));

    let (code, out) = posetx(&["arrows", "--host", "T2", "--p", "V", "--q", "V"]);
    assert_eq!((code, out.trim()), (EXIT_OK, "true"));

    let (code, out) = posetx(&["sat-encode", "--host", "boolean:3", "--pattern", "boolean:3", "--mode", "all-induced"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("p cnf 8 2\n"), "{out}");
}

#[test]
fn json_output_equals_library_records() {
    let (_, out) = posetx(&["--json", "cstar", "diamond"]);
    let p = parse_catalog_spec("diamond").unwrap();
    let direct = c_star_with(&p, &CStarOptions::default()).unwrap();
    assert_eq!(out, serde_json::to_string_pretty(&direct).unwrap() + "\n");

    let (_, out) = posetx(&["sat-encode", "--host", "boolean:4", "--pattern", "boolean:2"]);
    let host = parse_catalog_spec("boolean:4").unwrap();
    assert_eq!(out, encode_avoidance(&host, &p_of("boolean:2"), CopyFamily::AllWeak).unwrap().to_dimacs());
}

fn p_of(s: &str) -> poset_threshold::Poset {
    parse_catalog_spec(s).unwrap()
}

#[test]
fn simulate_is_seed_deterministic() {
    let args = ["simulate", "--pattern", "chain:2", "--n", "20", "--c-grid", "0.4:0.6:0.05", "--trials", "10", "--seed", "7"];
    let (code, a) = posetx(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(a, posetx(&args).1);
    let grid = [0.4, 0.45, 0.5, 0.55, 0.6];
    let opts = SweepOptions { pattern_name: Some("chain:2".into()), ..Default::default() };
    assert_eq!(a, sweep_with(&p_of("chain:2"), 20, &grid, 10, 7, &opts).unwrap().to_csv());

    let json_args: Vec<&str> = std::iter::once("--json").chain(args).collect();
    let (_, j1) = posetx(&json_args);
    assert_eq!(j1, posetx(&json_args).1);
    assert!(!j1.contains("seconds"));
}

#[test]
fn dsl_files_and_sat_round_trip() {
    let dsl = scratch("butterfly.poset");
    std::fs::write(&dsl, "a < c\na < d\nb < c\nb < d\n").unwrap();
    let (code, out) = posetx(&["antichains", dsl.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("7 antichains"));

    let cnf = scratch("p4.cnf");
    let (code, _) = posetx(&["sat-encode", "--host", "boolean:4", "--pattern", "boolean:3", "-o", cnf.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let (code, out) = posetx(&["sat-solve", cnf.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("s SATISFIABLE"));
}

#[test]
fn exit_codes() {
    assert_eq!(posetx(&["cstar"]).0, EXIT_USAGE);
    assert_eq!(posetx(&["cstar", "chain:3", "--tol", "-1"]).0, EXIT_USAGE);
    assert_eq!(posetx(&["simulate", "--pattern", "V", "--n", "40", "--c-grid", "0.1"]).0, EXIT_CAPACITY);
    assert_eq!(posetx(&["arrows", "--host", "boolean:5", "--p", "V", "--q", "V"]).0, EXIT_CAPACITY);
}

#[test]
fn binary_uses_the_cache_directory() {
    let dir = scratch("cache");
    let bin = env!("CARGO_BIN_EXE_posetx");
    let first = Command::new(bin).args(["--threads", "1", "cstar", "Y"]).env(CACHE_ENV, &dir).output().unwrap();
    assert!(first.status.success());
    assert_eq!(std::fs::read_dir(&dir).unwrap().count(), 1);
    let second = Command::new(bin).args(["cstar", "Y"]).env(CACHE_ENV, &dir).output().unwrap();
    assert_eq!(first.stdout, second.stdout);
    let bad = Command::new(bin).arg("nonsense").output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}
