//! End-to-end runs of the `sepvar` binary.

use std::io::Write;
use std::process::{Command, Output};

fn sepvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepvar")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = sepvar(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn minsep_reports_the_cubic_generator() {
    let v = json(&["minsep", "--poly", "x^2 - x*y + y^2"]);
    assert_eq!(v["separable"], true);
    assert_eq!((v["f"].as_str(), v["g"].as_str()), (Some("x^3"), Some("-y^3")));
    assert_eq!(v["N"], 3);
}

#[test]
fn separate_two_component_ideal() {
    let gens = "(x^2 - x*y + y^2)*(x^3 - 2*x*y^2 - 1); (x^2 - x*y + y^2)*(y^3 - 2*x^2*y - 1)";
    let v = json(&["--verify", "separate", "--gens", gens]);
    assert_eq!(v["path"], "principal");
    assert_eq!(v["a"]["f"], "x^3");
    assert_eq!(v["generators"].as_array().unwrap().len(), 5);
    assert_eq!(v["certificates"][0], "t^4 - 2*t^2");
    let dims: Vec<u64> = v["stages"].as_array().unwrap().iter().map(|s| s["kernel_dimension"].as_u64().unwrap()).collect();
    assert_eq!(dims, [7, 7, 3]);
}

#[test]
fn separate_reads_generator_files() {
    let mut f = tempfile_path("gens");
    writeln!(f.1, "# zero-dimensional example\nx^2*y^2 - 1\ny^5 + y^3 + x*y^2 + x  # second").unwrap();
    let v = json(&["separate", "--file", f.0.to_str().unwrap()]);
    assert_eq!(v["path"], "zero-dimensional");
    assert_eq!(v["generators"].as_array().unwrap().len(), 29);
    std::fs::remove_file(&f.0).unwrap();
}

fn tempfile_path(tag: &str) -> (std::path::PathBuf, std::fs::File) {
    let path = std::env::temp_dir().join(format!("sepvar-{tag}-{}.txt", std::process::id()));
    let file = std::fs::File::create(&path).unwrap();
    (path, file)
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "separate", "--gens", "x^3 - y^2; x^2*y - y^3"];
    assert_eq!(stdout(&sepvar(&args)), stdout(&sepvar(&args)));
}

#[test]
fn is_separable_and_oracles() {
    let v = json(&["is-separable", "--poly", "x^2 + x*y + y^2"]);
    assert_eq!(v["separable"], true);
    assert_eq!(v["multiple"], "x^3 - y^3");
    let v = json(&["is-separable", "--poly", "x^3 + x^2*y + x*y^2 + y^3 + y^2"]);
    assert_eq!(v["separable"], false);
    let v = json(&["oracle", "separable", "--poly", "x^2 + x*y + y^2", "--max-deg", "1"]);
    assert_eq!(v["multiple"], "x^3 - y^3");
    let v = json(&["oracle", "slice", "--gens", "x - y", "--max-deg", "3"]);
    assert_eq!(v["dimension"], 4);
}

#[test]
fn sepset_commands() {
    let v = json(&["sepset", "check", "--fixture", "x-y"]);
    assert_eq!(v["separated"], true);
    let v = json(&["sepset", "check", "--fixture", "x^2+xy+y^2"]);
    assert_eq!(v["separated"], false);
    let v = json(&["sepset", "closure", "--m", "3", "--n", "3", "--points", "(0,0), (1,0), (1,2)"]);
    assert_eq!(v["points"], serde_json::json!([[0, 0], [0, 2], [1, 0], [1, 2]]));
}

#[test]
fn projection_example() {
    let v = json(&["project", "--poly", "x1^2 + x1*y1 + y1^2 + y2^4", "--xi", "x1->x", "--eta", "y1->y^2, y2->y"]);
    assert_eq!(v["image"], "2*y^4 + x*y^2 + x^2");
    assert_eq!(v["possibly_separable"], false);
}

#[test]
fn exit_codes() {
    assert_eq!(sepvar(&["minsep", "--poly", "x y"]).status.code(), Some(1));
    assert_eq!(sepvar(&["minsep"]).status.code(), Some(1));
    assert_eq!(sepvar(&["separate", "--gens", "x", "--file", "f"]).status.code(), Some(1));
    let o = sepvar(&["minsep", "--poly", "x*y - 1 + z"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 11"));
    assert_eq!(sepvar(&["minsep", "--poly", "0"]).status.code(), Some(2));
    assert_eq!(sepvar(&["--help"]).status.code(), Some(0));
}

#[test]
fn selftest_is_seeded() {
    let a = sepvar(&["--seed", "3", "selftest", "--count", "4"]);
    assert!(a.status.success());
    assert!(stdout(&a).contains("4/4 passed"));
}
