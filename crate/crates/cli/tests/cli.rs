use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use nhdual_core::document::parse_document;

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nhdual-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn nhdual(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nhdual")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

const TRIANGLE: &str = r#"{"vertices":["a","b","c"],"facets":[["a","b"],["b","c"],["a","c"]]}"#;
const NH_SPHERE: &str =
    r#"{"vertices":["a","b","c","s","t"],"facets":[["a","b","c","t"],["a","b","s"],["b","c","s"],["a","c","s"]]}"#;

#[test]
fn dual_of_triangle_boundary_is_the_empty_face() {
    let input = scratch("tri.json", TRIANGLE);
    let o = nhdual(&["dual", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let p = parse_document(&stdout(&o)).unwrap();
    assert!(p.complex.is_empty_face());
}

#[test]
fn dual_with_tau_round_trips_over_the_recorded_ground() {
    let input = scratch("tri_tau.json", TRIANGLE);
    let out = input.with_file_name("tri_tau_dual.json");
    let o = nhdual(&["dual", "--input", input.to_str().unwrap(), "--tau", "d,e", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let back = nhdual(&["dual", "--input", out.to_str().unwrap()]);
    let original = parse_document(TRIANGLE).unwrap();
    assert_eq!(parse_document(&stdout(&back)).unwrap().complex.facets().len(), original.complex.facets().len());
    assert_eq!(json(&back)["facets"], serde_json::json!([["a", "b"], ["a", "c"], ["b", "c"]]));
}

#[test]
fn clashing_tau_is_an_input_error() {
    let input = scratch("tri_clash.json", TRIANGLE);
    let o = nhdual(&["dual", "--input", input.to_str().unwrap(), "--tau", "a"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_finds_nh_sphere_with_decomposition() {
    let input = scratch("nh.json", NH_SPHERE);
    let o = nhdual(&["classify", "--input", input.to_str().unwrap(), "--budget", "100000"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["kind"], "NHSphere");
    assert_eq!(v["homotopy_dim"], 2);
    assert!(v["witness"]["decomposition"]["l"]["facets"].is_array());
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn verify_formula_a_passes() {
    let o = nhdual(&["verify", "--suite", "formula_a", "--seed", "42", "--count", "500"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["passes"], 500);
    assert_eq!(v["seed"], 42);
    assert!(v["version"].is_string());
}

#[test]
fn unknown_suite_and_missing_flags_are_usage_errors() {
    assert_eq!(nhdual(&["verify", "--suite", "nope", "--seed", "1"]).status.code(), Some(2));
    assert_eq!(nhdual(&["verify", "--suite", "formula_a"]).status.code(), Some(2));
    assert_eq!(nhdual(&["generate", "--kind", "shelled-ball"]).status.code(), Some(2));
    assert_eq!(nhdual(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn malformed_documents_report_a_position() {
    let input = scratch("bad.json", "{\"vertices\": [\"a\"],\n \"facets\": [[\"b\"]]}");
    let o = nhdual(&["homology", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("facets[0][0]"));
    let input = scratch("broken.json", "{\"vertices\": [\n  oops");
    let o = nhdual(&["homology", "--input", input.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn homology_of_rp2_has_torsion() {
    let doc = nhdual(&["generate", "--kind", "reference", "--name", "rp2_6"]);
    assert_eq!(doc.status.code(), Some(0));
    let input = scratch("rp2.json", &stdout(&doc));
    let v = json(&nhdual(&["homology", "--input", input.to_str().unwrap()]));
    assert_eq!(v["groups"][2], "H1 = Z/2");
    assert_eq!(v["acyclic"], false);
}

#[test]
fn collapse_exit_codes() {
    let ball = nhdual(&["generate", "--kind", "shelled-ball", "--dim", "2", "--facets", "5", "--seed", "3"]);
    let input = scratch("ball.json", &stdout(&ball));
    let yes = nhdual(&["collapse", "--input", input.to_str().unwrap()]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(json(&yes)["verdict"], "yes");

    let circle = scratch("circle.json", TRIANGLE);
    let no = nhdual(&["collapse", "--input", circle.to_str().unwrap()]);
    assert_eq!(no.status.code(), Some(1));

    // The dunce hat has no free face at all, so the search is exhaustive.
    let hat = nhdual(&["generate", "--kind", "reference", "--name", "dunce_hat_8"]);
    let hat = scratch("hat.json", &stdout(&hat));
    assert_eq!(nhdual(&["collapse", "--input", hat.to_str().unwrap()]).status.code(), Some(1));

    let tiny = nhdual(&["collapse", "--input", input.to_str().unwrap(), "--budget", "1"]);
    assert_eq!(tiny.status.code(), Some(3));
    assert_eq!(json(&tiny)["verdict"], "unknown");
}

#[test]
fn collapse_onto_a_named_subcomplex() {
    let input = scratch("path.json", r#"{"vertices":["a","b","c"],"facets":[["a","b"],["b","c"]]}"#);
    let target = scratch("edge.json", r#"{"vertices":["b","c"],"facets":[["b","c"]]}"#);
    let o = nhdual(&["collapse", "--input", input.to_str().unwrap(), "--target", target.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["sequence"]["steps"][0]["cofacet"], serde_json::json!(["a", "b"]));
}

#[test]
fn generation_is_seeded() {
    let args = ["generate", "--kind", "nh-sphere", "--dim", "1", "--seed", "9"];
    let a = nhdual(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&nhdual(&args)));
    assert!(parse_document(&stdout(&a)).is_ok());
}
