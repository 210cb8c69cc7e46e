// End-to-end checks of the command line on the bundled data files.

use aomoto::cli::{run, Outcome};
use serde_json::Value;

fn data(name: &str) -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/data/").to_string() + name
}

fn aomoto(args: &[&str]) -> Outcome {
    run(std::iter::once("aomoto").chain(args.iter().copied()))
}

fn json(o: &Outcome) -> Value {
    assert_eq!(o.code, 0, "stderr: {}", o.stderr);
    serde_json::from_str(&o.stdout).expect("stdout is JSON")
}

fn without_timing(o: &Outcome) -> Value {
    let mut v: Value = serde_json::from_str(&o.stdout).unwrap();
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn chambers_of_six_lines() {
    let v = json(&aomoto(&["chambers", &data("six_lines.arr")]));
    assert_eq!(v["command"][0], "chambers");
    assert_eq!(v["results"]["count"], 16);
    assert_eq!(v["results"]["count"], v["results"]["expected"]);
    assert_eq!(v["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn output_is_reproducible_apart_from_timing() {
    for args in [
        vec!["chamber-complex".to_string(), data("six_lines.arr"), "--mod".into(), "5".into()],
        vec!["h1".to_string(), data("three_pairs.arr"), "--method".into(), "chambers".into()],
        vec!["nets".to_string(), data("quad.arr")],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(without_timing(&aomoto(&args)), without_timing(&aomoto(&args)));
    }
}

#[test]
fn three_methods_agree_on_three_pairs() {
    let mut seen = Vec::new();
    for method in ["direct", "chambers", "rb"] {
        let v = json(&aomoto(&["h1", &data("three_pairs.arr"), "--mod", "2", "--eta", "1,0,0,0,0,0", "--method", method]));
        seen.push(v["results"]["invariants"].clone());
    }
    assert!(seen.iter().all(|s| *s == seen[0]), "{seen:?}");
}

#[test]
fn octagon_over_z8() {
    let eta = "6,1,6,1,6,1,6,1,6,1,6,1,6,1,6";
    let v = json(&aomoto(&["h1", &data("a16-1-dec1.arr"), "--mod", "8", "--eta", eta, "--method", "rb"]));
    assert_eq!(v["results"]["invariants"], "Z/8");
    assert_eq!(v["results"]["agrees_with_direct"], true);
}

#[test]
fn decone_matches_the_decone_file() {
    let a = json(&aomoto(&["--decone", "H1", "chambers", &data("a16-1.arr")]));
    let b = json(&aomoto(&["chambers", &data("a16-1-dec1.arr")]));
    assert_eq!(a["results"]["count"], b["results"]["count"]);
    assert_ne!(a["input_digest"], b["input_digest"]);
}

#[test]
fn tsv_output_lists_the_maps() {
    let o = aomoto(&["chamber-complex", &data("six_lines.arr"), "--tsv"]);
    assert_eq!(o.code, 0);
    for header in ["# deg", "# nabla0", "# nabla1"] {
        assert!(o.stdout.lines().any(|l| l == header), "missing {header}");
    }
}

#[test]
fn non_unit_alpha_is_a_precondition_error() {
    let o = aomoto(&["h1", &data("three_pairs.arr"), "--mod", "2", "--eta", "1,1,1,1,1,1", "--method", "rb"]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("not a unit"));
}

#[test]
fn bad_input_exits_one() {
    assert_eq!(aomoto(&["h1", "/nonexistent.arr"]).code, 1);
    assert_eq!(aomoto(&["frobnicate"]).code, 1);
    assert_eq!(aomoto(&["nets", &data("quad.arr"), "--k", "5"]).code, 1);
}

#[test]
fn quadrilateral_has_one_three_net_and_no_four_net() {
    let v = json(&aomoto(&["nets", &data("quad.arr")]));
    assert_eq!(v["results"]["nets"].as_array().unwrap().len(), 1);
    assert_eq!(v["results"]["cocycle_extraction"]["agrees_with_search"], true);
    let v = json(&aomoto(&["nets", &data("quad.arr"), "--k", "4"]));
    assert!(v["results"]["nets"].as_array().unwrap().is_empty());
}

#[test]
fn refuting_a_non_partition() {
    let v = json(&aomoto(&["refute4net", &data("quad.arr"), "--classes", "X0|X1|Y0|Y1"]));
    assert_eq!(v["results"]["certificate"]["kind"], "not_a_partition");
}

#[test]
fn pencils_are_not_essential() {
    let o = aomoto(&["nonsep", &data("par2.arr")]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("not essential"));
}

#[test]
fn non_separation_holds_on_b3() {
    let v = json(&aomoto(&["nonsep", &data("b3.arr")]));
    assert_eq!(v["results"]["separated"], 0);
    assert!(v["results"]["cocycles"].as_u64().unwrap() > 1);
}

#[test]
fn corpus_run_is_clean() {
    let v = json(&aomoto(&["corpus", concat!(env!("CARGO_MANIFEST_DIR"), "/data")]));
    assert_eq!(v["results"]["files"], 10);
    for e in v["results"]["entries"].as_array().unwrap() {
        assert_eq!(e["chambers"], e["chambers_expected"], "{}", e["file"]);
        assert_eq!(e["separated"], 0, "{}", e["file"]);
        assert!(e["violations"].as_array().unwrap().is_empty(), "{}", e["file"]);
    }
}
