use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use cycmod::families::{complete, cube, petersen};
use cycmod::graph::Graph;
use cycmod::graph6::{emit_graph6, parse_graph6};
use cycmod::necklaces::{random_wiggly_necklace, KGoodWitness};
use cycmod::oracle::has_cycle_mod;
use cycmod_cli::WitnessFile;

fn cycmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cycmod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_graph(dir: &Path, name: &str, g: &Graph) -> String {
    let p = dir.join(name);
    fs::write(&p, emit_graph6(g) + "\n").unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn spectrum_of_k4() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_graph(dir.path(), "k4.g6", &complete(4));
    let out = cycmod(&["spectrum", "--k", "3", &f]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "{\"residues\":[0,1]}\n"
    );
    let out = cycmod(&["spectrum", "--k", "5", "--m", "2", &f]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["status"], "not-found");
}

#[test]
fn several_files_in_parallel_match_sequential() {
    let dir = tempfile::tempdir().unwrap();
    let files: Vec<String> = [
        ("a.g6", petersen()),
        ("b.g6", cube()),
        ("c.g6", complete(4)),
    ]
    .iter()
    .map(|(n, g)| write_graph(dir.path(), n, g))
    .collect();
    let mut args = vec!["spectrum", "--k", "4", "--witnesses"];
    args.extend(files.iter().map(String::as_str));
    let one = cycmod(&args);
    args.extend(["--jobs", "3"]);
    let three = cycmod(&args);
    assert_eq!(one.stdout, three.stdout);
    assert_eq!(json(&one).as_array().unwrap().len(), 3);
}

#[test]
fn bounds_for_three() {
    let out = cycmod(&["bounds", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["18k2"], 162);
    assert_eq!(v["3k4"], 243);
    assert_eq!(v["2k"], 6);
    assert_eq!(v["chain_holds"], true);
    let out = cycmod(&["bounds", "--k", "9"]);
    assert!(json(&out)["2^(4k2)"].is_string());
}

#[test]
fn counterexample_files_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("ce.g6");
    let rep = dir.path().join("ce.json");
    let args = [
        "counterexample",
        "--m",
        "3",
        "--k",
        "12",
        "--min-n",
        "1",
        "--out",
        g6.to_str().unwrap(),
        "--report",
        rep.to_str().unwrap(),
    ];
    let a = cycmod(&args);
    let b = cycmod(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["verdict"], "certified");
    assert_eq!(v["vertices"], 88);
    let report: Value = serde_json::from_str(&fs::read_to_string(&rep).unwrap()).unwrap();
    assert_eq!(report, v);
    let g = parse_graph6(fs::read_to_string(&g6).unwrap().trim()).unwrap();
    assert!(g.is_cubic());
    assert!(has_cycle_mod(&g, 3, 12).is_none());
    let out = cycmod(&["counterexample", "--m", "3", "--k", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "precondition");
}

#[test]
fn usage_errors_exit_two() {
    let out = cycmod(&["spectrum", "--k"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "usage");
    assert_eq!(cycmod(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        cycmod(&["chords", "--k", "2", "--random", "9"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn missing_file_is_a_domain_error() {
    let out = cycmod(&["spectrum", "--k", "3", "/nonexistent/x.g6"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "io");
}

#[test]
fn necklace_validate_and_realize() {
    let dir = tempfile::tempdir().unwrap();
    let (graph, neck) = random_wiggly_necklace(6, 2, &mut ChaCha8Rng::seed_from_u64(3));
    let w = WitnessFile {
        graph,
        witness: KGoodWitness::Wiggly(neck),
    };
    let p = dir.path().join("w.json");
    fs::write(&p, serde_json::to_string(&w).unwrap()).unwrap();
    let f = p.to_str().unwrap();
    let out = cycmod(&["necklace", "validate", f]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["valid"], true);
    for m in 0..3 {
        let ms = m.to_string();
        let out = cycmod(&["necklace", "realize", "--m", &ms, "--k", "3", f]);
        assert_eq!(out.status.code(), Some(0));
        let v = json(&out);
        let cycle: Vec<usize> = serde_json::from_value(v["cycle"].clone()).unwrap();
        assert!(w.graph.check_cycle(&cycle).is_ok());
        assert_eq!(cycle.len() % 3, m);
    }
}

#[test]
fn chords_special_pathpair_theta_kgood() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_graph(dir.path(), "p.g6", &petersen());

    let out = cycmod(&["chords", "--k", "2", "--random", "12", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["chord_count"].as_u64().unwrap() >= 2);

    let cube_file = write_graph(dir.path(), "q.g6", &cube());
    let out = cycmod(&[
        "chords",
        "--k",
        "1",
        &cube_file,
        "--path",
        "0,1,3,2,6,7,5,4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["chords"], 5);
    assert!(v["chord_count"].as_u64().unwrap() >= 1);
    let out = cycmod(&["chords", "--k", "1", &cube_file, "--path", "0,1,2"]);
    assert_eq!(json(&out)["error"]["kind"], "invalid-input");

    let out = cycmod(&["special", "--k", "1", &f, "--special", "0-1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["special_count"].as_u64().unwrap() >= 1);

    let out = cycmod(&["pathpair", &f, "--x", "0", "--y", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let d = json(&out)["pair"]["difference"].as_u64().unwrap();
    assert!(d == 1 || d == 2);

    let out = cycmod(&["theta", &f, "--u", "0", "--v", "1", "--decompose"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["violations"], Value::Array(vec![]));
    assert_eq!(v["total_length"], 9);

    let out = cycmod(&["kgood", "--k", "1", &f]);
    let v = json(&out);
    assert!(v["census"].is_object());
    assert!(v["case_report"]["detectors"].is_object());
}
