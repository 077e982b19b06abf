use serde_json::Value;
use sha2::{Digest, Sha256};
use std::path::PathBuf;
use std::process::{Command, Output};

fn example(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> (i32, Output) {
    let out = Command::new(env!("CARGO_BIN_EXE_hstarcat")).args(args).output().expect("spawn hstarcat");
    (out.status.code().expect("exit code"), out)
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn validates_fibonacci() {
    let (code, out) = run(&["fusion", "validate", &example("fibonacci.json")]);
    assert_eq!(code, 0);
    let r = report(&out);
    assert_eq!(r["verdict"], "ACCEPT");
    assert_eq!(r["tolerance"], 1e-9);
    assert_eq!(r["seed"], 0);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn verifies_ising_qsystem_against_explicit_category() {
    let (code, out) = run(&["alg", "verify", &example("ising.json"), &example("ising_qsystem.json")]);
    assert_eq!(code, 0, "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(report(&out)["result"]["multiplicities"], serde_json::json!({"1": 1, "p": 1}));
}

#[test]
fn missing_input_is_an_input_error() {
    let (code, out) = run(&["fusion", "validate", "/nonexistent"]);
    assert_eq!(code, 2);
    let r = report(&out);
    assert_eq!(r["verdict"], "ERROR");
    assert!(r.get("axiom").is_none());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["fusion", "frobnicate"]).0, 2);
    assert_eq!(run(&["alg", "verify"]).0, 2);
    assert_eq!(run(&["--tol", "-1", "fusion", "validate", &example("hilb.json")]).0, 2);
}

#[test]
fn malformed_json_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("broken.json");
    std::fs::write(&p, "{\"simples\": [").unwrap();
    assert_eq!(run(&["fusion", "validate", p.to_str().unwrap()]).0, 2);
    std::fs::write(&p, "{\"blocks\": [2]}").unwrap();
    assert_eq!(run(&["hstar", "verify", p.to_str().unwrap()]).0, 2);
}

#[test]
fn negative_controls_name_the_axiom() {
    for (args, axiom) in [
        (vec!["alg", "verify", &*example("z3_truncated.json")], "H*1 Frobenius"),
        (vec!["fusion", "validate", &*example("fibonacci_corrupt.json")], "pentagon"),
        (vec!["hstar", "verify", &*example("nontracial.json")], "traciality"),
    ] {
        let (code, out) = run(&args);
        assert_eq!(code, 1, "{args:?}");
        let r = report(&out);
        assert_eq!(r["verdict"], "REJECT");
        assert_eq!(r["axiom"], axiom, "{args:?}");
    }
}

#[test]
fn every_subcommand_accepts_its_sample() {
    let cases: Vec<Vec<String>> = vec![
        vec!["fusion".into(), "udf".into(), example("matrix2_hilb.json"), "--psi".into(), "1,3".into()],
        vec!["alg".into(), "standardize".into(), example("z2_group_unnormalized.json")],
        vec!["alg".into(), "modcat".into(), example("fibonacci_pair.json")],
        vec!["alg".into(), "intend".into(), example("matrix2_pair.json")],
        vec!["deligne".into(), "check".into(), example("ising_qsystem.json"), example("ising.json")],
        vec![
            "deligne".into(),
            "check".into(),
            example("z2_group.json"),
            example("z2.json"),
            example("z2_group.json"),
        ],
        vec!["h3".into(), "complete".into(), example("matrix2_presentation.json")],
        vec!["h3".into(), "complete".into(), example("fibonacci_monads.json")],
        vec!["h3".into(), "split-monad".into(), example("z2_split.json")],
        vec!["h3".into(), "split-monad".into(), example("ising_induced.json")],
        vec!["h3".into(), "theorem-b".into(), example("fibonacci.json"), "--psi".into(), "2.5".into()],
        vec!["hstar".into(), "gns".into(), example("multimatrix.json")],
    ];
    for args in cases {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, out) = run(&a);
        assert_eq!(code, 0, "{a:?}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn standardized_algebra_is_a_qsystem() {
    let (code, out) = run(&["alg", "standardize", &example("z2_group_unnormalized.json")]);
    assert_eq!(code, 0);
    let r = report(&out);
    assert!(r["result"]["hstar"]["bubble_defect"].as_f64().unwrap() < 1e-9);
    assert_eq!(r["result"]["algebra"]["category"], "z2.json");
}

#[test]
fn gns_dimensions_match_weights() {
    let (_, out) = run(&["hstar", "gns", &example("multimatrix.json")]);
    let r = report(&out);
    // Blocks [2, 1, 3] with weights [1, 2.5, 0.5]: Tr(1) = 2 + 2.5 + 1.5.
    assert!((r["result"]["gns_quantum_dim"].as_f64().unwrap() - 6.0).abs() < 1e-9);
    assert_eq!(r["result"]["gns_dim"], 4 + 1 + 9);
    let dims: Vec<f64> = r["result"]["simples"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["dim"].as_f64().unwrap())
        .collect();
    for (d, w) in dims.iter().zip([1.0, 2.5, 0.5]) {
        assert!((d - w).abs() < 1e-9);
    }
}

#[test]
fn reports_are_byte_identical_and_hash_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let file = example("fibonacci_monads.json");
    let args = ["h3", "complete", &file, "--seed", "7", "--out", out.to_str().unwrap()];
    let (code, o) = run(&args);
    assert_eq!(code, 0);
    assert!(o.stdout.is_empty());
    let first = std::fs::read(&out).unwrap();
    assert_eq!(run(&args).0, 0);
    assert_eq!(first, std::fs::read(&out).unwrap());

    let r: Value = serde_json::from_slice(&first).unwrap();
    let want = hex::encode(Sha256::digest(std::fs::read(&file).unwrap()));
    assert_eq!(r["inputs"][&file], want);
    assert_eq!(r["inputs"].as_object().unwrap().len(), 3);
    assert_eq!(r["seed"], 7);
}

#[test]
fn bundled_names_resolve() {
    let (code, out) = run(&["h3", "theorem-b", "ising"]);
    assert_eq!(code, 0);
    let r = report(&out);
    assert!(r["inputs"]["bundled:ising"].is_string());
}

#[test]
fn split_monad_needs_a_map_between_distinct_algebras() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("split.json");
    let trivial = serde_json::json!({"category": "z2", "mult": {"1": 1}, "mu": {"1": [[1.0]]}, "iota": {"1": [[1.0]]}});
    std::fs::write(&p, serde_json::json!({"a": trivial, "b": example("z2_group.json")}).to_string()).unwrap();
    assert_eq!(run(&["h3", "split-monad", p.to_str().unwrap()]).0, 2);
}
