use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const G: &str = "100101100110100\n111111110000000\n111100001111000\n110011001100110\n101010101010101\n";

fn tricss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tricss")).args(args).env_remove("TRICSS_THREADS").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

struct Files {
    _dir: TempDir,
    root: PathBuf,
}

impl Files {
    fn new() -> Self {
        let dir = TempDir::new().unwrap();
        let root = dir.path().to_path_buf();
        let f = Files { _dir: dir, root };
        f.write("g.txt", G);
        f.write("qt.bundle", &format!("[G]\n{G}"));
        f.write("bad.txt", "1021\n");
        f.write("weak.txt", "1110\n1111\n");
        f
    }

    fn write(&self, name: &str, text: &str) -> String {
        let p = self.root.join(name);
        std::fs::write(&p, text).unwrap();
        p.display().to_string()
    }

    fn path(&self, name: &str) -> String {
        self.root.join(name).display().to_string()
    }
}

#[test]
fn check_triorthogonal_exit_codes() {
    let f = Files::new();
    let out = tricss(&["check-triorthogonal", &f.path("g.txt")]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["subcommand"], "check-triorthogonal");
    assert_eq!(r["payload"]["triorthogonal"], true);
    assert_eq!(r["payload"]["k"], 1);
    assert_eq!(r["payload"]["m"], 4);

    let out = tricss(&["check-triorthogonal", &f.path("weak.txt")]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["payload"]["triorthogonal"], false);

    let out = tricss(&["check-triorthogonal", &f.path("bad.txt")]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["payload"]["error"]["kind"], "parse-error");

    let out = tricss(&["check-triorthogonal", &f.path("missing.txt")]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["payload"]["error"]["kind"], "io-error");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(code(&tricss(&["resources", "--protocol", "no-such-protocol"])), 2);
    assert_eq!(code(&tricss(&["enumerate-errors", "--protocol", "hadamard-cz"])), 2);
    assert_eq!(code(&tricss(&[])), 2);
    let out = tricss(&["simulate", "--protocol", "hadamard-cz", "--inject", "x:data:X"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["payload"]["error"]["kind"], "usage-error");
    let out = Command::new(env!("CARGO_BIN_EXE_tricss"))
        .args(["distance", "--qt", "nothing.bundle", "x"])
        .env("TRICSS_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn merged_protocol_coefficient() {
    let out = tricss(&["enumerate-errors", "--protocol", "hadamard-cz-merged", "--weight", "2"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["payload"]["coefficient"], 105);
    assert_eq!(r["payload"]["kind"], "hadamard-cz-merged");
    assert_eq!(r["provenance"]["coefficient"], "computed");
    let out = tricss(&["enumerate-errors", "--protocol", "transversal-h-baseline", "--weight", "2"]);
    assert_eq!(json(&out)["payload"]["coefficient"], 210);
}

#[test]
fn help_lists_every_subcommand_and_flag() {
    let top = String::from_utf8(tricss(&["--help"]).stdout).unwrap();
    let subcommands: [(&str, &[&str]); 11] = [
        ("check-triorthogonal", &["<MATRIX>"]),
        ("gen-symmetric", &["<BUNDLE>", "--limit", "--out"]),
        ("check-transversality", &["--a", "--b", "--exact-cz"]),
        ("simulate", &["--protocol", "--input", "--seed", "--inject", "--circuit"]),
        ("enumerate-errors", &["--protocol", "--weight", "--mode", "--model", "--keep-patterns"]),
        ("capability", &["--protocol", "--max-weight"]),
        ("monte-carlo", &["--protocol", "--p", "--samples", "--seed"]),
        ("prep-sweep", &["--max-weight"]),
        ("resources", &["--protocol", "--with-prep"]),
        ("distance", &["<BUNDLE>"]),
        ("show-circuit", &["--protocol", "--label"]),
    ];
    for flag in ["--pretty", "--qt", "--qsym", "--help", "--version"] {
        assert!(top.contains(flag), "top-level help lacks {flag}");
    }
    for (name, flags) in subcommands {
        assert!(top.contains(name), "top-level help lacks {name}");
        let out = tricss(&[name, "--help"]);
        assert_eq!(code(&out), 0);
        let text = String::from_utf8(out.stdout).unwrap();
        for flag in flags.iter().chain(&["--pretty", "--qt", "--qsym"]) {
            assert!(text.contains(flag), "{name} help lacks {flag}");
        }
    }
}

/// Every numeric leaf, with its path, in the same notation as the provenance keys.
fn numeric_paths(v: &Value, path: String, out: &mut Vec<String>) {
    match v {
        Value::Number(_) => out.push(path),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| numeric_paths(x, format!("{path}[{i}]"), out)),
        Value::Object(m) => m.iter().for_each(|(k, x)| {
            numeric_paths(x, if path.is_empty() { k.clone() } else { format!("{path}.{k}") }, out)
        }),
        _ => {}
    }
}

#[test]
fn reports_round_trip_and_label_every_number() {
    let f = Files::new();
    let runs: Vec<Vec<String>> = vec![
        vec!["distance".into(), f.path("qt.bundle")],
        vec!["resources".into(), "--protocol".into(), "teleport-t-to-sym-ec".into(), "--with-prep".into()],
        vec!["simulate".into(), "--protocol".into(), "teleport-t-to-sym".into(), "--input".into(), "+".into()],
        vec!["gen-symmetric".into(), f.path("qt.bundle"), "--limit".into(), "3".into()],
        vec!["prep-sweep".into(), "--max-weight".into(), "1".into()],
    ];
    for args in runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = tricss(&args);
        assert_eq!(code(&out), 0, "{args:?}");
        let first = json(&out);
        let again: Value = serde_json::from_str(&serde_json::to_string(&first).unwrap()).unwrap();
        assert_eq!(first, again);
        assert_eq!(first["schema_version"], 1);
        let mut paths = Vec::new();
        numeric_paths(&first["payload"], String::new(), &mut paths);
        let prov = first["provenance"].as_object().unwrap();
        assert_eq!(prov.len(), paths.len(), "{args:?}");
        for p in &paths {
            assert!(prov.contains_key(p), "{args:?}: {p} unlabelled");
        }
    }
}

#[test]
fn resources_report_published_rows_as_paper_constants() {
    let r = json(&tricss(&["resources", "--protocol", "teleport-sym-to-t-ec", "--with-prep"]));
    assert_eq!(r["payload"]["report"]["qubits"], 48);
    assert_eq!(r["payload"]["report"]["two_qubit_gates"], 96);
    assert_eq!(r["provenance"]["report.two_qubit_gates"], "computed");
    assert_eq!(r["provenance"]["published_comparison[0].qubits[0]"], "paper-constant");
    let bare = json(&tricss(&["resources", "--protocol", "teleport-sym-to-t-ec"]));
    assert_eq!(bare["payload"]["report"]["qubits"], 45);
    assert_eq!(bare["payload"]["report"]["two_qubit_gates"], 30);
}

#[test]
fn transversality_predicate_sets_exit_code() {
    let f = Files::new();
    let dir = f.path("sym");
    let out = tricss(&["gen-symmetric", &f.path("qt.bundle"), "--limit", "2", "--out", &dir]);
    assert_eq!(code(&out), 0);
    let sym = Path::new(&dir).join("symmetric_000.bundle").display().to_string();
    let fwd = tricss(&["check-transversality", "--a", &f.path("qt.bundle"), "--b", &sym, "--exact-cz"]);
    assert_eq!(code(&fwd), 0);
    let r = json(&fwd);
    assert_eq!((r["payload"]["cnot_forward"].clone(), r["payload"]["cz"].clone()), (Value::Bool(true), Value::Bool(true)));
    let bwd = tricss(&["check-transversality", "--a", &sym, "--b", &f.path("qt.bundle")]);
    assert_eq!(code(&bwd), 1);
    assert!(!json(&bwd)["payload"]["witnesses"].as_array().unwrap().is_empty());
    let d = json(&tricss(&["distance", &sym]));
    assert_eq!((d["payload"]["n"].clone(), d["payload"]["d"].clone()), (Value::from(15), Value::from(3)));
    assert_eq!(d["payload"]["symmetric"], true);
}

#[test]
fn simulation_is_deterministic_and_classifies_reference_runs() {
    let args = ["simulate", "--protocol", "teleport-t-to-sym-ec", "--input", "-", "--seed", "17", "--inject", "0:data:IIIZIIIIIIIIIII"];
    let a = tricss(&args);
    let b = tricss(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["payload"]["output"]["matches_expected"], true);

    let out = tricss(&["simulate", "--protocol", "hadamard-cz-merged", "--input", "ref", "--inject", "0:data:XIIIIIIIIIIIIIX,0:data:IIIIIIIXIIIIIII"]);
    let r = json(&out);
    assert_eq!(r["payload"]["classification"]["verdict"], "corrected");
    assert_eq!(r["payload"]["injections"].as_array().unwrap().len(), 2);
}

#[test]
fn shown_circuits_run_through_simulate() {
    let f = Files::new();
    let shown = json(&tricss(&["show-circuit", "--protocol", "prep-plus-qt-verified"]));
    let path = f.write("prep.txt", shown["payload"]["text"].as_str().unwrap());
    let out = tricss(&["simulate", "--circuit", &path, "--seed", "4"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["payload"]["accepted"], true);
    assert_eq!(r["payload"]["output"]["matches_expected"], true);
    let broken = f.write("broken.txt", "BLOCK data code=qt\nTWIDDLE data\n");
    let out = tricss(&["simulate", "--circuit", &broken]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["payload"]["error"]["kind"], "parse-error");
}

#[test]
fn thread_count_does_not_change_results() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_tricss"))
            .args(["monte-carlo", "--protocol", "hadamard-cz", "--p", "0.05", "--samples", "20000", "--seed", "3"])
            .env("TRICSS_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, run("4").stdout);
    assert_eq!(code(&run("0")), 2);
}

#[test]
fn pretty_output_is_readable() {
    let out = tricss(&["--pretty", "distance", &Files::new().path("qt.bundle")]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("distance (schema 1)"));
    assert!(text.contains("dx: 7"));
    assert!(text.contains("dz: 3"));
}
