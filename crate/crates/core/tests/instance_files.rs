use std::path::PathBuf;

use strongconn::instance_file::{decode_tensor, InstanceFile};
use strongconn::library::{builtin, BUILTINS};
use strongconn::pipeline::{run_file, Options, Stage, StageStatus};
use strongconn::{Error, Rationals, ScalarField, Status};

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances")
}

fn golden(name: &str) -> InstanceFile {
    InstanceFile::read(&golden_dir().join(format!("{name}.json"))).unwrap()
}

fn parse_err(text: &str) -> String {
    match InstanceFile::from_json(text).and_then(|f| f.load(&Rationals, 32).map(|_| ())) {
        Err(Error::Parse(msg)) => msg,
        other => panic!("expected a parse error, got {other:?}"),
    }
}

const Z2: &str = r#"{
  "name": "tiny",
  "field": {"kind": "rationals"},
  "spaces": {"A": 1, "C": 1},
  "tensors": {
    "m": {"domain": ["A", "A"], "codomain": ["A"], "entries": [[0, 0, 0, "1"]]},
    "u": {"domain": [], "codomain": ["A"], "entries": [[0, "1"]]},
    "d": {"domain": ["C"], "codomain": ["C", "C"], "entries": [[0, 0, 0, "1"]]},
    "e": {"domain": ["C"], "codomain": [], "entries": [[0, "1"]]},
    "psi": {"domain": ["C", "A"], "codomain": ["A", "C"], "entries": [[0, 0, 0, 0, "1"]]},
    "rho": {"domain": ["A"], "codomain": ["A", "C"], "entries": [[0, 0, 0, "1"]]}
  },
  "designations": {"A.mul": "m", "A.unit": "u", "C.comul": "d", "C.counit": "e", "psi": "psi", "rho": "rho"}
}"#;

#[test]
fn golden_files_match_the_builders() {
    for (name, _) in BUILTINS {
        let path = golden_dir().join(format!("{name}.json"));
        let on_disk = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(on_disk, builtin(name).unwrap().to_json(), "{name}");
    }
}

#[test]
fn golden_kz2_parses_with_expected_dimensions() {
    let file = golden("group-z2");
    assert_eq!(file.spaces.get("A"), Some(&2));
    assert_eq!(file.spaces.get("C"), Some(&2));
    let inst = file.load(&Rationals, 32).unwrap();
    let ext = inst.extension.unwrap();
    assert_eq!(ext.algebra.dim(), 2);
    assert_eq!(ext.coalgebra.dim(), 2);
    assert!(inst.homogeneous.is_none());
}

#[test]
fn minimal_hand_written_file_runs() {
    let file = InstanceFile::from_json(Z2).unwrap();
    let rep = run_file(&file, &Options::default()).unwrap();
    assert!(rep.passed(), "{}", rep.to_text());
}

#[test]
fn out_of_range_index_names_the_entry() {
    let text = Z2.replace(r#""rho": {"domain": ["A"], "codomain": ["A", "C"], "entries": [[0, 0, 0, "1"]]}"#,
        r#""rho": {"domain": ["A"], "codomain": ["A", "C"], "entries": [[0, 1, 0, "1"]]}"#);
    let msg = parse_err(&text);
    assert!(msg.contains("tensor \"rho\" entry 0"), "{msg}");
    assert!(msg.contains("index 1 out of range"), "{msg}");
}

#[test]
fn zero_denominator_is_a_parse_error() {
    let msg = parse_err(&Z2.replace(r#"[[0, "1"]]}"#, r#"[[0, "1/0"]]}"#));
    assert!(msg.contains("zero denominator"), "{msg}");
}

#[test]
fn duplicate_entries_are_rejected() {
    let msg = parse_err(&Z2.replace(r#"[[0, 0, 0, "1"]]}"#, r#"[[0, 0, 0, "1"], [0, 0, 0, "2"]]}"#));
    assert!(msg.contains("duplicate"), "{msg}");
}

#[test]
fn unknown_designation_is_rejected() {
    let msg = parse_err(&Z2.replace(r#""rho": "rho"}"#, r#""rho": "rho", "B.mul": "m"}"#));
    assert!(msg.contains("unknown designation"), "{msg}");
}

#[test]
fn shape_mismatch_is_rejected() {
    let msg = parse_err(&Z2.replace(r#""psi": "psi""#, r#""psi": "rho""#));
    assert!(msg.contains("psi"), "{msg}");
}

#[test]
fn wrong_index_count_is_rejected() {
    let msg = parse_err(&Z2.replace(r#"[[0, 0, 0, 0, "1"]]"#, r#"[[0, 0, 0, "1"]]"#));
    assert!(msg.contains("expected 4 indices"), "{msg}");
}

#[test]
fn syntax_errors_carry_a_line() {
    let msg = parse_err("{\n  \"name\": \"x\",\n  oops\n}");
    assert!(msg.contains("line 3"), "{msg}");
}

#[test]
fn dimension_cap_is_enforced() {
    let file = golden("group-z4");
    assert!(matches!(file.load(&Rationals, 3), Err(Error::TooLarge { size: 4, cap: 3 })));
}

#[test]
fn graded_all_stages_pass_with_half_x_x() {
    let rep = run_file(&golden("graded-n2-t2"), &Options::default()).unwrap();
    assert!(rep.passed(), "{}", rep.to_text());
    let ell = &rep.derived["ell"];
    let value = ell.entries.iter().find(|e| e.indices == [1, 1, 1]).unwrap();
    assert_eq!(value.value, "1/2");
    assert_eq!(ell.entries.len(), 2);
}

#[test]
fn sweedler_cointegral_fails_and_connection_is_skipped() {
    let file = golden("sweedler");
    let opts = Options {
        stages: Some(vec![Stage::Cointegral, Stage::Section, Stage::Connection]),
        ..Options::default()
    };
    let rep = run_file(&file, &opts).unwrap();
    let c = rep.check("cointegral.exists").unwrap();
    assert_eq!(c.status, Status::Fail);
    assert_eq!(c.detail.as_deref(), Some("not coseparable over this field"));
    assert_eq!(rep.stage(Stage::Connection).unwrap().status, StageStatus::Skipped);
    assert!(rep.certificates.contains_key("cointegral"));
    assert!(!rep.passed());
}

#[test]
fn verify_without_connection_is_a_dependency_error() {
    let opts = Options {
        stages: Some(vec![Stage::Verify]),
        ..Options::default()
    };
    assert!(matches!(run_file(&golden("trivial"), &opts), Err(Error::Dependency(_))));
    let opts = Options {
        stages: Some(vec![Stage::Homogeneous]),
        ..Options::default()
    };
    assert!(matches!(run_file(&golden("trivial"), &opts), Err(Error::Dependency(_))));
}

#[test]
fn json_report_round_trips_to_derived_maps() {
    let k = Rationals;
    let file = golden("graded-n2-t2");
    let rep = run_file(&file, &Options::default()).unwrap();
    let back = strongconn::pipeline::RunReport::from_json(&rep.to_json()).unwrap();
    assert_eq!(back, rep);
    let ell = decode_tensor(&k, &back.derived["ell"], &file.spaces).unwrap();
    let ext = strongconn::instances::build_graded_extension(&k, 2, k.int(2));
    let delta = strongconn::connection::solve_cointegral(ext.coalgebra()).unwrap().found().unwrap().delta;
    let (s, _) = strongconn::connection::solve_section(&ext).unwrap();
    let s = strongconn::connection::normalize_section(&ext, &s).unwrap();
    let expect = strongconn::connection::build_connection(&ext, &s, &delta).unwrap().ell;
    assert_eq!(ell, expect);
}

#[test]
fn graded_t0_fails_galois_in_the_pipeline() {
    let rep = run_file(&golden("graded-n2-t0"), &Options::default()).unwrap();
    assert_eq!(rep.check("galois").unwrap().status, Status::Fail);
    assert_eq!(rep.stage(Stage::Connection).unwrap().status, StageStatus::Skipped);
}

#[test]
fn corrupted_psi_fails_validation_and_skips_the_rest() {
    let rep = run_file(&golden("corrupted-psi-z2"), &Options::default()).unwrap();
    let c = rep.check("entwining.rr.multiplicativity").unwrap();
    assert_eq!(c.status, Status::Fail);
    assert_eq!(c.witness, Some(vec![0, 1, 1]));
    for s in [Stage::Cointegral, Stage::Section, Stage::Connection, Stage::Oracle] {
        assert_eq!(rep.stage(s).unwrap().status, StageStatus::Skipped);
    }
}
