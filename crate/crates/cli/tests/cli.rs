use std::path::PathBuf;
use std::process::{Command, Output};

use strongconn::pipeline::RunReport;

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../instances/{name}.json"))
}

fn strongconn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strongconn")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fail_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| l.contains("FAIL")).collect()
}

#[test]
fn passing_instance_exits_zero() {
    for name in ["group-z2", "graded-n2-t2", "graded-n3-t1-cyclotomic", "homogeneous-z4-z2"] {
        let o = strongconn(&["run", golden(name).to_str().unwrap()]);
        let text = stdout(&o);
        assert_eq!(o.status.code(), Some(0), "{name}\n{text}{}", stderr(&o));
        assert!(fail_lines(&text).is_empty(), "{text}");
        assert!(text.contains("verdict: PASS"), "{text}");
    }
}

#[test]
fn sweedler_exits_one_with_a_certificate() {
    let o = strongconn(&["run", golden("sweedler").to_str().unwrap()]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(1), "{text}");
    assert!(text.contains("FAIL cointegral.exists"), "{text}");
    assert!(text.contains("not coseparable over this field"), "{text}");
}

#[test]
fn corrupted_psi_reports_the_witness() {
    let o = strongconn(&["run", golden("corrupted-psi-z2").to_str().unwrap()]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(1), "{text}");
    let line = fail_lines(&text)
        .into_iter()
        .find(|l| l.contains("entwining.rr.multiplicativity"))
        .unwrap_or_else(|| panic!("{text}"));
    assert!(line.contains("at [0, 1, 1]"), "{line}");
}

#[test]
fn unsatisfied_dependency_exits_two() {
    let o = strongconn(&["run", golden("trivial").to_str().unwrap(), "--stages", "verify"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error:"), "{}", stderr(&o));
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let o = strongconn(&["run", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"), "{}", stderr(&o));

    let o = strongconn(&["run", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let o = strongconn(&["run", golden("group-z2").to_str().unwrap(), "--stages", "bogus"]);
    assert_eq!(o.status.code(), Some(2));

    let o = strongconn(&["instance", "no-such-instance"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_report_written_to_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = strongconn(&[
        "run",
        golden("graded-n2-t2").to_str().unwrap(),
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    let report = RunReport::from_json(&text).unwrap();
    assert!(report.passed());
    assert_eq!(report.to_json(), text);
    let ell = &report.derived["ell"];
    assert!(ell.entries.iter().any(|e| e.indices == [1, 1, 1] && e.value == "1/2"));
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    for name in ["group-z4-over-z2", "sweedler", "homogeneous-z4-z2-perturbed"] {
        let args = ["run", golden(name).to_str().unwrap(), "--format", "json"].map(String::from);
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = strongconn(&args);
        let b = strongconn(&args);
        assert_eq!(a.stdout, b.stdout, "{name}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn stage_selection_limits_the_report() {
    let o = strongconn(&["run", golden("group-z2").to_str().unwrap(), "--stages", "cointegral", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let report = RunReport::from_json(&stdout(&o)).unwrap();
    assert!(report.derived.contains_key("delta"));
    assert!(!report.derived.contains_key("ell"));
}

#[test]
fn instance_command_reproduces_golden_files() {
    let list = strongconn(&["list"]);
    assert_eq!(list.status.code(), Some(0));
    let names: Vec<String> = stdout(&list).lines().map(|l| l.split_whitespace().next().unwrap().to_string()).collect();
    assert!(names.len() >= 13, "{names:?}");
    for name in &names {
        let o = strongconn(&["instance", name]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), std::fs::read_to_string(golden(name)).unwrap(), "{name}");
    }
}
