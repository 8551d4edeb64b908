use std::path::{Path, PathBuf};
use std::process::Command;

use hopfstar::corpus::{build_fixture, sweedler};
use hopfstar::hopfcore::io;
use hopfstar::report::{Outcome, Report};
use hopfstar_cli::main_with;
use tempfile::TempDir;

fn corpus(names: &[&str]) -> TempDir {
    let tmp = tempfile::tempdir().unwrap();
    for name in names {
        build_fixture(name, &tmp.path().join(name)).unwrap();
    }
    tmp
}

/// Run with `--out` and return the exit code and the report, if any.
fn run(args: &[&str], out: &Path) -> (i32, Option<Report>) {
    let _ = std::fs::remove_file(out);
    let mut full: Vec<String> = vec!["hopfstar".into()];
    full.extend(args.iter().map(|s| s.to_string()));
    full.push("--out".into());
    full.push(out.display().to_string());
    let code = main_with(full);
    let report = std::fs::read_to_string(out)
        .ok()
        .map(|t| serde_json::from_str(&t).unwrap());
    (code, report)
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

#[test]
fn passing_run_exits_zero_with_a_versioned_report() {
    let tmp = corpus(&["s3"]);
    let fixture = path(&tmp, "s3");
    let (code, report) = run(&["haar", fixture.to_str().unwrap()], &path(&tmp, "r.json"));
    let report = report.unwrap();
    assert_eq!(code, 0);
    assert_eq!(report.schema, "report.v1");
    assert_eq!(report.command, "haar");
    assert!(report.pass && report.status == Outcome::Pass);
    assert!(report.timestamp.starts_with("unix:"));
}

#[test]
fn failed_check_exits_two() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = path(&tmp, "sweedler");
    std::fs::create_dir_all(&dir).unwrap();
    io::save(&sweedler().unwrap(), &dir.join("hopf.json")).unwrap();
    let (code, report) = run(&["haar", dir.to_str().unwrap()], &path(&tmp, "r.json"));
    assert_eq!(code, 2);
    let report = report.unwrap();
    assert_eq!(report.status, Outcome::Fail);
    assert!(report.entries[0].details.contains_key("error"));
}

#[test]
fn truncation_too_small_exits_three_until_escalated() {
    let tmp = corpus(&["suq2-q0.5"]);
    let fixture = path(&tmp, "suq2-q0.5");
    let f = fixture.to_str().unwrap();
    let out = path(&tmp, "r.json");
    let base = ["decide-expected", f, "--cutoff", "2", "--coideal", "podles-nonstandard"];
    let (code, report) = run(&base, &out);
    assert_eq!(code, 3);
    assert_eq!(report.unwrap().status, Outcome::Inconclusive);

    let mut escalated = base.to_vec();
    escalated.push("--escalate");
    let (code, report) = run(&escalated, &out);
    assert_eq!(code, 0);
    let entry = &report.unwrap().entries[0];
    assert_eq!(entry.details["verdict"], "non-invariant, non-positive");
    assert_eq!(entry.details["escalated_from"], 2);
}

#[test]
fn input_errors_exit_one_and_name_the_file() {
    let tmp = corpus(&["s3", "suq2-q1"]);
    let out = path(&tmp, "r.json");
    let s3 = path(&tmp, "s3");
    let s3s = s3.to_str().unwrap();

    let (code, report) = run(&["verify", path(&tmp, "missing").to_str().unwrap()], &out);
    assert_eq!((code, report.is_none()), (1, true));

    let (code, _) = run(&["haar", s3s, "--tol", "-1"], &out);
    assert_eq!(code, 1);

    let (code, _) = run(&["expectation", s3s, "--coideal", "no-such-coideal"], &out);
    assert_eq!(code, 1);

    let presented = path(&tmp, "suq2-q1");
    let (code, _) = run(&["galois", presented.to_str().unwrap()], &out);
    assert_eq!(code, 1);

    // a tampered coideal file is caught by the checksum, naming the file
    let target = s3.join("coideals").join("trivial-subgroup.json");
    let text = std::fs::read_to_string(&target).unwrap();
    std::fs::write(&target, text.replace("1.0", "1.5")).unwrap();
    let err = hopfstar::corpus::load_fixture(&s3, None).unwrap_err();
    assert!(err.to_string().contains("trivial-subgroup.json"), "{err}");
    let (code, _) = run(&["verify", s3s], &out);
    assert_eq!(code, 1);

    // malformed JSON without a manifest names the file
    std::fs::remove_file(s3.join("manifest.json")).unwrap();
    std::fs::write(s3.join("hopf.json"), "{ \"dim\": ").unwrap();
    let err = hopfstar::corpus::load_fixture(&s3, None).unwrap_err();
    assert!(err.to_string().contains("hopf.json"), "{err}");
}

#[test]
fn coideal_close_saves_a_loadable_coideal() {
    let tmp = corpus(&["s3"]);
    let fixture = path(&tmp, "s3");
    let f = fixture.to_str().unwrap();
    let out = path(&tmp, "r.json");
    let hopf = io::load(&fixture.join("hopf.json")).unwrap();
    let labels = hopf.labels().to_vec();
    let gen = format!("{}+{}", labels[1], labels[2]);
    let (code, report) = run(&["coideal-close", f, "--gen", &gen, "--save", "closure"], &out);
    assert_eq!(code, 0);
    let entry = &report.unwrap().entries[0];
    assert!(entry.details.contains_key("saved"));

    let (code, report) = run(&["invariants", f, "--coideal", "closure"], &out);
    assert_eq!(code, 0);
    assert_eq!(report.unwrap().entries.len(), 1);

    let (code, _) = run(&["coideal-close", f, "--gen", "nonsense"], &out);
    assert_eq!(code, 1);
}

#[test]
fn corpus_build_writes_a_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = path(&tmp, "z3");
    let (code, report) = run(
        &["corpus", "build", "z3", "--dir", dir.to_str().unwrap()],
        &path(&tmp, "r.json"),
    );
    assert_eq!(code, 0);
    assert_eq!(report.unwrap().entries[0].details["kind"], "finite");
    assert!(dir.join("manifest.json").is_file());

    let (code, _) = run(&["corpus", "build", "not-a-fixture"], &path(&tmp, "r.json"));
    assert_eq!(code, 1);
}

#[test]
fn binary_prints_the_report_on_stdout() {
    let tmp = corpus(&["z2"]);
    let output = Command::new(env!("CARGO_BIN_EXE_hopfstar"))
        .args(["verify", path(&tmp, "z2").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let report: Report = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report.command, "verify");
    let summary = String::from_utf8_lossy(&output.stderr);
    assert!(summary.contains("status Pass"), "{summary}");
}
