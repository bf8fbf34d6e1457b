use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use bgg_core::io::{read_matrix, HomologyTable};

fn bgg(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bgg"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("BGG_OUT_DIR")
        .output()
        .expect("bgg runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn line_for<'a>(report: &'a str, anchor: &str) -> &'a str {
    let tag = format!("[{anchor}]");
    report.lines().find(|l| l.contains(&tag)).unwrap_or_else(|| panic!("no line for {anchor} in\n{report}"))
}

#[test]
fn projective_verify_all_pass() {
    let dir = tempfile::tempdir().unwrap();
    let o = bgg(&["verify", "--algebra", "projective:2", "--rep", "standard", "--degree", "3"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report = stdout(&o);
    assert!(report.contains("fail=0"), "{report}");
    assert!(!report.lines().any(|l| l.starts_with("FAIL")));
    for l in report.lines().filter(|l| l.starts_with("N/A")) {
        assert!(l.split('\t').nth(5).is_some_and(|r| r != "-"), "N/A without reason: {l}");
    }
    assert_eq!(fs::read_to_string(dir.path().join("report.txt")).unwrap(), report);
    for f in ["D0.txt", "D1.txt", "homology_table.txt", "kernel_D0.txt"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
}

#[test]
fn homology_table_conformal_standard() {
    let dir = tempfile::tempdir().unwrap();
    let o = bgg(&["homology", "--algebra", "conformal:3,0", "--rep", "standard"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let table = HomologyTable::read(&fs::read_to_string(dir.path().join("homology_table.txt")).unwrap()).unwrap();
    assert_eq!(table.dims(), vec![1, 5, 5, 1]);
}

#[test]
fn trivial_bgg_is_de_rham() {
    let dir = tempfile::tempdir().unwrap();
    let o = bgg(&["bgg", "--algebra", "conformal:3,0", "--rep", "trivial", "--degree", "3"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report = stdout(&o);
    assert!(line_for(&report, "bgg/de-rham").starts_with("PASS"));
    assert!(line_for(&report, "bgg/composition").starts_with("PASS"));
    let d0 = read_matrix(&fs::read_to_string(dir.path().join("D0.txt")).unwrap()).unwrap();
    assert!(d0.matrix.nnz() > 0);
}

#[test]
fn conformal_degree_four_pi_leibniz() {
    let dir = tempfile::tempdir().unwrap();
    let o = bgg(
        &["verify", "--algebra", "conformal:3,0", "--rep", "standard", "--degree", "4", "--scope", "bgg", "--max-fiber", "10"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report = stdout(&o);
    let pi: Vec<_> = report.lines().filter(|l| l.contains("[pi-calculus/")).collect();
    assert!(pi.len() >= 6 && pi.iter().all(|l| l.starts_with("PASS")), "{report}");
    assert!(line_for(&report, "bgg/composition").starts_with("PASS"));
    assert!(line_for(&report, "cup/leibniz").starts_with("N/A"), "max_fiber 10 rules out W⊗W");
}

#[test]
fn injected_fault_names_the_triple() {
    let dir = tempfile::tempdir().unwrap();
    let o = bgg(&["verify", "--algebra", "conformal:3,0", "--inject-fault"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let jacobi = line_for(&stdout(&o), "lie/jacobi").to_string();
    assert!(jacobi.starts_with("FAIL") && jacobi.contains("violated for ("), "{jacobi}");
    assert!(stderr(&o).contains("FAIL Jacobi identity"));
    assert!(stdout(&o).contains("fail=1"));
}

#[test]
fn configuration_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = bgg(&["homology", "--algebra", "conformal:3,0", "--rep", "ext(standard"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("parse error at"), "{}", stderr(&o));
    let o = bgg(&["homology", "--algebra", "orthogonal:3"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = bgg(&["deform", "--algebra", "conformal:3,0", "--rep", "standard"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("adjoint"));
    let o = bgg(&["homology"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("job.toml");
    fs::write(&cfg, "algebra = \"conformal:3,0\"\nrep = \"adjoint\"\ncommand = \"homology\"\nseed = 4\n").unwrap();
    let out = dir.path().join("out");
    let o = bgg(&["--config", cfg.to_str().unwrap(), "--rep", "trivial"], &out);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report = stdout(&o);
    assert!(report.contains("rep=trivial") && report.contains("seed=4"), "{report}");
    let table = HomologyTable::read(&fs::read_to_string(out.join("homology_table.txt")).unwrap()).unwrap();
    assert_eq!(table.dims(), vec![1, 3, 3, 1]);

    fs::write(&cfg, "algebra = \"g2\"\ncommand = \"homology\"\ncolour = \"blue\"\n").unwrap();
    let o = bgg(&["--config", cfg.to_str().unwrap()], &out);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = bgg(&["dual", "--algebra", "conformal:3,0", "--format", "json"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["status"] == "pass"), "{v}");
    assert_eq!(v["job"]["algebra"], "conformal:3,0");
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_bgg"))
        .args(["homology", "--algebra", "g2", "--rep", "trivial", "-q"])
        .env("BGG_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let table = HomologyTable::read(&fs::read_to_string(dir.path().join("homology_table.txt")).unwrap()).unwrap();
    assert_eq!(table.euler_characteristic(), 0);
}

#[test]
fn non_abelian_instances_list_skipped_checks() {
    let dir = tempfile::tempdir().unwrap();
    let o = bgg(&["verify", "--algebra", "g2", "--rep", "trivial"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report = stdout(&o);
    let na = line_for(&report, "bgg/composition");
    assert!(na.starts_with("N/A") && na.contains("abelian"), "{na}");
    assert!(line_for(&report, "homology/euler").starts_with("PASS"));
}

#[test]
fn timings_stay_out_of_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("times.tsv");
    let o = bgg(&["ainf", "--algebra", "projective:2", "--timings", t.to_str().unwrap()], &dir.path().join("out"));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let times = fs::read_to_string(&t).unwrap();
    assert!(times.lines().any(|l| l.ends_with("λ_m term counts")));
    assert!(!stdout(&o).contains(times.lines().next().unwrap().split('\t').next().unwrap()));
}
