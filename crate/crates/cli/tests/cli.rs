use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn mx() -> String {
    fixtures().join("mx.mq").display().to_string()
}

fn mq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mq")).args(args).output().unwrap()
}

fn mq_with_workers(workers: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mq")).env("MQ_WORKERS", workers).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn validate_and_invert() {
    let o = mq(&["validate", &mx()]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "valid 3-quandle, order 5\n"));

    let o = mq(&["invert", &mx()]);
    assert_eq!(code(&o), 0);
    let printed = fs::read_to_string(fixtures().join("mx.mq")).unwrap();
    let inv_blocks: Vec<&str> = printed.split("\ninv ").skip(1).collect();
    let out = stdout(&o);
    let op_blocks: Vec<&str> = out.split("\nop ").skip(1).collect();
    assert_eq!(op_blocks.len(), 3);
    for (a, b) in op_blocks.iter().zip(&inv_blocks) {
        assert_eq!(a.trim(), b.trim());
    }
}

#[test]
fn invalid_quandle_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(fixtures().join("mx.mq")).unwrap();
    let bad: String = text.split("\ninv 1\n").next().unwrap().replacen("op 1\n1 4 5 5 4", "op 1\n2 4 5 5 4", 1);
    let path = dir.path().join("bad.mq");
    fs::write(&path, bad).unwrap();
    let o = mq(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.starts_with("invalid: "), "{out}");
    assert!(out.lines().nth(1).unwrap().contains("idempotency"), "{out}");
}

#[test]
fn counts_by_every_source() {
    let o = mq(&["count", "--quandle", &mx(), "--braid", "strands=3 word=-1,-1,2,2 colors=1,2,3"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "count 23\n"));
    let diag = fixtures().join("borromean.diag");
    let o = mq(&["count", "--quandle", &mx(), "--diagram", diag.to_str().unwrap()]);
    assert_eq!(stdout(&o), "count 71\n");
    let pd = "X[6,1,7,2] X[12,8,9,7] X[4,12,1,11] X[10,5,11,6] X[8,4,5,3] X[2,9,3,10]";
    for colors in ["1,2,3", "2,3,1", "3,2,1"] {
        let o = mq(&["count", "--quandle", &mx(), "--pd", pd, "--colors", colors]);
        assert_eq!(stdout(&o), "count 71\n");
    }
}

#[test]
fn listed_solutions_are_one_based_and_sorted() {
    let o = mq(&["count", "--quandle", &mx(), "--braid", "strands=1 word= colors=2", "--list-solutions"]);
    assert_eq!(
        stdout(&o),
        "count 5\nsolution 1\nsolution 2\nsolution 3\nsolution 4\nsolution 5\n"
    );
}

#[test]
fn action_output() {
    let o = mq(&["action", "--quandle", &mx(), "--braid", "strands=2 word=1 colors=2,3", "--input", "1,2"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "2,4\n"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&mq(&[])), 2);
    assert_eq!(code(&mq(&["count", "--quandle", &mx()])), 2);
    assert_eq!(code(&mq(&["count", "--quandle", &mx(), "--pd", "X[1,1,2,2]"])), 2);
    assert_eq!(code(&mq(&["count", "--quandle", &mx(), "--braid", "strands=2 word=3 colors=1,2"])), 2);
    assert_eq!(code(&mq(&["validate", "/nonexistent/file.mq"])), 2);
    assert_eq!(code(&mq(&["search", "--order", "9", "--k", "1", "--out", "/tmp/never"])), 2);
    assert_eq!(code(&mq_with_workers("zero", &["validate", &mx()])), 2);
}

#[test]
fn non_closable_braid_exits_one() {
    let o = mq(&["count", "--quandle", &mx(), "--braid", "strands=2 word=1 colors=1,2"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn worker_count_does_not_change_output() {
    let mx = mx();
    let runs = [
        vec!["markov-fuzz", "--quandle", &mx, "--iters", "60", "--seed", "4"],
        vec!["reid-fuzz", "--quandle", &mx, "--iters", "60", "--seed", "4"],
        vec!["count", "--quandle", &mx, "--braid", "strands=4 word=1,-2,3,3,-2,1 colors=1,1,1,1", "--list-solutions"],
    ];
    for args in &runs {
        let one = mq_with_workers("1", args);
        let four = mq_with_workers("4", args);
        assert_eq!(code(&one), 0);
        assert_eq!(stdout(&one), stdout(&four), "{args:?}");
    }
}

#[test]
fn fuzz_reports_every_kind() {
    let o = mq(&["reid-fuzz", "--quandle", &mx(), "--iters", "200", "--seed", "1"]);
    let out = stdout(&o);
    assert_eq!(code(&o), 0);
    for kind in ["R1+", "R1-", "R2", "R3", "R1 undo", "R2 undo"] {
        assert!(out.lines().any(|l| l.starts_with(&format!("{kind} "))), "{kind} missing from\n{out}");
    }
    assert!(out.ends_with("reid-fuzz: 200 checks, 0 failures\n"));
}

#[test]
fn search_writes_results() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("found");
    let o = mq(&["search", "--order", "3", "--k", "2", "--iso", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let manifest = fs::read_to_string(out.join("manifest.txt")).unwrap();
    let files: Vec<&str> = manifest.lines().filter_map(|l| l.strip_prefix("file ")).collect();
    let count: usize = manifest.lines().find_map(|l| l.strip_prefix("count ")).unwrap().parse().unwrap();
    assert_eq!(files.len(), count);
    for f in files {
        let v = mq(&["validate", out.join(f).to_str().unwrap()]);
        assert_eq!(stdout(&v), "valid 2-quandle, order 3\n");
    }
}

#[test]
fn toric_reports() {
    let o = mq(&["toric", fixtures().join("l1.toric").to_str().unwrap()]);
    assert_eq!(stdout(&o), "nonempty dim=2 components=2\n");
    let o = mq(&["toric", fixtures().join("l2.toric").to_str().unwrap()]);
    assert_eq!(stdout(&o), "nonempty dim=1 components=4\n");
}

fn copy_fixtures(to: &Path) {
    for e in fs::read_dir(fixtures()).unwrap() {
        let e = e.unwrap();
        fs::copy(e.path(), to.join(e.file_name())).unwrap();
    }
}

#[test]
fn regress_passes_on_shipped_fixtures() {
    let o = mq(&["regress", fixtures().to_str().unwrap()]);
    let out = stdout(&o);
    assert_eq!(code(&o), 0, "{out}");
    assert!(out.ends_with("8 of 8 fixtures pass\n"), "{out}");
    assert!(out.lines().filter(|l| l.starts_with("pass ")).count() == 8);
}

#[test]
fn regress_names_the_divergent_count() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixtures(dir.path());
    let manifest = fs::read_to_string(dir.path().join("regress.txt")).unwrap();
    fs::write(dir.path().join("regress.txt"), manifest.replace("77,77,95,95,125,125", "77,76,95,95,125,125")).unwrap();
    let o = mq(&["regress", dir.path().to_str().unwrap()]);
    let out = stdout(&o);
    assert_eq!(code(&o), 1);
    let fail = out.lines().find(|l| l.starts_with("FAIL pd l9n27.pd")).unwrap();
    assert!(fail.ends_with("first divergent count: expected 76, computed 77"), "{fail}");
    assert!(out.ends_with("7 of 8 fixtures pass\n"));
}

#[test]
fn regress_without_manifest_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&mq(&["regress", dir.path().to_str().unwrap()])), 2);
    fs::write(dir.path().join("regress.txt"), "# nothing\n").unwrap();
    assert_eq!(code(&mq(&["regress", dir.path().to_str().unwrap()])), 2);
}
