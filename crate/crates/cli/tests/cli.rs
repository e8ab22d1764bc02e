use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn chooselab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chooselab")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn solve_and_verify_every_generated_family() {
    let dir = tempfile::tempdir().unwrap();
    let families: [&[&str]; 6] = [
        &["gen", "k33", "--variant", "disjoint"],
        &["gen", "k33", "--variant", "overlap1"],
        &["gen", "unique3", "--k", "4"],
        &["gen", "unique4", "--k", "4", "--a1", "0", "--a3", "2"],
        &["gen", "gstar", "--k", "4"],
        &["gen", "unique4", "--k", "2"],
    ];
    for (i, args) in families.iter().enumerate() {
        let g = chooselab(args);
        assert_eq!(g.status.code(), Some(0), "{args:?}");
        let inst = write(dir.path(), &format!("i{i}.txt"), &stdout(&g));
        let cert = dir.path().join(format!("c{i}.txt"));
        let s = chooselab(&["solve", "-i", &inst, "-c", cert.to_str().unwrap()]);
        assert_eq!(s.status.code(), Some(0));
        assert!(stdout(&s).starts_with("not colourable"), "{args:?}: {}", stdout(&s));
        let v = chooselab(&["verify-cert", "-i", &inst, "-c", cert.to_str().unwrap()]);
        assert_eq!(v.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn unique3_certificate_has_125_records() {
    let g = chooselab(&["gen", "unique3", "--k", "4"]);
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "u3.txt", &stdout(&g));
    let s = chooselab(&["--format", "structured", "solve", "-i", &inst, "--method", "partitions"]);
    let text = stdout(&s);
    assert!(text.starts_with("version: 1\n"));
    assert!(text.contains("violators: 125\n"));
    assert_eq!(text.matches("\nviolator:\n").count(), 125);
}

#[test]
fn coloring_certificate_checks_by_hand() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "c4.txt", "parts 2 2\nL 0: 1 2\nL 1: 1 3\nL 2: 2 3\nL 3: 1 2\n");
    let s = chooselab(&["--format", "structured", "solve", "-i", &inst]);
    let lists = [[1, 2], [1, 3], [2, 3], [1, 2]];
    let mut colour = [0usize; 4];
    for line in stdout(&s).lines().filter(|l| l.starts_with("color ")) {
        let (v, c) = line["color ".len()..].split_once(" = ").unwrap();
        colour[v.parse::<usize>().unwrap()] = c.parse().unwrap();
    }
    for v in 0..4 {
        assert!(lists[v].contains(&colour[v]));
    }
    for u in 0..2 {
        for v in 2..4 {
            assert_ne!(colour[u], colour[v]);
        }
    }
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "k.txt", &stdout(&chooselab(&["gen", "k33"])));
    let cert = dir.path().join("c.txt");
    chooselab(&["solve", "-i", &inst, "-c", cert.to_str().unwrap()]);
    let text = fs::read_to_string(&cert).unwrap();
    assert!(text.contains("Y: -"));
    let bad = text.replacen("Y: -", "Y: 9", 1);
    let bad_path = write(dir.path(), "bad.txt", &bad);
    let v = chooselab(&["verify-cert", "-i", &inst, "-c", &bad_path]);
    assert_eq!(v.status.code(), Some(2));
    assert!(stdout(&v).contains("rejected"));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "x.txt", "parts 3 3\ndel 0 1\n");
    let o = chooselab(&["solve", "-i", &inst]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(chooselab(&["sample", "unique3-converse", "--trials", "5"]).status.code(), Some(2));
    assert_eq!(chooselab(&["gen", "unique4", "--k", "3"]).status.code(), Some(2));
}

#[test]
fn resource_guard_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let lists: String = (0..17).map(|v| format!("L {v}: 1 2\n")).collect();
    let inst = write(dir.path(), "big.txt", &format!("parts 17\n{lists}"));
    let o = chooselab(&["solve", "-i", &inst, "--method", "generic"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn census_report_lists_three_classes() {
    let o = chooselab(&["--format", "structured", "census", "k33"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("bad_iso_classes: 3\n"));
    assert_eq!(text.matches("  form: ").count(), 3);
}

#[test]
fn sampling_is_reproducible() {
    let run = |threads: &str| {
        let o = chooselab(&[
            "--threads", threads, "--format", "structured", "sample", "unique4-converse", "--trials", "500", "--seed", "42",
        ]);
        assert_eq!(o.status.code(), Some(0));
        stdout(&o).lines().filter(|l| !l.starts_with("wall_ms")).collect::<Vec<_>>().join("\n")
    };
    let a = run("1");
    assert!(a.contains("seed: 42"));
    assert_eq!(a, run("3"));
}

#[test]
fn recognize_and_ind3() {
    let dir = tempfile::tempdir().unwrap();
    let u4 = write(dir.path(), "u4.txt", &stdout(&chooselab(&["gen", "unique4", "--k", "4"])));
    let o = chooselab(&["recognize", "unique4", "-i", &u4]);
    assert!(stdout(&o).starts_with("match: unique4"));
    let o = chooselab(&["recognize", "unique3", "-i", &u4]);
    assert_eq!(o.status.code(), Some(2));

    let tiny = write(
        dir.path(),
        "t.txt",
        "parts 3 2 1\nL 0: 1 2\nL 1: 1 2 3\nL 2: 1 2 4\nL 3: 1 2 3\nL 4: 3 4 5\nL 5: 1 2 3\n",
    );
    let o = chooselab(&["--format", "structured", "ind3", "-i", &tiny, "--search"]);
    assert!(stdout(&o).contains("ind3: pass"));
    let short = write(dir.path(), "s.txt", "parts 3 2 1\nL 0: 1 2\nL 1: 1 2\nL 2: 1 2 4\nL 3: 1 2 3\nL 4: 3 4 5\nL 5: 1 2 3\n");
    let o = chooselab(&["ind3", "-i", &short, "--search"]);
    assert!(stdout(&o).starts_with("fail"));
}
