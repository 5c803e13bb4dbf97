use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mirror-quadric")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gw_degree_one() {
    let o = run(&["gw", "--quadric", "3", "--degree", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn series_routes_agree() {
    let o = run(&["series", "--quadric", "3", "--order", "2", "--component", "0", "--route", "all"]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().skip(1).map(String::from).collect();
    let expect = ["1", "2", "3/4"];
    for (line, v) in lines.iter().zip(expect) {
        let cols: Vec<&str> = line.split('\t').collect();
        assert_eq!(&cols[3..], &[v, v, v], "{}", line);
    }
    assert_eq!(lines.len(), 3);
}

#[test]
fn series_csv_header() {
    let o = run(&["series", "--quadric", "4", "--order", "1", "--component", "mid", "--csv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("N,class,k,route,value,hbar_exponent\n"));
    assert!(out.contains("4,s2',1,closed,"));
}

#[test]
fn verify_all_passes() {
    for n in ["3", "4"] {
        let o = run(&["verify", "--quadric", n, "--suite", "all"]);
        assert!(o.status.success(), "N={}\n{}", n, stdout(&o));
        assert!(stdout(&o).starts_with("seed "));
    }
}

#[test]
fn seed_is_echoed_and_output_is_stable() {
    let a = run(&["verify", "--quadric", "5", "--suite", "dmodule", "--seed", "7"]);
    let b = run(&["verify", "--quadric", "5", "--suite", "dmodule", "--seed", "7"]);
    assert!(stdout(&a).starts_with("seed 7\n"));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["gw", "--quadric", "2", "--degree", "1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--quadric", "4", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["series", "--quadric", "3", "--order", "1", "--component", "mid"]).status.code(), Some(2));
}

#[test]
fn thread_cap_is_respected() {
    let o = Command::new(env!("CARGO_BIN_EXE_mirror-quadric"))
        .args(["series", "--quadric", "4", "--order", "2", "--route", "all"])
        .env("MIRROR_QUADRIC_THREADS", "1")
        .output()
        .unwrap();
    assert!(o.status.success());
    let bad = Command::new(env!("CARGO_BIN_EXE_mirror-quadric"))
        .args(["gw", "--quadric", "3", "--degree", "1"])
        .env("MIRROR_QUADRIC_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn outputs_dot_and_json() {
    let o = run(&["quiver", "--quadric", "5", "--dot"]);
    assert!(stdout(&o).starts_with("digraph"));
    let o = run(&["superpotential", "--quadric", "4", "--model", "canonical", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["N"], 4);
    let o = run(&["critical", "--quadric", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 4);
}
