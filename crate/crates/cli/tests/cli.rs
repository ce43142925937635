use std::fs;
use std::process::{Command, Output};

fn kinklab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kinklab"))
        .args(args)
        .env("KINKLAB_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(stdout(out).trim()).unwrap()
}

#[test]
fn simulate_word_and_ring() {
    let out = kinklab(&["simulate", "--word", "0010101100101", "--steps", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1001011\n");

    let out = kinklab(&["simulate", "--cyclic", "1001", "--steps", "2"]);
    assert_eq!(stdout(&out), "1001\n");

    let out = kinklab(&["simulate", "--word", "11", "--steps", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("too short"));
}

#[test]
fn simulate_renders() {
    let out = kinklab(&["simulate", "--word", "0011", "--render", "ascii"]);
    assert_eq!(stdout(&out), "10\n..##\n #.\n");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.pbm");
    let out = kinklab(&["simulate", "--support", "1", "--steps", "2", "--render", "pbm", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "10001\noffset -2\n");
    assert_eq!(fs::read_to_string(&path).unwrap(), "P1\n5 3\n00100\n01010\n10001\n");
}

#[test]
fn classify_words() {
    let v = json(&kinklab(&["classify", "10011"]));
    assert_eq!(v["kinks"], 2);
    assert_eq!(v["inP"], false);
    assert_eq!(v["b"], "10011");
    assert_eq!(v["delta"], "");

    let v = json(&kinklab(&["classify", "0011"]));
    assert_eq!(v["stability"], "RightUnstable");
    assert!(v.get("inP").is_none());

    let v = json(&kinklab(&["classify", "0101"]));
    assert_eq!(v["kinks"], 0);

    assert_eq!(kinklab(&["classify", "0121"]).status.code(), Some(2));
}

#[test]
fn preimage_queries() {
    assert_eq!(json(&kinklab(&["preimage", "11"])), serde_json::json!(["1001"]));
    assert_eq!(json(&kinklab(&["preimage", "111"])), serde_json::json!([]));
    assert_eq!(stdout(&kinklab(&["preimage", "11", "--depth", "2"])), "true\n");
    assert_eq!(stdout(&kinklab(&["preimage", "111", "--depth", "3"])), "false\n");
    assert_eq!(kinklab(&["preimage", "11", "--depth", "0"]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let out = kinklab(&["verify", "--profile", "quick"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(lines.len() >= 9);
    assert!(lines.iter().all(|v| v["status"] == "Pass"));

    let sabotaged = kinklab(&["verify", "--profile", "quick", "--rule-code", "146"]);
    assert_eq!(sabotaged.status.code(), Some(1));
    assert!(stdout(&sabotaged).contains("\"Fail\""));

    assert_eq!(kinklab(&["verify", "--profile", "slow"]).status.code(), Some(2));
}

#[test]
fn density_files_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let prefix = dir.path().join(name);
        let out = kinklab(&[
            "density", "--width", "1024", "--steps", "128", "--trials", "8", "--seed", "7", "--out", prefix.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        (
            fs::read(dir.path().join(format!("{name}.csv"))).unwrap(),
            fs::read_to_string(dir.path().join(format!("{name}.json"))).unwrap(),
        )
    };
    let (a, meta) = run("a");
    let (b, _) = run("b");
    assert_eq!(a, b);
    let csv = String::from_utf8(a).unwrap();
    assert_eq!(csv.lines().next(), Some("n,mean_density,stderr,trials,width,seed"));
    assert_eq!(csv.lines().count(), 130);
    let d0: f64 = csv.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((d0 - 1.0 / 3.0).abs() < 0.03);
    let meta: serde_json::Value = serde_json::from_str(&meta).unwrap();
    assert_eq!(meta["seed"], 7);
    assert!(meta["rng"]["generator"].as_str().unwrap().contains("ChaCha8"));
    assert!(meta["fit"]["exponent"].is_number());
}

#[test]
fn density_to_stdout_and_bad_parameters() {
    let out = kinklab(&["density", "--width", "64", "--steps", "10", "--trials", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 12);
    assert_eq!(kinklab(&["density", "--width", "2"]).status.code(), Some(2));

    let bad_threads = Command::new(env!("CARGO_BIN_EXE_kinklab"))
        .args(["classify", "1"])
        .env("KINKLAB_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad_threads.status.code(), Some(2));
}
