//! Runs the built binary.

use std::process::{Command, Output};

fn nmbin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nmbin"))
        .args(args)
        .env_remove("NMBIN_SIM_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_first_five_bins() {
    let o = nmbin(&["gen", "--n", "2", "--m", "3", "--count", "25"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "B0: 1 2 | 3 4 5");
    assert_eq!(text.lines().last().unwrap(), "B4: 684 936 | 1188 1872 2556");
}

#[test]
fn decompose_json_is_parseable() {
    let o = nmbin(&["decompose", "--format", "json", "2018"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let summands: Vec<&str> = v["summands"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["summand"].as_str().unwrap())
        .collect();
    assert_eq!(summands, ["1872", "144", "2"]);
    assert_eq!(v["summands"][0]["location"]["sub"], "mbin");
}

#[test]
fn malformed_input_exits_nonzero() {
    let o = nmbin(&["decompose", "-5"]);
    assert!(!o.status.success());
    let o = nmbin(&["gen", "--m", "0"]);
    assert!(!o.status.success());
}

#[test]
fn checks_pass() {
    for args in [
        &["check", "all", "--n", "2", "--m", "3"][..],
        &["check", "bijection", "--n", "1", "--m", "1", "--k", "4"],
        &[
            "check",
            "plrs",
            "--n",
            "2",
            "--m",
            "1",
            "--degree-bound",
            "30",
        ],
    ] {
        let o = nmbin(args);
        assert!(o.status.success(), "{args:?}: {}", stdout(&o));
    }
    let o = nmbin(&["check", "plrs", "--n", "2", "--m", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let verdicts = v["plrs"]["feasibility"]["verdicts"].as_array().unwrap();
    assert_eq!(verdicts.len(), 25);
    assert!(verdicts.iter().all(|d| d["verdict"] == "infeasible"));
}

#[test]
fn budget_errors_exit_nonzero() {
    let o = Command::new(env!("CARGO_BIN_EXE_nmbin"))
        .args(["pkc", "--k", "100"])
        .env("NMBIN_TABLE_CELLS", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("limit"));
}

#[test]
fn simulate_is_reproducible() {
    let dir = std::env::temp_dir().join(format!("nmbin-sim-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let run = |name: &str| {
        let path = dir.join(name);
        let o = nmbin(&[
            "simulate",
            "--n",
            "1",
            "--m",
            "2",
            "--k",
            "60",
            "--samples",
            "3000",
            "--seed",
            "7",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(String::from_utf8_lossy(&o.stderr).contains("elapsed"));
        (
            // the last line names the output files
            stdout(&o)
                .lines()
                .filter(|l| !l.starts_with("wrote"))
                .collect::<Vec<_>>()
                .join("\n"),
            std::fs::read(&path).unwrap(),
            std::fs::read(dir.join(name.replace(".json", ".histogram.csv"))).unwrap(),
        )
    };
    let a = run("a.json");
    let b = run("b.json");
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a.1).unwrap();
    assert_eq!(v["result"]["sample_count"], 3000);
    assert!(String::from_utf8(a.2)
        .unwrap()
        .starts_with("summands,frequency\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}
