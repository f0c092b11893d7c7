use std::process::{Command, Output};

fn hkdet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hkdet"))
        .args(args)
        .env_remove("HKDET_WORK_BUDGET")
        .output()
        .expect("failed to run hkdet")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn hk_single_and_range() {
    let o = hkdet(&["hk", "--m", "2", "--n", "2", "--q", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "m,n,q,hk\n2,2,2,10\n");

    let o = hkdet(&["hk", "--m", "1", "--n", "1", "--q-range", "1:3"]);
    assert_eq!(stdout(&o), "m,n,q,hk\n1,1,1,1\n1,1,2,2\n1,1,3,3\n");

    let o = hkdet(&["hk", "--m", "3", "--n", "3", "--q", "1"]);
    assert_eq!(stdout(&o), "m,n,q,hk\n3,3,1,1\n");
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let args = ["hk", "--m", "3", "--n", "4", "--q-range", "0:12"];
    let csv = stdout(&hkdet(&[&args[..], &["--format", "csv"]].concat()));
    let json = stdout(&hkdet(&[&args[..], &["--format", "json"]].concat()));
    let from_csv: Vec<Vec<String>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    let from_json: Vec<Vec<String>> = parsed
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            ["m", "n", "q", "hk"]
                .iter()
                .map(|k| match &r[k] {
                    serde_json::Value::String(s) => s.clone(),
                    v => v.to_string(),
                })
                .collect()
        })
        .collect();
    assert_eq!(from_csv, from_json);
    assert_eq!(from_csv.len(), 13);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "hk",
        "--m",
        "10",
        "--n",
        "10",
        "--q-range",
        "999990:1000000",
        "--format",
        "json",
    ];
    let a = hkdet(&args);
    let b = hkdet(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn count_examples() {
    let o = hkdet(&["count", "--kind", "nq", "--m", "0", "--n", "3", "--q", "5"]);
    assert_eq!(stdout(&o), "1\n");
    let o = hkdet(&[
        "count",
        "--kind",
        "nq",
        "--m",
        "2",
        "--n",
        "2",
        "--q",
        "2",
        "--rows",
        "inf",
        "--cols",
        "inf",
        "--method",
        "oracle-margins",
    ]);
    assert_eq!(stdout(&o), "10\n");
    let o = hkdet(&[
        "count", "--kind", "mq", "--m", "2", "--n", "1", "--q", "3", "--method", "closed",
    ]);
    assert_eq!(stdout(&o), "3\n");
    let o = hkdet(&[
        "count",
        "--kind",
        "nq",
        "--m",
        "2",
        "--n",
        "2",
        "--q",
        "2",
        "--cols",
        "1,1",
        "--method",
        "oracle-matrix",
    ]);
    assert_eq!(stdout(&o), "8\n");
}

#[test]
fn closed_and_oracle_methods_agree() {
    for (kind, extra) in [("nq", vec![]), ("nq", vec!["--cols", "3"]), ("mq", vec![])] {
        let mut outs = Vec::new();
        for method in ["closed", "oracle-margins", "oracle-matrix"] {
            let mut args = vec![
                "count", "--kind", kind, "--m", "3", "--n", "2", "--q", "4", "--method", method,
            ];
            args.extend(&extra);
            let o = hkdet(&args);
            assert!(o.status.success(), "{args:?}");
            outs.push(stdout(&o));
        }
        assert!(
            outs.windows(2).all(|w| w[0] == w[1]),
            "{kind} {extra:?}: {outs:?}"
        );
    }
}

#[test]
fn exit_codes() {
    let usage = hkdet(&[
        "count", "--kind", "nq", "--m", "2", "--n", "2", "--q", "3", "--rows", "1,2",
    ]);
    assert_eq!(usage.status.code(), Some(2));
    assert!(!usage.stderr.is_empty());
    assert!(usage.stdout.is_empty());

    let usage = hkdet(&["hk", "--m", "2", "--n", "2", "--q", "2", "--format", "xml"]);
    assert_eq!(usage.status.code(), Some(2));

    let budget = hkdet(&[
        "count",
        "--kind",
        "nq",
        "--m",
        "3",
        "--n",
        "3",
        "--q",
        "5",
        "--method",
        "oracle-margins",
        "--work-budget",
        "100",
    ]);
    assert_eq!(budget.status.code(), Some(3));

    let budget = hkdet(&["verify", "--suite", "oracle", "--work-budget", "5"]);
    assert_eq!(budget.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&budget.stderr).contains("m="));
}

#[test]
fn work_budget_flag_beats_environment() {
    let args = [
        "count",
        "--kind",
        "nq",
        "--m",
        "2",
        "--n",
        "2",
        "--q",
        "3",
        "--method",
        "oracle-margins",
    ];
    let o = Command::new(env!("CARGO_BIN_EXE_hkdet"))
        .args(args)
        .env("HKDET_WORK_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_hkdet"))
        .args(args)
        .args(["--work-budget", "1000000"])
        .env("HKDET_WORK_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "35\n");
}

#[test]
fn verify_suites() {
    for args in [
        vec![
            "verify",
            "--suite",
            "corollary",
            "--max-n",
            "10",
            "--max-q",
            "50",
        ],
        vec![
            "verify", "--suite", "oracle", "--max-m", "3", "--max-n", "3", "--max-q", "5",
        ],
        vec!["verify", "--suite", "m2", "--max-n", "8", "--max-q", "30"],
        vec!["verify", "--suite", "symmetry"],
        vec!["verify", "--suite", "compositions"],
        vec!["verify", "--suite", "polyfit", "--max-q", "40"],
    ] {
        let o = hkdet(&args);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(stdout(&o).lines().all(|l| l.starts_with("PASS ")));
    }
}

#[test]
fn fit_output() {
    let o = hkdet(&["fit", "--m", "2", "--n", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["degree"], 3);
    assert_eq!(
        v["leading_coefficient"],
        serde_json::json!({"num": "4", "den": "3"})
    );
    assert_eq!(v["verified_upto"], 14);

    let o = hkdet(&["fit", "--m", "1", "--n", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["degree"], 1);
    assert_eq!(
        v["coefficients"],
        serde_json::json!([{"num": "0", "den": "1"}, {"num": "1", "den": "1"}])
    );

    let o = hkdet(&["fit", "--m", "1", "--n", "2", "--check-upto", "60"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["degree"], 2);
    assert_eq!(v["verified_upto"], 60);
    let coefs: Vec<_> = v["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["num"].as_str().unwrap())
        .collect();
    assert_eq!(coefs, ["0", "0", "1"]);
}
