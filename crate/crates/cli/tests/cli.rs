use std::process::{Command, Output};

fn tpcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tpcalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = tpcalc(&all);
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn target_triple_point_formula() {
    let o = tpcalc(&[
        "expand", "--type", "A0,A0,A0", "--kappa", "1", "--side", "target",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "s_0^3 - 3*s_0*s_1 + 2*s_2 + 2*s_01");
}

#[test]
fn normalized_source_row() {
    let o = tpcalc(&[
        "expand",
        "--type",
        "A0,A0,A0",
        "--kappa",
        "1",
        "--side",
        "source",
        "--normalized",
    ]);
    assert_eq!(
        stdout(&o).trim(),
        "1/2*fs_0^2 - 1/2*fs_1 - fs_0*c1 + c1^2 + c2"
    );
    let o = tpcalc(&["expand", "--type", "A1,A1", "--kappa", "-1"]);
    assert_eq!(
        stdout(&o).trim(),
        "s_2^2 - 2*s_2*s_01 - 7*s_3 + s_01^2 + 8*s_11 - s_001"
    );
}

#[test]
fn tritangent_planes() {
    let o = tpcalc(&["count", "--model", "dual-surface:3", "--type", "A1,A1,A1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "45");
}

#[test]
fn table1_suite() {
    let o = tpcalc(&["verify", "--suite", "table1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines.iter().all(|l| l.starts_with("PASS ")), "{out}");
}

#[test]
fn every_suite_passes() {
    for suite in ["classical", "series", "properties"] {
        let o = tpcalc(&["verify", "--suite", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn json_and_text_agree() {
    let text = stdout(&tpcalc(&[
        "count", "--model", "web3:4", "--type", "A1,A1,A1",
    ]));
    let doc = json(&["count", "--model", "web3:4", "--type", "A1,A1,A1"]);
    assert_eq!(doc["command"], "count");
    assert_eq!(doc["inputs"]["model"], "web3:4");
    assert_eq!(doc["result"]["count"], text.trim());
    assert_eq!(text.trim(), "675");

    let doc = json(&["verify", "--suite", "table1"]);
    let checks = doc["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 6);
    assert!(checks
        .iter()
        .all(|c| c["pass"] == true && c["expected"] == c["got"]));
    assert_eq!(doc["result"]["table1"]["passed"], 6);
}

#[test]
fn porteous_eval_and_extract() {
    assert_eq!(
        stdout(&tpcalc(&["porteous", "--kappa", "-1", "--k", "2"])).trim(),
        "c1^2 - c2"
    );
    let out = stdout(&tpcalc(&["eval", "--model", "veronese-p3", "--poly", "c2"]));
    assert_eq!(out.lines().collect::<Vec<_>>(), ["6*h^2", "integral: 6"]);
    let out = stdout(&tpcalc(&[
        "eval",
        "--model",
        "pencil:4",
        "--poly",
        "s_2 - s_01",
    ]));
    assert_eq!(out.lines().next(), Some("27*H"));
    let o = tpcalc(&[
        "extract",
        "--type",
        "A1,A0",
        "--kappa",
        "1",
        "--side",
        "source",
        "--poly",
        "fs_0*c2 - 2*c1*c2 - 2*c3",
    ]);
    assert_eq!(
        stdout(&o).trim(),
        "types=[A0,A1] kappa=1 R= -2*c1*c2 - 2*c3"
    );
}

#[test]
fn interpolation() {
    let o = tpcalc(&[
        "interp",
        "--type",
        "A0,A0,A0",
        "--kappa",
        "1",
        "--constraint",
        "veronese-p3=1",
        "--constraint",
        "scroll-q-p3=0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).lines().last(),
        Some("types=[A0,A0,A0] kappa=1 R= 2*c1^2 + 2*c2")
    );

    let doc = json(&[
        "interp",
        "--type",
        "A0,A0",
        "--kappa",
        "1",
        "--constraint",
        "ratcurve:4=3",
    ]);
    assert_eq!(doc["result"]["status"], "unique");
    assert_eq!(doc["result"]["residual"], "-c1");

    let doc = json(&[
        "interp",
        "--type",
        "A0,A0,A0",
        "--kappa",
        "1",
        "--constraint",
        "veronese-p3=1",
    ]);
    assert_eq!(doc["result"]["status"], "underdetermined");
    assert_eq!(doc["result"]["rank"], 1);

    let o = tpcalc(&[
        "interp",
        "--type",
        "A0,A0,A0",
        "--kappa",
        "1",
        "--constraint",
        "veronese-p3=1",
        "--constraint",
        "veronese-p3=2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("veronese-p3=2"));
}

#[test]
fn oracle_side_by_side() {
    let o = tpcalc(&["oracle", "--curve", "t^2, t^3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("resultant degree (2 delta): 2"));
    assert!(out.contains("engine m_A0^2 degree: 2"));
    let o = tpcalc(&["oracle", "--curve", "t^2, t^4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn database_override() {
    let path = std::env::temp_dir().join(format!("tpcalc-db-{}.txt", std::process::id()));
    std::fs::write(&path, "# doubled\ntypes=[A0,A0] kappa=1 R= -2*c1\n").unwrap();
    let p = path.to_str().unwrap();
    let o = tpcalc(&["--db", p, "expand", "--type", "A0,A0", "--kappa", "1"]);
    assert_eq!(stdout(&o).trim(), "s_0^2 - 2*s_1");
    let o = tpcalc(&["--db", p, "expand", "--type", "A1", "--kappa", "1"]);
    assert_eq!(stdout(&o).trim(), "s_01");
    std::fs::write(&path, "types=[A0,A0 kappa=1 R= -2*c1\n").unwrap();
    assert_eq!(
        tpcalc(&["--db", p, "expand", "--type", "A0", "--kappa", "1"])
            .status
            .code(),
        Some(2)
    );
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["frobnicate"],
        vec!["count", "--model", "nope", "--type", "A0"],
        vec!["expand", "--type", "A7", "--kappa", "1"],
        vec!["expand", "--type", "A1,A1", "--kappa", "1"],
        vec!["count", "--model", "veronese-p3", "--type", "A0,A0"],
        vec!["verify", "--suite", "nope"],
        vec!["expand", "--type", "A0", "--kappa", "1", "--side", "middle"],
    ] {
        let o = tpcalc(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}
