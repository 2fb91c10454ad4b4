use std::process::Command;

use modhyp_cli::{run, EXIT_COMPUTE, EXIT_OK, EXIT_USAGE};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["modhyp"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn ratio_example() {
    let (code, out, _) = call(&["ratio", "--a", "11", "--n", "441"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("8/7") && out.contains("sum-dominant"), "{out}");

    let (_, out, _) = call(&["ratio", "--a", "11", "--n", "441", "--format", "csv"]);
    assert_eq!(
        out,
        "a,n,c2,c2_decimal,classification\n11,441,8/7,1.142857,sum-dominant\n"
    );
}

#[test]
fn card_example() {
    let (code, out, _) = call(&["card", "--a", "1", "--n", "8", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out,
        "a,n,d,m,p,t,count,method,total\n1,8,2,2,2,3,2,small-power-table,2\n"
    );

    let (_, out, _) = call(&[
        "card", "--a", "1", "--n", "143", "--d", "3", "--format", "csv",
    ]);
    assert!(
        out.lines()
            .skip(1)
            .all(|l| l.ends_with(",full-coverage-d>2,143")),
        "{out}"
    );
}

#[test]
fn verify_sweep_passes() {
    let (code, out, err) = call(&[
        "verify", "--max-pp", "1024", "--max-n", "200", "--format", "csv",
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.lines().skip(1).all(|l| l.ends_with(",0")), "{out}");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(
        call(&["ratio", "--a", "1", "--n", "9", "--bogus"]).0,
        EXIT_USAGE
    );
    assert_eq!(call(&[]).0, EXIT_USAGE);
    assert_eq!(call(&["ratio", "--a", "3", "--n", "9"]).0, EXIT_USAGE);
    assert_eq!(
        call(&["scan", "--a", "1", "--max-n", "9", "--L", "1/0"]).0,
        EXIT_USAGE
    );
    assert_eq!(
        call(&["solve3", "--b", "0", "--a", "1", "--p", "7"]).0,
        EXIT_USAGE
    );
    assert_eq!(
        call(&["ratio", "--a", "1", "--n", "9", "--budget", "0"]).0,
        EXIT_USAGE
    );
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("primorial"));
}

#[test]
fn budget_overflow_exits_two() {
    let (code, _, err) = call(&[
        "card", "--d", "4", "--a", "1", "--n", "385", "--budget", "10",
    ]);
    assert_eq!(code, EXIT_COMPUTE);
    assert!(err.contains("5^1") && err.contains("7^1"), "{err}");
    assert_eq!(
        call(&["enumerate", "--a", "1", "--n", "101", "--budget", "99"]).0,
        EXIT_COMPUTE
    );
}

#[test]
fn enumerate_points_and_sumsets() {
    let (_, out, _) = call(&["enumerate", "--a", "1", "--n", "5", "--format", "csv"]);
    assert_eq!(out, "x1,x2\n1,1\n2,3\n3,2\n4,4\n");
    let (_, out, _) = call(&[
        "enumerate",
        "--a",
        "1",
        "--n",
        "9",
        "--m",
        "1",
        "--sumset",
        "--format",
        "csv",
    ]);
    assert_eq!(out, "value\n0\n3\n6\n");
    let (_, out, _) = call(&[
        "enumerate",
        "--d",
        "3",
        "--a",
        "1",
        "--n",
        "3",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
    assert_eq!(v[1]["x3"], 2);
}

#[test]
fn other_subcommands() {
    let (code, out, _) = call(&[
        "coverage", "--d", "3", "--m", "3", "--a", "3", "--n", "7", "--format", "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["theorem_applies"], false);
    assert!(v[0]["missing"]
        .as_array()
        .unwrap()
        .contains(&serde_json::json!(0)));

    let (code, out, _) = call(&[
        "solve3", "--b", "3", "--a", "1", "--p", "13", "--format", "csv",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("b,a,p,t,x1,x2,x3\n3,1,13,1,"));

    let (_, out, _) = call(&["primorial", "--a", "4", "--k-max", "2", "--format", "csv"]);
    assert!(out.lines().nth(2).unwrap().contains(",21,8/3,"), "{out}");

    let (_, out, _) = call(&["density", "--a", "2", "--max-n", "1000", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v[0]["bound_lower"].as_f64().unwrap() > 0.97);

    let (code, _, _) = call(&["density", "--a", "0", "--max-n", "1000"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn scan_threshold_and_skips() {
    let (code, out, err) = call(&[
        "scan", "--a", "11", "--max-n", "30", "--L", "1", "--format", "csv",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(err.contains("skipped 2"), "{err}");
    assert_eq!(out.lines().nth(1), Some("11,7,4/3,1.333333,sum-dominant"));
}

#[test]
fn plot_writes_svg() {
    let dir = std::env::temp_dir().join(format!("modhyp-plot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h.svg");
    let (code, _, _) = call(&[
        "plot",
        "--a",
        "51",
        "--n",
        "1024",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_eq!(svg.matches(r#"class="pt""#).count(), 512);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn scan_output_is_identical_across_thread_counts() {
    let outputs: Vec<Vec<u8>> = ["1", "4", "16"]
        .iter()
        .map(|threads| {
            let out = Command::new(env!("CARGO_BIN_EXE_modhyp"))
                .args(["scan", "--a", "4", "--max-n", "50000", "--format", "csv"])
                .env("MODHYP_THREADS", threads)
                .output()
                .unwrap();
            assert!(out.status.success());
            out.stdout
        })
        .collect();
    assert!(outputs[0].len() > 1000);
    assert!(outputs.iter().all(|o| *o == outputs[0]));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_modhyp");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["ratio", "--a", "11", "--n", "441"]), Some(0));
    assert_eq!(status(&["ratio", "--nope"]), Some(1));
    assert_eq!(
        status(&["card", "--d", "4", "--a", "1", "--n", "385", "--budget", "10"]),
        Some(2)
    );
}
