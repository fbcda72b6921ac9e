use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_magic-simplex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn classify_maximally_mixed() {
    let o = run(&["classify", "--alpha", "0", "--beta", "0", "--gamma", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("alpha,beta,gamma,pyramid_margin,pt_min_eig,classification")
    );
    assert!(lines.next().unwrap().ends_with(",Separable"));
}

#[test]
fn classify_horodecki_mirror_side() {
    let o = run(&["classify", "--b", "3.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).trim_end().ends_with(",BoundEntangled"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn invalid_input_exits_with_two() {
    assert_eq!(
        run(&["classify", "--b", "3", "--alpha", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["classify", "--b", "7"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        run(&["scan", "--grid", "1:0:0.1,0,0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["classify", "--b", "3", "--out", "/nonexistent/dir/out.csv"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn lambda_min_at_epsilon_gamma_point() {
    let o = run(&["lambda-min", "--preset", "tot"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    let lambda: f64 = row[3].parse().unwrap();
    assert!((lambda - (3.0 + 13f64.sqrt()) / 8.0).abs() < 1e-5);

    // Rounded coordinates just inside the PPT boundary land close to the optimum.
    let o = run(&[
        "lambda-min",
        "--epsilon",
        "0.11943",
        "--gamma",
        "0.3455",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let lambda = v["lambda_min"].as_f64().unwrap();
    assert!(
        (lambda - (3.0 + 13f64.sqrt()) / 8.0).abs() < 1e-3,
        "{lambda}"
    );
}

#[test]
fn witness_dump_has_matrix_coefficients_and_plane() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pl1.json");
    let o = run(&[
        "witness",
        "dump",
        "--name",
        "Pl1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["dim"], 9);
    assert_eq!(v["entries"].as_array().unwrap().len(), 81);
    assert_eq!(v["weyl_coefficients"].as_array().unwrap().len(), 9);
    let plane = &v["plane"];
    assert!((plane["b_coeff"].as_f64().unwrap() - 0.8).abs() < 1e-9);
    assert!((plane["g_coeff"].as_f64().unwrap() + 0.4).abs() < 1e-9);
    assert!((plane["const"].as_f64().unwrap() - 0.4).abs() < 1e-9);
}

#[test]
fn scan_is_byte_identical_across_thread_counts() {
    let args = |t: &'static str| {
        vec![
            "scan",
            "--boundary-plane",
            "--grid",
            "0:1:0.1,-0.34:0.1:0.02",
            "--threads",
            t,
        ]
    };
    let a = run(&args("1"));
    let b = run(&args("2"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("BoundEntangled") && text.contains("Separable"));
}

#[test]
fn scan_json_summary() {
    let o = run(&["scan", "--grid", "0,0,0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["total"], 1);
    assert_eq!(v["counts"]["Separable"], 1);
    assert_eq!(v["l_a"].as_array().unwrap().len(), 101);
}

#[test]
fn horodecki_table() {
    let o = run(&["horodecki", "--step", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 7);
    assert!(out.lines().nth(3).unwrap().ends_with("Separable,Separable"));
}
