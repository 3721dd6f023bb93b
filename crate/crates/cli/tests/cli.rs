use std::process::{Command, Output};

fn funk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_funk")).args(args).output().expect("binary runs")
}

fn domain(name: &str) -> String {
    format!("{}/../../domains/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("a JSON document")
}

#[test]
fn eval_on_the_unit_disk() {
    let o = funk(&["eval", "--x", "0.5,0", "--y", "1,0", "--tensor", "--okada"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert!((v["theta"].as_f64().unwrap() - 2.0).abs() < 1e-14);
    assert!((v["theta_reverse"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-14);
    assert!((v["g"][0][0].as_f64().unwrap() - 4.0).abs() < 1e-8);
    assert!(v["okada_residual"][0].as_f64().unwrap().abs() < 1e-6);
}

#[test]
fn distance_as_csv() {
    let o = funk(&["distance", "--p", "0,0", "--q", "0.5,0", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("forward,backward,hilbert"));
    let vals: Vec<f64> = lines.next().unwrap().split(',').map(|t| t.parse().unwrap()).collect();
    assert!((vals[0] - 2f64.ln()).abs() < 1e-14);
    assert!((vals[1] - 1.5f64.ln()).abs() < 1e-14);
}

#[test]
fn tensor_and_normalize_documents() {
    let o = funk(&["tensor", "--domain", &domain("ellipse"), "--x", "0.3,-0.2", "--y", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["positive_definite"], true);
    let (g, t2) = (v["g_yy"].as_f64().unwrap(), v["theta_squared"].as_f64().unwrap());
    assert!((g - t2).abs() < 1e-8 * t2);

    let o = funk(&["normalize", "--domain", &domain("disk"), "--phi", "-0.4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!((v["jets_hat"][2].as_f64().unwrap() - 0.5).abs() < 1e-10);
    assert!(v["f3"].as_f64().unwrap().abs() < 1e-10);
}

#[test]
fn series_tables() {
    let o = funk(&["series", "--f3", "0.5", "--f4", "0", "--H", "2", "--quantity", "kR", "--exact", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let first: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(first[..2], ["kr", "0"]);
    assert!((first[2].parse::<f64>().unwrap() - (2f64.sqrt() - 1.0)).abs() < 1e-15);
    // the printed s¹ coefficient is flagged
    assert!(text.lines().nth(2).unwrap().ends_with(",true"));

    let o = funk(&["series", "--f3", "-0.75", "--quantity", "t_plus"]);
    let v = json(&o);
    let r = &v["reports"][0];
    assert_eq!(r["quantity"], "t_plus");
    assert!(r["max_abs_coeff_diff"].as_f64().unwrap() < 1e-9);

    let o = funk(&["series", "--quantity", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sphere_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sphere.csv");
    let o = funk(&[
        "sphere",
        "--domain",
        &domain("fourier"),
        "--r",
        "5",
        "--samples",
        "64",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next(), Some("phi,rho,x,y"));
    assert_eq!(text.lines().count(), 65);
}

#[test]
fn curvature_selection() {
    let o = funk(&["curvature", "--domain", &domain("ellipse"), "--r", "6", "--phi", "0.3", "--which", "finsler,rund"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!((v["finsler"].as_f64().unwrap() - 1.0).abs() < 1e-2);
    assert!((v["rund"].as_f64().unwrap() - (2f64.sqrt() - 1.0)).abs() < 1e-2);
    assert!(v.get("inner").is_none());
    let o = funk(&["curvature", "--r", "6", "--phi", "0", "--which", "gauss"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn input_errors_exit_with_two() {
    let o = funk(&["eval", "--domain", &domain("nonconvex"), "--x", "0,0", "--y", "1,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not strictly convex"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"kind\": \"ellipse\",\n  \"params\": {\"a\": 2}\n}\n").unwrap();
    let o = funk(&["eval", "--domain", bad.to_str().unwrap(), "--x", "0,0", "--y", "1,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3: params.b"), "{}", stderr(&o));

    let o = funk(&["eval", "--x", "2,0", "--y", "1,0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = funk(&["eval", "--x", "0.1", "--y", "1,0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = funk(&["sweep", "--r-values", "5,3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_is_deterministic_across_workers() {
    let run = |w: &str| funk(&["sweep", "--domain", &domain("disk-offset"), "--phi", "1.3", "--workers", w]);
    let one = run("1");
    let three = run("3");
    assert_eq!(one.status.code(), Some(0), "{}", stderr(&one));
    assert_eq!(one.stdout, three.stdout);
    assert_eq!(one.stdout, run("1").stdout);
    assert!(stdout(&one).starts_with("r,kn_inner,kn_inner_series,kn_inner_gap,kn_outer"));

    let o = funk(&["sweep", "--domain", &domain("ellipse"), "--phi", "0.7", "--format", "doc"]);
    let v = json(&o);
    let kr = v["summaries"].as_array().unwrap().iter().find(|s| s["quantity"] == "kr").unwrap();
    assert!((kr["limit"].as_f64().unwrap() - (2f64.sqrt() - 1.0)).abs() < 1e-3);
}

#[test]
fn verify_reports_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = funk(&["verify", "--domain", &domain("disk"), "--workers", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["name"] == "randers_oracle"));

    let o = funk(&["verify", "--domain", &domain("nonconvex")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("construction [nonconvex]"));
}
