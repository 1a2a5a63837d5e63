use std::process::Command;

fn charderiv(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_charderiv")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn kostka_example() {
    let (code, out, _) = charderiv(&["kostka", "--shape", "3,1", "--weight", "2,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "2");
}

#[test]
fn dop_table_entry() {
    let (code, out, _) = charderiv(&["dop", "--k", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "∂u1^4 + 6∂u2∂u1^2 + 3∂u2^2 + 4∂u3∂u1 + ∂u4");
}

#[test]
fn ginibre_json_shape() {
    let (code, out, _) = charderiv(&["ginibre", "--k", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["poly_t"], serde_json::json!([["0", "1/1"]]));
    assert_eq!(v["prefactor"], serde_json::json!({"exp_coeff": 2, "pi_power": -2, "one_minus_t_power": 0}));
}

#[test]
fn ginibre_grid_csv_has_one_row_per_cell() {
    let (code, out, _) = charderiv(&["ginibre", "--max-k", "3", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "k,h,exp_coeff,pi_power,poly_t");
    assert_eq!(lines.len(), 1 + 2 + 3 + 4);
}

#[test]
fn output_is_byte_stable() {
    let args = ["verify", "--seed", "3", "--max-k", "2", "--n", "8", "--format", "json"];
    let (c1, a, _) = charderiv(&args);
    let (c2, b, _) = charderiv(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
}

#[test]
fn bad_input_exits_one() {
    assert_eq!(charderiv(&["kostka", "--shape", "1,3", "--weight", "2,2"]).0, 1);
    assert_eq!(charderiv(&["nonsense"]).0, 1);
    assert_eq!(charderiv(&["kostka", "--shape", "2", "--frobnicate"]).0, 1);
    assert_eq!(charderiv(&["cue", "--k", "1", "--h1", "2"]).0, 1);
    assert_eq!(charderiv(&["eval"]).0, 1);
    assert_eq!(charderiv(&["--help"]).0, 0);
}

#[test]
fn job_files() {
    let dir = tempfile::tempdir().unwrap();
    let cmd = dir.path().join("cmd.json");
    std::fs::write(&cmd, r#"{"command": "kostka", "shape": [3, 1], "weight": [2, 1, 1]}"#).unwrap();
    let (code, out, _) = charderiv(&["--job", cmd.to_str().unwrap()]);
    assert_eq!((code, out.trim()), (0, "2"));

    let job = dir.path().join("eval.json");
    std::fs::write(
        &job,
        r#"{"mode": "pf2", "kernel": {"vars": ["x", "y"], "terms": [[[1, 0], "1/1"], [[0, 1], "-1/1"], [[3, 1], "2/1"], [[1, 3], "-2/1"]]},
            "points": ["0/1", "1/2"], "alpha": [1], "oracle": true}"#,
    )
    .unwrap();
    let out_path = dir.path().join("res.json");
    let (code, _, err) = charderiv(&["eval", "--job", job.to_str().unwrap(), "--format", "json", "--out", out_path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(v["value"], v["oracle"]);
    assert_eq!(v["bounds"]["q_max"], 1);
}

#[test]
fn thread_cap_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_charderiv"))
        .args(["ginibre", "--max-k", "2"])
        .env("CHARDERIV_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
}
