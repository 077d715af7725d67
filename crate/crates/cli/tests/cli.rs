use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn rigidconn(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rigidconn"));
    cmd.args(args).env_remove("RIGIDCONN_CACHE");
    if let Some(dir) = cache {
        cmd.env("RIGIDCONN_CACHE", dir);
    }
    cmd.output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = rigidconn(&all, None);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn matrix_strings(v: &Value) -> Vec<Vec<String>> {
    v["result"]["matrix"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| {
            row.as_array()
                .unwrap()
                .iter()
                .map(|cell| {
                    let m = cell.as_object().unwrap();
                    m.iter()
                        .map(|(k, c)| format!("{c}t^{k}").replace('"', ""))
                        .collect::<Vec<_>>()
                        .join("+")
                })
                .collect()
        })
        .collect()
}

#[test]
fn matrix_sl2_sym1() {
    let v = json(&["matrix", "--group", "sl", "--rank", "2", "--rep", "sym:1"]);
    assert_eq!(v["schema"], "v1");
    assert_eq!(
        matrix_strings(&v),
        vec![
            vec!["".to_string(), "1t^1".into()],
            vec!["1t^0".into(), "".into()]
        ]
    );
}

#[test]
fn matrix_sl4_standard() {
    let v = json(&[
        "matrix", "--group", "sl", "--rank", "4", "--rep", "standard",
    ]);
    let m = matrix_strings(&v);
    for (i, row) in m.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            let want = if i == 0 && j == 3 {
                "1t^1"
            } else if i == j + 1 {
                "1t^0"
            } else {
                ""
            };
            assert_eq!(cell, want, "entry ({i},{j})");
        }
    }
}

#[test]
fn matrix_g2_dim7_is_so7_shape() {
    let g2 = json(&["matrix", "--group", "g2", "--rep", "dim7"]);
    let so7 = json(&["matrix", "--group", "so7"]);
    assert_eq!(g2["result"]["matrix"], so7["result"]["matrix"]);
    let m = matrix_strings(&g2);
    // m = 3: E at (0, 5) and (1, 6)
    assert_eq!(m[0][5], "1t^1");
    assert_eq!(m[1][6], "1t^1");
}

fn scalar_text(group: &str) -> String {
    let out = rigidconn(&["scalar", "--group", group], None);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    text.lines().nth(1).unwrap().to_string()
}

#[test]
fn scalar_examples() {
    assert_eq!(scalar_text("sl5"), "θ^5 + (t)");
    assert_eq!(scalar_text("so5"), "θ^5 + (-2*t)*θ + (-t)");
    assert_eq!(scalar_text("sp4"), "θ^4 + (-t)");
}

#[test]
fn cohomology_e6_adjoint() {
    let v = json(&["cohomology", "--group", "e6", "--rep", "adjoint"]);
    let r = &v["result"];
    assert_eq!(r["h1"], 0);
    assert_eq!(r["galois_group"], "F4");
    for key in [
        "group",
        "rank",
        "lambda",
        "dim",
        "epsilon",
        "irr",
        "inv_I0",
        "inv_n",
        "inv_Iinf",
        "inv_galois",
        "h0",
        "h1",
        "h2",
        "galois_group",
    ] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    let trace = r["trace"].as_array().unwrap();
    assert!(trace.iter().any(|l| l.as_str().unwrap().contains("F4")));
}

#[test]
fn rigidity_sym5() {
    let v = json(&[
        "rigidity", "--group", "sl2", "--rep", "sym:5", "--trunc", "60",
    ]);
    assert_eq!(v["result"]["h1"], 2);
    assert_eq!(v["result"]["V"]["stabilized"], true);
}

#[test]
fn subregular_rows() {
    let v = json(&["subregular"]);
    let rows = v["result"].as_array().unwrap();
    let got: Vec<(String, i64, i64, i64)> = rows
        .iter()
        .map(|r| {
            (
                format!("{}{}", r["type"].as_str().unwrap(), r["rank"]),
                r["m"].as_i64().unwrap(),
                r["d"].as_i64().unwrap(),
                r["orbits"].as_i64().unwrap(),
            )
        })
        .collect();
    let want = [
        ("G2", 3, 3, 4),
        ("F4", 4, 8, 6),
        ("E6", 3, 9, 8),
        ("E7", 4, 14, 9),
        ("E8", 6, 24, 10),
    ];
    assert_eq!(got.len(), 5);
    for (g, w) in got.iter().zip(want) {
        assert_eq!((g.0.as_str(), g.1, g.2, g.3), w);
    }
}

#[test]
fn deterministic_json() {
    let args = [
        "cohomology",
        "--group",
        "b8",
        "--rep",
        "spin",
        "--format",
        "json",
    ];
    let a = rigidconn(&args, None);
    let b = rigidconn(&args, None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let args = ["kac", "--group", "g2", "--format", "json"];
    assert_eq!(rigidconn(&args, None).stdout, rigidconn(&args, None).stdout);
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "cohomology",
        "--group",
        "f4",
        "--rep",
        "0,0,0,1",
        "--format",
        "json",
    ];
    let result = |o: Output| -> Value {
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v["result"].clone()
    };
    let none = result(rigidconn(&args, None));
    let miss = result(rigidconn(&args, Some(dir.path())));
    assert!(
        std::fs::read_dir(dir.path()).unwrap().count() > 0,
        "cache written"
    );
    let hit = result(rigidconn(&args, Some(dir.path())));
    assert_eq!(none, miss);
    assert_eq!(miss, hit);
}

#[test]
fn echo_is_resolved() {
    let v = json(&["scalar", "--group", "sl", "--rank", "3"]);
    let job = &v["job"];
    assert_eq!(job["command"], "scalar");
    assert_eq!(job["group"]["type"], "A");
    assert_eq!(job["group"]["rank"], 2);
    assert_eq!(job["coord"], 2);
    assert_eq!(job["lambda"], serde_json::json!([1, 0]));
}

#[test]
fn validation_errors_exit_2() {
    for args in [
        vec!["matrix", "--group", "e9"],
        vec!["matrix", "--group", "sl3", "--rank", "4"],
        vec!["matrix", "--group", "f4", "--rep", "spin"],
        vec!["cohomology", "--group", "a2", "--rep", "1,-1"],
        vec!["matrix", "--group", "e7", "--rep", "0,0,0,0,0,0,1"],
        vec!["roots", "--group", "a12"],
    ] {
        let out = rigidconn(&args, None);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn rank_bound_flag() {
    let out = rigidconn(
        &[
            "roots",
            "--group",
            "a12",
            "--rank-bound",
            "12",
            "--format",
            "json",
        ],
        None,
    );
    assert!(out.status.success());
}

#[test]
fn katz_normalization() {
    let v = json(&["scalar", "--group", "sl2", "--katz"]);
    // t ↦ −t/2 turns θ² − t into θ² + t/2
    assert_eq!(v["result"]["coeffs"][0]["1"], "1/2");
}

#[test]
fn weights_and_slope() {
    let v = json(&["weights", "--group", "g2", "--rep", "adjoint"]);
    assert_eq!(v["result"]["dim"], 14);
    let sl2 = v["result"]["principal_sl2"].as_array().unwrap();
    let syms: Vec<i64> = sl2.iter().map(|x| x["sym"].as_i64().unwrap()).collect();
    assert_eq!(syms, vec![2, 10]);
    let s = json(&["slope", "--group", "b3", "--rep", "adjoint"]);
    assert_eq!(s["result"]["slope"], "1/6");
}

#[test]
fn kac_on_group_without_standard_rep() {
    let v = json(&["kac", "--group", "e6", "--window", "12"]);
    assert_eq!(v["result"]["all_ok"], true);
}
