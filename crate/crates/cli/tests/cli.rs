use std::path::PathBuf;
use std::process::Command;

fn cellres(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cellres"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cellres-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const M3: &str = "x1*x2,x1*x3,x2*x3";
const SQUARE: &str = "x1^2,x1*x2,x2^2,x1*x3,x2*x3,x3^2";

#[test]
fn order_reports_colon_sets() {
    let (code, out, _) = cellres(&["order", M3, "-n", "3", "--regular"]);
    assert_eq!(code, 0);
    assert!(
        out.contains("q(x1*x2) = {}\nq(x1*x3) = {x2}\nq(x2*x3) = {x1}\n"),
        "{out}"
    );
    assert!(out.contains("regular: true"));
    let (code, out, _) = cellres(&["order", "x1", "-n", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("order: x1\n"));
}

#[test]
fn order_reports_non_regular_witness() {
    let (code, out, _) = cellres(&["order", SQUARE, "--order", "0,1,3,5,4,2"]);
    assert_eq!(code, 0);
    assert!(out.contains("regular: false (step 4"), "{out}");
    let (code, _, err) = cellres(&["order", SQUARE, "--order", "0,1,3,5,4,2", "--regular"]);
    assert_eq!(code, 2);
    assert!(err.contains("not regular"));
}

#[test]
fn exit_codes() {
    assert_eq!(cellres(&["order", "x1*x2,x3*x4", "-n", "4"]).0, 2);
    assert_eq!(cellres(&["resolve", "x1*x2,x3*x4"]).0, 2);
    assert_eq!(cellres(&["order", "x1**x2"]).0, 1);
    assert_eq!(cellres(&["order", "x5", "-n", "2"]).0, 1);
    assert_eq!(cellres(&["order", M3, "--order", "0,0,1"]).0, 1);
    assert_eq!(cellres(&["frobnicate"]).0, 1);
    assert_eq!(cellres(&["--help"]).0, 0);
    assert_eq!(cellres(&["--version"]).0, 0);
    assert_eq!(cellres(&["verify", M3, "--flip-sign", "0"]).0, 3);
    assert_eq!(cellres(&["verify", M3, "--flip-sign", "1000"]).0, 1);
}

#[test]
fn resolve_prints_betti_numbers() {
    let (code, out, _) = cellres(&["resolve", M3]);
    assert_eq!(code, 0);
    assert!(out.starts_with("betti: 1 3 2\n"), "{out}");
    assert!(out.contains("complex: ok") && out.contains("minimal: ok"));
    assert!(cellres(&["resolve", SQUARE]).1.starts_with("betti: 1 6 8 3\n"));
    assert!(cellres(&["resolve", "x1^2*x2"]).1.starts_with("betti: 1 1\n"));
}

#[test]
fn complex_prints_f_vectors() {
    let (code, out, _) = cellres(&["complex", M3]);
    assert_eq!(code, 0);
    assert!(
        out.contains("f(X) = (3,2)\nf(Lambda) = (3,2)\nchi(X) = 1\n"),
        "{out}"
    );
    let out = cellres(&["complex", SQUARE]).1;
    assert!(out.contains("f(X) = (6,8,3)\nf(Lambda) = (6,9,4)\n"), "{out}");
    let out = cellres(&["complex", "x1*x2"]).1;
    assert!(out.contains("f(X) = (1)\n"), "{out}");
}

#[test]
fn verify_passes_and_writes_json() {
    let path = scratch("report.json");
    let (code, out, _) = cellres(&["verify", SQUARE, "--json", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("all checks passed\n"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 10);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn flip_sign_gives_witness() {
    let (code, out, err) = cellres(&["verify", SQUARE, "--flip-sign", "5"]);
    assert_eq!(code, 3);
    assert!(out.contains("FAIL  square-zero: d_"), "{out}");
    assert!(out.contains("FAIL  regular-cw"));
    assert!(err.contains("failed"));
}

#[test]
fn json_outputs() {
    let p = scratch("order.json");
    cellres(&["order", M3, "--json", p.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v, serde_json::json!({"order": [0, 1, 2], "q": [[], [2], [1]]}));

    let p = scratch("res.json");
    cellres(&["resolve", "x1^2", "--json", p.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(
        v,
        serde_json::json!({"ranks": [1, 1], "maps": [{"i": 1, "entries": [{"row": 0, "col": 0, "sign": 1, "mono": [2]}]}]})
    );

    let p = scratch("cx.json");
    cellres(&["complex", M3, "--json", p.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["x"]["cells"].as_array().unwrap().len(), 5);
    assert_eq!(v["lambda"]["facets"].as_array().unwrap().len(), 2);

    let p = scratch("oracle.json");
    cellres(&["oracle", M3, "--json", p.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    // both second syzygies live in multidegree x1x2x3
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 5);
    assert!(entries.contains(&serde_json::json!({"i": 2, "deg": [1, 1, 1], "beta": 2})));
}

#[test]
fn ideal_from_files() {
    let text = scratch("ideal.txt");
    std::fs::write(&text, "x1*x2\nx1*x3\nx2*x3\n").unwrap();
    let (code, out, _) = cellres(&["resolve", text.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("betti: 1 3 2\n"));

    let json = scratch("ideal.json");
    let (code, _, _) = cellres(&["gen", "uniform", "2", "3", "--json", json.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, out, _) = cellres(&["resolve", json.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("betti: 1 3 2\n"));
}

#[test]
fn generators() {
    assert_eq!(
        cellres(&["gen", "stable", "x2^2", "-n", "2"]).1,
        "x1^2, x1*x2, x2^2\n"
    );
    assert_eq!(cellres(&["gen", "sqfree", "x2*x3"]).1, "x1*x2, x1*x3, x2*x3\n");
    assert_eq!(cellres(&["gen", "uniform", "1", "4"]).1, "x1, x2, x3, x4\n");
    assert_eq!(
        cellres(&["gen", "graphic", "1-2,1-3,2-3"]).1,
        "x1*x2, x1*x3, x2*x3\n"
    );
    assert_eq!(cellres(&["gen", "graphic", "1-2,3-4"]).0, 1);
    assert_eq!(cellres(&["gen", "uniform", "3", "8", "--bound", "10"]).0, 1);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["verify", SQUARE],
        vec!["complex", SQUARE],
        vec!["order", SQUARE, "--seed", "7"],
    ] {
        assert_eq!(cellres(&args), cellres(&args));
    }
}
