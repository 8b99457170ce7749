//! Command-line behaviour: byte-identical JSON across runs, exit codes, and
//! the file formats accepted by `curvecount` and `zeta`.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gf2verify"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn strip_timing(v: &mut Value) {
    if let Value::Object(map) = v {
        map.remove("wall_time_ms");
        map.remove("elapsed_ms");
        map.values_mut().for_each(strip_timing);
    } else if let Value::Array(items) = v {
        items.iter_mut().for_each(strip_timing);
    }
}

fn json_without_timing(args: &[&str]) -> String {
    let (code, out) = run(args);
    assert!(code == 0, "{args:?} exited {code}: {out}");
    let mut v: Value = serde_json::from_str(&out).unwrap();
    strip_timing(&mut v);
    serde_json::to_string(&v).unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gf2verify-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn json_is_deterministic() {
    let commands: [&[&str]; 9] = [
        &["expsum", "--m", "9", "--k", "2", "--sum", "Kp", "--json"],
        &[
            "conjectures",
            "--m-range",
            "4-9",
            "--k-range",
            "1-3",
            "--json",
        ],
        &["corrdist", "--m", "9", "--k", "2", "--json"],
        &["a1", "--m", "7", "--k", "2", "--json"],
        &["weights", "--m", "7", "--json"],
        &["curvecount", "--curve", "p3", "--s", "5", "--json"],
        &["zeta", "--l-poly", "L1", "--s-max", "12", "--json"],
        &["dm-check", "--bound", "60", "--json"],
        &["verify-all", "--max-m", "7", "--max-s", "4", "--json"],
    ];
    for args in commands {
        let a = json_without_timing(args);
        let b = bin()
            .args(args)
            .env("GF2VERIFY_THREADS", "3")
            .output()
            .unwrap();
        let mut v: Value = serde_json::from_slice(&b.stdout).unwrap();
        strip_timing(&mut v);
        assert_eq!(a, serde_json::to_string(&v).unwrap(), "{args:?}");
    }
}

#[test]
fn json_schema_fields() {
    let (_, out) = run(&["a1", "--m", "7", "--k", "3", "--json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "a1");
    assert_eq!(v["params"]["m"], 7);
    assert!(v["wall_time_ms"].is_u64());
    for row in v["results"].as_array().unwrap() {
        let verdict = row["verdict"].as_str().unwrap();
        assert!(["pass", "fail", "recorded"].contains(&verdict));
        assert_eq!(verdict == "recorded", row["expected"].is_null());
        assert!(row.get("name").is_some() && row.get("observed").is_some());
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["dm-check"]).0, 0);
    // precondition: 3 divides 2^4 - 1
    assert_eq!(run(&["corrdist", "--m", "4", "--d", "3"]).0, 2);
    assert_eq!(run(&["a1", "--m", "11"]).0, 0);
    let out = bin()
        .args(["dm-check"])
        .env("GF2VERIFY_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // an overridden reduction that is not primitive is rejected
    let cfg = scratch("bad.toml", "[reduction]\n4 = \"0x1f\"\n");
    assert_eq!(
        run(&[
            "expsum",
            "--m",
            "4",
            "--sum",
            "K",
            "--config",
            cfg.to_str().unwrap()
        ])
        .0,
        2
    );
}

#[test]
fn csv_has_one_line_per_row() {
    let (code, out) = run(&["weights", "--m", "7", "--k", "1", "--csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "name,expected,observed,verdict,elapsed_ms");
    assert!(lines.contains(&"A_64,8255,8255,pass,"));
}

#[test]
fn file_inputs() {
    // the genus-1 Kloosterman curve written out by hand
    let curve = scratch(
        "k.curve",
        "# x^2z + z^3 + xy^2 + xyz\n2 0 1\n0 0 3\n1 2 0\n1 1 1\n",
    );
    let (code, out) = run(&[
        "curvecount",
        "--curve",
        curve.to_str().unwrap(),
        "--s",
        "3",
        "--json",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let count = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["name"] == "count")
        .unwrap()["observed"]
        .clone();
    // 2^3 + 1 - P_3(2t^2 + t + 1) = 9 - 5
    assert_eq!(count, 4);

    let lpoly = scratch("l4.lpoly", "# 4t^4 + 2t^3 + t + 1\n1 1 0 2 4\n");
    let (code, out) = run(&[
        "zeta",
        "--l-poly",
        lpoly.to_str().unwrap(),
        "--s-max",
        "2",
        "--json",
    ]);
    assert_eq!(code, 0, "{out}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["results"][0]["observed"], "4t^4 + 2t^3 + t + 1");
}
