use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use adjminor::encoding::{format_collection, parse_collection};
use adjminor_cli::records::{
    CensusRow, ClassifyRecord, DtRecord, EnumerateRecord, GroebnerRecord, MinimalPrimesRecord,
    RadicalRecord,
};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

const SQUARE: &str = "{{{1,1},{2,2}},{{2,1},{3,2}},{{1,2},{2,3}},{{2,2},{3,3}}}";
const L_TROMINO: &str = "{{{1,1},{2,2}},{{2,1},{3,2}},{{1,2},{2,3}}}";

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_adjminor"))
        .args(args)
        .env_remove("ADJMINOR_BUDGET")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn adjminor");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &str) -> Vec<Value> {
    let out = run(args, stdin);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON object per line"))
        .collect()
}

fn code(args: &[&str], stdin: &str) -> i32 {
    run(args, stdin).status.code().expect("exit code")
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn enumerate_emits_reparsable_collections() {
    let recs = ok(&["enumerate", "--rank", "4", "--up-to-symmetry"], "");
    assert_eq!(recs.len(), 22);
    for r in &recs {
        let s = r["collection"].as_str().unwrap();
        let c = parse_collection(s).unwrap();
        assert_eq!(format_collection(&c), s);
        assert_eq!(r["rank"], 4);
    }
    assert_eq!(ok(&["enumerate", "--rank", "3"], "").len(), 20);
    assert_eq!(
        ok(
            &[
                "enumerate",
                "--rank",
                "4",
                "--up-to-symmetry",
                "--filter",
                "non-radical"
            ],
            ""
        )
        .len(),
        2
    );
}

#[test]
fn enumerate_csv_has_a_header() {
    let out = run(
        &[
            "enumerate",
            "--rank",
            "2",
            "--up-to-symmetry",
            "--format",
            "csv",
        ],
        "",
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "collection,rank");
    assert_eq!(lines.len(), 3);
}

#[test]
fn census_table() {
    let rows = ok(&["reproduce", "--table", "census"], "");
    let counts: Vec<u64> = rows
        .iter()
        .map(|r| r["collections"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, [2, 5, 22, 94, 524, 3031]);
    let csv = run(
        &[
            "--format",
            "csv",
            "reproduce",
            "--table",
            "census",
            "--rank-max",
            "3",
        ],
        "",
    );
    assert_eq!(
        String::from_utf8(csv.stdout).unwrap(),
        "rank,collections,non_radical,unknown\n2,2,,\n3,5,,\n"
    );
}

#[test]
fn nonradical_table() {
    let rows = ok(&["reproduce", "--table", "nonradical"], "");
    let bad: Vec<u64> = rows
        .iter()
        .map(|r| r["non_radical"].as_u64().unwrap())
        .collect();
    assert_eq!(bad, [0, 0, 2, 9]);
    assert!(rows.iter().all(|r| r["unknown"] == 0));
}

#[test]
fn dt_table() {
    for t in ["2", "3"] {
        let r = &ok(&["reproduce", "--table", "prop44", "--t", t], "")[0];
        assert_eq!(r["basis_matches"], true);
        assert_eq!(r["witness_reduces_to_zero"], false);
        assert_eq!(r["witness_square_reduces_to_zero"], true);
        assert_eq!(r["complete_intersection"], true);
        assert_eq!(r["minimally_non_radical"], true);
        assert_eq!(
            r["min_height"].as_u64().unwrap(),
            t.parse::<u64>().unwrap() + 4
        );
        assert!(r["order"]
            .as_str()
            .unwrap()
            .starts_with("lex:a0>a1>b0>b1>b2>c"));
    }
    assert_eq!(ok(&["reproduce", "--table", "prop44"], "")[0]["t"], 2);
}

#[test]
fn example_tables() {
    let recs = ok(&["reproduce", "--table", "remark26"], "");
    assert_eq!(recs[0]["primes"].as_array().unwrap().len(), 4);
    assert_eq!(recs[1]["unmixed"], true);
    assert_eq!(recs[1]["radical"]["verdict"], "radical");
    let recs = ok(&["reproduce", "--table", "remark38"], "");
    let heights: Vec<u64> = recs[0]["primes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["height"].as_u64().unwrap())
        .collect();
    assert!(heights.contains(&4) && heights.contains(&5));
    assert_eq!(recs[1]["unmixed"], false);
    assert_eq!(recs[1]["square_tetromino"], false);
    assert_eq!(recs[1]["x_pentomino"], false);
}

#[test]
fn classify_empty_collection() {
    let r = &ok(&["classify", "-"], "{}\n")[0];
    assert_eq!(r["rank"], 0);
    assert_eq!(r["unmixed"], true);
    assert_eq!(r["radical"]["verdict"], "radical");
}

#[test]
fn classify_with_primes() {
    let recs = ok(
        &["classify", "--primes", "-"],
        &format!("# comment\n\n{L_TROMINO}\n{SQUARE}\n"),
    );
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[0]["minimal_primes"].as_array().unwrap().len(), 4);
    assert_eq!(recs[1]["unmixed"], false);
    assert_eq!(recs[1]["square_tetromino"], true);
    assert_eq!(recs[1]["radical"]["verdict"], "non-radical");
    assert!(recs[1]["radical"]["certificate"].is_object());
}

#[test]
fn radical_methods() {
    let input = format!("{SQUARE}\n{L_TROMINO}\n");
    for method in ["auto", "exact", "witness", "screen"] {
        let recs = ok(&["radical", "--method", method, "-"], &input);
        assert_eq!(recs[0]["verdict"], "non-radical", "{method}");
        let second = recs[1]["verdict"].as_str().unwrap();
        match method {
            "auto" | "exact" => assert_eq!(second, "radical"),
            _ => assert_eq!(second, "unknown"),
        }
    }
    let w = &ok(&["radical", "--method", "witness", "-"], SQUARE)[0];
    assert_eq!(w["certificate"]["kind"], "witness");
    assert_eq!(w["certificate"]["power"], 2);
}

#[test]
fn minimal_primes_records() {
    let r = &ok(&["minimal-primes", "-"], L_TROMINO)[0];
    let primes = r["primes"].as_array().unwrap();
    assert_eq!(primes.len(), 4);
    assert!(primes.iter().all(|p| p["height"] == 3));
    assert!(primes
        .iter()
        .all(|p| !p["generators"].as_array().unwrap().is_empty()));
}

#[test]
fn groebner_orders() {
    let r = &ok(
        &[
            "groebner",
            "-",
            "--order",
            "degrevlex:1,1>2,1>1,2>2,2>3,1>1,3>3,2>2,3>3,3",
        ],
        SQUARE,
    )[0];
    assert_eq!(r["basis"].as_array().unwrap().len(), 7);
    let dt = ok(&["reproduce", "--table", "prop44", "--t", "2"], "")[0]["collection"]
        .as_str()
        .unwrap()
        .to_string();
    let spec = "lex:a0>a1>b0>b1>b2>c_{t+1}>c_{t+2}>d0>d1>d2>c0>c1>c2>e0>e1";
    let r = &ok(&["groebner", "-", "--order", spec], &dt)[0];
    assert_eq!(r["basis"].as_array().unwrap().len(), 8);
}

fn round_trip<T: DeserializeOwned + Serialize + PartialEq + std::fmt::Debug>(
    args: &[&str],
    stdin: &str,
) -> usize {
    let out = run(args, stdin);
    assert!(out.status.success(), "{args:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines() {
        let rec: T = serde_json::from_str(line).unwrap_or_else(|e| panic!("{args:?}: {e}: {line}"));
        assert_eq!(serde_json::to_string(&rec).unwrap(), line);
        let again: T = serde_json::from_str(&serde_json::to_string(&rec).unwrap()).unwrap();
        assert_eq!(again, rec);
    }
    text.lines().count()
}

#[test]
fn records_round_trip() {
    let input = format!("{SQUARE}\n{L_TROMINO}\n{{}}\n");
    assert_eq!(
        round_trip::<ClassifyRecord>(&["classify", "--primes", "-"], &input),
        3
    );
    assert_eq!(
        round_trip::<ClassifyRecord>(&["--timing", "classify", "-"], &input),
        3
    );
    assert_eq!(
        round_trip::<MinimalPrimesRecord>(&["minimal-primes", "-"], &input),
        3
    );
    for method in ["auto", "exact", "witness", "screen"] {
        assert_eq!(
            round_trip::<RadicalRecord>(&["radical", "--method", method, "-"], &input),
            3
        );
    }
    assert_eq!(
        round_trip::<GroebnerRecord>(
            &[
                "groebner",
                "-",
                "--order",
                "lex:1,1>2,1>1,2>2,2>3,1>1,3>3,2>2,3>3,3"
            ],
            SQUARE
        ),
        1
    );
    assert_eq!(
        round_trip::<EnumerateRecord>(&["enumerate", "--rank", "3"], ""),
        20
    );
    assert_eq!(
        round_trip::<CensusRow>(
            &["reproduce", "--table", "nonradical", "--rank-max", "4"],
            ""
        ),
        3
    );
    assert_eq!(
        round_trip::<DtRecord>(&["reproduce", "--table", "prop44", "--t", "3"], ""),
        1
    );
    for line in String::from_utf8(run(&["enumerate", "--rank", "4"], "").stdout)
        .unwrap()
        .lines()
    {
        let rec: EnumerateRecord = serde_json::from_str(line).unwrap();
        let c = parse_collection(&rec.collection).unwrap();
        assert_eq!(format_collection(&c), rec.collection);
    }
}

#[test]
fn output_is_stable_across_runs() {
    let input = temp_file(
        "stable.txt",
        &format!("{SQUARE}\n{L_TROMINO}\n{{{{{{0,0}},{{1,1}}}}}}\n"),
    );
    let input = input.to_str().unwrap();
    for args in [
        vec!["classify", "--primes", input],
        vec!["radical", input],
        vec!["--format", "csv", "minimal-primes", input],
    ] {
        let a = run(&args, "");
        let b = run(&args, "");
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let timed = ok(&["--timing", "radical", input], "");
    assert!(timed.iter().all(|r| r["elapsed_ms"].is_number()));
    assert!(ok(&["radical", input], "")
        .iter()
        .all(|r| r.get("elapsed_ms").is_none()));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["classify", "-"], "{{{1,1},{3,3}}}\n"), 2);
    assert_eq!(code(&["classify", "-"], "{{{1,1},{2,2}\n"), 2);
    assert_eq!(
        code(&["groebner", "-", "--order", "lex:1,1>9,9"], SQUARE),
        2
    );
    let d4 = ok(&["reproduce", "--table", "prop44", "--t", "4"], "")[0]["collection"]
        .as_str()
        .unwrap()
        .to_string();
    assert_eq!(
        code(
            &["radical", "--method", "exact", "--budget", "0.000001", "-"],
            &d4
        ),
        3
    );
    assert_eq!(code(&["reproduce", "--table", "prop44", "--t", "1"], ""), 4);
    assert_eq!(code(&["radical", "/nonexistent/input.txt"], ""), 66);
    assert_eq!(code(&["frobnicate"], ""), 64);
    assert_eq!(code(&["enumerate", "--rank", "3", "--bogus"], ""), 64);
    assert_eq!(code(&["enumerate", "--rank", "9"], ""), 3);
    assert_eq!(code(&["radical", "--budget", "-1", "-"], SQUARE), 64);
    assert_eq!(code(&["--help"], ""), 0);
}

#[test]
fn budget_from_environment() {
    let d4 = ok(&["reproduce", "--table", "prop44", "--t", "4"], "")[0]["collection"]
        .as_str()
        .unwrap()
        .to_string();
    let mut child = Command::new(env!("CARGO_BIN_EXE_adjminor"))
        .args(["radical", "--method", "exact", "-"])
        .env("ADJMINOR_BUDGET", "0.000001")
        .stdin(Stdio::piped())
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(d4.as_bytes())
        .unwrap();
    assert_eq!(child.wait().unwrap().code(), Some(3));
}

#[test]
fn validate_configs() {
    let recs = ok(&["validate-configs"], "");
    assert_eq!(recs.len(), 18);
    assert!(recs.iter().all(|r| r["minimally_non_radical"] == true));
}
