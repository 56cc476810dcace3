use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn ck(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ck"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn invariants_json_by_default() {
    let out = ck(&["invariants", "5", "3", "2", "3", "1"], "");
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert_eq!(v["total_rank"], 13);
    assert_eq!(v["genus"], 5);
    assert_eq!(v["fibred"], true);
}

#[test]
fn invariants_sweep_emits_one_line_per_tuple() {
    let out = ck(&["invariants", "--sweep", "3", "3"], "");
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&out);
    assert_eq!(lines.len(), constrained_knots::knots::mirror_normal_sweep(3, 3).len());
}

#[test]
fn convert_to_one_one_diagram() {
    let out = ck(&["convert", "5", "3", "2", "3", "1", "--to", "11"], "");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["display"], "W(13,1,5,6)+");
}

#[test]
fn equivalent_reports_certificate() {
    let out = ck(&["equivalent", "7", "2", "2", "3", "1", "7", "4", "2", "3", "1"], "");
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert_eq!(v["verdict"], "Equivalent");
    assert_eq!(v["certificate"]["rewrite"]["relator_identity"], true);
}

#[test]
fn surgery_magic_accepts_negative_slopes() {
    let out = ck(&["surgery-magic", "3", "1", "3/-2", "1/3"], "");
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert_eq!(
        v["classification"]["outcome"]["Knot"],
        serde_json::json!([9, 7, 7, 3, 1])
    );
    assert_eq!(v["lens"], serde_json::json!([9, 7]));
}

#[test]
fn surgery_braid_fill_and_conversion() {
    let out = ck(&["surgery-braid", "4", "3/10", "--fill", "7", "2"], "");
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert_eq!(v["interval"]["class"], "Torus");
    assert!(v["filling"]["Simple"].is_array());

    let out = ck(&["surgery-braid", "--from", "5", "3", "2", "3", "1"], "");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["presentation"]["w"], 12);
}

#[test]
fn census_reads_jsonl_from_stdin() {
    let stdin = concat!(
        "{\"name\":\"m004\",\"p\":1,\"q\":0,\"d\":1,\"alexander\":[[-1,1],[0,-3],[1,1]],\"meridian_exponent\":1}\n",
        "\n",
        "{\"name\":\"u\",\"p\":1,\"q\":0,\"alexander\":[[0,1]],\"meridian_exponent\":1}\n",
    );
    let out = ck(&["census"], stdin);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["name"], "m004");
}

#[test]
fn census_malformed_line_exits_two() {
    let out = ck(&["census"], "{\"name\":\"x\"}\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn verify_iso_table_format() {
    let out = ck(&["--format", "table", "verify-iso", "5", "3", "2", "3", "1"], "");
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().any(|l| l.starts_with("holds") && l.ends_with("true")));
}

#[test]
fn exit_codes() {
    assert_eq!(ck(&["invariants", "5", "3"], "").status.code(), Some(1));
    assert_eq!(ck(&["no-such-command"], "").status.code(), Some(1));
    assert_eq!(
        ck(&["--format", "xml", "invariants", "5", "3", "2", "3", "1"], "")
            .status
            .code(),
        Some(1)
    );
    assert_eq!(ck(&["invariants", "4", "2", "1", "1", "0"], "").status.code(), Some(2));
    assert_eq!(
        ck(&["surgery-magic", "6", "3", "1/2", "1/3"], "").status.code(),
        Some(2)
    );
    assert_eq!(ck(&["--help"], "").status.code(), Some(0));
}
