use std::collections::BTreeSet;
use std::process::{Command, Output};

use cfqkd::analysis::{claim_inventory, reproduce_all};
use serde_json::Value;

fn cfqkd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cfqkd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn simulate_reports_every_key() {
    let doc = json(&cfqkd(&["simulate", "--rounds", "4000", "--seed", "3"]));
    for key in [
        "config", "counts", "qber", "sifted_length", "eve", "analysis", "claims", "version",
    ] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
    assert_eq!(doc["config"]["rounds"], 4000);
    assert_eq!(doc["qber"], 0.0);
    let total: u64 = doc["counts"].as_object().unwrap().values().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(total, 4000);
}

#[test]
fn same_seed_same_bytes() {
    let args = ["simulate", "--attack", "hybrid", "--f", "0.2", "--rounds", "3000", "--seed", "11"];
    assert_eq!(cfqkd(&args).stdout, cfqkd(&args).stdout);
    let other = cfqkd(&["simulate", "--attack", "hybrid", "--f", "0.2", "--rounds", "3000", "--seed", "12"]);
    assert_ne!(cfqkd(&args).stdout, other.stdout);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.cfg");
    std::fs::write(&path, "# session\nprotocol = scqkd\nrounds=2000\nseed = 5\nsample-fraction = 0.5\n").unwrap();
    let p = path.to_str().unwrap();
    let doc = json(&cfqkd(&["simulate", "--config", p, "--rounds", "1500"]));
    assert_eq!(doc["config"]["protocol"], "scqkd");
    assert_eq!(doc["config"]["rounds"], 1500);
    assert_eq!(doc["config"]["seed"], 5);
    assert_eq!(doc["config"]["sample_fraction"], 0.5);
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cfg");
    std::fs::write(&path, "rounds=abc\n").unwrap();
    let out = cfqkd(&["simulate", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    assert_eq!(cfqkd(&["simulate", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(cfqkd(&["simulate", "--attack", "teleport"]).status.code(), Some(2));
    assert_eq!(cfqkd(&["simulate", "--f", "1.5", "--attack", "noisyflip"]).status.code(), Some(2));
    assert_eq!(cfqkd(&["simulate", "--protocol", "pingpong"]).status.code(), Some(2));
    assert_eq!(cfqkd(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = cfqkd(&["analyze", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["analysis"]["p_c"].as_f64().unwrap(), 0.6250000000000001);
}

#[test]
fn sweep_rows_and_formats() {
    let out = cfqkd(&["sweep", "--param", "f", "--from", "0", "--to", "0.3", "--steps", "31"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("f,e,I_AB,I_AE"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 31);
    let crossing = rows.windows(2).position(|w| w[0][2] >= w[0][3] && w[1][2] < w[1][3]).unwrap();
    assert!((rows[crossing][0] - 0.16).abs() < 1e-9);

    let doc = json(&cfqkd(&["sweep", "--param", "s", "--steps", "5", "--to", "1", "--format", "json"]));
    assert_eq!(doc["sweep"]["rows"].as_array().unwrap().len(), 5);
    assert_eq!(doc["sweep"]["columns"], serde_json::json!(["s", "r"]));
}

#[test]
fn reproduce_lists_the_full_inventory() {
    let doc = json(&cfqkd(&["reproduce"]));
    let ids: BTreeSet<String> = doc["claims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap().to_string())
        .collect();
    for id in claim_inventory() {
        assert!(ids.contains(&id), "claim {id} missing");
    }
    let table = reproduce_all().unwrap();
    assert_eq!(table.len(), ids.len());
    assert!(table.iter().filter(|c| c.gating).all(|c| c.pass));
}

#[test]
fn table_format_is_text() {
    let out = cfqkd(&["analyze", "--protocol", "cascade", "--n", "3", "--format", "table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(serde_json::from_str::<Value>(&text).is_err());
    assert!(text.contains("cascade"));
}

#[test]
fn every_protocol_runs_a_session() {
    for (protocol, attacks) in [
        ("noh09", &["none", "noiseless", "noisyflip", "interceptresend", "hybrid"][..]),
        ("scqkd", &["none", "noiseless"][..]),
        ("guoshi", &["none", "noiseless"][..]),
        ("cascade", &["none", "noiseless"][..]),
        ("bb84mod", &["none", "noiseless"][..]),
    ] {
        for attack in attacks {
            for n in ["1", "3"] {
                let args = ["simulate", "--protocol", protocol, "--attack", attack, "--n", n, "--rounds", "3000"];
                let doc = json(&cfqkd(&args));
                assert_eq!(doc["config"]["protocol"], *protocol);
            }
        }
    }
}
