use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ugen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ugen")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("report is json")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn factorize_examples() {
    let o = ugen(&["factorize", "uni1", "--m", "5", "(1 2)(5 6)"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["results"]["letters"].as_array().unwrap().len(), 5);
    assert_eq!(r["results"]["valid"], true);
    assert_eq!(r["summary"]["failures"], 0);

    let o = ugen(&["factorize", "brenner", "--n", "2", "(1 2 3)"]);
    assert_eq!(code(&o), 0);
    let letters = json(&o)["results"]["letters"].as_array().unwrap().clone();
    assert_eq!(letters.len(), 4);
    assert!(letters.iter().all(|l| l["tag"] == "class"));

    for args in [
        vec!["factorize", "uni2", "--n", "1", "(1 2 3)"],
        vec!["factorize", "sl-step", "3,2;0 1 0|0 0 1|1 0 0"],
        vec!["factorize", "sp-word", "--d", "2", "--q", "5", "2"],
        vec!["factorize", "su3", "--q", "3", "5"],
        vec!["factorize", "torus", "--q", "3", "--n", "1"],
    ] {
        let o = ugen(&args);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(json(&o)["results"]["valid"], true);
    }
}

#[test]
fn usage_errors_exit_two() {
    let o = ugen(&["factorize", "uni1", "--m", "5", "(1 2 3"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
    assert_eq!(code(&ugen(&["factorize", "nope", "()"])), 2);
    assert_eq!(code(&ugen(&["factorize", "uni1", "(1 2 3)"])), 2);
    // odd target
    assert_eq!(code(&ugen(&["factorize", "uni1", "--m", "5", "(1 2)"])), 2);
    assert_eq!(code(&ugen(&["verify", "uni1", "--m", "7..3"])), 2);
    assert_eq!(code(&ugen(&["frobnicate"])), 2);
}

#[test]
fn sweeps() {
    let o = ugen(&["verify", "uni1", "--m", "3..5"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["summary"]["cases"], 12 + 60 + 360);
    assert_eq!(r["results"].as_array().unwrap().len(), 3);

    let o = ugen(&["verify", "sp-word", "--d", "2", "--q", "5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["summary"]["cases"], 4);

    let o = ugen(&["verify", "saxl", "--q", "2", "--n", "1", "--bound", "5"]);
    assert_eq!(code(&o), 0);
    let d = &json(&o)["results"][0]["details"];
    assert!(d["radius"].as_u64().unwrap() <= 5);
    assert_eq!(d["profile"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).sum::<u64>(), 20160);

    // too large without the big profile
    assert_eq!(code(&ugen(&["verify", "saxl", "--q", "3"])), 3);
}

#[test]
fn reports_are_byte_stable_and_timing_is_opt_in() {
    let args = ["verify", "sl-double", "--d", "1", "--q", "2", "--seed", "9"];
    let a = ugen(&args);
    let b = ugen(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a).get("timing_ms").is_none());
    let mut timed = args.to_vec();
    timed.push("--timing");
    assert!(json(&ugen(&timed)).get("timing_ms").is_some());
}

#[test]
fn witnesses_revalidate_and_tampering_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let good = path(dir.path(), "w.json");
    let o = ugen(&["factorize", "uni2", "--n", "1", "(1 2 3 4 5)", "--out", &good]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert_eq!(code(&ugen(&["check", &good])), 0);

    let mut r: Value = serde_json::from_str(&std::fs::read_to_string(&good).unwrap()).unwrap();
    r["results"]["letters"][0]["letter"] = Value::String("(1 2 3)".into());
    let bad = path(dir.path(), "bad.json");
    std::fs::write(&bad, r.to_string()).unwrap();
    let o = ugen(&["check", &bad]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["results"]["valid"], false);

    // a theta letter relabelled as a gamma letter
    let mut r: Value = serde_json::from_str(&std::fs::read_to_string(&good).unwrap()).unwrap();
    r["results"]["letters"][1]["tag"] = Value::String("gamma".into());
    std::fs::write(&bad, r.to_string()).unwrap();
    assert_eq!(code(&ugen(&["check", &bad])), 1);

    std::fs::write(&bad, "{").unwrap();
    assert_eq!(code(&ugen(&["check", &bad])), 2);
}

#[test]
fn cover_commands() {
    let dir = tempfile::tempdir().unwrap();
    let a = path(dir.path(), "a.json");
    let b = path(dir.path(), "b.json");
    for (f, seed) in [(&a, "1"), (&b, "2")] {
        let o = ugen(&["cover", "random", "sym(4)", "alt(5)", "--count", "1", "--seed", seed, "--out", f]);
        assert_eq!(code(&o), 0);
    }
    let o = ugen(&["cover", "star", &a, &b]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    let sizes = r["results"]["sizes"].as_array().unwrap();
    let bound = r["results"]["bound"].as_array().unwrap();
    assert!(sizes.iter().zip(bound).all(|(s, b)| s.as_u64() <= b.as_u64()));

    // the star output is itself a loadable cover
    let ab = path(dir.path(), "ab.json");
    std::fs::write(&ab, o.stdout).unwrap();
    assert_eq!(code(&ugen(&["cover", "closure", &ab, "--depth", "1"])), 0);

    let covers = path(dir.path(), "covers.json");
    let o = ugen(&["cover", "random", "sym(4)", "sym(5)", "sym(10)", "--count", "3", "--out", &covers]);
    assert_eq!(code(&o), 0);
    let o = ugen(&["cover", "escape", &covers, "--depth", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&o);
    assert_eq!(r["results"]["verified"], true);
    assert_eq!(r["results"]["g"].as_array().unwrap().len(), 3);

    let tiny = path(dir.path(), "tiny.json");
    std::fs::write(&tiny, r#"{"window": ["cyclic(2)"], "sets": [["0"]]}"#).unwrap();
    let o = ugen(&["cover", "escape", &tiny]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("index 0"));

    let broken = path(dir.path(), "broken.json");
    std::fs::write(&broken, r#"{"window": ["sym(3)"], "sets": [["(1 2 3)"]]}"#).unwrap();
    assert_eq!(code(&ugen(&["cover", "closure", &broken])), 2);

    let o = ugen(&["cover", "assoc", "alt(4)"]);
    assert_eq!(code(&o), 0);
    assert_ne!(json(&o)["results"]["left_sizes"], json(&o)["results"]["right_sizes"]);
}
