use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn gwf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwf")).args(args).output().expect("spawn gwf")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "gwf failed: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gwf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_passes_and_reports() {
    let out = gwf(&["verify", "orbit-characters", "gggr-ft-counting", "--builtin", "gl2-z2", "--q", "5"]);
    let v = json_of(&out);
    assert_eq!(v["reportVersion"], 1);
    assert_eq!(v["command"], "verify");
    assert_eq!(v["algebra"]["groupOrder"], 16);
    let suites = v["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 2);
    assert!(suites.iter().all(|s| s["passed"] == true));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gggr-ft-counting: pass"));
}

#[test]
fn wavefront_of_regular_semisimple_character() {
    let nmap = json_of(&gwf(&["nmap", "--builtin", "gl2", "--q", "5"]));
    let row = nmap["result"]["orbits"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["nMap"] == "(2)" && r["nilpotent"].as_array().unwrap().iter().all(|c| c == 0) && r["semisimple"] != serde_json::json!([0, 0, 0, 0]))
        .expect("a regular semisimple orbit")
        .clone();
    let rep = row["rep"].to_string();
    let v = json_of(&gwf(&["wavefront", "--builtin", "gl2", "--q", "5", "--function", "chi", "--orbit", &rep]));
    let parts: Vec<&str> = v["result"]["wavefront"].as_array().unwrap().iter().map(|o| o["partition"].as_str().unwrap()).collect();
    assert_eq!(parts, ["(1,1)", "(2)"]);
    assert_eq!(row["attained"], true);
}

#[test]
fn wavefront_of_constant_function_is_zero_orbit() {
    let v = json_of(&gwf(&["wavefront", "--builtin", "sl2", "--q", "5", "--function", "one"]));
    let wf = v["result"]["wavefront"].as_array().unwrap();
    assert_eq!(wf.len(), 1);
    assert_eq!(wf[0]["rep"], 0);
}

#[test]
fn cone_always_contains_zero() {
    let v = json_of(&gwf(&["cone", "--builtin", "sl2", "--q", "5", "--orbits", "0"]));
    let cone = v["result"]["cone"].as_array().unwrap();
    assert_eq!(cone.len(), 1);
    assert_eq!(cone[0]["rep"], 0);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(gwf(&["verify", "no-such-suite", "--builtin", "sl2", "--q", "5"]).status.code(), Some(1));
    assert_eq!(gwf(&["orbits", "--builtin", "sl2"]).status.code(), Some(1));
    assert_eq!(gwf(&["orbits", "--builtin", "nope", "--q", "5"]).status.code(), Some(1));
    assert_eq!(gwf(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(gwf(&["--help"]).status.code(), Some(0));
}

#[test]
fn built_files_load_back() {
    let a = scratch("alg.json");
    let g = scratch("grp.json");
    let built = json_of(&gwf(&[
        "build", "--family", "gl", "--n", "2", "--q", "5", "--weights", "0,1", "--m", "2",
        "--algebra-out", a.to_str().unwrap(), "--group-out", g.to_str().unwrap(),
    ]));
    let from_builtin = json_of(&gwf(&["orbits", "--builtin", "gl2-z2", "--q", "5", "--degree", "1"]));
    let loaded = json_of(&gwf(&["orbits", "--algebra", a.to_str().unwrap(), "--group", g.to_str().unwrap(), "--degree", "1"]));
    assert_eq!(built["algebra"]["groupOrder"], 16);
    assert_eq!(loaded["result"], from_builtin["result"]);
    let all = gwf(&["verify", "all", "--algebra", a.to_str().unwrap(), "--group", g.to_str().unwrap()]);
    assert!(all.status.success(), "{}", String::from_utf8_lossy(&all.stderr));
}

#[test]
fn out_flag_writes_file() {
    let path = scratch("gggr.json");
    let out = gwf(&["gggr", "--builtin", "sl2", "--q", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "gggr");
    assert!(!v["result"]["entries"].as_array().unwrap().is_empty());
}

#[test]
fn reports_identical_across_thread_counts() {
    let run = |t: &str| gwf(&["verify", "gggr-properties", "wavefront-cone", "--builtin", "sl2", "--q", "7", "--threads", t]).stdout;
    let one = run("1");
    assert!(!one.is_empty());
    assert_eq!(one, run("8"));
}

#[test]
fn timings_are_opt_in() {
    let plain = json_of(&gwf(&["orbits", "--builtin", "sl2", "--q", "3"]));
    assert!(plain.get("timings").is_none());
    let timed = json_of(&gwf(&["orbits", "--builtin", "sl2", "--q", "3", "--timings"]));
    assert!(timed["timings"].is_object());
}
