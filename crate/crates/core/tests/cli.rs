use std::path::{Path, PathBuf};
use std::process::Command;

use riskorder::cli::{run, Context, Output};
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn ctx() -> Context {
    Context {
        stdin: Vec::new(),
        workdir: std::env::temp_dir(),
        threads: None,
    }
}

fn cli(args: &[&str]) -> Output {
    let mut argv = vec!["riskorder"];
    argv.extend_from_slice(args);
    run(&argv, &ctx())
}

fn on(args: &[&str], file: &str) -> Output {
    let path = fixture(file);
    let mut a = args.to_vec();
    a.push(path.to_str().unwrap());
    cli(&a)
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout_str()))
}

#[test]
fn e1_all_routes_hold() {
    let out = on(&["check-lra", "--method", "all"], "e1.json");
    assert_eq!(out.code, 0, "{}", out.stderr_str());
    assert_eq!(out.stdout_str(), "definition: holds\npratt: holds\ntransform: holds\n");
}

#[test]
fn e3_prints_lottery_witness() {
    let out = on(&["check-lra", "--method", "definition"], "e3.json");
    assert_eq!(out.code, 1);
    let text = out.stdout_str();
    assert!(text.contains("p = (a: 1/2, c: 1/2)"), "{text}");
    assert!(text.contains("u(b) = 1 >= E_p[u] = 1 but v(b) = 1 < E_p[v] = 2"), "{text}");

    let v = json_of(&on(&["--json", "check-lra", "--method", "definition"], "e3.json"));
    assert_eq!(v["witness"]["kind"], "lottery");
    assert_eq!(v["witness"]["y"], "b");
    assert_eq!(v["witness"]["p"]["a"], "1/2");
    assert_eq!(v["witness"]["p"]["c"], "1/2");
}

#[test]
fn lottery_sum_bug_is_an_input_error() {
    let out = on(&["check-lra"], "lottery_sum_bug.json");
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_empty());
    assert!(out.stderr_str().contains("weights sum to 9/10"));
}

#[test]
fn attached_lottery_is_spot_checked() {
    let out = on(&["check-lra", "--method", "pratt"], "e3_lottery.json");
    assert_eq!(out.code, 1);
    assert!(out.stdout_str().contains("E_p[u] = 1, E_p[v] = 2"));
    assert!(out.stdout_str().contains("broken at y in {b}"));
}

#[test]
fn malformed_inputs_exit_two_without_panicking() {
    for file in ["float_value.json", "cycle_param.json"] {
        let out = on(&["check-lra"], file);
        assert_eq!(out.code, 2, "{file}");
    }
    let garbage: &[&[u8]] = &[b"", b"[]", b"{", b"{\"u\": 1}", b"\xff\xfe", b"{\"alternatives\":[\"a\"],\"u\":{\"a\":\"1/0\"},\"v\":{\"a\":0}}"];
    for bytes in garbage {
        let c = Context { stdin: bytes.to_vec(), ..ctx() };
        let out = run(&["riskorder", "check-lra", "-"], &c);
        assert_eq!(out.code, 2, "{:?}", String::from_utf8_lossy(bytes));
    }
    assert_eq!(cli(&["check-lra", "/no/such/file.json"]).code, 2);
    assert_eq!(cli(&["frobnicate"]).code, 2);
    assert_eq!(cli(&[]).code, 2);
}

#[test]
fn flags_are_validated() {
    assert_eq!(on(&["check-lra", "--denom-bound", "4"], "e1.json").code, 2);
    assert_eq!(on(&["check-lra", "--method", "pratt", "--denom-bound", "4"], "e1.json").code, 2);
    assert_eq!(on(&["check-lra", "--method", "grid", "--denom-bound", "0"], "e1.json").code, 2);
    assert_eq!(on(&["check-lra", "--method", "grid", "--denom-bound", "4"], "e1.json").code, 0);
    assert_eq!(on(&["check-aggregate", "--denom-bound", "4"], "srm_family.json").code, 2);
    assert_eq!(cli(&["selftest", "--instances", "0"]).code, 2);
    assert_eq!(cli(&["gen-random", "--alternatives", "9"]).code, 2);
    assert_eq!(cli(&["gen-random", "--positive"]).code, 2);
}

#[test]
fn wrong_instance_kind_is_rejected() {
    assert_eq!(on(&["check-lra"], "srm_family.json").code, 2);
    assert_eq!(on(&["check-sc"], "e1.json").code, 2);
    assert_eq!(on(&["check-proposition"], "e1.json").code, 2);
}

#[test]
fn build_transform_for_e1() {
    let v = json_of(&on(&["--json", "build-transform"], "e1.json"));
    assert_eq!(v["knots"], serde_json::json!([[0, 0], [1, 1], [2, 4]]));
    let out = on(&["build-transform"], "e2.json");
    assert_eq!(out.code, 1);
    assert!(out.stdout_str().contains("v(b) = 0 <= v(a) = 1"));
}

#[test]
fn srm_fixture() {
    assert_eq!(on(&["check-sc"], "srm_family.json").code, 0);
    assert_eq!(on(&["check-srm"], "srm_family.json").code, 1);
    let v = json_of(&on(&["--json", "check-aggregate"], "srm_family.json"));
    assert_eq!(v["holds"], false);
    assert_eq!(v["witness"]["weights"], serde_json::json!({"phi": "1/2", "psi": "1/2"}));
    let grid = on(&["check-aggregate", "--method", "grid"], "srm_family.json");
    assert_eq!(grid.code, 1);
}

#[test]
fn aggregate_accepts_param_instances() {
    assert_eq!(on(&["check-aggregate"], "e1_param.json").code, 0);
    let v = json_of(&on(&["--json", "check-aggregate"], "reversal_param.json"));
    assert_eq!(v["per_y"][0]["y"], "a");
    assert_eq!(v["per_y"][1]["verdict"]["holds"], false);
}

#[test]
fn proposition_on_fixtures() {
    let out = on(&["check-proposition"], "e1_param.json");
    assert_eq!(out.code, 0);
    assert!(out.stdout_str().ends_with("agree: yes\n"));
    let v = json_of(&on(&["--json", "check-proposition"], "reversal_param.json"));
    assert_eq!(v["agree"], true);
    assert_eq!(v["side_a"]["holds"], false);
    assert_eq!(v["side_b"]["holds"], false);
}

#[test]
fn json_and_text_report_the_same_verdict() {
    let cases: &[(&[&str], &str)] = &[
        (&["check-lra", "--method", "definition"], "e1.json"),
        (&["check-lra", "--method", "pratt"], "e2.json"),
        (&["check-lra", "--method", "transform"], "e3.json"),
        (&["check-lra", "--method", "grid"], "e3.json"),
        (&["check-lra", "--method", "all"], "e3.json"),
        (&["check-sc"], "srm_family.json"),
        (&["check-srm"], "srm_family.json"),
        (&["check-aggregate"], "srm_family.json"),
        (&["check-aggregate"], "reversal_param.json"),
        (&["check-proposition"], "e1_param.json"),
        (&["check-proposition"], "reversal_param.json"),
        (&["build-transform"], "e1.json"),
        (&["build-transform"], "e3.json"),
    ];
    for (args, file) in cases {
        let text = on(args, file);
        let mut jargs = vec!["--json"];
        jargs.extend_from_slice(args);
        let json = on(&jargs, file);
        assert_eq!(text.code, json.code, "{args:?} {file}");
        let v = json_of(&json);
        let holds = v.get("holds").and_then(Value::as_bool).unwrap_or_else(|| v["agree"].as_bool().unwrap() && v["side_a"]["holds"].as_bool().unwrap());
        assert_eq!(holds, text.code == 0, "{args:?} {file}");
        let first = text.stdout_str().lines().next().unwrap();
        assert_eq!(first.ends_with("holds"), holds, "{first}");
    }
}

#[test]
fn identical_invocations_give_identical_bytes() {
    let a = on(&["--json", "check-proposition"], "reversal_param.json");
    let b = on(&["--json", "check-proposition"], "reversal_param.json");
    assert_eq!(a, b);
    let g1 = cli(&["gen-random", "--seed", "9", "--alternatives", "5", "--params", "4"]);
    let g2 = cli(&["gen-random", "--seed", "9", "--alternatives", "5", "--params", "4"]);
    assert_eq!(g1.code, 0);
    assert_eq!(g1, g2);
}

#[test]
fn generated_instances_round_trip_through_check_proposition() {
    for seed in 0..5 {
        let s = seed.to_string();
        let gen = cli(&["gen-random", "--seed", &s, "--density", "1", "--positive"]);
        assert_eq!(gen.code, 0);
        let c = Context { stdin: gen.stdout.clone(), ..ctx() };
        let out = run(&["riskorder", "check-proposition", "-"], &c);
        assert_eq!(out.code, 0, "seed {seed}: {}", out.stdout_str());
    }
}

#[test]
fn selftest_single_instance_passes() {
    for seed in [0, 1, 77, u64::MAX] {
        let s = seed.to_string();
        assert_eq!(cli(&["selftest", "--instances", "1", "--seed", &s]).code, 0);
    }
}

#[test]
fn selftest_is_thread_count_independent() {
    let dir = tempfile::tempdir().unwrap();
    let mut outs = Vec::new();
    for threads in [Some(1), Some(3), None] {
        let c = Context { workdir: dir.path().to_path_buf(), threads, ..ctx() };
        outs.push(run(&["riskorder", "--json", "selftest", "--instances", "60", "--seed", "4"], &c));
    }
    assert_eq!(outs[0].code, 0);
    assert!(outs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn injected_fault_exits_three_with_reproducer() {
    let dir = tempfile::tempdir().unwrap();
    let c = Context { workdir: dir.path().to_path_buf(), ..ctx() };
    let out = run(&["riskorder", "selftest", "--instances", "30", "--seed", "5", "--inject-fault", "flip-srm"], &c);
    assert_eq!(out.code, 3);
    let dumps: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert!(!dumps.is_empty());
    for path in dumps {
        let c = Context { workdir: dir.path().to_path_buf(), ..ctx() };
        let replay = run(&["riskorder", "check-proposition", path.to_str().unwrap()], &c);
        assert!(replay.code == 0 || replay.code == 1, "{}", path.display());
    }
}

#[test]
fn binary_exit_codes_and_stdin() {
    let bin = env!("CARGO_BIN_EXE_riskorder");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    assert_eq!(status(&["check-lra", fixture("e1.json").to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(status(&["check-lra", fixture("e3.json").to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(status(&["check-lra", fixture("lottery_sum_bug.json").to_str().unwrap()]).status.code(), Some(2));

    let out = Command::new(bin)
        .args(["selftest", "--instances", "1"])
        .env("RISKORDER_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    use std::io::Write;
    let mut child = Command::new(bin)
        .args(["check-lra", "--method", "pratt", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&std::fs::read(fixture("e2.json")).unwrap()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("pratt: fails"));
}
