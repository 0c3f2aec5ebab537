use std::process::Command;

use fusionkit::{builtin_example, builtin_examples, parse_spec, run_spec, serialize_spec, Options, SpecError};
use serde_json::Value;

const KLEIN: &str = "\
group S 4 prime 2
gen S (0,1)
gen S (2,3)
subgroup A S (0,1)
subgroup B S (2,3)
morphism phi A B (0,1)->(2,3)
";

fn run(text: &str) -> Value {
    run_spec(&parse_spec(text).unwrap(), &Options::default()).unwrap()
}

fn check<'a>(report: &'a Value, kind: &str, first_arg: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["kind"] == kind && c["args"][0] == first_arg)
        .unwrap_or_else(|| panic!("no `{kind} {first_arg}` check"))
}

#[test]
fn closure_only_reports_census() {
    let report = run(&format!("{KLEIN}fusion F closure S phi\ncheck closure F\n"));
    let c = check(&report, "closure", "F");
    assert_eq!(c["passed"], true);
    let objects = c["result"]["objects"].as_array().unwrap();
    assert_eq!(objects.len(), 5);
    let census = c["result"]["census"].as_array().unwrap();
    assert_eq!(census.len(), 5);
    // A and B are fused, the diagonal subgroup stays alone
    let classes = c["result"]["classes"].as_array().unwrap();
    assert!(classes.iter().any(|k| k.as_array().unwrap().len() == 2));
    assert_eq!(classes.len(), 4);
}

#[test]
fn one_failing_check_does_not_abort() {
    let text = format!("{KLEIN}fusion F closure S phi\ncheck saturated F expect true\ncheck aut F A expect 1\n");
    let report = run(&text);
    assert_eq!(report["summary"]["total"], 2);
    assert_eq!(report["summary"]["failed"], 1);
    assert_eq!(check(&report, "aut", "F")["passed"], true);

    // a runtime error stays inside its own check
    let text = format!("{KLEIN}rose R S phi\ncheck decompose R A (0,3)\ncheck realize-rose R\n");
    let report = run(&text);
    let bad = check(&report, "decompose", "R");
    assert_eq!(bad["passed"], false);
    assert!(bad["error"].as_str().unwrap().contains("not an element"));
    assert_eq!(check(&report, "realize-rose", "R")["passed"], true);
}

#[test]
fn undefined_subgroup_is_a_validation_error() {
    let spec = parse_spec(&format!("{KLEIN}fusion F inner S\ncheck aut F C\n")).unwrap();
    match run_spec(&spec, &Options::default()) {
        Err(SpecError::Validation { line, message }) => {
            assert_eq!(line, 8);
            assert!(message.contains("`C`"), "{message}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn reports_are_deterministic() {
    let example = builtin_example("eg4").unwrap();
    let a = serde_json::to_string(&run(&example.text)).unwrap();
    let b = serde_json::to_string(&run(&example.text)).unwrap();
    assert_eq!(a, b);
    // serializing drops comments, so only line numbers may move
    let without_lines = |mut v: Value| {
        for c in v["checks"].as_array_mut().unwrap() {
            c.as_object_mut().unwrap().remove("line");
        }
        serde_json::to_string(&v).unwrap()
    };
    let reparsed = serialize_spec(&parse_spec(&example.text).unwrap());
    assert_eq!(without_lines(run(&reparsed)), without_lines(run(&example.text)));
}

#[test]
fn builtin_examples_all_pass() {
    for example in builtin_examples() {
        let report = run(&example.text);
        assert_eq!(report["summary"]["failed"], 0, "{}: {report:#}", example.name);
        assert!(report["summary"]["total"].as_u64().unwrap() >= 4);
    }
}

#[test]
fn example_two_fails_three_prime_at_e() {
    let report = run(&builtin_example("eg2").unwrap().text);
    let c = check(&report, "saturated-simplified", "F");
    assert_eq!(c["value"], false);
    let failures = c["result"]["failures"].as_array().unwrap();
    assert!(failures.iter().any(|f| f["axiom"] == "3'" && f["object"] == "E"));
}

#[test]
fn example_six_is_alperin_not_saturated() {
    let report = run(&builtin_example("eg6").unwrap().text);
    assert_eq!(check(&report, "alperin", "T")["value"], true);
    assert_eq!(check(&report, "saturated", "F")["value"], false);
    let arms = check(&report, "alperin", "T")["result"]["arms"].as_array().unwrap().clone();
    assert_eq!(arms.len(), 1);
}

#[test]
fn example_three_automorphisms_form_a_two_group() {
    let report = run(&builtin_example("eg3").unwrap().text);
    assert_eq!(check(&report, "aut", "F")["value"], 8);
    assert_eq!(check(&report, "saturated-abelian", "F")["value"], false);
}

#[test]
fn trace_adds_steps() {
    let text = format!("{KLEIN}rose R S phi\ncheck decompose R A t0 (0,1)\n");
    let spec = parse_spec(&text).unwrap();
    let plain = run_spec(&spec, &Options::default()).unwrap();
    let traced = run_spec(&spec, &Options { trace: true, ..Options::default() }).unwrap();
    assert!(check(&plain, "decompose", "R")["result"].get("steps").is_none());
    let steps = check(&traced, "decompose", "R")["result"]["steps"].as_array().unwrap().clone();
    assert!(steps.iter().any(|s| s == "t0"));
}

#[test]
fn small_cap_is_reported() {
    let example = builtin_example("eg6").unwrap();
    let spec = parse_spec(&example.text).unwrap();
    assert!(run_spec(&spec, &Options { cap: 100, ..Options::default() }).is_err());
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fusionkit"))
}

#[test]
fn binary_exit_codes() {
    let dir = std::env::temp_dir().join(format!("fusionkit-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.spec");
    std::fs::write(&good, format!("{KLEIN}fusion F closure S phi\ncheck saturated F expect false\n")).unwrap();
    let failing = dir.join("failing.spec");
    std::fs::write(&failing, format!("{KLEIN}fusion F closure S phi\ncheck saturated F expect true\n")).unwrap();
    let broken = dir.join("broken.spec");
    std::fs::write(&broken, "group S 2\nsubgroup A S (0,5)\n").unwrap();

    let out = binary().arg("run").arg(&good).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["summary"]["passed"], 1);

    assert_eq!(binary().arg("run").arg(&failing).output().unwrap().status.code(), Some(1));

    let out = binary().arg("run").arg(&broken).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = binary().args(["saturated", "--simplified"]).arg(&good).arg("F").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = binary().arg("cayley-realize").arg(&good).args(["S", "phi"]).output().unwrap();
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["checks"][0]["value"], true);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_runs_all_examples() {
    let out = binary().args(["examples", "run", "all"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["examples"].as_object().unwrap().len(), 6);
    let out = binary().args(["examples", "show", "eg1"]).output().unwrap();
    assert!(parse_spec(&String::from_utf8(out.stdout).unwrap()).is_ok());
}
