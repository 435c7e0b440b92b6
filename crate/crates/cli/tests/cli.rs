use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/corpus")
        .join(name)
}

fn kedl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kedl"))
        .args(args)
        .env_remove("KEDL_BOUNDS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn gas() -> String {
    corpus("gas.kedl").display().to_string()
}

/// Drops timing fields so reports can be compared byte for byte.
fn strip_timings(text: &str) -> String {
    text.lines()
        .filter(|l| !l.trim_start().starts_with("\"elapsed_ms\""))
        .map(|l| match l.find("  [") {
            Some(i) if l.ends_with(" ms]") => &l[..i],
            _ => l,
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn temp_file(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn check_exit_codes() {
    assert_eq!(code(&kedl(&["check", &gas()])), 0);
    let missing = kedl(&["check", "/nonexistent"]);
    assert_eq!(code(&missing), 2);
    assert!(String::from_utf8_lossy(&missing.stderr).contains("/nonexistent"));

    let dir = tempfile::tempdir().unwrap();
    let bad = temp_file(&dir, "bad.kedl", "oconcept C; oindividual c1;\nC <= bot;\n(C)(c1);\n");
    let out = kedl(&["check", &bad]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("inconsistent\nclash trace:\n"));

    let broken = temp_file(&dir, "broken.kedl", "oconcept C\n");
    let out = kedl(&["check", &broken]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("broken.kedl:2:1:"));
}

#[test]
fn reasoning_on_the_gas_corpus() {
    let out = kedl(&[
        "subsumes",
        &gas(),
        "-s",
        "Gas-explosion",
        "-t",
        "some has-location Location",
    ]);
    assert_eq!((code(&out), stdout(&out).as_str()), (0, "true\n"));
    let out = kedl(&["subsumes", &gas(), "-s", "Tunnel", "-t", "Gas-explosion"]);
    assert_eq!((code(&out), stdout(&out).as_str()), (1, "false\n"));

    let out = kedl(&["sat", &gas(), "-c", "bot"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("unsatisfiable\n"));

    let out = kedl(&[
        "sat",
        &gas(),
        "-c",
        "Tunnel and some has-length (some more-than Meters1200)",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("satisfiable\ndelta: "));

    let out = kedl(&["classify", &gas()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("object:\nGas\nFire-source\nGas-explosion\nTunnel\n"));
}

#[test]
fn sort_errors_are_input_errors() {
    let out = kedl(&["sat", &gas(), "-c", "Gas and Location"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn instance_queries() {
    let dir = tempfile::tempdir().unwrap();
    let kb = temp_file(
        &dir,
        "kb.kedl",
        "oconcept C; oconcept D; oindividual c1;\nC <= D;\n(C)(c1);\n",
    );
    let out = kedl(&["instance", &kb, "-i", "c1", "-c", "D"]);
    assert_eq!((code(&out), stdout(&out).as_str()), (0, "true\n"));
    let out = kedl(&["instance", &kb, "-i", "c1", "-c", "not D"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn oracle_goals() {
    let out = kedl(&["oracle", "--find-model", "-c", "C and not C", "--bounds", "3,3"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "no-model\nno model up to bounds (3,3)\n");

    let out = kedl(&["oracle", "--count", "-c", "some has-r A", "--bounds", "1,1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("1\n"));

    let out = kedl(&["oracle", "--find-model", "-c", "C"]);
    assert_eq!(stdout(&out), "model\ndelta: x1;\nsigma: u1;\nC = {x1};\n");

    let out = kedl(&[
        "oracle",
        "--validity",
        "-s",
        "some p C",
        "-t",
        "all p C",
        "--bounds",
        "3,1",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("countermodel\n"));

    // Under a functional role the same inclusion holds.
    let out = kedl(&["oracle", "--validity", "-s", "some has-r A", "-t", "all has-r A"]);
    assert_eq!(code(&out), 0);

    let out = kedl(&["oracle", "--validity", "-c", "some inv(r) (all r A) => A"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn functionality_modes() {
    let args = ["oracle", "--find-model", "-c", "some has-r A and some has-r (not A)"];
    assert_eq!(code(&kedl(&args)), 1);
    let mut free = args.to_vec();
    free.extend(["--mode", "unrestricted"]);
    assert_eq!(code(&kedl(&free)), 0);
}

#[test]
fn existential_reading_of_inclusions() {
    let universal = kedl(&["oracle", "--validity", "-s", "C", "-t", "D"]);
    assert_eq!(code(&universal), 1);
    // The existential reading only fails when every element is in C but
    // not in D, so the countermodel puts the whole domain in C.
    let existential = kedl(&[
        "oracle",
        "--validity",
        "-s",
        "C",
        "-t",
        "D",
        "--reading",
        "paper-existential",
    ]);
    assert_eq!(code(&existential), 1);
    assert!(stdout(&existential).contains("C = {x1};"));
    let trivial = kedl(&[
        "oracle",
        "--validity",
        "-s",
        "C and D",
        "-t",
        "C",
        "--reading",
        "paper-existential",
    ]);
    assert_eq!(code(&trivial), 0);
}

#[test]
fn model_out_writes_the_model() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.txt");
    let out = kedl(&[
        "oracle",
        "--find-model",
        "-c",
        "C",
        "--model-out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        std::fs::read_to_string(path).unwrap(),
        "delta: x1;\nsigma: u1;\nC = {x1};\n"
    );
}

#[test]
fn verify_suite_runs_and_filters() {
    let out = kedl(&["verify-suite"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text
        .lines()
        .last()
        .unwrap()
        .starts_with("pass: 112/112 items passed, mode at-most-one, bounds (2,2)"));
    assert!(!text.contains("FAIL"));

    let out = kedl(&["verify-suite", "--only", "axiom16"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 2);
    assert!(stdout(&out).starts_with("pass axiom16 "));

    assert_eq!(code(&kedl(&["verify-suite", "--only", "axiom99"])), 2);
}

#[test]
fn suite_verdicts_do_not_depend_on_bounds() {
    let verdicts = |b: &str| {
        let out = kedl(&["--format", "machine", "verify-suite", "--bounds", b]);
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        v["items"]
            .as_array()
            .unwrap()
            .iter()
            .map(|i| (i["id"].to_string(), i["passed"].as_bool().unwrap()))
            .collect::<Vec<_>>()
    };
    assert_eq!(verdicts("2,2"), verdicts("3,3"));
}

#[test]
fn bounds_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_kedl"))
        .args(["verify-suite", "--only", "axiom16"])
        .env("KEDL_BOUNDS", "3,2")
        .output()
        .unwrap();
    assert!(stdout(&out).contains("bounds (3,2)"));
    let out = Command::new(env!("CARGO_BIN_EXE_kedl"))
        .args(["verify-suite", "--only", "axiom16", "--bounds", "1,1"])
        .env("KEDL_BOUNDS", "3,2")
        .output()
        .unwrap();
    assert!(stdout(&out).contains("bounds (1,1)"));
    let out = Command::new(env!("CARGO_BIN_EXE_kedl"))
        .args(["verify-suite", "--only", "axiom16"])
        .env("KEDL_BOUNDS", "three")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn machine_reports() {
    let out = kedl(&["--format", "machine", "sat", &gas(), "-c", "bot"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "kedl-report/1");
    assert_eq!(v["verdict"], "unsatisfiable");
    assert_eq!(v["exit"], 1);
    assert_eq!(v["trace"][1], "clash n0 bot");
    assert_eq!(v["command"][2], "sat");

    let out = kedl(&["--format", "machine", "check", "/nonexistent"]);
    assert_eq!(code(&out), 2);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "error");
}

#[test]
fn reports_are_deterministic() {
    let runs: [&[&str]; 5] = [
        &["verify-suite"],
        &["--format", "machine", "verify-suite"],
        &["classify", &gas()],
        &["--format", "machine", "sat", &gas(), "-c", "Gas and Tunnel"],
        &[
            "oracle",
            "--find-model",
            "-c",
            "some r A and all p (some r (not A))",
            "--bounds",
            "3,3",
        ],
    ];
    for args in runs {
        let a = strip_timings(&stdout(&kedl(args)));
        let b = strip_timings(&stdout(&kedl(args)));
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn km_translate_matches_the_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("gas.kedl");
    let km = corpus("gas.km");
    let out = kedl(&[
        "km",
        "translate",
        km.to_str().unwrap(),
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let golden = std::fs::read_to_string(corpus("gas.kedl")).unwrap();
    assert_eq!(std::fs::read_to_string(&out_path).unwrap(), golden);

    let out = kedl(&["km", "translate", km.to_str().unwrap()]);
    assert_eq!(stdout(&out), golden);
}

#[test]
fn km_validation() {
    let dir = tempfile::tempdir().unwrap();
    let km = temp_file(
        &dir,
        "bad.km",
        "object Gas { attributes: GasVolume, Pressure; }\nattribute GasVolume { measurability: 2; function: none; }\n",
    );
    let out = kedl(&["km", "validate", &km]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(
        text.contains("Gas.attributes: undeclared attribute `Pressure`"),
        "{text}"
    );
    assert!(text.contains("GasVolume.dimension:"), "{text}");

    let out = kedl(&["km", "translate", &km]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("Pressure"));

    let good = corpus("gas.km");
    assert_eq!(code(&kedl(&["km", "validate", good.to_str().unwrap()])), 0);
}
