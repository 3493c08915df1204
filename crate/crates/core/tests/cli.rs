use std::path::PathBuf;

use serde_json::Value;
use twistor_engine::cli::{run, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};

fn twistor(args: &[&str]) -> i32 {
    run(std::iter::once("twistor").chain(args.iter().copied()))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("twistor-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn schema() -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/schema/suite_report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(twistor(&["list"]), EXIT_PASS);
    assert_eq!(twistor(&["-q", "algebra", "3"]), EXIT_PASS);
    assert_eq!(twistor(&["algebra", "9"]), EXIT_USAGE);
    assert_eq!(twistor(&["algebra", "1"]), EXIT_USAGE);
    assert_eq!(twistor(&["geometry", "no-such-space"]), EXIT_USAGE);
    assert_eq!(twistor(&["geometry"]), EXIT_USAGE);
    assert_eq!(twistor(&["--bogus-flag", "list"]), EXIT_USAGE);
    assert_eq!(
        twistor(&["point", "pp-wave", "--at", "5,0,0,0", "--what", "curvature"]),
        EXIT_USAGE
    );
    assert_eq!(
        twistor(&["point", "pp-wave", "--at", "0,0", "--what", "curvature"]),
        EXIT_USAGE
    );
    assert_eq!(
        twistor(&["point", "pp-wave", "--at", "0.1,-0.2,0,0", "--what", "dirac"]),
        EXIT_PASS
    );
    assert_eq!(
        twistor(&[
            "point",
            "fefferman-heisenberg",
            "--what",
            "killing-analysis",
            "--vector",
            "K"
        ]),
        EXIT_PASS
    );
}

#[test]
fn tight_tolerance_fails_cleanly() {
    assert_eq!(
        twistor(&["-q", "--tol", "1e-30", "--grid", "2", "geometry", "pp-wave"]),
        EXIT_FAIL
    );
}

#[test]
fn params_file_and_schema_valid_report() {
    let params = scratch("minkowski.json");
    std::fs::write(&params, r#"{"name": "minkowski", "params": {"n": 3}}"#).unwrap();
    let out = scratch("report.json");
    let code = twistor(&[
        "-q",
        "--grid",
        "2",
        "--params",
        params.to_str().unwrap(),
        "--json",
        out.to_str().unwrap(),
        "geometry",
    ]);
    assert_eq!(code, EXIT_PASS);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["geometry"], "minkowski");
    assert_eq!(report["params"]["n"], 3);
    assert_eq!(report["pass"], true);
    let validator = jsonschema::validator_for(&schema()).unwrap();
    assert!(validator.is_valid(&report));

    let mut broken = report.clone();
    broken["records"][0].as_object_mut().unwrap().remove("tolerance");
    assert!(!validator.is_valid(&broken));

    let algebra = scratch("algebra.json");
    assert_eq!(
        twistor(&["-q", "--json", algebra.to_str().unwrap(), "algebra", "4"]),
        EXIT_PASS
    );
    let a: Value = serde_json::from_str(&std::fs::read_to_string(&algebra).unwrap()).unwrap();
    assert!(validator.is_valid(&a));
}

#[test]
fn malformed_params_file() {
    let p = scratch("array.json");
    std::fs::write(&p, "[1, 2, 3]").unwrap();
    assert_eq!(twistor(&["--params", p.to_str().unwrap(), "geometry"]), EXIT_USAGE);
    let q = scratch("garbage.json");
    std::fs::write(&q, "{ not json").unwrap();
    assert_eq!(
        twistor(&["--params", q.to_str().unwrap(), "geometry", "minkowski"]),
        EXIT_USAGE
    );
    assert_eq!(
        twistor(&["--params", "/nonexistent/params.json", "geometry", "minkowski"]),
        EXIT_USAGE
    );
}

#[test]
fn point_dump_is_written_as_json() {
    let out = scratch("point.json");
    let code = twistor(&[
        "--json",
        out.to_str().unwrap(),
        "point",
        "minkowski",
        "--at",
        "0.1,0.2,-0.3,0.4",
        "--what",
        "twistor-residual",
    ]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["geometry"], "minkowski");
    assert_eq!(v["point"].as_array().unwrap().len(), 4);
}
