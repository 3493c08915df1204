use serde_json::{json, Value};
use twistor_engine::geometry::curvature::ricci_scalar_at;
use twistor_engine::models::{build_geometry, check_expectations, CheckConfig, Expectation, REGISTRY};
use twistor_engine::spin::{lightlike_killing_analysis, Verdict};
use twistor_engine::Error;

fn cfg() -> CheckConfig {
    CheckConfig {
        grid: 2,
        spot: 2,
        seed: 3,
        tol: None,
    }
}

#[test]
fn every_registered_geometry_builds() {
    for name in REGISTRY {
        let spec = build_geometry(name, &Value::Null).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(!spec.expectations.is_empty());
        let c = spec.chart.center();
        assert!(spec.chart.contains(&c), "{name}");
    }
}

#[test]
fn bad_names_and_parameters() {
    match build_geometry("de-sitter", &Value::Null) {
        Err(Error::UnknownGeometry { known, .. }) => assert!(known.contains("pp-wave")),
        other => panic!("unexpected {:?}", other.map(|s| s.name)),
    }
    let invalid = [
        ("minkowski", json!([1, 2])),
        ("minkowski", json!({ "n": -3 })),
        ("cahen-wallach", json!({ "lambda": [0.0, 0.0] })),
        (
            "pp-wave",
            json!({ "n": 4, "profile": { "type": "quadratic", "lambda": [1.0] } }),
        ),
        ("product", json!({ "base": "sphere" })),
    ];
    for (name, p) in invalid {
        assert!(
            matches!(build_geometry(name, &p), Err(Error::InvalidParams(_))),
            "{name} {p}"
        );
    }
    assert!(matches!(
        build_geometry("minkowski", &json!({ "n": 12 })),
        Err(Error::DimensionOutOfRange(12))
    ));
}

#[test]
fn cheap_geometries_meet_their_expectations() {
    for (name, p) in [
        ("minkowski", json!({ "n": 3 })),
        ("cahen-wallach", json!({ "lambda": [1.0, -0.5] })),
        ("pp-wave", json!({ "n": 3 })),
    ] {
        let spec = build_geometry(name, &p).unwrap();
        for r in check_expectations(&spec, &cfg()) {
            assert!(r.pass, "{name}: {} {} residual {}", r.op, r.identity, r.residual);
        }
    }
}

#[test]
fn false_claims_are_caught() {
    let mut spec = build_geometry("pp-wave", &Value::Null).unwrap();
    spec.expectations = vec![
        Expectation::Flat,
        Expectation::Twist {
            vector: "V".into(),
            twisting: true,
        },
    ];
    let recs = check_expectations(&spec, &cfg());
    assert!(!recs.is_empty());
    assert!(recs.iter().all(|r| !r.pass));

    let mut spec = build_geometry("minkowski", &json!({ "n": 3 })).unwrap();
    spec.expectations = vec![Expectation::Special {
        spinor: "missing".into(),
    }];
    let recs = check_expectations(&spec, &cfg());
    assert_eq!(recs.len(), 1);
    assert!(!recs[0].pass);
}

#[test]
fn fefferman_killing_field_is_twisting_with_positive_sign() {
    let spec = build_geometry("fefferman-heisenberg", &Value::Null).unwrap();
    let k = spec.vector("K").unwrap();
    let x = spec.chart.center();
    let a = lightlike_killing_analysis(&spec.chart, k, &x, 1e-8).unwrap();
    assert_eq!(a.verdict, Verdict::FeffermanType);
    assert_eq!(a.epsilon, 1);
    assert!(a.twist > 0.0);
    assert!(a.report.pass(), "{:?}", a.report.entries);
}

#[test]
fn pp_wave_vector_is_brinkmann_type() {
    let spec = build_geometry("pp-wave", &Value::Null).unwrap();
    let a = lightlike_killing_analysis(&spec.chart, spec.vector("V").unwrap(), &[0.1, 0.2, 0.3, 0.4], 1e-8).unwrap();
    assert_eq!(a.verdict, Verdict::BrinkmannType);
    assert_eq!(a.epsilon, 0);
}

#[test]
fn scalar_curvatures_of_einstein_models() {
    let es = build_geometry("einstein-sasaki", &Value::Null).unwrap();
    let cone = build_geometry("cone-einstein-sasaki", &Value::Null).unwrap();
    let x = es.chart.center();
    let r_es = ricci_scalar_at(&es.chart, &x).unwrap().1;
    let r_base = ricci_scalar_at(&es.chart, &es.chart.sample_grid(2)[3]).unwrap().1;
    assert!((r_es - r_base).abs() < 1e-9, "constant scalar curvature");
    let y = cone.chart.center();
    let (ric, r) = ricci_scalar_at(&cone.chart, &y).unwrap();
    assert!(r.abs() < 1e-9);
    assert!(ric.iter().flatten().all(|v| v.abs() < 1e-9));
}
