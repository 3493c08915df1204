//! Acceptance run: one pass/fail line per criterion.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twistor_engine::clifford::{build_rep, build_structure_map, spinor_norm, CMat, C64};
use twistor_engine::geometry::curvature::{curvature_pack, max_abs4};
use twistor_engine::invariants::{lightlike_identity_check, orbit_identity_check};
use twistor_engine::models::flat::minkowski_twistor;
use twistor_engine::models::{build_geometry, CheckConfig, CheckRecord};
use twistor_engine::spin::{dirac_operator, twistor_residual};
use twistor_engine::suite::{
    algebra_records, boosted_pure_spinor, conformal_records, random_spinor, random_vector, representative_records,
    suite_all, SuiteReport,
};

struct Outcome {
    pass: bool,
    summary: String,
}

fn outcome(pass: bool, summary: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        summary: summary.into(),
    }
}

fn c1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut cl: f64 = 0.0;
    let mut adj: f64 = 0.0;
    for n in 2..=8 {
        let rep = build_rep(n).unwrap();
        cl = cl.max(rep.clifford_residual());
        for _ in 0..100 {
            let x = random_vector(&mut rng, n);
            let phi = random_spinor(&mut rng, rep.spinor_dim);
            let psi = random_spinor(&mut rng, rep.spinor_dim);
            let a = rep.indefinite_inner(&rep.vector_action(&x, &phi).unwrap(), &psi);
            let b = rep.indefinite_inner(&phi, &rep.vector_action(&x, &psi).unwrap());
            let scale = spinor_norm(&phi) * spinor_norm(&psi) * x.iter().map(|v| v * v).sum::<f64>().sqrt();
            adj = adj.max((a - b).norm() / scale);
        }
    }
    let t = start.elapsed().as_secs_f64();
    outcome(
        cl <= 1e-12 && adj <= 1e-10 && t < 1.0,
        format!("Clifford relations n=2..8 max {cl:.1e} (tol 1e-12); adjointness max {adj:.1e} (tol 1e-10); {t:.2} s"),
    )
}

fn c2() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst: f64 = 0.0;
    for n in [3, 5, 7] {
        let rep = build_rep(n).unwrap();
        let j = build_structure_map(&rep).ok();
        for _ in 0..1000 {
            let phi = random_spinor(&mut rng, rep.spinor_dim);
            let r = orbit_identity_check(&rep, &phi, j.as_ref(), 1e-9).unwrap();
            worst = worst.max(r.max_residual());
        }
    }
    let cfg = CheckConfig::default();
    let reps: Vec<CheckRecord> = [3, 5, 7]
        .iter()
        .flat_map(|&n| representative_records(n, &cfg).unwrap())
        .collect();
    let rep_worst = reps.iter().fold(0.0f64, |m, r| m.max(r.residual));
    let reps_ok = !reps.is_empty() && reps.iter().all(|r| r.pass && r.tolerance <= 1e-12);
    outcome(
        worst <= 1e-9 && reps_ok,
        format!(
            "orbit and norm identities n=3,5,7 max {worst:.1e} (tol 1e-9); {} representative checks max {rep_worst:.1e} (tol 1e-12); {:.2} s",
            reps.len(),
            start.elapsed().as_secs_f64()
        ),
    )
}

fn c3() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for n in 2..=8 {
        let rep = build_rep(n).unwrap();
        for _ in 0..1000 {
            let phi = boosted_pure_spinor(&mut rng, &rep).unwrap();
            match lightlike_identity_check(&rep, &phi, 1e-9) {
                Ok(r) => worst = worst.max(r.max_residual()),
                Err(_) => ok = false,
            }
        }
    }
    outcome(
        ok && worst <= 1e-9,
        format!(
            "boosted a⊗u(1), n=2..8, 1000 each: V·φ = 0 and ⟨φ,φ⟩ = 0 max {worst:.1e} (tol 1e-9); {:.2} s",
            start.elapsed().as_secs_f64()
        ),
    )
}

fn c4() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut ranks = Vec::new();
    let mut ok = true;
    for n in 3..=7 {
        let spec = build_geometry("minkowski", &serde_json::json!({ "n": n })).unwrap();
        let rep = spec.rep.clone().unwrap();
        let d = rep.spinor_dim;
        let grid = spec.chart.sample_grid(2);
        let mut cols: Vec<Vec<C64>> = Vec::new();
        for k in 0..2 * d {
            let mut u = rep.zero_spinor();
            let mut v = rep.zero_spinor();
            if k < d {
                u[k] = C64::new(1.0, 0.0);
            } else {
                v[k - d] = C64::new(1.0, 0.0);
            }
            let f = minkowski_twistor(rep.clone(), &spec.chart.name, u, v);
            for x in &grid {
                worst = worst.max(twistor_residual(&spec.chart, &f, x).unwrap());
            }
            cols.push(
                grid.iter()
                    .flat_map(|x| f.eval(x).iter().copied().collect::<Vec<_>>())
                    .collect(),
            );
        }
        let m = CMat::from_fn(cols[0].len(), cols.len(), |i, j| cols[j][i]);
        let sv = m.svd(false, false).singular_values;
        let rank = sv.iter().filter(|&&s| s > 1e-8 * sv[0]).count();
        let expected = 1usize << (n / 2 + 1);
        ok &= rank == expected && 2 * d == expected;
        ranks.push(format!("n={n}: {rank}/{expected}"));
    }
    outcome(
        ok && worst <= 1e-8,
        format!(
            "Minkowski twistor families, residual max {worst:.1e} on grid (tol 1e-8); ranks {}; {:.2} s",
            ranks.join(", "),
            start.elapsed().as_secs_f64()
        ),
    )
}

fn c5() -> Outcome {
    let recs = conformal_records(&CheckConfig::default()).unwrap();
    let worst = recs.iter().fold(0.0f64, |m, r| m.max(r.residual));
    let ok = !recs.is_empty() && recs.iter().all(|r| r.pass && r.tolerance <= 1e-6);
    outcome(
        ok,
        format!(
            "D and P laws, {} checks on Minkowski and pp-wave, max {worst:.1e} (tol 1e-6)",
            recs.len()
        ),
    )
}

fn scoped<'a>(all: &'a SuiteReport, label: &str) -> Vec<&'a CheckRecord> {
    let p = format!("[{label}] ");
    all.records.iter().filter(|r| r.identity.starts_with(&p)).collect()
}

/// All records pass, each required op is present, and every residual
/// tolerance is at most the stated bound.
fn group(recs: &[&CheckRecord], ops: &[(&str, f64)]) -> (bool, String) {
    let mut ok = !recs.is_empty() && recs.iter().all(|r| r.pass);
    let mut parts = Vec::new();
    for (op, bound) in ops {
        let sel: Vec<_> = recs.iter().filter(|r| r.op == *op).collect();
        let worst = sel.iter().fold(0.0f64, |m, r| m.max(r.residual));
        ok &= !sel.is_empty() && sel.iter().all(|r| r.pass && r.tolerance <= *bound);
        parts.push(format!("{op} {worst:.1e}"));
    }
    (ok, parts.join(", "))
}

fn c6(all: &SuiteReport) -> Outcome {
    let recs = scoped(all, "pp-wave");
    let (ok, s) = group(
        &recs,
        &[
            ("pp_curvature", 1e-6),
            ("parallel_vector", 1e-7),
            ("special", 1e-7),
            ("current_parallel", 1e-7),
            ("twist", 1e-9),
            ("classification", 0.0),
        ],
    );
    let brinkmann = recs
        .iter()
        .any(|r| r.op == "classification" && r.identity.contains("BrinkmannType, ε = 0"));
    outcome(
        ok && brinkmann,
        format!("pp-wave: {} checks; {s}; verdict brinkmann_type ε = 0", recs.len()),
    )
}

fn c7(all: &SuiteReport) -> Outcome {
    let recs = scoped(all, "fefferman-heisenberg");
    let (ok, s) = group(
        &recs,
        &[
            ("killing_vector", 1e-7),
            ("lightlike", 1e-9),
            ("twist", 1e-6),
            ("ric_v_v_constant", 1e-5),
            ("classification", 0.0),
            ("j_identities", 1e-6),
        ],
    );
    let feff = recs
        .iter()
        .any(|r| r.op == "classification" && r.identity.contains("FeffermanType, ε = 1"));
    outcome(
        ok && feff,
        format!(
            "Fefferman-Heisenberg: {} checks; {s}; verdict fefferman_type",
            recs.len()
        ),
    )
}

fn c8(all: &SuiteReport) -> Outcome {
    let es = scoped(all, "einstein-sasaki");
    let cone = scoped(all, "cone-einstein-sasaki");
    let (ok1, s1) = group(
        &es,
        &[
            ("einstein", 1e-6),
            ("sasaki", 1e-6),
            ("special", 1e-6),
            ("decomposition", 1e-6),
        ],
    );
    let (ok2, s2) = group(&cone, &[("ricci_flat", 1e-5), ("endomorphism", 1e-5)]);
    let q = es.iter().filter(|r| r.identity.contains("Q_ψ")).count();
    outcome(
        ok1 && ok2 && q >= 2,
        format!("Einstein-Sasaki: {s1}; Q constant on ψ± ({q} checks); cone: {s2}"),
    )
}

fn c9(all: &SuiteReport) -> Outcome {
    let recs: Vec<_> = all.records.iter().filter(|r| r.op == "integrability").collect();
    let worst = recs.iter().fold(0.0f64, |m, r| m.max(r.residual));
    let ok = !recs.is_empty() && recs.iter().all(|r| r.pass && r.tolerance <= 1e-6);
    let spec = build_geometry("pp-wave-rescaled", &serde_json::Value::Null).unwrap();
    let x = [0.1, -0.2, 0.3, 0.25];
    let w = max_abs4(&curvature_pack(&spec.chart, &x).unwrap().weyl);
    let dphi = spinor_norm(&dirac_operator(&spec.chart, &spec.spinors[0].field, &x).unwrap());
    let nontrivial = w > 1e-2 && dphi > 1e-2;
    let rescaled = scoped(all, "pp-wave-rescaled")
        .iter()
        .any(|r| r.op == "integrability" && r.pass);
    outcome(
        ok && nontrivial && rescaled,
        format!(
            "{} integrability checks over all bundled twistor spinors, max {worst:.1e} (tol 1e-6); rescaled pp-wave |W| = {w:.2}, |Dφ| = {dphi:.2}",
            recs.len()
        ),
    )
}

fn same_residuals(a: &[CheckRecord], b: &[CheckRecord]) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(x, y)| x.identity == y.identity && x.residual.to_bits() == y.residual.to_bits())
}

fn c10(all: &SuiteReport) -> Outcome {
    let cfg = CheckConfig::default();
    let mut det = true;
    for n in [3, 7] {
        let again = algebra_records(n, &cfg).unwrap();
        let first: Vec<CheckRecord> = scoped(all, &format!("algebra n={n}"))
            .into_iter()
            .map(|r| {
                let mut r = r.clone();
                r.identity = r
                    .identity
                    .split_once("] ")
                    .map(|(_, s)| s.to_string())
                    .unwrap_or_default();
                r
            })
            .collect();
        det &= same_residuals(&first, &again);
    }
    for g in ["pp-wave", "fefferman-heisenberg", "einstein-sasaki"] {
        let spec = build_geometry(g, &serde_json::Value::Null).unwrap();
        let again = twistor_engine::models::check_expectations(&spec, &cfg);
        let first: Vec<CheckRecord> = scoped(all, g)
            .into_iter()
            .map(|r| {
                let mut r = r.clone();
                r.identity = r
                    .identity
                    .split_once("] ")
                    .map(|(_, s)| s.to_string())
                    .unwrap_or_default();
                r
            })
            .collect();
        det &= same_residuals(&first, &again);
    }
    let failed = all.records.iter().filter(|r| !r.pass).count();
    outcome(
        all.pass && all.wall_time < 300.0 && det,
        format!(
            "suite all: {} checks, {failed} failed, {:.1} s (limit 300 s); residuals bit-identical on rerun: {det}",
            all.records.len(),
            all.wall_time
        ),
    )
}

fn main() {
    let all = suite_all(&CheckConfig::default());
    for r in all.records.iter().filter(|r| !r.pass) {
        println!(
            "  failing record: {} / {} / {} residual {:e}",
            r.module, r.op, r.identity, r.residual
        );
    }
    let results = [
        c1(),
        c2(),
        c3(),
        c4(),
        c5(),
        c6(&all),
        c7(&all),
        c8(&all),
        c9(&all),
        c10(&all),
    ];
    let mut failed = 0;
    for (i, o) in results.iter().enumerate() {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag}: {}", i + 1, o.summary);
        if !o.pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
