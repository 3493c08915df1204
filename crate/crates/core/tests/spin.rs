#![allow(clippy::needless_range_loop)]

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twistor_engine::clifford::{build_rep, spin_element, spinor_norm, vector_rep, CliffordRep, Spinor, C64};
use twistor_engine::geometry::chart::constant_matrix;
use twistor_engine::geometry::{christoffel, frame_at, MetricChart, ScalarFn, VectorFn};
use twistor_engine::jet::Jet;
use twistor_engine::models::flat::minkowski_twistor;
use twistor_engine::models::{build_geometry, einstein_sasaki_h2, minkowski, pp_wave, GeometrySpec, Profile};
use twistor_engine::spin::operators::{spinor_derivatives, twistor_components};
use twistor_engine::spin::{
    conformal_covariance_check, dirac_operator, integrability_residuals, killing_decompose, killing_number,
    lightlike_killing_analysis, parallel_transport, special_spinor_check, spin_connection, spin_point,
    twistor_residual, SpecialKind, SpinorField, Transported,
};
use twistor_engine::suite::{random_spinor, random_two_form, random_vector};
use twistor_engine::Error;

fn generic_field(rep: Arc<CliffordRep>, gauge: &str, seed: u64) -> SpinorField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = rep.spinor_dim;
    let a = random_spinor(&mut rng, d);
    let b = random_spinor(&mut rng, d);
    let c = random_spinor(&mut rng, d);
    SpinorField::new(rep, gauge, move |x: &[f64]| {
        &a + &b * C64::new(x[0] * x[1], 0.0) + &c * C64::new(x[x.len() - 1].sin(), 0.0)
    })
}

fn spec_rep(spec: &GeometrySpec) -> Arc<CliffordRep> {
    spec.rep.clone().unwrap()
}

#[test]
fn dirac_of_linear_field() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 3..=6 {
        let spec = minkowski(n).unwrap();
        let rep = spec_rep(&spec);
        let v = random_spinor(&mut rng, rep.spinor_dim);
        let f = minkowski_twistor(rep.clone(), "minkowski", rep.zero_spinor(), v.clone());
        let x = random_vector(&mut rng, n).iter().map(|c| c * 0.5).collect::<Vec<_>>();
        let d = dirac_operator(&spec.chart, &f, &x).unwrap();
        assert!(spinor_norm(&(d + &v * C64::new(n as f64, 0.0))) < 1e-9, "n={n}");
        assert!(twistor_residual(&spec.chart, &f, &x).unwrap() < 1e-9);
    }
}

#[test]
fn generic_field_is_not_twistor() {
    let spec = minkowski(4).unwrap();
    let f = generic_field(spec_rep(&spec), "minkowski", 8);
    let r = twistor_residual(&spec.chart, &f, &[0.2, 0.3, -0.1, 0.4]).unwrap();
    assert!(r > 1e-2, "residual {r}");
}

#[test]
fn gauge_mismatch_is_rejected() {
    let spec = minkowski(4).unwrap();
    let f = generic_field(spec_rep(&spec), "elsewhere", 1);
    assert!(matches!(
        dirac_operator(&spec.chart, &f, &[0.0; 4]),
        Err(Error::Precondition(_))
    ));
    assert!(matches!(
        dirac_operator(&spec.chart, &f, &[3.0, 0.0, 0.0, 0.0]),
        Err(Error::OutsideDomain)
    ));
}

#[test]
fn dirac_operator_is_frame_covariant() {
    let n = 4;
    let rep = Arc::new(build_rep(n).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let s = spin_element(&rep, &random_two_form(&mut rng, n, 0.5)).unwrap();
    let lam = vector_rep(&rep, &s).unwrap();
    let sinv = s.clone().try_inverse().unwrap();
    let eta: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i != j {
                        0.0
                    } else if i == 0 {
                        -1.0
                    } else {
                        1.0
                    }
                })
                .collect()
        })
        .collect();
    let names = ["x0", "x1", "x2", "x3"];
    let base = MetricChart::new("base", &names, vec![(-1.0, 1.0); n], {
        let e = eta.clone();
        move |xs: &[Jet]| constant_matrix(&xs[0], &e)
    });
    let seed: Vec<Vec<f64>> = (0..n).map(|a| (0..n).map(|i| lam[(i, a)]).collect()).collect();
    let rotated = MetricChart::new("rotated", &names, vec![(-1.0, 1.0); n], move |xs: &[Jet]| {
        constant_matrix(&xs[0], &eta)
    })
    .with_seed(move |xs: &[Jet]| constant_matrix(&xs[0], &seed));
    let f = generic_field(rep.clone(), "base", 3);
    let g = {
        let f = f.clone();
        let sinv = sinv.clone();
        SpinorField::new(rep.clone(), "rotated", move |x: &[f64]| &sinv * f.eval(x))
    };
    let x = [0.3, -0.2, 0.5, 0.1];
    let d = dirac_operator(&base, &f, &x).unwrap();
    let dt = dirac_operator(&rotated, &g, &x).unwrap();
    assert!(spinor_norm(&(dt - &sinv * d)) < 1e-9);
    let p = twistor_components(&base, &f, &x).unwrap();
    let pt = twistor_components(&rotated, &g, &x).unwrap();
    for a in 0..n {
        let mut want = rep.zero_spinor();
        for (b, pb) in p.iter().enumerate() {
            want += &sinv * pb * C64::new(lam[(b, a)], 0.0);
        }
        assert!(spinor_norm(&(&pt[a] - want)) < 1e-9, "a={a}");
    }
}

fn point_sets(spec: &GeometrySpec) -> Vec<Vec<f64>> {
    spec.chart.sample_grid(2)
}

fn check_compatibility(spec: &GeometrySpec) {
    let rep = spec_rep(spec);
    let f = generic_field(rep.clone(), &spec.chart.name, 5);
    let h = generic_field(rep.clone(), &spec.chart.name, 6);
    for x in point_sets(spec).into_iter().take(4) {
        let sp = spin_point(&spec.chart, &rep, &x).unwrap();
        let (phi, nf) = spinor_derivatives(&spec.chart, &f, &sp).unwrap();
        let (psi, nh) = spinor_derivatives(&spec.chart, &h, &sp).unwrap();
        let n = rep.n;
        for a in 0..n {
            let ea = sp.frame.vector(a);
            let step = 1e-5;
            let pair = |t: f64| {
                let y: Vec<f64> = x.iter().zip(&ea).map(|(p, q)| p + t * q).collect();
                rep.indefinite_inner(&f.eval(&y), &h.eval(&y))
            };
            let lhs = (pair(step) - pair(-step)) / C64::new(2.0 * step, 0.0);
            let rhs = rep.indefinite_inner(&nf[a], &psi) + rep.indefinite_inner(&phi, &nh[a]);
            assert!((lhs - rhs).norm() < 1e-7, "{} a={a}: {lhs} vs {rhs}", spec.name);

            // Clifford multiplication by a frame vector commutes with ∇ up to ∇e_b.
            for b in 0..n {
                let gb = rep.generators[b].clone();
                let f2 = f.clone();
                let moved = f.derived(move |y: &[f64]| &gb * f2.eval(y));
                let (_, nm) = spinor_derivatives(&spec.chart, &moved, &sp).unwrap();
                let mut nabla_eb = vec![0.0; n];
                for (c, v) in nabla_eb.iter_mut().enumerate() {
                    *v = sp.frame.signature[c] * sp.omega[b][c][a];
                }
                let want = rep.vector_action(&nabla_eb, &phi).unwrap() + &rep.generators[b] * &nf[a];
                assert!(spinor_norm(&(&nm[a] - want)) < 1e-7, "{} a={a} b={b}", spec.name);
            }
        }
    }
}

#[test]
fn spinor_connection_is_metric_and_clifford_compatible() {
    check_compatibility(&pp_wave(4, Profile::default_for(4)).unwrap());
    check_compatibility(&einstein_sasaki_h2().unwrap());
}

#[test]
fn connection_forms_from_christoffels() {
    let spec = einstein_sasaki_h2().unwrap();
    let chart = &spec.chart;
    let n = chart.dim();
    for x in point_sets(&spec).into_iter().take(3) {
        let (frame, g, w) = spin_connection(chart, &x).unwrap();
        let gam = christoffel(chart, &x).unwrap();
        let h = 1e-5;
        for a in 0..n {
            for c in 0..n {
                let ec = frame.vector(c);
                let at = |t: f64| {
                    let y: Vec<f64> = x.iter().zip(&ec).map(|(p, q)| p + t * q).collect();
                    frame_at(chart, &y, 0).unwrap().vector(a)
                };
                let (p, m) = (at(h), at(-h));
                let ea = frame.vector(a);
                let cov: Vec<f64> = (0..n)
                    .map(|k| {
                        let dir = (p[k] - m[k]) / (2.0 * h);
                        let conn: f64 = (0..n)
                            .map(|i| (0..n).map(|j| gam[k][i][j] * ec[i] * ea[j]).sum::<f64>())
                            .sum();
                        dir + conn
                    })
                    .collect();
                for b in 0..n {
                    let eb = frame.vector(b);
                    let want: f64 = (0..n)
                        .map(|i| (0..n).map(|j| g[i][j] * cov[i] * eb[j]).sum::<f64>())
                        .sum();
                    assert!((w[a][b][c] - want).abs() < 1e-8, "ω_{a}{b}(e_{c})");
                    assert!((w[a][b][c] + w[b][a][c]).abs() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn wrong_spinor_on_pp_wave_fails_integrability() {
    let spec = pp_wave(4, Profile::default_for(4)).unwrap();
    let rep = spec_rep(&spec);
    let good = &spec.spinor("phi").unwrap().field;
    let pts = point_sets(&spec);
    assert!(
        special_spinor_check(&spec.chart, good, SpecialKind::Parallel, &pts, 1e-9)
            .unwrap()
            .pass
    );
    let bad = SpinorField::constant(rep.clone(), "pp-wave", rep.standard_basis_spinor(&[1, -1]).unwrap());
    let v = special_spinor_check(&spec.chart, &bad, SpecialKind::Parallel, &pts, 1e-9).unwrap();
    assert!(!v.pass && v.max_residual > 1e-2);
    let r = integrability_residuals(&spec.chart, &bad, &[0.1, 0.2, 0.3, -0.2], 1e-8).unwrap();
    assert!(!r.pass());
    assert!(r.residual("W(η)·φ = 0").unwrap() > 1e-2);
}

#[test]
fn conformal_laws_for_a_generic_field() {
    let spec = pp_wave(4, Profile::default_for(4)).unwrap();
    let f = generic_field(spec_rep(&spec), "pp-wave", 12);
    let sigma: ScalarFn = Arc::new(|xs: &[Jet]| &xs[0] * 0.2 - xs[2].square() * 0.3 + &xs[1] * &xs[3] * 0.1);
    let r = conformal_covariance_check(&spec.chart, sigma.clone(), &f, &point_sets(&spec)[..4], 1e-6).unwrap();
    assert!(r.pass(), "{:?}", r.entries);

    let tilde = spec.chart.conformal_rescale(sigma);
    let x = [0.1, -0.2, 0.3, 0.4];
    let c = 0.7f64;
    let constant: ScalarFn = Arc::new(move |xs: &[Jet]| xs[0].lift(c));
    let scaled = spec.chart.conformal_rescale(constant);
    let d = dirac_operator(&spec.chart, &f, &x).unwrap();
    let ds = dirac_operator(&scaled, &f.regauged(scaled.name.clone()), &x).unwrap();
    assert!(spinor_norm(&(ds - d * C64::new((-c).exp(), 0.0))) < 1e-9);
    assert!(tilde.name.contains("rescaled"));
}

#[test]
fn rescaling_needs_the_spinor_weight() {
    let spec = build_geometry("pp-wave-rescaled", &serde_json::Value::Null).unwrap();
    let base = pp_wave(4, Profile::default_for(4)).unwrap();
    let weighted = &spec.spinor("phi").unwrap().field;
    let bare = base.spinor("phi").unwrap().field.regauged(spec.chart.name.clone());
    let x = [0.2, 0.3, -0.4, 0.1];
    assert!(twistor_residual(&spec.chart, weighted, &x).unwrap() < 1e-8);
    assert!(twistor_residual(&spec.chart, &bare, &x).unwrap() > 1e-3);
}

#[test]
fn killing_spinors_on_einstein_sasaki() {
    let spec = einstein_sasaki_h2().unwrap();
    let x = spec.chart.center();
    let plus = &spec.spinor("phi_plus").unwrap().field;
    let lam = killing_number(&spec.chart, plus, &x).unwrap();
    assert!((lam - C64::new(0.0, 0.5)).norm() < 1e-8);
    let flat = minkowski(3).unwrap();
    let tw = &flat.spinor("phi_uv").unwrap().field;
    assert!(killing_decompose(&flat.chart, tw, &point_sets(&flat), 1e-8).is_err());
}

#[test]
fn lightlike_analysis_on_flat_space() {
    let spec = minkowski(4).unwrap();
    let null: VectorFn =
        Arc::new(|xs: &[Jet]| vec![xs[0].lift(1.0), xs[0].lift(1.0), xs[0].lift(0.0), xs[0].lift(0.0)]);
    let a = lightlike_killing_analysis(&spec.chart, &null, &[0.1, 0.2, 0.3, 0.4], 1e-8).unwrap();
    assert_eq!(a.epsilon, 0);
    assert!(a.twist < 1e-14);
    let timelike = spec.vector("d0").unwrap();
    assert!(matches!(
        lightlike_killing_analysis(&spec.chart, timelike, &[0.0; 4], 1e-8),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn parallel_transport_invariants() {
    let flat = minkowski(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let v = random_vector(&mut rng, 4);
    let square = vec![
        vec![0.0, 0.0, 0.0, 0.0],
        vec![0.5, 0.0, 0.0, 0.0],
        vec![0.5, 0.5, 0.0, 0.0],
        vec![0.0, 0.5, 0.0, 0.0],
        vec![0.0, 0.0, 0.0, 0.0],
    ];
    match parallel_transport(&flat.chart, None, &square, Transported::Vector(v.clone())).unwrap() {
        Transported::Vector(w) => assert!(w.iter().zip(&v).all(|(p, q)| (p - q).abs() < 1e-12)),
        _ => unreachable!(),
    }

    let es = einstein_sasaki_h2().unwrap();
    let rep = spec_rep(&es);
    let c = es.chart.center();
    let path: Vec<Vec<f64>> = (0..4)
        .map(|k| {
            c.iter()
                .enumerate()
                .map(|(i, p)| p + 0.1 * (k as f64) * if i == 1 { 1.0 } else { 0.5 })
                .collect()
        })
        .collect();
    let gdot = |g: &[Vec<f64>], a: &[f64], b: &[f64]| -> f64 {
        (0..a.len())
            .map(|i| (0..a.len()).map(|j| g[i][j] * a[i] * b[j]).sum::<f64>())
            .sum()
    };
    let u = random_vector(&mut rng, 3);
    let end = path.last().unwrap().clone();
    let g0 = es.chart.metric_values(&c);
    let g1 = es.chart.metric_values(&end);
    match parallel_transport(&es.chart, None, &path, Transported::Vector(u.clone())).unwrap() {
        Transported::Vector(w) => assert!((gdot(&g0, &u, &u) - gdot(&g1, &w, &w)).abs() < 1e-9),
        _ => unreachable!(),
    }
    let phi: Spinor = random_spinor(&mut rng, rep.spinor_dim);
    match parallel_transport(&es.chart, Some(&rep), &path, Transported::Spinor(phi.clone())).unwrap() {
        Transported::Spinor(psi) => {
            let a = rep.indefinite_inner(&phi, &phi);
            let b = rep.indefinite_inner(&psi, &psi);
            assert!((a - b).norm() < 1e-9);
            assert!(spinor_norm(&(psi - &phi)) > 1e-4);
        }
        _ => unreachable!(),
    }

    let pp = pp_wave(4, Profile::default_for(4)).unwrap();
    let prep = spec_rep(&pp);
    let par = pp.spinor("phi").unwrap().field.eval(&[0.0; 4]);
    let loop_path = vec![
        vec![0.0; 4],
        vec![0.0, 0.4, 0.3, 0.0],
        vec![0.2, 0.1, -0.3, 0.5],
        vec![0.0; 4],
    ];
    match parallel_transport(&pp.chart, Some(&prep), &loop_path, Transported::Spinor(par.clone())).unwrap() {
        Transported::Spinor(psi) => assert!(spinor_norm(&(psi - par)) < 1e-9),
        _ => unreachable!(),
    }
    let outside = vec![vec![0.0; 4], vec![2.0, 0.0, 0.0, 0.0]];
    assert!(matches!(
        parallel_transport(&pp.chart, None, &outside, Transported::Vector(v)),
        Err(Error::OutsideDomain)
    ));
}
