use std::f64::consts::PI;

use proptest::prelude::*;
use twistor_engine::clifford::{
    build_rep, build_structure_map, spin_element, spinor_norm, vector_rep, Form, Spinor, C64,
};
use twistor_engine::geometry::curvature_pack;
use twistor_engine::invariants::{dirac_current, orbit_identity_check};
use twistor_engine::jet::Jet;
use twistor_engine::models::{pp_wave, PolyTerm, Profile};

fn spinor_from(v: &[f64]) -> Spinor {
    Spinor::from_iterator(v.len() / 2, v.chunks(2).map(|c| C64::new(c[0], c[1])))
}

fn dim_and_data(max_n: usize) -> impl Strategy<Value = (usize, Vec<f64>, Vec<f64>, Vec<f64>)> {
    (2..=max_n).prop_flat_map(|n| {
        let d = 1usize << (n / 2);
        (
            Just(n),
            prop::collection::vec(-1.0..1.0f64, n),
            prop::collection::vec(-1.0..1.0f64, 2 * d),
            prop::collection::vec(-1.0..1.0f64, 2 * d),
        )
    })
}

fn odd_dim_spinor() -> impl Strategy<Value = (usize, Vec<f64>)> {
    prop::sample::select(vec![3usize, 5, 7])
        .prop_flat_map(|n| (Just(n), prop::collection::vec(-2.0..2.0f64, 2 << (n / 2))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn clifford_multiplication_is_self_adjoint((n, x, p, q) in dim_and_data(8)) {
        let rep = build_rep(n).unwrap();
        let (phi, psi) = (spinor_from(&p), spinor_from(&q));
        let a = rep.indefinite_inner(&rep.vector_action(&x, &phi).unwrap(), &psi);
        let b = rep.indefinite_inner(&phi, &rep.vector_action(&x, &psi).unwrap());
        prop_assert!((a - b).norm() < 1e-12);
        let h = rep.indefinite_inner(&psi, &phi).conj() - rep.indefinite_inner(&phi, &psi);
        prop_assert!(h.norm() < 1e-12);
        let twice = rep.vector_action(&x, &rep.vector_action(&x, &phi).unwrap()).unwrap();
        prop_assert!(spinor_norm(&(twice + &phi * C64::new(rep.metric(&x, &x), 0.0))) < 1e-12);
    }

    #[test]
    fn current_is_causal_and_future((n, _x, p, _q) in dim_and_data(8)) {
        let rep = build_rep(n).unwrap();
        let phi = spinor_from(&p);
        let v = dirac_current(&rep, &phi).unwrap();
        let nrm = spinor_norm(&phi).powi(2);
        prop_assert!((v.components[0] - nrm).abs() < 1e-12);
        prop_assert!(v.square() <= 1e-12);
    }

    #[test]
    fn orbit_identities_hold((n, p) in odd_dim_spinor()) {
        let rep = build_rep(n).unwrap();
        let j = build_structure_map(&rep).unwrap();
        let phi = spinor_from(&p);
        let r = orbit_identity_check(&rep, &phi, Some(&j), 1e-10).unwrap();
        prop_assert!(r.pass(), "{:?}", r.entries);
    }

    #[test]
    fn current_is_spin_equivariant(
        (n, _x, p, _q) in dim_and_data(6),
        w in prop::collection::vec(-0.6..0.6f64, 28),
    ) {
        let rep = build_rep(n).unwrap();
        let mut k = 0;
        let omega = Form::from_fn(n, 2, |_| { k += 1; w[k - 1] });
        let s = spin_element(&rep, &omega).unwrap();
        let lam = vector_rep(&rep, &s).unwrap();
        let phi = spinor_from(&p);
        let v = dirac_current(&rep, &phi).unwrap().components;
        let vs = dirac_current(&rep, &(&s * &phi)).unwrap().components;
        for i in 0..n {
            let want: f64 = (0..n).map(|j| lam[(i, j)] * v[j]).sum();
            prop_assert!((vs[i] - want).abs() < 1e-9 * (1.0 + want.abs()));
        }
        let a = rep.indefinite_inner(&(&s * &phi), &(&s * &phi));
        prop_assert!((a - rep.indefinite_inner(&phi, &phi)).norm() < 1e-10 * (1.0 + a.norm()));
    }

    #[test]
    fn jet_rules(a in -1.5..1.5f64, b in -1.5..1.5f64, x0 in -1.0..1.0f64, y0 in 0.5..1.5f64) {
        let xs = Jet::seed(&[x0, y0], 3);
        let f = (&xs[0] * a).exp() * (&xs[1] * b).sin() + xs[1].ln() * &xs[0];
        let ex = (a * x0).exp();
        let (s, c) = (b * y0).sin_cos();
        prop_assert!((f.value() - (ex * s + y0.ln() * x0)).abs() < 1e-12);
        prop_assert!((f.d1(0) - (a * ex * s + y0.ln())).abs() < 1e-12);
        prop_assert!((f.d1(1) - (b * ex * c + x0 / y0)).abs() < 1e-12);
        prop_assert!((f.d2(0, 1) - (a * b * ex * c + 1.0 / y0)).abs() < 1e-11);
        prop_assert!((f.d2(1, 1) - (-b * b * ex * s - x0 / (y0 * y0))).abs() < 1e-11);
        let g = xs[1].sqrt().powi(4) / &xs[1];
        prop_assert!((g.d1(1) - 1.0).abs() < 1e-11 && g.d2(1, 1).abs() < 1e-10);
        let h = (&xs[0] * PI).cos().square() + (&xs[0] * PI).sin().square();
        prop_assert!((h.value() - 1.0).abs() < 1e-12 && h.d1(0).abs() < 1e-11);
    }

    #[test]
    fn pp_wave_curvature_for_random_profiles(
        c in prop::collection::vec(-1.0..1.0f64, 4),
        x in prop::collection::vec(-0.8..0.8f64, 4),
    ) {
        let term = |coef: f64, powers: [u32; 3]| PolyTerm { coef, powers: powers.to_vec() };
        let terms = vec![
            term(c[0], [0, 2, 0]),
            term(c[1], [1, 1, 1]),
            term(c[2], [0, 0, 3]),
            term(c[3], [0, 1, 2]),
        ];
        let spec = pp_wave(4, Profile::Polynomial { terms }).unwrap();
        let cp = curvature_pack(&spec.chart, &x).unwrap();
        prop_assert!(cp.riemann_symmetry_residual() < 1e-12);
        prop_assert!(cp.weyl_trace_residual() < 1e-12);
        prop_assert!(cp.second_bianchi_residual() < 1e-11);
        // Δ_x f for f = c0 x1² + c1 s x1 x2 + c2 x2³ + c3 x1 x2²
        let lap = 2.0 * c[0] + 6.0 * c[2] * x[3] + 2.0 * c[3] * x[2];
        prop_assert!((cp.ricci[1][1] + 0.5 * lap).abs() < 1e-11);
        prop_assert!(cp.scalar.abs() < 1e-11);
    }
}
