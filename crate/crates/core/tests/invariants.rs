use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twistor_engine::clifford::{build_rep, build_structure_map, hermitian, spinor_norm, Spinor, C64};
use twistor_engine::invariants::{
    causal_type, dirac_current, lightlike_identity_check, minkowski_square, orbit_identity_check, CausalType,
};
use twistor_engine::suite::{boosted_pure_spinor, random_spinor, sigma_lambda};
use twistor_engine::Error;

/// Current computed straight from the matrices: `V^1 = (Γ1Γ1φ, φ)`,
/// `V^j = −(Γ1Γjφ, φ)`.
fn current_by_hand(n: usize, phi: &Spinor) -> Vec<f64> {
    let rep = build_rep(n).unwrap();
    let g1 = &rep.generators[0];
    (0..n)
        .map(|j| {
            let z = hermitian(&(g1 * &rep.generators[j] * phi), phi);
            if j == 0 {
                z.re
            } else {
                -z.re
            }
        })
        .collect()
}

#[test]
fn n2_current_of_basis_spinor() {
    let rep = build_rep(2).unwrap();
    let up = rep.standard_basis_spinor(&[1]).unwrap();
    let v = dirac_current(&rep, &up).unwrap();
    assert!((v.components[0] - 1.0).abs() < 1e-14);
    assert!((v.components[1] - 1.0).abs() < 1e-14);
    assert_eq!(v.causal_type, CausalType::Lightlike);
    assert!(v.future_directed);
}

#[test]
fn current_matches_matrix_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for n in 2..=8 {
        let rep = build_rep(n).unwrap();
        for _ in 0..10 {
            let phi = random_spinor(&mut rng, rep.spinor_dim);
            let v = dirac_current(&rep, &phi).unwrap();
            let h = current_by_hand(n, &phi);
            for (a, b) in v.components.iter().zip(&h) {
                assert!((a - b).abs() < 1e-12);
            }
            let nrm = spinor_norm(&phi).powi(2);
            assert!((v.components[0] - nrm).abs() < 1e-12 * (1.0 + nrm));
            assert!(v.square() <= 1e-12 * (1.0 + nrm * nrm));
        }
    }
}

#[test]
fn causal_classification() {
    assert_eq!(causal_type(&[1.0, 1.0, 0.0]), (CausalType::Lightlike, true));
    assert_eq!(causal_type(&[-1.0, 0.0, 1.0]), (CausalType::Lightlike, false));
    assert_eq!(causal_type(&[2.0, 1.0, 0.0]).0, CausalType::Timelike);
    assert_eq!(causal_type(&[0.5, 1.0, 0.0]).0, CausalType::Spacelike);
    assert_eq!(causal_type(&[0.0, 0.0, 0.0]).0, CausalType::Zero);
    assert_eq!(minkowski_square(&[2.0, 1.0, 1.0]), -2.0);
}

#[test]
fn current_vanishes_only_for_zero_spinor() {
    let rep = build_rep(5).unwrap();
    let v = dirac_current(&rep, &rep.zero_spinor()).unwrap();
    assert_eq!(v.causal_type, CausalType::Zero);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let tiny = random_spinor(&mut rng, rep.spinor_dim) * C64::new(1e-4, 0.0);
    assert_ne!(dirac_current(&rep, &tiny).unwrap().causal_type, CausalType::Zero);
}

#[test]
fn basis_spinors_and_boosts_are_lightlike() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 2..=8 {
        let rep = build_rep(n).unwrap();
        let mut nu = vec![1i8; rep.m];
        nu[0] = -1;
        let u = rep.standard_basis_spinor(&nu).unwrap();
        assert!(lightlike_identity_check(&rep, &u, 1e-12).unwrap().pass(), "n={n}");
        let b = boosted_pure_spinor(&mut rng, &rep).unwrap();
        assert!(
            lightlike_identity_check(&rep, &b, 1e-10).unwrap().pass(),
            "boosted n={n}"
        );
    }
}

#[test]
fn lightlike_check_rejects_timelike_current() {
    let rep = build_rep(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let phi = random_spinor(&mut rng, rep.spinor_dim);
    assert!(matches!(
        lightlike_identity_check(&rep, &phi, 1e-10),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn orbit_identities_in_odd_dimensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for n in [3, 5, 7] {
        let rep = build_rep(n).unwrap();
        let j = build_structure_map(&rep).unwrap();
        for _ in 0..20 {
            let phi = random_spinor(&mut rng, rep.spinor_dim);
            let r = orbit_identity_check(&rep, &phi, Some(&j), 1e-10).unwrap();
            assert!(r.pass(), "n={n}: {:?}", r.entries);
        }
    }
    let rep7 = build_rep(7).unwrap();
    let phi = random_spinor(&mut rng, rep7.spinor_dim);
    assert!(matches!(
        orbit_identity_check(&rep7, &phi, None, 1e-10),
        Err(Error::Precondition(_))
    ));
    let rep8 = build_rep(8).unwrap();
    assert!(orbit_identity_check(&rep8, &rep8.zero_spinor(), None, 1e-10).is_err());
}

#[test]
fn n7_representative_current() {
    let rep = build_rep(7).unwrap();
    for (l1, l2) in [
        (0.3, C64::new(0.2, -0.4)),
        (-1.2, C64::new(0.0, 0.0)),
        (0.0, C64::new(1.0, 1.0)),
    ] {
        let s = sigma_lambda(&rep, C64::new(0.0, l1), l2).unwrap();
        let v = dirac_current(&rep, &s).unwrap().components;
        let big_l = l1 * l1 + l2.norm_sqr();
        assert!((v[0] - (1.0 + big_l)).abs() < 1e-12);
        assert!((v[1] - (1.0 - big_l)).abs() < 1e-12);
        assert!(v[2..].iter().all(|c| c.abs() < 1e-12));
    }
}

#[test]
fn even_dimensions_need_half_spinors() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let rep = build_rep(4).unwrap();
    let phi = random_spinor(&mut rng, rep.spinor_dim);
    assert!(matches!(
        orbit_identity_check(&rep, &phi, None, 1e-10),
        Err(Error::Precondition(_))
    ));
    let half = rep.parity_projector(-1).unwrap() * phi;
    assert!(orbit_identity_check(&rep, &half, None, 1e-10).unwrap().pass());
}
