//! Verification suites behind the command-line runner.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::clifford::{
    build_rep, build_rep_alt3, build_rep_quaternionic5, build_structure_map, max_abs, spin_element, spinor_norm,
    vector_rep, CliffordRep, Form, Spinor, C64, I,
};
use crate::error::{Error, Result};
use crate::geometry::chart::ScalarFn;
use crate::geometry::curvature::curvature_pack;
use crate::invariants::{dirac_current, lightlike_identity_check, minkowski_square, orbit_identity_check};
use crate::jet::Jet;
use crate::models::expect::spot_points;
use crate::models::flat::minkowski_twistor;
use crate::models::{build_geometry, check_expectations, CheckConfig, CheckRecord, GeometrySpec, REGISTRY};
use crate::report::IdentityReport;
use crate::spin::operators::twistor_components;
use crate::spin::{conformal_covariance_check, dirac_operator, lightlike_killing_analysis, SpinorField};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Number of random spinors per algebraic identity.
pub const ALGEBRA_SAMPLES: usize = 1000;
/// Number of random triples for adjointness and equivariance.
pub const ALGEBRA_TRIPLES: usize = 100;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub version: String,
    pub geometry: String,
    pub params: Value,
    pub records: Vec<CheckRecord>,
    pub pass: bool,
    /// Seconds.
    pub wall_time: f64,
}

impl SuiteReport {
    pub fn new(geometry: impl Into<String>, params: Value, records: Vec<CheckRecord>, start: Instant) -> Self {
        let pass = records.iter().all(|r| r.pass);
        SuiteReport {
            version: VERSION.into(),
            geometry: geometry.into(),
            params,
            records,
            pass,
            wall_time: start.elapsed().as_secs_f64(),
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn random_spinor(rng: &mut impl Rng, d: usize) -> Spinor {
    Spinor::from_fn(d, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

pub fn random_vector(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

pub fn random_two_form(rng: &mut impl Rng, n: usize, scale: f64) -> Form {
    Form::from_fn(n, 2, |_| rng.gen_range(-scale..scale))
}

/// `s·(a ⊗ u(1))` for a random spin element `s` and random `a`.
pub fn boosted_pure_spinor(rng: &mut impl Rng, rep: &CliffordRep) -> Result<Spinor> {
    let d = rep.spinor_dim;
    let a = random_spinor(rng, d / 2);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let u1 = [C64::new(s, 0.0), C64::new(0.0, -s)];
    let phi = Spinor::from_fn(d, |i, _| a[i / 2] * u1[i % 2]);
    let g = spin_element(rep, &random_two_form(rng, rep.n, 0.7))?;
    Ok(g * phi)
}

fn tol(cfg: &CheckConfig, default: f64) -> f64 {
    cfg.tol.unwrap_or(default)
}

fn worst_into(worst: &mut IdentityReport, r: IdentityReport) {
    for e in r.entries {
        match worst.entries.iter_mut().find(|o| o.name == e.name) {
            Some(o) => {
                if e.residual > o.residual || !e.residual.is_finite() {
                    o.residual = e.residual;
                }
                o.pass &= e.pass;
            }
            None => worst.entries.push(e),
        }
    }
}

fn push_report(out: &mut Vec<CheckRecord>, module: &str, op: &str, prefix: &str, r: &IdentityReport) {
    for e in &r.entries {
        out.push(
            CheckRecord::new(module, op, format!("{prefix}{}", e.name), e.residual, e.tolerance).with_pass(e.pass),
        );
    }
}

fn vec_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Every Clifford and spinor-invariant check for dimension `n`.
pub fn algebra_records(n: usize, cfg: &CheckConfig) -> Result<Vec<CheckRecord>> {
    let rep = build_rep(n)?;
    let mut rng = rng_for(cfg.seed, n as u64);
    let d = rep.spinor_dim;
    let mut out = Vec::new();
    let m = "clifford_core";
    let si = "spinor_invariants";

    out.push(CheckRecord::new(
        m,
        "build_rep",
        "Γ_iΓ_j + Γ_jΓ_i = -2ε_iδ_ij I",
        rep.clifford_residual(),
        tol(cfg, 1e-12),
    ));

    let mut adj: f64 = 0.0;
    let mut herm: f64 = 0.0;
    for _ in 0..ALGEBRA_TRIPLES {
        let x = random_vector(&mut rng, n);
        let phi = random_spinor(&mut rng, d);
        let psi = random_spinor(&mut rng, d);
        let scale = spinor_norm(&phi) * spinor_norm(&psi);
        let xn = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let lhs = rep.indefinite_inner(&rep.vector_action(&x, &phi)?, &psi);
        let rhs = rep.indefinite_inner(&phi, &rep.vector_action(&x, &psi)?);
        adj = adj.max((lhs - rhs).norm() / (scale * xn));
        let a = rep.indefinite_inner(&phi, &psi);
        let b = rep.indefinite_inner(&psi, &phi);
        herm = herm.max((a - b.conj()).norm() / scale);
    }
    out.push(CheckRecord::new(
        m,
        "indefinite_inner",
        "⟨X·φ,ψ⟩ = ⟨φ,X·ψ⟩",
        adj,
        tol(cfg, 1e-10),
    ));
    out.push(CheckRecord::new(
        m,
        "indefinite_inner",
        "⟨ψ,φ⟩ = conj⟨φ,ψ⟩",
        herm,
        tol(cfg, 1e-12),
    ));

    let mut v1: f64 = 0.0;
    let mut spacelike: f64 = 0.0;
    let mut errors = 0usize;
    for _ in 0..ALGEBRA_SAMPLES {
        let phi = random_spinor(&mut rng, d);
        let nn = spinor_norm(&phi).powi(2);
        match dirac_current(&rep, &phi) {
            Ok(v) => {
                v1 = v1.max((v.components[0] - nn).abs() / nn);
                spacelike = spacelike.max(v.square().max(0.0) / (nn * nn));
            }
            Err(_) => errors += 1,
        }
    }
    out.push(
        CheckRecord::new(si, "dirac_current", "current is real", errors as f64, 0.0)
            .detail(format!("{errors} of {ALGEBRA_SAMPLES} non-real")),
    );
    out.push(CheckRecord::new(
        si,
        "dirac_current",
        "V^1 = |φ|², so ℓ(φ) = 0 only for φ = 0",
        v1,
        tol(cfg, 1e-12),
    ));
    out.push(CheckRecord::new(
        si,
        "dirac_current",
        "g(V,V) ≤ 0",
        spacelike,
        tol(cfg, 1e-12),
    ));

    let mut eqv: f64 = 0.0;
    let mut iso: f64 = 0.0;
    let mut inv: f64 = 0.0;
    let eta = |i: usize| if i == 0 { -1.0 } else { 1.0 };
    for _ in 0..ALGEBRA_TRIPLES {
        let s = spin_element(&rep, &random_two_form(&mut rng, n, 0.7))?;
        let lam = vector_rep(&rep, &s)?;
        let phi = random_spinor(&mut rng, d);
        let psi = random_spinor(&mut rng, d);
        let sphi = &s * &phi;
        let vs = dirac_current(&rep, &sphi)?.components;
        let v = dirac_current(&rep, &phi)?.components;
        let lv: Vec<f64> = (0..n).map(|i| (0..n).map(|j| lam[(i, j)] * v[j]).sum()).collect();
        let vn = vs.iter().map(|x| x * x).sum::<f64>().sqrt();
        eqv = eqv.max(vec_dist(&vs, &lv) / vn);
        for i in 0..n {
            for j in 0..n {
                let g: f64 = (0..n).map(|k| lam[(k, i)] * eta(k) * lam[(k, j)]).sum();
                let target = if i == j { eta(i) } else { 0.0 };
                iso = iso.max((g - target).abs());
            }
        }
        let a = rep.indefinite_inner(&sphi, &(&s * &psi));
        let b = rep.indefinite_inner(&phi, &psi);
        inv = inv.max((a - b).norm() / (spinor_norm(&phi) * spinor_norm(&psi)));
    }
    out.push(CheckRecord::new(
        si,
        "dirac_current",
        "V(s·φ) = Λ(s)V(φ)",
        eqv,
        tol(cfg, 1e-9),
    ));
    out.push(CheckRecord::new(
        m,
        "vector_rep",
        "Λ(s) ∈ O(1,n-1)",
        iso,
        tol(cfg, 1e-9),
    ));
    out.push(CheckRecord::new(
        m,
        "spin_element",
        "⟨s·φ,s·ψ⟩ = ⟨φ,ψ⟩",
        inv,
        tol(cfg, 1e-9),
    ));

    let mut light = IdentityReport::new(tol(cfg, 1e-9));
    for _ in 0..ALGEBRA_SAMPLES {
        let phi = boosted_pure_spinor(&mut rng, &rep)?;
        match lightlike_identity_check(&rep, &phi, tol(cfg, 1e-9)) {
            Ok(r) => worst_into(&mut light, r),
            Err(e) => {
                out.push(CheckRecord::failure(
                    si,
                    "lightlike_identity_check",
                    "boosted a⊗u(1) is lightlike",
                    &e,
                ));
                break;
            }
        }
    }
    push_report(&mut out, si, "lightlike_identity_check", "s·(a⊗u(1)): ", &light);

    if n <= 7 {
        let j = if n % 2 == 1 {
            Some(build_structure_map(&rep)?)
        } else {
            None
        };
        let mut orbit = IdentityReport::new(tol(cfg, 1e-9));
        let proj = if n.is_multiple_of(2) {
            Some((rep.parity_projector(1)?, rep.parity_projector(-1)?))
        } else {
            None
        };
        for k in 0..ALGEBRA_SAMPLES {
            let mut phi = random_spinor(&mut rng, d);
            if let Some((p, q)) = &proj {
                phi = if k % 2 == 0 { p * phi } else { q * phi };
            }
            worst_into(
                &mut orbit,
                orbit_identity_check(&rep, &phi, j.as_ref(), tol(cfg, 1e-9))?,
            );
        }
        let prefix = if n.is_multiple_of(2) { "half spinors: " } else { "" };
        push_report(&mut out, si, "orbit_identity_check", prefix, &orbit);
    }

    if [3, 5, 7].contains(&n) {
        out.extend(structure_records(&rep, &mut rng, cfg)?);
        out.extend(representative_records(n, cfg)?);
    }
    Ok(out)
}

fn structure_records(rep: &CliffordRep, rng: &mut ChaCha8Rng, cfg: &CheckConfig) -> Result<Vec<CheckRecord>> {
    let n = rep.n;
    let j = build_structure_map(rep)?;
    let name = if n == 3 { "τ" } else { "J" };
    let (sign, square, pair) = match n {
        3 => (-1.0, 1.0, -1.0),
        5 => (1.0, -1.0, 1.0),
        _ => (-1.0, -1.0, -1.0),
    };
    let m = "clifford_core";
    let mut out = Vec::new();
    let mut comm: f64 = 0.0;
    for g in &rep.generators {
        let lhs = &j.matrix * g.map(|z| z.conj());
        let rhs = g * &j.matrix * C64::new(j.commutation_sign, 0.0);
        comm = comm.max(max_abs(&(lhs - rhs)));
    }
    let sq = max_abs(&(&j.matrix * j.matrix.map(|z| z.conj()) - rep.identity() * C64::new(j.square, 0.0)));
    let sign_txt = if sign > 0.0 { "" } else { "-" };
    out.push(
        CheckRecord::new(
            m,
            "build_structure_map",
            format!("{name}(X·φ) = {sign_txt}X·{name}(φ)"),
            comm,
            tol(cfg, 1e-12),
        )
        .with_pass(comm <= tol(cfg, 1e-12) && j.commutation_sign == sign),
    );
    let sq_txt = if square > 0.0 { "" } else { "-" };
    out.push(
        CheckRecord::new(
            m,
            "build_structure_map",
            format!("{name}² = {sq_txt}1"),
            sq,
            tol(cfg, 1e-12),
        )
        .with_pass(sq <= tol(cfg, 1e-12) && j.square == square),
    );
    let mut pr: f64 = 0.0;
    for _ in 0..ALGEBRA_TRIPLES {
        let phi = random_spinor(rng, rep.spinor_dim);
        let psi = random_spinor(rng, rep.spinor_dim);
        let a = rep.indefinite_inner(&j.apply(&phi), &j.apply(&psi));
        let b = rep.indefinite_inner(&psi, &phi) * C64::new(pair, 0.0);
        pr = pr.max((a - b).norm() / (spinor_norm(&phi) * spinor_norm(&psi)));
    }
    let p_txt = if pair > 0.0 { "" } else { "-" };
    out.push(CheckRecord::new(
        m,
        "build_structure_map",
        format!("⟨{name}φ,{name}ψ⟩ = {p_txt}⟨ψ,φ⟩"),
        pr,
        tol(cfg, 1e-10),
    ));
    Ok(out)
}

/// The `n = 7` representative `σ_λ = b_1 + λ_1 b_3 + conj(λ_2) J(b_3)` with
/// `b_1 = u(1,1,1)` and `b_3 = i·u(1,1,-1)`, for imaginary `λ_1`.
pub fn sigma_lambda(rep: &CliffordRep, l1: C64, l2: C64) -> Result<Spinor> {
    let j = build_structure_map(rep)?;
    let b1 = rep.standard_basis_spinor(&[1, 1, 1])?;
    let b3 = rep.standard_basis_spinor(&[1, 1, -1])? * I;
    Ok(&b1 + &b3 * l1 + j.apply(&b3) * l2.conj())
}

/// Orbit representatives reproduced against their closed-form currents.
pub fn representative_records(n: usize, cfg: &CheckConfig) -> Result<Vec<CheckRecord>> {
    let t = tol(cfg, 1e-12);
    let si = "spinor_invariants";
    let mut out = Vec::new();
    match n {
        3 => {
            let rep = build_rep_alt3();
            let mut worst: f64 = 0.0;
            for c in [0.0, 0.7, -1.3, 2.5] {
                let s = Spinor::from_vec(vec![C64::new(1.0, c), C64::new(0.0, 0.0)]);
                let v = dirac_current(&rep, &s)?.components;
                let k = 1.0 + c * c;
                worst = worst.max(vec_dist(&v, &[k, -k, 0.0]));
            }
            out.push(CheckRecord::new(
                si,
                "dirac_current",
                "σ_2 = (1+ic, 0): V = (1+c², -1-c², 0)",
                worst,
                t,
            ));
            let s3 = Spinor::from_vec(vec![I, C64::new(0.0, 0.0)]);
            let v = dirac_current(&rep, &s3)?.components;
            out.push(CheckRecord::new(
                si,
                "dirac_current",
                "σ_3 = (i, 0): V = (1, -1, 0)",
                vec_dist(&v, &[1.0, -1.0, 0.0]),
                t,
            ));
            let r = lightlike_identity_check(&rep, &s3, t)?;
            push_report(&mut out, si, "lightlike_identity_check", "σ_3: ", &r);
        }
        5 => {
            let rep = build_rep_quaternionic5();
            out.push(CheckRecord::new(
                "clifford_core",
                "build_rep_quaternionic5",
                "quaternionic model: Clifford relations",
                rep.clifford_residual(),
                t,
            ));
            let r = 1.7;
            let z = C64::new(0.0, 0.0);
            let mut worst: f64 = 0.0;
            for s in [[C64::new(r, 0.0), z, z, z], [z, z, C64::new(r, 0.0), z]] {
                let v = dirac_current(&rep, &Spinor::from_vec(s.to_vec()))?.components;
                worst = worst.max(vec_dist(&v, &[r * r, 0.0, 0.0, 0.0, 0.0]));
            }
            out.push(CheckRecord::new(
                si,
                "dirac_current",
                "σ_1 = (r,0), σ_2 = (0,r): V = r² e_1",
                worst,
                t,
            ));
            let s3 = Spinor::from_vec(vec![C64::new(1.0, 0.0), z, C64::new(1.0, 0.0), z]);
            let v = dirac_current(&rep, &s3)?.components;
            out.push(
                CheckRecord::new(
                    si,
                    "dirac_current",
                    "σ_3 = (1,1): V = 2(e_1 - e_2)",
                    vec_dist(&v, &[2.0, -2.0, 0.0, 0.0, 0.0]),
                    t,
                )
                .detail(format!("V = {v:?}")),
            );
            out.push(CheckRecord::new(
                si,
                "dirac_current",
                "σ_3: g(V,V) = 0",
                minkowski_square(&v).abs(),
                t,
            ));
            let r = orbit_identity_check(&rep, &s3, None, t)?;
            push_report(&mut out, si, "orbit_identity_check", "σ_3: ", &r);
        }
        7 => {
            let rep = build_rep(7)?;
            let j = build_structure_map(&rep)?;
            let mut cur: f64 = 0.0;
            let mut norm: f64 = 0.0;
            let mut orbit = IdentityReport::new(t);
            for (l1, l2) in [
                (C64::new(0.0, 0.3), C64::new(0.2, 0.5)),
                (C64::new(0.0, -1.1), C64::new(0.7, -0.1)),
                (C64::new(0.0, 0.0), C64::new(0.0, 0.0)),
            ] {
                let s = sigma_lambda(&rep, l1, l2)?;
                let v = dirac_current(&rep, &s)?.components;
                let l = l1.norm_sqr() + l2.norm_sqr();
                let mut target = vec![0.0; 7];
                target[0] = 1.0 + l;
                target[1] = 1.0 - l;
                cur = cur.max(vec_dist(&v, &target));
                norm = norm.max((rep.indefinite_inner(&s, &s) + I * 2.0 * l1).norm());
                worst_into(&mut orbit, orbit_identity_check(&rep, &s, Some(&j), t)?);
            }
            out.push(CheckRecord::new(
                si,
                "dirac_current",
                "σ_λ: V = (1+|λ|²)e_1 + (1-|λ|²)e_2",
                cur,
                t,
            ));
            out.push(CheckRecord::new(
                si,
                "dirac_current",
                "σ_λ: ⟨σ_λ,σ_λ⟩ = -2iλ_1",
                norm,
                t,
            ));
            push_report(&mut out, si, "orbit_identity_check", "σ_λ: ", &orbit);
        }
        _ => {}
    }
    Ok(out)
}

/// Algebra suite for one dimension.
pub fn algebra_suite(n: usize, cfg: &CheckConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let records = algebra_records(n, cfg)?;
    Ok(SuiteReport::new(
        format!("algebra n={n}"),
        json!({ "n": n }),
        records,
        start,
    ))
}

/// Expectation suite of one registered geometry.
pub fn geometry_suite(name: &str, params: &Value, cfg: &CheckConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let spec = build_geometry(name, params)?;
    let records = check_expectations(&spec, cfg);
    Ok(SuiteReport::new(spec.name.clone(), spec.params.clone(), records, start))
}

/// Random quadratic polynomial with coefficients in `[-scale, scale]`.
pub fn random_polynomial(rng: &mut impl Rng, n: usize, scale: f64) -> ScalarFn {
    let c0: f64 = rng.gen_range(-scale..scale);
    let lin: Vec<f64> = (0..n).map(|_| rng.gen_range(-scale..scale)).collect();
    let quad: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(-scale..scale)).collect())
        .collect();
    Arc::new(move |x: &[Jet]| {
        let mut s = x[0].lift(c0);
        for i in 0..n {
            s += &x[i] * lin[i];
            for j in i..n {
                s += (&x[i] * &x[j]) * quad[i][j];
            }
        }
        s
    })
}

/// Conformal laws of `D` and `P` on Minkowski and the default pp-wave with
/// seeded random polynomial `σ`.
pub fn conformal_records(cfg: &CheckConfig) -> Result<Vec<CheckRecord>> {
    let mut rng = rng_for(cfg.seed, 100);
    let mut out = Vec::new();
    for name in ["minkowski", "pp-wave"] {
        let spec = build_geometry(name, &Value::Null)?;
        let rep = spec
            .rep
            .clone()
            .ok_or_else(|| Error::Precondition("geometry has no spinor bundle".into()))?;
        let n = spec.chart.dim();
        let d = rep.spinor_dim;
        let mut fields: Vec<(String, SpinorField)> =
            spec.spinors.iter().map(|s| (s.name.clone(), s.field.clone())).collect();
        let u = random_spinor(&mut rng, d);
        let v = random_spinor(&mut rng, d);
        let w = random_spinor(&mut rng, d);
        let generic = minkowski_twistor(rep.clone(), &spec.chart.name, u, v);
        // A non-special field: add a quadratic term.
        let generic = generic.scaled(|x: &[f64]| C64::new(1.0 + 0.3 * x[1] * x[1], 0.2 * x[0]));
        fields.push((
            "generic".into(),
            generic.combine(
                C64::new(1.0, 0.0),
                &SpinorField::constant(rep.clone(), &spec.chart.name, w),
                C64::new(0.5, 0.0),
            ),
        ));
        let points = spot_points(&spec.chart, cfg.spot, cfg.seed ^ 0x5eed);
        for (fname, f) in fields {
            let sigma = random_polynomial(&mut rng, n, 0.25);
            let r = conformal_covariance_check(&spec.chart, sigma, &f, &points, tol(cfg, 1e-6))?;
            push_report(
                &mut out,
                "spin_geometry",
                "conformal_covariance_check",
                &format!("{name} {fname}: "),
                &r,
            );
        }
    }
    Ok(out)
}

/// Parameter sets run by `suite all` beyond the registry defaults.
pub fn extra_parameter_sets() -> Vec<(&'static str, Value)> {
    let mut v: Vec<(&'static str, Value)> = [3, 5, 6, 7].iter().map(|&n| ("minkowski", json!({ "n": n }))).collect();
    v.push(("pp-wave", json!({ "n": 6 })));
    v.push(("product", json!({ "k": 1, "base": "flat_R4" })));
    v.push(("product", json!({ "k": 2, "base": "flat_R6" })));
    v.push((
        "warped-product",
        json!({ "profile": { "type": "cosh", "d": 1.0, "c": 0.5 }, "base_dim": 3 }),
    ));
    v
}

fn labelled(label: &str, records: Vec<CheckRecord>) -> impl Iterator<Item = CheckRecord> + '_ {
    records.into_iter().map(move |mut r| {
        r.identity = format!("[{label}] {}", r.identity);
        r
    })
}

fn params_label(name: &str, params: &Value) -> String {
    match params.as_object() {
        Some(o) if !o.is_empty() => format!("{name} {params}"),
        _ => name.to_string(),
    }
}

/// The full run: algebra for `n = 2..=8`, every registered geometry, extra
/// parameter sets and the conformal laws.
pub fn suite_all(cfg: &CheckConfig) -> SuiteReport {
    let start = Instant::now();
    let mut records = Vec::new();
    for n in 2..=8 {
        let label = format!("algebra n={n}");
        match algebra_records(n, cfg) {
            Ok(r) => records.extend(labelled(&label, r)),
            Err(e) => records.push(CheckRecord::failure("cli_runner", "cmd_algebra", label, &e)),
        }
    }
    let mut sets: Vec<(&str, Value)> = REGISTRY.iter().map(|&n| (n, Value::Null)).collect();
    sets.extend(extra_parameter_sets());
    for (name, params) in sets {
        let label = params_label(name, &params);
        match build_geometry(name, &params) {
            Ok(spec) => records.extend(labelled(&label, check_expectations(&spec, cfg))),
            Err(e) => records.push(CheckRecord::failure("cli_runner", "cmd_geometry", label, &e)),
        }
    }
    match conformal_records(cfg) {
        Ok(r) => records.extend(labelled("conformal", r)),
        Err(e) => records.push(CheckRecord::failure("cli_runner", "cmd_suite_all", "conformal", &e)),
    }
    SuiteReport::new("all", json!({ "seed": cfg.seed }), records, start)
}

/// Quantities available to the single-point command.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum PointQuery {
    Curvature,
    Dirac,
    TwistorResidual,
    KillingAnalysis,
}

fn spinor_json(phi: &Spinor) -> Value {
    json!(phi.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
}

fn pick_spinors<'a>(spec: &'a GeometrySpec, name: Option<&str>) -> Result<Vec<&'a crate::models::BundledSpinor>> {
    match name {
        Some(n) => Ok(vec![spec.spinor(n)?]),
        None => Ok(spec.spinors.iter().collect()),
    }
}

/// Single-point computation as JSON.
pub fn point_dump(
    spec: &GeometrySpec,
    x: &[f64],
    what: PointQuery,
    spinor: Option<&str>,
    vector: Option<&str>,
) -> Result<Value> {
    let chart = &spec.chart;
    if x.len() != chart.dim() {
        return Err(Error::DimensionMismatch {
            expected: chart.dim(),
            got: x.len(),
        });
    }
    if !chart.contains(x) {
        return Err(Error::OutsideDomain);
    }
    let head = json!({ "geometry": spec.name, "params": spec.params, "point": x });
    let body = match what {
        PointQuery::Curvature => serde_json::to_value(curvature_pack(chart, x)?)?,
        PointQuery::Dirac => {
            let mut list = Vec::new();
            for s in pick_spinors(spec, spinor)? {
                let phi = s.field.eval(x);
                let d = dirac_operator(chart, &s.field, x)?;
                let v = dirac_current(&s.field.rep, &phi)?;
                list.push(json!({
                    "spinor": s.name,
                    "value": spinor_json(&phi),
                    "dirac": spinor_json(&d),
                    "current": v,
                }));
            }
            json!(list)
        }
        PointQuery::TwistorResidual => {
            let mut list = Vec::new();
            for s in pick_spinors(spec, spinor)? {
                let p = twistor_components(chart, &s.field, x)?;
                let res = p.iter().map(spinor_norm).fold(0.0, f64::max);
                list.push(json!({
                    "spinor": s.name,
                    "residual": res,
                    "components": p.iter().map(spinor_json).collect::<Vec<_>>(),
                }));
            }
            json!(list)
        }
        PointQuery::KillingAnalysis => {
            let name = match vector {
                Some(v) => v.to_string(),
                None => spec
                    .vectors
                    .first()
                    .map(|v| v.name.clone())
                    .ok_or_else(|| Error::InvalidParams("geometry has no bundled vector field".into()))?,
            };
            let v = spec.vector(&name)?;
            let a = lightlike_killing_analysis(chart, v, x, 1e-6)?;
            let mut val = serde_json::to_value(a)?;
            if let Some(o) = val.as_object_mut() {
                o.insert("vector".into(), json!(name));
            }
            val
        }
    };
    let mut out = head;
    out.as_object_mut().expect("object").insert(
        serde_json::to_value(what)?.as_str().unwrap_or("result").to_string(),
        body,
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_two_passes() {
        let r = algebra_suite(2, &CheckConfig::default()).unwrap();
        assert!(r.pass, "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn bad_dimension() {
        assert!(matches!(
            algebra_suite(9, &CheckConfig::default()),
            Err(Error::DimensionOutOfRange(9))
        ));
    }

    #[test]
    fn boosted_spinor_is_lightlike() {
        let rep = build_rep(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let phi = boosted_pure_spinor(&mut rng, &rep).unwrap();
        let v = dirac_current(&rep, &phi).unwrap();
        assert!(v.square().abs() < 1e-9 * v.components[0].powi(2));
    }
}
