use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Expectation, GeometrySpec};
use crate::clifford::{build_structure_map, spinor_norm, CMat, C64};
use crate::error::{Error, Result};
use crate::geometry::chart::VectorFn;
use crate::geometry::curvature::{curvature_pack, local_jets, max_abs2, max_abs4};
use crate::geometry::diagnostics::{
    conformal_killing_residual, killing_residual, nabla_vector, pp_curvature_check, twist_measure,
};
use crate::geometry::frame::{frame_at, orthonormality_residual};
use crate::geometry::MetricChart;
use crate::invariants::{dirac_current, lightlike_identity_check, orbit_identity_check, CausalType};
use crate::jet::{Jet, JetMatrix};
use crate::report::IdentityReport;
use crate::spin::operators::special_residual;
use crate::spin::{
    fiber_phase, integrability_check, kaehler_flag_check, killing_decompose, lightlike_killing_analysis,
    ric_vv_variation, spin_point, spinor_derivative, SpecialKind, SpinorField,
};

/// Sampling and tolerance settings for expectation checks.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckConfig {
    /// Lattice points per active axis for cheap checks.
    pub grid: usize,
    /// Number of seeded random points for curvature-heavy checks.
    pub spot: usize,
    pub seed: u64,
    /// Overrides every default tolerance when set.
    pub tol: Option<f64>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            grid: 3,
            spot: 3,
            seed: 7,
            tol: None,
        }
    }
}

impl CheckConfig {
    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

/// One line of a suite report.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CheckRecord {
    pub module: String,
    pub op: String,
    pub identity: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckRecord {
    pub fn new(module: &str, op: &str, identity: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        CheckRecord {
            module: module.into(),
            op: op.into(),
            identity: identity.into(),
            residual,
            tolerance,
            pass: residual.is_finite() && residual <= tolerance,
            detail: None,
        }
    }

    pub fn with_pass(mut self, pass: bool) -> Self {
        self.pass = pass;
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    pub fn failure(module: &str, op: &str, identity: impl Into<String>, err: &Error) -> Self {
        CheckRecord {
            module: module.into(),
            op: op.into(),
            identity: identity.into(),
            residual: f64::INFINITY,
            tolerance: 0.0,
            pass: false,
            detail: Some(err.to_string()),
        }
    }
}

fn from_report(module: &str, op: &str, prefix: &str, rep: &IdentityReport) -> Vec<CheckRecord> {
    rep.entries
        .iter()
        .map(|e| {
            let id = if prefix.is_empty() {
                e.name.clone()
            } else {
                format!("{prefix}: {}", e.name)
            };
            CheckRecord::new(module, op, id, e.residual, e.tolerance).with_pass(e.pass)
        })
        .collect()
}

/// Merge per-point reports into one with the worst residual per entry.
fn worst_of(reports: &[IdentityReport]) -> IdentityReport {
    let mut out = reports.first().cloned().unwrap_or_default();
    for r in reports.iter().skip(1) {
        for e in &r.entries {
            match out.entries.iter_mut().find(|o| o.name == e.name) {
                Some(o) => {
                    if e.residual > o.residual || !e.residual.is_finite() {
                        o.residual = e.residual;
                    }
                    o.pass &= e.pass;
                }
                None => out.entries.push(e.clone()),
            }
        }
    }
    out
}

/// Seeded interior points, away from the chart boundary.
pub fn spot_points(chart: &MetricChart, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            chart
                .domain
                .iter()
                .map(|&(lo, hi)| {
                    let w = hi - lo;
                    rng.gen_range(lo + 0.15 * w..hi - 0.15 * w)
                })
                .collect()
        })
        .collect()
}

fn values(v: &[Jet]) -> Vec<f64> {
    v.iter().map(Jet::value).collect()
}

fn vector_at(v: &VectorFn, x: &[f64]) -> Vec<f64> {
    values(&v(&Jet::seed(x, 0)))
}

/// Dirac current of a spinor field as a coordinate vector field. Jets carry
/// the value and first derivatives (central differences); higher Taylor
/// coefficients are set to zero.
pub fn current_field(chart: &MetricChart, field: &SpinorField) -> VectorFn {
    let chart = chart.clone();
    let field = field.clone();
    let eval = move |x: &[f64]| -> Vec<f64> {
        let phi = field.eval(x);
        let v = dirac_current(&field.rep, &phi)
            .map(|c| c.components)
            .unwrap_or_else(|_| vec![f64::NAN; x.len()]);
        match frame_at(&chart, x, 0) {
            Ok(f) => f.to_coords(&v),
            Err(_) => vec![f64::NAN; x.len()],
        }
    };
    Arc::new(move |xs: &[Jet]| {
        let tab = xs[0].table().clone();
        let x = values(xs);
        let n = x.len();
        let v0 = eval(&x);
        let mut coeffs: Vec<Vec<f64>> = v0
            .iter()
            .map(|&v| {
                let mut c = vec![0.0; tab.len()];
                c[0] = v;
                c
            })
            .collect();
        if tab.order() >= 1 {
            for i in 0..n {
                let h = 1e-4 * (1.0 + x[i].abs());
                let d = |h: f64| {
                    let mut p = x.clone();
                    let mut m = x.clone();
                    p[i] += h;
                    m[i] -= h;
                    let (a, b) = (eval(&p), eval(&m));
                    a.iter().zip(&b).map(|(u, w)| (u - w) / (2.0 * h)).collect::<Vec<f64>>()
                };
                let (c1, c2) = (d(h), d(0.5 * h));
                let mut mono = vec![0u8; n];
                mono[i] = 1;
                let k = tab.index_of(&mono).expect("first-order monomial");
                for (comp, (a, b)) in coeffs.iter_mut().zip(c1.iter().zip(&c2)) {
                    comp[k] = (4.0 * b - a) / 3.0;
                }
            }
        }
        coeffs.into_iter().map(|c| Jet::from_coefficients(&tab, c)).collect()
    })
}

fn special_tolerance(kind: SpecialKind) -> f64 {
    match kind {
        SpecialKind::Parallel => 1e-7,
        SpecialKind::Killing { .. } => 1e-6,
        SpecialKind::Twistor => 1e-8,
    }
}

fn kind_label(kind: SpecialKind) -> String {
    match kind {
        SpecialKind::Parallel => "parallel".into(),
        SpecialKind::Killing { re, im } => format!("Killing (λ = {re} + {im}i)"),
        SpecialKind::Twistor => "twistor".into(),
    }
}

fn metric_negatives(chart: &MetricChart, x: &[f64]) -> usize {
    let g = chart.metric_values(x);
    let n = g.len();
    let m = DMatrix::from_fn(n, n, |i, j| g[i][j]);
    SymmetricEigen::new(m).eigenvalues.iter().filter(|&&l| l < 0.0).count()
}

fn dot(g: &[Vec<f64>], a: &[f64], b: &[f64]) -> f64 {
    let n = a.len();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            s += g[i][j] * a[i] * b[j];
        }
    }
    s
}

/// Run every expectation of a geometry.
pub fn check_expectations(spec: &GeometrySpec, cfg: &CheckConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for e in &spec.expectations {
        match check_one(spec, e, cfg) {
            Ok(mut r) => out.append(&mut r),
            Err(err) => out.push(CheckRecord::failure(
                "models",
                &expectation_tag(e),
                format!("{e:?}"),
                &err,
            )),
        }
    }
    out
}

/// The serialized `check` tag of an expectation.
pub fn expectation_tag(e: &Expectation) -> String {
    serde_json::to_value(e)
        .ok()
        .and_then(|v| v.get("check").and_then(|c| c.as_str()).map(String::from))
        .unwrap_or_else(|| "expectation".into())
}

/// Run a single expectation.
pub fn check_one(spec: &GeometrySpec, e: &Expectation, cfg: &CheckConfig) -> Result<Vec<CheckRecord>> {
    let chart = &spec.chart;
    let grid = chart.sample_grid(cfg.grid);
    let spot = spot_points(chart, cfg.spot, cfg.seed);
    let tag = expectation_tag(e);
    let name = tag.as_str();
    let rec = |module: &str, identity: String, r: f64, tol: f64| CheckRecord::new(module, name, identity, r, tol);
    let mut out = Vec::new();
    match e {
        Expectation::OrthonormalFrame => {
            let mut worst: f64 = 0.0;
            for x in &grid {
                worst = worst.max(orthonormality_residual(chart, x)?);
            }
            out.push(rec("geometry", "frame orthonormal".into(), worst, cfg.tol(1e-9)));
        }
        Expectation::Signature { negative } => {
            let got = metric_negatives(chart, &chart.center());
            out.push(
                rec(
                    "geometry",
                    format!("signature has {negative} negative directions"),
                    0.0,
                    0.0,
                )
                .with_pass(got == *negative)
                .detail(format!("negative eigenvalues: {got}")),
            );
        }
        Expectation::Special { spinor } => {
            let b = spec.spinor(spinor)?;
            let tol = cfg.tol(special_tolerance(b.kind));
            let mut worst: f64 = 0.0;
            let mut size: f64 = 0.0;
            for x in &grid {
                let (r, s) = special_residual(chart, &b.field, b.kind, x)?;
                worst = worst.max(r);
                size = size.max(s);
            }
            let mut r = rec(
                "spin_geometry",
                format!("{spinor} is {}", kind_label(b.kind)),
                worst,
                tol,
            );
            if size == 0.0 {
                r = r.with_pass(false).detail("field vanishes at every sample point");
            }
            out.push(r);
        }
        Expectation::Integrability { spinor } => {
            let b = spec.spinor(spinor)?;
            let tol = cfg.tol(1e-6);
            let mut reps = Vec::new();
            for x in &spot {
                reps.push(integrability_check(chart, &b.field, x, tol)?);
            }
            out.extend(from_report("spin_geometry", name, spinor, &worst_of(&reps)));
        }
        Expectation::CurrentIdentities { spinor } => {
            let b = spec.spinor(spinor)?;
            let rep = &b.field.rep;
            let tol = cfg.tol(1e-9);
            let structure = if rep.n == 7 {
                Some(build_structure_map(rep)?)
            } else {
                None
            };
            let mut reps = Vec::new();
            let mut skipped = 0;
            for x in &grid {
                let phi = b.field.eval(x);
                if rep.n % 2 == 1 {
                    reps.push(orbit_identity_check(rep, &phi, structure.as_ref(), tol)?);
                } else if dirac_current(rep, &phi)?.causal_type == CausalType::Lightlike {
                    reps.push(lightlike_identity_check(rep, &phi, tol)?);
                } else {
                    skipped += 1;
                }
            }
            if reps.is_empty() {
                out.push(
                    rec("spinor_invariants", format!("{spinor}: current identities"), 0.0, tol)
                        .detail("current is not lightlike at any sample point"),
                );
            } else {
                let mut recs = from_report("spinor_invariants", name, spinor, &worst_of(&reps));
                if skipped > 0 {
                    for r in &mut recs {
                        r.detail = Some(format!("{skipped} non-lightlike sample points skipped"));
                    }
                }
                out.extend(recs);
            }
        }
        Expectation::CurrentConformalKilling { spinor } | Expectation::CurrentKilling { spinor } => {
            let b = spec.spinor(spinor)?;
            let v = current_field(chart, &b.field);
            let conformal = matches!(e, Expectation::CurrentConformalKilling { .. });
            let tol = cfg.tol(1e-6);
            let mut worst: f64 = 0.0;
            for x in &spot {
                let scale = 1.0 + vector_at(&v, x).iter().map(|c| c.abs()).fold(0.0, f64::max);
                let r = if conformal {
                    conformal_killing_residual(chart, &v, x)?
                } else {
                    killing_residual(chart, &v, x)?
                };
                worst = worst.max(r / scale);
            }
            let what = if conformal { "conformal Killing" } else { "Killing" };
            out.push(rec("spin_geometry", format!("V_{spinor} is {what}"), worst, tol));
        }
        Expectation::CurrentParallel { spinor } => {
            let b = spec.spinor(spinor)?;
            let v = current_field(chart, &b.field);
            let mut worst: f64 = 0.0;
            for x in &spot {
                worst = worst.max(max_abs2(&nabla_vector(chart, &v, x)?));
            }
            out.push(rec(
                "spin_geometry",
                format!("V_{spinor} is parallel"),
                worst,
                cfg.tol(1e-7),
            ));
        }
        Expectation::CurrentCausal { spinor, causal } => {
            let b = spec.spinor(spinor)?;
            let mut bad = 0usize;
            for x in &grid {
                let c = dirac_current(&b.field.rep, &b.field.eval(x))?;
                let label = serde_json::to_value(c.causal_type)?;
                if label.as_str() != Some(causal.as_str()) {
                    bad += 1;
                }
            }
            out.push(
                rec("spinor_invariants", format!("V_{spinor} is {causal}"), bad as f64, 0.0)
                    .detail(format!("{bad} of {} sample points differ", grid.len())),
            );
        }
        Expectation::IndependentFamily { rank } => {
            let rep = spec
                .rep
                .clone()
                .ok_or_else(|| Error::Precondition("geometry has no spinor bundle".into()))?;
            let d = rep.spinor_dim;
            let tol = cfg.tol(1e-8);
            let mut worst: f64 = 0.0;
            let probe: Vec<Vec<f64>> = {
                let n = chart.dim();
                let mut p = vec![chart.center()];
                for i in 0..n {
                    let mut x = chart.center();
                    x[i] += 0.5;
                    p.push(x);
                }
                p
            };
            let mut cols = Vec::new();
            for k in 0..2 * d {
                let mut u = rep.zero_spinor();
                let mut v = rep.zero_spinor();
                if k < d {
                    u[k] = C64::new(1.0, 0.0);
                } else {
                    v[k - d] = C64::new(1.0, 0.0);
                }
                let f = super::flat::minkowski_twistor(rep.clone(), &chart.name, u, v);
                for x in &spot {
                    worst = worst.max(special_residual(chart, &f, SpecialKind::Twistor, x)?.0);
                }
                let col: Vec<C64> = probe
                    .iter()
                    .flat_map(|x| f.eval(x).iter().cloned().collect::<Vec<_>>())
                    .collect();
                cols.push(col);
            }
            let rows = cols[0].len();
            let m = CMat::from_fn(rows, cols.len(), |i, j| cols[j][i]);
            let sv = m.svd(false, false).singular_values;
            let got = sv.iter().filter(|&&s| s > 1e-8).count();
            out.push(rec(
                "spin_geometry",
                format!("twistor family of {rank} fields"),
                worst,
                tol,
            ));
            out.push(
                rec(
                    "spin_geometry",
                    format!("family rank = {rank}"),
                    (got as f64 - *rank as f64).abs(),
                    0.0,
                )
                .detail(format!("rank {got}")),
            );
        }
        Expectation::ParallelVector { vector } => {
            let v = spec.vector(vector)?;
            let mut worst: f64 = 0.0;
            for x in &grid {
                worst = worst.max(max_abs2(&nabla_vector(chart, v, x)?));
            }
            out.push(rec("geometry", format!("{vector} parallel"), worst, cfg.tol(1e-7)));
        }
        Expectation::KillingVector { vector } => {
            let v = spec.vector(vector)?;
            let mut worst: f64 = 0.0;
            for x in &grid {
                worst = worst.max(killing_residual(chart, v, x)?);
            }
            out.push(rec("geometry", format!("{vector} Killing"), worst, cfg.tol(1e-7)));
        }
        Expectation::Lightlike { vector } => {
            let v = spec.vector(vector)?;
            let mut worst: f64 = 0.0;
            for x in &grid {
                let v0 = vector_at(v, x);
                worst = worst.max(dot(&chart.metric_values(x), &v0, &v0).abs());
            }
            out.push(rec("geometry", format!("{vector} lightlike"), worst, cfg.tol(1e-9)));
        }
        Expectation::Twist { vector, twisting } => {
            let v = spec.vector(vector)?;
            let mut lo = f64::INFINITY;
            let mut hi: f64 = 0.0;
            for x in &grid {
                let t = twist_measure(chart, v, x)?;
                lo = lo.min(t);
                hi = hi.max(t);
            }
            if *twisting {
                let tol = cfg.tol(1e-6);
                out.push(rec("geometry", format!("{vector} twisting (min |dθ∧θ| > tol)"), lo, tol).with_pass(lo > tol));
            } else {
                out.push(rec("geometry", format!("{vector} twist-free"), hi, cfg.tol(1e-9)));
            }
        }
        Expectation::Classification {
            vector,
            verdict,
            epsilon,
        } => {
            let v = spec.vector(vector)?;
            let mut bad = 0usize;
            let mut seen = Vec::new();
            for x in &spot {
                let a = lightlike_killing_analysis(chart, v, x, cfg.tol(1e-6))?;
                if a.verdict != *verdict || a.epsilon != *epsilon {
                    bad += 1;
                }
                seen.push(format!("{:?}/ε={}", a.verdict, a.epsilon));
            }
            seen.dedup();
            out.push(
                rec(
                    "spin_geometry",
                    format!("{vector}: {verdict:?}, ε = {epsilon}"),
                    bad as f64,
                    0.0,
                )
                .detail(seen.join(", ")),
            );
        }
        Expectation::JIdentities { vector } => {
            let v = spec.vector(vector)?;
            let tol = cfg.tol(1e-6);
            let mut reps = Vec::new();
            for x in &spot {
                reps.push(lightlike_killing_analysis(chart, v, x, tol)?.report);
            }
            out.extend(from_report("spin_geometry", name, vector, &worst_of(&reps)));
        }
        Expectation::RicVVConstant { vector, positive } => {
            let v = spec.vector(vector)?;
            let (var, mean) = ric_vv_variation(chart, v, &grid)?;
            out.push(
                rec(
                    "spin_geometry",
                    format!("Ric({vector},{vector}) constant"),
                    var,
                    cfg.tol(1e-5),
                )
                .detail(format!("mean {mean}")),
            );
            out.push(
                rec("spin_geometry", format!("Ric({vector},{vector}) sign"), 0.0, 0.0)
                    .with_pass((mean > 0.0) == *positive && mean != 0.0),
            );
        }
        Expectation::PpCurvature { holds } => {
            let r = pp_curvature_check(chart, &spot)?;
            let tol = cfg.tol(1e-6);
            let label = if *holds {
                "pp curvature condition"
            } else {
                "pp curvature condition violated"
            };
            out.push(rec("geometry", label.into(), r, tol).with_pass(if *holds { r <= tol } else { r > tol }));
        }
        Expectation::SymmetricSpace => {
            let mut worst: f64 = 0.0;
            for x in &spot {
                worst = worst.max(curvature_pack(chart, x)?.nabla_riemann_norm());
            }
            out.push(rec("geometry", "∇R = 0".into(), worst, cfg.tol(1e-6)));
        }
        Expectation::Einstein { negative } => {
            let mut worst: f64 = 0.0;
            let mut sign_ok = true;
            let mut scal = Vec::new();
            for x in &spot {
                let cp = curvature_pack(chart, x)?;
                worst = worst.max(cp.einstein_residual());
                sign_ok &= (cp.scalar < 0.0) == *negative && cp.scalar.abs() > 1e-9;
                scal.push(cp.scalar);
            }
            out.push(rec("geometry", "Ric = (R/n) g".into(), worst, cfg.tol(1e-6)));
            let what = if *negative { "negative" } else { "positive" };
            out.push(
                rec("geometry", format!("scalar curvature {what}"), 0.0, 0.0)
                    .with_pass(sign_ok)
                    .detail(format!("R = {:.12}", scal.first().copied().unwrap_or(f64::NAN))),
            );
        }
        Expectation::RicciFlat | Expectation::Flat => {
            let mut worst: f64 = 0.0;
            for x in &spot {
                let cp = curvature_pack(chart, x)?;
                worst = worst.max(if *e == Expectation::Flat {
                    max_abs4(&cp.riemann)
                } else {
                    max_abs2(&cp.ricci)
                });
            }
            let label = if *e == Expectation::Flat { "Riem = 0" } else { "Ric = 0" };
            out.push(rec("geometry", label.into(), worst, cfg.tol(1e-6)));
        }
        Expectation::Sasaki { vector } => {
            let v = spec.vector(vector)?.clone();
            let tol = cfg.tol(1e-6);
            let mut reps = Vec::new();
            for x in &spot {
                reps.push(sasaki_report(chart, &v, x, tol)?);
            }
            out.extend(from_report("models", name, "", &worst_of(&reps)));
        }
        Expectation::SasakiSpinor { spinor, vector } => {
            let b = spec.spinor(spinor)?;
            let v = spec.vector(vector)?;
            let tol = cfg.tol(1e-6);
            let mut reps = Vec::new();
            for x in &spot {
                reps.push(sasaki_spinor_report(chart, &b.field, v, x, tol)?);
            }
            out.extend(from_report("models", name, spinor, &worst_of(&reps)));
        }
        Expectation::Endomorphism { name: jn } => {
            let j = spec
                .endomorphisms
                .iter()
                .find(|b| &b.name == jn)
                .ok_or_else(|| Error::InvalidParams(format!("no endomorphism '{jn}'")))?;
            let tol = cfg.tol(1e-5);
            let mut reps = Vec::new();
            for x in &spot {
                reps.push(kaehler_endo_report(chart, &j.field, x, tol)?);
            }
            out.extend(from_report("models", name, jn, &worst_of(&reps)));
        }
        Expectation::KaehlerFlag => {
            let cs = spec
                .complex_structure
                .as_ref()
                .ok_or_else(|| Error::Precondition("geometry has no transverse complex structure".into()))?;
            let v = spec.vector(&cs.vector)?;
            let r = kaehler_flag_check(chart, v, &cs.transverse, &cs.j, &spot, cfg.tol(1e-6))?;
            if cs.expect_pass {
                out.extend(from_report("spin_geometry", name, "Kähler flag", &r));
            } else {
                let failing: Vec<String> = r.entries.iter().filter(|e| !e.pass).map(|e| e.name.clone()).collect();
                out.push(
                    rec(
                        "spin_geometry",
                        "Kähler flag rejected".into(),
                        r.max_residual(),
                        cfg.tol(1e-6),
                    )
                    .with_pass(!r.pass())
                    .detail(format!("failing: {}", failing.join(", "))),
                );
            }
        }
        Expectation::Decomposition { spinor } => {
            let b = spec.spinor(spinor)?;
            let kd = killing_decompose(chart, &b.field, &spot, cfg.tol(1e-6))?;
            let mut recs = from_report("spin_geometry", name, spinor, &kd.report);
            recs.push(
                rec("spin_geometry", format!("{spinor}: Killing numbers"), 0.0, 0.0).detail(format!(
                    "λ+ = {:.9}{:+.9}i, λ− = {:.9}{:+.9}i, R = {:.9}",
                    kd.lambda_plus.re, kd.lambda_plus.im, kd.lambda_minus.re, kd.lambda_minus.im, kd.scalar
                )),
            );
            out.extend(recs);
        }
        Expectation::FiberPhase { spinor, vector } => {
            let b = spec.spinor(spinor)?;
            let v = spec.vector(vector)?;
            let mut ks = Vec::new();
            let mut worst: f64 = 0.0;
            for x in &grid {
                let (k, r) = fiber_phase(chart, &b.field, v, x)?;
                ks.push(k);
                worst = worst.max(r / spinor_norm(&b.field.eval(x)).max(1e-300));
            }
            let k0 = ks[0];
            let var = ks.iter().fold(0.0f64, |m, k| m.max((k - k0).norm()));
            let tol = cfg.tol(1e-7);
            out.push(
                rec(
                    "spin_geometry",
                    format!("∇_{vector}{spinor} = ic·{spinor}"),
                    worst.max(var).max(k0.re.abs()),
                    tol,
                )
                .detail(format!("c = {:.12}", k0.im)),
            );
        }
        Expectation::TanakaWebster => {
            let cr = spec
                .cr
                .as_ref()
                .ok_or_else(|| Error::Precondition("geometry has no CR data".into()))?;
            let pts: Vec<Vec<f64>> = grid.iter().map(|x| x[..3].to_vec()).collect();
            out.extend(from_report("models", name, "CR", &cr.report(&pts, cfg.tol(1e-9))?));
        }
    }
    Ok(out)
}

/// `J = −∇ξ` and `∇J` at a point; needs order-2 jets of `ξ`.
fn sasaki_tensors(chart: &MetricChart, xi: &VectorFn, x: &[f64]) -> Result<(Vec<Vec<f64>>, JetMatrix, Vec<f64>)> {
    let g = chart.metric_jets(x, 2)?;
    let xs = Jet::seed(x, 2);
    let xv = xi(&xs);
    let j = super::sasaki::sasaki_endomorphism(g, &xv)?;
    Ok((chart.metric_values(x), j, values(&xv)))
}

/// Covariant derivative of a (1,1)-tensor given as order-≥1 jets:
/// `out[i][m][k] = (∇_i T)^k_m`, with `t[m][k] = T^k_m`.
fn nabla_endo(chart: &MetricChart, t: &JetMatrix, x: &[f64]) -> Result<Vec<Vec<Vec<f64>>>> {
    let n = t.len();
    let lj = local_jets(chart, x, 1)?;
    let gam = |k: usize, i: usize, l: usize| lj.gamma[k][i][l].value();
    let mut out = vec![vec![vec![0.0; n]; n]; n];
    for i in 0..n {
        for m in 0..n {
            for k in 0..n {
                let mut s = t[m][k].d1(i);
                for l in 0..n {
                    s += gam(k, i, l) * t[m][l].value() - gam(l, i, m) * t[l][k].value();
                }
                out[i][m][k] = s;
            }
        }
    }
    Ok(out)
}

/// `g(ξ,ξ) = −1`, `J²X = −X − g(X,ξ)ξ` and `(∇_X J)Y = −g(X,Y)ξ + g(Y,ξ)X`.
pub fn sasaki_report(chart: &MetricChart, xi: &VectorFn, x: &[f64], tol: f64) -> Result<IdentityReport> {
    let n = chart.dim();
    let (g, j, xv) = sasaki_tensors(chart, xi, x)?;
    let jv: Vec<Vec<f64>> = j.iter().map(|r| values(r)).collect();
    let gx: Vec<f64> = (0..n).map(|i| (0..n).map(|k| g[i][k] * xv[k]).sum()).collect();
    let mut r2: f64 = 0.0;
    for i in 0..n {
        for k in 0..n {
            let s: f64 = (0..n).map(|m| jv[i][m] * jv[m][k]).sum();
            let target = -(if i == k { 1.0 } else { 0.0 }) - gx[i] * xv[k];
            r2 = r2.max((s - target).abs());
        }
    }
    let nj = nabla_endo(chart, &j, x)?;
    let mut r3: f64 = 0.0;
    for i in 0..n {
        for m in 0..n {
            for k in 0..n {
                let target = -g[i][m] * xv[k] + gx[m] * if i == k { 1.0 } else { 0.0 };
                r3 = r3.max((nj[i][m][k] - target).abs());
            }
        }
    }
    let mut out = IdentityReport::new(tol);
    out.push("g(ξ,ξ) = −1", (dot(&g, &xv, &xv) + 1.0).abs());
    out.push("J²X = −X − g(X,ξ)ξ", r2);
    out.push("(∇_X J)Y = −g(X,Y)ξ + g(Y,ξ)X", r3);
    Ok(out)
}

/// For a Killing spinor with Reeb current: after normalizing `⟨φ,φ⟩ = −1`,
/// `V_φ = ξ`, `V_φ·φ = −φ` and `∇_{V_φ} φ = −½ i φ`.
pub fn sasaki_spinor_report(
    chart: &MetricChart,
    field: &SpinorField,
    xi: &VectorFn,
    x: &[f64],
    tol: f64,
) -> Result<IdentityReport> {
    let rep = field.rep.clone();
    let phi = field.eval(x);
    let p = rep.indefinite_inner(&phi, &phi);
    if p.re >= 0.0 || p.im.abs() > 1e-9 * (1.0 + p.re.abs()) {
        return Err(Error::Precondition(format!("⟨φ,φ⟩ = {p} is not negative real")));
    }
    let s = 1.0 / (-p.re).sqrt();
    let f = field.scaled(move |_| C64::new(s, 0.0));
    let phin = f.eval(x);
    let sp = spin_point(chart, &rep, x)?;
    let v = dirac_current(&rep, &phin)?.components;
    let xv = sp.frame.from_coords(&sp.metric, &vector_at(xi, x));
    let vphi = rep.vector_action(&v, &phin)?;
    let mut d = rep.zero_spinor();
    for (a, va) in v.iter().enumerate() {
        d += spinor_derivative(chart, &f, a, x)? * C64::new(*va, 0.0);
    }
    let mut out = IdentityReport::new(tol);
    out.push(
        "V_φ = ξ",
        v.iter().zip(&xv).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max),
    );
    out.push("V_φ·φ = −φ", spinor_norm(&(vphi + &phin)));
    out.push("∇_{V_φ}φ = −½iφ", spinor_norm(&(d - &phin * C64::new(0.0, -0.5))));
    Ok(out)
}

/// `J² = −1`, `g(JX,JY) = g(X,Y)` and `∇J = 0` for a (1,1)-tensor field.
pub fn kaehler_endo_report(chart: &MetricChart, j: &super::EndoFn, x: &[f64], tol: f64) -> Result<IdentityReport> {
    let n = chart.dim();
    let jm = j(&Jet::seed(x, 2));
    let jv: Vec<Vec<f64>> = jm.iter().map(|r| values(r)).collect();
    let g = chart.metric_values(x);
    let mut sq: f64 = 0.0;
    let mut orth: f64 = 0.0;
    for i in 0..n {
        for k in 0..n {
            let s: f64 = (0..n).map(|m| jv[i][m] * jv[m][k]).sum();
            sq = sq.max((s + if i == k { 1.0 } else { 0.0 }).abs());
            let mut o = 0.0;
            for p in 0..n {
                for q in 0..n {
                    o += jv[i][p] * jv[k][q] * g[p][q];
                }
            }
            orth = orth.max((o - g[i][k]).abs());
        }
    }
    let nj = nabla_endo(chart, &jm, x)?;
    let par = nj.iter().flatten().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut out = IdentityReport::new(tol);
    out.push("J² = −1", sq);
    out.push("g(JX,JY) = g(X,Y)", orth);
    out.push("∇J = 0", par);
    Ok(out)
}
