use std::sync::Arc;

use serde_json::json;

use super::{coordinate_field, CRHeisenberg, Expectation, GeometrySpec};
use crate::clifford::{build_rep, nullspace, CMat, CliffordRep, Spinor, C64, I};
use crate::error::{Error, Result};
use crate::geometry::MetricChart;
use crate::jet::{self, Jet};
use crate::spin::{spin_point, SpecialKind, SpinorField, Verdict};

const LEVI: f64 = 8.0 / 3.0;

/// Fefferman space of the Heisenberg CR structure on `(x, y, u, s)`:
/// `h = 2(dx² + dy²) + (8/3)·½(θ⊗ds + ds⊗θ)` with `θ = du + x dy − y dx`,
/// and lightlike Killing field `K = ∂_s`.
pub fn fefferman_heisenberg() -> Result<GeometrySpec> {
    let name = "fefferman-heisenberg";
    let chart = MetricChart::new(name, &["x", "y", "u", "s"], vec![(-1.0, 1.0); 4], |xs: &[Jet]| {
        let theta = [-&xs[1], xs[0].clone(), xs[0].lift(1.0)];
        let mut g = jet::zeros(&xs[0], 4);
        g[0][0] = xs[0].lift(2.0);
        g[1][1] = xs[0].lift(2.0);
        for (i, t) in theta.iter().enumerate() {
            g[i][3] = t * (0.5 * LEVI);
            g[3][i] = t * (0.5 * LEVI);
        }
        g
    })
    .with_seed(|xs: &[Jet]| {
        let c = (3.0f64 / 8.0).sqrt();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let z = xs[0].lift(0.0);
        let k = |v: f64| xs[0].lift(v);
        vec![
            vec![z.clone(), z.clone(), k(c), k(-c)],
            vec![z.clone(), z.clone(), k(c), k(c)],
            vec![k(r), z.clone(), &xs[1] * r, z.clone()],
            vec![z.clone(), k(r), &xs[0] * -r, z],
        ]
    });
    let rep = Arc::new(build_rep(4)?);
    let mut spec = GeometrySpec::new(name, json!({}), chart.clone());
    for (label, kappa, kind) in [
        ("phi_plus", 1.0, SpecialKind::Twistor),
        ("phi_minus", -1.0, SpecialKind::Twistor),
        ("phi_parallel", 1.0 / 3.0, SpecialKind::Parallel),
    ] {
        let phi0 = fiber_mode(&chart, &rep, kappa, kind == SpecialKind::Parallel)?;
        let field = SpinorField::new(rep.clone(), name, move |x: &[f64]| &phi0 * (I * (kappa * x[3])).exp());
        spec.add_spinor(label, field, kind);
    }
    spec.add_vector("K", coordinate_field(4, 3));
    for s in ["phi_plus", "phi_minus"] {
        spec.expect(Expectation::CurrentCausal {
            spinor: s.into(),
            causal: "lightlike".into(),
        });
        spec.expect(Expectation::FiberPhase {
            spinor: s.into(),
            vector: "K".into(),
        });
    }
    spec.expect(Expectation::KillingVector { vector: "K".into() });
    spec.expect(Expectation::Lightlike { vector: "K".into() });
    spec.expect(Expectation::Twist {
        vector: "K".into(),
        twisting: true,
    });
    spec.expect(Expectation::Classification {
        vector: "K".into(),
        verdict: Verdict::FeffermanType,
        epsilon: 1,
    });
    spec.expect(Expectation::JIdentities { vector: "K".into() });
    spec.expect(Expectation::RicVVConstant {
        vector: "K".into(),
        positive: true,
    });
    spec.expect(Expectation::TanakaWebster);
    spec.cr = Some(CRHeisenberg::default());
    spec.rep = Some(rep);
    Ok(spec)
}

/// Constant spinor `φ_0` such that `e^{iκs} φ_0` is a twistor spinor in the
/// chart's frame gauge (parallel if `parallel`), normalized to unit length with
/// a real first nonzero entry.
pub fn fiber_mode(chart: &MetricChart, rep: &CliffordRep, kappa: f64, parallel: bool) -> Result<Spinor> {
    let sp = spin_point(chart, rep, &chart.center())?;
    let n = rep.n;
    let d = rep.spinor_dim;
    let eta = &sp.frame.signature;
    let b: Vec<CMat> = (0..n)
        .map(|a| &sp.lift[a] + CMat::identity(d, d) * (I * (kappa * sp.frame.e[a][3].value())))
        .collect();
    let mut dm = CMat::zeros(d, d);
    for a in 0..n {
        dm += &rep.generators[a] * &b[a] * C64::new(eta[a], 0.0);
    }
    let mut m = CMat::zeros(n * d, d);
    for a in 0..n {
        let block = if parallel {
            b[a].clone()
        } else {
            &b[a] + &rep.generators[a] * &dm * C64::new(1.0 / n as f64, 0.0)
        };
        m.view_mut((a * d, 0), (d, d)).copy_from(&block);
    }
    let ns = nullspace(&m, 1e-9);
    let v = ns
        .into_iter()
        .next()
        .ok_or_else(|| Error::Precondition(format!("no twistor fiber mode for κ = {kappa}")))?;
    let k = v.iter().position(|z| z.norm() > 1e-8).unwrap_or(0);
    let phase = v[k].conj() / v[k].norm();
    let nrm = v.norm();
    Ok(v * phase / C64::new(nrm, 0.0))
}
