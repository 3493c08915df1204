use std::sync::Arc;

use serde_json::json;

use super::{coordinate_field, BundledEndo, Expectation, GeometrySpec};
use crate::clifford::{build_rep, CMat, Spinor, C64, I};
use crate::error::{Error, Result};
use crate::geometry::curvature::local_jets_from_metric;
use crate::geometry::MetricChart;
use crate::jet::{self, Jet, JetMatrix};
use crate::spin::{SpecialKind, SpinorField};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Lorentzian Einstein–Sasaki 3-manifold over the hyperbolic plane of curvature
/// `−4`, in coordinates `(τ, x, y)`, `y > 0`:
/// `g = (dx² + dy²)/(4y²) − (dτ + dx/(2y))²`, with Reeb field `ξ = ∂_τ`.
pub fn einstein_sasaki_h2() -> Result<GeometrySpec> {
    let name = "einstein-sasaki";
    let chart = MetricChart::new(
        name,
        &["tau", "x", "y"],
        vec![(-1.0, 1.0), (-1.0, 1.0), (0.5, 2.0)],
        |xs: &[Jet]| {
            let y = &xs[2];
            let inv2y = (y * 2.0).recip();
            let h = (y.square() * 4.0).recip();
            let mut g = jet::zeros(&xs[0], 3);
            g[0][0] = xs[0].lift(-1.0);
            g[0][1] = -&inv2y;
            g[1][0] = -&inv2y;
            g[2][2] = h;
            g
        },
    );
    let rep = Arc::new(build_rep(3)?);
    let mut spec = GeometrySpec::new(name, json!({}), chart);
    let plus = SpinorField::new(rep.clone(), name, |x: &[f64]| {
        Spinor::from_vec(vec![(-I * x[0]).exp(), c(0.0, 0.0)])
    });
    let b3 = CMat::from_row_slice(2, 2, &[c(0.0, 0.0), -I, I, c(0.0, 0.0)]);
    let cm = CMat::from_row_slice(2, 2, &[I, c(1.0, 0.0), c(1.0, 0.0), -I]);
    let phi0 = Spinor::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]);
    let minus = SpinorField::new(rep.clone(), name, move |x: &[f64]| {
        let s = 0.5 * x[2].ln();
        let id = CMat::identity(2, 2);
        let m = (&id * c(s.cosh(), 0.0) + &b3 * c(s.sinh(), 0.0)) * (&id + &cm * c(0.5 * x[1], 0.0));
        m * &phi0
    });
    let twistor = plus.combine(c(1.0, 0.0), &minus, c(1.0, 0.0));
    spec.add_spinor("phi_plus", plus, SpecialKind::Killing { re: 0.0, im: 0.5 });
    spec.add_spinor("phi_minus", minus, SpecialKind::Killing { re: 0.0, im: -0.5 });
    spec.add_spinor("phi", twistor, SpecialKind::Twistor);
    spec.add_vector("xi", coordinate_field(3, 0));
    spec.sasaki_vector = Some("xi".into());
    spec.expect(Expectation::Einstein { negative: true });
    spec.expect(Expectation::KillingVector { vector: "xi".into() });
    spec.expect(Expectation::Sasaki { vector: "xi".into() });
    spec.expect(Expectation::SasakiSpinor {
        spinor: "phi_plus".into(),
        vector: "xi".into(),
    });
    spec.expect(Expectation::Decomposition { spinor: "phi".into() });
    spec.rep = Some(rep);
    Ok(spec)
}

/// `J = −∇ξ` as a (1,1)-tensor on jets: `j[i][k] = −(∂_i ξ^k + Γ^k_{ij} ξ^j)`.
/// The result has one order less than the input jets.
pub fn sasaki_endomorphism(g: JetMatrix, xi: &[Jet]) -> Result<JetMatrix> {
    let n = g.len();
    let lj = local_jets_from_metric(g)?;
    let ord = lj.order();
    let mut j = jet::zeros(&lj.g[0][0], n);
    for i in 0..n {
        for k in 0..n {
            let mut s = xi[k].diff(i).truncate(ord);
            for (l, xl) in xi.iter().enumerate() {
                s += &(&lj.gamma[k][i][l] * &xl.truncate(ord));
            }
            j[i][k] = -s;
        }
    }
    Ok(j)
}

/// Metric cone `−dt² + t² g` over a Lorentzian Sasaki base, signature `(2, n)`,
/// with complex structure `J∂_t = −ξ/t`, `JX = J_base X − g(X, ξ) t ∂_t`.
/// The bundled `J` expects coordinate seed jets.
pub fn cone_over(base: &GeometrySpec) -> Result<GeometrySpec> {
    let xi_name = base
        .sasaki_vector
        .clone()
        .ok_or_else(|| Error::InvalidParams("cone base has no Sasaki vector field".into()))?;
    let xi = base.vector(&xi_name)?.clone();
    let bchart = base.chart.clone();
    if bchart.metric_on(&Jet::seed(&bchart.center(), 0)).is_none() {
        return Err(Error::InvalidParams("cone base needs an analytic metric".into()));
    }
    let nb = bchart.dim();
    let n = nb + 1;
    let mut coords = vec!["t".to_string()];
    coords.extend(bchart.coords.iter().cloned());
    let refs: Vec<&str> = coords.iter().map(String::as_str).collect();
    let mut domain = vec![(0.5, 2.0)];
    domain.extend(bchart.domain.iter().cloned());
    let mut signature = vec![-1.0];
    signature.extend(bchart.signature.iter().cloned());
    let name = format!("cone over {}", base.name);
    let b1 = bchart.clone();
    let chart = MetricChart::new(name.clone(), &refs, domain, move |xs: &[Jet]| {
        let gb = b1.metric_on(&xs[1..]).expect("analytic base metric");
        let t2 = xs[0].square();
        let mut g = jet::zeros(&xs[0], n);
        g[0][0] = xs[0].lift(-1.0);
        for i in 0..nb {
            for k in 0..nb {
                g[i + 1][k + 1] = &gb[i][k] * &t2;
            }
        }
        g
    })
    .with_signature(signature);
    let b2 = bchart.clone();
    // J_base depends on the base coordinates only; it is computed from base
    // seed jets at the same point and embedded in the cone's variables.
    let endo = move |xs: &[Jet]| -> JetMatrix {
        let ord = xs[0].order();
        let xb: Vec<f64> = xs[1..].iter().map(Jet::value).collect();
        let bs = Jet::seed(&xb, ord);
        let gb = b2.metric_on(&bs).expect("analytic base metric");
        let xv = xi(&bs);
        let jb = sasaki_endomorphism(gb.clone(), &xv).expect("base metric invertible");
        let ord = jb[0][0].order();
        let lift = |v: &Jet| v.truncate(ord).embed(n, 1);
        let jb: JetMatrix = jb.iter().map(|r| r.iter().map(lift).collect()).collect();
        let gb: JetMatrix = gb.iter().map(|r| r.iter().map(lift).collect()).collect();
        let xv: Vec<Jet> = xv.iter().map(lift).collect();
        let t = xs[0].truncate(ord);
        let mut j = jet::zeros(&jb[0][0], n);
        for k in 0..nb {
            j[0][k + 1] = -(&xv[k] / &t);
        }
        for i in 0..nb {
            let mut gx = t.lift(0.0);
            for k in 0..nb {
                gx += &(&gb[i][k] * &xv[k]);
            }
            j[i + 1][0] = -(&gx * &t);
            for k in 0..nb {
                j[i + 1][k + 1] = jb[i][k].clone();
            }
        }
        j
    };
    let mut spec = GeometrySpec::new(name, json!({ "base": base.name }), chart);
    spec.endomorphisms.push(BundledEndo {
        name: "J".into(),
        field: Arc::new(endo),
    });
    spec.expect(Expectation::Signature { negative: 2 });
    spec.expect(Expectation::RicciFlat);
    spec.expect(Expectation::Endomorphism { name: "J".into() });
    if base.expectations.contains(&Expectation::Einstein { negative: true }) && nb == 3 {
        // a 3-dimensional Einstein base has constant curvature, so the cone is flat
        spec.expect(Expectation::Flat);
    }
    Ok(spec)
}
