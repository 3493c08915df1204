use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{Expectation, GeometrySpec};
use crate::clifford::{build_rep, C64};
use crate::error::{Error, Result};
use crate::geometry::MetricChart;
use crate::jet::{self, Jet};
use crate::spin::{SpecialKind, SpinorField};

/// Warping function `f(t)` of `−dt² + f(t)² δ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum WarpProfile {
    /// `c e^{±t}`.
    Exp { c: f64, sign: i8 },
    /// `d cosh(t + c)`.
    Cosh { d: f64, c: f64 },
}

impl WarpProfile {
    fn eval(&self, t: &Jet) -> Jet {
        match *self {
            WarpProfile::Exp { c, sign } => (t * sign as f64).exp() * c,
            WarpProfile::Cosh { d, c } => (t + c).cosh() * d,
        }
    }
}

/// `−dt² + f(t)² (dy_1² + ⋯ + dy_k²)` on coordinates `(t, y_1, …, y_k)`.
pub fn warped_product(profile: WarpProfile, base_dim: usize) -> Result<GeometrySpec> {
    match profile {
        WarpProfile::Exp { c, sign } if c <= 0.0 || sign.abs() != 1 => {
            return Err(Error::InvalidParams("exp profile needs c > 0 and sign ±1".into()))
        }
        WarpProfile::Cosh { d, .. } if d <= 0.0 => return Err(Error::InvalidParams("cosh profile needs d > 0".into())),
        _ => {}
    }
    let n = base_dim + 1;
    let rep = Arc::new(build_rep(n)?);
    let name = "warped-product";
    let mut coords = vec!["t".to_string()];
    coords.extend((1..=base_dim).map(|i| format!("y{i}")));
    let refs: Vec<&str> = coords.iter().map(String::as_str).collect();
    let p = profile.clone();
    let chart = MetricChart::new(name, &refs, vec![(-1.0, 1.0); n], move |xs: &[Jet]| {
        let f2 = p.eval(&xs[0]).square();
        let mut g = jet::zeros(&xs[0], n);
        g[0][0] = xs[0].lift(-1.0);
        for i in 1..n {
            g[i][i] = f2.clone();
        }
        g
    });
    let mut spec = GeometrySpec::new(name, json!({ "profile": profile, "base_dim": base_dim }), chart);
    if let WarpProfile::Exp { sign, .. } = profile {
        // e^{±t/2} φ_0 is the sum of Killing spinors with λ = ±½ along the Γ_1 eigenspaces
        let m = rep.m;
        let a = rep.standard_basis_spinor(&vec![1; m])?;
        let b = rep.standard_basis_spinor(&vec![-1; m])?;
        let phi0 = a + b * C64::new(0.0, 0.5);
        let h = sign as f64 * 0.5;
        let field = SpinorField::new(rep.clone(), name, move |x: &[f64]| {
            &phi0 * C64::new((h * x[0]).exp(), 0.0)
        });
        spec.add_spinor("phi", field, SpecialKind::Twistor);
        spec.expect(Expectation::Einstein { negative: false });
        spec.expect(Expectation::Decomposition { spinor: "phi".into() });
    }
    spec.rep = Some(rep);
    Ok(spec)
}
