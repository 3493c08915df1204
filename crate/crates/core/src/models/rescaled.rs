use std::sync::Arc;

use serde_json::json;

use super::GeometrySpec;
use crate::clifford::C64;
use crate::error::Result;
use crate::geometry::chart::ScalarFn;
use crate::jet::Jet;
use crate::spin::SpecialKind;

/// `e^{2σ} g` carrying every bundled spinor with weight `e^{σ/2}`.
///
/// Only twistor spinors survive a conformal change, so each carried field is
/// bundled as a twistor spinor. Vector fields and metric expectations are
/// dropped.
pub fn rescaled(spec: &GeometrySpec, name: &str, sigma: ScalarFn) -> GeometrySpec {
    let chart = spec.chart.conformal_rescale(sigma.clone());
    let mut params = spec.params.clone();
    if let Some(obj) = params.as_object_mut() {
        obj.insert("base".into(), json!(spec.name));
    }
    let mut out = GeometrySpec::new(name, params, chart);
    out.rep = spec.rep.clone();
    for s in &spec.spinors {
        let sig = sigma.clone();
        let field = s
            .field
            .scaled(move |x| C64::new((0.5 * sig(&Jet::seed(x, 0)).value()).exp(), 0.0))
            .regauged(out.chart.name.clone());
        out.add_spinor(&s.name, field, SpecialKind::Twistor);
    }
    out
}

/// The default pp-wave under `σ = 0.3 x1 + 0.2 s² + 0.1 t x2`, a non-flat
/// geometry with non-zero Weyl and Cotton tensors carrying a twistor spinor
/// that is neither parallel nor Killing.
pub fn pp_wave_rescaled(n: usize) -> Result<GeometrySpec> {
    let base = super::pp_wave(n, super::Profile::default_for(n))?;
    let sigma: ScalarFn = Arc::new(|x: &[Jet]| {
        let mut s = &x[2] * 0.3 + x[1].square() * 0.2;
        if x.len() > 3 {
            s += (&x[0] * &x[3]) * 0.1;
        }
        s
    });
    Ok(rescaled(&base, "pp-wave-rescaled", sigma))
}
