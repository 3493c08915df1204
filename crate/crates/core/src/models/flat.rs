use std::sync::Arc;

use serde_json::json;

use super::{coordinate_field, Expectation, GeometrySpec, TransverseComplex};
use crate::clifford::{build_rep, CliffordRep, Spinor, C64};
use crate::error::{Error, Result};
use crate::geometry::chart::constant_matrix;
use crate::geometry::MetricChart;
use crate::jet::{self, Jet};
use crate::spin::{SpecialKind, SpinorField};

fn minkowski_chart(name: &str, n: usize) -> MetricChart {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut eta = vec![vec![0.0; n]; n];
    for (i, row) in eta.iter_mut().enumerate() {
        row[i] = if i == 0 { -1.0 } else { 1.0 };
    }
    MetricChart::new(name, &refs, vec![(-1.0, 1.0); n], move |xs: &[Jet]| {
        constant_matrix(&xs[0], &eta)
    })
}

/// The flat twistor spinor `φ_{u,v}(x) = u + x·v`, with `x` the position vector.
pub fn minkowski_twistor(rep: Arc<CliffordRep>, gauge: &str, u: Spinor, v: Spinor) -> SpinorField {
    let r = rep.clone();
    SpinorField::new(rep, gauge, move |x: &[f64]| {
        let mut out = u.clone();
        for (a, xa) in x.iter().enumerate() {
            out += &r.generators[a] * &v * C64::new(*xa, 0.0);
        }
        out
    })
}

/// Flat space `R^{1,n-1}` with its `2·2^{⌊n/2⌋}`-dimensional twistor family.
pub fn minkowski(n: usize) -> Result<GeometrySpec> {
    let rep = Arc::new(build_rep(n)?);
    let chart = minkowski_chart("minkowski", n);
    let mut spec = GeometrySpec::new("minkowski", json!({ "n": n }), chart);
    let d = rep.spinor_dim;
    let mut u = rep.zero_spinor();
    u[0] = C64::new(1.0, 0.0);
    let mut v = rep.zero_spinor();
    v[d - 1] = C64::new(0.5, 0.0);
    v[0] = C64::new(0.0, 0.5);
    let zero = rep.zero_spinor();
    spec.add_spinor(
        "phi_u",
        minkowski_twistor(rep.clone(), "minkowski", u.clone(), zero),
        SpecialKind::Parallel,
    );
    spec.add_spinor(
        "phi_uv",
        minkowski_twistor(rep.clone(), "minkowski", u, v),
        SpecialKind::Twistor,
    );
    spec.add_vector("d0", coordinate_field(n, 0));
    spec.expect(Expectation::Flat);
    spec.expect(Expectation::ParallelVector { vector: "d0".into() });
    spec.expect(Expectation::IndependentFamily { rank: 2 * d });
    spec.rep = Some(rep);
    Ok(spec)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KaehlerBase {
    FlatR4,
    FlatR6,
}

impl KaehlerBase {
    pub fn dim(self) -> usize {
        match self {
            KaehlerBase::FlatR4 => 4,
            KaehlerBase::FlatR6 => 6,
        }
    }
}

/// Standard complex structure on `m` transverse directions: `J∂_{2p} = ∂_{2p+1}`.
pub fn standard_complex_structure(m: usize) -> Vec<Vec<f64>> {
    // j[p][q] is the ∂_p component of J(∂_q)
    let mut j = vec![vec![0.0; m]; m];
    for p in (0..m).step_by(2) {
        j[p + 1][p] = 1.0;
        j[p][p + 1] = -1.0;
    }
    j
}

/// `R^{1,k-1} × N` with `N` a flat Kähler space, `k ∈ {1, 2}`.
pub fn product_geometry(k: usize, base: KaehlerBase) -> Result<GeometrySpec> {
    if !(1..=2).contains(&k) {
        return Err(Error::InvalidParams(format!(
            "Lorentzian factor dimension must be 1 or 2, got {k}"
        )));
    }
    let n = k + base.dim();
    let rep = Arc::new(build_rep(n)?);
    let name = "product";
    let chart = minkowski_chart(name, n);
    let base_name = match base {
        KaehlerBase::FlatR4 => "flat_R4",
        KaehlerBase::FlatR6 => "flat_R6",
    };
    let mut spec = GeometrySpec::new(name, json!({ "k": k, "base": base_name }), chart);
    spec.expect(Expectation::Flat);
    let m = rep.m;
    if k == 1 {
        // Γ_1 eigenspinor: timelike current along e_1
        let p = (rep.identity() + &rep.generators[0]) * C64::new(0.5, 0.0);
        let u = rep.standard_basis_spinor(&vec![1; m])?;
        let phi = &p * &u;
        spec.add_spinor(
            "phi",
            SpinorField::constant(rep.clone(), name, phi),
            SpecialKind::Parallel,
        );
        spec.expect(Expectation::CurrentCausal {
            spinor: "phi".into(),
            causal: "timelike".into(),
        });
        spec.add_vector("d0", coordinate_field(n, 0));
        spec.expect(Expectation::ParallelVector { vector: "d0".into() });
    } else {
        let phi = rep.standard_basis_spinor(&vec![1; m])?;
        spec.add_spinor(
            "phi",
            SpinorField::constant(rep.clone(), name, phi),
            SpecialKind::Parallel,
        );
        spec.expect(Expectation::CurrentCausal {
            spinor: "phi".into(),
            causal: "lightlike".into(),
        });
        spec.add_vector("V", move |xs: &[Jet]| {
            (0..n).map(|i| xs[0].lift(if i < 2 { 1.0 } else { 0.0 })).collect()
        });
        spec.expect(Expectation::ParallelVector { vector: "V".into() });
        spec.expect(Expectation::Lightlike { vector: "V".into() });
        spec.expect(Expectation::PpCurvature { holds: true });
        spec.complex_structure = Some(TransverseComplex {
            vector: "V".into(),
            transverse: (2..n).collect(),
            j: standard_complex_structure(n - 2),
            expect_pass: true,
        });
        spec.expect(Expectation::KaehlerFlag);
    }
    spec.rep = Some(rep);
    Ok(spec)
}

/// `R^{1,1} × H² × R²`: a Brinkmann product whose transverse complex structure
/// is parallel but has nonzero Ricci trace, and whose curvature is not of pp type.
pub fn hyperbolic_product() -> Result<GeometrySpec> {
    let name = "hyperbolic-product";
    let coords = ["t", "s", "p", "q", "y1", "y2"];
    let mut domain = vec![(-1.0, 1.0); 6];
    domain[3] = (0.5, 2.0);
    let chart = MetricChart::new(name, &coords, domain, |xs: &[Jet]| {
        let mut g = jet::zeros(&xs[0], 6);
        g[0][0] = xs[0].lift(-1.0);
        g[1][1] = xs[0].lift(1.0);
        let h = xs[3].square().recip();
        g[2][2] = h.clone();
        g[3][3] = h;
        g[4][4] = xs[0].lift(1.0);
        g[5][5] = xs[0].lift(1.0);
        g
    });
    let mut spec = GeometrySpec::new(name, json!({}), chart);
    spec.add_vector("V", |xs: &[Jet]| {
        (0..6).map(|i| xs[0].lift(if i < 2 { 1.0 } else { 0.0 })).collect()
    });
    spec.expect(Expectation::ParallelVector { vector: "V".into() });
    spec.expect(Expectation::Lightlike { vector: "V".into() });
    spec.expect(Expectation::PpCurvature { holds: false });
    spec.complex_structure = Some(TransverseComplex {
        vector: "V".into(),
        transverse: vec![2, 3, 4, 5],
        j: standard_complex_structure(4),
        expect_pass: false,
    });
    spec.expect(Expectation::KaehlerFlag);
    Ok(spec)
}
