//! Catalogue of model geometries with bundled vector and spinor fields and
//! machine-checkable expectations.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::clifford::CliffordRep;
use crate::error::{Error, Result};
use crate::geometry::chart::VectorFn;
use crate::geometry::curvature::T2;
use crate::geometry::MetricChart;
use crate::jet::{Jet, JetMatrix};
use crate::spin::{SpecialKind, SpinorField, Verdict};

pub mod cr;
pub mod expect;
pub mod fefferman;
pub mod flat;
pub mod ppwave;
pub mod rescaled;
pub mod sasaki;
pub mod warped;

pub use cr::CRHeisenberg;
pub use expect::{check_expectations, CheckConfig, CheckRecord};
pub use fefferman::fefferman_heisenberg;
pub use flat::{hyperbolic_product, minkowski, product_geometry, KaehlerBase};
pub use ppwave::{cahen_wallach, pp_wave, PolyTerm, Profile};
pub use rescaled::{pp_wave_rescaled, rescaled};
pub use sasaki::{cone_over, einstein_sasaki_h2};
pub use warped::{warped_product, WarpProfile};

/// (1,1)-tensor field: `m[i][k]` is the `∂_k` component of `T(∂_i)`.
pub type EndoFn = Arc<dyn Fn(&[Jet]) -> JetMatrix + Send + Sync>;

#[derive(Clone)]
pub struct BundledVector {
    pub name: String,
    pub field: VectorFn,
}

#[derive(Clone)]
pub struct BundledSpinor {
    pub name: String,
    pub field: SpinorField,
    pub kind: SpecialKind,
}

#[derive(Clone)]
pub struct BundledEndo {
    pub name: String,
    pub field: EndoFn,
}

/// Constant complex structure on transverse coordinate directions.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransverseComplex {
    pub vector: String,
    pub transverse: Vec<usize>,
    pub j: T2,
    pub expect_pass: bool,
}

/// A checkable claim about a geometry.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Expectation {
    OrthonormalFrame,
    Signature {
        negative: usize,
    },
    Special {
        spinor: String,
    },
    Integrability {
        spinor: String,
    },
    CurrentIdentities {
        spinor: String,
    },
    CurrentConformalKilling {
        spinor: String,
    },
    CurrentKilling {
        spinor: String,
    },
    CurrentParallel {
        spinor: String,
    },
    CurrentCausal {
        spinor: String,
        causal: String,
    },
    IndependentFamily {
        rank: usize,
    },
    ParallelVector {
        vector: String,
    },
    KillingVector {
        vector: String,
    },
    Lightlike {
        vector: String,
    },
    Twist {
        vector: String,
        twisting: bool,
    },
    Classification {
        vector: String,
        verdict: Verdict,
        epsilon: i8,
    },
    JIdentities {
        vector: String,
    },
    RicVVConstant {
        vector: String,
        positive: bool,
    },
    PpCurvature {
        holds: bool,
    },
    SymmetricSpace,
    Einstein {
        negative: bool,
    },
    RicciFlat,
    Flat,
    Sasaki {
        vector: String,
    },
    SasakiSpinor {
        spinor: String,
        vector: String,
    },
    Endomorphism {
        name: String,
    },
    KaehlerFlag,
    Decomposition {
        spinor: String,
    },
    FiberPhase {
        spinor: String,
        vector: String,
    },
    TanakaWebster,
}

#[derive(Clone)]
pub struct GeometrySpec {
    pub name: String,
    pub params: serde_json::Value,
    pub chart: MetricChart,
    pub rep: Option<Arc<CliffordRep>>,
    pub vectors: Vec<BundledVector>,
    pub spinors: Vec<BundledSpinor>,
    pub endomorphisms: Vec<BundledEndo>,
    pub complex_structure: Option<TransverseComplex>,
    pub cr: Option<CRHeisenberg>,
    pub expectations: Vec<Expectation>,
    /// Data needed by derived constructions (e.g. the cone needs `xi`).
    pub sasaki_vector: Option<String>,
}

impl GeometrySpec {
    pub fn new(name: impl Into<String>, params: serde_json::Value, chart: MetricChart) -> Self {
        GeometrySpec {
            name: name.into(),
            params,
            chart,
            rep: None,
            vectors: Vec::new(),
            spinors: Vec::new(),
            endomorphisms: Vec::new(),
            complex_structure: None,
            cr: None,
            expectations: vec![Expectation::OrthonormalFrame],
            sasaki_vector: None,
        }
    }

    pub fn vector(&self, name: &str) -> Result<&VectorFn> {
        self.vectors
            .iter()
            .find(|v| v.name == name)
            .map(|v| &v.field)
            .ok_or_else(|| Error::InvalidParams(format!("geometry has no vector field '{name}'")))
    }

    pub fn spinor(&self, name: &str) -> Result<&BundledSpinor> {
        self.spinors
            .iter()
            .find(|v| v.name == name)
            .ok_or_else(|| Error::InvalidParams(format!("geometry has no spinor field '{name}'")))
    }

    pub fn add_vector(&mut self, name: &str, field: impl Fn(&[Jet]) -> Vec<Jet> + Send + Sync + 'static) {
        self.vectors.push(BundledVector {
            name: name.into(),
            field: Arc::new(field),
        });
    }

    /// Bundle a spinor and the cross-cutting checks that apply to it.
    pub fn add_spinor(&mut self, name: &str, field: SpinorField, kind: SpecialKind) {
        self.spinors.push(BundledSpinor {
            name: name.into(),
            field,
            kind,
        });
        let s = name.to_string();
        self.expectations.push(Expectation::Special { spinor: s.clone() });
        self.expectations.push(Expectation::Integrability { spinor: s.clone() });
        self.expectations
            .push(Expectation::CurrentIdentities { spinor: s.clone() });
        match kind {
            SpecialKind::Parallel => self.expectations.push(Expectation::CurrentKilling { spinor: s }),
            _ => self
                .expectations
                .push(Expectation::CurrentConformalKilling { spinor: s }),
        }
    }

    pub fn expect(&mut self, e: Expectation) {
        self.expectations.push(e);
    }
}

/// Coordinate vector field `∂_i`.
pub fn coordinate_field(n: usize, i: usize) -> impl Fn(&[Jet]) -> Vec<Jet> + Send + Sync + 'static {
    move |xs: &[Jet]| (0..n).map(|k| xs[0].lift(if k == i { 1.0 } else { 0.0 })).collect()
}

/// Registered geometry names.
pub const REGISTRY: &[&str] = &[
    "minkowski",
    "pp-wave",
    "pp-wave-rescaled",
    "cahen-wallach",
    "einstein-sasaki",
    "cone-einstein-sasaki",
    "product",
    "hyperbolic-product",
    "fefferman-heisenberg",
    "warped-product",
];

fn get_usize(p: &serde_json::Value, key: &str, default: usize) -> Result<usize> {
    match p.get(key) {
        None => Ok(default),
        Some(v) => v
            .as_u64()
            .map(|x| x as usize)
            .ok_or_else(|| Error::InvalidParams(format!("'{key}' must be a nonnegative integer"))),
    }
}

fn get_f64_list(p: &serde_json::Value, key: &str) -> Result<Option<Vec<f64>>> {
    match p.get(key) {
        None => Ok(None),
        Some(v) => serde_json::from_value(v.clone())
            .map(Some)
            .map_err(|e| Error::InvalidParams(format!("'{key}': {e}"))),
    }
}

/// Build a geometry by registry name from a JSON parameter block.
pub fn build_geometry(name: &str, params: &serde_json::Value) -> Result<GeometrySpec> {
    let obj_ok = params.is_object() || params.is_null();
    if !obj_ok {
        return Err(Error::InvalidParams("parameters must be a JSON object".into()));
    }
    match name {
        "minkowski" => minkowski(get_usize(params, "n", 4)?),
        "pp-wave" => {
            let n = get_usize(params, "n", 4)?;
            let profile = match params.get("profile") {
                Some(v) => {
                    serde_json::from_value(v.clone()).map_err(|e| Error::InvalidParams(format!("'profile': {e}")))?
                }
                None => Profile::default_for(n),
            };
            pp_wave(n, profile)
        }
        "pp-wave-rescaled" => pp_wave_rescaled(get_usize(params, "n", 4)?),
        "cahen-wallach" => {
            let l = get_f64_list(params, "lambda")?.unwrap_or_else(|| vec![1.0, -0.5]);
            cahen_wallach(&l)
        }
        "einstein-sasaki" => einstein_sasaki_h2(),
        "cone-einstein-sasaki" => cone_over(&einstein_sasaki_h2()?),
        "product" => {
            let k = get_usize(params, "k", 2)?;
            let base = match params.get("base").and_then(|v| v.as_str()).unwrap_or("flat_R4") {
                "flat_R4" => KaehlerBase::FlatR4,
                "flat_R6" => KaehlerBase::FlatR6,
                other => return Err(Error::InvalidParams(format!("unsupported base '{other}'"))),
            };
            product_geometry(k, base)
        }
        "hyperbolic-product" => hyperbolic_product(),
        "fefferman-heisenberg" => fefferman_heisenberg(),
        "warped-product" => {
            let profile = match params.get("profile") {
                Some(v) => {
                    serde_json::from_value(v.clone()).map_err(|e| Error::InvalidParams(format!("'profile': {e}")))?
                }
                None => WarpProfile::Exp { c: 1.0, sign: 1 },
            };
            let k = get_usize(params, "base_dim", 6)?;
            warped_product(profile, k)
        }
        _ => Err(Error::UnknownGeometry {
            name: name.into(),
            known: REGISTRY.join(", "),
        }),
    }
}
