use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{Expectation, GeometrySpec};
use crate::clifford::build_rep;
use crate::error::{Error, Result};
use crate::geometry::MetricChart;
use crate::jet::{self, Jet};
use crate::spin::{SpecialKind, SpinorField, Verdict};

/// One monomial `coef · s^{p_0} x_1^{p_1} ⋯` of a wave profile.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub coef: f64,
    /// Exponents over `(s, x_1, …, x_{n-2})`.
    pub powers: Vec<u32>,
}

/// Wave profile `f(s, x)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Profile {
    Polynomial {
        terms: Vec<PolyTerm>,
    },
    /// `Σ λ_i x_i²`.
    Quadratic {
        lambda: Vec<f64>,
    },
}

impl Profile {
    /// A generic, non-symmetric profile with nonzero Weyl curvature.
    pub fn default_for(n: usize) -> Profile {
        let k = n.saturating_sub(2);
        let mut terms = Vec::new();
        let mut mono = |coef: f64, p: &[(usize, u32)]| {
            let mut powers = vec![0; k + 1];
            for &(i, e) in p {
                powers[i] = e;
            }
            terms.push(PolyTerm { coef, powers });
        };
        if k >= 2 {
            mono(1.0, &[(1, 2)]);
            mono(-1.0, &[(2, 2)]);
            mono(0.5, &[(0, 1), (1, 1), (2, 1)]);
            mono(0.3, &[(1, 3)]);
        } else if k == 1 {
            mono(1.0, &[(1, 2)]);
            mono(0.5, &[(0, 1), (1, 2)]);
        }
        Profile::Polynomial { terms }
    }

    fn validate(&self, n: usize) -> Result<()> {
        match self {
            Profile::Polynomial { terms } => {
                if let Some(t) = terms.iter().find(|t| t.powers.len() != n - 1) {
                    return Err(Error::InvalidParams(format!(
                        "profile term has {} exponents, expected {}",
                        t.powers.len(),
                        n - 1
                    )));
                }
            }
            Profile::Quadratic { lambda } => {
                if lambda.len() != n - 2 {
                    return Err(Error::InvalidParams(format!(
                        "expected {} coefficients, got {}",
                        n - 2,
                        lambda.len()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Evaluate on `(s, x_1, …)` jets.
    pub fn eval(&self, vars: &[Jet]) -> Jet {
        let mut f = vars[0].lift(0.0);
        match self {
            Profile::Polynomial { terms } => {
                for t in terms {
                    let mut m = vars[0].lift(t.coef);
                    for (v, &p) in vars.iter().zip(&t.powers) {
                        if p > 0 {
                            m = &m * &v.powi(p as i32);
                        }
                    }
                    f += &m;
                }
            }
            Profile::Quadratic { lambda } => {
                for (l, x) in lambda.iter().zip(&vars[1..]) {
                    f += &(x.square() * *l);
                }
            }
        }
        f
    }
}

/// `g = dt⊗ds + ds⊗dt + f(s,x) ds² + Σ dx_i²` on coordinates `(t, s, x_1, …)`.
pub fn pp_wave(n: usize, profile: Profile) -> Result<GeometrySpec> {
    if n < 3 {
        return Err(Error::DimensionOutOfRange(n));
    }
    profile.validate(n)?;
    let rep = Arc::new(build_rep(n)?);
    let name = "pp-wave";
    let mut coords = vec!["t".to_string(), "s".to_string()];
    coords.extend((1..=n - 2).map(|i| format!("x{i}")));
    let refs: Vec<&str> = coords.iter().map(String::as_str).collect();
    let pf = Arc::new(profile.clone());
    let p1 = pf.clone();
    let chart = MetricChart::new(name, &refs, vec![(-1.0, 1.0); n], move |xs: &[Jet]| {
        let mut g = jet::zeros(&xs[0], n);
        g[0][1] = xs[0].lift(1.0);
        g[1][0] = xs[0].lift(1.0);
        g[1][1] = p1.eval(&xs[1..]);
        for i in 2..n {
            g[i][i] = xs[0].lift(1.0);
        }
        g
    })
    .with_seed(move |xs: &[Jet]| {
        // e± = ∂_t, ∂_s − (f/2)∂_t; e_1 = (e+ − e−)/√2, e_2 = (e+ + e−)/√2
        let f = pf.eval(&xs[1..]);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let z = xs[0].lift(0.0);
        let mut seed = vec![vec![z.clone(); n]; n];
        seed[0][0] = (&f * 0.5 + 1.0) * r;
        seed[0][1] = xs[0].lift(-r);
        seed[1][0] = (&f * -0.5 + 1.0) * r;
        seed[1][1] = xs[0].lift(r);
        for (a, row) in seed.iter_mut().enumerate().skip(2) {
            row[a] = xs[0].lift(1.0);
        }
        seed
    });
    let mut spec = GeometrySpec::new(name, json!({ "n": n, "profile": profile }), chart);
    // (e_1 + e_2)·φ = 0 singles out u(ν) with ν_m = +1
    let phi = rep.standard_basis_spinor(&vec![1; rep.m])?;
    spec.add_spinor(
        "phi",
        SpinorField::constant(rep.clone(), name, phi),
        SpecialKind::Parallel,
    );
    spec.expect(Expectation::CurrentParallel { spinor: "phi".into() });
    spec.add_vector("V", move |xs: &[Jet]| {
        (0..n).map(|i| xs[0].lift(if i == 0 { 1.0 } else { 0.0 })).collect()
    });
    spec.expect(Expectation::PpCurvature { holds: true });
    spec.expect(Expectation::ParallelVector { vector: "V".into() });
    spec.expect(Expectation::Lightlike { vector: "V".into() });
    spec.expect(Expectation::Twist {
        vector: "V".into(),
        twisting: false,
    });
    spec.expect(Expectation::Classification {
        vector: "V".into(),
        verdict: Verdict::BrinkmannType,
        epsilon: 0,
    });
    spec.rep = Some(rep);
    Ok(spec)
}

/// Cahen–Wallach space: the pp-wave with `f = Σ λ_i x_i²`.
pub fn cahen_wallach(lambda: &[f64]) -> Result<GeometrySpec> {
    if lambda.iter().all(|l| *l == 0.0) {
        return Err(Error::InvalidParams("all λ_i vanish: the space is flat".into()));
    }
    let n = lambda.len() + 2;
    let mut spec = pp_wave(
        n,
        Profile::Quadratic {
            lambda: lambda.to_vec(),
        },
    )?;
    spec.name = "cahen-wallach".into();
    spec.params = json!({ "lambda": lambda });
    spec.expect(Expectation::SymmetricSpace);
    Ok(spec)
}
