//! Pointwise spinor invariants: Dirac current, causal type, and the
//! algebraic identities satisfied by currents in low dimensions.

use serde::{Deserialize, Serialize};

use crate::clifford::{spinor_norm, CliffordRep, Spinor, StructureMap, C64};
use crate::error::{Error, Result};
use crate::report::IdentityReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CausalType {
    Zero,
    Lightlike,
    Timelike,
    Spacelike,
}

/// Dirac current in the `e_j` basis with its causal character.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiracCurrentVector {
    pub components: Vec<f64>,
    pub causal_type: CausalType,
    pub future_directed: bool,
}

impl DiracCurrentVector {
    /// Minkowski square `g(V,V)`.
    pub fn square(&self) -> f64 {
        minkowski_square(&self.components)
    }
}

pub fn minkowski_square(v: &[f64]) -> f64 {
    -v[0] * v[0] + v[1..].iter().map(|x| x * x).sum::<f64>()
}

/// Relative tolerance of the lightlike band.
pub const LIGHTLIKE_BAND: f64 = 1e-9;

/// Causal type of a vector in an orthonormal basis; future means `v_1 > 0`.
pub fn causal_type(v: &[f64]) -> (CausalType, bool) {
    let e2: f64 = v.iter().map(|x| x * x).sum();
    let future = v[0] > 0.0;
    if e2.sqrt() <= 1e-12 {
        return (CausalType::Zero, false);
    }
    let g = minkowski_square(v);
    let kind = if g.abs() <= LIGHTLIKE_BAND * (1.0 + e2) {
        CausalType::Lightlike
    } else if g < 0.0 {
        CausalType::Timelike
    } else {
        CausalType::Spacelike
    };
    (kind, future)
}

/// `V = Σ V^j e_j` with `g(V, e_j) = -⟨e_j·φ, φ⟩`.
pub fn dirac_current(rep: &CliffordRep, phi: &Spinor) -> Result<DiracCurrentVector> {
    let scale = 1.0 + spinor_norm(phi).powi(2);
    let mut comps = Vec::with_capacity(rep.n);
    for j in 0..rep.n {
        let c = rep.indefinite_inner(&(&rep.generators[j] * phi), phi);
        if c.im.abs() > 1e-10 * scale {
            return Err(Error::NonRealCurrent { index: j, imag: c.im });
        }
        comps.push(if j == 0 { c.re } else { -c.re });
    }
    let (causal_type, future_directed) = causal_type(&comps);
    Ok(DiracCurrentVector {
        components: comps,
        causal_type,
        future_directed,
    })
}

fn norm_scale(phi: &Spinor, power: i32) -> f64 {
    spinor_norm(phi).powi(power).max(1e-300)
}

/// Residuals of `V·φ = 0` and `⟨φ,φ⟩ = 0` for a spinor with lightlike current.
pub fn lightlike_identity_check(rep: &CliffordRep, phi: &Spinor, tol: f64) -> Result<IdentityReport> {
    let v = dirac_current(rep, phi)?;
    if v.causal_type != CausalType::Lightlike {
        return Err(Error::Precondition(format!(
            "current is {:?}, not lightlike",
            v.causal_type
        )));
    }
    let mut rep_out = IdentityReport::new(tol);
    let vphi = rep.vector_action(&v.components, phi)?;
    rep_out.push("V·φ = 0", spinor_norm(&vphi) / norm_scale(phi, 3));
    rep_out.push("⟨φ,φ⟩ = 0", rep.indefinite_inner(phi, phi).norm() / norm_scale(phi, 2));
    Ok(rep_out)
}

/// The dimension-dependent identity between `V·φ` and `φ`, plus the
/// accompanying norm identity. Residuals are relative to `|φ|³` and `|φ|⁴`.
pub fn orbit_identity_check(
    rep: &CliffordRep,
    phi: &Spinor,
    structure: Option<&StructureMap>,
    tol: f64,
) -> Result<IdentityReport> {
    if !(2..=7).contains(&rep.n) {
        return Err(Error::Precondition(format!("no orbit identity for n = {}", rep.n)));
    }
    let v = dirac_current(rep, phi)?;
    let vphi = rep.vector_action(&v.components, phi)?;
    let pp = rep.indefinite_inner(phi, phi);
    let gvv = v.square();
    let s3 = norm_scale(phi, 3);
    let s4 = norm_scale(phi, 4);
    let mut out = IdentityReport::new(tol);
    match rep.n {
        3 | 5 => {
            out.push("V·φ = ⟨φ,φ⟩φ", spinor_norm(&(vphi - phi * pp)) / s3);
            out.push("g(V,V) = -⟨φ,φ⟩²", (gvv + (pp * pp).re).abs() / s4);
            out.push("⟨φ,φ⟩ real", pp.im.abs() / norm_scale(phi, 2));
        }
        7 => {
            let j = structure.ok_or_else(|| Error::Precondition("n = 7 requires the quaternionic structure".into()))?;
            let jphi = j.apply(phi);
            let c = rep.indefinite_inner(&jphi, phi);
            let rhs = phi * pp + &jphi * c;
            out.push("V·φ = ⟨φ,φ⟩φ + ⟨Jφ,φ⟩Jφ", spinor_norm(&(vphi - rhs)) / s3);
            let pj = rep.indefinite_inner(phi, &jphi);
            out.push(
                "|⟨φ,φ⟩|² + |⟨φ,Jφ⟩|² = -g(V,V)",
                (pp.norm_sqr() + pj.norm_sqr() + gvv).abs() / s4,
            );
        }
        _ => {
            let p_plus = rep.parity_projector(1)?;
            let plus = &p_plus * phi;
            let minus = phi - &plus;
            let off = spinor_norm(&plus).min(spinor_norm(&minus)) / norm_scale(phi, 1);
            if off > 1e-9 {
                return Err(Error::Precondition("even n needs a half spinor".into()));
            }
            out.push("V·φ = 0", spinor_norm(&vphi) / s3);
            out.push("⟨φ,φ⟩ = 0", pp.norm() / norm_scale(phi, 2));
            out.push("g(V,V) = 0", gvv.abs() / s4);
        }
    }
    Ok(out)
}

/// `τ` or `J` applied to a spinor together with `⟨φ, Jφ⟩`.
pub fn structure_pairing(rep: &CliffordRep, j: &StructureMap, phi: &Spinor) -> (Spinor, C64) {
    let jphi = j.apply(phi);
    let c = rep.indefinite_inner(phi, &jphi);
    (jphi, c)
}
