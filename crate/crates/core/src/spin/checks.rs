use std::sync::Arc;

use super::field::SpinorField;
use super::operators::{dirac_from, spin_point, spinor_derivatives, twistor_components};
use crate::clifford::{spinor_norm, CMat, CliffordRep, Spinor, C64};
use crate::error::{Error, Result};
use crate::geometry::chart::ScalarFn;
use crate::geometry::curvature::{curvature_pack, T2, T3, T4};
use crate::geometry::frame::Frame;
use crate::geometry::MetricChart;
use crate::invariants::dirac_current;
use crate::jet::Jet;
use crate::report::IdentityReport;

/// Frame components `T_{abcd} = T(e_a, e_b, e_c, e_d)`.
pub fn frame_components4(t: &T4, frame: &Frame) -> T4 {
    let e = frame.columns();
    let n = e.len();
    let mut cur = t.clone();
    for slot in 0..4 {
        let mut next = cur.clone();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let idx = [a, b, c, d];
                        let mut s = 0.0;
                        for i in 0..n {
                            let mut j = idx;
                            j[slot] = i;
                            s += cur[j[0]][j[1]][j[2]][j[3]] * e[i][idx[slot]];
                        }
                        next[a][b][c][d] = s;
                    }
                }
            }
        }
        cur = next;
    }
    cur
}

pub fn frame_components3(t: &T3, frame: &Frame) -> T3 {
    let e = frame.columns();
    let n = e.len();
    let mut out = t.clone();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut s = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            s += t[i][j][k] * e[i][a] * e[j][b] * e[k][c];
                        }
                    }
                }
                out[a][b][c] = s;
            }
        }
    }
    out
}

pub fn frame_components2(t: &T2, frame: &Frame) -> T2 {
    let e = frame.columns();
    let n = e.len();
    let mut out = t.clone();
    for a in 0..n {
        for b in 0..n {
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    s += t[i][j] * e[i][a] * e[j][b];
                }
            }
            out[a][b] = s;
        }
    }
    out
}

/// Clifford matrix of the 2-form `W(e_a ∧ e_b) = Σ_{c<d} η_c η_d W_abcd e_c ∧ e_d`.
pub fn curvature_two_form(rep: &CliffordRep, w: &T4, eta: &[f64], a: usize, b: usize) -> CMat {
    let n = rep.n;
    let mut m = CMat::zeros(rep.spinor_dim, rep.spinor_dim);
    for c in 0..n {
        for d in c + 1..n {
            let coef = eta[c] * eta[d] * w[a][b][c][d];
            if coef != 0.0 {
                m += rep.pair(c, d) * C64::new(coef, 0.0);
            }
        }
    }
    m
}

/// Clifford matrix of the vector `C(e_a, e_b) = Σ_c η_c C_abc e_c`.
pub fn cotton_vector(rep: &CliffordRep, c: &T3, eta: &[f64], a: usize, b: usize) -> CMat {
    let mut m = CMat::zeros(rep.spinor_dim, rep.spinor_dim);
    for k in 0..rep.n {
        let coef = eta[k] * c[a][b][k];
        if coef != 0.0 {
            m += &rep.generators[k] * C64::new(coef, 0.0);
        }
    }
    m
}

/// Residuals of `W(η)·φ = 0`, `W(X∧Y)·Dφ = n C(X,Y)·φ`, `V_φ⌟C = 0` and
/// `V_φ⌟W = 0` at one point, without checking the twistor equation.
pub fn integrability_residuals(
    chart: &MetricChart,
    field: &SpinorField,
    x: &[f64],
    tol: f64,
) -> Result<IdentityReport> {
    let rep = &field.rep;
    let n = rep.n;
    let sp = spin_point(chart, rep, x)?;
    let (phi, nab) = spinor_derivatives(chart, field, &sp)?;
    let eta = &sp.frame.signature;
    let d = dirac_from(rep, eta, &nab);
    let cp = curvature_pack(chart, x)?;
    let w = frame_components4(&cp.weyl, &sp.frame);
    let c = frame_components3(&cp.cotton, &sp.frame);
    let mut r2: f64 = 0.0;
    let mut r3: f64 = 0.0;
    let nf = C64::new(n as f64, 0.0);
    for a in 0..n {
        for b in a + 1..n {
            let wm = curvature_two_form(rep, &w, eta, a, b);
            r2 = r2.max(spinor_norm(&(&wm * &phi)));
            let cm = cotton_vector(rep, &c, eta, a, b);
            r3 = r3.max(spinor_norm(&(&wm * &d - cm * &phi * nf)));
        }
    }
    let v = dirac_current(rep, &phi)?.components;
    let mut vc: f64 = 0.0;
    let mut vw: f64 = 0.0;
    for b in 0..n {
        for k in 0..n {
            let s: f64 = (0..n).map(|a| v[a] * c[a][b][k]).sum();
            vc = vc.max(s.abs());
            for l in 0..n {
                let s: f64 = (0..n).map(|a| v[a] * w[a][b][k][l]).sum();
                vw = vw.max(s.abs());
            }
        }
    }
    let mut out = IdentityReport::new(tol);
    out.push("W(η)·φ = 0", r2);
    out.push("W(X∧Y)·Dφ = n C(X,Y)·φ", r3);
    out.push("V⌟C = 0", vc);
    out.push("V⌟W = 0", vw);
    Ok(out)
}

/// Integrability conditions for a twistor spinor; the field must satisfy the
/// twistor equation to `1e-6` at `x`.
pub fn integrability_check(chart: &MetricChart, field: &SpinorField, x: &[f64], tol: f64) -> Result<IdentityReport> {
    let p = twistor_components(chart, field, x)?;
    let r = p.iter().map(spinor_norm).fold(0.0, f64::max);
    if r > 1e-6 {
        return Err(Error::Precondition(format!(
            "field is not a twistor spinor (residual {r:e})"
        )));
    }
    integrability_residuals(chart, field, x, tol)
}

fn sigma_value(sigma: &ScalarFn, x: &[f64]) -> f64 {
    sigma(&Jet::seed(x, 0)).value()
}

/// Both conformal transformation laws at sample points:
/// `D̃(e^{-(n-1)σ/2}φ) = e^{-(n+1)σ/2} Dφ` and
/// `P̃_a(e^{σ/2}φ) = e^{-σ/2} P_a φ`, with `ẽ_a = e^{-σ} e_a`.
pub fn conformal_covariance_check(
    chart: &MetricChart,
    sigma: ScalarFn,
    field: &SpinorField,
    points: &[Vec<f64>],
    tol: f64,
) -> Result<IdentityReport> {
    let rep: Arc<CliffordRep> = field.rep.clone();
    let n = rep.n as f64;
    let tilde = chart.conformal_rescale(sigma.clone());
    let s1 = sigma.clone();
    let weighted_d = field
        .scaled(move |x| C64::new((-(n - 1.0) / 2.0 * sigma_value(&s1, x)).exp(), 0.0))
        .regauged(tilde.name.clone());
    let s2 = sigma.clone();
    let weighted_p = field
        .scaled(move |x| C64::new((0.5 * sigma_value(&s2, x)).exp(), 0.0))
        .regauged(tilde.name.clone());
    let mut rd: f64 = 0.0;
    let mut rp: f64 = 0.0;
    for x in points {
        let s = sigma_value(&sigma, x);
        let sp = spin_point(chart, &rep, x)?;
        let (_, nab) = spinor_derivatives(chart, field, &sp)?;
        let d = dirac_from(&rep, &sp.frame.signature, &nab);
        let stp = spin_point(&tilde, &rep, x)?;
        let (_, nabt) = spinor_derivatives(&tilde, &weighted_d, &stp)?;
        let dt = dirac_from(&rep, &stp.frame.signature, &nabt);
        rd = rd.max(spinor_norm(&(dt - &d * C64::new((-(n + 1.0) / 2.0 * s).exp(), 0.0))));
        let p = twistor_components(chart, field, x)?;
        let pt = twistor_components(&tilde, &weighted_p, x)?;
        for (a, b) in pt.iter().zip(&p) {
            rp = rp.max(spinor_norm(&(a - b * C64::new((-0.5 * s).exp(), 0.0))));
        }
    }
    let mut out = IdentityReport::new(tol);
    out.push("D law", rd);
    out.push("P law", rp);
    Ok(out)
}

/// Value of `φ` at every point, for convenience in reports.
pub fn sample_values(field: &SpinorField, points: &[Vec<f64>]) -> Vec<Spinor> {
    points.iter().map(|x| field.eval(x)).collect()
}
