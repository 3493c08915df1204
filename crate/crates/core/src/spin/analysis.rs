use serde::{Deserialize, Serialize};

use super::field::SpinorField;
use super::operators::{dirac_operator, killing_number, special_residual, SpecialKind};
use crate::clifford::{spinor_norm, C64};
use crate::error::{Error, Result};
use crate::geometry::chart::VectorFn;
use crate::geometry::curvature::{local_jets, ricci_scalar_at, riemann_jets, t2, T2};
use crate::geometry::diagnostics::{killing_residual, nabla_vector, twist_measure};
use crate::geometry::MetricChart;
use crate::invariants::dirac_current;
use crate::jet::Jet;
use crate::report::IdentityReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    FeffermanType,
    BrinkmannType,
    Invalid,
}

/// Algebraic data of a lightlike Killing field at a point.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LightlikeKillingAnalysis {
    pub point: Vec<f64>,
    /// `j[i][k] = ∇_i V^k`, i.e. `J(∂_i) = j[i][k] ∂_k`.
    pub j: T2,
    pub theta: Vec<f64>,
    pub eta: Vec<f64>,
    pub t: Vec<f64>,
    pub ric_vv: f64,
    /// `η(V) = K(V,V)`.
    pub eta_v: f64,
    /// `-(n-2) Ric(V,V)`, the alternative normalization constant.
    pub eta_v_alt: f64,
    /// Classification sign, `sign Ric(V,V)`.
    pub epsilon: i8,
    /// Sign of `η(V)` after rescaling `V` so that `|η(V)| = 1`.
    pub epsilon_identity: i8,
    pub twist: f64,
    pub verdict: Verdict,
    pub report: IdentityReport,
}

fn lower(g: &T2, v: &[f64]) -> Vec<f64> {
    let n = v.len();
    (0..n).map(|i| (0..n).map(|k| g[i][k] * v[k]).sum()).collect()
}

fn dot(g: &T2, a: &[f64], b: &[f64]) -> f64 {
    let la = lower(g, a);
    la.iter().zip(b).map(|(p, q)| p * q).sum()
}

/// `J`, `θ`, `η`, `T`, the signs `ε`, and residuals of
/// `J²X = εX − θ(X)T − η(X)V`, `g(T,V) = ε`, `g(V,V) = g(T,T) = 0` and
/// `dθ(X,Y) = 2g(JX,Y)`, all after rescaling `V` so that `|η(V)| = 1`.
pub fn lightlike_killing_analysis(
    chart: &MetricChart,
    v: &VectorFn,
    x: &[f64],
    tol: f64,
) -> Result<LightlikeKillingAnalysis> {
    let n = chart.dim();
    let lj = local_jets(chart, x, 2)?;
    let g: T2 = lj.g.iter().map(|r| r.iter().map(Jet::value).collect()).collect();
    let gi: T2 = lj.ginv.iter().map(|r| r.iter().map(Jet::value).collect()).collect();
    let v0: Vec<f64> = v(&Jet::seed(x, 0)).iter().map(Jet::value).collect();
    let scale = v0.iter().map(|c| c * c).sum::<f64>().sqrt().max(1e-300);
    if dot(&g, &v0, &v0).abs() > 1e-9 * scale * scale {
        return Err(Error::Precondition("vector field is not lightlike".into()));
    }
    if killing_residual(chart, v, x)? > 1e-7 * scale {
        return Err(Error::Precondition("vector field is not Killing".into()));
    }
    let (ric, s) = {
        let (_, rup) = riemann_jets(&lj);
        let mut ric = t2(n);
        for (j, row) in ric.iter_mut().enumerate() {
            for (k, val) in row.iter_mut().enumerate() {
                *val = (0..n).map(|i| rup[i][j][k][i].value()).sum();
            }
        }
        let mut s = 0.0;
        for j in 0..n {
            for k in 0..n {
                s += gi[j][k] * ric[j][k];
            }
        }
        (ric, s)
    };
    let nf = n as f64;
    let mut rho = t2(n);
    for j in 0..n {
        for k in 0..n {
            rho[j][k] = (s / (2.0 * (nf - 1.0)) * g[j][k] - ric[j][k]) / (nf - 2.0);
        }
    }
    let ric_vv = dot(&ric, &v0, &v0);
    let eta_raw = lower(&rho, &v0);
    let eta_v: f64 = eta_raw.iter().zip(&v0).map(|(p, q)| p * q).sum();
    let ric_scale = scale * scale * (1.0 + crate::geometry::curvature::max_abs2(&ric));
    let epsilon: i8 = if ric_vv.abs() <= tol * ric_scale {
        0
    } else if ric_vv > 0.0 {
        1
    } else {
        -1
    };
    // normalize V → cV with |η(V)| = 1 when possible
    let c = if epsilon == 0 {
        1.0 / scale
    } else {
        1.0 / eta_v.abs().sqrt()
    };
    let epsilon_identity: i8 = if epsilon == 0 { 0 } else { eta_v.signum() as i8 };
    let vn: Vec<f64> = v0.iter().map(|q| q * c).collect();
    let jm: T2 = nabla_vector(chart, v, x)?
        .into_iter()
        .map(|r| r.into_iter().map(|q| q * c).collect())
        .collect();
    let theta = lower(&g, &vn);
    let eta: Vec<f64> = eta_raw.iter().map(|q| q * c).collect();
    let t: Vec<f64> = (0..n).map(|k| (0..n).map(|i| gi[k][i] * eta[i]).sum()).collect();
    let eps = epsilon_identity as f64;
    let mut j1: f64 = 0.0;
    for i in 0..n {
        for k in 0..n {
            let jj: f64 = (0..n).map(|m| jm[i][m] * jm[m][k]).sum();
            let rhs = if i == k { eps } else { 0.0 } - theta[i] * t[k] - eta[i] * vn[k];
            j1 = j1.max((jj - rhs).abs());
        }
    }
    let gtv = dot(&g, &t, &vn);
    let j2 = (gtv - eps)
        .abs()
        .max(dot(&g, &vn, &vn).abs())
        .max(dot(&g, &t, &t).abs());
    // dθ from jets of θ = g(V,·)
    let gj = chart.metric_jets(x, 1)?;
    let vj = v(&Jet::seed(x, 1));
    let th_j: Vec<Jet> = (0..n)
        .map(|i| {
            let mut s = gj[0][0].lift(0.0);
            for k in 0..n {
                s += &gj[i][k] * &vj[k];
            }
            s * c
        })
        .collect();
    let mut j3: f64 = 0.0;
    for i in 0..n {
        for k in 0..n {
            let dth = th_j[k].d1(i) - th_j[i].d1(k);
            let gjxy: f64 = (0..n).map(|m| jm[i][m] * g[m][k]).sum();
            j3 = j3.max((dth - 2.0 * gjxy).abs());
        }
    }
    let mut skew: f64 = 0.0;
    for i in 0..n {
        for k in 0..n {
            let a: f64 = (0..n).map(|m| jm[i][m] * g[m][k]).sum();
            let b: f64 = (0..n).map(|m| jm[k][m] * g[m][i]).sum();
            skew = skew.max((a + b).abs());
        }
    }
    let jv: f64 = (0..n)
        .map(|k| (0..n).map(|i| vn[i] * jm[i][k]).sum::<f64>().abs())
        .fold(0.0, f64::max);
    let jt: f64 = (0..n)
        .map(|k| (0..n).map(|i| t[i] * jm[i][k]).sum::<f64>().abs())
        .fold(0.0, f64::max);
    let twist = twist_measure(chart, v, x)?;
    let mut report = IdentityReport::new(tol);
    report.push("J1: J²X = εX − θ(X)T − η(X)V", j1);
    report.push("J2: g(T,V) = ε, g(V,V) = g(T,T) = 0", j2);
    report.push("J3: dθ(X,Y) = 2g(JX,Y)", j3);
    report.push("J skew-adjoint", skew);
    report.push("J V = 0", jv);
    report.push("J T = 0", jt);
    let verdict = match epsilon {
        1 => Verdict::FeffermanType,
        0 => Verdict::BrinkmannType,
        _ => Verdict::Invalid,
    };
    Ok(LightlikeKillingAnalysis {
        point: x.to_vec(),
        j: jm,
        theta,
        eta,
        t,
        ric_vv,
        eta_v,
        eta_v_alt: -(nf - 2.0) * ric_vv,
        epsilon,
        epsilon_identity,
        twist,
        verdict,
        report,
    })
}

/// Relative variation `(max − min)/max|·|` of `Ric(V,V)` over points, and its mean.
pub fn ric_vv_variation(chart: &MetricChart, v: &VectorFn, points: &[Vec<f64>]) -> Result<(f64, f64)> {
    let mut vals = Vec::with_capacity(points.len());
    for x in points {
        let (ric, _) = ricci_scalar_at(chart, x)?;
        let v0: Vec<f64> = v(&Jet::seed(x, 0)).iter().map(Jet::value).collect();
        vals.push(dot(&ric, &v0, &v0));
    }
    let max = vals.iter().cloned().fold(f64::MIN, f64::max);
    let min = vals.iter().cloned().fold(f64::MAX, f64::min);
    let big = vals.iter().fold(0.0f64, |m, q| m.max(q.abs())).max(1e-300);
    let mean = vals.iter().sum::<f64>() / vals.len() as f64;
    Ok(((max - min) / big, mean))
}

/// Output of [`killing_decompose`].
pub struct KillingDecomposition {
    pub psi_plus: SpinorField,
    pub psi_minus: SpinorField,
    pub lambda_plus: C64,
    pub lambda_minus: C64,
    pub scalar: f64,
    pub report: IdentityReport,
}

/// Split a twistor spinor on a manifold of constant nonzero scalar curvature into
/// `ψ± = ½φ ± √((n−1)/(nR)) Dφ` and check both parts are Killing spinors.
///
/// `Q_ψ = ⟨ψ,ψ⟩² + g(V_ψ,V_ψ)` is checked for constancy on both Killing parts.
/// The Einstein-scalar relation `R = −4(n−1)/n ⟨Dφ,Dφ⟩/⟨φ,φ⟩` is only checked
/// when `⟨φ,φ⟩` is constant and nonzero on the sample points.
pub fn killing_decompose(
    chart: &MetricChart,
    field: &SpinorField,
    points: &[Vec<f64>],
    tol: f64,
) -> Result<KillingDecomposition> {
    let rep = field.rep.clone();
    let n = rep.n as f64;
    let mut scal = Vec::new();
    for x in points {
        scal.push(ricci_scalar_at(chart, x)?.1);
    }
    let r = scal.iter().sum::<f64>() / scal.len() as f64;
    let r_var = scal.iter().fold(0.0f64, |m, q| m.max((q - r).abs()));
    if r.abs() < 1e-9 {
        return Err(Error::Precondition(
            "scalar curvature vanishes; use the parallel branch".into(),
        ));
    }
    let mut report = IdentityReport::new(tol);
    report.push("scalar curvature constant", r_var);
    let mut tw: f64 = 0.0;
    for x in points {
        tw = tw.max(special_residual(chart, field, SpecialKind::Twistor, x)?.0);
    }
    report.push("φ twistor", tw);
    let coef = (C64::new((n - 1.0) / (n * r), 0.0)).sqrt();
    let ch = chart.clone();
    let f1 = field.clone();
    let dphi = field.derived(move |x| dirac_operator(&ch, &f1, x).expect("Dirac operator on chart"));
    let mut dphi = dphi;
    dphi.step = 1e-3;
    let half = C64::new(0.5, 0.0);
    let mut psi_plus = field.combine(half, &dphi, coef);
    let mut psi_minus = field.combine(half, &dphi, -coef);
    psi_plus.step = 1e-3;
    psi_minus.step = 1e-3;
    let center = &points[points.len() / 2];
    let lambda_plus = killing_number(chart, &psi_plus, center)?;
    let lambda_minus = killing_number(chart, &psi_minus, center)?;
    let mut kp: f64 = 0.0;
    let mut km: f64 = 0.0;
    for x in points {
        let lp = SpecialKind::Killing {
            re: lambda_plus.re,
            im: lambda_plus.im,
        };
        let lm = SpecialKind::Killing {
            re: lambda_minus.re,
            im: lambda_minus.im,
        };
        kp = kp.max(special_residual(chart, &psi_plus, lp, x)?.0);
        km = km.max(special_residual(chart, &psi_minus, lm, x)?.0);
    }
    report.push("ψ+ Killing", kp);
    report.push("ψ− Killing", km);
    let lam2 = r / (4.0 * n * (n - 1.0));
    report.push("λ± = ∓λ", (lambda_plus + lambda_minus).norm());
    report.push("λ² = R/(4n(n−1))", (lambda_plus * lambda_plus - lam2).norm());
    let mut pp = Vec::new();
    let mut ratio = Vec::new();
    let mut q = [Vec::new(), Vec::new()];
    for x in points {
        let phi = field.eval(x);
        let p = rep.indefinite_inner(&phi, &phi);
        pp.push(p);
        let d = dphi.eval(x);
        ratio.push(rep.indefinite_inner(&d, &d) / p);
        for (qs, psi) in q.iter_mut().zip([&psi_plus, &psi_minus]) {
            let s = psi.eval(x);
            let ps = rep.indefinite_inner(&s, &s);
            qs.push((ps * ps).re + dirac_current(&rep, &s)?.square());
        }
    }
    for (label, qs) in ["Q_ψ+ constant", "Q_ψ− constant"].iter().zip(&q) {
        let q0 = qs[0];
        report.push(*label, qs.iter().fold(0.0f64, |m, v| m.max((v - q0).abs())));
    }
    let p0 = pp[0];
    let pp_const = pp.iter().all(|p| (p - p0).norm() <= 1e-9 * (1.0 + p0.norm()));
    if pp_const && p0.norm() > 1e-9 {
        let worst = ratio
            .iter()
            .map(|rt| (C64::new(r, 0.0) + rt * (4.0 * (n - 1.0) / n)).norm())
            .fold(0.0, f64::max);
        report.push("R = −4(n−1)/n ⟨Dφ,Dφ⟩/⟨φ,φ⟩", worst);
    }
    Ok(KillingDecomposition {
        psi_plus,
        psi_minus,
        lambda_plus,
        lambda_minus,
        scalar: r,
        report,
    })
}

/// Special Kähler flag check on a Brinkmann chart: `J` is a constant complex
/// structure on the transverse coordinate directions `E`.
pub fn kaehler_flag_check(
    chart: &MetricChart,
    v: &VectorFn,
    transverse: &[usize],
    j: &T2,
    points: &[Vec<f64>],
    tol: f64,
) -> Result<IdentityReport> {
    let m = transverse.len();
    let mut orth: f64 = 0.0;
    let mut par: f64 = 0.0;
    let mut trace: f64 = 0.0;
    let mut jsq: f64 = 0.0;
    for p in 0..m {
        for q in 0..m {
            let s: f64 = (0..m).map(|r| j[p][r] * j[r][q]).sum();
            jsq = jsq.max((s + if p == q { 1.0 } else { 0.0 }).abs());
        }
    }
    for x in points {
        let nv = nabla_vector(chart, v, x)?;
        if crate::geometry::curvature::max_abs2(&nv) > 1e-6 {
            return Err(Error::Precondition("vector field is not parallel".into()));
        }
        let lj = local_jets(chart, x, 2)?;
        let n = lj.n;
        let g: T2 = lj.g.iter().map(|r| r.iter().map(Jet::value).collect()).collect();
        // j[p][q]: J(∂_{E_q}) = Σ_p j[p][q] ∂_{E_p}
        for a in 0..m {
            for b in 0..m {
                let mut s = 0.0;
                for p in 0..m {
                    for q in 0..m {
                        s += j[p][a] * j[q][b] * g[transverse[p]][transverse[q]];
                    }
                }
                orth = orth.max((s - g[transverse[a]][transverse[b]]).abs());
            }
        }
        for i in 0..n {
            for p in 0..m {
                for q in 0..m {
                    let mut s = 0.0;
                    for r in 0..m {
                        s += lj.gamma[transverse[p]][i][transverse[r]].value() * j[r][q]
                            - j[p][r] * lj.gamma[transverse[r]][i][transverse[q]].value();
                    }
                    par = par.max(s.abs());
                }
            }
        }
        let (_, rup) = riemann_jets(&lj);
        for a in 0..n {
            for b in 0..n {
                let mut s = 0.0;
                for p in 0..m {
                    for q in 0..m {
                        s += j[p][q] * rup[a][b][transverse[q]][transverse[p]].value();
                    }
                }
                trace = trace.max(s.abs());
            }
        }
    }
    let mut out = IdentityReport::new(tol);
    out.push("J² = −1 on E", jsq);
    out.push("J orthogonal on E", orth);
    out.push("J parallel on E", par);
    out.push("Trace(J∘R(X,Y)) = 0", trace);
    Ok(out)
}

/// Largest value of `|∇_{V}φ − icφ|` for the measured `c`, with `c` itself.
pub fn fiber_phase(chart: &MetricChart, field: &SpinorField, v: &VectorFn, x: &[f64]) -> Result<(C64, f64)> {
    let sp = super::operators::spin_point(chart, &field.rep, x)?;
    let (phi, nab) = super::operators::spinor_derivatives(chart, field, &sp)?;
    let v0: Vec<f64> = v(&Jet::seed(x, 0)).iter().map(Jet::value).collect();
    let vf = sp.frame.from_coords(&sp.metric, &v0);
    let mut d = field.rep.zero_spinor();
    for (a, na) in nab.iter().enumerate() {
        d += na * C64::new(vf[a], 0.0);
    }
    let k = phi.iter().zip(d.iter()).map(|(p, q)| p.conj() * q).sum::<C64>()
        / phi.iter().map(|p| p.norm_sqr()).sum::<f64>();
    Ok((k, spinor_norm(&(d - &phi * k))))
}
