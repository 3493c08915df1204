use serde::{Deserialize, Serialize};

use super::field::SpinorField;
use crate::clifford::{spinor_norm, CMat, CliffordRep, Spinor, C64};
use crate::error::{Error, Result};
use crate::geometry::curvature::{local_jets, t3, T2, T3};
use crate::geometry::frame::{frame_at, Frame};
use crate::geometry::MetricChart;

/// Connection data in the chart's frame at one point.
#[derive(Clone, Debug)]
pub struct SpinPoint {
    pub x: Vec<f64>,
    pub frame: Frame,
    pub metric: T2,
    /// `w[a][b][c] = ω_ab(e_c) = g(∇_{e_c} e_a, e_b)`.
    pub omega: T3,
    /// `A_c = ¼ Σ η_a η_b ω_ab(e_c) Γ_a Γ_b`.
    pub lift: Vec<CMat>,
}

/// `ω_ab(e_c)` at `x`.
pub fn spin_connection(chart: &MetricChart, x: &[f64]) -> Result<(Frame, T2, T3)> {
    let n = chart.dim();
    let frame = frame_at(chart, x, 1)?;
    let lj = local_jets(chart, x, 1)?;
    let g: T2 = lj.g.iter().map(|r| r.iter().map(|v| v.value()).collect()).collect();
    let gam: T3 = lj
        .gamma
        .iter()
        .map(|a| a.iter().map(|b| b.iter().map(|v| v.value()).collect()).collect())
        .collect();
    // ∇_{∂_i} e_a as coordinate vectors: nab[a][i][k]
    let mut nab = vec![vec![vec![0.0; n]; n]; n];
    for (a, na) in nab.iter_mut().enumerate() {
        for (i, nai) in na.iter_mut().enumerate() {
            for (k, v) in nai.iter_mut().enumerate() {
                let mut s = frame.e[a][k].d1(i);
                for j in 0..n {
                    s += gam[k][i][j] * frame.e[a][j].value();
                }
                *v = s;
            }
        }
    }
    let mut w = t3(n);
    for a in 0..n {
        for c in 0..n {
            let ec = frame.vector(c);
            // ∇_{e_c} e_a
            let v: Vec<f64> = (0..n).map(|k| (0..n).map(|i| ec[i] * nab[a][i][k]).sum()).collect();
            for b in 0..n {
                let eb = frame.vector(b);
                let mut s = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        s += g[i][j] * v[i] * eb[j];
                    }
                }
                w[a][b][c] = s;
            }
        }
    }
    Ok((frame, g, w))
}

/// Spinor lift of the connection at `x`.
pub fn spin_point(chart: &MetricChart, rep: &CliffordRep, x: &[f64]) -> Result<SpinPoint> {
    if !chart.contains(x) {
        return Err(Error::OutsideDomain);
    }
    if rep.n != chart.dim() {
        return Err(Error::DimensionMismatch {
            expected: chart.dim(),
            got: rep.n,
        });
    }
    let (frame, metric, omega) = spin_connection(chart, x)?;
    let n = chart.dim();
    let eta = &frame.signature;
    let mut lift = Vec::with_capacity(n);
    for c in 0..n {
        let mut m = CMat::zeros(rep.spinor_dim, rep.spinor_dim);
        for a in 0..n {
            for b in 0..n {
                let coef = 0.25 * eta[a] * eta[b] * omega[a][b][c];
                if coef != 0.0 {
                    m += rep.pair(a, b) * C64::new(coef, 0.0);
                }
            }
        }
        lift.push(m);
    }
    Ok(SpinPoint {
        x: x.to_vec(),
        frame,
        metric,
        omega,
        lift,
    })
}

fn check_gauge(chart: &MetricChart, field: &SpinorField) -> Result<()> {
    if field.gauge != chart.name {
        return Err(Error::Precondition(format!(
            "spinor field gauge '{}' does not match chart '{}'",
            field.gauge, chart.name
        )));
    }
    Ok(())
}

/// All frame derivatives `∇_{e_a} φ` at a point, with the field value.
pub fn spinor_derivatives(chart: &MetricChart, field: &SpinorField, sp: &SpinPoint) -> Result<(Spinor, Vec<Spinor>)> {
    check_gauge(chart, field)?;
    let n = chart.dim();
    let phi = field.eval(&sp.x);
    let parts = field.partials(&sp.x);
    let out = (0..n)
        .map(|a| {
            let ea = sp.frame.vector(a);
            let mut d = &sp.lift[a] * &phi;
            for (i, p) in parts.iter().enumerate() {
                if ea[i] != 0.0 {
                    d += p * C64::new(ea[i], 0.0);
                }
            }
            d
        })
        .collect();
    Ok((phi, out))
}

/// `∇_{e_a} φ` at `x`.
pub fn spinor_derivative(chart: &MetricChart, field: &SpinorField, a: usize, x: &[f64]) -> Result<Spinor> {
    let sp = spin_point(chart, &field.rep, x)?;
    Ok(spinor_derivatives(chart, field, &sp)?.1.swap_remove(a))
}

/// `Dφ = Σ η_a e_a·∇_{e_a}φ` from precomputed derivatives.
pub fn dirac_from(rep: &CliffordRep, eta: &[f64], nabla: &[Spinor]) -> Spinor {
    let mut out = rep.zero_spinor();
    for (a, d) in nabla.iter().enumerate() {
        out += &rep.generators[a] * d * C64::new(eta[a], 0.0);
    }
    out
}

pub fn dirac_operator(chart: &MetricChart, field: &SpinorField, x: &[f64]) -> Result<Spinor> {
    let sp = spin_point(chart, &field.rep, x)?;
    let (_, nab) = spinor_derivatives(chart, field, &sp)?;
    Ok(dirac_from(&field.rep, &sp.frame.signature, &nab))
}

/// Frame components `P_a φ = ∇_{e_a}φ + (1/n) e_a·Dφ`.
pub fn twistor_components(chart: &MetricChart, field: &SpinorField, x: &[f64]) -> Result<Vec<Spinor>> {
    let sp = spin_point(chart, &field.rep, x)?;
    let (_, nab) = spinor_derivatives(chart, field, &sp)?;
    let rep = &field.rep;
    let d = dirac_from(rep, &sp.frame.signature, &nab);
    let inv_n = C64::new(1.0 / rep.n as f64, 0.0);
    Ok(nab
        .iter()
        .enumerate()
        .map(|(a, v)| v + &rep.generators[a] * &d * inv_n)
        .collect())
}

/// `max_a |∇_{e_a}φ + (1/n) e_a·Dφ|`.
pub fn twistor_residual(chart: &MetricChart, field: &SpinorField, x: &[f64]) -> Result<f64> {
    Ok(twistor_components(chart, field, x)?
        .iter()
        .map(spinor_norm)
        .fold(0.0, f64::max))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpecialKind {
    Parallel,
    Killing { re: f64, im: f64 },
    Twistor,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpecialSpinorVerdict {
    pub kind: SpecialKind,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// The field vanished at every sample point.
    pub degenerate: bool,
}

/// Defining residual of a parallel, Killing or twistor spinor at one point.
pub fn special_residual(chart: &MetricChart, field: &SpinorField, kind: SpecialKind, x: &[f64]) -> Result<(f64, f64)> {
    let sp = spin_point(chart, &field.rep, x)?;
    let (phi, nab) = spinor_derivatives(chart, field, &sp)?;
    let rep = &field.rep;
    let r = match kind {
        SpecialKind::Parallel => nab.iter().map(spinor_norm).fold(0.0, f64::max),
        SpecialKind::Killing { re, im } => {
            let lam = C64::new(re, im);
            nab.iter()
                .enumerate()
                .map(|(a, v)| spinor_norm(&(v - &rep.generators[a] * &phi * lam)))
                .fold(0.0, f64::max)
        }
        SpecialKind::Twistor => {
            let d = dirac_from(rep, &sp.frame.signature, &nab);
            let inv_n = C64::new(1.0 / rep.n as f64, 0.0);
            nab.iter()
                .enumerate()
                .map(|(a, v)| spinor_norm(&(v + &rep.generators[a] * &d * inv_n)))
                .fold(0.0, f64::max)
        }
    };
    Ok((r, spinor_norm(&phi)))
}

/// Evaluate a special-spinor condition over sample points.
pub fn special_spinor_check(
    chart: &MetricChart,
    field: &SpinorField,
    kind: SpecialKind,
    points: &[Vec<f64>],
    tol: f64,
) -> Result<SpecialSpinorVerdict> {
    let mut worst: f64 = 0.0;
    let mut size: f64 = 0.0;
    for x in points {
        let (r, s) = special_residual(chart, field, kind, x)?;
        worst = worst.max(r);
        size = size.max(s);
    }
    Ok(SpecialSpinorVerdict {
        kind,
        max_residual: worst,
        tolerance: tol,
        pass: worst <= tol,
        degenerate: size == 0.0,
    })
}

/// Least-squares Killing number at a point: `λ` minimizing `Σ|∇_aφ − λ e_a·φ|²`.
pub fn killing_number(chart: &MetricChart, field: &SpinorField, x: &[f64]) -> Result<C64> {
    let sp = spin_point(chart, &field.rep, x)?;
    let (phi, nab) = spinor_derivatives(chart, field, &sp)?;
    let mut num = C64::new(0.0, 0.0);
    let mut den = 0.0;
    for (a, v) in nab.iter().enumerate() {
        let b = &field.rep.generators[a] * &phi;
        num += b.iter().zip(v.iter()).map(|(p, q)| p.conj() * q).sum::<C64>();
        den += b.iter().map(|p| p.norm_sqr()).sum::<f64>();
    }
    if den == 0.0 {
        return Err(Error::Precondition("zero spinor has no Killing number".into()));
    }
    Ok(num / den)
}
