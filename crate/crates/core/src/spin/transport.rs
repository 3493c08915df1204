use super::operators::spin_point;
use crate::clifford::{spinor_norm, CliffordRep, Spinor, C64};
use crate::error::{Error, Result};
use crate::geometry::curvature::christoffel;
use crate::geometry::MetricChart;

/// Object carried along a path.
#[derive(Clone, Debug)]
pub enum Transported {
    Vector(Vec<f64>),
    Spinor(Spinor),
}

fn lerp(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(p, q)| p + t * (q - p)).collect()
}

fn rhs(
    chart: &MetricChart,
    rep: Option<&CliffordRep>,
    x: &[f64],
    dx: &[f64],
    obj: &Transported,
) -> Result<Transported> {
    match obj {
        Transported::Vector(v) => {
            let gam = christoffel(chart, x)?;
            let n = v.len();
            Ok(Transported::Vector(
                (0..n)
                    .map(|k| {
                        let mut s = 0.0;
                        for i in 0..n {
                            for j in 0..n {
                                s -= gam[k][i][j] * dx[i] * v[j];
                            }
                        }
                        s
                    })
                    .collect(),
            ))
        }
        Transported::Spinor(phi) => {
            let rep = rep.ok_or_else(|| Error::Precondition("spinor transport needs a representation".into()))?;
            let sp = spin_point(chart, rep, x)?;
            let c = sp.frame.from_coords(&sp.metric, dx);
            let mut out = rep.zero_spinor();
            for (a, l) in sp.lift.iter().enumerate() {
                if c[a] != 0.0 {
                    out -= l * phi * C64::new(c[a], 0.0);
                }
            }
            Ok(Transported::Spinor(out))
        }
    }
}

fn axpy(a: &Transported, h: f64, b: &Transported) -> Transported {
    match (a, b) {
        (Transported::Vector(p), Transported::Vector(q)) => {
            Transported::Vector(p.iter().zip(q).map(|(x, y)| x + h * y).collect())
        }
        (Transported::Spinor(p), Transported::Spinor(q)) => Transported::Spinor(p + q * C64::new(h, 0.0)),
        _ => unreachable!("mismatched transport objects"),
    }
}

fn distance(a: &Transported, b: &Transported) -> f64 {
    match (a, b) {
        (Transported::Vector(p), Transported::Vector(q)) => {
            p.iter().zip(q).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
        }
        (Transported::Spinor(p), Transported::Spinor(q)) => spinor_norm(&(p - q)),
        _ => f64::INFINITY,
    }
}

fn rk4_segment(
    chart: &MetricChart,
    rep: Option<&CliffordRep>,
    a: &[f64],
    b: &[f64],
    obj: &Transported,
    steps: usize,
) -> Result<Transported> {
    let dx: Vec<f64> = b.iter().zip(a).map(|(p, q)| p - q).collect();
    let h = 1.0 / steps as f64;
    let mut y = obj.clone();
    for s in 0..steps {
        let t = s as f64 * h;
        let k1 = rhs(chart, rep, &lerp(a, b, t), &dx, &y)?;
        let k2 = rhs(chart, rep, &lerp(a, b, t + 0.5 * h), &dx, &axpy(&y, 0.5 * h, &k1))?;
        let k3 = rhs(chart, rep, &lerp(a, b, t + 0.5 * h), &dx, &axpy(&y, 0.5 * h, &k2))?;
        let k4 = rhs(chart, rep, &lerp(a, b, t + h), &dx, &axpy(&y, h, &k3))?;
        let y1 = axpy(&y, h / 6.0, &k1);
        let y2 = axpy(&y1, h / 3.0, &k2);
        let y3 = axpy(&y2, h / 3.0, &k3);
        y = axpy(&y3, h / 6.0, &k4);
    }
    Ok(y)
}

/// Parallel transport along a polyline with classical RK4, doubling the step
/// count per segment until successive results agree to `1e-10`.
pub fn parallel_transport(
    chart: &MetricChart,
    rep: Option<&CliffordRep>,
    path: &[Vec<f64>],
    object: Transported,
) -> Result<Transported> {
    let mut y = object;
    for w in path.windows(2) {
        if !chart.contains(&w[0]) || !chart.contains(&w[1]) {
            return Err(Error::OutsideDomain);
        }
        let mut steps = 8;
        let mut prev = rk4_segment(chart, rep, &w[0], &w[1], &y, steps)?;
        loop {
            steps *= 2;
            let next = rk4_segment(chart, rep, &w[0], &w[1], &y, steps)?;
            let d = distance(&prev, &next);
            let size = match &next {
                Transported::Vector(v) => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
                Transported::Spinor(s) => spinor_norm(s),
            };
            prev = next;
            if d <= 1e-10 * (1.0 + size) {
                break;
            }
            if steps > 1 << 12 {
                return Err(Error::StepFailure(format!("no convergence on segment (change {d:e})")));
            }
        }
        y = prev;
    }
    Ok(y)
}
