use super::chart::MetricChart;
use crate::error::{Error, Result};
use crate::jet::{Jet, JetMatrix};

/// Orthonormal frame at one point: `e[a][i]` is the `i`-th coordinate
/// component of `e_a`, stored as jets so frame derivatives are available.
#[derive(Clone, Debug)]
pub struct Frame {
    pub e: JetMatrix,
    pub signature: Vec<f64>,
}

impl Frame {
    /// Coordinate components of `e_a` at the base point.
    pub fn vector(&self, a: usize) -> Vec<f64> {
        self.e[a].iter().map(Jet::value).collect()
    }

    /// Matrix `E[i][a]` whose columns are the frame vectors.
    pub fn columns(&self) -> Vec<Vec<f64>> {
        let n = self.e.len();
        (0..n).map(|i| (0..n).map(|a| self.e[a][i].value()).collect()).collect()
    }

    /// Coordinate components of `Σ c_a e_a`.
    pub fn to_coords(&self, c: &[f64]) -> Vec<f64> {
        let n = self.e.len();
        (0..n)
            .map(|i| (0..n).map(|a| c[a] * self.e[a][i].value()).sum())
            .collect()
    }

    /// Frame components of a coordinate vector, `c_a = η_a g(v, e_a)`.
    pub fn from_coords(&self, g: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
        let n = self.e.len();
        (0..n)
            .map(|a| {
                let ea = self.vector(a);
                let mut s = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        s += g[i][j] * v[i] * ea[j];
                    }
                }
                self.signature[a] * s
            })
            .collect()
    }
}

fn gdot(g: &JetMatrix, a: &[Jet], b: &[Jet]) -> Jet {
    let n = g.len();
    let mut s = g[0][0].lift(0.0);
    for i in 0..n {
        for j in 0..n {
            s += &g[i][j] * &a[i] * &b[j];
        }
    }
    s
}

/// Signature-aware Gram–Schmidt of the chart's seed columns at fixed pivot order.
pub fn frame_at(chart: &MetricChart, x: &[f64], order: usize) -> Result<Frame> {
    let g = chart.metric_jets(x, order)?;
    let xs = Jet::seed(x, order);
    let seed = chart.seed_jets(&xs);
    gram_schmidt(&g, seed, &chart.signature)
}

pub fn gram_schmidt(g: &JetMatrix, seed: JetMatrix, signature: &[f64]) -> Result<Frame> {
    let n = g.len();
    let scale = g.iter().flatten().fold(0.0f64, |m, v| m.max(v.value().abs())).max(1.0);
    let mut e: JetMatrix = Vec::with_capacity(n);
    for (a, mut v) in seed.into_iter().enumerate() {
        let ord = g[0][0].order();
        v = v.into_iter().map(|c| c.truncate(ord)).collect();
        for (b, eb) in e.iter().enumerate() {
            let c = gdot(g, &v, eb) * signature[b];
            for i in 0..n {
                v[i] = &v[i] - &(&c * &eb[i]);
            }
        }
        let nrm2 = gdot(g, &v, &v);
        let val = nrm2.value();
        if val.abs() < 1e-12 * scale || val.signum() != signature[a].signum() {
            return Err(Error::FrameBreakdown(a));
        }
        let inv = (&nrm2 * signature[a]).sqrt().recip();
        e.push(v.iter().map(|c| c * &inv).collect());
    }
    Ok(Frame {
        e,
        signature: signature.to_vec(),
    })
}

/// The chart's deterministic orthonormal frame, validated on a region.
#[derive(Clone, Debug)]
pub struct FrameField {
    pub chart: MetricChart,
}

impl FrameField {
    pub fn at(&self, x: &[f64], order: usize) -> Result<Frame> {
        frame_at(&self.chart, x, order)
    }
}

/// Largest deviation of `g(e_a, e_b)` from `η_ab` at a point.
pub fn orthonormality_residual(chart: &MetricChart, x: &[f64]) -> Result<f64> {
    let f = frame_at(chart, x, 0)?;
    let g = chart.metric_values(x);
    let n = chart.dim();
    let mut worst: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            let ea = f.vector(a);
            let eb = f.vector(b);
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    s += g[i][j] * ea[i] * eb[j];
                }
            }
            let target = if a == b { f.signature[a] } else { 0.0 };
            worst = worst.max((s - target).abs());
        }
    }
    Ok(worst)
}

/// Build the frame field and verify orthonormality to `1e-9` on `region`.
pub fn orthonormal_frame(chart: &MetricChart, region: &[Vec<f64>]) -> Result<FrameField> {
    for x in region {
        let r = orthonormality_residual(chart, x)?;
        if r > 1e-9 {
            return Err(Error::Precondition(format!("frame orthonormality residual {r:e}")));
        }
    }
    Ok(FrameField { chart: chart.clone() })
}
