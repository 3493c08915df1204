use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jet::{self, Jet, JetMatrix};

/// Metric components as a function of coordinate jets.
pub type MetricFn = Arc<dyn Fn(&[Jet]) -> JetMatrix + Send + Sync>;
/// Metric components from plain coordinates (finite-difference charts).
pub type PlainMetricFn = Arc<dyn Fn(&[f64]) -> Vec<Vec<f64>> + Send + Sync>;
/// Scalar function of coordinate jets.
pub type ScalarFn = Arc<dyn Fn(&[Jet]) -> Jet + Send + Sync>;
/// Vector field: coordinate components as a function of coordinate jets.
pub type VectorFn = Arc<dyn Fn(&[Jet]) -> Vec<Jet> + Send + Sync>;
/// Frame seed: columns `v_a` as coordinate components, in pivot order.
pub type SeedFn = Arc<dyn Fn(&[Jet]) -> JetMatrix + Send + Sync>;

/// How metric derivatives are obtained.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DerivativeMode {
    /// Exact derivatives by Taylor-jet propagation through the metric closure.
    Analytic,
    /// Central differences with one Richardson level; `step` scales the
    /// first-derivative stencil, higher orders use wider stencils.
    FiniteDifference { step: f64 },
}

impl DerivativeMode {
    pub fn fd() -> Self {
        DerivativeMode::FiniteDifference { step: 1e-4 }
    }
}

#[derive(Clone)]
enum Source {
    Jet(MetricFn),
    Plain(PlainMetricFn),
}

/// A coordinate box with a metric of fixed signature.
#[derive(Clone)]
pub struct MetricChart {
    pub name: String,
    pub coords: Vec<String>,
    pub domain: Vec<(f64, f64)>,
    /// Frame signature `η_aa` in pivot order, e.g. `(-1, 1, …, 1)`.
    pub signature: Vec<f64>,
    pub mode: DerivativeMode,
    source: Source,
    seed: Option<SeedFn>,
}

impl std::fmt::Debug for MetricChart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MetricChart")
            .field("name", &self.name)
            .field("coords", &self.coords)
            .field("domain", &self.domain)
            .field("signature", &self.signature)
            .field("mode", &self.mode)
            .finish()
    }
}

fn lorentz_signature(n: usize) -> Vec<f64> {
    let mut s = vec![1.0; n];
    s[0] = -1.0;
    s
}

impl MetricChart {
    /// Lorentzian chart with analytic derivatives.
    pub fn new(
        name: impl Into<String>,
        coords: &[&str],
        domain: Vec<(f64, f64)>,
        metric: impl Fn(&[Jet]) -> JetMatrix + Send + Sync + 'static,
    ) -> Self {
        let n = coords.len();
        assert_eq!(domain.len(), n, "domain and coordinate count differ");
        MetricChart {
            name: name.into(),
            coords: coords.iter().map(|s| s.to_string()).collect(),
            domain,
            signature: lorentz_signature(n),
            mode: DerivativeMode::Analytic,
            source: Source::Jet(Arc::new(metric)),
            seed: None,
        }
    }

    /// Lorentzian chart from plain component values; derivatives by finite
    /// differences only.
    pub fn from_values(
        name: impl Into<String>,
        coords: &[&str],
        domain: Vec<(f64, f64)>,
        metric: impl Fn(&[f64]) -> Vec<Vec<f64>> + Send + Sync + 'static,
    ) -> Self {
        let n = coords.len();
        MetricChart {
            name: name.into(),
            coords: coords.iter().map(|s| s.to_string()).collect(),
            domain,
            signature: lorentz_signature(n),
            mode: DerivativeMode::fd(),
            source: Source::Plain(Arc::new(metric)),
            seed: None,
        }
    }

    pub fn with_signature(mut self, signature: Vec<f64>) -> Self {
        assert_eq!(signature.len(), self.dim());
        self.signature = signature;
        self
    }

    pub fn with_seed(mut self, seed: impl Fn(&[Jet]) -> JetMatrix + Send + Sync + 'static) -> Self {
        self.seed = Some(Arc::new(seed));
        self
    }

    /// Same chart evaluated through finite differences.
    pub fn with_mode(mut self, mode: DerivativeMode) -> Self {
        if matches!(self.source, Source::Plain(_)) && mode == DerivativeMode::Analytic {
            return self;
        }
        self.mode = mode;
        self
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Number of negative frame directions.
    pub fn negative_count(&self) -> usize {
        self.signature.iter().filter(|&&s| s < 0.0).count()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim() && x.iter().zip(&self.domain).all(|(v, (lo, hi))| v >= lo && v <= hi)
    }

    /// Center of the coordinate box.
    pub fn center(&self) -> Vec<f64> {
        self.domain.iter().map(|(lo, hi)| 0.5 * (lo + hi)).collect()
    }

    /// Metric components at a point.
    pub fn metric_values(&self, x: &[f64]) -> Vec<Vec<f64>> {
        match &self.source {
            Source::Plain(f) => f(x),
            Source::Jet(f) => jet::values(&f(&Jet::seed(x, 0))),
        }
    }

    /// Frame seed columns as jets (identity if none was supplied).
    pub fn seed_jets(&self, xs: &[Jet]) -> JetMatrix {
        match &self.seed {
            Some(s) => s(xs),
            None => {
                let n = self.dim();
                (0..n)
                    .map(|a| (0..n).map(|i| xs[0].lift(if a == i { 1.0 } else { 0.0 })).collect())
                    .collect()
            }
        }
    }

    /// Metric as jets of the given order at `x`, using the chart's mode.
    pub fn metric_jets(&self, x: &[f64], order: usize) -> Result<JetMatrix> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        match (&self.source, self.mode) {
            (Source::Jet(f), DerivativeMode::Analytic) => Ok(f(&Jet::seed(x, order))),
            (_, DerivativeMode::FiniteDifference { step }) => Ok(self.fd_jets(x, order, step)),
            (Source::Plain(_), DerivativeMode::Analytic) => Ok(self.fd_jets(x, order, 1e-4)),
        }
    }

    /// Metric closure applied to arbitrary jets (analytic charts only).
    pub fn metric_on(&self, xs: &[Jet]) -> Option<JetMatrix> {
        match &self.source {
            Source::Jet(f) => Some(f(xs)),
            Source::Plain(_) => None,
        }
    }

    fn fd_jets(&self, x: &[f64], order: usize, step: f64) -> JetMatrix {
        let n = self.dim();
        let tab = jet::table(n, order);
        let monos = tab.monomials().to_vec();
        let mut coeffs = vec![vec![vec![0.0; tab.len()]; n]; n];
        for (k, mono) in monos.iter().enumerate() {
            let deg: usize = mono.iter().map(|&e| e as usize).sum();
            let d = if deg == 0 {
                self.metric_values(x)
            } else {
                let base = match deg {
                    1 => step,
                    2 => step * 10.0,
                    _ => step * 50.0,
                };
                let h: Vec<f64> = x.iter().map(|v| base * (1.0 + v.abs())).collect();
                let coarse = self.stencil(x, mono, &h);
                let half: Vec<f64> = h.iter().map(|v| 0.5 * v).collect();
                let fine = self.stencil(x, mono, &half);
                let mut out = vec![vec![0.0; n]; n];
                for i in 0..n {
                    for j in 0..n {
                        out[i][j] = (4.0 * fine[i][j] - coarse[i][j]) / 3.0;
                    }
                }
                out
            };
            let fact: f64 = mono
                .iter()
                .map(|&e| (1..=e as usize).product::<usize>() as f64)
                .product();
            for i in 0..n {
                for j in 0..n {
                    coeffs[i][j][k] = d[i][j] / fact;
                }
            }
        }
        coeffs
            .into_iter()
            .map(|row| row.into_iter().map(|c| Jet::from_coefficients(&tab, c)).collect())
            .collect()
    }

    /// Tensor-product central stencil for `∂^mono g` with per-axis steps.
    fn stencil(&self, x: &[f64], mono: &[u8], h: &[f64]) -> Vec<Vec<f64>> {
        let n = self.dim();
        let mut terms: Vec<(Vec<f64>, f64)> = vec![(x.to_vec(), 1.0)];
        for (axis, &e) in mono.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let st = stencil_1d(e);
            let scale = h[axis].powi(e as i32);
            let mut next = Vec::with_capacity(terms.len() * st.len());
            for (pt, w) in &terms {
                for &(off, sw) in st {
                    let mut p = pt.clone();
                    p[axis] += off * h[axis];
                    next.push((p, w * sw / scale));
                }
            }
            terms = next;
        }
        let mut out = vec![vec![0.0; n]; n];
        for (pt, w) in terms {
            let g = self.metric_values(&pt);
            for i in 0..n {
                for j in 0..n {
                    out[i][j] += w * g[i][j];
                }
            }
        }
        out
    }

    /// `e^{2σ} g` with the same coordinates and frame seed.
    pub fn conformal_rescale(&self, sigma: ScalarFn) -> MetricChart {
        let mut out = self.clone();
        out.name = format!("{} (conformally rescaled)", self.name);
        let seed = self.seed.clone();
        match &self.source {
            Source::Jet(f) => {
                let f = f.clone();
                let s = sigma.clone();
                out.source = Source::Jet(Arc::new(move |xs: &[Jet]| {
                    let w = (s(xs) * 2.0).exp();
                    f(xs)
                        .into_iter()
                        .map(|r| r.into_iter().map(|v| &v * &w).collect())
                        .collect()
                }));
            }
            Source::Plain(f) => {
                let f = f.clone();
                let s = sigma.clone();
                out.source = Source::Plain(Arc::new(move |x: &[f64]| {
                    let w = (2.0 * s(&Jet::seed(x, 0)).value()).exp();
                    f(x).into_iter()
                        .map(|r| r.into_iter().map(|v| v * w).collect())
                        .collect()
                }));
            }
        }
        if let Some(seed) = seed {
            let s = sigma;
            out.seed = Some(Arc::new(move |xs: &[Jet]| {
                let w = (-s(xs)).exp();
                seed(xs)
                    .into_iter()
                    .map(|c| c.into_iter().map(|v| &v * &w).collect())
                    .collect()
            }));
        }
        out
    }

    /// Interior lattice with `k` points along each of the first `min(n, 4)`
    /// coordinates; remaining coordinates sit at the box center.
    pub fn sample_grid(&self, k: usize) -> Vec<Vec<f64>> {
        let n = self.dim();
        let active = n.min(4);
        let center = self.center();
        let total = k.pow(active as u32);
        (0..total)
            .map(|mut idx| {
                let mut p = center.clone();
                for (axis, coord) in p.iter_mut().enumerate().take(active) {
                    let j = idx % k;
                    idx /= k;
                    let (lo, hi) = self.domain[axis];
                    *coord = lo + (hi - lo) * (j as f64 + 1.0) / (k as f64 + 1.0);
                }
                p
            })
            .collect()
    }
}

fn stencil_1d(order: u8) -> &'static [(f64, f64)] {
    match order {
        1 => &[(-1.0, -0.5), (1.0, 0.5)],
        2 => &[(-1.0, 1.0), (0.0, -2.0), (1.0, 1.0)],
        3 => &[(-2.0, -0.5), (-1.0, 1.0), (1.0, -1.0), (2.0, 0.5)],
        _ => panic!("finite-difference stencils are provided up to third order"),
    }
}

/// Constant jet matrix helper.
pub fn constant_matrix(like: &Jet, m: &[Vec<f64>]) -> JetMatrix {
    m.iter().map(|r| r.iter().map(|&v| like.lift(v)).collect()).collect()
}

/// Jet matrix `diag(d)`.
pub fn diagonal(like: &Jet, d: &[Jet]) -> JetMatrix {
    let n = d.len();
    let mut m = jet::zeros(like, n);
    for (i, v) in d.iter().enumerate() {
        m[i][i] = v.clone();
    }
    m
}
