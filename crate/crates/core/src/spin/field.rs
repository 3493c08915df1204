use std::sync::Arc;

use crate::clifford::{CliffordRep, Spinor, C64};

pub type SpinorFn = Arc<dyn Fn(&[f64]) -> Spinor + Send + Sync>;

/// Spinor field in the deterministic frame gauge of a chart.
#[derive(Clone)]
pub struct SpinorField {
    pub rep: Arc<CliffordRep>,
    pub gauge: String,
    f: SpinorFn,
    /// Relative step of the central differences used for coordinate derivatives.
    pub step: f64,
}

impl std::fmt::Debug for SpinorField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpinorField")
            .field("n", &self.rep.n)
            .field("gauge", &self.gauge)
            .finish()
    }
}

impl SpinorField {
    pub fn new(
        rep: Arc<CliffordRep>,
        gauge: impl Into<String>,
        f: impl Fn(&[f64]) -> Spinor + Send + Sync + 'static,
    ) -> Self {
        SpinorField {
            rep,
            gauge: gauge.into(),
            f: Arc::new(f),
            step: 1e-4,
        }
    }

    /// Constant-coefficient field.
    pub fn constant(rep: Arc<CliffordRep>, gauge: impl Into<String>, phi: Spinor) -> Self {
        SpinorField::new(rep, gauge, move |_| phi.clone())
    }

    pub fn eval(&self, x: &[f64]) -> Spinor {
        (self.f)(x)
    }

    /// Coordinate partials `∂_i φ` by central differences with one
    /// Richardson level.
    pub fn partials(&self, x: &[f64]) -> Vec<Spinor> {
        (0..x.len())
            .map(|i| {
                let h = self.step * (1.0 + x[i].abs());
                let d = |h: f64| {
                    let mut p = x.to_vec();
                    let mut m = x.to_vec();
                    p[i] += h;
                    m[i] -= h;
                    (self.eval(&p) - self.eval(&m)) / C64::new(2.0 * h, 0.0)
                };
                let coarse = d(h);
                let fine = d(0.5 * h);
                (fine * C64::new(4.0, 0.0) - coarse) / C64::new(3.0, 0.0)
            })
            .collect()
    }

    /// Pointwise product with a scalar function.
    pub fn scaled(&self, s: impl Fn(&[f64]) -> C64 + Send + Sync + 'static) -> SpinorField {
        let f = self.f.clone();
        SpinorField {
            rep: self.rep.clone(),
            gauge: self.gauge.clone(),
            f: Arc::new(move |x| f(x) * s(x)),
            step: self.step,
        }
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: C64, other: &SpinorField, b: C64) -> SpinorField {
        let f = self.f.clone();
        let g = other.f.clone();
        SpinorField {
            rep: self.rep.clone(),
            gauge: self.gauge.clone(),
            f: Arc::new(move |x| f(x) * a + g(x) * b),
            step: self.step,
        }
    }

    /// Same values under a different gauge tag.
    pub fn regauged(&self, gauge: impl Into<String>) -> SpinorField {
        let mut out = self.clone();
        out.gauge = gauge.into();
        out
    }

    /// Field defined from another closure on the same representation.
    pub fn derived(&self, f: impl Fn(&[f64]) -> Spinor + Send + Sync + 'static) -> SpinorField {
        SpinorField {
            rep: self.rep.clone(),
            gauge: self.gauge.clone(),
            f: Arc::new(f),
            step: self.step,
        }
    }
}
