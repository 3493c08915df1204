use std::sync::Arc;

use crate::error::Result;
use crate::geometry::chart::VectorFn;
use crate::jet::Jet;
use crate::report::IdentityReport;

/// Strictly pseudoconvex CR structure of the Heisenberg group on `(x, y, u)`:
/// contact form `θ = du + x dy − y dx`, horizontal frame `X = ∂_x + y∂_u`,
/// `Y = ∂_y − x∂_u = JX`, Reeb field `T = ∂_u`.
#[derive(Clone)]
pub struct CRHeisenberg {
    /// Components of `θ`.
    pub theta: VectorFn,
    pub reeb: VectorFn,
    pub x: VectorFn,
    pub y: VectorFn,
}

impl Default for CRHeisenberg {
    fn default() -> Self {
        CRHeisenberg {
            theta: Arc::new(|v: &[Jet]| vec![-&v[1], v[0].clone(), v[0].lift(1.0)]),
            reeb: Arc::new(|v: &[Jet]| vec![v[0].lift(0.0), v[0].lift(0.0), v[0].lift(1.0)]),
            x: Arc::new(|v: &[Jet]| vec![v[0].lift(1.0), v[0].lift(0.0), v[1].clone()]),
            y: Arc::new(|v: &[Jet]| vec![v[0].lift(0.0), v[0].lift(1.0), -&v[0]]),
        }
    }
}

fn vals(v: &[Jet]) -> Vec<f64> {
    v.iter().map(Jet::value).collect()
}

fn pair(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

fn bracket(a: &[Jet], b: &[Jet]) -> Vec<f64> {
    (0..3)
        .map(|k| {
            (0..3)
                .map(|i| a[i].value() * b[k].d1(i) - b[i].value() * a[k].d1(i))
                .sum()
        })
        .collect()
}

fn two_form(d: &[Vec<f64>], a: &[f64], b: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            s += d[i][j] * a[i] * b[j];
        }
    }
    s
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max)
}

impl CRHeisenberg {
    /// Contact, Levi-form and flat Tanaka–Webster conditions at points of `(x, y, u)`.
    ///
    /// The Tanaka–Webster connection is the one making `X, Y, T` parallel; the
    /// checks are metric compatibility of `g_θ`, `Tor(X,Y) = L_θ(JX,Y) T` and
    /// vanishing pseudohermitian torsion `Tor(T, ·)` on `H`.
    pub fn report(&self, points: &[Vec<f64>], tol: f64) -> Result<IdentityReport> {
        let mut theta_t: f64 = 0.0;
        let mut t_d: f64 = 0.0;
        let mut horiz: f64 = 0.0;
        let mut levi_min = f64::INFINITY;
        let mut levi_sym: f64 = 0.0;
        let mut metric_var: f64 = 0.0;
        let mut tor_xy: f64 = 0.0;
        let mut tor_t: f64 = 0.0;
        let mut first: Option<[f64; 3]> = None;
        for p in points {
            let xs = Jet::seed(p, 1);
            let th = (self.theta)(&xs);
            let t = (self.reeb)(&xs);
            let x = (self.x)(&xs);
            let y = (self.y)(&xs);
            let th0 = vals(&th);
            let (t0, x0, y0) = (vals(&t), vals(&x), vals(&y));
            let d: Vec<Vec<f64>> = (0..3)
                .map(|i| (0..3).map(|j| th[j].d1(i) - th[i].d1(j)).collect())
                .collect();
            theta_t = theta_t.max((pair(&th0, &t0) - 1.0).abs());
            for v in [&x0, &y0] {
                t_d = t_d.max(two_form(&d, &t0, v).abs());
            }
            horiz = horiz.max(pair(&th0, &x0).abs()).max(pair(&th0, &y0).abs());
            // L_θ(A, B) = dθ(A, JB) with JX = Y, JY = −X
            let neg_x: Vec<f64> = x0.iter().map(|c| -c).collect();
            let lxx = two_form(&d, &x0, &y0);
            let lyy = two_form(&d, &y0, &neg_x);
            let lxy = two_form(&d, &x0, &neg_x);
            let lyx = two_form(&d, &y0, &y0);
            levi_sym = levi_sym.max((lxy - lyx).abs());
            let tr = lxx + lyy;
            let det = lxx * lyy - lxy * lyx;
            let disc = (tr * tr / 4.0 - det).max(0.0).sqrt();
            levi_min = levi_min.min(tr / 2.0 - disc);
            let cur = [lxx, lyy, lxy];
            match first {
                None => first = Some(cur),
                Some(f) => metric_var = metric_var.max(dist(&f, &cur)),
            }
            // parallel frame: Tor(A, B) = −[A, B]
            let txy: Vec<f64> = bracket(&x, &y).iter().map(|c| -c).collect();
            let expect: Vec<f64> = t0.iter().map(|c| c * lyy).collect();
            // L_θ(JX, Y) = L_θ(Y, Y)
            tor_xy = tor_xy.max(dist(&txy, &expect));
            for v in [&x, &y] {
                tor_t = tor_t.max(bracket(&t, v).iter().fold(0.0f64, |m, c| m.max(c.abs())));
            }
        }
        let mut out = IdentityReport::new(tol);
        out.push("θ(T) = 1", theta_t);
        out.push("T⌟dθ = 0", t_d);
        out.push("θ(X) = θ(Y) = 0", horiz);
        out.push("L_θ symmetric", levi_sym);
        out.push_flag("L_θ positive definite", levi_min > 0.0);
        out.push("∇g_θ = 0", metric_var);
        out.push("Tor(X,Y) = L_θ(JX,Y) T", tor_xy);
        out.push("Tor(T,·) = 0 on H", tor_t);
        Ok(out)
    }
}
