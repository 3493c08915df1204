use super::chart::{MetricChart, VectorFn};
use super::curvature::{curvature_pack, local_jets, t2, T2};
use crate::error::Result;
use crate::jet::Jet;

/// Max over `points` of the trace `g^{pq} g^{rs} R_{ij p r} R_{q s kl}`.
pub fn pp_curvature_check(chart: &MetricChart, points: &[Vec<f64>]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for x in points {
        let cp = curvature_pack(chart, x)?;
        let n = cp.dim();
        let gi = &cp.inverse_metric;
        let r = &cp.riemann;
        // raise the last two slots of the first factor
        let mut up = vec![vec![t2(n); n]; n];
        for i in 0..n {
            for j in 0..n {
                for q in 0..n {
                    for s in 0..n {
                        let mut v = 0.0;
                        for p in 0..n {
                            for rr in 0..n {
                                v += gi[p][q] * gi[rr][s] * r[i][j][p][rr];
                            }
                        }
                        up[i][j][q][s] = v;
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut v = 0.0;
                        for q in 0..n {
                            for s in 0..n {
                                v += up[i][j][q][s] * r[q][s][k][l];
                            }
                        }
                        worst = worst.max(v.abs());
                    }
                }
            }
        }
    }
    Ok(worst)
}

fn vector_jets(v: &VectorFn, x: &[f64], order: usize) -> Vec<Jet> {
    v(&Jet::seed(x, order))
}

/// Euclidean norm of the coordinate components of `dθ ∧ θ`, `θ = g(V, ·)`.
pub fn twist_measure(chart: &MetricChart, v: &VectorFn, x: &[f64]) -> Result<f64> {
    let n = chart.dim();
    let g = chart.metric_jets(x, 1)?;
    let vv = vector_jets(v, x, 1);
    let theta: Vec<Jet> = (0..n)
        .map(|j| {
            let mut s = g[0][0].lift(0.0);
            for k in 0..n {
                s += &g[j][k] * &vv[k];
            }
            s
        })
        .collect();
    let th0: Vec<f64> = theta.iter().map(Jet::value).collect();
    let mut dth = t2(n);
    for i in 0..n {
        for j in 0..n {
            dth[i][j] = theta[j].d1(i) - theta[i].d1(j);
        }
    }
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let c = dth[i][j] * th0[k] + dth[j][k] * th0[i] + dth[k][i] * th0[j];
                s += c * c;
            }
        }
    }
    Ok(s.sqrt())
}

/// `(L_V g)_{ij} = V^k ∂_k g_{ij} + g_{kj} ∂_i V^k + g_{ik} ∂_j V^k`.
pub fn lie_derivative_metric(chart: &MetricChart, v: &VectorFn, x: &[f64]) -> Result<T2> {
    let n = chart.dim();
    let g = chart.metric_jets(x, 1)?;
    let vv = vector_jets(v, x, 1);
    let mut out = t2(n);
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for k in 0..n {
                s += vv[k].value() * g[i][j].d1(k) + g[k][j].value() * vv[k].d1(i) + g[i][k].value() * vv[k].d1(j);
            }
            out[i][j] = s;
        }
    }
    Ok(out)
}

/// Largest component of `L_V g`.
pub fn killing_residual(chart: &MetricChart, v: &VectorFn, x: &[f64]) -> Result<f64> {
    let l = lie_derivative_metric(chart, v, x)?;
    Ok(super::curvature::max_abs2(&l))
}

/// Largest component of the trace-free part of `L_V g`.
pub fn conformal_killing_residual(chart: &MetricChart, v: &VectorFn, x: &[f64]) -> Result<f64> {
    let l = lie_derivative_metric(chart, v, x)?;
    let n = chart.dim();
    let lj = local_jets(chart, x, 1)?;
    let mut tr = 0.0;
    for i in 0..n {
        for j in 0..n {
            tr += lj.ginv[i][j].value() * l[i][j];
        }
    }
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((l[i][j] - tr / n as f64 * lj.g[i][j].value()).abs());
        }
    }
    Ok(worst)
}

/// `∇_i V^k` at `x`, stored `[i][k]`.
pub fn nabla_vector(chart: &MetricChart, v: &VectorFn, x: &[f64]) -> Result<T2> {
    let n = chart.dim();
    let lj = local_jets(chart, x, 1)?;
    let vv = vector_jets(v, x, 1);
    let mut out = t2(n);
    for i in 0..n {
        for k in 0..n {
            let mut s = vv[k].d1(i);
            for j in 0..n {
                s += lj.gamma[k][i][j].value() * vv[j].value();
            }
            out[i][k] = s;
        }
    }
    Ok(out)
}

/// Divergence `∇_i V^i`.
pub fn divergence(chart: &MetricChart, v: &VectorFn, x: &[f64]) -> Result<f64> {
    let nv = nabla_vector(chart, v, x)?;
    Ok((0..chart.dim()).map(|i| nv[i][i]).sum())
}
