use serde::{Deserialize, Serialize};

use super::chart::MetricChart;
use crate::error::{Error, Result};
use crate::jet::{self, Jet, JetMatrix};

pub type T2 = Vec<Vec<f64>>;
pub type T3 = Vec<Vec<Vec<f64>>>;
pub type T4 = Vec<Vec<Vec<Vec<f64>>>>;
pub type T5 = Vec<Vec<Vec<Vec<Vec<f64>>>>>;
pub type JetT4 = Vec<Vec<Vec<Vec<Jet>>>>;

pub fn t2(n: usize) -> T2 {
    vec![vec![0.0; n]; n]
}

pub fn t3(n: usize) -> T3 {
    vec![t2(n); n]
}

pub fn t4(n: usize) -> T4 {
    vec![t3(n); n]
}

/// Metric, inverse metric and Christoffel symbols as jets at one point.
/// `gamma[k][i][j] = Γ^k_{ij}` carries one order less than `g`.
pub struct LocalJets {
    pub n: usize,
    pub g: JetMatrix,
    pub ginv: JetMatrix,
    pub gamma: Vec<Vec<Vec<Jet>>>,
}

impl LocalJets {
    pub fn order(&self) -> usize {
        self.g[0][0].order()
    }
}

/// Build local jets of the given order (at least 1).
pub fn local_jets(chart: &MetricChart, x: &[f64], order: usize) -> Result<LocalJets> {
    let g = chart.metric_jets(x, order)?;
    local_jets_from_metric(g)
}

pub fn local_jets_from_metric(g: JetMatrix) -> Result<LocalJets> {
    let n = g.len();
    assert!(g[0][0].order() >= 1, "Christoffel symbols need first derivatives");
    let ginv = jet::invert(&g).ok_or(Error::SingularMetric)?;
    let dg: Vec<JetMatrix> = (0..n)
        .map(|k| g.iter().map(|r| r.iter().map(|v| v.diff(k)).collect()).collect())
        .collect();
    let lower = g[0][0].truncate(g[0][0].order() - 1);
    let ginv_low: JetMatrix = ginv
        .iter()
        .map(|r| r.iter().map(|v| v.truncate(lower.order())).collect())
        .collect();
    let mut first = vec![vec![vec![lower.lift(0.0); n]; n]; n];
    for (l, fl) in first.iter_mut().enumerate() {
        for (i, fi) in fl.iter_mut().enumerate() {
            for (j, v) in fi.iter_mut().enumerate() {
                *v = (&dg[i][l][j] + &dg[j][l][i] - &dg[l][i][j]) * 0.5;
            }
        }
    }
    let mut gamma = vec![vec![vec![lower.lift(0.0); n]; n]; n];
    for (k, gk) in gamma.iter_mut().enumerate() {
        for (i, gki) in gk.iter_mut().enumerate() {
            for j in i..n {
                let mut s = lower.lift(0.0);
                for l in 0..n {
                    s += &ginv_low[k][l] * &first[l][i][j];
                }
                gki[j] = s;
            }
        }
        for i in 0..n {
            for j in 0..i {
                gk[i][j] = gk[j][i].clone();
            }
        }
    }
    Ok(LocalJets { n, g, ginv, gamma })
}

/// Christoffel symbols `Γ^k_{ij}` at `x`.
pub fn christoffel(chart: &MetricChart, x: &[f64]) -> Result<T3> {
    let lj = local_jets(chart, x, 1)?;
    Ok(lj
        .gamma
        .iter()
        .map(|a| a.iter().map(|b| b.iter().map(Jet::value).collect()).collect())
        .collect())
}

/// Riemann tensor `R_{ijkl} = g(R(∂_i,∂_j)∂_k, ∂_l)` as jets of order
/// `order(g) - 2`, together with `R(∂_i,∂_j)∂_k = Rup[i][j][k][l] ∂_l`.
pub fn riemann_jets(lj: &LocalJets) -> (JetT4, JetT4) {
    let n = lj.n;
    let ord = lj.order() - 2;
    let gam: Vec<Vec<Vec<Jet>>> = lj
        .gamma
        .iter()
        .map(|a| a.iter().map(|b| b.iter().map(|v| v.truncate(ord)).collect()).collect())
        .collect();
    let dgam: Vec<Vec<Vec<Vec<Jet>>>> = (0..n)
        .map(|m| {
            lj.gamma
                .iter()
                .map(|a| a.iter().map(|b| b.iter().map(|v| v.diff(m)).collect()).collect())
                .collect()
        })
        .collect();
    let zero = gam[0][0][0].lift(0.0);
    let mut rup = vec![vec![vec![vec![zero.clone(); n]; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            if j == i {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    let mut s = &dgam[i][l][j][k] - &dgam[j][l][i][k];
                    for m in 0..n {
                        s += &gam[m][j][k] * &gam[l][i][m];
                        s -= &gam[m][i][k] * &gam[l][j][m];
                    }
                    rup[i][j][k][l] = s;
                }
            }
        }
    }
    let g: Vec<Vec<Jet>> =
        lj.g.iter()
            .map(|r| r.iter().map(|v| v.truncate(ord)).collect())
            .collect();
    let mut low = vec![vec![vec![vec![zero.clone(); n]; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut s = zero.clone();
                    for m in 0..n {
                        s += &rup[i][j][k][m] * &g[m][l];
                    }
                    low[i][j][k][l] = s;
                }
            }
        }
    }
    (low, rup)
}

/// Kulkarni–Nomizu product
/// `(h⋆k)_{abcd} = h_ac k_bd + h_bd k_ac − h_ad k_bc − h_bc k_ad`.
pub fn kulkarni_nomizu(h: &T2, k: &T2) -> T4 {
    let n = h.len();
    let mut out = t4(n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    out[a][b][c][d] = h[a][c] * k[b][d] + h[b][d] * k[a][c] - h[a][d] * k[b][c] - h[b][c] * k[a][d];
                }
            }
        }
    }
    out
}

/// Curvature quantities at one point, all with coordinate indices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurvaturePack {
    pub point: Vec<f64>,
    pub metric: T2,
    pub inverse_metric: T2,
    pub christoffel: T3,
    pub riemann: T4,
    pub ricci: T2,
    pub scalar: f64,
    /// `K_{ij}` with `K = (1/(n−2))(R/(2(n−1)) g − Ric)`.
    pub rho: T2,
    /// `W = Riem − g⋆K`.
    pub weyl: T4,
    /// `C_{ijk} = (∇_i K)_{jk} − (∇_j K)_{ik}`.
    pub cotton: T3,
    /// `(∇_m R)_{ijkl}` stored as `[m][i][j][k][l]`.
    pub nabla_riemann: T5,
}

fn vals2(m: &[Vec<Jet>]) -> T2 {
    m.iter().map(|r| r.iter().map(Jet::value).collect()).collect()
}

/// Full curvature stack at `x`.
pub fn curvature_pack(chart: &MetricChart, x: &[f64]) -> Result<CurvaturePack> {
    let lj = local_jets(chart, x, 3)?;
    Ok(pack_from_jets(&lj, x))
}

pub fn pack_from_jets(lj: &LocalJets, x: &[f64]) -> CurvaturePack {
    let n = lj.n;
    let (riem, rup) = riemann_jets(lj);
    let zero = riem[0][0][0][0].lift(0.0);
    let mut ric = vec![vec![zero.clone(); n]; n];
    for (j, row) in ric.iter_mut().enumerate() {
        for (k, v) in row.iter_mut().enumerate() {
            let mut s = zero.clone();
            for (i, ri) in rup.iter().enumerate() {
                s += &ri[j][k][i];
            }
            *v = s;
        }
    }
    let g1: Vec<Vec<Jet>> = lj.g.iter().map(|r| r.iter().map(|v| v.truncate(1)).collect()).collect();
    let gi1: Vec<Vec<Jet>> = lj
        .ginv
        .iter()
        .map(|r| r.iter().map(|v| v.truncate(1)).collect())
        .collect();
    let mut scal = zero.clone();
    for j in 0..n {
        for k in 0..n {
            scal += &gi1[j][k] * &ric[j][k];
        }
    }
    let nf = n as f64;
    let mut rho = vec![vec![zero.clone(); n]; n];
    if n > 2 {
        for j in 0..n {
            for k in 0..n {
                rho[j][k] = (&scal * &g1[j][k] * (1.0 / (2.0 * (nf - 1.0))) - &ric[j][k]) * (1.0 / (nf - 2.0));
            }
        }
    }
    let gam0: T3 = lj
        .gamma
        .iter()
        .map(|a| a.iter().map(|b| b.iter().map(Jet::value).collect()).collect())
        .collect();
    let metric = vals2(&lj.g);
    let rho0 = vals2(&rho);
    let riem0: T4 = riem.iter().map(|a| a.iter().map(|b| vals2(b)).collect()).collect();
    let weyl = if n > 2 {
        let gk = kulkarni_nomizu(&metric, &rho0);
        let mut w = riem0.clone();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        w[a][b][c][d] -= gk[a][b][c][d];
                    }
                }
            }
        }
        w
    } else {
        t4(n)
    };
    // (∇_i K)_{jk}
    let mut nk = t3(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut s = rho[j][k].d1(i);
                for m in 0..n {
                    s -= gam0[m][i][j] * rho0[m][k] + gam0[m][i][k] * rho0[j][m];
                }
                nk[i][j][k] = s;
            }
        }
    }
    let mut cotton = t3(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                cotton[i][j][k] = nk[i][j][k] - nk[j][i][k];
            }
        }
    }
    let mut nr = vec![t4(n); n];
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut s = riem[i][j][k][l].d1(m);
                        for p in 0..n {
                            s -= gam0[p][m][i] * riem0[p][j][k][l]
                                + gam0[p][m][j] * riem0[i][p][k][l]
                                + gam0[p][m][k] * riem0[i][j][p][l]
                                + gam0[p][m][l] * riem0[i][j][k][p];
                        }
                        nr[m][i][j][k][l] = s;
                    }
                }
            }
        }
    }
    CurvaturePack {
        point: x.to_vec(),
        inverse_metric: vals2(&lj.ginv),
        metric,
        christoffel: gam0,
        riemann: riem0,
        ricci: vals2(&ric),
        scalar: scal.value(),
        rho: rho0,
        weyl,
        cotton,
        nabla_riemann: nr,
    }
}

/// Curvature without derivatives of curvature (cheaper: second-order jets).
pub fn ricci_scalar_at(chart: &MetricChart, x: &[f64]) -> Result<(T2, f64)> {
    let lj = local_jets(chart, x, 2)?;
    let n = lj.n;
    let (_, rup) = riemann_jets(&lj);
    let mut ric = t2(n);
    for (j, row) in ric.iter_mut().enumerate() {
        for (k, v) in row.iter_mut().enumerate() {
            *v = (0..n).map(|i| rup[i][j][k][i].value()).sum();
        }
    }
    let gi = vals2(&lj.ginv);
    let mut s = 0.0;
    for j in 0..n {
        for k in 0..n {
            s += gi[j][k] * ric[j][k];
        }
    }
    Ok((ric, s))
}

impl CurvaturePack {
    pub fn dim(&self) -> usize {
        self.metric.len()
    }

    /// Largest violation of the algebraic Riemann symmetries.
    pub fn riemann_symmetry_residual(&self) -> f64 {
        let r = &self.riemann;
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        worst = worst
                            .max((r[a][b][c][d] + r[b][a][c][d]).abs())
                            .max((r[a][b][c][d] + r[a][b][d][c]).abs())
                            .max((r[a][b][c][d] - r[c][d][a][b]).abs())
                            .max((r[a][b][c][d] + r[b][c][a][d] + r[c][a][b][d]).abs());
                    }
                }
            }
        }
        worst
    }

    /// Largest single contraction of the Weyl tensor.
    pub fn weyl_trace_residual(&self) -> f64 {
        let n = self.dim();
        let gi = &self.inverse_metric;
        let w = &self.weyl;
        let mut worst: f64 = 0.0;
        for x in 0..n {
            for y in 0..n {
                let mut t = [0.0f64; 6];
                for p in 0..n {
                    for q in 0..n {
                        let h = gi[p][q];
                        if h == 0.0 {
                            continue;
                        }
                        t[0] += h * w[p][q][x][y];
                        t[1] += h * w[p][x][q][y];
                        t[2] += h * w[p][x][y][q];
                        t[3] += h * w[x][p][q][y];
                        t[4] += h * w[x][p][y][q];
                        t[5] += h * w[x][y][p][q];
                    }
                }
                worst = t.iter().fold(worst, |m, v| m.max(v.abs()));
            }
        }
        worst
    }

    /// Largest component of `C_{ijk} + C_{jik}`.
    pub fn cotton_antisymmetry_residual(&self) -> f64 {
        let n = self.dim();
        let c = &self.cotton;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    worst = worst.max((c[i][j][k] + c[j][i][k]).abs());
                }
            }
        }
        worst
    }

    /// Largest component of the cyclic sum `∇_m R_{ijkl} + ∇_i R_{jmkl} + ∇_j R_{mikl}`.
    pub fn second_bianchi_residual(&self) -> f64 {
        let n = self.dim();
        let r = &self.nabla_riemann;
        let mut worst: f64 = 0.0;
        for m in 0..n {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        for l in 0..n {
                            let s = r[m][i][j][k][l] + r[i][j][m][k][l] + r[j][m][i][k][l];
                            worst = worst.max(s.abs());
                        }
                    }
                }
            }
        }
        worst
    }

    /// Largest component of `∇R`.
    pub fn nabla_riemann_norm(&self) -> f64 {
        max_abs5(&self.nabla_riemann)
    }

    /// Largest component of `Ric − (R/n) g`.
    pub fn einstein_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.ricci[i][j] - self.scalar / n as f64 * self.metric[i][j]).abs());
            }
        }
        worst
    }
}

pub fn max_abs2(t: &T2) -> f64 {
    t.iter().flatten().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn max_abs3(t: &T3) -> f64 {
    t.iter().flatten().flatten().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn max_abs4(t: &T4) -> f64 {
    t.iter().flatten().flatten().flatten().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn max_abs5(t: &T5) -> f64 {
    t.iter().map(max_abs4).fold(0.0, f64::max)
}
