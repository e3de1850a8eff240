//! Curvature quantities derived from a chart's closed forms.

use serde::Serialize;

use super::grid::Grid;
use super::{inner, inverse_metric, max_abs4, zero2, zero4, Chart, Point, Tensor2, Tensor3, Tensor4, COORD_NAMES};
use crate::error::{Error, Result};

/// Planes whose Gram determinant is below this are treated as degenerate.
pub const DEGENERATE_PLANE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Component {
    pub indices: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureReport {
    pub point: Point,
    pub riemann: Tensor4,
    /// Non-zero entries of `riemann`, labelled like `uxux`.
    pub components: Vec<Component>,
    pub ricci: Tensor2,
    pub scalar: f64,
    /// `max |∇_k R|` for `k = u, v, x`.
    pub nabla_r_norms: [f64; 3],
    pub symmetry_residual: f64,
}

/// `Ric_{jk} = g^{il} R_{ijkl}`.
pub fn ricci_from(g: &Tensor2, r: &Tensor4) -> Tensor2 {
    let gi = inverse_metric(g);
    let mut ric = zero2();
    for j in 0..3 {
        for k in 0..3 {
            let mut s = 0.0;
            for i in 0..3 {
                for l in 0..3 {
                    s += gi[i][l] * r[i][j][k][l];
                }
            }
            ric[j][k] = s;
        }
    }
    ric
}

pub fn scalar_from(g: &Tensor2, ric: &Tensor2) -> f64 {
    let gi = inverse_metric(g);
    (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .map(|(i, j)| gi[i][j] * ric[i][j])
        .sum()
}

pub fn ricci(chart: &dyn Chart, p: &Point) -> Result<Tensor2> {
    Ok(ricci_from(&chart.metric_at(p)?, &chart.riemann(p)?))
}

pub fn scalar_curvature(chart: &dyn Chart, p: &Point) -> Result<f64> {
    let g = chart.metric_at(p)?;
    Ok(scalar_from(&g, &ricci_from(&g, &chart.riemann(p)?)))
}

/// `(∇_k R)_{abcd} = ∂_k R_{abcd} − Γ^p_{ka} R_{pbcd} − … − Γ^p_{kd} R_{abcp}`.
pub fn nabla_riemann_from(gamma: &Tensor3, r: &Tensor4, dr: &[Tensor4; 3]) -> [Tensor4; 3] {
    let mut out = [zero4(); 3];
    for (k, slot) in out.iter_mut().enumerate() {
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        let mut s = dr[k][a][b][c][d];
                        for p in 0..3 {
                            s -= gamma[p][k][a] * r[p][b][c][d]
                                + gamma[p][k][b] * r[a][p][c][d]
                                + gamma[p][k][c] * r[a][b][p][d]
                                + gamma[p][k][d] * r[a][b][c][p];
                        }
                        slot[a][b][c][d] = s;
                    }
                }
            }
        }
    }
    out
}

pub fn nabla_riemann(chart: &dyn Chart, p: &Point) -> Result<[Tensor4; 3]> {
    Ok(nabla_riemann_from(
        &chart.christoffels(p)?,
        &chart.riemann(p)?,
        &chart.riemann_partials(p)?,
    ))
}

/// `max |∇_dir R|` over components.
pub fn covariant_r_derivative(chart: &dyn Chart, p: &Point, direction: &[f64; 3]) -> Result<f64> {
    Ok(max_abs4(&contract_direction(&nabla_riemann(chart, p)?, direction)))
}

pub(crate) fn contract_direction(nabla: &[Tensor4; 3], direction: &[f64; 3]) -> Tensor4 {
    let mut out = zero4();
    for (k, t) in nabla.iter().enumerate() {
        if direction[k] == 0.0 {
            continue;
        }
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        out[a][b][c][d] += direction[k] * t[a][b][c][d];
                    }
                }
            }
        }
    }
    out
}

/// Largest violation of antisymmetry in each pair, pair symmetry and the
/// first Bianchi identity.
pub fn symmetry_residual(r: &Tensor4) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let v = r[i][j][k][l];
                    worst = worst
                        .max((v + r[j][i][k][l]).abs())
                        .max((v + r[i][j][l][k]).abs())
                        .max((v - r[k][l][i][j]).abs())
                        .max((v + r[j][k][i][l] + r[k][i][j][l]).abs());
                }
            }
        }
    }
    worst
}

fn nonzero_components(r: &Tensor4) -> Vec<Component> {
    let mut out = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    if r[i][j][k][l] != 0.0 {
                        out.push(Component {
                            indices: [i, j, k, l].iter().map(|&n| COORD_NAMES[n]).collect(),
                            value: r[i][j][k][l],
                        });
                    }
                }
            }
        }
    }
    out
}

pub fn riemann_tensor(chart: &dyn Chart, p: &Point) -> Result<CurvatureReport> {
    let g = chart.metric_at(p)?;
    let r = chart.riemann(p)?;
    let ric = ricci_from(&g, &r);
    let nabla = nabla_riemann(chart, p)?;
    Ok(CurvatureReport {
        point: *p,
        components: nonzero_components(&r),
        scalar: scalar_from(&g, &ric),
        ricci: ric,
        nabla_r_norms: nabla.map(|t| max_abs4(&t)),
        symmetry_residual: symmetry_residual(&r),
        riemann: r,
    })
}

/// Largest `|R_{ijkl}|` over the grid; `None` if a grid point is outside
/// the chart's domain.
pub fn max_riemann_on(chart: &dyn Chart, grid: &Grid) -> Option<f64> {
    grid.points()
        .iter()
        .map(|p| chart.riemann(p).ok().map(|r| max_abs4(&r)))
        .try_fold(0.0f64, |m, v| v.map(|v| m.max(v)))
}

/// `max |R| < tol` on every grid point. Points outside the domain make the
/// check fail.
pub fn is_flat(chart: &dyn Chart, grid: &Grid, tol: f64) -> bool {
    matches!(max_riemann_on(chart, grid), Some(m) if m < tol)
}

/// `K = g(R(e1,e2)e2, e1) / (g11 g22 − g12²)`.
pub fn sectional_curvature(chart: &dyn Chart, p: &Point, e1: &[f64; 3], e2: &[f64; 3]) -> Result<f64> {
    let g = chart.metric_at(p)?;
    sectional_from(&g, &chart.riemann(p)?, e1, e2)
}

pub fn sectional_from(g: &Tensor2, r: &Tensor4, e1: &[f64; 3], e2: &[f64; 3]) -> Result<f64> {
    let q = inner(g, e1, e1) * inner(g, e2, e2) - inner(g, e1, e2).powi(2);
    if q.abs() < DEGENERATE_PLANE_TOL {
        return Err(Error::DegeneratePlane(q));
    }
    let mut num = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    num += r[i][j][k][l] * e1[i] * e2[j] * e2[k] * e1[l];
                }
            }
        }
    }
    Ok(num / q)
}
