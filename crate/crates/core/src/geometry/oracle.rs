//! Finite-difference ground truth for connection and curvature.
//!
//! Everything here is computed from `Chart::metric_at` alone, by nested
//! central differences with Richardson extrapolation, and shares no formula
//! with the closed forms it is used to check.

use super::{christoffels_from, lower_last, zero3, zero4, Chart, Point, Tensor3, Tensor4};
use crate::error::Result;

/// Step for first derivatives of the metric.
pub const METRIC_STEP: f64 = 1e-3;
/// Step for derivatives of the connection.
pub const CONNECTION_STEP: f64 = 1e-2;
/// Step for derivatives of the curvature.
pub const CURVATURE_STEP: f64 = 2e-2;
/// Richardson levels per derivative.
pub const LEVELS: usize = 2;

/// Charts with `u ∈ (0, 1)` get proportionally smaller `u` steps so the
/// stencil stays clear of `u = 0`.
fn step(p: &Point, k: usize, h: f64) -> f64 {
    if k == 0 && p[0] != 0.0 {
        h * p[0].abs().min(1.0)
    } else {
        h
    }
}

/// `∂_k f` from central differences at `h, h/2, …, h/2^LEVELS`, combined by
/// Richardson extrapolation.
fn derivative<const N: usize>(f: &dyn Fn(&Point) -> Result<[f64; N]>, p: &Point, k: usize, h: f64) -> Result<[f64; N]> {
    let h = step(p, k, h);
    let central = |h: f64| -> Result<[f64; N]> {
        let mut a = *p;
        let mut b = *p;
        a[k] += h;
        b[k] -= h;
        let (fa, fb) = (f(&a)?, f(&b)?);
        Ok(std::array::from_fn(|i| (fa[i] - fb[i]) / (2.0 * h)))
    };
    let mut table = Vec::with_capacity(LEVELS + 1);
    for n in 0..=LEVELS {
        table.push(central(h / f64::from(1u32 << n))?);
    }
    for m in 1..=LEVELS {
        let w = f64::from(1u32 << (2 * m));
        for n in (m..=LEVELS).rev() {
            let (coarse, fine) = (table[n - 1], table[n]);
            table[n] = std::array::from_fn(|i| (w * fine[i] - coarse[i]) / (w - 1.0));
        }
    }
    Ok(table[LEVELS])
}

fn flat2(g: &[[f64; 3]; 3]) -> [f64; 9] {
    std::array::from_fn(|n| g[n / 3][n % 3])
}

fn flat3(t: &Tensor3) -> [f64; 27] {
    std::array::from_fn(|n| t[n / 9][(n / 3) % 3][n % 3])
}

fn flat4(t: &Tensor4) -> [f64; 81] {
    std::array::from_fn(|n| t[n / 27][(n / 9) % 3][(n / 3) % 3][n % 3])
}

fn unflat4(a: &[f64; 81]) -> Tensor4 {
    let mut t = zero4();
    for (n, v) in a.iter().enumerate() {
        t[n / 27][(n / 9) % 3][(n / 3) % 3][n % 3] = *v;
    }
    t
}

/// `∂_k g_{ij}` as `[k][i][j]`.
pub fn metric_derivatives(chart: &dyn Chart, p: &Point) -> Result<Tensor3> {
    let f = |q: &Point| chart.metric_at(q).map(|g| flat2(&g));
    let mut dg = zero3();
    for (k, slot) in dg.iter_mut().enumerate() {
        let d = derivative(&f, p, k, METRIC_STEP)?;
        for n in 0..9 {
            slot[n / 3][n % 3] = d[n];
        }
    }
    Ok(dg)
}

pub fn christoffels(chart: &dyn Chart, p: &Point) -> Result<Tensor3> {
    Ok(christoffels_from(&chart.metric_at(p)?, &metric_derivatives(chart, p)?))
}

/// `R(∂i,∂j)∂k = (∂iΓ^l_{jk} − ∂jΓ^l_{ik} + Γ^m_{jk}Γ^l_{im} − Γ^m_{ik}Γ^l_{jm}) ∂l`,
/// lowered with `g`.
pub fn riemann(chart: &dyn Chart, p: &Point) -> Result<Tensor4> {
    let gamma = christoffels(chart, p)?;
    let f = |q: &Point| christoffels(chart, q).map(|t| flat3(&t));
    // dgamma[i][l][j][k] = ∂_i Γ^l_{jk}
    let mut dgamma = [zero3(); 3];
    for (i, slot) in dgamma.iter_mut().enumerate() {
        let d = derivative(&f, p, i, CONNECTION_STEP)?;
        for n in 0..27 {
            slot[n / 9][(n / 3) % 3][n % 3] = d[n];
        }
    }
    let mut up = zero4();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let mut s = dgamma[i][l][j][k] - dgamma[j][l][i][k];
                    for m in 0..3 {
                        s += gamma[m][j][k] * gamma[l][i][m] - gamma[m][i][k] * gamma[l][j][m];
                    }
                    up[i][j][k][l] = s;
                }
            }
        }
    }
    Ok(lower_last(&chart.metric_at(p)?, &up))
}

/// `∇_k R` for `k = u, v, x`.
pub fn nabla_riemann(chart: &dyn Chart, p: &Point) -> Result<[Tensor4; 3]> {
    let gamma = christoffels(chart, p)?;
    let r = riemann(chart, p)?;
    let f = |q: &Point| riemann(chart, q).map(|t| flat4(&t));
    let mut dr = [zero4(); 3];
    for (k, slot) in dr.iter_mut().enumerate() {
        *slot = unflat4(&derivative(&f, p, k, CURVATURE_STEP)?);
    }
    Ok(super::curvature::nabla_riemann_from(&gamma, &r, &dr))
}

pub fn covariant_r_derivative(chart: &dyn Chart, p: &Point, direction: &[f64; 3]) -> Result<f64> {
    let nabla = nabla_riemann(chart, p)?;
    Ok(super::max_abs4(&super::curvature::contract_direction(
        &nabla, direction,
    )))
}

pub fn sectional_curvature(chart: &dyn Chart, p: &Point, e1: &[f64; 3], e2: &[f64; 3]) -> Result<f64> {
    super::curvature::sectional_from(&chart.metric_at(p)?, &riemann(chart, p)?, e1, e2)
}
