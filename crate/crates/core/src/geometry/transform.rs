//! Rosen ↔ Brinkmann changes of variables.
//!
//! For `2 du dv + δ(u) dx²` the map
//! `u = ū, x = δ^{−1/2} x̄, v = v̄ + (δ′/(4δ)) x̄²`
//! pulls the metric back to `2 dū dv̄ + H(ū) x̄² dū² + dx̄²` with
//! `H = δ″/(2δ) − δ′²/(4δ²)`. For `δ = u^{2α}` this is
//! `v = v̄ + (α/2) ū⁻¹ x̄²`, `x = ū^{−α} x̄` and `H = (α² − α)/ū²`.

use std::sync::Arc;

use serde::Serialize;

use super::chart::{DeltaProfile, PlaneWaveChart, PowerDelta, RosenChart};
use super::grid::Grid;
use super::{zero2, Chart, Point, Tensor2, U, V, X};
use crate::error::Result;

#[derive(Debug, Clone)]
pub struct RosenBrinkmann {
    pub alpha: f64,
    pub b: f64,
}

pub fn rosen_to_brinkmann(alpha: f64) -> RosenBrinkmann {
    RosenBrinkmann {
        alpha,
        b: alpha * alpha - alpha,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransformCheck {
    pub pullback_residual: f64,
    pub roundtrip_residual: f64,
}

fn pullback(g: &Tensor2, j: &Tensor2) -> Tensor2 {
    let mut out = zero2();
    for a in 0..3 {
        for b in 0..3 {
            let mut s = 0.0;
            for i in 0..3 {
                for k in 0..3 {
                    s += j[i][a] * g[i][k] * j[k][b];
                }
            }
            out[a][b] = s;
        }
    }
    out
}

fn max_diff(a: &Tensor2, b: &Tensor2) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            m = m.max((a[i][j] - b[i][j]).abs());
        }
    }
    m
}

impl RosenBrinkmann {
    pub fn rosen_chart(&self) -> RosenChart {
        RosenChart::power(self.alpha)
    }

    pub fn brinkmann_chart(&self) -> PlaneWaveChart {
        PlaneWaveChart::power_law(self.b)
    }

    /// Brinkmann `(ū, v̄, x̄)` to Rosen `(u, v, x)`.
    pub fn point_map(&self, p: &Point) -> Result<Point> {
        self.brinkmann_chart().check_domain(p)?;
        let (u, a) = (p[U], self.alpha);
        Ok([u, p[V] + 0.5 * a * p[X] * p[X] / u, u.powf(-a) * p[X]])
    }

    /// Rosen `(u, v, x)` to Brinkmann `(ū, v̄, x̄)`.
    pub fn inverse_map(&self, p: &Point) -> Result<Point> {
        self.rosen_chart().check_domain(p)?;
        let (u, a) = (p[U], self.alpha);
        let xb = u.powf(a) * p[X];
        Ok([u, p[V] - 0.5 * a * xb * xb / u, xb])
    }

    /// `∂(u, v, x)/∂(ū, v̄, x̄)`.
    pub fn jacobian(&self, p: &Point) -> Result<Tensor2> {
        self.brinkmann_chart().check_domain(p)?;
        let (u, xb, a) = (p[U], p[X], self.alpha);
        let mut j = zero2();
        j[U][U] = 1.0;
        j[V][U] = -0.5 * a * xb * xb / (u * u);
        j[V][V] = 1.0;
        j[V][X] = a * xb / u;
        j[X][U] = -a * u.powf(-a - 1.0) * xb;
        j[X][X] = u.powf(-a);
        Ok(j)
    }

    pub fn pullback_metric(&self, p: &Point) -> Result<Tensor2> {
        let g = self.rosen_chart().metric_at(&self.point_map(p)?)?;
        Ok(pullback(&g, &self.jacobian(p)?))
    }

    pub fn check(&self, grid: &Grid) -> Result<TransformCheck> {
        let target = self.brinkmann_chart();
        let mut out = TransformCheck {
            pullback_residual: 0.0,
            roundtrip_residual: 0.0,
        };
        for p in grid.points() {
            let d = max_diff(&self.pullback_metric(&p)?, &target.metric_at(&p)?);
            out.pullback_residual = out.pullback_residual.max(d);
            let back = self.inverse_map(&self.point_map(&p)?)?;
            for k in 0..3 {
                out.roundtrip_residual = out.roundtrip_residual.max((back[k] - p[k]).abs());
            }
        }
        Ok(out)
    }
}

/// Transform for an arbitrary Rosen profile.
#[derive(Debug, Clone)]
pub struct GeneralRosenBrinkmann {
    profile: Arc<dyn DeltaProfile>,
}

pub fn general_rosen_to_brinkmann(profile: Arc<dyn DeltaProfile>) -> GeneralRosenBrinkmann {
    GeneralRosenBrinkmann { profile }
}

impl GeneralRosenBrinkmann {
    pub fn power(alpha: f64) -> Self {
        general_rosen_to_brinkmann(Arc::new(PowerDelta { alpha }))
    }

    pub fn rosen_chart(&self) -> RosenChart {
        RosenChart::new(self.profile.clone())
    }

    /// Brinkmann profile `H(u)`.
    pub fn h(&self, u: f64) -> f64 {
        let [d, d1, d2, _] = self.profile.jet(u);
        d2 / (2.0 * d) - d1 * d1 / (4.0 * d * d)
    }

    /// `2 du dv + H(u) x² du² + dx²`.
    pub fn brinkmann_metric(&self, p: &Point) -> Result<Tensor2> {
        self.rosen_chart().check_domain(p)?;
        let mut g = zero2();
        g[U][U] = self.h(p[U]) * p[X] * p[X];
        g[U][V] = 1.0;
        g[V][U] = 1.0;
        g[X][X] = 1.0;
        Ok(g)
    }

    pub fn point_map(&self, p: &Point) -> Result<Point> {
        self.rosen_chart().check_domain(p)?;
        let [d, d1, ..] = self.profile.jet(p[U]);
        Ok([p[U], p[V] + d1 / (4.0 * d) * p[X] * p[X], p[X] / d.sqrt()])
    }

    pub fn inverse_map(&self, p: &Point) -> Result<Point> {
        self.rosen_chart().check_domain(p)?;
        let [d, d1, ..] = self.profile.jet(p[U]);
        let xb = p[X] * d.sqrt();
        Ok([p[U], p[V] - d1 / (4.0 * d) * xb * xb, xb])
    }

    pub fn jacobian(&self, p: &Point) -> Result<Tensor2> {
        self.rosen_chart().check_domain(p)?;
        let [d, d1, d2, _] = self.profile.jet(p[U]);
        let xb = p[X];
        let c = d1 / (4.0 * d);
        let c1 = d2 / (4.0 * d) - d1 * d1 / (4.0 * d * d);
        let s = 1.0 / d.sqrt();
        let s1 = -0.5 * d1 / (d * d.sqrt());
        let mut j = zero2();
        j[U][U] = 1.0;
        j[V][U] = c1 * xb * xb;
        j[V][V] = 1.0;
        j[V][X] = 2.0 * c * xb;
        j[X][U] = s1 * xb;
        j[X][X] = s;
        Ok(j)
    }

    pub fn pullback_metric(&self, p: &Point) -> Result<Tensor2> {
        let g = self.rosen_chart().metric_at(&self.point_map(p)?)?;
        Ok(pullback(&g, &self.jacobian(p)?))
    }

    pub fn check(&self, grid: &Grid) -> Result<TransformCheck> {
        let mut out = TransformCheck {
            pullback_residual: 0.0,
            roundtrip_residual: 0.0,
        };
        for p in grid.points() {
            let d = max_diff(&self.pullback_metric(&p)?, &self.brinkmann_metric(&p)?);
            out.pullback_residual = out.pullback_residual.max(d);
            let back = self.inverse_map(&self.point_map(&p)?)?;
            for k in 0..3 {
                out.roundtrip_residual = out.roundtrip_residual.max((back[k] - p[k]).abs());
            }
        }
        Ok(out)
    }
}
