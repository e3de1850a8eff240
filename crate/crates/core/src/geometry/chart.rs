//! Closed-form chart data.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{zero2, zero3, zero4, Point, Tensor2, Tensor3, Tensor4, U, V, X};
use crate::error::{Error, Result};

/// A coordinate realization with closed-form metric, connection and
/// curvature.
pub trait Chart: fmt::Debug + Send + Sync {
    fn check_domain(&self, p: &Point) -> Result<()>;
    fn metric_at(&self, p: &Point) -> Result<Tensor2>;
    /// `∂_k g_{ij}` as `[k][i][j]`.
    fn metric_derivatives(&self, p: &Point) -> Result<Tensor3>;
    /// `Γ^k_{ij}` as `[k][i][j]`.
    fn christoffels(&self, p: &Point) -> Result<Tensor3>;
    fn riemann(&self, p: &Point) -> Result<Tensor4>;
    /// `∂_k R_{ijlm}`, outer index `k`.
    fn riemann_partials(&self, p: &Point) -> Result<[Tensor4; 3]>;
    fn descriptor(&self) -> ChartDescriptor;
    /// Whether the domain is `u > 0` (with `u = 0` as its only boundary).
    fn positive_u_domain(&self) -> bool;
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ChartDescriptor {
    Brinkmann { profile: Profile, metric: String },
    Rosen { profile: String, metric: String },
}

/// Every plane-wave curvature tensor in these charts is `K(u)·P` with
/// `P_{uxux} = P_{xuxu} = 1`, `P_{uxxu} = P_{xuux} = −1`.
pub(crate) fn plane_wave_pattern(k: f64) -> Tensor4 {
    let mut r = zero4();
    r[U][X][U][X] = k;
    r[X][U][X][U] = k;
    r[U][X][X][U] = -k;
    r[X][U][U][X] = -k;
    r
}

fn check_finite(p: &Point) -> Result<()> {
    if p.iter().all(|c| c.is_finite()) {
        Ok(())
    } else {
        Err(Error::DomainError {
            point: *p,
            reason: "non-finite coordinate".into(),
        })
    }
}

fn require_positive_u(p: &Point) -> Result<()> {
    if p[U] > 0.0 {
        Ok(())
    } else {
        Err(Error::DomainError {
            point: *p,
            reason: format!("u = {} but the chart is defined on u > 0", p[U]),
        })
    }
}

/// Brinkmann profile `H(u)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Profile {
    /// `H = b/u²` on `u > 0`.
    PowerLaw { b: f64 },
    /// `H = h` on all of ℝ.
    Constant { h: f64 },
}

impl Profile {
    /// `(H, H′)`.
    pub fn jet(&self, u: f64) -> [f64; 2] {
        match *self {
            Profile::PowerLaw { b } => [b / (u * u), -2.0 * b / (u * u * u)],
            Profile::Constant { h } => [h, 0.0],
        }
    }

    pub fn h(&self, u: f64) -> f64 {
        self.jet(u)[0]
    }
}

/// `g = 2 du dv + H(u) x² du² + dx²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWaveChart {
    profile: Profile,
}

impl PlaneWaveChart {
    pub fn new(profile: Profile) -> Self {
        PlaneWaveChart { profile }
    }

    pub fn power_law(b: f64) -> Self {
        Self::new(Profile::PowerLaw { b })
    }

    pub fn constant(h: f64) -> Self {
        Self::new(Profile::Constant { h })
    }

    pub fn profile(&self) -> Profile {
        self.profile
    }

    pub fn h(&self, u: f64) -> f64 {
        self.profile.h(u)
    }
}

impl Chart for PlaneWaveChart {
    fn check_domain(&self, p: &Point) -> Result<()> {
        check_finite(p)?;
        match self.profile {
            Profile::PowerLaw { .. } => require_positive_u(p),
            Profile::Constant { .. } => Ok(()),
        }
    }

    fn metric_at(&self, p: &Point) -> Result<Tensor2> {
        self.check_domain(p)?;
        let mut g = zero2();
        g[U][U] = self.h(p[U]) * p[X] * p[X];
        g[U][V] = 1.0;
        g[V][U] = 1.0;
        g[X][X] = 1.0;
        Ok(g)
    }

    fn metric_derivatives(&self, p: &Point) -> Result<Tensor3> {
        self.check_domain(p)?;
        let [h, h1] = self.profile.jet(p[U]);
        let x = p[X];
        let mut dg = zero3();
        dg[U][U][U] = h1 * x * x;
        dg[X][U][U] = 2.0 * h * x;
        Ok(dg)
    }

    fn christoffels(&self, p: &Point) -> Result<Tensor3> {
        self.check_domain(p)?;
        let [h, h1] = self.profile.jet(p[U]);
        let x = p[X];
        let mut gamma = zero3();
        gamma[X][U][U] = -h * x;
        gamma[V][U][U] = 0.5 * h1 * x * x;
        gamma[V][U][X] = h * x;
        gamma[V][X][U] = h * x;
        Ok(gamma)
    }

    fn riemann(&self, p: &Point) -> Result<Tensor4> {
        self.check_domain(p)?;
        Ok(plane_wave_pattern(self.h(p[U])))
    }

    fn riemann_partials(&self, p: &Point) -> Result<[Tensor4; 3]> {
        self.check_domain(p)?;
        let [_, h1] = self.profile.jet(p[U]);
        Ok([plane_wave_pattern(h1), zero4(), zero4()])
    }

    fn positive_u_domain(&self) -> bool {
        matches!(self.profile, Profile::PowerLaw { .. })
    }

    fn descriptor(&self) -> ChartDescriptor {
        let metric = match self.profile {
            Profile::PowerLaw { b } => format!("2 du dv + ({b}) x^2/u^2 du^2 + dx^2, u > 0"),
            Profile::Constant { h } => format!("2 du dv + ({h}) x^2 du^2 + dx^2"),
        };
        ChartDescriptor::Brinkmann {
            profile: self.profile,
            metric,
        }
    }
}

/// Rosen profile `δ(u) > 0`.
pub trait DeltaProfile: fmt::Debug + Send + Sync {
    /// `(δ, δ′, δ″, δ‴)`.
    fn jet(&self, u: f64) -> [f64; 4];
    /// An antiderivative `F_δ` of `1/δ`.
    fn inverse_antiderivative(&self, u: f64) -> f64;
    /// Whether the profile is only defined on `u > 0`.
    fn positive_u_only(&self) -> bool;
    fn describe(&self) -> String;
}

/// `δ = u^{2α}` on `u > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerDelta {
    pub alpha: f64,
}

impl DeltaProfile for PowerDelta {
    fn jet(&self, u: f64) -> [f64; 4] {
        let e = 2.0 * self.alpha;
        [
            u.powf(e),
            e * u.powf(e - 1.0),
            e * (e - 1.0) * u.powf(e - 2.0),
            e * (e - 1.0) * (e - 2.0) * u.powf(e - 3.0),
        ]
    }

    fn inverse_antiderivative(&self, u: f64) -> f64 {
        let e = 1.0 - 2.0 * self.alpha;
        if e == 0.0 {
            u.ln()
        } else {
            u.powf(e) / e
        }
    }

    fn positive_u_only(&self) -> bool {
        true
    }

    fn describe(&self) -> String {
        format!("u^(2*{})", self.alpha)
    }
}

/// `δ = e^{ku}` on all of ℝ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpDelta {
    pub k: f64,
}

impl DeltaProfile for ExpDelta {
    fn jet(&self, u: f64) -> [f64; 4] {
        let e = (self.k * u).exp();
        [e, self.k * e, self.k * self.k * e, self.k.powi(3) * e]
    }

    fn inverse_antiderivative(&self, u: f64) -> f64 {
        if self.k == 0.0 {
            u
        } else {
            -(-self.k * u).exp() / self.k
        }
    }

    fn positive_u_only(&self) -> bool {
        false
    }

    fn describe(&self) -> String {
        format!("exp({} u)", self.k)
    }
}

/// `g = 2 du dv + δ(u) dx²`.
#[derive(Debug, Clone)]
pub struct RosenChart {
    profile: Arc<dyn DeltaProfile>,
}

impl RosenChart {
    pub fn new(profile: Arc<dyn DeltaProfile>) -> Self {
        RosenChart { profile }
    }

    pub fn power(alpha: f64) -> Self {
        Self::new(Arc::new(PowerDelta { alpha }))
    }

    pub fn exponential(k: f64) -> Self {
        Self::new(Arc::new(ExpDelta { k }))
    }

    pub fn profile(&self) -> &Arc<dyn DeltaProfile> {
        &self.profile
    }

    pub fn delta(&self, u: f64) -> f64 {
        self.profile.jet(u)[0]
    }

    pub fn inverse_antiderivative(&self, u: f64) -> f64 {
        self.profile.inverse_antiderivative(u)
    }

    // R_{uxux} = δ·(δ″/(2δ) − δ′²/(4δ²)) and its u-derivative.
    fn curvature_jet(&self, u: f64) -> [f64; 2] {
        let [d, d1, d2, d3] = self.profile.jet(u);
        let k = d2 / (2.0 * d) - d1 * d1 / (4.0 * d * d);
        let k1 = d3 / (2.0 * d) - d1 * d2 / (d * d) + d1.powi(3) / (2.0 * d.powi(3));
        [d * k, d1 * k + d * k1]
    }
}

impl Chart for RosenChart {
    fn check_domain(&self, p: &Point) -> Result<()> {
        check_finite(p)?;
        if self.profile.positive_u_only() {
            require_positive_u(p)?;
        }
        let d = self.delta(p[U]);
        if d > 0.0 && d.is_finite() {
            Ok(())
        } else {
            Err(Error::DomainError {
                point: *p,
                reason: format!("δ(u) = {d} is not positive"),
            })
        }
    }

    fn metric_at(&self, p: &Point) -> Result<Tensor2> {
        self.check_domain(p)?;
        let mut g = zero2();
        g[U][V] = 1.0;
        g[V][U] = 1.0;
        g[X][X] = self.delta(p[U]);
        Ok(g)
    }

    fn metric_derivatives(&self, p: &Point) -> Result<Tensor3> {
        self.check_domain(p)?;
        let mut dg = zero3();
        dg[U][X][X] = self.profile.jet(p[U])[1];
        Ok(dg)
    }

    fn christoffels(&self, p: &Point) -> Result<Tensor3> {
        self.check_domain(p)?;
        let [d, d1, ..] = self.profile.jet(p[U]);
        let mut gamma = zero3();
        gamma[X][X][U] = d1 / (2.0 * d);
        gamma[X][U][X] = d1 / (2.0 * d);
        gamma[V][X][X] = -0.5 * d1;
        Ok(gamma)
    }

    fn riemann(&self, p: &Point) -> Result<Tensor4> {
        self.check_domain(p)?;
        Ok(plane_wave_pattern(self.curvature_jet(p[U])[0]))
    }

    fn riemann_partials(&self, p: &Point) -> Result<[Tensor4; 3]> {
        self.check_domain(p)?;
        Ok([plane_wave_pattern(self.curvature_jet(p[U])[1]), zero4(), zero4()])
    }

    fn positive_u_domain(&self) -> bool {
        self.profile.positive_u_only()
    }

    fn descriptor(&self) -> ChartDescriptor {
        let profile = self.profile.describe();
        ChartDescriptor::Rosen {
            metric: format!("2 du dv + {profile} dx^2"),
            profile,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_examples() {
        let g = PlaneWaveChart::power_law(2.0).metric_at(&[1.0, 0.0, 1.0]).unwrap();
        assert_eq!((g[U][U], g[U][V], g[X][X], g[V][V]), (2.0, 1.0, 1.0, 0.0));
        let g = PlaneWaveChart::constant(0.0).metric_at(&[-4.0, 3.0, 2.0]).unwrap();
        assert_eq!(g, [[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);
        let g = RosenChart::power(-1.0).metric_at(&[2.0, 0.0, 0.0]).unwrap();
        assert_eq!(g[X][X], 0.25);
    }

    #[test]
    fn domain_errors() {
        for u in [0.0, -1.0] {
            let p = [u, 0.0, 0.0];
            assert!(matches!(
                PlaneWaveChart::power_law(2.0).metric_at(&p),
                Err(Error::DomainError { .. })
            ));
            assert!(RosenChart::power(0.5).christoffels(&p).is_err());
        }
        assert!(PlaneWaveChart::constant(1.0).metric_at(&[-3.0, 0.0, 0.0]).is_ok());
        assert!(RosenChart::exponential(1.0).metric_at(&[-3.0, 0.0, 0.0]).is_ok());
        assert!(PlaneWaveChart::constant(1.0).metric_at(&[f64::NAN, 0.0, 0.0]).is_err());
    }

    #[test]
    fn christoffel_examples() {
        let gamma = PlaneWaveChart::power_law(2.0).christoffels(&[1.0, 0.0, 1.0]).unwrap();
        assert_eq!(gamma[X][U][U], -2.0);
        assert_eq!(gamma[V][U][X], 2.0);
        assert_eq!(gamma[V][U][U], -2.0);
        let at_axis = PlaneWaveChart::power_law(2.0).christoffels(&[0.7, 0.3, 0.0]).unwrap();
        assert_eq!(at_axis[X][U][U], 0.0);
        let flat = PlaneWaveChart::constant(0.0).christoffels(&[0.2, 1.0, -1.0]).unwrap();
        assert_eq!(flat, zero3());
    }

    #[test]
    fn partial_v_is_parallel() {
        // ∇_k ∂v = Γ^m_{kv} ∂m
        let charts: Vec<Box<dyn Chart>> = vec![
            Box::new(PlaneWaveChart::power_law(-0.5)),
            Box::new(PlaneWaveChart::constant(1.0)),
            Box::new(RosenChart::power(-1.0)),
            Box::new(RosenChart::exponential(0.3)),
        ];
        for chart in &charts {
            let gamma = chart.christoffels(&[1.3, -0.4, 0.8]).unwrap();
            for m in 0..3 {
                for k in 0..3 {
                    assert_eq!(gamma[m][k][V], 0.0);
                }
            }
        }
    }

    #[test]
    fn riemann_sign_convention() {
        let r = PlaneWaveChart::power_law(2.0).riemann(&[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(r[U][X][U][X], 2.0);
        assert_eq!(r[U][X][X][U], -2.0);
    }

    #[test]
    fn rosen_curvature_is_power_law() {
        // Rosen α has R_{uxux} = δ·(α²−α)/u²
        for alpha in [-1.0, 0.5, 2.0, 0.0] {
            let chart = RosenChart::power(alpha);
            let u: f64 = 1.7;
            let r = chart.riemann(&[u, 0.0, 0.0]).unwrap();
            let expect = u.powf(2.0 * alpha) * (alpha * alpha - alpha) / (u * u);
            assert!((r[U][X][U][X] - expect).abs() < 1e-12, "α = {alpha}");
        }
    }

    #[test]
    fn antiderivatives() {
        assert_eq!(RosenChart::power(0.0).inverse_antiderivative(3.0), 3.0);
        assert!((RosenChart::power(-1.0).inverse_antiderivative(3.0) - 9.0).abs() < 1e-12);
        assert_eq!(RosenChart::power(0.5).inverse_antiderivative(1.0), 0.0);
    }
}
