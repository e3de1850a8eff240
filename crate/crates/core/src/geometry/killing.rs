//! Coordinate vector fields and the Killing equation.

use std::fmt;
use std::sync::Arc;

use super::chart::{PlaneWaveChart, Profile, RosenChart};
use super::grid::Grid;
use super::{zero2, Chart, Point, Tensor2, U, V, X};
use crate::error::Result;
use crate::euler;

type FieldFn = dyn Fn(&Point) -> ([f64; 3], Tensor2) + Send + Sync;

/// A vector field `ξ` with its Jacobian `J[i][j] = ∂_j ξ^i`.
#[derive(Clone)]
pub struct VectorField {
    name: String,
    eval: Arc<FieldFn>,
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VectorField").field("name", &self.name).finish()
    }
}

impl VectorField {
    pub fn new(name: impl Into<String>, eval: impl Fn(&Point) -> ([f64; 3], Tensor2) + Send + Sync + 'static) -> Self {
        VectorField {
            name: name.into(),
            eval: Arc::new(eval),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn value(&self, p: &Point) -> [f64; 3] {
        (self.eval)(p).0
    }

    pub fn jacobian(&self, p: &Point) -> Tensor2 {
        (self.eval)(p).1
    }

    pub fn eval(&self, p: &Point) -> ([f64; 3], Tensor2) {
        (self.eval)(p)
    }

    /// `∂_k`.
    pub fn coordinate(k: usize) -> Self {
        let names = ["d_u", "d_v", "d_x"];
        VectorField::new(names[k], move |_| {
            let mut e = [0.0; 3];
            e[k] = 1.0;
            (e, zero2())
        })
    }

    /// `u∂u − v∂v`.
    pub fn boost() -> Self {
        VectorField::new("u d_u - v d_v", |p| {
            let mut j = zero2();
            j[U][U] = 1.0;
            j[V][V] = -1.0;
            ([p[U], -p[V], 0.0], j)
        })
    }

    /// `f(u)∂x − f′(u) x ∂v` from a jet `u ↦ (f, f′, f″)`.
    pub fn transverse(name: impl Into<String>, jet: impl Fn(f64) -> [f64; 3] + Send + Sync + 'static) -> Self {
        VectorField::new(name, move |p| {
            let [f, f1, f2] = jet(p[U]);
            let mut j = zero2();
            j[V][U] = -f2 * p[X];
            j[V][X] = -f1;
            j[X][U] = f1;
            ([0.0, -f1 * p[X], f], j)
        })
    }
}

/// `(L_ξ g)_{ij} = ξ^k ∂_k g_{ij} + g_{kj} ∂_i ξ^k + g_{ik} ∂_j ξ^k`.
pub fn lie_derivative_metric(chart: &dyn Chart, field: &VectorField, p: &Point) -> Result<Tensor2> {
    let g = chart.metric_at(p)?;
    let dg = chart.metric_derivatives(p)?;
    let (xi, jac) = field.eval(p);
    let mut out = zero2();
    for i in 0..3 {
        for j in 0..3 {
            let mut s = 0.0;
            for k in 0..3 {
                s += xi[k] * dg[k][i][j] + g[k][j] * jac[k][i] + g[i][k] * jac[k][j];
            }
            out[i][j] = s;
        }
    }
    Ok(out)
}

pub fn killing_residual_at(chart: &dyn Chart, field: &VectorField, p: &Point) -> Result<f64> {
    Ok(super::max_abs2(&lie_derivative_metric(chart, field, p)?))
}

/// `max |(L_ξ g)_{ij}|` over the grid; infinite if a grid point is outside
/// the chart's domain.
pub fn killing_residual(chart: &dyn Chart, field: &VectorField, grid: &Grid) -> f64 {
    grid.points()
        .iter()
        .map(|p| killing_residual_at(chart, field, p).unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max)
}

/// `[A, B]^i = A^j ∂_j B^i − B^j ∂_j A^i`.
pub fn commutator(a: &VectorField, b: &VectorField, p: &Point) -> [f64; 3] {
    let (av, aj) = a.eval(p);
    let (bv, bj) = b.eval(p);
    std::array::from_fn(|i| (0..3).map(|j| av[j] * bj[i][j] - bv[j] * aj[i][j]).sum())
}

/// `∂v`, `∂x` and `ξ = x∂v − F_δ(u)∂x` on a Rosen chart, with
/// `[∂x, ξ] = ∂v` the only non-zero bracket.
pub fn heis_killing_fields(chart: &RosenChart) -> [VectorField; 3] {
    let profile = chart.profile().clone();
    let xi = VectorField::new("x d_v - F(u) d_x", move |p| {
        let mut j = zero2();
        j[V][X] = 1.0;
        j[X][U] = -1.0 / profile.jet(p[U])[0];
        ([0.0, p[X], -profile.inverse_antiderivative(p[U])], j)
    });
    [VectorField::coordinate(V), VectorField::coordinate(X), xi]
}

/// Time-`t` flow of `ξ = x∂v − F_δ(u)∂x`.
pub fn heis_flow(chart: &RosenChart, t: f64, p: &Point) -> Result<Point> {
    chart.check_domain(p)?;
    let f = chart.inverse_antiderivative(p[U]);
    Ok([p[U], p[V] + t * p[X] - 0.5 * t * t * f, p[X] - t * f])
}

/// Solutions of `f″ = H f` used by the transverse Killing fields.
fn profile_basis(profile: Profile, which: usize) -> impl Fn(f64) -> [f64; 3] + Send + Sync {
    move |u: f64| match profile {
        Profile::PowerLaw { b } => euler::basis(b, u, which),
        Profile::Constant { h } if h > 0.0 => {
            let w = h.sqrt();
            let (c, s) = ((w * u).cosh(), (w * u).sinh());
            if which == 0 {
                [c, w * s, h * c]
            } else {
                [s, w * c, h * s]
            }
        }
        Profile::Constant { h } if h < 0.0 => {
            let w = (-h).sqrt();
            let (c, s) = ((w * u).cos(), (w * u).sin());
            if which == 0 {
                [c, -w * s, h * c]
            } else {
                [s, w * c, h * s]
            }
        }
        Profile::Constant { .. } => {
            if which == 0 {
                [1.0, 0.0, 0.0]
            } else {
                [u, 1.0, 0.0]
            }
        }
    }
}

/// Killing fields of a Brinkmann chart: `∂v`, the two transverse fields
/// `f∂x − f′x∂v`, and `u∂u − v∂v` (power law or flat) or `∂u` (constant).
pub fn brinkmann_killing_fields(chart: &PlaneWaveChart) -> Vec<VectorField> {
    let profile = chart.profile();
    let mut out = vec![
        VectorField::coordinate(V),
        VectorField::transverse("f0(u) d_x - f0'(u) x d_v", profile_basis(profile, 0)),
        VectorField::transverse("f1(u) d_x - f1'(u) x d_v", profile_basis(profile, 1)),
    ];
    match profile {
        Profile::PowerLaw { .. } => out.push(VectorField::boost()),
        Profile::Constant { h } => {
            out.push(VectorField::coordinate(U));
            if h == 0.0 {
                out.push(VectorField::boost());
            }
        }
    }
    out
}
