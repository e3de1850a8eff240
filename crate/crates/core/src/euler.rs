//! Solutions of the Euler equation `ẍ = (b/t²) x` on `t > 0`.
//!
//! The basis depends on the sign of `1 + 4b`:
//! `{t^{r+}, t^{r−}}` with `r± = (1 ± √(1+4b))/2` when positive,
//! `{√t, √t ln t}` at `b = −1/4`, and
//! `{√t cos(ω ln t), √t sin(ω ln t)}` with `ω = √(−(1+4b))/2` below.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "branch", rename_all = "kebab-case")]
pub enum EulerBranch {
    Power { r_plus: f64, r_minus: f64 },
    Critical,
    Oscillatory { omega: f64 },
}

pub fn branch(b: f64) -> EulerBranch {
    let disc = 1.0 + 4.0 * b;
    if disc > 0.0 {
        let s = disc.sqrt();
        EulerBranch::Power {
            r_plus: 0.5 * (1.0 + s),
            r_minus: 0.5 * (1.0 - s),
        }
    } else if disc == 0.0 {
        EulerBranch::Critical
    } else {
        EulerBranch::Oscillatory {
            omega: 0.5 * (-disc).sqrt(),
        }
    }
}

/// `(f, f′, f″)` of basis function `which ∈ {0, 1}` at `t > 0`.
pub fn basis(b: f64, t: f64, which: usize) -> [f64; 3] {
    debug_assert!(which < 2);
    match branch(b) {
        EulerBranch::Power { r_plus, r_minus } => {
            let r = if which == 0 { r_plus } else { r_minus };
            [t.powf(r), r * t.powf(r - 1.0), r * (r - 1.0) * t.powf(r - 2.0)]
        }
        EulerBranch::Critical => {
            let (g, g1, g2) = if which == 0 {
                (1.0, 0.0, 0.0)
            } else {
                (t.ln(), 1.0, 0.0)
            };
            sqrt_modulated(t, g, g1, g2)
        }
        EulerBranch::Oscillatory { omega } => {
            let s = omega * t.ln();
            let (g, g1, g2) = if which == 0 {
                (s.cos(), -omega * s.sin(), -omega * omega * s.cos())
            } else {
                (s.sin(), omega * s.cos(), -omega * omega * s.sin())
            };
            sqrt_modulated(t, g, g1, g2)
        }
    }
}

// f = √t·g(ln t)
fn sqrt_modulated(t: f64, g: f64, g1: f64, g2: f64) -> [f64; 3] {
    let rt = t.sqrt();
    [rt * g, (0.5 * g + g1) / rt, (-0.25 * g + g2) / (rt * t)]
}

/// Basis function `which` evaluated at `t`.
pub fn closed_form_x(b: f64, t: f64, which: usize) -> f64 {
    basis(b, t, which)[0]
}

/// Coefficients `(c₀, c₁)` so that `c₀f₀ + c₁f₁` has value `x0` and slope
/// `xdot0` at `t0`.
pub fn fit(b: f64, t0: f64, x0: f64, xdot0: f64) -> Result<[f64; 2]> {
    if t0 <= 0.0 {
        return Err(Error::InvalidArgument(format!("Euler fit needs t0 > 0, got {t0}")));
    }
    let f0 = basis(b, t0, 0);
    let f1 = basis(b, t0, 1);
    let det = f0[0] * f1[1] - f1[0] * f0[1];
    Ok([(x0 * f1[1] - f1[0] * xdot0) / det, (f0[0] * xdot0 - f0[1] * x0) / det])
}

/// `(x, ẋ)` of the fitted combination.
pub fn evaluate(b: f64, coeffs: [f64; 2], t: f64) -> [f64; 2] {
    let f0 = basis(b, t, 0);
    let f1 = basis(b, t, 1);
    [
        coeffs[0] * f0[0] + coeffs[1] * f1[0],
        coeffs[0] * f0[1] + coeffs[1] * f1[1],
    ]
}

/// `|t² f″ − b f|` for basis function `which`.
pub fn ode_residual(b: f64, t: f64, which: usize) -> f64 {
    let [f, _, f2] = basis(b, t, which);
    (t * t * f2 - b * f).abs()
}
