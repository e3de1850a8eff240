//! Brinkmann and Rosen charts of three-dimensional plane waves.
//!
//! Coordinates are ordered `(u, v, x)`. Curvature follows
//! `R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_{[X,Y]}Z` and
//! `R_{ijkl} = g(R(∂_i,∂_j)∂_k, ∂_l)`.

pub mod chart;
pub mod curvature;
pub mod grid;
pub mod killing;
pub mod oracle;
pub mod transform;

pub use chart::{Chart, ChartDescriptor, DeltaProfile, ExpDelta, PlaneWaveChart, PowerDelta, Profile, RosenChart};
pub use curvature::{
    covariant_r_derivative, is_flat, ricci, riemann_tensor, scalar_curvature, sectional_curvature, CurvatureReport,
};
pub use grid::Grid;
pub use killing::{heis_killing_fields, killing_residual, VectorField};
pub use transform::{general_rosen_to_brinkmann, rosen_to_brinkmann};

pub const U: usize = 0;
pub const V: usize = 1;
pub const X: usize = 2;
pub const COORD_NAMES: [&str; 3] = ["u", "v", "x"];

pub type Point = [f64; 3];
pub type Tensor2 = [[f64; 3]; 3];
/// Rank-3 array, `[k][i][j]`: `Γ^k_{ij}` or `∂_k g_{ij}`.
pub type Tensor3 = [[[f64; 3]; 3]; 3];
pub type Tensor4 = [[[[f64; 3]; 3]; 3]; 3];

pub(crate) fn zero2() -> Tensor2 {
    [[0.0; 3]; 3]
}

pub(crate) fn zero3() -> Tensor3 {
    [[[0.0; 3]; 3]; 3]
}

pub(crate) fn zero4() -> Tensor4 {
    [[[[0.0; 3]; 3]; 3]; 3]
}

pub fn max_abs2(t: &Tensor2) -> f64 {
    t.iter().flatten().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn max_abs3(t: &Tensor3) -> f64 {
    t.iter().flatten().flatten().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn max_abs4(t: &Tensor4) -> f64 {
    t.iter().flatten().flatten().flatten().fold(0.0, |m, v| m.max(v.abs()))
}

/// Inverse of a symmetric 3×3 matrix by cofactors.
pub fn inverse_metric(g: &Tensor2) -> Tensor2 {
    let c = |i: usize, j: usize| {
        let (i1, i2) = ((i + 1) % 3, (i + 2) % 3);
        let (j1, j2) = ((j + 1) % 3, (j + 2) % 3);
        g[i1][j1] * g[i2][j2] - g[i1][j2] * g[i2][j1]
    };
    let det = g[0][0] * c(0, 0) + g[0][1] * c(0, 1) + g[0][2] * c(0, 2);
    std::array::from_fn(|i| std::array::from_fn(|j| c(j, i) / det))
}

pub fn det2(g: &Tensor2) -> f64 {
    g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
        + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0])
}

/// `g(a, b)`.
pub fn inner(g: &Tensor2, a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let mut s = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            s += g[i][j] * a[i] * b[j];
        }
    }
    s
}

/// Lowers the last index of `R^l_{ijk}` stored as `[i][j][k][l]`.
pub(crate) fn lower_last(g: &Tensor2, up: &Tensor4) -> Tensor4 {
    let mut out = zero4();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    out[i][j][k][l] = (0..3).map(|m| g[l][m] * up[i][j][k][m]).sum();
                }
            }
        }
    }
    out
}

/// Levi-Civita symbols from the metric and its first derivatives.
pub(crate) fn christoffels_from(g: &Tensor2, dg: &Tensor3) -> Tensor3 {
    let ginv = inverse_metric(g);
    let mut gamma = zero3();
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                gamma[k][i][j] = 0.5
                    * (0..3)
                        .map(|l| ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]))
                        .sum::<f64>();
            }
        }
    }
    gamma
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_brinkmann_metric() {
        let g = [[3.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]];
        let gi = inverse_metric(&g);
        assert_eq!(gi, [[0.0, 1.0, 0.0], [1.0, -3.0, 0.0], [0.0, 0.0, 1.0]]);
        assert_eq!(det2(&g), -1.0);
    }
}
