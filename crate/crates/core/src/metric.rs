//! Invariant Lorentz metrics on `G/I`.
//!
//! With `W` generating the isotropy, the tangent space at the base point is
//! `g / span(W)`, modelled on `m = span(T, Y′, Z)` where `Y′ = A(W)`. On that
//! basis `ad_W` sends `T ↦ −Y′`, `Y′ ↦ κZ`, `Z ↦ 0` with `κ = [W, A(W)]_Z`,
//! and skew-symmetry forces the normal form
//!
//! ```text
//! g(Y′,Y′) = α,  g(T,Z) = α/κ,  g(T,T) = β,  all other entries 0
//! ```
//!
//! `β` is removed by the automorphism `T ↦ T + δZ`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{self, extend_algebra, Derivation, IsotropyChoice, Mat3, SpectrumKind, Vec3, Vec4};
use crate::rational::{self, q, Q};

pub const BASIS_LABELS: [&str; 3] = ["T", "Yprime", "Z"];

/// Metric on `m = span(T, Y′, Z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantMetric {
    /// `Y′ = A(W)` in `(Z, X, Y)` coordinates.
    pub yprime: Vec3,
    pub gram: Mat3,
    pub scale_alpha: Q,
    pub shift_beta: Q,
    /// `ad_W` restricted to `m`, basis `(T, Y′, Z)`.
    pub ad_w: Mat3,
    /// `κ = [W, Y′]_Z`.
    pub kappa: Q,
    pub isotropy: IsotropyChoice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn is_lorentz(&self) -> bool {
        self.positive == 2 && self.negative == 1 && self.zero == 0
    }
}

/// Exact inertia of a symmetric 3×3 rational matrix. All roots of the
/// characteristic polynomial are real, so Descartes' rule of signs is exact.
pub fn signature(g: &Mat3) -> Signature {
    let tr = &g[0][0] + &g[1][1] + &g[2][2];
    let c1 = (&g[0][0] * &g[1][1] - &g[0][1] * &g[1][0])
        + (&g[0][0] * &g[2][2] - &g[0][2] * &g[2][0])
        + (&g[1][1] * &g[2][2] - &g[1][2] * &g[2][1]);
    let det = lie::det3(g);
    let sign_changes = |coeffs: &[Q]| -> usize {
        let signs: Vec<bool> = coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.is_positive())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    // det(λ − G) = λ³ − tr λ² + c1 λ − det
    let positive = sign_changes(&[Q::one(), -tr.clone(), c1.clone(), -det.clone()]);
    let negative = sign_changes(&[-Q::one(), -tr.clone(), -c1.clone(), -det.clone()]);
    let zero = if !det.is_zero() {
        0
    } else if !c1.is_zero() {
        1
    } else if !tr.is_zero() {
        2
    } else {
        3
    };
    Signature {
        positive,
        negative,
        zero,
    }
}

/// `ad_W` on `g / span(W)`, on the complement basis obtained by dropping X
/// (or Y when W has no X-part) from `(Z, X, Y, T)`.
pub fn ad_on_quotient(a: &Derivation, w: &IsotropyChoice) -> (Mat3, [usize; 3]) {
    let alg = extend_algebra(a);
    let wv = w.vector4();
    let drop = if !wv[lie::X].is_zero() { lie::X } else { lie::Y };
    let keep: Vec<usize> = (0..4).filter(|&i| i != drop).collect();
    let keep = [keep[0], keep[1], keep[2]];
    let reduce = |v: Vec4| -> Vec3 {
        let f = &v[drop] / &wv[drop];
        std::array::from_fn(|r| &v[keep[r]] - &f * &wv[keep[r]])
    };
    let cols: [Vec3; 3] = std::array::from_fn(|j| reduce(alg.bracket(&wv, &lie::basis4(keep[j]))));
    let m = std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone()));
    (m, keep)
}

/// Smallest `k ≤ 3` with `M^k = 0`, or `None` when `M` is not nilpotent.
pub fn nilpotency_order(m: &Mat3) -> Option<usize> {
    let is_zero = |a: &Mat3| a.iter().flatten().all(Zero::is_zero);
    let mut power = lie::identity3();
    for k in 1..=3 {
        power = lie::mat3_mul(&power, m);
        if is_zero(&power) {
            return Some(k);
        }
    }
    None
}

/// The projection of `W` to `heis/Z` is not an eigenvector of `Ā`.
pub fn eigenvector_criterion(a: &Derivation, w: &IsotropyChoice) -> bool {
    let wv = w.heis_vector();
    let aw = a.apply(&wv);
    !(&wv[lie::X] * &aw[lie::Y] - &wv[lie::Y] * &aw[lie::X]).is_zero()
}

/// Metric existence: `ad_W` on `g/span(W)` has nilpotency order exactly 3.
pub fn admits_metric(a: &Derivation, w: &IsotropyChoice) -> bool {
    let (m, _) = ad_on_quotient(a, w);
    let by_order = nilpotency_order(&m) == Some(3);
    debug_assert_eq!(by_order, eigenvector_criterion(a, w), "{a:?} {w:?}");
    by_order
}

/// First of `X`, `Y`, `X + Y` admitting a metric; any non-scalar `Ā` has one.
pub fn default_isotropy(a: &Derivation) -> Option<IsotropyChoice> {
    [IsotropyChoice::x(), IsotropyChoice::y(), IsotropyChoice::x_plus_y()]
        .into_iter()
        .find(|w| admits_metric(a, w))
}

pub fn build_invariant_metric(a: &Derivation, w: &IsotropyChoice) -> Result<InvariantMetric> {
    build_invariant_metric_with(a, w, Q::one(), Q::zero())
}

/// Normal form with explicit scale `α ≠ 0` and `g(T,T) = β`.
pub fn build_invariant_metric_with(a: &Derivation, w: &IsotropyChoice, alpha: Q, beta: Q) -> Result<InvariantMetric> {
    if alpha.is_zero() {
        return Err(Error::InvalidArgument("metric scale α must be non-zero".into()));
    }
    if !admits_metric(a, w) {
        return Err(Error::NoInvariantMetric(format!(
            "{w:?} projects to an eigenvector of Ā; ad_W has nilpotency order < 3"
        )));
    }
    let wv = w.heis_vector();
    let yprime = a.apply(&wv);
    let kappa = lie::heis_bracket(&wv, &yprime)[lie::Z].clone();
    let g_tz = &alpha / &kappa;
    let zero = Q::zero;
    let gram: Mat3 = [
        [beta.clone(), zero(), g_tz.clone()],
        [zero(), alpha.clone(), zero()],
        [g_tz, zero(), zero()],
    ];
    let ad_w: Mat3 = [
        [zero(), zero(), zero()],
        [-Q::one(), zero(), zero()],
        [zero(), kappa.clone(), zero()],
    ];
    Ok(InvariantMetric {
        yprime,
        gram,
        scale_alpha: alpha,
        shift_beta: beta,
        ad_w,
        kappa,
        isotropy: w.clone(),
    })
}

impl InvariantMetric {
    pub fn signature(&self) -> Signature {
        signature(&self.gram)
    }

    pub fn skew_residual(&self) -> Q {
        skew_residual(&self.gram, &self.ad_w)
    }

    /// Applies `T ↦ T + δZ` with `δ = −β / (2 g(T,Z))`, returning the
    /// normalized metric and `δ`.
    pub fn normalize_shift(&self) -> (InvariantMetric, Q) {
        let g_tz = &self.gram[0][2];
        let delta = -&self.shift_beta / (q(2) * g_tz);
        let mut out = self.clone();
        out.gram[0][0] = Q::zero();
        out.shift_beta = Q::zero();
        (out, delta)
    }

    pub fn report(&self) -> MetricReport {
        let sig = self.signature();
        MetricReport {
            basis_labels: BASIS_LABELS.map(String::from),
            yprime: self.yprime.iter().map(rational::to_string).collect(),
            isotropy: self.isotropy.heis_vector().iter().map(rational::to_string).collect(),
            gram: self
                .gram
                .iter()
                .map(|r| r.iter().map(rational::to_string).collect())
                .collect(),
            signature: sig,
            lorentz: sig.is_lorentz(),
            scale_alpha: rational::to_string(&self.scale_alpha),
            shift_beta: rational::to_string(&self.shift_beta),
            beta_normalized: self.shift_beta.is_zero(),
            skew_residual: rational::to_string(&self.skew_residual()),
        }
    }
}

/// Max over basis pairs of `|g(ad u, w) + g(u, ad w)|`.
pub fn skew_residual(gram: &Mat3, ad: &Mat3) -> Q {
    let mut worst = Q::zero();
    for i in 0..3 {
        for j in 0..3 {
            // g(ad e_i, e_j) = Σ_k ad[k][i] g[k][j]
            let mut s = Q::zero();
            for k in 0..3 {
                s += &ad[k][i] * &gram[k][j] + &gram[i][k] * &ad[k][j];
            }
            let s = s.abs();
            if s > worst {
                worst = s;
            }
        }
    }
    worst
}

/// `Ā` has a real eigenvector, i.e. a 3-dimensional subalgebra transverse to
/// the isotropy exists. Meaningful when some `W` admits a metric.
pub fn has_transverse_subalgebra(a: &Derivation) -> bool {
    lie::spectrum_on_quotient(a).kind != SpectrumKind::Complex
}

/// An explicit transverse subalgebra `span(T, u, Z)` with `u` a real
/// eigenvector of `Ā`, when one exists.
pub fn transverse_subalgebra(a: &Derivation, w: &IsotropyChoice) -> Option<[Vec4; 3]> {
    if !admits_metric(a, w) || !has_transverse_subalgebra(a) {
        return None;
    }
    let blk = a.quotient_block();
    let candidates: Vec<[Q; 2]> = real_eigenvectors(&blk);
    let u = candidates.into_iter().next()?;
    Some([
        lie::basis4(lie::T),
        [Q::zero(), u[0].clone(), u[1].clone(), Q::zero()],
        lie::basis4(lie::Z),
    ])
}

// Rational eigenvectors only exist for rational eigenvalues; for irrational
// real spectra fall back to `None` from the caller's perspective.
fn real_eigenvectors(b: &lie::Mat2) -> Vec<[Q; 2]> {
    let tr = &b[0][0] + &b[1][1];
    let det = &b[0][0] * &b[1][1] - &b[0][1] * &b[1][0];
    let disc = &tr * &tr - q(4) * &det;
    let Some(root) = rational_sqrt(&disc) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for lam in [(&tr + &root) / q(2), (&tr - &root) / q(2)] {
        // (B − λ) v = 0
        let (a, c) = (&b[0][0] - &lam, b[0][1].clone());
        let (d, e) = (b[1][0].clone(), &b[1][1] - &lam);
        let v = if !a.is_zero() || !c.is_zero() {
            [-c, a]
        } else if !d.is_zero() || !e.is_zero() {
            [-e, d]
        } else {
            [Q::one(), Q::zero()]
        };
        out.push(v);
    }
    out
}

fn rational_sqrt(v: &Q) -> Option<Q> {
    if v.is_negative() {
        return None;
    }
    let (n, d) = (v.numer().clone(), v.denom().clone());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &rn * &rn == n && &rd * &rd == d {
        Some(Q::new(rn, rd))
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricReport {
    pub basis_labels: [String; 3],
    pub yprime: Vec<String>,
    pub isotropy: Vec<String>,
    pub gram: Vec<Vec<String>>,
    pub signature: Signature,
    pub lorentz: bool,
    pub scale_alpha: String,
    pub shift_beta: String,
    pub beta_normalized: bool,
    pub skew_residual: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn hyperbolic(b: i64) -> Derivation {
        Derivation::hyperbolic(q(b))
    }

    #[test]
    fn admissibility_examples() {
        assert!(admits_metric(&hyperbolic(2), &IsotropyChoice::x_plus_y()));
        assert!(!admits_metric(&hyperbolic(2), &IsotropyChoice::x()));
        assert!(admits_metric(&Derivation::elliptic(q(1)), &IsotropyChoice::x()));
        assert!(admits_metric(&Derivation::parabolic(), &IsotropyChoice::y()));
        assert!(!admits_metric(&Derivation::parabolic(), &IsotropyChoice::x()));
        assert!(admits_metric(&Derivation::nilpotent(), &IsotropyChoice::y()));
        let zero = Derivation::new(lie::zero3()).unwrap();
        assert!(!admits_metric(&zero, &IsotropyChoice::x_plus_y()));
        assert_eq!(default_isotropy(&zero), None);
    }

    #[test]
    fn hyperbolic_table() {
        let m = build_invariant_metric(&hyperbolic(2), &IsotropyChoice::x_plus_y()).unwrap();
        assert_eq!(m.yprime, [q(0), q(1), q(2)]);
        assert_eq!(m.gram[1][1], q(1));
        assert_eq!(m.gram[0][2], q(1)); // 1/(b−1)
        assert_eq!(m.gram[2][0], q(1));
        for (i, j) in [(0, 0), (0, 1), (1, 2), (2, 2)] {
            assert!(m.gram[i][j].is_zero());
        }
        assert!(m.skew_residual().is_zero());
        assert!(m.signature().is_lorentz());

        let m = build_invariant_metric(&hyperbolic(5), &IsotropyChoice::x_plus_y()).unwrap();
        assert_eq!(m.gram[0][2], frac(1, 4));
    }

    #[test]
    fn parabolic_elliptic_nilpotent_tables() {
        let m = build_invariant_metric(&Derivation::parabolic(), &IsotropyChoice::y()).unwrap();
        assert_eq!(m.yprime, [q(0), q(1), q(1)]);
        assert_eq!((m.gram[1][1].clone(), m.gram[0][2].clone()), (q(1), q(-1)));

        let c = frac(3, 2);
        let m = build_invariant_metric(&Derivation::elliptic(c.clone()), &IsotropyChoice::x()).unwrap();
        assert_eq!(m.yprime, [q(0), c, q(1)]);
        assert_eq!((m.gram[1][1].clone(), m.gram[0][2].clone()), (q(1), q(1)));

        let m = build_invariant_metric(&Derivation::nilpotent(), &IsotropyChoice::y()).unwrap();
        assert_eq!(m.yprime, [q(0), q(1), q(0)]);
        assert_eq!((m.gram[1][1].clone(), m.gram[0][2].clone()), (q(1), q(-1)));
    }

    #[test]
    fn cahen_wallach_tables() {
        let hyp = Derivation::from_i64([[0, 0, 0], [0, 1, 0], [0, 0, -1]]).unwrap();
        let m = build_invariant_metric(&hyp, &IsotropyChoice::x_plus_y()).unwrap();
        assert_eq!(m.yprime, [q(0), q(1), q(-1)]);
        assert_eq!(m.gram[0][2], frac(-1, 2));
        let ell = Derivation::from_i64([[0, 0, 0], [0, 0, -1], [0, 1, 0]]).unwrap();
        let m = build_invariant_metric(&ell, &IsotropyChoice::x()).unwrap();
        assert_eq!(m.gram[0][2], q(1));
    }

    #[test]
    fn no_metric_error() {
        let err = build_invariant_metric(&hyperbolic(2), &IsotropyChoice::x()).unwrap_err();
        assert!(matches!(err, Error::NoInvariantMetric(_)));
    }

    #[test]
    fn skew_residual_examples() {
        let m = build_invariant_metric(&hyperbolic(2), &IsotropyChoice::x_plus_y()).unwrap();
        let mut g = m.gram.clone();
        g[2][2] = q(1);
        // g(ad Y′, Z) + g(Y′, ad Z) = κ g(Z,Z) with κ = b − 1 = 1
        assert_eq!(skew_residual(&g, &m.ad_w), q(1));
        let zero = lie::zero3();
        assert!(skew_residual(&m.gram, &zero).is_zero());
        assert!(skew_residual(&g, &zero).is_zero());
    }

    #[test]
    fn beta_shift_normalization() {
        let a = hyperbolic(3);
        let w = IsotropyChoice::x_plus_y();
        let m = build_invariant_metric_with(&a, &w, q(1), q(5)).unwrap();
        assert!(m.skew_residual().is_zero());
        let (n, delta) = m.normalize_shift();
        // g(T+δZ, T+δZ) = β + 2δ g(T,Z) = 0
        assert!((&m.shift_beta + q(2) * &delta * &m.gram[0][2]).is_zero());
        assert!(n.gram[0][0].is_zero());
    }

    #[test]
    fn scaling_in_alpha() {
        let a = Derivation::parabolic();
        let w = IsotropyChoice::y();
        let base = build_invariant_metric(&a, &w).unwrap();
        let lam = frac(-7, 3);
        let scaled = build_invariant_metric_with(&a, &w, lam.clone(), q(0)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(scaled.gram[i][j], &base.gram[i][j] * &lam);
            }
        }
    }

    #[test]
    fn signature_counts() {
        let diag = |a: i64, b: i64, c: i64| lie::mat3_from_i64([[a, 0, 0], [0, b, 0], [0, 0, c]]);
        assert_eq!(
            signature(&diag(1, 1, -1)),
            Signature {
                positive: 2,
                negative: 1,
                zero: 0
            }
        );
        assert_eq!(
            signature(&diag(1, 0, -1)),
            Signature {
                positive: 1,
                negative: 1,
                zero: 1
            }
        );
        assert_eq!(
            signature(&diag(-1, -2, -1)),
            Signature {
                positive: 0,
                negative: 3,
                zero: 0
            }
        );
        assert_eq!(
            signature(&lie::zero3()),
            Signature {
                positive: 0,
                negative: 0,
                zero: 3
            }
        );
    }

    #[test]
    fn transverse_examples() {
        assert!(!has_transverse_subalgebra(&Derivation::elliptic(q(1))));
        assert!(has_transverse_subalgebra(&hyperbolic(2)));
        assert!(has_transverse_subalgebra(&Derivation::nilpotent()));
        let a = hyperbolic(2);
        let w = IsotropyChoice::x_plus_y();
        let l = transverse_subalgebra(&a, &w).unwrap();
        let alg = extend_algebra(&a);
        // closed under brackets: every bracket lies in span(l)
        for u in &l {
            for v in &l {
                let br = alg.bracket(u, v);
                let m = [l[0].clone(), l[1].clone(), l[2].clone(), br];
                let mat: [[Q; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].clone()));
                assert!(det4(&mat).is_zero());
            }
        }
        assert!(transverse_subalgebra(&Derivation::elliptic(q(1)), &IsotropyChoice::x()).is_none());
    }

    fn det4(m: &[[Q; 4]; 4]) -> Q {
        let mut total = Q::zero();
        for c in 0..4 {
            let minor: Mat3 =
                std::array::from_fn(|i| std::array::from_fn(|j| m[i + 1][if j < c { j } else { j + 1 }].clone()));
            let term = &m[0][c] * lie::det3(&minor);
            if c % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }
}
