//! Heisenberg algebra, its derivations and the 4-dimensional extensions
//! `heis ⋊ ℝT`, in exact rational arithmetic.
//!
//! Basis order is fixed to `(Z, X, Y)` on `heis` and `(Z, X, Y, T)` on the
//! extension. A matrix entry `(i, j)` is the `i`-th component of the image
//! of the `j`-th basis vector (column convention).

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, q, Q};

pub const Z: usize = 0;
pub const X: usize = 1;
pub const Y: usize = 2;
pub const T: usize = 3;

pub type Mat3 = [[Q; 3]; 3];
pub type Mat2 = [[Q; 2]; 2];
pub type Vec3 = [Q; 3];
pub type Vec4 = [Q; 4];

pub fn zero3() -> Mat3 {
    std::array::from_fn(|_| std::array::from_fn(|_| Q::zero()))
}

pub fn identity3() -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Q::one() } else { Q::zero() }))
}

pub fn mat3_from_i64(m: [[i64; 3]; 3]) -> Mat3 {
    m.map(|row| row.map(q))
}

pub fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).fold(Q::zero(), |acc, k| acc + &a[i][k] * &b[k][j])))
}

pub fn mat3_scale(a: &Mat3, s: &Q) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] * s))
}

pub fn mat3_apply(a: &Mat3, v: &Vec3) -> Vec3 {
    std::array::from_fn(|i| (0..3).fold(Q::zero(), |acc, k| acc + &a[i][k] * &v[k]))
}

pub fn det3(a: &Mat3) -> Q {
    &a[0][0] * (&a[1][1] * &a[2][2] - &a[1][2] * &a[2][1]) - &a[0][1] * (&a[1][0] * &a[2][2] - &a[1][2] * &a[2][0])
        + &a[0][2] * (&a[1][0] * &a[2][1] - &a[1][1] * &a[2][0])
}

/// Exact inverse via the adjugate; `None` when singular.
pub fn inverse3(a: &Mat3) -> Option<Mat3> {
    let d = det3(a);
    if d.is_zero() {
        return None;
    }
    let cof = |r0: usize, r1: usize, c0: usize, c1: usize| &a[r0][c0] * &a[r1][c1] - &a[r0][c1] * &a[r1][c0];
    let adj: Mat3 = [
        [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
        [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
        [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
    ];
    Some(mat3_scale(&adj, &d.recip()))
}

pub fn max_abs<'a>(values: impl IntoIterator<Item = &'a Q>) -> Q {
    values
        .into_iter()
        .map(|v| v.abs())
        .fold(Q::zero(), |m, v| if v > m { v } else { m })
}

/// The bracket of `heis`: only `[X, Y] = Z` is non-zero.
pub fn heis_bracket(u: &Vec3, w: &Vec3) -> Vec3 {
    [&u[X] * &w[Y] - &u[Y] * &w[X], Q::zero(), Q::zero()]
}

/// A derivation of `heis` in the `(Z, X, Y)` basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Derivation {
    matrix: Mat3,
}

/// `true` iff `A[u,w] = [Au,w] + [u,Aw]`, i.e. `A(Z) = tr(Ā)·Z`.
pub fn is_derivation(m: &Mat3) -> bool {
    m[X][Z].is_zero() && m[Y][Z].is_zero() && m[Z][Z] == &m[X][X] + &m[Y][Y]
}

impl Derivation {
    pub fn new(matrix: Mat3) -> Result<Self> {
        if is_derivation(&matrix) {
            Ok(Self { matrix })
        } else {
            Err(Error::NotADerivation)
        }
    }

    pub fn from_i64(m: [[i64; 3]; 3]) -> Result<Self> {
        Self::new(mat3_from_i64(m))
    }

    /// Builds the derivation with quotient block `block` and Z-row entries
    /// `z_row = (A_ZX, A_ZY)`; the Z column is forced.
    pub fn from_block(block: Mat2, z_row: [Q; 2]) -> Self {
        let [[a, b], [c, d]] = block;
        let [zx, zy] = z_row;
        let tr = &a + &d;
        Self {
            matrix: [[tr, zx, zy], [Q::zero(), a, b], [Q::zero(), c, d]],
        }
    }

    /// `[[1,0,0],[0,0,1],[0,b,1]]`: the normal form carrying the invariant `b`.
    pub fn canonical(b: Q) -> Self {
        Self::from_block([[Q::zero(), Q::one()], [b, Q::one()]], [Q::zero(), Q::zero()])
    }

    /// `diag(1+b, 1, b)`: the real-diagonalizable family.
    pub fn hyperbolic(b: Q) -> Self {
        Self::from_block([[Q::one(), Q::zero()], [Q::zero(), b]], [Q::zero(), Q::zero()])
    }

    /// `[[2,0,0],[0,1,1],[0,0,1]]`
    pub fn parabolic() -> Self {
        Self::from_block([[q(1), q(1)], [q(0), q(1)]], [q(0), q(0)])
    }

    /// `A_c`: similarity by `c + i` on `span(X, Y)`.
    pub fn elliptic(c: Q) -> Self {
        Self::from_block([[c.clone(), q(-1)], [q(1), c]], [q(0), q(0)])
    }

    /// `[T,Y] = X`, everything else zero.
    pub fn nilpotent() -> Self {
        Self::from_block([[q(0), q(1)], [q(0), q(0)]], [q(0), q(0)])
    }

    /// `diag(1, 1−α, α)`: the derivation of the Rosen chart with exponent α.
    pub fn rosen(alpha: Q) -> Self {
        Self::from_block(
            [[Q::one() - &alpha, Q::zero()], [Q::zero(), alpha]],
            [Q::zero(), Q::zero()],
        )
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.matrix
    }

    pub fn into_matrix(self) -> Mat3 {
        self.matrix
    }

    /// `Ā`, the induced map on `heis/Z`.
    pub fn quotient_block(&self) -> Mat2 {
        let m = &self.matrix;
        [[m[X][X].clone(), m[X][Y].clone()], [m[Y][X].clone(), m[Y][Y].clone()]]
    }

    pub fn quotient_trace(&self) -> Q {
        &self.matrix[X][X] + &self.matrix[Y][Y]
    }

    pub fn quotient_det(&self) -> Q {
        let m = &self.matrix;
        &m[X][X] * &m[Y][Y] - &m[X][Y] * &m[Y][X]
    }

    pub fn is_unimodular(&self) -> bool {
        self.quotient_trace().is_zero()
    }

    /// `Ā = 0`: accepted as a derivation, but no isotropy choice admits a metric.
    pub fn has_zero_quotient(&self) -> bool {
        self.quotient_block().iter().flatten().all(Zero::is_zero)
    }

    /// `Ā = λ·I`: every non-central vector is an eigenvector.
    pub fn has_scalar_quotient(&self) -> bool {
        let m = &self.matrix;
        m[X][Y].is_zero() && m[Y][X].is_zero() && m[X][X] == m[Y][Y]
    }

    pub fn scaled(&self, s: &Q) -> Self {
        Self {
            matrix: mat3_scale(&self.matrix, s),
        }
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        mat3_apply(&self.matrix, v)
    }

    /// Residual of the derivation law over all basis pairs, evaluated by
    /// brackets rather than by the column shortcut in [`is_derivation`].
    pub fn law_residual(m: &Mat3) -> Q {
        let basis: [Vec3; 3] =
            std::array::from_fn(|i| std::array::from_fn(|k| if i == k { Q::one() } else { Q::zero() }));
        let mut worst = Q::zero();
        for u in &basis {
            for w in &basis {
                let lhs = mat3_apply(m, &heis_bracket(u, w));
                let au = mat3_apply(m, u);
                let aw = mat3_apply(m, w);
                let r1 = heis_bracket(&au, w);
                let r2 = heis_bracket(u, &aw);
                for k in 0..3 {
                    let d = (&lhs[k] - &r1[k] - &r2[k]).abs();
                    if d > worst {
                        worst = d;
                    }
                }
            }
        }
        worst
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(rational::to_string).collect())
            .collect();
        write!(f, "Derivation{rows:?}")
    }
}

impl Serialize for Derivation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(rational::to_string).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Derivation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = serde_json::Value::deserialize(d)?;
        derivation_from_json(&raw).map_err(serde::de::Error::custom)
    }
}

/// Parses the row-major 3×3 JSON form (strings such as `"1/4"`, or numbers).
pub fn derivation_from_json(raw: &serde_json::Value) -> Result<Derivation> {
    let rows = raw
        .as_array()
        .filter(|r| r.len() == 3)
        .ok_or_else(|| Error::Parse("derivation must be a 3x3 array".into()))?;
    let mut m = zero3();
    for (i, row) in rows.iter().enumerate() {
        let cols = row
            .as_array()
            .filter(|c| c.len() == 3)
            .ok_or_else(|| Error::Parse(format!("row {i} must have 3 entries")))?;
        for (j, v) in cols.iter().enumerate() {
            m[i][j] = rational::serde_q::from_json(v)?;
        }
    }
    Derivation::new(m)
}

/// Structure constants `c[i][j][k]`: `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, PartialEq)]
pub struct ExtensionAlgebra {
    pub structure_constants: [[[Q; 4]; 4]; 4],
}

pub fn basis4(i: usize) -> Vec4 {
    std::array::from_fn(|k| if k == i { Q::one() } else { Q::zero() })
}

impl ExtensionAlgebra {
    pub fn from_constants(structure_constants: [[[Q; 4]; 4]; 4]) -> Self {
        Self { structure_constants }
    }

    pub fn abelian() -> Self {
        Self::from_constants(std::array::from_fn(|_| {
            std::array::from_fn(|_| std::array::from_fn(|_| Q::zero()))
        }))
    }

    pub fn bracket(&self, u: &Vec4, w: &Vec4) -> Vec4 {
        let c = &self.structure_constants;
        let mut out: Vec4 = std::array::from_fn(|_| Q::zero());
        for i in 0..4 {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if w[j].is_zero() {
                    continue;
                }
                let coef = &u[i] * &w[j];
                for (k, o) in out.iter_mut().enumerate() {
                    if !c[i][j][k].is_zero() {
                        *o += &coef * &c[i][j][k];
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad_u`; column `j` is `[u, e_j]`.
    pub fn ad(&self, u: &Vec4) -> [[Q; 4]; 4] {
        let cols: [Vec4; 4] = std::array::from_fn(|j| self.bracket(u, &basis4(j)));
        std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone()))
    }
}

/// `heis ⋊ ℝT` with `[X,Y] = Z` and `[T,W] = A(W)`.
pub fn extend_algebra(a: &Derivation) -> ExtensionAlgebra {
    let m = a.matrix();
    let mut c: [[[Q; 4]; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| Q::zero())));
    c[X][Y][Z] = Q::one();
    c[Y][X][Z] = -Q::one();
    for w in 0..3 {
        for k in 0..3 {
            c[T][w][k] = m[k][w].clone();
            c[w][T][k] = -m[k][w].clone();
        }
    }
    ExtensionAlgebra::from_constants(c)
}

/// Max-norm of the Jacobi cyclic sums over all basis triples.
pub fn jacobi_residual(alg: &ExtensionAlgebra) -> Q {
    let mut worst = Q::zero();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                let (ei, ej, ek) = (basis4(i), basis4(j), basis4(k));
                let a = alg.bracket(&alg.bracket(&ei, &ej), &ek);
                let b = alg.bracket(&alg.bracket(&ej, &ek), &ei);
                let c = alg.bracket(&alg.bracket(&ek, &ei), &ej);
                let r = max_abs(&[
                    &a[0] + &b[0] + &c[0],
                    &a[1] + &b[1] + &c[1],
                    &a[2] + &b[2] + &c[2],
                    &a[3] + &b[3] + &c[3],
                ]);
                if r > worst {
                    worst = r;
                }
            }
        }
    }
    worst
}

/// Antisymmetry residual of the structure constants.
pub fn antisymmetry_residual(alg: &ExtensionAlgebra) -> Q {
    let c = &alg.structure_constants;
    let mut worst = Q::zero();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                let d = (&c[i][j][k] + &c[j][i][k]).abs();
                if d > worst {
                    worst = d;
                }
            }
        }
    }
    worst
}

/// The isotropy generator `W = γZ + αX + βY` (non-central).
#[derive(Clone, PartialEq, Eq)]
pub struct IsotropyChoice {
    gamma: Q,
    alpha: Q,
    beta: Q,
}

impl IsotropyChoice {
    pub fn new(gamma: Q, alpha: Q, beta: Q) -> Result<Self> {
        if alpha.is_zero() && beta.is_zero() {
            return Err(Error::CentralIsotropy);
        }
        Ok(Self { gamma, alpha, beta })
    }

    pub fn from_i64(gamma: i64, alpha: i64, beta: i64) -> Result<Self> {
        Self::new(q(gamma), q(alpha), q(beta))
    }

    pub fn x() -> Self {
        Self::from_i64(0, 1, 0).expect("non-central")
    }

    pub fn y() -> Self {
        Self::from_i64(0, 0, 1).expect("non-central")
    }

    pub fn x_plus_y() -> Self {
        Self::from_i64(0, 1, 1).expect("non-central")
    }

    /// Coefficients in `(Z, X, Y)` order.
    pub fn heis_vector(&self) -> Vec3 {
        [self.gamma.clone(), self.alpha.clone(), self.beta.clone()]
    }

    pub fn vector4(&self) -> Vec4 {
        [self.gamma.clone(), self.alpha.clone(), self.beta.clone(), Q::zero()]
    }
}

impl fmt::Debug for IsotropyChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "W({}Z + {}X + {}Y)",
            rational::to_string(&self.gamma),
            rational::to_string(&self.alpha),
            rational::to_string(&self.beta)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumKind {
    RealDiagonalizable,
    RealNondiagonalizable,
    Complex,
    NilpotentNonzero,
    Zero,
}

impl SpectrumKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SpectrumKind::RealDiagonalizable => "real-diagonalizable",
            SpectrumKind::RealNondiagonalizable => "real-nondiagonalizable",
            SpectrumKind::Complex => "complex",
            SpectrumKind::NilpotentNonzero => "nilpotent-nonzero",
            SpectrumKind::Zero => "zero",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuotientSpectrum {
    #[serde(with = "rational::serde_q")]
    pub trace: Q,
    #[serde(with = "rational::serde_q")]
    pub det: Q,
    /// `tr² − 4 det`
    #[serde(with = "rational::serde_q")]
    pub discriminant: Q,
    pub kind: SpectrumKind,
}

pub fn spectrum_on_quotient(a: &Derivation) -> QuotientSpectrum {
    let trace = a.quotient_trace();
    let det = a.quotient_det();
    let discriminant = &trace * &trace - q(4) * &det;
    let kind = if a.has_zero_quotient() {
        SpectrumKind::Zero
    } else if discriminant.is_positive() {
        SpectrumKind::RealDiagonalizable
    } else if discriminant.is_negative() {
        SpectrumKind::Complex
    } else if a.has_scalar_quotient() {
        SpectrumKind::RealDiagonalizable
    } else if trace.is_zero() {
        SpectrumKind::NilpotentNonzero
    } else {
        SpectrumKind::RealNondiagonalizable
    };
    QuotientSpectrum {
        trace,
        det,
        discriminant,
        kind,
    }
}

/// An automorphism of `heis`, `[[det P, r₁, r₂], [0, P]]` in `(Z, X, Y)`.
#[derive(Clone, PartialEq, Eq)]
pub struct HeisAutomorphism {
    matrix: Mat3,
}

impl fmt::Debug for HeisAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(rational::to_string).collect())
            .collect();
        write!(f, "HeisAutomorphism{rows:?}")
    }
}

impl HeisAutomorphism {
    /// Lifts an invertible block `P` on `heis/Z`; `shift` gives the Z-parts
    /// of the images of X and Y.
    pub fn from_block(p: Mat2, shift: [Q; 2]) -> Result<Self> {
        let det = &p[0][0] * &p[1][1] - &p[0][1] * &p[1][0];
        if det.is_zero() {
            return Err(Error::InvalidArgument("singular automorphism block".into()));
        }
        let [[a, b], [c, d]] = p;
        let [r1, r2] = shift;
        Ok(Self {
            matrix: [[det, r1, r2], [Q::zero(), a, b], [Q::zero(), c, d]],
        })
    }

    pub fn from_matrix(matrix: Mat3) -> Result<Self> {
        if is_automorphism(&matrix) {
            Ok(Self { matrix })
        } else {
            Err(Error::InvalidArgument("matrix is not an automorphism of heis".into()))
        }
    }

    /// `X ↦ t₁X, Y ↦ t₂Y, Z ↦ t₁t₂Z`.
    pub fn diagonal(t1: Q, t2: Q) -> Result<Self> {
        Self::from_block([[t1, Q::zero()], [Q::zero(), t2]], [Q::zero(), Q::zero()])
    }

    /// `exp(ad_u)` for `u = pX + qY`.
    pub fn inner(p: Q, qv: Q) -> Self {
        Self::from_block([[Q::one(), Q::zero()], [Q::zero(), Q::one()]], [-qv, p]).expect("unimodular block")
    }

    /// `X ↦ aX + bY, Y ↦ −bX + aY, Z ↦ (a²+b²)Z`.
    pub fn similarity(a: Q, b: Q) -> Result<Self> {
        Self::from_block([[a.clone(), -b.clone()], [b, a]], [Q::zero(), Q::zero()])
    }

    /// `Y ↦ Y + tX`.
    pub fn shear(t: Q) -> Self {
        Self::from_block([[Q::one(), t], [Q::zero(), Q::one()]], [Q::zero(), Q::zero()]).expect("unimodular block")
    }

    /// `X ↔ Y, Z ↦ −Z`.
    pub fn swap() -> Self {
        Self::from_block([[Q::zero(), Q::one()], [Q::one(), Q::zero()]], [Q::zero(), Q::zero()])
            .expect("invertible block")
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.matrix
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            matrix: mat3_mul(&self.matrix, &other.matrix),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            matrix: inverse3(&self.matrix).expect("automorphisms are invertible"),
        }
    }

    /// `φ A φ⁻¹`.
    pub fn conjugate(&self, a: &Derivation) -> Derivation {
        let inv = inverse3(&self.matrix).expect("automorphisms are invertible");
        let m = mat3_mul(&mat3_mul(&self.matrix, a.matrix()), &inv);
        Derivation::new(m).expect("conjugate of a derivation by an automorphism")
    }
}

/// `φ[u,w] = [φu, φw]` on all basis pairs, and `φ` invertible.
pub fn is_automorphism(m: &Mat3) -> bool {
    if det3(m).is_zero() {
        return false;
    }
    let e = |i: usize| -> Vec3 { std::array::from_fn(|k| if k == i { Q::one() } else { Q::zero() }) };
    for i in 0..3 {
        for j in 0..3 {
            let lhs = mat3_apply(m, &heis_bracket(&e(i), &e(j)));
            let rhs = heis_bracket(&mat3_apply(m, &e(i)), &mat3_apply(m, &e(j)));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Result of bringing a non-unimodular derivation to `[[1,0,0],[0,0,1],[0,b,1]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalForm {
    pub canonical: Derivation,
    pub b: Q,
    /// Factor `1/tr(Ā)` applied to the input.
    pub scale: Q,
    /// The scale was negative: the one-parameter group runs backwards.
    pub orientation_reversed: bool,
    /// Automorphism whose basis puts the scaled block in companion form.
    pub change_of_basis: HeisAutomorphism,
}

/// Scales to `tr(Ā) = 1`, conjugates `Ā` to companion form and drops the
/// inner part `ad_u` (a change `T → T + u` of the extension generator).
pub fn normalize_to_canonical(a: &Derivation) -> Result<NormalForm> {
    let tr = a.quotient_trace();
    if tr.is_zero() {
        return Err(Error::UnimodularInput);
    }
    if a.has_scalar_quotient() {
        return Err(Error::NoInvariantMetric(
            "Ā acts by homotheties; every non-central W is an eigenvector".into(),
        ));
    }
    let scale = tr.recip();
    let scaled = a.scaled(&scale);
    let block = scaled.quotient_block();
    // cyclic vector: the first of e_X, e_Y, e_X + e_Y that is not an eigenvector
    let apply2 = |v: &[Q; 2]| -> [Q; 2] {
        [
            &block[0][0] * &v[0] + &block[0][1] * &v[1],
            &block[1][0] * &v[0] + &block[1][1] * &v[1],
        ]
    };
    let ex = [Q::one(), Q::zero()];
    let ey = [Q::zero(), Q::one()];
    let is_eigen = |v: &[Q; 2]| {
        let w = apply2(v);
        (&v[0] * &w[1] - &v[1] * &w[0]).is_zero()
    };
    let exy = [Q::one(), Q::one()];
    let v = [ex, ey, exy]
        .into_iter()
        .find(|v| !is_eigen(v))
        .expect("a non-scalar 2x2 block has a cyclic vector among e_X, e_Y, e_X + e_Y");
    let av = apply2(&v);
    // X' = (Ā − I)v, Y' = v  ⇒  Ā X' = b Y', Ā Y' = X' + Y'
    let xp = [&av[0] - &v[0], &av[1] - &v[1]];
    let p: Mat2 = [[xp[0].clone(), v[0].clone()], [xp[1].clone(), v[1].clone()]];
    let phi = HeisAutomorphism::from_block(p, [Q::zero(), Q::zero()])?;
    let in_new_basis = phi.inverse().conjugate(&scaled);
    let nb = in_new_basis.quotient_block();
    let b = nb[1][0].clone();
    let canonical = Derivation::from_block(nb, [Q::zero(), Q::zero()]);
    debug_assert_eq!(canonical, Derivation::canonical(b.clone()));
    debug_assert_eq!(b, -scaled.quotient_det());
    Ok(NormalForm {
        canonical,
        b,
        orientation_reversed: scale.is_negative(),
        scale,
        change_of_basis: phi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn derivation_law_examples() {
        assert!(is_derivation(&mat3_from_i64([[2, 0, 0], [0, 1, 1], [0, 0, 1]])));
        assert!(!is_derivation(&identity3()));
        assert!(is_derivation(&mat3_from_i64([[1, 0, 0], [0, 0, 1], [0, 3, 1]])));
        assert!(!is_derivation(&mat3_from_i64([[2, 0, 0], [1, 1, 0], [0, 0, 1]])));
    }

    #[test]
    fn column_shortcut_matches_bracket_law() {
        let samples = [
            [[2, 0, 0], [0, 1, 1], [0, 0, 1]],
            [[1, 0, 0], [0, 1, 1], [0, 0, 1]],
            [[0, 5, -2], [0, 3, 1], [0, 4, -3]],
            [[0, 0, 0], [1, 0, 0], [0, 0, 0]],
            [[3, 1, 1], [0, 1, 7], [0, -2, 2]],
        ];
        for m in samples {
            let m = mat3_from_i64(m);
            assert_eq!(is_derivation(&m), Derivation::law_residual(&m).is_zero(), "{m:?}");
        }
    }

    #[test]
    fn parabolic_brackets() {
        let alg = extend_algebra(&Derivation::parabolic());
        let br = |i, j| alg.bracket(&basis4(i), &basis4(j));
        assert_eq!(br(T, Z), [q(2), q(0), q(0), q(0)]);
        assert_eq!(br(T, X), [q(0), q(1), q(0), q(0)]);
        assert_eq!(br(T, Y), [q(0), q(1), q(1), q(0)]);
        assert_eq!(br(X, Y), [q(1), q(0), q(0), q(0)]);
        assert_eq!(br(Y, X), [q(-1), q(0), q(0), q(0)]);
    }

    #[test]
    fn elliptic_brackets() {
        let alg = extend_algebra(&Derivation::elliptic(q(1)));
        let br = |i, j| alg.bracket(&basis4(i), &basis4(j));
        assert_eq!(br(T, X), [q(0), q(1), q(1), q(0)]);
        assert_eq!(br(T, Y), [q(0), q(-1), q(1), q(0)]);
        assert_eq!(br(T, Z), [q(2), q(0), q(0), q(0)]);
    }

    #[test]
    fn zero_derivation_is_direct_sum() {
        let alg = extend_algebra(&Derivation::new(zero3()).unwrap());
        for w in 0..3 {
            assert!(alg.bracket(&basis4(T), &basis4(w)).iter().all(Zero::is_zero));
        }
        assert_eq!(alg.bracket(&basis4(X), &basis4(Y))[Z], q(1));
    }

    #[test]
    fn jacobi_examples() {
        assert!(jacobi_residual(&extend_algebra(&Derivation::parabolic())).is_zero());
        assert!(jacobi_residual(&ExtensionAlgebra::abelian()).is_zero());
        // Rescaling [X,Y] consistently keeps Jacobi; corrupting one entry breaks it.
        let mut rescaled = extend_algebra(&Derivation::hyperbolic(q(2)));
        rescaled.structure_constants[X][Y][Z] = q(2);
        rescaled.structure_constants[Y][X][Z] = q(-2);
        assert!(jacobi_residual(&rescaled).is_zero());
        let mut corrupt = extend_algebra(&Derivation::hyperbolic(q(2)));
        corrupt.structure_constants[X][Y][Z] = q(2);
        // (T,X,Y): [[T,X],Y] + [[X,Y],T] + [[Y,T],X] = 2Z − 6Z + 2Z
        let r = jacobi_residual(&corrupt);
        assert_eq!(r, q(2));
    }

    #[test]
    fn spectrum_examples() {
        let s = spectrum_on_quotient(&Derivation::rosen(q(2)).scaled(&q(1)));
        assert_eq!(s.kind, SpectrumKind::RealDiagonalizable);
        let d = Derivation::from_block([[q(1), q(0)], [q(0), q(2)]], [q(0), q(0)]);
        let s = spectrum_on_quotient(&d);
        assert_eq!(
            (s.kind, s.det.clone(), s.trace.clone()),
            (SpectrumKind::RealDiagonalizable, q(2), q(3))
        );
        let s = spectrum_on_quotient(&Derivation::elliptic(q(1)));
        assert_eq!(
            (s.kind, s.det.clone(), s.discriminant.clone()),
            (SpectrumKind::Complex, q(2), q(-4))
        );
        assert_eq!(
            spectrum_on_quotient(&Derivation::nilpotent()).kind,
            SpectrumKind::NilpotentNonzero
        );
        assert_eq!(
            spectrum_on_quotient(&Derivation::parabolic()).kind,
            SpectrumKind::RealNondiagonalizable
        );
        assert_eq!(
            spectrum_on_quotient(&Derivation::new(zero3()).unwrap()).kind,
            SpectrumKind::Zero
        );
        let homothety = Derivation::from_block([[q(3), q(0)], [q(0), q(3)]], [q(0), q(0)]);
        assert_eq!(spectrum_on_quotient(&homothety).kind, SpectrumKind::RealDiagonalizable);
    }

    #[test]
    fn normalize_examples() {
        let nf = normalize_to_canonical(&Derivation::rosen(q(-1))).unwrap();
        assert_eq!(nf.b, q(2));
        assert_eq!(nf.canonical, Derivation::canonical(q(2)));

        let c3 = Derivation::canonical(q(3));
        let nf = normalize_to_canonical(&c3).unwrap();
        assert_eq!((nf.canonical.clone(), nf.b.clone()), (c3, q(3)));

        let doubled = Derivation::canonical(frac(-1, 4)).scaled(&q(2));
        let nf = normalize_to_canonical(&doubled).unwrap();
        assert_eq!(nf.b, frac(-1, 4));
        assert!(!nf.orientation_reversed);

        let reversed = Derivation::canonical(q(5)).scaled(&q(-3));
        let nf = normalize_to_canonical(&reversed).unwrap();
        assert_eq!(nf.b, q(5));
        assert!(nf.orientation_reversed);
    }

    #[test]
    fn normalize_errors() {
        assert_eq!(
            normalize_to_canonical(&Derivation::nilpotent()),
            Err(Error::UnimodularInput)
        );
        let homothety = Derivation::from_block([[q(1), q(0)], [q(0), q(1)]], [q(0), q(0)]);
        assert!(matches!(
            normalize_to_canonical(&homothety),
            Err(Error::NoInvariantMetric(_))
        ));
    }

    #[test]
    fn normalize_drops_inner_part() {
        let a = Derivation::from_block([[q(1), q(0)], [q(0), q(-2)]], [q(4), q(-7)]);
        let nf = normalize_to_canonical(&a).unwrap();
        // tr = −1, normalized block diag(−1, 2): b = −det = 2
        assert_eq!(nf.b, q(2));
        assert!(nf.orientation_reversed);
    }

    #[test]
    fn automorphism_families_are_automorphisms() {
        let fams = [
            HeisAutomorphism::diagonal(q(2), frac(-1, 3)).unwrap(),
            HeisAutomorphism::inner(q(5), q(-2)),
            HeisAutomorphism::similarity(q(1), q(2)).unwrap(),
            HeisAutomorphism::shear(frac(3, 7)),
            HeisAutomorphism::swap(),
        ];
        for phi in fams {
            assert!(is_automorphism(phi.matrix()), "{phi:?}");
            let back = phi.compose(&phi.inverse());
            assert_eq!(back.matrix(), &identity3());
        }
        assert!(!is_automorphism(&mat3_from_i64([[1, 0, 0], [0, 2, 0], [0, 0, 1]])));
    }

    #[test]
    fn derivation_json_forms() {
        let d: Derivation = serde_json::from_str(r#"[["1","0","0"],["0","0","1"],["0","1/4",1]]"#).unwrap();
        assert_eq!(d, Derivation::canonical(frac(1, 4)));
        let out = serde_json::to_string(&d).unwrap();
        assert_eq!(out, r#"[["1","0","0"],["0","0","1"],["0","1/4","1"]]"#);
        assert!(serde_json::from_str::<Derivation>(r#"[["1","0"],["0","0","1"],["0","1","1"]]"#).is_err());
        assert!(serde_json::from_str::<Derivation>(r#"[[1,0,0],[0,1,0],[0,0,1]]"#).is_err());
    }
}
