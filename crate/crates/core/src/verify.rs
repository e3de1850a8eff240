//! The invariant suite run by `lorentz3 verify`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::classify;
use crate::error::{Error, Result};
use crate::geodesic::{self, CompletenessOptions, Controls, Termination, Verdict};
use crate::geometry::{
    self, curvature, killing, oracle, transform, Chart, Grid, PlaneWaveChart, RosenChart, Tensor4, U, V,
};
use crate::lie::{self, Derivation, HeisAutomorphism, IsotropyChoice};
use crate::metric;
use crate::rational::{frac, q, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    All,
    Lie,
    Metric,
    Geometry,
    Geodesics,
    Classifier,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "lie" => Suite::Lie,
            "metric" => Suite::Metric,
            "geometry" => Suite::Geometry,
            "geodesics" => Suite::Geodesics,
            "classifier" => Suite::Classifier,
            other => return Err(Error::InvalidArgument(format!("unknown suite '{other}'"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{mark}] {}: {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    /// Tolerance for exact-zero claims evaluated in closed form.
    pub tol: f64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

struct Ctx {
    suite: Suite,
    checks: Vec<Check>,
}

impl Ctx {
    fn check(&mut self, name: &str, run: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check {
            suite: self.suite,
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

fn within(value: f64, limit: f64) -> (bool, String) {
    (value <= limit, format!("{value:.3e} <= {limit:.0e}"))
}

fn diff4(a: &Tensor4, b: &Tensor4) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    m = m.max((a[i][j][k][l] - b[i][j][k][l]).abs());
                }
            }
        }
    }
    m
}

fn sample_derivations() -> Vec<Derivation> {
    vec![
        Derivation::hyperbolic(q(2)),
        Derivation::hyperbolic(-frac(1, 3)),
        Derivation::parabolic(),
        Derivation::elliptic(q(1)),
        Derivation::elliptic(frac(-2, 5)),
        Derivation::nilpotent(),
        Derivation::canonical(q(2)),
        Derivation::canonical(-frac(1, 4)),
        Derivation::rosen(q(-1)),
        Derivation::from_i64([[0, 0, 0], [0, 1, 0], [0, 0, -1]]).expect("derivation"),
        Derivation::from_i64([[0, 0, 0], [0, 0, -1], [0, 1, 0]]).expect("derivation"),
        Derivation::from_i64([[3, 2, -1], [0, 1, 4], [0, -1, 2]]).expect("derivation"),
    ]
}

fn lie_checks(ctx: &mut Ctx) {
    ctx.check("extension algebras satisfy Jacobi", || {
        let worst = sample_derivations()
            .iter()
            .map(|a| lie::jacobi_residual(&lie::extend_algebra(a)))
            .fold(Q::zero(), |m, r| if r > m { r } else { m });
        Ok((worst.is_zero(), format!("max residual {worst}")))
    });
    ctx.check("normal form reproduces b", || {
        for a in sample_derivations().iter().filter(|a| !a.is_unimodular()) {
            let nf = lie::normalize_to_canonical(a)?;
            if nf.b != classify::invariant_b(a)? || nf.canonical != Derivation::canonical(nf.b.clone()) {
                return Ok((false, format!("{a:?}")));
            }
        }
        Ok((true, "exact".into()))
    });
}

fn metric_checks(ctx: &mut Ctx) {
    ctx.check("metric tables", || {
        let cases = [
            (Derivation::hyperbolic(q(2)), IsotropyChoice::x_plus_y(), q(1)),
            (Derivation::hyperbolic(q(3)), IsotropyChoice::x_plus_y(), frac(1, 2)),
            (Derivation::parabolic(), IsotropyChoice::y(), q(-1)),
            (Derivation::elliptic(q(1)), IsotropyChoice::x(), q(1)),
            (Derivation::nilpotent(), IsotropyChoice::y(), q(-1)),
        ];
        for (a, w, g_tz) in cases {
            let m = metric::build_invariant_metric(&a, &w)?;
            let ok = m.gram[0][2] == g_tz
                && m.gram[1][1] == q(1)
                && m.gram[0][0].is_zero()
                && m.signature().is_lorentz()
                && m.skew_residual().is_zero();
            if !ok {
                return Ok((false, format!("{a:?} with {w:?}")));
            }
        }
        Ok((true, "g(T,Z) = 1/(b-1), -1, 1, -1; Lorentz; skew 0".into()))
    });
    ctx.check("nilpotency order agrees with eigenvector criterion", || {
        let ws = [
            IsotropyChoice::x(),
            IsotropyChoice::y(),
            IsotropyChoice::x_plus_y(),
            IsotropyChoice::from_i64(1, 2, -1)?,
        ];
        let mut count = 0;
        let range = -1..=1;
        for a11 in range.clone() {
            for a12 in range.clone() {
                for a21 in range.clone() {
                    for a22 in range.clone() {
                        let a = Derivation::from_block([[q(a11), q(a12)], [q(a21), q(a22)]], [q(1), q(0)]);
                        for w in &ws {
                            let (m, _) = metric::ad_on_quotient(&a, w);
                            let by_order = metric::nilpotency_order(&m) == Some(3);
                            if by_order != metric::eigenvector_criterion(&a, w) {
                                return Ok((false, format!("{a:?} {w:?}")));
                            }
                            if by_order {
                                let g = metric::build_invariant_metric(&a, w)?;
                                if !g.signature().is_lorentz() || !g.skew_residual().is_zero() {
                                    return Ok((false, format!("metric {a:?} {w:?}")));
                                }
                            }
                            count += 1;
                        }
                    }
                }
            }
        }
        Ok((true, format!("{count} cases")))
    });
}

fn all_charts() -> Vec<Box<dyn Chart>> {
    vec![
        Box::new(PlaneWaveChart::power_law(2.0)),
        Box::new(PlaneWaveChart::power_law(1.0)),
        Box::new(PlaneWaveChart::power_law(-0.25)),
        Box::new(PlaneWaveChart::power_law(-0.5)),
        Box::new(PlaneWaveChart::power_law(0.0)),
        Box::new(PlaneWaveChart::constant(1.0)),
        Box::new(PlaneWaveChart::constant(-1.0)),
        Box::new(PlaneWaveChart::constant(0.0)),
        Box::new(RosenChart::power(-1.0)),
        Box::new(RosenChart::power(0.5)),
        Box::new(RosenChart::power(2.0)),
    ]
}

fn geometry_checks(ctx: &mut Ctx, tol: f64) {
    let grid = Grid::standard(5);
    ctx.check("closed forms match finite-difference oracle", || {
        let mut worst = [0.0f64; 2];
        for chart in all_charts() {
            for p in grid.points() {
                let g = chart.christoffels(&p)?;
                let go = oracle::christoffels(chart.as_ref(), &p)?;
                for k in 0..3 {
                    for i in 0..3 {
                        for j in 0..3 {
                            worst[0] = worst[0].max((g[k][i][j] - go[k][i][j]).abs());
                        }
                    }
                }
                worst[1] = worst[1].max(diff4(&chart.riemann(&p)?, &oracle::riemann(chart.as_ref(), &p)?));
            }
        }
        Ok((
            worst[0] <= 1e-6 && worst[1] <= 1e-6,
            format!("Γ {:.2e}, R {:.2e} (limit 1e-6)", worst[0], worst[1]),
        ))
    });
    ctx.check("∇R matches oracle", || {
        let mut worst: f64 = 0.0;
        for chart in all_charts() {
            for p in [[0.6, 0.2, -0.7], [1.4, -0.5, 0.9]] {
                let a = curvature::nabla_riemann(chart.as_ref(), &p)?;
                let b = oracle::nabla_riemann(chart.as_ref(), &p)?;
                for k in 0..3 {
                    worst = worst.max(diff4(&a[k], &b[k]));
                }
            }
        }
        Ok(within(worst, 1e-5))
    });
    ctx.check("Riemann symmetries, scalar flatness, parallel ∂v", || {
        let mut worst: f64 = 0.0;
        for chart in all_charts() {
            for p in grid.points() {
                worst = worst.max(curvature::symmetry_residual(&chart.riemann(&p)?));
                worst = worst.max(curvature::scalar_curvature(chart.as_ref(), &p)?.abs());
                let gamma = chart.christoffels(&p)?;
                for m in 0..3 {
                    for k in 0..3 {
                        worst = worst.max(gamma[m][k][V].abs());
                    }
                }
            }
        }
        Ok(within(worst, tol))
    });
    ctx.check("Killing fields", || {
        let mut worst: f64 = 0.0;
        for b in [2.0, 1.0, -0.25, -0.5, 0.0] {
            let chart = PlaneWaveChart::power_law(b);
            for f in killing::brinkmann_killing_fields(&chart) {
                worst = worst.max(killing::killing_residual(&chart, &f, &grid));
            }
        }
        for h in [1.0, -1.0, 0.0] {
            let chart = PlaneWaveChart::constant(h);
            for f in killing::brinkmann_killing_fields(&chart) {
                worst = worst.max(killing::killing_residual(&chart, &f, &grid));
            }
        }
        for alpha in [-1.0, 0.0, 0.5, 2.0] {
            let chart = RosenChart::power(alpha);
            for f in killing::heis_killing_fields(&chart) {
                worst = worst.max(killing::killing_residual(&chart, &f, &grid));
            }
        }
        Ok(within(worst, tol))
    });
    ctx.check("Heisenberg brackets of Rosen Killing fields", || {
        let mut worst: f64 = 0.0;
        for alpha in [-1.0, 0.0, 2.0] {
            let f = killing::heis_killing_fields(&RosenChart::power(alpha));
            for p in grid.points() {
                let c = [
                    killing::commutator(&f[0], &f[1], &p),
                    killing::commutator(&f[0], &f[2], &p),
                    killing::commutator(&f[1], &f[2], &p),
                ];
                let expect = [[0.0; 3], [0.0; 3], f[0].value(&p)];
                for (got, want) in c.iter().zip(expect.iter()) {
                    for k in 0..3 {
                        worst = worst.max((got[k] - want[k]).abs());
                    }
                }
            }
        }
        Ok(within(worst, 1e-8))
    });
    ctx.check("Rosen to Brinkmann pullback", || {
        let mut worst = [0.0f64; 2];
        for alpha in [-1.0, -0.5, 0.5, 2.0, 0.0, 1.0] {
            let c = transform::rosen_to_brinkmann(alpha).check(&grid)?;
            let g = transform::GeneralRosenBrinkmann::power(alpha).check(&grid)?;
            worst[0] = worst[0].max(c.pullback_residual).max(g.pullback_residual);
            worst[1] = worst[1].max(c.roundtrip_residual).max(g.roundtrip_residual);
        }
        Ok((
            worst[0] <= tol && worst[1] <= 1e-12,
            format!("pullback {:.2e}, roundtrip {:.2e}", worst[0], worst[1]),
        ))
    });
}

fn geodesic_checks(ctx: &mut Ctx) {
    let controls = Controls::default();
    ctx.check("vertical null geodesic reaches u = 0 at affine time 1", || {
        let r = geodesic::integrate_geodesic(
            &PlaneWaveChart::power_law(2.0),
            &geodesic::vertical_null(1.0, 0.0, -1.0),
            10.0,
            &controls,
        )?;
        let ok = r.terminated == Termination::HitDomainBoundary && (r.affine_span_reached - 1.0).abs() <= 1e-6;
        Ok((ok, format!("{:?} at {}", r.terminated, r.affine_span_reached)))
    });
    ctx.check("closed-form Euler solutions", || {
        let mut worst: f64 = 0.0;
        for b in [2.0, 1.0, 0.0, -0.25, -0.5] {
            worst = worst.max(geodesic::closed_form_gap(b, 1.0, 10.0, 0.1, 0.0, &controls)?);
            worst = worst.max(geodesic::closed_form_gap(b, 1.0, 10.0, -0.2, 0.3, &controls)?);
        }
        Ok(within(worst, 1e-8))
    });
    ctx.check("norm conservation", || {
        let mut worst: f64 = 0.0;
        let chart = PlaneWaveChart::power_law(2.0);
        for init in geodesic::sample_family(&chart, geodesic::Family::Timelike, 6, 11) {
            let span = if init.velocity[U] > 0.0 { 8.0 } else { -8.0 };
            let r = geodesic::integrate_geodesic(&chart, &init, span, &controls)?;
            worst = worst.max(r.norm_drift);
        }
        Ok(within(worst, 1e-8))
    });
    ctx.check("completeness verdicts", || {
        let opts = CompletenessOptions::default();
        let pw = geodesic::completeness_report(&PlaneWaveChart::power_law(2.0), &opts);
        let small = CompletenessOptions {
            samples_per_family: 4,
            ..opts
        };
        let cw = geodesic::completeness_report(&PlaneWaveChart::constant(1.0), &small);
        let ok = pw.families["timelike"].verdict == Verdict::Incomplete
            && pw.families["null"].verdict == Verdict::Incomplete
            && pw.families["v-orbit"].verdict == Verdict::Complete
            && ["timelike", "null", "v-orbit"]
                .iter()
                .all(|f| cw.families[f].verdict == Verdict::Complete);
        Ok((
            ok,
            "power law: timelike/null incomplete, v-orbits complete; Cahen-Wallach complete".into(),
        ))
    });
}

fn classifier_checks(ctx: &mut Ctx) {
    ctx.check("compact-model verdicts", || {
        let cases: Vec<(Derivation, bool)> = vec![
            (Derivation::nilpotent(), true),
            (Derivation::canonical(q(0)), false),
            (Derivation::from_i64([[0, 0, 0], [0, 1, 0], [0, 0, -1]])?, false),
            (Derivation::from_i64([[0, 0, 0], [0, 0, -1], [0, 1, 0]])?, false),
            (Derivation::canonical(q(2)), true),
            (Derivation::canonical(q(1)), false),
            (Derivation::canonical(-frac(1, 4)), false),
            (Derivation::canonical(-frac(1, 2)), false),
        ];
        for (a, expect) in cases {
            if classify::space_report(&a)?.compact_model != expect {
                return Ok((false, format!("{a:?}")));
            }
        }
        Ok((true, "exactly MinkowskiFlat and b = 2".into()))
    });
    ctx.check("invariance under scaling and automorphisms", || {
        let autos = [
            HeisAutomorphism::shear(q(3)),
            HeisAutomorphism::swap(),
            HeisAutomorphism::inner(q(2), q(-1)),
            HeisAutomorphism::diagonal(q(2), -frac(1, 3))?,
            HeisAutomorphism::similarity(q(1), q(2))?,
        ];
        for a in sample_derivations() {
            let c = classify::classify(&a)?;
            for l in [q(-3), frac(1, 2), q(7)] {
                if classify::classify(&a.scaled(&l))? != c {
                    return Ok((false, format!("scaling {a:?}")));
                }
            }
            for phi in &autos {
                if classify::classify(&phi.conjugate(&a))? != c {
                    return Ok((false, format!("conjugation {a:?}")));
                }
            }
        }
        Ok((true, "exact".into()))
    });
    ctx.check("flags agree with chart geometry", || {
        let grid = Grid::standard(3);
        for a in sample_derivations() {
            let r = classify::space_report(&a)?;
            let chart = r.class.chart();
            if r.flat != geometry::is_flat(&chart, &grid, 1e-10) {
                return Ok((false, format!("flat flag {a:?}")));
            }
            let mut nabla: f64 = 0.0;
            for p in grid.points() {
                nabla = nabla.max(oracle::covariant_r_derivative(&chart, &p, &[1.0, 0.0, 0.0])?);
            }
            if r.locally_symmetric != (nabla <= 1e-5) {
                return Ok((false, format!("locally_symmetric flag {a:?}: ∇R {nabla:e}")));
            }
            if r.complete != r.symmetric {
                return Ok((false, format!("complete flag {a:?}")));
            }
        }
        Ok((true, "flat ⇔ R = 0, locally symmetric ⇔ ∇R = 0".into()))
    });
    ctx.check("groups_isomorphic is an equivalence relation", || {
        let mut set = sample_derivations();
        set.push(Derivation::canonical(q(2)).scaled(&q(-2)));
        set.push(Derivation::rosen(frac(1, 3)));
        let n = set.len();
        let mut rel = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                rel[i][j] = classify::groups_isomorphic(&set[i], &set[j])?;
            }
        }
        for i in 0..n {
            if !rel[i][i] {
                return Ok((false, "reflexivity".into()));
            }
            for j in 0..n {
                if rel[i][j] != rel[j][i] {
                    return Ok((false, "symmetry".into()));
                }
                for k in 0..n {
                    if rel[i][j] && rel[j][k] && !rel[i][k] {
                        return Ok((false, "transitivity".into()));
                    }
                }
            }
        }
        Ok((true, format!("{n} derivations")))
    });
    ctx.check("b of diag(1, 1-α, α) is α² - α", || {
        for (n, d) in [(-1, 1), (1, 2), (0, 1), (1, 1), (2, 1), (-1, 2), (3, 7), (-5, 3)] {
            let alpha = frac(n, d);
            let b = classify::invariant_b(&Derivation::rosen(alpha.clone()))?;
            if b != &alpha * &alpha - &alpha {
                return Ok((false, format!("α = {alpha}")));
            }
        }
        Ok((true, "exact".into()))
    });
}

/// Default tolerance for exact-zero claims evaluated in closed form.
pub const DEFAULT_TOL: f64 = 1e-9;

pub fn run(suite: Suite, tol: f64) -> VerifyReport {
    let mut checks = Vec::new();
    let all = suite == Suite::All;
    let mut part = |s: Suite, f: &dyn Fn(&mut Ctx)| {
        if all || suite == s {
            let mut ctx = Ctx {
                suite: s,
                checks: Vec::new(),
            };
            f(&mut ctx);
            checks.extend(ctx.checks);
        }
    };
    part(Suite::Lie, &lie_checks);
    part(Suite::Metric, &metric_checks);
    part(Suite::Geometry, &|c| geometry_checks(c, tol));
    part(Suite::Geodesics, &geodesic_checks);
    part(Suite::Classifier, &classifier_checks);
    VerifyReport {
        suite,
        tol,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass() {
        for suite in [Suite::Lie, Suite::Metric, Suite::Geometry, Suite::Classifier] {
            let report = run(suite, DEFAULT_TOL);
            for c in &report.checks {
                assert!(c.passed, "{c}");
            }
            assert!(report.passed && !report.checks.is_empty());
        }
    }

    #[test]
    fn suite_names() {
        assert_eq!("geodesics".parse::<Suite>().unwrap(), Suite::Geodesics);
        assert!("everything".parse::<Suite>().is_err());
    }
}
