//! Geodesics of plane-wave charts.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{inner, Chart, ChartDescriptor, PlaneWaveChart, Point, Profile, U, V, X};

/// `|g(γ′,γ′)|` below this counts as null.
pub const NULL_BAND: f64 = 1e-12;
pub const DEFAULT_HORIZON: f64 = 1e4;
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeodesicState {
    pub position: Point,
    pub velocity: [f64; 3],
}

impl GeodesicState {
    pub fn new(position: Point, velocity: [f64; 3]) -> Self {
        GeodesicState { position, velocity }
    }

    fn pack(&self) -> [f64; 6] {
        let (p, w) = (self.position, self.velocity);
        [p[0], p[1], p[2], w[0], w[1], w[2]]
    }

    fn unpack(y: &[f64; 6]) -> Self {
        GeodesicState::new([y[0], y[1], y[2]], [y[3], y[4], y[5]])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CausalType {
    Timelike,
    Null,
    Spacelike,
}

impl CausalType {
    pub fn as_str(&self) -> &'static str {
        match self {
            CausalType::Timelike => "timelike",
            CausalType::Null => "null",
            CausalType::Spacelike => "spacelike",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    CompletedSpan,
    HitDomainBoundary,
    StepUnderflow,
}

/// `g(γ′, γ′)`.
pub fn velocity_norm(chart: &dyn Chart, state: &GeodesicState) -> Result<f64> {
    Ok(inner(
        &chart.metric_at(&state.position)?,
        &state.velocity,
        &state.velocity,
    ))
}

pub fn causal_type(chart: &dyn Chart, state: &GeodesicState) -> Result<CausalType> {
    let n = velocity_norm(chart, state)?;
    Ok(if n.abs() <= NULL_BAND {
        CausalType::Null
    } else if n < 0.0 {
        CausalType::Timelike
    } else {
        CausalType::Spacelike
    })
}

/// `(γ̇, γ̈)` with `γ̈^k = −Γ^k_{ij} γ̇^i γ̇^j`.
pub fn geodesic_rhs(chart: &dyn Chart, state: &GeodesicState) -> Result<GeodesicState> {
    let gamma = chart.christoffels(&state.position)?;
    let w = state.velocity;
    let acc = std::array::from_fn(|k| {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s -= gamma[k][i][j] * w[i] * w[j];
            }
        }
        s
    });
    Ok(GeodesicState::new(w, acc))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Controls {
    pub rtol: f64,
    pub atol: f64,
    /// Integration stops at `u = u_min` on charts defined for `u > 0`.
    pub u_min: f64,
    pub initial_step: f64,
    pub min_step: f64,
    pub max_steps: usize,
    /// Record samples at multiples of this affine step instead of at every
    /// accepted step.
    pub output_step: Option<f64>,
}

impl Default for Controls {
    fn default() -> Self {
        Controls {
            rtol: 1e-10,
            atol: 1e-12,
            u_min: 1e-8,
            initial_step: 1e-3,
            min_step: 1e-14,
            max_steps: 2_000_000,
            output_step: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub state: GeodesicState,
    pub norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeodesicResult {
    pub samples: Vec<Sample>,
    pub causal_type: CausalType,
    pub terminated: Termination,
    pub affine_span_reached: f64,
    /// `max |g(γ′,γ′) − g₀| / max(|g₀|, 1)` over the samples.
    pub norm_drift: f64,
}

impl GeodesicResult {
    pub fn last(&self) -> &Sample {
        self.samples.last().expect("a result always holds the initial sample")
    }

    /// `Err(StepUnderflow)` when the step floor ended the run.
    pub fn ensure_no_underflow(&self) -> Result<()> {
        match self.terminated {
            Termination::StepUnderflow => Err(Error::StepUnderflow {
                t: self.affine_span_reached,
            }),
            _ => Ok(()),
        }
    }
}

// Dormand–Prince 5(4).
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Right-hand side `y' = f(t, y)`; `None` outside the domain.
type Rhs<'a, const N: usize> = dyn Fn(f64, &[f64; N]) -> Option<[f64; N]> + 'a;

/// One step; `None` if a stage left the domain.
fn dopri_step<const N: usize>(rhs: &Rhs<'_, N>, t: f64, y: &[f64; N], h: f64) -> Option<([f64; N], [f64; N])> {
    let mut k = [[0.0; N]; 7];
    for s in 0..7 {
        let mut ys = *y;
        for (j, kj) in k.iter().enumerate().take(s) {
            for i in 0..N {
                ys[i] += h * A[s][j] * kj[i];
            }
        }
        k[s] = rhs(t + C[s] * h, &ys)?;
    }
    let mut y_new = *y;
    let mut err = [0.0; N];
    for i in 0..N {
        for s in 0..7 {
            let b = if s < 6 { A[6][s] } else { 0.0 };
            y_new[i] += h * b * k[s][i];
            err[i] += h * E[s] * k[s][i];
        }
    }
    Some((y_new, err))
}

struct Hooks<'a, const N: usize> {
    rhs: &'a Rhs<'a, N>,
    /// Affine distance to the domain boundary along the direction of
    /// integration, if it is approached.
    boundary: &'a dyn Fn(f64, &[f64; N]) -> Option<f64>,
    post_step: &'a mut dyn FnMut(&mut [f64; N]),
    record: &'a mut dyn FnMut(f64, &[f64; N]),
}

fn drive<const N: usize>(y0: [f64; N], span: f64, c: &Controls, hooks: Hooks<'_, N>) -> (Termination, f64) {
    let Hooks {
        rhs,
        boundary,
        post_step,
        record,
    } = hooks;
    let dir = if span < 0.0 { -1.0 } else { 1.0 };
    let total = span.abs();
    let (mut s, mut y) = (0.0f64, y0);
    record(0.0, &y);
    let mut h = c.initial_step.min(total.max(f64::MIN_POSITIVE));
    let mut next_output = c.output_step;
    for _ in 0..c.max_steps {
        let remaining = total - s;
        if remaining <= 0.0 {
            return (Termination::CompletedSpan, dir * s);
        }
        let to_boundary = boundary(dir * s, &y);
        if let Some(tb) = to_boundary {
            if tb <= c.min_step {
                record(dir * (s + tb), &y);
                return (Termination::HitDomainBoundary, dir * (s + tb));
            }
        }
        let mut hh = h.min(remaining);
        if let Some(tb) = to_boundary {
            hh = hh.min(tb);
        }
        if let Some(o) = next_output {
            hh = hh.min(o - s);
        }
        if hh < c.min_step * s.abs().max(1.0) {
            return (Termination::StepUnderflow, dir * s);
        }
        let capped = hh < h;
        let attempt = dopri_step(rhs, dir * s, &y, dir * hh);
        let err = match &attempt {
            Some((y_new, e)) => (0..N)
                .map(|i| e[i].abs() / (c.atol + c.rtol * y[i].abs().max(y_new[i].abs())))
                .fold(0.0, f64::max),
            None => f64::INFINITY,
        };
        if err.is_finite() && err <= 1.0 {
            let (y_new, _) = attempt.expect("accepted steps have a value");
            y = y_new;
            post_step(&mut y);
            let lands = matches!(to_boundary, Some(tb) if hh >= tb);
            s = match (lands, next_output) {
                (true, _) => s + to_boundary.unwrap_or(hh),
                _ if hh == remaining => total,
                (false, Some(o)) if hh == o - s => o,
                _ => s + hh,
            };
            let at_output = matches!(next_output, Some(o) if s >= o);
            if lands || s >= total || c.output_step.is_none() || at_output {
                record(dir * s, &y);
            }
            if at_output {
                next_output = next_output.map(|o| o + c.output_step.unwrap_or(0.0));
            }
            if lands {
                return (Termination::HitDomainBoundary, dir * s);
            }
            let grow = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            h = if capped { h.max(hh * grow) } else { hh * grow };
        } else {
            let shrink = if err.is_finite() {
                (0.9 * err.powf(-0.2)).clamp(0.1, 0.9)
            } else {
                0.1
            };
            h = hh * shrink;
        }
    }
    (Termination::StepUnderflow, dir * s)
}

fn boundary_distance(positive_u: bool, u_min: f64, u: f64, u_dot: f64, dir: f64) -> Option<f64> {
    if positive_u && u_dot * dir < 0.0 {
        Some(((u - u_min) / u_dot.abs()).max(0.0))
    } else {
        None
    }
}

/// Integrates over affine parameter `[0, span]` (negative `span` runs
/// backwards). `u` is affine in both chart families, so the boundary
/// `u = u_min` is located exactly.
pub fn integrate_geodesic(
    chart: &dyn Chart,
    initial: &GeodesicState,
    span: f64,
    controls: &Controls,
) -> Result<GeodesicResult> {
    if !span.is_finite() {
        return Err(Error::InvalidArgument(format!("span must be finite, got {span}")));
    }
    let n0 = velocity_norm(chart, initial)?;
    let ctype = causal_type(chart, initial)?;
    if chart.positive_u_domain() && initial.position[U] <= controls.u_min {
        return Err(Error::DomainError {
            point: initial.position,
            reason: format!("initial u must exceed u_min = {}", controls.u_min),
        });
    }
    let dir = if span < 0.0 { -1.0 } else { 1.0 };
    let positive_u = chart.positive_u_domain();
    let rhs = |_t: f64, y: &[f64; 6]| -> Option<[f64; 6]> {
        if !y.iter().all(|v| v.is_finite()) {
            return None;
        }
        geodesic_rhs(chart, &GeodesicState::unpack(y)).ok().map(|d| d.pack())
    };
    let boundary = |_t: f64, y: &[f64; 6]| boundary_distance(positive_u, controls.u_min, y[U], y[3], dir);
    let mut samples = Vec::new();
    let mut drift: f64 = 0.0;
    let mut record = |t: f64, y: &[f64; 6]| {
        let state = GeodesicState::unpack(y);
        let norm = velocity_norm(chart, &state).unwrap_or(f64::NAN);
        drift = drift.max((norm - n0).abs() / n0.abs().max(1.0));
        samples.push(Sample { t, state, norm });
    };
    let (terminated, reached) = drive(
        initial.pack(),
        span,
        controls,
        Hooks {
            rhs: &rhs,
            boundary: &boundary,
            post_step: &mut |_| {},
            record: &mut record,
        },
    );
    Ok(GeodesicResult {
        samples,
        causal_type: ctype,
        terminated,
        affine_span_reached: reached,
        norm_drift: drift,
    })
}

/// Sup-norm gap between the integrated `x` and the Euler-basis combination
/// fitted to the initial data, for `PowerLaw(b)` geodesics with `u̇ = 1`
/// starting at `u = t0`, over `u ∈ [t0, t1]`.
pub fn closed_form_gap(b: f64, t0: f64, t1: f64, x0: f64, xdot0: f64, controls: &Controls) -> Result<f64> {
    let chart = PlaneWaveChart::power_law(b);
    let init = GeodesicState::new([t0, 0.0, x0], [1.0, 0.0, xdot0]);
    let result = integrate_geodesic(&chart, &init, t1 - t0, controls)?;
    result.ensure_no_underflow()?;
    let coeffs = crate::euler::fit(b, t0, x0, xdot0)?;
    Ok(result
        .samples
        .iter()
        .map(|s| (s.state.position[X] - crate::euler::evaluate(b, coeffs, s.state.position[U])[0]).abs())
        .fold(0.0, f64::max))
}

/// Boost `(u, v, x) ↦ (eˢu, e⁻ˢv, x)` acting on a state.
pub fn boost_state(s: f64, state: &GeodesicState) -> GeodesicState {
    let (e, f) = (s.exp(), (-s).exp());
    let (p, w) = (state.position, state.velocity);
    GeodesicState::new([e * p[U], f * p[V], p[X]], [e * w[U], f * w[V], w[X]])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Timelike,
    Null,
    Spacelike,
    /// Orbits of the parallel field `∂v`.
    VOrbit,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Timelike, Family::Null, Family::Spacelike, Family::VOrbit];

    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Timelike => "timelike",
            Family::Null => "null",
            Family::Spacelike => "spacelike",
            Family::VOrbit => "v-orbit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Complete,
    Incomplete,
    Mixed,
    Inconclusive,
    /// Spacelike families: no verdict is asserted.
    Unstated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Outcome {
    pub terminated: Termination,
    pub affine_parameter: f64,
    /// `|H(u)|` at the last point, i.e. the size of the curvature there.
    pub profile_at_end: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MemberReport {
    pub initial: GeodesicState,
    pub forward: Outcome,
    pub backward: Outcome,
    pub incomplete_directions: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyReport {
    pub verdict: Verdict,
    pub label: &'static str,
    pub members: Vec<MemberReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompletenessReport {
    pub chart: ChartDescriptor,
    pub seed: u64,
    pub horizon: f64,
    pub samples_per_family: usize,
    pub families: BTreeMap<&'static str, FamilyReport>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompletenessOptions {
    pub seed: u64,
    pub samples_per_family: usize,
    pub horizon: f64,
    pub controls: Controls,
}

impl Default for CompletenessOptions {
    /// Verdicts only need the reached affine parameter, so the tolerance is
    /// looser than for trajectories.
    fn default() -> Self {
        CompletenessOptions {
            seed: DEFAULT_SEED,
            samples_per_family: 20,
            horizon: DEFAULT_HORIZON,
            controls: Controls {
                rtol: 1e-8,
                atol: 1e-10,
                ..Controls::default()
            },
        }
    }
}

/// Seeded initial conditions of a family. Members alternate the sign of
/// `u̇`, covering both time orientations.
pub fn sample_family(chart: &PlaneWaveChart, family: Family, count: usize, seed: u64) -> Vec<GeodesicState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (family as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    (0..count)
        .map(|i| {
            let pos = [
                rng.gen_range(0.5..2.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ];
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            let u_dot = sign * rng.gen_range(0.25..2.0);
            let x_dot = rng.gen_range(-1.0..1.0);
            let target = match family {
                Family::Timelike => -1.0,
                Family::Null => 0.0,
                Family::Spacelike => 1.0,
                Family::VOrbit => return GeodesicState::new(pos, [0.0, sign * rng.gen_range(0.25..2.0), 0.0]),
            };
            // g(γ′,γ′) = 2u̇v̇ + H x² u̇² + ẋ²
            let h = chart.h(pos[U]);
            let v_dot = (target - h * pos[X] * pos[X] * u_dot * u_dot - x_dot * x_dot) / (2.0 * u_dot);
            GeodesicState::new(pos, [u_dot, v_dot, x_dot])
        })
        .collect()
}

/// Brinkmann geodesic in renormalized form: `u` affine, `(x, ẋ) = S·(x̂, x̂′)`
/// and `v = v₀ + v̇₀t + S²w`, with `log S` tracked separately, so solutions
/// growing like `e^{|t|}` stay representable out to the horizon.
fn projective_run(chart: &PlaneWaveChart, initial: &GeodesicState, span: f64, c: &Controls) -> Outcome {
    let profile = chart.profile();
    let (u0, c_u) = (initial.position[U], initial.velocity[U]);
    let positive_u = chart.positive_u_domain();
    let dir = if span < 0.0 { -1.0 } else { 1.0 };
    let rhs = |t: f64, y: &[f64; 4]| -> Option<[f64; 4]> {
        let u = u0 + c_u * t;
        if positive_u && u <= 0.0 {
            return None;
        }
        let [h, h1] = profile.jet(u);
        let [x, xd, _, wd] = *y;
        Some([
            xd,
            h * c_u * c_u * x,
            wd,
            -0.5 * h1 * x * x * c_u * c_u - 2.0 * h * x * c_u * xd,
        ])
    };
    let boundary = |t: f64, _: &[f64; 4]| boundary_distance(positive_u, c.u_min, u0 + c_u * t, c_u, dir);
    let mut post = |y: &mut [f64; 4]| {
        let m = y[0].abs().max(y[1].abs()).max(y[2].abs().sqrt()).max(y[3].abs().sqrt());
        if m > 1e6 {
            y[0] /= m;
            y[1] /= m;
            y[2] /= m * m;
            y[3] /= m * m;
        }
    };
    let mut record = |_: f64, _: &[f64; 4]| {};
    let y0 = [initial.position[X], initial.velocity[X], 0.0, 0.0];
    let (terminated, reached) = drive(
        y0,
        span,
        c,
        Hooks {
            rhs: &rhs,
            boundary: &boundary,
            post_step: &mut post,
            record: &mut record,
        },
    );
    let u_end = u0 + c_u * reached;
    Outcome {
        terminated,
        affine_parameter: reached,
        profile_at_end: profile.h(u_end).abs(),
    }
}

fn member_report(chart: &PlaneWaveChart, initial: GeodesicState, opts: &CompletenessOptions) -> MemberReport {
    let forward = projective_run(chart, &initial, opts.horizon, &opts.controls);
    let backward = projective_run(chart, &initial, -opts.horizon, &opts.controls);
    let mut incomplete_directions = Vec::new();
    if forward.terminated == Termination::HitDomainBoundary {
        incomplete_directions.push("forward");
    }
    if backward.terminated == Termination::HitDomainBoundary {
        incomplete_directions.push("backward");
    }
    MemberReport {
        initial,
        forward,
        backward,
        incomplete_directions,
    }
}

fn family_verdict(family: Family, members: &[MemberReport]) -> Verdict {
    if family == Family::Spacelike {
        return Verdict::Unstated;
    }
    let complete = |m: &MemberReport| {
        m.forward.terminated == Termination::CompletedSpan && m.backward.terminated == Termination::CompletedSpan
    };
    let underflow = |m: &MemberReport| {
        m.forward.terminated == Termination::StepUnderflow || m.backward.terminated == Termination::StepUnderflow
    };
    if members.iter().all(|m| !m.incomplete_directions.is_empty()) {
        Verdict::Incomplete
    } else if members.iter().all(complete) {
        Verdict::Complete
    } else if members.iter().any(underflow) {
        Verdict::Inconclusive
    } else {
        Verdict::Mixed
    }
}

/// Integrates seeded families in both directions up to the affine horizon.
/// A boundary hit at finite affine parameter marks a member incomplete;
/// reaching the horizon both ways is evidence of completeness.
pub fn completeness_report(chart: &PlaneWaveChart, opts: &CompletenessOptions) -> CompletenessReport {
    let mut families = BTreeMap::new();
    for family in Family::ALL {
        let initials = sample_family(chart, family, opts.samples_per_family, opts.seed);
        let members: Vec<MemberReport> = std::thread::scope(|scope| {
            let handles: Vec<_> = initials
                .into_iter()
                .map(|init| scope.spawn(move || member_report(chart, init, opts)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("geodesic worker panicked"))
                .collect()
        });
        let verdict = family_verdict(family, &members);
        let label = match verdict {
            Verdict::Unstated => "unstated",
            _ => "evidence",
        };
        families.insert(
            family.as_str(),
            FamilyReport {
                verdict,
                label,
                members,
            },
        );
    }
    CompletenessReport {
        chart: chart.descriptor(),
        seed: opts.seed,
        horizon: opts.horizon,
        samples_per_family: opts.samples_per_family,
        families,
    }
}

/// Writes `t,u,v,x,u_dot,v_dot,x_dot,norm`.
pub fn write_trajectory_csv<W: std::io::Write>(result: &GeodesicResult, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "u", "v", "x", "u_dot", "v_dot", "x_dot", "norm"])?;
    for s in &result.samples {
        let (p, v) = (s.state.position, s.state.velocity);
        w.write_record([s.t, p[0], p[1], p[2], v[0], v[1], v[2], s.norm].map(|f| format!("{f:e}")))?;
    }
    w.flush()?;
    Ok(())
}

/// Vertical null geodesic through `(u0, v0, 0)` with `u̇ = u_dot`.
pub fn vertical_null(u0: f64, v0: f64, u_dot: f64) -> GeodesicState {
    GeodesicState::new([u0, v0, 0.0], [u_dot, 0.0, 0.0])
}

/// Whether a chart's profile is the power law.
pub fn is_power_law(chart: &PlaneWaveChart) -> bool {
    matches!(chart.profile(), Profile::PowerLaw { .. })
}
