//! The `lorentz3` command line.
//!
//! Usage errors exit with status 2; mathematical and domain errors exit with
//! status 1 and print `{"error": {"code", "message"}}` on stderr.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::classify::{self, SpaceReport};
use crate::error::{Error, Result};
use crate::geodesic::{
    self, CausalType, CompletenessOptions, CompletenessReport, Controls, GeodesicState, Termination,
};
use crate::geometry::{
    curvature, killing, transform, Chart, ChartDescriptor, CurvatureReport, Grid, PlaneWaveChart, Point, RosenChart,
    VectorField,
};
use crate::lie::{self, Derivation};
use crate::rational::{self, frac, q, Parsed, Q};
use crate::verify::{self, Suite};

/// Environment variable overriding the default tolerance.
pub const TOL_ENV: &str = "LORENTZ3_TOL";

#[derive(Debug, Parser)]
#[command(
    name = "lorentz3",
    version,
    about = "Homogeneous Lorentzian plane waves in dimension 3"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Tolerance for exact-zero claims [default: 1e-9, or $LORENTZ3_TOL].
    #[arg(long, global = true, env = TOL_ENV)]
    pub tol: Option<f64>,
    /// Seed for random initial conditions.
    #[arg(long, global = true, default_value_t = geodesic::DEFAULT_SEED)]
    pub seed: u64,
    /// Write the primary artifact here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Emit JSON where a command also has a CSV or text form.
    #[arg(long, global = true)]
    pub json: bool,
}

/// Exactly one way of naming the space.
#[derive(Debug, Clone, Args)]
#[group(id = "source", required = true, multiple = false)]
pub struct Source {
    /// Derivation of heis as a row-major 3x3 JSON array in the basis (Z, X, Y), inline or a file path.
    #[arg(long)]
    pub derivation: Option<String>,
    /// Invariant b of a non-unimodular space (exact rational such as 1/4).
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Rosen exponent: derivation diag(1, 1-α, α).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Class tag: minkowski, half-minkowski, cw-hyperbolic, cw-elliptic, parabolic.
    #[arg(long)]
    pub class: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a space and print its report as JSON.
    Classify {
        #[command(flatten)]
        source: Source,
    },
    /// Curvature at a point (JSON) or over a grid (CSV, or a JSON summary with --json).
    Curvature {
        #[command(flatten)]
        source: Source,
        /// Point u,v,x.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        /// Grid nu,nv,nx:umin..umax,vmin..vmax,xmin..xmax.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
    /// Integrate one geodesic (trajectory CSV) and sample completeness (verdict JSON).
    ///
    /// The trajectory goes to --out, or stdout without --json. The verdict goes
    /// to --verdict, or to stdout when --out or --json is given.
    Geodesic {
        #[command(flatten)]
        source: Source,
        /// Initial point u,v,x.
        #[arg(long, allow_hyphen_values = true, default_value = "1,0,0")]
        point: String,
        /// Initial velocity u',v',x'.
        #[arg(long, allow_hyphen_values = true, default_value = "-1,0,0")]
        velocity: String,
        /// Affine span (negative integrates backwards).
        #[arg(long, allow_hyphen_values = true, default_value_t = 10.0)]
        span: f64,
        /// Record samples at this affine spacing instead of every step.
        #[arg(long)]
        output_step: Option<f64>,
        /// Geodesics per family in the completeness sample.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Affine horizon counted as complete.
        #[arg(long, default_value_t = geodesic::DEFAULT_HORIZON)]
        horizon: f64,
        /// Verdict JSON path.
        #[arg(long)]
        verdict: Option<PathBuf>,
    },
    /// Rosen to Brinkmann maps for diag(1, 1-α, α) and their pullback residual.
    Transform {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Check the pullback on an n^3 grid over [0.5,2]x[-1,1]x[-1,1].
        #[arg(long, default_value_t = 5)]
        verify_grid: usize,
        /// Brinkmann point u,v,x to map to Rosen coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Sweep b and tabulate class and flags (CSV, or JSON with --json).
    Survey {
        #[arg(long, allow_hyphen_values = true, default_value = "-1")]
        from: String,
        #[arg(long, allow_hyphen_values = true, default_value = "3")]
        to: String,
        #[arg(long, default_value_t = 16)]
        steps: usize,
        /// Explicit comma-separated b values instead of a range.
        #[arg(long, allow_hyphen_values = true)]
        values: Option<String>,
    },
    /// Run the invariant suite; exits 1 on any failure.
    Verify {
        /// all, lie, metric, geometry, geodesics or classifier.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// Everything a command produced.
#[derive(Debug, Default)]
pub struct Outcome {
    pub status: i32,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
}

struct Run {
    common: Common,
    tol: f64,
    notes: Vec<String>,
    stdout: Vec<u8>,
    stderr: Vec<u8>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    code: &'a str,
    message: String,
}

#[derive(Serialize)]
struct ErrorObject<'a> {
    error: ErrorBody<'a>,
}

/// JSON error object for `e`.
pub fn error_json(e: &Error) -> String {
    serde_json::to_string(&ErrorObject {
        error: ErrorBody {
            code: e.code(),
            message: e.to_string(),
        },
    })
    .expect("error serializes")
}

pub fn main() -> i32 {
    let out = run_args(std::env::args_os());
    let _ = io::stdout().write_all(&out.stdout);
    let _ = io::stderr().write_all(&out.stderr);
    out.status
}

/// Parses and runs a command line, capturing its output.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = e.exit_code();
            let rendered = e.render().to_string();
            let mut out = Outcome {
                status,
                ..Outcome::default()
            };
            if e.use_stderr() {
                out.stderr = rendered.into_bytes();
            } else {
                out.stdout = rendered.into_bytes();
            }
            return out;
        }
    };
    run(cli)
}

pub fn run(cli: Cli) -> Outcome {
    let tol = cli.common.tol.unwrap_or(verify::DEFAULT_TOL);
    if !(tol.is_finite() && tol > 0.0) {
        return Outcome {
            status: 2,
            stderr: format!("error: tolerance must be positive, got {tol}\n").into_bytes(),
            ..Outcome::default()
        };
    }
    let mut r = Run {
        common: cli.common,
        tol,
        notes: Vec::new(),
        stdout: Vec::new(),
        stderr: Vec::new(),
    };
    let status = match r.dispatch(cli.command) {
        Ok(status) => status,
        Err(Failure::Usage(msg)) => {
            r.stderr.extend_from_slice(format!("error: {msg}\n").as_bytes());
            2
        }
        Err(Failure::Math(e)) => {
            r.stderr.extend_from_slice(error_json(&e).as_bytes());
            r.stderr.push(b'\n');
            1
        }
    };
    Outcome {
        status,
        stdout: r.stdout,
        stderr: r.stderr,
    }
}

enum Failure {
    Usage(String),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(msg) | Error::InvalidArgument(msg) => Failure::Usage(msg),
            other => Failure::Math(other),
        }
    }
}

type CmdResult<T> = std::result::Result<T, Failure>;

fn parse_triple(s: &str, what: &str) -> CmdResult<Point> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Failure::Usage(format!(
            "{what} needs three comma-separated numbers, got {s:?}"
        )));
    }
    let mut p = [0.0; 3];
    for (slot, part) in p.iter_mut().zip(parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Failure::Usage(format!("bad number {part:?} in {what}")))?;
    }
    Ok(p)
}

fn class_derivation(tag: &str) -> CmdResult<Derivation> {
    let d = |m| Derivation::from_i64(m).expect("fixed derivation");
    Ok(match tag {
        "minkowski" | "MinkowskiFlat" => Derivation::nilpotent(),
        "half-minkowski" | "HalfMinkowskiFlat" => Derivation::canonical(q(0)),
        "cw-hyperbolic" | "CahenWallachHyperbolic" => d([[0, 0, 0], [0, 1, 0], [0, 0, -1]]),
        "cw-elliptic" | "CahenWallachElliptic" => d([[0, 0, 0], [0, 0, -1], [0, 1, 0]]),
        "parabolic" | "NonUnimodularParabolic" => Derivation::canonical(-frac(1, 4)),
        other => {
            return Err(Failure::Usage(format!(
                "unknown class {other:?}; classes with a free parameter take --b"
            )))
        }
    })
}

impl Run {
    fn dispatch(&mut self, command: Command) -> CmdResult<i32> {
        match command {
            Command::Classify { source } => self.classify(&source),
            Command::Curvature { source, point, grid } => self.curvature(&source, point.as_deref(), grid.as_deref()),
            Command::Geodesic {
                source,
                point,
                velocity,
                span,
                output_step,
                samples,
                horizon,
                verdict,
            } => {
                let initial =
                    GeodesicState::new(parse_triple(&point, "--point")?, parse_triple(&velocity, "--velocity")?);
                if !span.is_finite()
                    || output_step.is_some_and(|h| h.is_nan() || h <= 0.0)
                    || horizon.is_nan()
                    || horizon <= 0.0
                {
                    return Err(Failure::Usage(
                        "span, output step and horizon must be positive and finite".into(),
                    ));
                }
                self.geodesic(
                    &source,
                    initial,
                    span,
                    output_step,
                    samples,
                    horizon,
                    verdict.as_deref(),
                )
            }
            Command::Transform {
                alpha,
                verify_grid,
                point,
            } => self.transform(&alpha, verify_grid, point.as_deref()),
            Command::Survey {
                from,
                to,
                steps,
                values,
            } => self.survey(&from, &to, steps, values.as_deref()),
            Command::Verify { suite } => self.verify(&suite),
        }
    }

    fn rational(&mut self, flag: &str, s: &str) -> CmdResult<Q> {
        match rational::parse(s)? {
            Parsed::Exact(v) => Ok(v),
            Parsed::Rationalized { input, value } => {
                self.notes.push(format!(
                    "{flag} {input} rationalized to {} (denominator at most {})",
                    rational::to_string(&value),
                    rational::MAX_DENOMINATOR
                ));
                Ok(value)
            }
        }
    }

    fn derivation(&mut self, source: &Source) -> CmdResult<Derivation> {
        if let Some(b) = &source.b {
            let b = self.rational("--b", b)?;
            return Ok(Derivation::canonical(b));
        }
        if let Some(a) = &source.alpha {
            let a = self.rational("--alpha", a)?;
            return Ok(Derivation::rosen(a));
        }
        if let Some(c) = &source.class {
            return class_derivation(c);
        }
        let text = source.derivation.as_deref().expect("clap enforces one source");
        let trimmed = text.trim_start();
        let body = if trimmed.starts_with('[') || trimmed.starts_with('{') {
            text.to_string()
        } else {
            fs::read_to_string(text).map_err(|e| Failure::Usage(format!("cannot read {text}: {e}")))?
        };
        let raw: serde_json::Value = serde_json::from_str(&body).map_err(|e| Failure::Usage(e.to_string()))?;
        let floats = raw
            .as_array()
            .into_iter()
            .flatten()
            .filter_map(|r| r.as_array())
            .flatten()
            .filter(|v| v.is_f64())
            .count();
        if floats > 0 {
            self.notes.push(format!(
                "{floats} floating-point entries rationalized (denominator at most {})",
                rational::MAX_DENOMINATOR
            ));
        }
        Ok(lie::derivation_from_json(&raw)?)
    }

    fn emit(&mut self, bytes: &[u8]) -> CmdResult<()> {
        match &self.common.out {
            Some(path) => write_file(path, bytes),
            None => {
                self.stdout.extend_from_slice(bytes);
                Ok(())
            }
        }
    }

    fn flush_notes(&mut self) {
        for n in self.notes.drain(..) {
            self.stderr.extend_from_slice(format!("note: {n}\n").as_bytes());
        }
    }

    fn classify(&mut self, source: &Source) -> CmdResult<i32> {
        let a = self.derivation(source)?;
        let mut report: SpaceReport = classify::space_report(&a)?;
        report.notes.append(&mut self.notes);
        self.emit(&to_json(&report))?;
        Ok(0)
    }

    fn curvature(&mut self, source: &Source, point: Option<&str>, grid: Option<&str>) -> CmdResult<i32> {
        let (chart, fields) = self.chart_with_fields(source)?;
        let chart: &dyn Chart = chart.as_ref();
        if let Some(p) = point {
            if grid.is_some() {
                return Err(Failure::Usage("--point and --grid are exclusive".into()));
            }
            let p = parse_triple(p, "--point")?;
            let report = PointCurvature {
                chart: chart.descriptor(),
                killing: killing_rows(chart, &fields, &p)?,
                report: curvature::riemann_tensor(chart, &p)?,
            };
            self.emit(&to_json(&report))?;
            self.flush_notes();
            return Ok(0);
        }
        let grid: Grid = match grid {
            Some(g) => g.parse()?,
            None => Grid::standard(5),
        };
        let mut rows = Vec::with_capacity(grid.len());
        for p in grid.points() {
            let r = curvature::riemann_tensor(chart, &p)?;
            let k = killing_rows(chart, &fields, &p)?;
            rows.push((p, r, k));
        }
        if self.common.json {
            let max = |f: &dyn Fn(&GridRow) -> f64| rows.iter().map(f).fold(0.0f64, f64::max);
            let max_riemann = max(&|(_, r, _)| crate::geometry::max_abs4(&r.riemann));
            let max_killing = max(&|(_, _, k)| k.iter().map(|k| k.residual).fold(0.0, f64::max));
            let summary = CurvatureSummary {
                chart: chart.descriptor(),
                grid: grid.to_string(),
                points: rows.len(),
                max_riemann,
                max_nabla_riemann: max(&|(_, r, _)| r.nabla_r_norms.iter().copied().fold(0.0, f64::max)),
                max_symmetry_residual: max(&|(_, r, _)| r.symmetry_residual),
                max_killing_residual: max_killing,
                killing_fields: fields.iter().map(|f| f.name().to_string()).collect(),
                tol: self.tol,
                flat: max_riemann <= self.tol,
                killing_ok: max_killing <= self.tol,
            };
            self.emit(&to_json(&summary))?;
        } else {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec![
                "u".to_string(),
                "v".into(),
                "x".into(),
                "max_abs_r".into(),
                "max_abs_nabla_r".into(),
            ];
            header.extend(fields.iter().map(|f| format!("killing_{}", f.name())));
            w.write_record(&header).map_err(Error::from)?;
            for (p, r, k) in &rows {
                let mut rec: Vec<String> = p.iter().map(|v| format!("{v:e}")).collect();
                rec.push(format!("{:e}", crate::geometry::max_abs4(&r.riemann)));
                rec.push(format!("{:e}", r.nabla_r_norms.iter().copied().fold(0.0, f64::max)));
                rec.extend(k.iter().map(|k| format!("{:e}", k.residual)));
                w.write_record(&rec).map_err(Error::from)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
            self.emit(&bytes)?;
        }
        self.flush_notes();
        Ok(0)
    }

    /// The Rosen chart for `--alpha`, otherwise the Brinkmann chart of the class.
    fn chart_with_fields(&mut self, source: &Source) -> CmdResult<(Box<dyn Chart>, Vec<VectorField>)> {
        if let Some(a) = &source.alpha {
            let alpha = rational::to_f64(&self.rational("--alpha", a)?);
            let chart = RosenChart::power(alpha);
            let fields = killing::heis_killing_fields(&chart).to_vec();
            return Ok((Box::new(chart), fields));
        }
        let chart = self.brinkmann(source)?;
        let fields = killing::brinkmann_killing_fields(&chart);
        Ok((Box::new(chart), fields))
    }

    fn brinkmann(&mut self, source: &Source) -> CmdResult<PlaneWaveChart> {
        let a = self.derivation(source)?;
        Ok(classify::classify(&a)?.chart())
    }

    #[allow(clippy::too_many_arguments)]
    fn geodesic(
        &mut self,
        source: &Source,
        initial: GeodesicState,
        span: f64,
        output_step: Option<f64>,
        samples: usize,
        horizon: f64,
        verdict_path: Option<&Path>,
    ) -> CmdResult<i32> {
        let chart = self.brinkmann(source)?;
        let controls = Controls {
            output_step,
            ..Controls::default()
        };
        let result = geodesic::integrate_geodesic(&chart, &initial, span, &controls)?;
        result.ensure_no_underflow()?;
        let seed = self.common.seed;
        self.stderr.extend_from_slice(format!("seed: {seed}\n").as_bytes());

        let trajectory_to_stdout = self.common.out.is_none() && !self.common.json;
        let verdict_to_stdout = verdict_path.is_none() && !trajectory_to_stdout;
        let mut csv = Vec::new();
        geodesic::write_trajectory_csv(&result, &mut csv)?;
        match &self.common.out {
            Some(path) => write_file(path, &csv)?,
            None if trajectory_to_stdout => self.stdout.extend_from_slice(&csv),
            None => {}
        }
        if verdict_path.is_some() || verdict_to_stdout {
            let opts = CompletenessOptions {
                seed,
                samples_per_family: samples,
                horizon,
                ..CompletenessOptions::default()
            };
            let last = result.last();
            let report = GeodesicReport {
                chart: chart.descriptor(),
                seed,
                initial,
                causal_type: result.causal_type,
                terminated: result.terminated,
                affine_span_reached: result.affine_span_reached,
                final_state: last.state,
                norm_drift: result.norm_drift,
                samples: result.samples.len(),
                completeness: geodesic::completeness_report(&chart, &opts),
            };
            let json = to_json(&report);
            match verdict_path {
                Some(path) => write_file(path, &json)?,
                None => self.stdout.extend_from_slice(&json),
            }
        }
        self.flush_notes();
        Ok(0)
    }

    fn transform(&mut self, alpha: &str, n: usize, point: Option<&str>) -> CmdResult<i32> {
        if n < 2 {
            return Err(Failure::Usage("--verify-grid needs at least 2 points per axis".into()));
        }
        let alpha_q = self.rational("--alpha", alpha)?;
        let b = &alpha_q * &alpha_q - &alpha_q;
        let alpha_f = rational::to_f64(&alpha_q);
        let map = transform::rosen_to_brinkmann(alpha_f);
        let grid = Grid::standard(n);
        let check = map.check(&grid)?;
        let general = transform::GeneralRosenBrinkmann::power(alpha_f).check(&grid)?;
        let mapped = match point {
            Some(p) => {
                let p = parse_triple(p, "--point")?;
                Some(MappedPoint {
                    brinkmann: p,
                    rosen: map.point_map(&p)?,
                })
            }
            None => None,
        };
        let a = rational::to_string(&alpha_q);
        let report = TransformReport {
            alpha: a.clone(),
            b: rational::to_string(&b),
            rosen_metric: format!("2 du dv + u^(2*({a})) dx^2, u > 0"),
            brinkmann_metric: format!("2 du dv + ({}) x^2/u^2 du^2 + dx^2, u > 0", rational::to_string(&b)),
            rosen_from_brinkmann: format!("u = u', v = v' + ({a})/2 x'^2/u', x = u'^(-({a})) x'"),
            grid: grid.to_string(),
            pullback_residual: check.pullback_residual,
            roundtrip_residual: check.roundtrip_residual,
            general_pullback_residual: general.pullback_residual,
            tol: self.tol,
            passed: check.pullback_residual <= self.tol && general.pullback_residual <= self.tol,
            point: mapped,
            notes: std::mem::take(&mut self.notes),
        };
        self.emit(&to_json(&report))?;
        Ok(0)
    }

    fn survey(&mut self, from: &str, to: &str, steps: usize, values: Option<&str>) -> CmdResult<i32> {
        let bs: Vec<Q> = match values {
            Some(list) => list
                .split(',')
                .map(|s| self.rational("--values", s))
                .collect::<CmdResult<_>>()?,
            None => {
                if steps == 0 {
                    return Err(Failure::Usage("--steps must be positive".into()));
                }
                let lo = self.rational("--from", from)?;
                let hi = self.rational("--to", to)?;
                let step = (&hi - &lo) / q(steps as i64);
                (0..=steps).map(|k| &lo + &step * q(k as i64)).collect()
            }
        };
        let mut rows = Vec::with_capacity(bs.len());
        for b in bs {
            let r = classify::space_report(&Derivation::canonical(b.clone()))?;
            rows.push(SurveyRow {
                b: rational::to_string(&b),
                class: r.class.tag(),
                spectrum: r.spectrum.kind.as_str(),
                symmetric: r.symmetric,
                locally_symmetric: r.locally_symmetric,
                flat: r.flat,
                complete: r.complete,
                compact_model: r.compact_model,
                transverse_3d_group: r.transverse_3d_group,
            });
        }
        if self.common.json {
            self.emit(&to_json(&rows))?;
        } else {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &rows {
                w.serialize(row).map_err(Error::from)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
            self.emit(&bytes)?;
        }
        self.flush_notes();
        Ok(0)
    }

    fn verify(&mut self, suite: &str) -> CmdResult<i32> {
        let suite: Suite = suite.parse()?;
        let report = verify::run(suite, self.tol);
        if self.common.json {
            self.emit(&to_json(&report))?;
        } else {
            let mut text = String::new();
            for c in &report.checks {
                text.push_str(&format!("{c}\n"));
            }
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            text.push_str(&format!("{} checks, {failed} failed\n", report.checks.len()));
            self.emit(text.as_bytes())?;
        }
        Ok(if report.passed { 0 } else { 1 })
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> CmdResult<()> {
    fs::write(path, bytes).map_err(|e| Failure::Math(Error::Io(format!("{}: {e}", path.display()))))
}

fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut v = serde_json::to_vec_pretty(value).expect("reports serialize");
    v.push(b'\n');
    v
}

type GridRow = (Point, CurvatureReport, Vec<KillingRow>);

#[derive(Debug, Serialize)]
struct KillingRow {
    field: String,
    residual: f64,
}

fn killing_rows(chart: &dyn Chart, fields: &[VectorField], p: &Point) -> Result<Vec<KillingRow>> {
    fields
        .iter()
        .map(|f| {
            Ok(KillingRow {
                field: f.name().to_string(),
                residual: killing::killing_residual_at(chart, f, p)?,
            })
        })
        .collect()
}

#[derive(Debug, Serialize)]
struct PointCurvature {
    chart: ChartDescriptor,
    report: CurvatureReport,
    killing: Vec<KillingRow>,
}

#[derive(Debug, Serialize)]
struct CurvatureSummary {
    chart: ChartDescriptor,
    grid: String,
    points: usize,
    max_riemann: f64,
    max_nabla_riemann: f64,
    max_symmetry_residual: f64,
    max_killing_residual: f64,
    killing_fields: Vec<String>,
    tol: f64,
    flat: bool,
    killing_ok: bool,
}

#[derive(Debug, Serialize)]
struct GeodesicReport {
    chart: ChartDescriptor,
    seed: u64,
    initial: GeodesicState,
    causal_type: CausalType,
    terminated: Termination,
    affine_span_reached: f64,
    final_state: GeodesicState,
    norm_drift: f64,
    samples: usize,
    completeness: CompletenessReport,
}

#[derive(Debug, Serialize)]
struct MappedPoint {
    brinkmann: Point,
    rosen: Point,
}

#[derive(Debug, Serialize)]
struct TransformReport {
    alpha: String,
    b: String,
    rosen_metric: String,
    brinkmann_metric: String,
    rosen_from_brinkmann: String,
    grid: String,
    pullback_residual: f64,
    roundtrip_residual: f64,
    general_pullback_residual: f64,
    tol: f64,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    point: Option<MappedPoint>,
    notes: Vec<String>,
}

#[derive(Debug, Serialize)]
struct SurveyRow {
    b: String,
    class: &'static str,
    spectrum: &'static str,
    symmetric: bool,
    locally_symmetric: bool,
    flat: bool,
    complete: bool,
    compact_model: bool,
    transverse_3d_group: bool,
}
