//! Command-line surface for `minkpi`.
//!
//! [`run`] parses arguments, dispatches to the library and writes the
//! result. Exit codes: 0 on success, 1 when `verify` finds a failing check,
//! 2 on usage errors and invalid input.

pub mod render;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::error::ErrorKind;
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use minkpi::birkhoff::default_directions;
use minkpi::perimeter::AXIS_TOL;
use minkpi::regular_pi::{beraha, pi_n_closed, subtended_sides};
use minkpi::verification::{acceptance_checks, invariant_checks};
use minkpi::{
    birkhoff::BIRKHOFF_TOL, classify_family, is_radon, measure_perimeters, regular_polygon,
    shared_axis, solve_offset_for_pi, AxisConfig, Ball, ConvexPolygon, Error, OffsetShape, PiForm,
    Vec2,
};
use render::{num, nums, round_all, Format, Rendered};
use serde_json::{json, Map, Value};

/// Overrides `--seed` when set.
pub const SEED_ENV: &str = "MINKPI_SEED";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{flag}: {source}")]
    Input { flag: &'static str, source: Error },
    #[error("{flag}: cannot read {}: {source}", path.display())]
    Read {
        flag: &'static str,
        path: PathBuf,
        source: io::Error,
    },
    #[error("{flag}: {}: {source}", path.display())]
    Parse {
        flag: &'static str,
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("cannot write output: {0}")]
    Write(#[from] io::Error),
}

impl CliError {
    fn input(flag: &'static str) -> impl FnOnce(Error) -> CliError {
        move |source| CliError::Input { flag, source }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "minkpi",
    version,
    about = "Circle ratios of convex polygonal balls"
)]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Tolerance for orthogonality (`radon`) and axis matching (`perimeter`).
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ShapeKind {
    Triangle,
    Square,
    Hexagon,
}

#[derive(Clone, Debug, PartialEq, Subcommand)]
pub enum Command {
    /// π_n of regular polygons over a range of n.
    PiRegular {
        #[arg(long, default_value_t = 3)]
        n_min: u32,
        #[arg(long, default_value_t = 10)]
        n_max: u32,
        #[arg(long, default_value = "closed", value_parser = form_parser())]
        form: PiForm,
    },
    /// π of a triangle, square or hexagon with an offset center.
    #[command(group(ArgGroup::new("mode").required(true).args(["offset", "solve", "samples"])))]
    PiOffset {
        #[arg(long, value_enum)]
        shape: ShapeKind,
        #[arg(long, default_value = "A", value_parser = AxisConfig::from_str)]
        config: AxisConfig,
        /// Equal side for the triangle, side otherwise.
        #[arg(long)]
        size: f64,
        /// Base of the triangle.
        #[arg(long)]
        base: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        offset: Option<f64>,
        /// Offsets giving this π.
        #[arg(long)]
        solve: Option<f64>,
        /// Evenly spaced offsets across the valid interval.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Gauge of one vector.
    Gauge {
        #[arg(long)]
        ball: PathBuf,
        #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_negative_numbers = true, required = true)]
        vector: Vec<f64>,
    },
    /// ccw, cw, min and max perimeters of a polygon (the ball itself by default).
    Perimeter {
        #[arg(long)]
        ball: PathBuf,
        #[arg(long)]
        polygon: Option<PathBuf>,
    },
    /// Whether Birkhoff orthogonality is symmetric.
    #[command(group(ArgGroup::new("source").required(true).args(["ball", "n"])))]
    Radon {
        #[arg(long)]
        ball: Option<PathBuf>,
        /// Regular n-gon of circumradius 1 centered at the origin.
        #[arg(long)]
        n: Option<usize>,
        /// Boundary points to test; defaults to 8 per edge.
        #[arg(long)]
        directions: Option<usize>,
    },
    /// Run the acceptance and invariant checks.
    Verify,
    /// Reproduce one of the reference tables.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
    },
}

fn form_parser() -> impl TypedValueParser<Value = PiForm> {
    PossibleValuesParser::new(PiForm::ALL.map(PiForm::name))
        .map(|s| s.parse::<PiForm>().expect("restricted to known names"))
}

/// Fully resolved invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub output_format: Option<Format>,
    pub output_path: Option<PathBuf>,
    pub seed: u64,
    pub tol: Option<f64>,
}

impl RunConfig {
    /// Parses `argv` (program name first). `env_seed` is the value of
    /// [`SEED_ENV`], if set.
    pub fn parse<I, T>(argv: I, env_seed: Option<&str>) -> Result<RunConfig, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let cli = Cli::try_parse_from(argv)?;
        let seed = match env_seed {
            Some(s) => s.trim().parse().map_err(|_| {
                clap::Error::raw(
                    ErrorKind::InvalidValue,
                    format!("{SEED_ENV}: expected an unsigned integer, got {s:?}\n"),
                )
            })?,
            None => cli.seed,
        };
        if let Some(t) = cli.tol {
            if !(t.is_finite() && t > 0.0) {
                return Err(clap::Error::raw(
                    ErrorKind::InvalidValue,
                    format!("--tol: expected a positive number, got {t}\n"),
                ));
            }
        }
        Ok(RunConfig {
            command: cli.command,
            output_format: cli.format,
            output_path: cli.output,
            seed,
            tol: cli.tol,
        })
    }
}

/// Result of a command and whether it counts as success.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub rendered: Rendered,
    pub passed: bool,
}

impl Outcome {
    fn ok(rendered: Rendered) -> Outcome {
        Outcome {
            rendered,
            passed: true,
        }
    }
}

/// Entry point used by the binary; reads [`SEED_ENV`] from the process
/// environment.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env_seed = std::env::var(SEED_ENV).ok();
    run_with_env(argv, env_seed.as_deref(), stdout, stderr)
}

pub fn run_with_env<I, T>(
    argv: I,
    env_seed: Option<&str>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::parse(argv, env_seed) {
        Ok(c) => c,
        Err(e) => {
            let informational =
                matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            let _ = if informational {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return if informational { 0 } else { 2 };
        }
    };
    match execute(&config).and_then(|o| emit(&config, &o, stdout).map(|()| o)) {
        Ok(o) if o.passed => 0,
        Ok(_) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn emit(config: &RunConfig, outcome: &Outcome, stdout: &mut dyn Write) -> Result<(), CliError> {
    let text = outcome.rendered.render(config.output_format);
    match &config.output_path {
        Some(p) => std::fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn execute(config: &RunConfig) -> Result<Outcome, CliError> {
    match &config.command {
        Command::PiRegular { n_min, n_max, form } => pi_regular(*n_min, *n_max, *form),
        Command::PiOffset {
            shape,
            config: axis,
            size,
            base,
            offset,
            solve,
            samples,
        } => {
            let shape = offset_shape(*shape, *axis, *size, *base)?;
            pi_offset(&shape, *offset, *solve, *samples)
        }
        Command::Gauge { ball, vector } => {
            let ball = load_ball(ball)?;
            let v = Vec2::new(vector[0], vector[1]);
            if !(v.x.is_finite() && v.y.is_finite()) {
                return Err(CliError::Input {
                    flag: "--vector",
                    source: Error::NonFinite { x: v.x, y: v.y },
                });
            }
            Ok(Outcome::ok(Rendered::Scalar("gauge", ball.gauge(v))))
        }
        Command::Perimeter { ball, polygon } => {
            let ball = load_ball(ball)?;
            let poly = match polygon {
                Some(p) => Some(load_json::<ConvexPolygon>("--polygon", p)?),
                None => None,
            };
            Ok(Outcome::ok(perimeter(
                &ball,
                poly.as_ref(),
                config.tol.unwrap_or(AXIS_TOL),
            )))
        }
        Command::Radon {
            ball,
            n,
            directions,
        } => {
            let ball = match (ball, n) {
                (Some(p), _) => load_ball(p)?,
                (None, Some(n)) => regular_polygon(*n, 1.0, 0.0)
                    .and_then(|s| Ball::new(s, Vec2::ZERO))
                    .map_err(CliError::input("--n"))?,
                (None, None) => unreachable!("clap requires --ball or --n"),
            };
            radon(&ball, *directions, config.tol.unwrap_or(BIRKHOFF_TOL))
        }
        Command::Verify => {
            let mut checks = acceptance_checks(config.seed);
            checks.extend(invariant_checks(config.seed));
            let passed = checks.iter().all(|c| c.passed);
            Ok(Outcome {
                rendered: Rendered::Ledger {
                    checks,
                    seed: config.seed,
                },
                passed,
            })
        }
        Command::Table { which } => table(*which),
    }
}

fn load_json<T: serde::de::DeserializeOwned>(
    flag: &'static str,
    path: &Path,
) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        flag,
        path: path.into(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse {
        flag,
        path: path.into(),
        source,
    })
}

fn load_ball(path: &Path) -> Result<Ball, CliError> {
    load_json("--ball", path)
}

fn object(v: Value) -> Map<String, Value> {
    match round_all(v) {
        Value::Object(o) => o,
        _ => unreachable!("callers build objects"),
    }
}

fn family_row(n: u32, value: f64) -> Result<Map<String, Value>, CliError> {
    let family = classify_family(n).map_err(CliError::input("--n-min"))?;
    Ok(object(
        json!({"n": n, "value": num(value), "family": family.kind.to_string()}),
    ))
}

fn pi_regular(n_min: u32, n_max: u32, form: PiForm) -> Result<Outcome, CliError> {
    if n_min > n_max {
        return Err(CliError::Usage(format!(
            "--n-min {n_min} exceeds --n-max {n_max}"
        )));
    }
    let rows = (n_min..=n_max)
        .map(|n| {
            let v = form.eval(n).map_err(CliError::input("--n-min"))?;
            family_row(n, v.value)
        })
        .collect::<Result<_, _>>()?;
    Ok(Outcome::ok(Rendered::Rows(rows)))
}

fn offset_shape(
    kind: ShapeKind,
    config: AxisConfig,
    size: f64,
    base: Option<f64>,
) -> Result<OffsetShape, CliError> {
    let shape = match kind {
        ShapeKind::Triangle => {
            let base = base
                .ok_or_else(|| CliError::Usage("--base is required for --shape triangle".into()))?;
            OffsetShape::IsoscelesTriangle { side: size, base }
        }
        ShapeKind::Square => OffsetShape::Square { side: size, config },
        ShapeKind::Hexagon => OffsetShape::Hexagon { side: size, config },
    };
    shape.interval().map_err(CliError::input("--size"))?;
    Ok(shape)
}

fn offset_row(
    shape: &OffsetShape,
    offset: f64,
    flag: &'static str,
) -> Result<Map<String, Value>, CliError> {
    let r = shape.pi(offset).map_err(CliError::input(flag))?;
    Ok(object(
        json!({"offset": num(offset), "pi": num(r.pi), "side_gauges": nums(&r.side_gauges)}),
    ))
}

fn pi_offset(
    shape: &OffsetShape,
    offset: Option<f64>,
    solve: Option<f64>,
    samples: Option<usize>,
) -> Result<Outcome, CliError> {
    let rows = match (offset, solve, samples) {
        (Some(h), _, _) => vec![offset_row(shape, h, "--offset")?],
        (_, Some(target), _) => solve_offset_for_pi(shape, target)
            .map_err(CliError::input("--solve"))?
            .into_iter()
            .map(|h| offset_row(shape, h, "--solve"))
            .collect::<Result<_, _>>()?,
        (_, _, Some(count)) => {
            if count == 0 {
                return Err(CliError::Usage("--samples must be positive".into()));
            }
            let iv = shape.interval().map_err(CliError::input("--size"))?;
            // Open ends are never sampled; a closed upper end is the last sample.
            let steps = if iv.hi_closed { count } else { count + 1 } as f64;
            (1..=count)
                .map(|i| {
                    offset_row(
                        shape,
                        if i as f64 == steps {
                            iv.hi
                        } else {
                            iv.lo + (iv.hi - iv.lo) * i as f64 / steps
                        },
                        "--samples",
                    )
                })
                .collect::<Result<_, _>>()?
        }
        (None, None, None) => unreachable!("clap requires one mode"),
    };
    Ok(Outcome::ok(Rendered::Rows(rows)))
}

fn perimeter(ball: &Ball, poly: Option<&ConvexPolygon>, tol: f64) -> Rendered {
    let measured = poly.unwrap_or(ball.shape());
    let report = measure_perimeters(ball, measured);
    let axis = shared_axis(ball, measured, tol);
    let mut rec = object(serde_json::to_value(report).expect("report serializes"));
    rec.insert("shared_axis".into(), Value::Bool(axis.is_some()));
    if poly.is_none() {
        rec.insert(
            "pi".into(),
            axis.map_or(Value::Null, |_| num(report.ccw / 2.0)),
        );
    }
    Rendered::Record(rec)
}

fn radon(ball: &Ball, directions: Option<usize>, tol: f64) -> Result<Outcome, CliError> {
    let directions = directions.unwrap_or_else(|| default_directions(ball));
    let rec = match is_radon(ball, directions, tol) {
        Ok(v) => json!({"radon": v.radon, "symmetric": true, "witness": v.witness}),
        // Radon balls are centrally symmetric; report the vector that breaks it.
        Err(Error::NotSymmetricBall { witness }) => {
            json!({"radon": false, "symmetric": false, "witness": null, "asymmetry": witness})
        }
        Err(e) => return Err(CliError::input("--directions")(e)),
    };
    Ok(Outcome::ok(Rendered::Record(object(rec))))
}

const BERAHA_FORMS: [&str; 10] = [
    "4",
    "0",
    "1",
    "2",
    "phi+1",
    "3",
    "2+2cos(2pi/7)",
    "2+sqrt(2)",
    "2+2cos(2pi/9)",
    "phi+2",
];

fn table(which: u8) -> Result<Outcome, CliError> {
    let input = CliError::input("--which");
    let rows = match which {
        1 => (3..=10)
            .map(|n| family_row(n, pi_n_closed(n).map_err(CliError::input("--which"))?.value))
            .collect::<Result<_, _>>()?,
        2 => (3..=18u32)
            .map(|n| {
                let v = pi_n_closed(n).map_err(CliError::input("--which"))?.value;
                // The bracket uses the odd multiples 2k−1 and 2k+1 of π/n.
                let k = (n + 1) / 4;
                let lo = 4 * k - 1;
                Ok(object(json!({
                    "n": n,
                    "range": format!("[{lo},{}]", lo + 3),
                    "k": k,
                    "subtended_sides": subtended_sides(n).map_err(CliError::input("--which"))?,
                    "expression": format!("n/(2cos(pi/n))*(cos({}pi/n)-cos({}pi/n))", 2 * k - 1, 2 * k + 1),
                    "value": num(v),
                })))
            })
            .collect::<Result<_, CliError>>()?,
        3 => (1..=10u32)
            .zip(BERAHA_FORMS)
            .map(|(n, form)| {
                let b = beraha(n).map_err(CliError::input("--which"))?;
                Ok(object(json!({"n": n, "beraha": num(b), "form": form})))
            })
            .collect::<Result<_, CliError>>()?,
        _ => return Err(input(Error::InvalidParameter(format!("no table {which}")))),
    };
    Ok(Outcome::ok(Rendered::Rows(rows)))
}
