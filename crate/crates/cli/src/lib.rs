//! Command-line front end: one JSON request in, one [`ResponseEnvelope`] out.
//!
//! [`run`] is the whole program minus process plumbing, so tests can drive
//! it without spawning the binary.

pub mod commands;
pub mod envelope;
pub mod svg;

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{Map, Value};
use sphaerica::Tolerances;

use commands::{Context, Failure, Report, Units};
pub use envelope::{ResponseEnvelope, Status};

pub const TOLERANCE_ENV: &str = "SPHAERICA_TOLERANCE";

#[derive(Parser, Debug)]
#[command(name = "sphaerica", version, about = "Spherical geometry solvers with JSON in and out")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print the response envelope as JSON (nothing else goes to stdout).
    #[arg(long, global = true)]
    json: bool,
    /// Read and write angles in degrees.
    #[arg(long, global = true)]
    degrees: bool,
    /// Also draw the result as SVG.
    #[arg(long, global = true, value_name = "PATH")]
    svg: Option<PathBuf>,
    /// Request file; standard input when absent.
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Residual tolerance; overrides SPHAERICA_TOLERANCE.
    #[arg(long, global = true, value_name = "EPS")]
    tolerance: Option<f64>,
    /// SVG viewpoint for spherical scenes.
    #[arg(long, global = true, value_name = "X,Y,Z", value_parser = parse_view, allow_hyphen_values = true)]
    view: Option<[f64; 3]>,
}

#[derive(Args, Debug)]
struct Source {
    /// Request file; same as --input.
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve a spherical triangle from three of its six elements.
    Solve(Source),
    /// Lune, triangle and planar areas.
    Area(Source),
    /// Solid angles of polyhedral vertices.
    SolidAngle(SolidAngleArgs),
    /// Equal-area locus of triangle apices over a fixed base.
    Lexell(Source),
    /// Cevian concurrency identity and its converse construction.
    Cevian(Source),
    /// Triangles inscribed in a circle with sides through three points.
    Pappus(Source),
    /// Circles tangent to three circles.
    Apollonius2(Source),
    /// Spheres tangent to four spheres.
    Apollonius3(Source),
    /// Great-circle distance and initial bearing.
    Geodist(Source),
}

#[derive(Args, Debug)]
struct SolidAngleArgs {
    #[command(flatten)]
    source: Source,
    /// Number of equal faces; with --a, replaces the request.
    #[arg(long)]
    n: Option<u32>,
    /// Face angle for --n.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
}

fn parse_view(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let v: [f64; 3] = parts
        .try_into()
        .map_err(|_| "viewpoint needs three comma-separated numbers".to_string())?;
    if v.iter().all(|x| x.is_finite()) && v.iter().any(|x| *x != 0.0) {
        Ok(v)
    } else {
        Err("viewpoint must be a finite non-zero vector".into())
    }
}

/// What the process should emit.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn tolerance(flag: Option<f64>, env: Option<&str>) -> Result<Tolerances, String> {
    let eps = match (flag, env) {
        (Some(x), _) => x,
        (None, Some(s)) => s
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("{TOLERANCE_ENV}={s:?}: {e}"))?,
        (None, None) => return Ok(Tolerances::default()),
    };
    let tol = Tolerances::default().with_residual_eps(eps);
    tol.validate().map_err(|e| e.to_string())?;
    Ok(tol)
}

/// Splits a request into units and payload. Both `{"units", "payload"}`
/// envelopes and flat objects are accepted.
fn unpack(request: Value, command: &str, flag_degrees: bool) -> Result<(Units, Value), Failure> {
    let fail = |m: String| Failure {
        status: Status::InvalidInput,
        message: m,
    };
    let Value::Object(mut obj) = request else {
        return Err(fail("request must be a JSON object".into()));
    };
    if let Some(c) = obj.remove("command") {
        if c.as_str() != Some(command) {
            return Err(fail(format!("request is for {c}, not {command:?}")));
        }
    }
    let units = match obj.remove("units") {
        None => None,
        Some(u) => Some(serde_json::from_value::<Units>(u).map_err(|e| fail(format!("units: {e}")))?),
    };
    let units = match (units, flag_degrees) {
        (Some(Units::Radians), true) => {
            return Err(fail("request says radians but --degrees was given".into()))
        }
        (Some(u), _) => u,
        (None, true) => Units::Degrees,
        (None, false) => Units::Radians,
    };
    let payload = match obj.remove("payload") {
        Some(p) if obj.is_empty() => p,
        Some(_) => return Err(fail("fields beside \"payload\" are not allowed".into())),
        None => Value::Object(obj),
    };
    Ok((units, payload))
}

fn read_request(source: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<Value, Failure> {
    let fail = |m: String| Failure {
        status: Status::InvalidInput,
        message: m,
    };
    let bytes = match source {
        Some(path) => std::fs::read(path).map_err(|e| fail(format!("{}: {e}", path.display())))?,
        None => {
            let mut buf = Vec::new();
            stdin
                .read_to_end(&mut buf)
                .map_err(|e| fail(format!("standard input: {e}")))?;
            buf
        }
    };
    serde_json::from_slice(&bytes).map_err(|e| fail(format!("malformed JSON: {e}")))
}

fn finish(envelope: ResponseEnvelope, json: bool, mut stderr: String) -> Outcome {
    for d in &envelope.diagnostics {
        stderr.push_str(&format!("sphaerica: {d}\n"));
    }
    Outcome {
        code: envelope.status.exit_code(),
        stdout: if json { envelope.to_json() } else { envelope.to_text() },
        stderr,
    }
}

/// Runs one invocation. `args[0]` is the program name; `env_tolerance` is
/// the value of `SPHAERICA_TOLERANCE`, if set.
pub fn run(args: &[String], stdin: &mut dyn Read, env_tolerance: Option<&str>) -> Outcome {
    let json = args.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                };
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("usage error").trim_start_matches("error: ");
            return finish(ResponseEnvelope::failure(Status::InvalidInput, first), json, msg);
        }
    };
    let envelope = match execute(&cli, stdin, env_tolerance) {
        Ok(env) => env,
        Err(f) => ResponseEnvelope::failure(f.status, f.message),
    };
    finish(envelope, cli.json, String::new())
}

fn execute(cli: &Cli, stdin: &mut dyn Read, env_tolerance: Option<&str>) -> Result<ResponseEnvelope, Failure> {
    let tol = tolerance(cli.tolerance, env_tolerance).map_err(|m| Failure {
        status: Status::InvalidInput,
        message: m,
    })?;
    type Handler = fn(Value, &Context) -> Result<Report, Failure>;
    let (name, handler, source, inline): (&str, Handler, &Source, Option<Value>) = match &cli.command {
        Command::Solve(s) => ("solve", commands::solve, s, None),
        Command::Area(s) => ("area", commands::area, s, None),
        Command::SolidAngle(sa) => {
            let inline = match (sa.n, sa.a) {
                (Some(n), Some(a)) => Some(Value::Object(Map::from_iter([
                    ("n".to_string(), n.into()),
                    ("a".to_string(), a.into()),
                ]))),
                (None, None) => None,
                _ => {
                    return Err(Failure {
                        status: Status::InvalidInput,
                        message: "--n and --a go together".into(),
                    })
                }
            };
            ("solid-angle", commands::solid_angle, &sa.source, inline)
        }
        Command::Lexell(s) => ("lexell", commands::lexell, s, None),
        Command::Cevian(s) => ("cevian", commands::cevian, s, None),
        Command::Pappus(s) => ("pappus", commands::pappus, s, None),
        Command::Apollonius2(s) => ("apollonius2", commands::apollonius2, s, None),
        Command::Apollonius3(s) => ("apollonius3", commands::apollonius3, s, None),
        Command::Geodist(s) => ("geodist", commands::geodist, s, None),
    };
    if cli.svg.is_some() && !matches!(name, "lexell" | "cevian" | "pappus" | "apollonius2") {
        return Err(Failure {
            status: Status::InvalidInput,
            message: format!("--svg is not available for {name}"),
        });
    }
    let file = match (&source.file, &cli.input) {
        (Some(_), Some(_)) => {
            return Err(Failure {
                status: Status::InvalidInput,
                message: "give the request file either positionally or with --input".into(),
            })
        }
        (f, i) => f.as_ref().or(i.as_ref()),
    };
    let request = match inline {
        Some(v) if file.is_none() => v,
        Some(_) => {
            return Err(Failure {
                status: Status::InvalidInput,
                message: "--n/--a replace the request file".into(),
            })
        }
        None => read_request(file, stdin)?,
    };
    let (units, payload) = unpack(request, name, cli.degrees)?;
    let ctx = Context { units, tol };
    let report = handler(payload, &ctx)?;

    if report.results.is_empty() {
        return Err(Failure {
            status: Status::NoSolution,
            message: "no results".into(),
        });
    }
    let worst = report.residuals.iter().copied().fold(0.0, f64::max);
    if !(worst <= tol.residual_eps) {
        let mut env = ResponseEnvelope::failure(
            Status::NoSolution,
            format!("residual {worst:e} exceeds tolerance {:e}", tol.residual_eps),
        );
        env.residuals = report.residuals;
        return Ok(env);
    }
    let mut diagnostics = report.diagnostics;
    if let (Some(path), Some(drawing)) = (&cli.svg, &report.drawing) {
        let doc = svg::render(drawing, cli.view.unwrap_or([0.0, 0.0, 1.0]));
        std::fs::write(path, doc).map_err(|e| Failure {
            status: Status::InvalidInput,
            message: format!("cannot write {}: {e}", path.display()),
        })?;
        diagnostics.push(format!("wrote {}", path.display()));
    }
    Ok(ResponseEnvelope {
        status: Status::Ok,
        results: report.results,
        residuals: report.residuals,
        diagnostics,
    })
}
