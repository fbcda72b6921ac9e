//! Command-line front end. The binary only calls [`main`].

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::family::{
    horodecki_b, horodecki_classification, horodecki_gamma, horodecki_point, plane_point,
    FamilyPoint,
};
use crate::format::sig12;
use crate::regions::{scan, write_scan_csv, AxisRange, Classification, Classifier, GridSpec};
use crate::verify::{run_all, run_check, VerifyConfig};
use crate::witness::{lambda_min, pl3_start, tot_start, NamedPlane, LAMBDA_TOL};

#[derive(Debug, Parser)]
#[command(
    name = "magic-simplex",
    version,
    about = "Entanglement classification of two-qutrit Bell-state mixtures"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Seed for the product-state sampler and random checks.
    #[arg(long, global = true, default_value_t = 20_240_101)]
    pub seed: u64,

    /// Worker threads for scans (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify one family point.
    Classify(PointArgs),
    /// Classify every point of a grid.
    Scan(ScanArgs),
    /// Smallest lambda at which the line witness is certified.
    LambdaMin(LambdaArgs),
    /// Named witness planes.
    Witness {
        #[command(subcommand)]
        action: WitnessAction,
    },
    /// Horodecki line labels and verdicts.
    Horodecki(HorodeckiArgs),
    /// Replay every reproducibility check.
    Verify {
        /// Run only these checks (1-based ids); repeatable.
        #[arg(long)]
        only: Vec<usize>,
    },
}

/// Point addressing: `--alpha --beta --gamma`, `--b`, or `--epsilon --gamma`.
#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    /// Horodecki line parameter in [0, 5].
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    /// Boundary-plane offset; requires `--gamma`.
    #[arg(long, allow_hyphen_values = true)]
    pub epsilon: Option<f64>,
}

impl PointArgs {
    fn is_empty(&self) -> bool {
        self.alpha.is_none()
            && self.beta.is_none()
            && self.gamma.is_none()
            && self.b.is_none()
            && self.epsilon.is_none()
    }

    pub fn resolve(&self) -> Result<FamilyPoint> {
        let invalid = |m: &str| Err(Error::OutOfRange(m.to_string()));
        match (self.alpha, self.beta, self.gamma, self.b, self.epsilon) {
            (None, None, None, Some(b), None) => horodecki_point(b),
            (None, None, Some(g), None, Some(e)) => Ok(plane_point(e, g)),
            (Some(a), Some(b), Some(g), None, None) => Ok(FamilyPoint::new(a, b, g)),
            (_, _, _, Some(_), _) => invalid("--b cannot be combined with other point flags"),
            (_, _, _, None, Some(_)) => {
                invalid("--epsilon needs --gamma and cannot be combined with --alpha/--beta")
            }
            _ => invalid("give --alpha, --beta and --gamma, or --b, or --epsilon with --gamma"),
        }
    }
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Comma-separated `a0:a1:step` ranges: alpha,beta,gamma (or gamma,beta
    /// with `--boundary-plane`). A single number fixes that axis.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: String,
    /// Scan the boundary plane in `(gamma, beta)` coordinates.
    #[arg(long)]
    pub boundary_plane: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Start of the global minimum over boundary-plane lines.
    Tot,
    /// Start on the first witness plane at gamma = 2/7.
    Pl3,
}

#[derive(Debug, Args)]
pub struct LambdaArgs {
    #[command(flatten)]
    pub point: PointArgs,
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Bisection tolerance in lambda.
    #[arg(long, default_value_t = LAMBDA_TOL)]
    pub tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum WitnessAction {
    /// Matrix, Weyl coefficients and plane of a named witness as JSON.
    Dump {
        #[arg(long)]
        name: NamedPlane,
    },
}

#[derive(Debug, Args)]
pub struct HorodeckiArgs {
    /// Single line parameter; omit for a table over [0, 5].
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    /// Table step in b.
    #[arg(long, default_value_t = 0.25)]
    pub step: f64,
}

/// Parses the process arguments, runs the command and returns the exit code.
pub fn main() -> i32 {
    init_logging();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn init_logging() {
    let env = env_logger::Env::new().filter_or("MAGIC_SIMPLEX_LOG", "error");
    let _ = env_logger::Builder::from_env(env).try_init();
}

/// Runs a parsed command. `Ok` carries the exit code; errors mean invalid
/// input or an unwritable output.
pub fn run(cli: &Cli) -> Result<i32> {
    let mut out = open_output(&cli.out)?;
    let threads = cli.threads.map(|t| t as usize);
    let code = match &cli.command {
        Command::Classify(args) => {
            let p = args.resolve()?;
            let c = Classifier::shared()?.classify(p);
            write_classification(&mut out, cli.format, &c)?;
            0
        }
        Command::Scan(args) => {
            let grid = parse_grid(&args.grid, args.boundary_plane)?;
            let res = scan(&grid, threads)?;
            match cli.format {
                Format::Csv => write_scan_csv(&res.rows, &mut out)?,
                Format::Json => {
                    let v = round_json(serde_json::to_value(&res.summary)?);
                    serde_json::to_writer_pretty(&mut out, &v)?;
                    writeln!(out)?;
                }
            }
            log::info!("scan summary: {:?}", res.summary.counts);
            0
        }
        Command::LambdaMin(args) => {
            let start = match (args.preset, args.point.is_empty()) {
                (Some(Preset::Tot), true) => tot_start()?,
                (Some(Preset::Pl3), true) => pl3_start()?,
                (None, false) => args.point.resolve()?,
                (Some(_), false) => {
                    return Err(Error::OutOfRange(
                        "--preset cannot be combined with point flags".into(),
                    ))
                }
                (None, true) => return Err(Error::OutOfRange("give a point or --preset".into())),
            };
            let lm = lambda_min(start, args.tol)?;
            match cli.format {
                Format::Csv => {
                    writeln!(out, "alpha,beta,gamma,lambda_min,closed_form,probes")?;
                    writeln!(
                        out,
                        "{},{},{},{},{},{}",
                        sig12(start.alpha),
                        sig12(start.beta),
                        sig12(start.gamma),
                        sig12(lm.lambda),
                        sig12(lm.closed_form),
                        lm.probes
                    )?;
                }
                Format::Json => {
                    let v = json!({
                        "start": start,
                        "lambda_min": lm.lambda,
                        "closed_form": lm.closed_form,
                        "probes": lm.probes,
                    });
                    serde_json::to_writer_pretty(&mut out, &round_json(v))?;
                    writeln!(out)?;
                }
            }
            0
        }
        Command::Witness {
            action: WitnessAction::Dump { name },
        } => {
            serde_json::to_writer_pretty(&mut out, &witness_json(*name)?)?;
            writeln!(out)?;
            0
        }
        Command::Horodecki(args) => {
            let bs: Vec<f64> = match args.b {
                Some(b) => vec![b],
                None => AxisRange::new(0.0, 5.0, args.step)?.values(),
            };
            write_horodecki(&mut out, cli.format, &bs)?;
            0
        }
        Command::Verify { only } => {
            let cfg = VerifyConfig {
                seed: cli.seed,
                threads,
            };
            let reports = if only.is_empty() {
                run_all(&cfg)
            } else {
                only.iter().map(|&id| run_check(id, &cfg)).collect()
            };
            match cli.format {
                Format::Csv => {
                    for r in &reports {
                        writeln!(out, "{r}")?;
                    }
                }
                Format::Json => {
                    serde_json::to_writer_pretty(&mut out, &reports)?;
                    writeln!(out)?;
                }
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            eprintln!(
                "{} of {} checks passed",
                reports.len() - failed,
                reports.len()
            );
            i32::from(failed > 0)
        }
    };
    out.flush()?;
    Ok(code)
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

/// `a0:a1:step,...` into a grid: three axes, or two with `boundary_plane`.
pub fn parse_grid(s: &str, boundary_plane: bool) -> Result<GridSpec> {
    let axes: Vec<AxisRange> = s.split(',').map(str::parse).collect::<Result<_>>()?;
    match (boundary_plane, axes.as_slice()) {
        (false, [alpha, beta, gamma]) => Ok(GridSpec::Box {
            alpha: *alpha,
            beta: *beta,
            gamma: *gamma,
        }),
        (true, [gamma, beta]) => Ok(GridSpec::BoundaryPlane {
            gamma: *gamma,
            beta: *beta,
        }),
        (false, _) => Err(Error::EmptyGrid(format!(
            "--grid {s:?} needs three ranges alpha,beta,gamma"
        ))),
        (true, _) => Err(Error::EmptyGrid(format!(
            "--grid {s:?} needs two ranges gamma,beta with --boundary-plane"
        ))),
    }
}

/// Header of the single-point CSV.
pub const FAMILY_CSV_HEADER: &str = "alpha,beta,gamma,pyramid_margin,pt_min_eig,classification";

fn write_classification(out: &mut dyn Write, format: Format, c: &Classification) -> Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "{FAMILY_CSV_HEADER}")?;
            writeln!(
                out,
                "{},{},{},{},{},{}",
                sig12(c.point.alpha),
                sig12(c.point.beta),
                sig12(c.point.gamma),
                sig12(c.evidence.pyramid_margin),
                c.evidence.pt_min_eig.map(sig12).unwrap_or_default(),
                c.verdict
            )?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &round_json(serde_json::to_value(c)?))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn write_horodecki(out: &mut dyn Write, format: Format, bs: &[f64]) -> Result<()> {
    let classifier = Classifier::shared()?;
    let mut rows = Vec::with_capacity(bs.len());
    for &b in bs {
        let p = horodecki_point(b)?;
        let label = horodecki_classification(b)?;
        let verdict = classifier.classify(p).verdict;
        rows.push((b, p, label, verdict));
    }
    match format {
        Format::Csv => {
            writeln!(out, "b,gamma,alpha,beta,label,classification")?;
            for (b, p, label, verdict) in rows {
                writeln!(
                    out,
                    "{},{},{},{},{label},{verdict}",
                    sig12(b),
                    sig12(horodecki_gamma(b)),
                    sig12(p.alpha),
                    sig12(p.beta)
                )?;
            }
        }
        Format::Json => {
            let v: Vec<Value> = rows
                .into_iter()
                .map(|(b, p, label, verdict)| {
                    json!({
                        "b": b,
                        "gamma": horodecki_gamma(b),
                        "mirror_b": horodecki_b(-p.gamma),
                        "point": p,
                        "label": label,
                        "classification": verdict,
                    })
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &round_json(Value::Array(v)))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// JSON dump of a named witness: matrix, Weyl coefficients and plane.
pub fn witness_json(name: NamedPlane) -> Result<Value> {
    let resolved = name.resolve()?;
    let m = resolved.witness.matrix();
    let plane = resolved.plane();
    let v = json!({
        "name": name.to_string(),
        "dim": m.dim(),
        "entries": m.entries().iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
        "weyl_coefficients": resolved
            .witness
            .coeffs()
            .to_rows()
            .into_iter()
            .map(|(n, mm, re, im)| json!([n, mm, re, im]))
            .collect::<Vec<_>>(),
        "plane": {
            "a_coeff": 1.0,
            "b_coeff": plane.b_coeff,
            "g_coeff": plane.g_coeff,
            "const": plane.constant,
        },
    });
    Ok(round_json(v))
}

/// Rounds every float in a JSON value to 12 significant digits.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            let r: f64 = sig12(x).parse().unwrap_or(x);
            // Integers stay integers, -0 becomes 0.
            json!(if r == 0.0 { 0.0 } else { r })
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_json).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}
