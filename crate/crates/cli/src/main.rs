//! `lproj`: command-line access to projector norms, absorption indices, bounds,
//! constructions and searches.

mod output;
mod reproduce;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lagrange_core::bounds::{self, BodyTag};
use lagrange_core::constructions::{self, MaxVolMode};
use lagrange_core::evolume::{e_measure_recurrence_check, e_volume_mc, EnGamma};
use lagrange_core::geometry::Point;
use lagrange_core::hadamard::hadamard;
use lagrange_core::io::{parse_body_spec, resolve_simplex};
use lagrange_core::legendre::{chi, chi_inv, chi_inv_lower, chi_sum};
use lagrange_core::optimizer::{certify, search, SearchConfig, SearchMode};
use lagrange_core::projector::{absorption, Projector};
use lagrange_core::Error;

use output::{Format, Report};

#[derive(Parser)]
#[command(
    name = "lproj",
    version,
    about = "Norms of linear interpolation projectors on convex bodies"
)]
struct Cli {
    /// Output format; json keeps full float precision, plain rounds to 6 significant digits.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Standardized Legendre polynomials.
    #[command(subcommand)]
    Legendre(LegendreOp),
    /// Volume of E_{n,γ} = {Σ|x_j| + |1 − Σx_j| ≤ γ}.
    #[command(subcommand)]
    Evol(EvolOp),
    /// Projector norm over a body.
    Norm(NodesArgs),
    /// Absorption indices ξ and α of the node simplex.
    Absorb(NodesArgs),
    /// All bounds on the minimal projector norm.
    Bounds {
        #[arg(long, value_enum)]
        body: BodyArg,
        #[arg(long)]
        n: usize,
    },
    /// Hadamard matrices and special simplices.
    #[command(subcommand)]
    Construct(ConstructOp),
    /// Maximum-volume simplex with vertices at cube vertices.
    Maxvol {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: MaxVolArg,
        #[arg(long, default_value_t = 50)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search for node sets of small projector norm.
    Search(SearchArgs),
    /// Reference tables.
    #[command(subcommand)]
    Tables(TableOp),
    /// Regenerate all reference tables as CSV and check them against known values.
    Reproduce {
        #[arg(long, default_value = "tables")]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum LegendreOp {
    /// χₙ(t) by the three-term recurrence.
    Eval {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
    /// χₙ(γ) by the closed binomial sum (γ ≥ 1).
    Sum {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
    },
    /// The t ≥ 1 with χₙ(t) = s.
    Inv {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
    },
    /// The lower estimate (s / C(n, ⌊n/2⌋))^(1/n) of χₙ⁻¹(s).
    InvLower {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
    },
}

#[derive(Subcommand)]
enum EvolOp {
    /// χₙ(γ)/n!.
    Exact {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
    },
    /// Monte Carlo estimate in [−γ, γ]ⁿ.
    Mc {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Residual of the three-term recurrence between consecutive volumes.
    Recurrence {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
}

#[derive(Args)]
struct NodesArgs {
    /// cube:<n>, ball:<n>, poly:<path>, cloud:<path>, json:<path>, or cube/ball with --n.
    #[arg(long)]
    body: String,
    #[arg(long)]
    n: Option<usize>,
    /// Simplex JSON file or catalog:<name>.
    #[arg(long)]
    simplex: String,
}

#[derive(Subcommand)]
enum ConstructOp {
    Hadamard {
        #[arg(long)]
        order: usize,
    },
    RegularCube {
        #[arg(long)]
        n: usize,
    },
    RegularBall {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
    },
    Catalog {
        /// golden_triangle, S_prime_3, S_doubleprime_3 or hadamard_7.
        #[arg(long)]
        name: String,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    body: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value = "continuous")]
    mode: SearchArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 16)]
    restarts: usize,
    #[arg(long, default_value_t = 20_000)]
    max_iters: usize,
    #[arg(long, default_value_t = 0.25)]
    step: f64,
}

#[derive(Subcommand)]
enum TableOp {
    /// Maximum simplex volumes νₙ and determinants hₙ, n ≤ 12.
    Nu,
    /// Known upper estimates of θₙ(Qₙ), n ≤ 27, with lower bounds alongside.
    ThetaUpper,
    /// The ball optimum data aₙ, pₙ, kₙ.
    BallK {
        #[arg(long, default_value_t = 15)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BodyArg {
    Cube,
    Ball,
}

#[derive(Clone, Copy, ValueEnum)]
enum MaxVolArg {
    Exhaustive,
    Heuristic,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchArg {
    Exhaustive,
    Continuous,
}

pub enum Failure {
    Core(Error),
    Io(io::Error),
    Regression(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) => match e {
                Error::InvalidInput(_) | Error::UnknownName(_) => 2,
                Error::NotConstructible { .. } => 4,
                Error::Domain(_)
                | Error::DegenerateSimplex { .. }
                | Error::DimensionMismatch { .. }
                | Error::UnsupportedBody(_)
                | Error::EmptyVertexSet
                | Error::TooManySignVectors { .. }
                | Error::TooManyVertices { .. }
                | Error::SimplexNotInBody { .. }
                | Error::DimensionTooLarge { .. } => 3,
                Error::Lp(_) => 1,
            },
            Failure::Io(_) => 1,
            Failure::Regression(_) => 5,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Io(e) => format!("i/o error: {e}"),
            Failure::Regression(k) => format!("{k} regression mismatch(es)"),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut stdout = io::stdout().lock();
    match run(cli.cmd, cli.format, &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(f) => {
            let _ = stdout.flush();
            eprintln!("lproj: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

fn vertices_json(s: &lagrange_core::Simplex) -> Value {
    json!(s
        .vertices()
        .iter()
        .map(|v| v.coords().to_vec())
        .collect::<Vec<_>>())
}

fn run(cmd: Cmd, format: Format, out: &mut dyn Write) -> Result<(), Failure> {
    let report = match cmd {
        Cmd::Legendre(op) => match op {
            LegendreOp::Eval { n, t } => Report::new(
                "legendre eval",
                json!({"n": n, "t": t}),
                json!({"chi": chi(n, t)}),
            ),
            LegendreOp::Sum { n, gamma } => Report::new(
                "legendre sum",
                json!({"n": n, "gamma": gamma}),
                json!({"chi": chi_sum(n, gamma)?}),
            ),
            LegendreOp::Inv { n, s } => Report::new(
                "legendre inv",
                json!({"n": n, "s": s}),
                json!({"t": chi_inv(n, s)?}),
            ),
            LegendreOp::InvLower { n, s } => Report::new(
                "legendre inv-lower",
                json!({"n": n, "s": s}),
                json!({"t": chi_inv_lower(n, s)?}),
            ),
        },
        Cmd::Evol(op) => match op {
            EvolOp::Exact { n, gamma } => {
                let e = EnGamma::new(n, gamma)?;
                Report::new(
                    "evol exact",
                    json!({"n": n, "gamma": gamma}),
                    json!({"volume": e.volume_exact()}),
                )
            }
            EvolOp::Mc {
                n,
                gamma,
                samples,
                seed,
            } => {
                let e = EnGamma::new(n, gamma)?;
                let est = e_volume_mc(&e, samples, seed)?;
                Report::new(
                    "evol mc",
                    json!({"n": n, "gamma": gamma, "samples": samples, "seed": seed}),
                    json!({
                        "estimate": est.estimate,
                        "std_error": est.std_error,
                        "hits": est.hits,
                        "exact": e.volume_exact(),
                        "z_score": (est.estimate - e.volume_exact()) / est.std_error,
                    }),
                )
            }
            EvolOp::Recurrence { n, t } => Report::new(
                "evol recurrence",
                json!({"n": n, "t": t}),
                json!({"residual": e_measure_recurrence_check(n, t)?}),
            ),
        },
        Cmd::Norm(a) => {
            let body = parse_body_spec(&a.body, a.n)?;
            let s = resolve_simplex(&a.simplex)?;
            let r = Projector::new(s.clone())?.norm(&body)?;
            Report::new(
                "norm",
                json!({"body": body, "simplex": a.simplex, "vertices": vertices_json(&s)}),
                json!({"norm": r.value, "witness": r.witness_point.coords(), "signs": r.witness_signs}),
            )
        }
        Cmd::Absorb(a) => {
            let body = parse_body_spec(&a.body, a.n)?;
            let s = resolve_simplex(&a.simplex)?;
            let r = absorption(&body, &s)?;
            Report::new(
                "absorb",
                json!({"body": body, "simplex": a.simplex, "vertices": vertices_json(&s)}),
                json!({
                    "xi": r.xi,
                    "alpha": r.alpha,
                    "circumscribed": r.circumscribed,
                    "max_negative": r.max_negative,
                }),
            )
        }
        Cmd::Bounds { body, n } => {
            let tag = match body {
                BodyArg::Cube => BodyTag::Cube,
                BodyArg::Ball => BodyTag::Ball,
            };
            let rep = bounds::bound_report(tag, n)?;
            let mut result = serde_json::to_value(&rep).expect("serializable");
            result["consistent"] = json!(rep.is_consistent());
            match tag {
                BodyTag::Cube => {
                    let (lo, hi) = bounds::xi_cube_bounds(n)?;
                    result["xi_bounds"] = json!([lo, hi]);
                    if let Some(u) = bounds::theta_upper(n) {
                        result["upper_table_entry"] = json!(u.entry.display());
                    }
                    if n > 2 {
                        result["n0_condition"] =
                            serde_json::to_value(bounds::n0_check(n)?).expect("serializable");
                    }
                }
                BodyTag::Ball => {
                    result["ball_optimum"] =
                        serde_json::to_value(bounds::ball_optimum(n)?).expect("serializable");
                    result["equals_3_minus_4_over_n_plus_1"] =
                        json!(bounds::theta_ball_34_check(n)?);
                }
            }
            Report::new("bounds", json!({"body": tag, "n": n}), result)
        }
        Cmd::Construct(op) => match op {
            ConstructOp::Hadamard { order } => {
                let h = hadamard(order)?;
                Report::new(
                    "construct hadamard",
                    json!({"order": order}),
                    json!({"order": h.order(), "valid": h.is_valid(), "entries": h.entries()}),
                )
            }
            ConstructOp::RegularCube { n } => {
                let s = constructions::regular_simplex_in_cube(n)?;
                Report::new(
                    "construct regular-cube",
                    json!({"n": n}),
                    json!({"simplex": s, "volume": s.volume()?}),
                )
            }
            ConstructOp::RegularBall { n, radius } => {
                let s = constructions::regular_simplex_in_ball(n, &Point::origin(n), radius)?;
                Report::new(
                    "construct regular-ball",
                    json!({"n": n, "radius": radius}),
                    json!({"simplex": s, "volume": s.volume()?}),
                )
            }
            ConstructOp::Catalog { name } => {
                let s = constructions::catalog(&name)?;
                Report::new(
                    "construct catalog",
                    json!({"name": name}),
                    json!({"simplex": s}),
                )
            }
        },
        Cmd::Maxvol {
            n,
            mode,
            restarts,
            seed,
        } => {
            let m = match mode {
                MaxVolArg::Exhaustive => MaxVolMode::Exhaustive,
                MaxVolArg::Heuristic => MaxVolMode::Heuristic { restarts },
            };
            let r = constructions::maxvol_simplex_cube(n, m, seed)?;
            Report::new(
                "maxvol",
                json!({"n": n, "mode": m, "seed": seed}),
                serde_json::to_value(&r).expect("serializable"),
            )
        }
        Cmd::Search(a) => {
            let body = parse_body_spec(&a.body, a.n)?;
            let mode = match a.mode {
                SearchArg::Exhaustive => SearchMode::ExhaustiveCubeVertices,
                SearchArg::Continuous => SearchMode::ContinuousLocal,
            };
            let mut cfg = SearchConfig::new(body.clone(), mode)
                .with_restarts(a.restarts)
                .with_seed(a.seed);
            cfg.max_iters = a.max_iters;
            cfg.step_init = a.step;
            let r = search(&cfg)?;
            let cert = certify(&r.nodes, r.norm, &body)?;
            Report::new(
                "search",
                serde_json::to_value(&cfg).expect("serializable"),
                json!({
                    "norm": r.norm,
                    "nodes": vertices_json(&r.nodes),
                    "restart_best": r.trace.iter().map(|t| t.best()).collect::<Vec<_>>(),
                    "seed": r.seed_used,
                    "certificate": cert,
                }),
            )
        }
        Cmd::Tables(op) => {
            let (name, header, rows) = match op {
                TableOp::Nu => ("tables nu", reproduce::NU_HEADER, reproduce::nu_rows()?),
                TableOp::ThetaUpper => (
                    "tables theta-upper",
                    reproduce::THETA_HEADER,
                    reproduce::theta_rows(),
                ),
                TableOp::BallK { max_n } => (
                    "tables ball-k",
                    reproduce::BALL_K_HEADER,
                    reproduce::ball_k_rows(1..=max_n)?,
                ),
            };
            let header: Vec<String> = header.iter().map(|s| s.to_string()).collect();
            let objects: Vec<Value> = rows
                .iter()
                .map(|r| Value::Object(header.iter().cloned().zip(r.iter().cloned()).collect()))
                .collect();
            Report::new(name, json!({}), json!({"rows": objects})).with_table(header, rows)
        }
        Cmd::Reproduce { out: dir } => {
            let summary = reproduce::reproduce(&dir)?;
            let mismatches = summary.mismatches;
            Report::new(
                "reproduce",
                json!({"out": dir}),
                serde_json::to_value(&summary).expect("serializable"),
            )
            .write(format, out)?;
            if mismatches > 0 {
                return Err(Failure::Regression(mismatches));
            }
            return Ok(());
        }
    };
    report.write(format, out)?;
    Ok(())
}
