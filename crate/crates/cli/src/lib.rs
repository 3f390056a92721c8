//! Command line front end for `mixmult`.
//!
//! Every subcommand reads JSON documents, runs one calculator and prints a
//! report `{command, result, certificate, wall_time_ms}` with sorted keys.

mod input;
mod output;

use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use mixmult::blowdown::{self, BoundsInput, Semigroup};
use mixmult::chern::top_segre_integral;
use mixmult::curve::{pullback_order, verify_curve, WeightTuple};
use mixmult::ideal::Budget;
use mixmult::multiplicity::{BackendChoice, EngineConfig, MultiplicityEngine};
use mixmult::{Error, ErrorKind, Ideal, Rational, Result};
use serde_json::{json, Value};

use input::{read, AnyMonomialDoc, ChernDoc, DatumDoc, GermDoc, IdealDoc, TableDoc};
use output::{int, multiplicity, rational, uint, uints};

#[derive(Debug, Parser)]
#[command(name = "mixmult", version, about = "Exact multiplicities of ideals, curve germs and blow-downs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Compact JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Maximum number of S-pair reductions per Gröbner basis.
    #[arg(long, global = true)]
    budget: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BackendArg {
    Auto,
    General,
    Monomial,
}

#[derive(Debug, clap::Args)]
struct BoundsArgs {
    #[arg(long)]
    k0: u32,
    #[arg(long)]
    k1: u32,
    #[arg(long)]
    p: u32,
    #[arg(long)]
    n: u32,
    #[arg(long, value_parser = parse_rational)]
    vol: Rational,
    #[arg(long = "volB", value_parser = parse_rational)]
    vol_b: Rational,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hilbert-Samuel multiplicity of an ideal.
    Hs {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long)]
        quotient: Option<PathBuf>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, value_enum, default_value = "auto")]
        backend: BackendArg,
    },
    /// Mixed multiplicity e(U_1^[d_1]; …; U_k^[d_k]).
    Mixed {
        #[arg(long, value_delimiter = ',', required = true)]
        ideals: Vec<PathBuf>,
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        #[arg(long)]
        quotient: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "auto")]
        backend: BackendArg,
    },
    /// Expansion of e(∏ U_i^{p_i}) in mixed multiplicities.
    Polarization {
        #[arg(long, value_delimiter = ',', required = true)]
        ideals: Vec<PathBuf>,
        #[arg(long, value_delimiter = ',', required = true)]
        powers: Vec<u32>,
    },
    /// Log-convexity of the chain e(U^[i]; V^[n-i]).
    ReesSharp {
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        ideals: Vec<PathBuf>,
        #[arg(long, alias = "dim")]
        n: Option<usize>,
        #[arg(long)]
        quotient: Option<PathBuf>,
    },
    /// Newton polygon multiplicity of a monomial ideal in two variables.
    Newton2d {
        #[arg(long)]
        ideal: PathBuf,
    },
    /// Number of standard monomials of a monomial ideal.
    Staircase {
        #[arg(long)]
        ideal: PathBuf,
    },
    /// Lelong number of a curve germ for a weight tuple.
    CurveLelong {
        #[arg(long)]
        germ: PathBuf,
        #[arg(long)]
        weights: PathBuf,
    },
    /// Lelong number against the Hilbert-Samuel multiplicity on the curve.
    VerifyCurve {
        #[arg(long)]
        germ: PathBuf,
        #[arg(long)]
        quotient: PathBuf,
        #[arg(long)]
        ideal: PathBuf,
    },
    /// Blow-down multiplicity k0²·deg L + Σ λ_j.
    Blowdown {
        #[arg(long)]
        datum: PathBuf,
    },
    /// First nongap and blow-down multiplicity of the point bundle.
    Semigroup {
        #[arg(long, value_delimiter = ',', num_args = 0..=1, default_value = "")]
        gaps: Vec<String>,
    },
    /// Lower and upper bounds for the blow-down multiplicity.
    Bounds(BoundsArgs),
    /// Volume control of the base locus.
    VolControl(BoundsArgs),
    /// Top Segre integral of the dual bundle.
    Segre {
        #[arg(long)]
        chern: PathBuf,
        #[arg(long)]
        table: PathBuf,
    },
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    Rational::from_str(s.trim()).map_err(|e| format!("`{s}` is not a rational number: {e}"))
}

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(kind: ErrorKind) -> i32 {
    match kind {
        ErrorKind::Input => 2,
        ErrorKind::Limit => 3,
        ErrorKind::Internal => 1,
    }
}

/// Runs one command line; `argv[0]` is the program name.
pub fn run<S: AsRef<str>>(argv: &[S]) -> Outcome {
    let args: Vec<String> = argv.iter().map(|s| s.as_ref().to_string()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            let text = e.render().to_string();
            return match e.kind() {
                K::DisplayHelp | K::DisplayVersion | K::DisplayHelpOnMissingArgumentOrSubcommand => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    let start = Instant::now();
    match execute(&cli) {
        Ok((result, certificate)) => {
            let report = json!({
                "command": args.get(1..).unwrap_or_default(),
                "result": result,
                "certificate": certificate,
                "wall_time_ms": start.elapsed().as_millis() as u64,
            });
            let mut stdout = if cli.pretty {
                serde_json::to_string_pretty(&report)
            } else {
                serde_json::to_string(&report)
            }
            .expect("JSON values serialize");
            stdout.push('\n');
            Outcome { code: 0, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: exit_code(e.kind()), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn engine(cli: &Cli, backend: BackendArg) -> MultiplicityEngine {
    let mut budget = Budget::default();
    if let Some(b) = cli.budget {
        budget.max_pair_reductions = b;
    }
    let backend = match backend {
        BackendArg::Auto => BackendChoice::Auto,
        BackendArg::General => BackendChoice::General,
        BackendArg::Monomial => BackendChoice::Monomial,
    };
    MultiplicityEngine::new(EngineConfig { budget, backend, ..EngineConfig::default() })
}

fn ideal(path: &Path) -> Result<Ideal> {
    read::<IdealDoc>(path)?.build()
}

fn optional_ideal(path: &Option<PathBuf>) -> Result<Option<Ideal>> {
    path.as_deref().map(ideal).transpose()
}

fn bounds_input(b: &BoundsArgs) -> BoundsInput<Rational> {
    BoundsInput { k0: b.k0, k1: b.k1, p: b.p, n: b.n, vol: b.vol.clone(), vol_b: b.vol_b.clone() }
}

fn execute(cli: &Cli) -> Result<(Value, Value)> {
    match &cli.command {
        Command::Hs { ideal: path, quotient, dim, backend } => {
            let u = ideal(path)?;
            let j = optional_ideal(quotient)?;
            let r = engine(cli, *backend).hs_multiplicity(&u, j.as_ref(), *dim)?;
            Ok((json!({ "value": uint(r.value as u128) }), multiplicity(&r)))
        }
        Command::Mixed { ideals, degrees, quotient, backend } => {
            let us = ideals.iter().map(|p| ideal(p)).collect::<Result<Vec<_>>>()?;
            let j = optional_ideal(quotient)?;
            let r = engine(cli, *backend).mixed_multiplicity(&us, degrees, j.as_ref())?;
            Ok((json!({ "value": uint(r.value as u128) }), multiplicity(&r)))
        }
        Command::Polarization { ideals, powers } => {
            let us = ideals.iter().map(|p| ideal(p)).collect::<Result<Vec<_>>>()?;
            let r = engine(cli, BackendArg::Auto).polarization_check(&us, powers)?;
            let terms: Vec<Value> = r
                .terms
                .iter()
                .map(|t| {
                    json!({
                        "degrees": uints(&t.degrees),
                        "coefficient": uint(t.coefficient as u128),
                        "mixed": multiplicity(&t.mixed),
                    })
                })
                .collect();
            Ok((
                json!({ "lhs": uint(r.lhs), "rhs": uint(r.rhs), "equal": r.equal }),
                json!({ "product": multiplicity(&r.product), "terms": terms }),
            ))
        }
        Command::ReesSharp { ideals, n, quotient } => {
            if ideals.len() != 2 {
                return Err(Error::InvalidInput(format!("rees-sharp takes two ideals, got {}", ideals.len())));
            }
            let u = ideal(&ideals[0])?;
            let v = ideal(&ideals[1])?;
            let j = optional_ideal(quotient)?;
            let r = engine(cli, BackendArg::Auto).rees_sharp_check(&u, &v, *n, j.as_ref())?;
            let inequalities: Vec<Value> = r
                .inequalities
                .iter()
                .map(|i| {
                    json!({
                        "index": i.index,
                        "square": uint(i.square),
                        "product": uint(i.product),
                        "holds": i.holds,
                    })
                })
                .collect();
            let reports: Vec<Value> = r.reports.iter().map(multiplicity).collect();
            Ok((
                json!({ "chain": uints(&r.chain), "pass": r.pass }),
                json!({ "inequalities": inequalities, "reports": reports }),
            ))
        }
        Command::Newton2d { ideal: path } => {
            let m = read::<AnyMonomialDoc>(path)?.build()?;
            let polygon = m.newton_polygon_2d()?;
            let hull: Vec<Value> = polygon.hull.iter().map(|v| json!([v[0], v[1]])).collect();
            Ok((
                json!({ "value": uint(polygon.value as u128) }),
                json!({ "hull": hull, "generators": m.generators() }),
            ))
        }
        Command::Staircase { ideal: path } => {
            let m = read::<AnyMonomialDoc>(path)?.build()?;
            let value = m.staircase_colength()?;
            Ok((json!({ "value": uint(value as u128) }), json!({ "generators": m.generators() })))
        }
        Command::CurveLelong { germ, weights } => {
            let g = read::<GermDoc>(germ)?.build()?;
            let w = WeightTuple::from_ideal(&ideal(weights)?);
            let total = mixmult::curve::curve_lelong_number(&g, &w)?;
            let orders: Vec<u32> = g.branches().iter().map(|b| pullback_order(&w, b)).collect::<Result<_>>()?;
            Ok((json!({ "value": uint(total as u128) }), json!({ "branch_orders": uints(&orders) })))
        }
        Command::VerifyCurve { germ, quotient, ideal: path } => {
            let g = read::<GermDoc>(germ)?.build()?;
            let j = ideal(quotient)?;
            let u = ideal(path)?;
            let r = verify_curve(&g, &j, &u, &engine(cli, BackendArg::Auto))?;
            Ok((
                json!({ "lelong": uint(r.lelong as u128), "hs": uint(r.hs as u128), "equal": r.equal }),
                json!({ "branch_orders": uints(&r.branch_orders), "multiplicity": multiplicity(&r.multiplicity) }),
            ))
        }
        Command::Blowdown { datum } => {
            let l = read::<DatumDoc>(datum)?.build();
            let r = blowdown::rs_blowdown_multiplicity(&l)?;
            Ok((
                json!({ "value": uint(r.value as u128) }),
                json!({ "k0_squared_degree": uint(r.leading as u128), "lambdas": uints(&r.lambdas) }),
            ))
        }
        Command::Semigroup { gaps } => {
            let gaps = gaps
                .iter()
                .filter(|g| !g.trim().is_empty())
                .map(|g| {
                    g.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::InvalidInput(format!("gap `{g}` is not a natural number")))
                })
                .collect::<Result<Vec<_>>>()?;
            let s = Semigroup::new(gaps)?;
            let kappa = blowdown::first_nongap(&s);
            let l = blowdown::point_bundle(&s);
            let r = blowdown::rs_blowdown_multiplicity(&l)?;
            let base_point = match l.base_points.first() {
                Some(b) => json!({ "kj": b.kj, "d_seq": uints(&b.d_seq) }),
                None => Value::Null,
            };
            Ok((
                json!({ "first_nongap": kappa, "multiplicity": uint(r.value as u128), "genus": s.genus() }),
                json!({ "base_point": base_point, "lambdas": uints(&r.lambdas) }),
            ))
        }
        Command::Bounds(b) => {
            let (lower, upper) = blowdown::mult_bounds(&bounds_input(b))?;
            Ok((json!({ "lower": rational(&lower), "upper": rational(&upper) }), bounds_echo(b)))
        }
        Command::VolControl(b) => {
            let r = blowdown::vol_control_check(&bounds_input(b))?;
            Ok((
                json!({ "bound": rational(&r.bound), "slack": rational(&r.slack), "pass": r.pass }),
                bounds_echo(b),
            ))
        }
        Command::Segre { chern, table } => {
            let c = read::<ChernDoc>(chern)?.build()?;
            let t = input::build_table(&read::<TableDoc>(table)?, &c)?;
            let r = top_segre_integral(&c, &t)?;
            Ok((json!({ "value": int(&r.value) }), json!({ "top_segre": r.top_segre.to_string() })))
        }
    }
}

fn bounds_echo(b: &BoundsArgs) -> Value {
    json!({
        "k0": b.k0,
        "k1": b.k1,
        "p": b.p,
        "n": b.n,
        "vol": rational(&b.vol),
        "volB": rational(&b.vol_b),
    })
}
