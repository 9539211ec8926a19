use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use leibniz_ct::census::{ct_census, DEFAULT_TABLE_BUDGET};
use leibniz_ct::io::{parse_algebra, quotient_by_spec, serialize_any};
use leibniz_ct::report::{analyze_any, render_analysis, render_verification, verify_any, FamilyRequest, Suite};
use leibniz_ct::{AnyAlgebra, Error, FieldSpec};

/// Exact computations with Leibniz algebras and the centraliser-transitive property.
#[derive(Parser)]
#[command(name = "leibniz-ct", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Identity check, series, kernel, centre, radicals and CT verdict.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// CT census of every structure-constant table over GF(p).
    Census {
        #[arg(long = "gf")]
        p: u32,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = DEFAULT_TABLE_BUDGET)]
        budget: u128,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print a family member in the algebra file format.
    Family {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Quotient by the span of comma-separated element expressions.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        ideal: String,
    },
    /// Run verification suites on a file or a family member.
    Verify {
        #[arg(required_unless_present = "family", conflicts_with = "family")]
        file: Option<PathBuf>,
        #[command(flatten)]
        family: OptFamilyArgs,
        /// all, or a comma-separated list of lemma1, lemmas, theorem1, solv, solv2, fac, main
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Cyclic,
    Jac,
    Sl2,
}

#[derive(Args)]
struct FieldArgs {
    /// Work over GF(p).
    #[arg(long = "gf", conflicts_with = "q")]
    gf: Option<u64>,
    /// Work over the rationals.
    #[arg(long)]
    q: bool,
    /// Comma-separated alpha_2, .., alpha_n (cyclic only).
    #[arg(long, allow_hyphen_values = true)]
    alphas: Option<String>,
    /// Prime for the jac family.
    #[arg(long)]
    p: Option<u64>,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(value_enum)]
    name: FamilyName,
    #[command(flatten)]
    field: FieldArgs,
}

#[derive(Args)]
struct OptFamilyArgs {
    #[arg(long, value_enum)]
    family: Option<FamilyName>,
    #[command(flatten)]
    field: FieldArgs,
}

enum Failure {
    Usage(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotAnIdeal | Error::NotCt | Error::NotSolvable => Failure::Math(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn field_of(args: &FieldArgs) -> Result<FieldSpec, Failure> {
    match (args.gf, args.q) {
        (Some(p), false) => Ok(FieldSpec::prime(p)?),
        (None, true) => Ok(FieldSpec::Rationals),
        _ => Err(Failure::Usage("choose exactly one of --gf P or --q".into())),
    }
}

fn request(name: FamilyName, args: &FieldArgs) -> Result<FamilyRequest, Failure> {
    Ok(match name {
        FamilyName::Cyclic => {
            let alphas = args
                .alphas
                .as_deref()
                .ok_or_else(|| Failure::Usage("family cyclic needs --alphas".into()))?;
            FamilyRequest::Cyclic {
                field: field_of(args)?,
                alphas: alphas.split(',').map(|s| s.trim().to_string()).collect(),
            }
        }
        FamilyName::Jac => FamilyRequest::Jac {
            p: args.p.ok_or_else(|| Failure::Usage("family jac needs --p".into()))?,
        },
        FamilyName::Sl2 => FamilyRequest::Sl2 { field: field_of(args)? },
    })
}

fn load(path: &PathBuf) -> Result<AnyAlgebra, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_algebra(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Analyze { file, json, seed } => {
            let l = load(&file)?;
            let report = analyze_any(&l, seed);
            if json {
                print_json(&report);
            } else {
                print!("{}", render_analysis(&report));
            }
            Ok(report["leibniz"]["ok"] == Value::Bool(true))
        }
        Command::Census {
            p,
            dim,
            budget,
            jobs,
            json,
        } => {
            let r = ct_census(p, dim, budget, jobs.max(1))?;
            if json {
                print_json(&serde_json::to_value(&r).expect("plain data"));
            } else {
                println!(
                    "GF({}) dim {}: {} tables, {} leibniz, {} ct ({} nonzero), {} not ct",
                    r.p, r.dim, r.tables, r.leibniz_valid, r.ct, r.ct_nonzero, r.not_ct
                );
                println!(
                    "ct with nonzero centre: {}, oracle disagreements: {}, witness failures: {}",
                    r.ct_with_center, r.oracle_disagreements, r.witness_failures
                );
            }
            Ok(r.clean())
        }
        Command::Family { family } => {
            let (l, _) = request(family.name, &family.field)?.build()?;
            println!("{}", serialize_any(&l));
            Ok(true)
        }
        Command::Quotient { file, ideal } => {
            let l = load(&file)?;
            let q = quotient_by_spec(&l, &ideal)?;
            println!("{}", serialize_any(&q));
            Ok(true)
        }
        Command::Verify {
            file,
            family,
            suite,
            seed,
            json,
        } => {
            let suites = Suite::parse_list(&suite)?;
            let (l, claim) = match (file, family.family) {
                (Some(path), _) => (load(&path)?, None),
                (None, Some(name)) => {
                    let (l, claim) = request(name, &family.field)?.build()?;
                    (l, Some(claim))
                }
                (None, None) => return Err(Failure::Usage("give FILE or --family".into())),
            };
            let report = verify_any(&l, &suites, claim.as_ref(), seed);
            if json {
                print_json(&report);
            } else {
                print!("{}", render_verification(&report));
            }
            Ok(report["passed"] == Value::Bool(true))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Math(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
