use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kinalg::algebra::{
    build_algebra, contract_limit, contraction_graph, from_json, identify, AlgebraLabel, Limit, Parameterization,
};
use kinalg::coeff::{Param, Sign};
use kinalg::dynamics::{energy, integrate, DynParams, Method, PhaseState};
use kinalg::realization::{build_matrix_generators, commutator_table, vector_field_realization, MatrixGenerators};
use kinalg::tables::{table, Format, TableKind};
use kinalg::verify::{self, Scope, Status};
use kinalg::Error;

#[derive(Parser)]
#[command(
    name = "kinalg",
    version,
    about = "Kinematical Lie algebras, their contractions and dynamics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one of the generated tables.
    Tables {
        #[arg(long, default_value = "table1")]
        which: String,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Apply a parameter limit to an algebra and identify the result.
    Contract {
        #[arg(long)]
        algebra: String,
        /// m, C, E0, or a kinematical pair: c,r  c,tau  r,tau
        #[arg(long)]
        limit: String,
    },
    /// The contraction cube.
    Graph {
        #[arg(long, default_value = "text")]
        format: String,
        /// Use the c, r, tau limits instead of m, C, E0.
        #[arg(long)]
        kinematical: bool,
    },
    /// Identify an algebra given as JSON (file path or `-` for stdin).
    Identify {
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Print the 5x5 generators and their commutator table.
    Realize {
        #[arg(long, default_value = "-", allow_hyphen_values = true)]
        sign: String,
        /// Print the vector-field operators as well.
        #[arg(long)]
        vector_fields: bool,
    },
    /// Integrate the motion equations and write the trajectory as CSV.
    Simulate {
        /// Family symbol or signed label (NH, NH-, G+, ...).
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        #[arg(long = "C", default_value_t = 1.0)]
        compliance: f64,
        #[arg(long = "E0", default_value_t = 1.0)]
        e0: f64,
        /// Constant added to the energy column.
        #[arg(long = "U", default_value_t = 0.0, allow_hyphen_values = true)]
        potential: f64,
        #[arg(long, default_value = "1,0,0", allow_hyphen_values = true)]
        q0: String,
        #[arg(long, default_value = "0,0,0", allow_hyphen_values = true)]
        p0: String,
        #[arg(long, default_value_t = 0.01)]
        h: f64,
        #[arg(long = "T", default_value_t = 10.0)]
        horizon: f64,
        #[arg(long, default_value = "rk4")]
        method: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run the self-check suites.
    Verify {
        #[arg(long, default_value = "all")]
        scope: String,
        #[arg(long, env = "KINALG_SEED", default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Verification,
    Contraction(String),
    Other(String),
    /// stdout closed early, e.g. piped into `head`
    ClosedPipe,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Divergence { .. } | Error::NotSubalgebra { .. } => Failure::Contraction(e.to_string()),
            Error::Parse(_)
            | Error::UnknownFamily(_)
            | Error::InvalidParameter(_)
            | Error::MissingParameter(_)
            | Error::NonPositiveStep
            | Error::WrongBasis(_)
            | Error::ConstrainedLimit => Failure::Usage(e.to_string()),
            e => Failure::Other(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::ClosedPipe;
        }
        Failure::Other(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) | Err(Failure::ClosedPipe) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Contraction(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    match command {
        Command::Tables { which, format } => {
            let kind: TableKind = which.parse()?;
            let format: Format = format.parse()?;
            write!(out, "{}", table(kind)?.render(format)?)?;
        }
        Command::Contract { algebra, limit } => {
            let label: AlgebraLabel = algebra.parse()?;
            let params = parse_limit(&limit)?;
            let frame = if params[0].basis() == kinalg::coeff::ParamBasis::Dynamical {
                Parameterization::Dynamical
            } else {
                Parameterization::KinematicalUnconstrained
            };
            let contracted = contract_limit(&build_algebra(label, frame), &params)?;
            write!(out, "{contracted}")?;
            match identify(&contracted) {
                Ok(l) => writeln!(out, "identified: {l}")?,
                Err(_) => writeln!(out, "identified: unrecognized")?,
            }
        }
        Command::Graph { format, kinematical } => {
            let g = if kinematical {
                kinalg::algebra::kinematical_contraction_graph()?
            } else {
                contraction_graph()?
            };
            match format.as_str() {
                "dot" => write!(out, "{}", g.to_dot())?,
                "text" => write!(out, "{}", g.to_text())?,
                other => return Err(Failure::Usage(format!("unknown graph format `{other}`"))),
            }
        }
        Command::Identify { input } => {
            let text = if input == "-" {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                s
            } else {
                fs::read_to_string(&input)?
            };
            let alg = from_json(&text)?;
            match identify(&alg) {
                Ok(l) => writeln!(out, "{l}")?,
                Err(e) => {
                    writeln!(out, "unrecognized")?;
                    return Err(Failure::Other(e.to_string()));
                }
            }
        }
        Command::Realize { sign, vector_fields } => {
            let sign = parse_sign(&sign)?;
            let gens = build_matrix_generators(sign);
            for (g, m) in gens.iter() {
                writeln!(out, "{} =\n{m}", MatrixGenerators::name(g))?;
            }
            let table = commutator_table(&gens)?;
            let alg = kinalg::algebra::LieAlgebra::new(Parameterization::Kinematical, Some(sign), table);
            writeln!(out, "commutators:")?;
            write!(out, "{alg}")?;
            if vector_fields {
                writeln!(out, "vector fields:")?;
                for (g, v) in kinalg::algebra::Generator::all().zip(vector_field_realization(sign)) {
                    writeln!(out, "{} = {}", MatrixGenerators::name(g), v.to_operator_string())?;
                }
            }
        }
        Command::Simulate {
            family,
            sign,
            m,
            compliance,
            e0,
            potential,
            q0,
            p0,
            h,
            horizon,
            method,
            output,
        } => {
            let label: AlgebraLabel = match sign {
                Some(s) => format!(
                    "{}{}",
                    family.trim_end_matches(['+', '-', '±']),
                    parse_sign(&s)?.symbol()
                )
                .parse()?,
                None => family.parse()?,
            };
            let params = DynParams::new(label, m, compliance, e0)?.with_potential(potential);
            let method: Method = method.parse()?;
            let mut s0 = PhaseState::new(parse_vector(&q0)?, parse_vector(&p0)?);
            s0.e = energy(&params, &s0);
            let csv = integrate(&params, &s0, h, horizon, method)?.to_csv();
            match output {
                Some(path) => fs::write(path, csv)?,
                None => write!(out, "{csv}")?,
            }
        }
        Command::Verify { scope, seed } => {
            let scope: Scope = scope.parse()?;
            let reports = verify::run(scope, seed);
            let mut counts = [0usize; 3];
            for r in &reports {
                write!(out, "{r}")?;
                for c in &r.checks {
                    counts[match c.status {
                        Status::Pass => 0,
                        Status::Warn => 1,
                        Status::Fail => 2,
                    }] += 1;
                }
            }
            writeln!(
                out,
                "verify (seed {seed}): {} passed, {} warnings, {} failed",
                counts[0], counts[1], counts[2]
            )?;
            if counts[2] > 0 {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn parse_limit(s: &str) -> Result<Vec<Param>, Failure> {
    let params = s
        .split(',')
        .map(|p| p.trim().parse())
        .collect::<Result<Vec<Param>, _>>()?;
    if Limit::from_params(&params).is_none() {
        return Err(Failure::Usage(format!(
            "`{s}` is not one of m, C, E0, c,r, c,tau, r,tau"
        )));
    }
    Ok(params)
}

fn parse_sign(s: &str) -> Result<Sign, Failure> {
    match s {
        "+" | "+1" | "1" | "plus" => Ok(Sign::Plus),
        "-" | "-1" | "minus" | "−" => Ok(Sign::Minus),
        other => Err(Failure::Usage(format!("sign must be + or -, got `{other}`"))),
    }
}

fn parse_vector(s: &str) -> Result<[f64; 3], Failure> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Usage(format!("bad vector `{s}`: {e}")))?;
    v.try_into()
        .map_err(|_| Failure::Usage(format!("expected three components, got `{s}`")))
}
