use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sha2::{Digest, Sha256};
use superwarp::einstein::{classify, BaseKind, ConnectionChoice, EinsteinProblem};
use superwarp::scalar::{parse_expr, BigRational, DEFAULT_SEED};
use superwarp::specfile::{parse_any, parse_field, AnySpec};
use superwarp::{bundled, suite, Error, VectorField};

#[derive(Parser)]
#[command(name = "superwarp", version, about = "Symbolic tensor calculus on Riemannian Z2-manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Christoffel, curvature and Ricci tables of a spec.
    Compute {
        #[command(flatten)]
        input: Input,
        /// lc or ssnm; may be repeated.
        #[arg(long, default_value = "lc")]
        connection: Vec<ConnectionChoice>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs a verification scope and writes its report.
    Verify {
        /// Scope id; `all` runs every scope on the bundled specs.
        #[arg(value_name = "SCOPE", conflicts_with = "scope_flag")]
        scope: Option<String>,
        #[arg(long = "scope", value_name = "ID")]
        scope_flag: Option<String>,
        #[arg(long)]
        spec: Option<String>,
        /// Structure field as `coord=expr, ...`.
        #[arg(long = "P", value_name = "EXPR")]
        p: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Lists the scope ids and exits.
        #[arg(long)]
        list: bool,
    },
    /// Warping functions that make a warped product Einstein.
    Classify {
        #[arg(long)]
        base: BaseKind,
        #[arg(long = "conn", alias = "connection")]
        conn: ConnectionChoice,
        /// q - n of the fiber.
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        #[arg(long, allow_hyphen_values = true)]
        lambda0: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        c0: Option<String>,
    },
}

#[derive(Args)]
struct Input {
    /// Spec file, or `bundled:NAME`.
    #[arg(long)]
    spec: String,
    #[arg(long = "P", value_name = "EXPR")]
    p: Option<String>,
}

enum Failure {
    Engine(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

fn read_spec(arg: &str) -> Result<(AnySpec, String), Failure> {
    let text = match arg.strip_prefix("bundled:") {
        Some(name) => bundled::MANIFOLDS
            .iter()
            .chain(bundled::WARPED)
            .find(|(n, _)| *n == name || *n == format!("warped_{name}"))
            .map(|(_, src)| src.to_string())
            .ok_or_else(|| Error::SpecFormat(format!("no bundled spec named '{name}'")))?,
        None => fs::read_to_string(arg).map_err(|e| Failure::Io(format!("{arg}: {e}")))?,
    };
    Ok((parse_any(&text)?, text))
}

fn checksum(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn bundled_checksum() -> String {
    let all: String = bundled::MANIFOLDS
        .iter()
        .chain(bundled::WARPED)
        .map(|(_, src)| *src)
        .collect();
    checksum(&all)
}

fn p_field(spec: &AnySpec, src: &str) -> Result<VectorField, Failure> {
    let inst = suite::instance(spec, None)?;
    Ok(parse_field(inst.manifold.chart(), src)?)
}

fn emit(text: &str, out: Option<&PathBuf>, summary: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            println!("{summary}");
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn constant(src: &str) -> Result<BigRational, Failure> {
    parse_expr(src).map_err(Error::from)?
        .to_ratfunc()
        .as_constant()
        .ok_or_else(|| Error::SpecFormat(format!("'{src}' is not a rational constant")).into())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Compute { input, connection, out } => {
            let (spec, text) = read_spec(&input.spec)?;
            let p = input.p.as_deref().map(|s| p_field(&spec, s)).transpose()?;
            let inst = suite::instance(&spec, p.as_ref())?;
            let tables = suite::compute(&inst, &connection, &checksum(&text))?;
            emit(&tables, out.as_ref(), &format!("tables written for {}", inst.name))?;
            Ok(0)
        }
        Command::Verify {
            scope,
            scope_flag,
            spec,
            p,
            out,
            seed,
            list,
        } => {
            if list {
                for s in suite::scopes() {
                    println!("{s}");
                }
                return Ok(0);
            }
            let scope = scope.or(scope_flag).unwrap_or_else(|| suite::ALL.to_string());
            let (spec, sum) = match &spec {
                Some(arg) => {
                    let (s, text) = read_spec(arg)?;
                    (Some(s), checksum(&text))
                }
                None => (None, bundled_checksum()),
            };
            let p = match (&spec, &p) {
                (Some(s), Some(src)) => Some(p_field(s, src)?),
                _ => None,
            };
            let mut report = suite::run(&scope, spec.as_ref(), p.as_ref(), seed)?;
            report.checksum = sum;
            let summary = format!(
                "{}: {} checks, {} passed, {} failed",
                report.scope,
                report.total(),
                report.passed(),
                report.failed()
            );
            emit(&report.to_string(), out.as_ref(), &summary)?;
            Ok(if report.all_pass() { 0 } else { 1 })
        }
        Command::Classify {
            base,
            conn,
            l,
            lambda0,
            c0,
        } => {
            let mut problem = EinsteinProblem::new(base, conn, l);
            problem.lambda0 = lambda0.as_deref().map(constant).transpose()?;
            problem.c0 = c0.as_deref().map(constant).transpose()?;
            print!("{}", classify(&problem)?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
