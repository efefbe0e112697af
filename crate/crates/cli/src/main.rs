mod args;
mod commands;
mod report;
mod survey;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use apolar::inverse::Limits;
use apolar::poly::{parse_poly, HomogeneousPoly, VariableSet};
use apolar::Error;
use clap::Parser;

use args::{parse_degrees, Cli, Command, Input};
use commands::Ctx;
use report::{Outcome, Report, SCHEMA};

const USAGE: u8 = 2;
const PARSE: u8 = 3;
const GUARD: u8 = 4;
const INVARIANT: u8 = 5;

/// A failure together with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Syntax { .. }
            | Error::UnknownVariable { .. }
            | Error::NonHomogeneous { .. }
            | Error::VariableMismatch(_)
            | Error::InvalidVariables(_)
            | Error::NotBinary(_)
            | Error::NotPerazzo(_)
            | Error::ZeroPolynomial => PARSE,
            Error::OutOfRange { .. } => USAGE,
            Error::Guard(_) => GUARD,
            Error::NotSquare { .. } | Error::Invariant(_) => INVARIANT,
        };
        Failure::new(code, e.to_string())
    }
}

fn read_input(input: &Input) -> Result<String, Failure> {
    match (&input.expr, &input.file) {
        (Some(e), None) => Ok(e.clone()),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Failure::new(USAGE, format!("cannot read {}: {e}", path.display()))),
        _ => Err(Failure::new(
            USAGE,
            "give exactly one of an expression or --file",
        )),
    }
}

fn input_of(command: &Command) -> Option<&Input> {
    match command {
        Command::Hvector { input }
        | Command::Ann { input, .. }
        | Command::Wlp { input }
        | Command::Slp { input }
        | Command::Hessian { input, .. }
        | Command::Classify { input }
        | Command::Waring { input, .. }
        | Command::Relation { input, .. } => Some(input),
        Command::Survey { .. } => None,
    }
}

fn dispatch(command: &Command, f: Option<&HomogeneousPoly>, ctx: &Ctx) -> Result<Outcome, Failure> {
    let f = || f.expect("every command except survey has an input");
    let outcome = match command {
        Command::Hvector { .. } => commands::hvector(f(), ctx)?,
        Command::Ann { degree, .. } => commands::ann(f(), *degree, ctx)?,
        Command::Wlp { .. } => commands::wlp(f(), ctx)?,
        Command::Slp { .. } => commands::slp(f(), ctx)?,
        Command::Hessian { order, .. } => commands::hessian_cmd(f(), *order, ctx)?,
        Command::Classify { .. } => commands::classify(f(), ctx)?,
        Command::Waring { secant, .. } => commands::waring(f(), *secant, ctx)?,
        Command::Relation { cap, .. } => commands::relation(f(), *cap, ctx)?,
        Command::Survey {
            degrees,
            samples,
            no_g,
            normal_forms,
        } => {
            let range = parse_degrees(degrees)
                .ok_or_else(|| Failure::new(USAGE, format!("bad degree range `{degrees}`")))?;
            let (outcome, violated) = survey::survey(range, *samples, !no_g, *normal_forms, ctx)?;
            if violated {
                // the bounds are theorems, so a violation is a bug
                return Err(Failure {
                    code: INVARIANT,
                    message: format!("extremal bounds violated:\n{}", outcome.text.join("\n")),
                });
            }
            outcome
        }
    };
    Ok(outcome)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let g = &cli.global;
    let vars = VariableSet::parse(&g.vars)?;
    let mut limits = Limits::default();
    if let Some(d) = g.max_degree {
        limits.max_degree = d;
    }
    let ctx = Ctx {
        limits,
        seed: g.seed,
        bound: g.bound,
        matrix: g.matrix,
        jobs: g.jobs,
    };

    let text = input_of(&cli.command).map(read_input).transpose()?;
    let f = text.as_deref().map(|t| parse_poly(t, &vars)).transpose()?;

    let start = Instant::now();
    let outcome = dispatch(&cli.command, f.as_ref(), &ctx)?;
    let report = Report {
        schema: SCHEMA,
        command: cli.command.name().to_string(),
        input: f.as_ref().map(|f| f.to_string()),
        vars: vars.names().to_vec(),
        seed: g.seed,
        bound: g.bound,
        result: outcome.result.clone(),
        timing_ms: start.elapsed().as_millis() as u64,
    };
    let rendered = report
        .render(&outcome, g.format)
        .map_err(|e| Failure::new(INVARIANT, e))?;

    if let Some(path) = &g.out {
        std::fs::write(path, &rendered)
            .map_err(|e| Failure::new(USAGE, format!("cannot write {}: {e}", path.display())))?;
    }
    let mut stdout = std::io::stdout().lock();
    // a closed pipe is not an error worth reporting
    let _ = stdout.write_all(rendered.as_bytes());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
