use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use paraco_core::catalog;
use paraco_core::error::Error;
use paraco_core::parser::{load_definition, ManifoldDefinition};
use paraco_core::report::{
    is_parse_error, render_deform_text, render_text, run_analyze, run_deform, AnalyzeOptions, DeformSpec,
    Verbosity,
};
use paraco_core::symbolic::parse_rational;

const EXIT_PARSE: u8 = 4;

/// Exact verification and analysis of almost α-paracosymplectic structures.
#[derive(Parser)]
#[command(name = "paraco", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the structure axioms and every identity; print a one-line verdict.
    Verify { file: PathBuf },
    /// Run the full pipeline and print the report.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Evaluation point, e.g. `1/2,0,-1`.
        #[arg(long)]
        point: Option<String>,
    },
    /// Apply a deformation and verify its transformation laws.
    Deform(DeformArgs),
    /// List or print built-in definitions.
    Catalog {
        #[arg(long, conflicts_with = "emit")]
        list: bool,
        #[arg(long, value_name = "NAME")]
        emit: Option<String>,
    },
}

#[derive(Args)]
struct DeformArgs {
    file: PathBuf,
    #[arg(long, requires = "beta", conflicts_with = "conformal_u")]
    gamma: Option<String>,
    #[arg(long, requires = "gamma")]
    beta: Option<String>,
    #[arg(long, value_name = "EXPR")]
    conformal_u: Option<String>,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    point: Option<String>,
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn load(path: &PathBuf) -> Result<ManifoldDefinition, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    load_definition(&text).map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn options(point: Option<&str>) -> Result<AnalyzeOptions, ExitCode> {
    let point = match point {
        Some(p) => Some(catalog::parse_point(p).ok_or_else(|| fail(EXIT_PARSE, format!("bad point `{p}`")))?),
        None => None,
    };
    Ok(AnalyzeOptions { point })
}

fn deform_error(e: &Error) -> ExitCode {
    // bad parameters are input errors, like syntax errors
    if is_parse_error(e) || matches!(e, Error::Precondition(_)) {
        fail(EXIT_PARSE, e)
    } else {
        fail(3, e)
    }
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    let verbosity = Verbosity::from_env();
    match cli.command {
        Command::Verify { file } => {
            let def = load(&file)?;
            let report = run_analyze(&def, &AnalyzeOptions::default());
            print!("{}", render_text(&report, verbosity.min(Verbosity::Quiet)));
            for c in report.all_checks().into_iter().filter(|c| c.failed()) {
                println!("  failed: {}", c.name);
            }
            if let Some(e) = &report.structural.error {
                println!("  structure: {e}");
            }
            Ok(ExitCode::from(report.outcome().exit_code() as u8))
        }
        Command::Analyze { file, json, point } => {
            let def = load(&file)?;
            let report = run_analyze(&def, &options(point.as_deref())?);
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", render_text(&report, verbosity));
            }
            Ok(ExitCode::from(report.outcome().exit_code() as u8))
        }
        Command::Deform(a) => {
            let def = load(&a.file)?;
            let spec = match (a.gamma, a.beta, a.conformal_u) {
                (Some(g), Some(beta), None) => {
                    let gamma = parse_rational(&g).ok_or_else(|| fail(EXIT_PARSE, format!("bad rational `{g}`")))?;
                    DeformSpec::Homothetic { gamma, beta }
                }
                (None, None, Some(u)) => DeformSpec::Conformal { u },
                _ => return Err(fail(EXIT_PARSE, "give either --gamma with --beta, or --conformal-u")),
            };
            let report = run_deform(&def, &spec, &options(a.point.as_deref())?).map_err(|e| deform_error(&e))?;
            if a.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", render_deform_text(&report, verbosity));
            }
            Ok(ExitCode::from(report.outcome().exit_code() as u8))
        }
        Command::Catalog { list, emit } => {
            match emit {
                Some(name) => {
                    let e = catalog::entry(&name).ok_or_else(|| fail(EXIT_PARSE, format!("no catalog entry `{name}`")))?;
                    print!("{}", e.definition.to_toml());
                }
                None => {
                    let _ = list;
                    for e in catalog::catalog() {
                        println!("{:<22} {}", e.name, e.description);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse()).unwrap_or_else(|code| code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn argument_definitions_are_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn deform_flags_exclude_each_other() {
        assert!(Cli::try_parse_from(["paraco", "deform", "f", "--gamma", "2", "--beta", "1"]).is_ok());
        assert!(Cli::try_parse_from(["paraco", "deform", "f", "--gamma", "2"]).is_err());
        assert!(Cli::try_parse_from(["paraco", "deform", "f", "--gamma", "2", "--beta", "1", "--conformal-u", "t"]).is_err());
    }
}
