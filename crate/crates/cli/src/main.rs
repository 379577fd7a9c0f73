use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gcdeform::pipeline::{run, Command, Workspace};
use gcdeform::workspace::KODAIRA_PRESET;
use gcdeform::Error;

#[derive(Parser, Debug)]
#[command(name = "gcdeform", version, about = "Exact deformations of invariant generalized complex structures")]
struct Cli {
    /// Built-in workspace.
    #[arg(long, value_enum, conflicts_with = "input")]
    preset: Option<Preset>,
    /// Workspace file in the line-oriented format.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Verb,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Preset {
    Kodaira,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Check Jacobi, the structure and the subbundle conditions.
    Validate,
    /// Eigenframe and Courant bracket table of the doubled basis.
    Brackets,
    /// Deformation map and Maurer-Cartan system.
    Mc,
    /// Gauge directions (image of d_L on 1-forms).
    Gauge,
    /// Solved, gauge-reduced family.
    Family,
    /// Type of the deformed structure at a point of the family.
    Type {
        /// Bindings such as `t14=0,t32=1,t11=0,t22=0`.
        #[arg(long)]
        at: String,
    },
    /// Type strata of the family.
    Strata,
    /// All sections.
    Report,
}

impl From<Verb> for Command {
    fn from(v: Verb) -> Self {
        match v {
            Verb::Validate => Command::Validate,
            Verb::Brackets => Command::Brackets,
            Verb::Mc => Command::Mc,
            Verb::Gauge => Command::Gauge,
            Verb::Family => Command::Family,
            Verb::Type { at } => Command::Type(at),
            Verb::Strata => Command::Strata,
            Verb::Report => Command::Report,
        }
    }
}

fn exit_for(e: &Error) -> ExitCode {
    ExitCode::from(if e.is_input_error() { 1 } else { 2 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let text = match (&cli.preset, &cli.input) {
        (Some(Preset::Kodaira), _) => KODAIRA_PRESET.to_string(),
        (None, Some(path)) => match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return ExitCode::from(1);
            }
        },
        (None, None) => {
            eprintln!("error: one of --preset or --input is required");
            return ExitCode::from(1);
        }
    };

    let result = Workspace::parse(&text).and_then(|ws| run(&ws, &cli.command.into()));
    match result {
        Ok(report) => {
            let out = match cli.format {
                Format::Text => report.render_text(),
                Format::Machine => report.render_machine(),
            };
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}
