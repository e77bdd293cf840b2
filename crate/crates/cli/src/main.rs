use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use k3bott_cli::{
    analyze, delpezzo, enumerate, exit_code, render_classes, render_delpezzo, render_text, InputError, SurfaceSpec,
    INPUT_ERROR,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "k3bott", version, about = "Decide H^1(X, Omega^1 (x) B) for polarized K3 surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the decision procedure on a surface description.
    ///
    /// Exit status: 0 vanishes, 1 fails, 2 undetermined or needs fiber data,
    /// 64 malformed input.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List the classes of a given square in a degree window.
    Enumerate {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        square: i64,
        #[arg(long, allow_negative_numbers = true)]
        degree_min: i64,
        #[arg(long, allow_negative_numbers = true)]
        degree_max: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Lines on a del Pezzo surface of degree 5, 6 or 7 and their dual graph.
    Delpezzo {
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String) {
    match format {
        Format::Text => print!("{}", text(value)),
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("reports serialize")),
    }
}

fn run(cli: Cli) -> Result<u8, InputError> {
    match cli.command {
        Command::Analyze { file, format } => {
            let report = analyze(&SurfaceSpec::read(&file)?)?;
            emit(format, &report, render_text);
            Ok(exit_code(report.status))
        }
        Command::Enumerate {
            file,
            square,
            degree_min,
            degree_max,
            format,
        } => {
            let rows = enumerate(&SurfaceSpec::read(&file)?, square, degree_min, degree_max)?;
            emit(format, &rows, |r| render_classes(r));
            Ok(0)
        }
        Command::Delpezzo { degree, format } => {
            let summary = delpezzo(degree)?;
            emit(format, &summary, render_delpezzo);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    // clap's own usage errors exit with 2, which is taken by "undetermined"
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(INPUT_ERROR);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
