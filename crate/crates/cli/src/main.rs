use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use strongconn::instance_file::InstanceFile;
use strongconn::library::{builtin, BUILTINS};
use strongconn::pipeline::{parse_stages, run_file, Options, DEFAULT_DIM_CAP, DEFAULT_ORACLE_CAP};
use strongconn::Error;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "strongconn", version, about = "Construct and verify strong connection forms")]
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
    /// Run the verification pipeline on an instance file.
    Run {
        file: PathBuf,
        /// Comma-separated subset of validate, cointegral, integral, section,
        /// connection, verify, splitting, oracle, homogeneous.
        #[arg(long)]
        stages: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest dimension allowed for a base space.
        #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
        dim_cap: usize,
        /// Largest dim C·dim A² for which the brute-force oracle runs.
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
    },
    /// Print a built-in instance file.
    Instance {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the built-in instances.
    List,
}

fn write_out(out: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Run {
            file,
            stages,
            format,
            out,
            dim_cap,
            oracle_cap,
        } => {
            let inst = InstanceFile::read(&file)?;
            let opts = Options {
                stages: stages.as_deref().map(parse_stages).transpose()?,
                dim_cap,
                oracle_cap,
            };
            let report = run_file(&inst, &opts)?;
            let text = match format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            };
            write_out(out.as_ref(), &text)?;
            Ok(if report.passed() { 0 } else { EXIT_FAIL })
        }
        Command::Instance { name, out } => {
            write_out(out.as_ref(), &builtin(&name)?.to_json())?;
            Ok(0)
        }
        Command::List => {
            for (name, about) in BUILTINS {
                println!("{name:28} {about}");
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
