use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use salvetti::dynamic::DirectionView;
use salvetti::job::{run_job, Command, Format, JobSpec};
use salvetti::Error;

/// Salvetti complexes of Artin groups: (co)homology with local coefficients
/// and filtration spectral sequences.
#[derive(Parser, Debug)]
#[command(name = "salvetti", version)]
struct Args {
    /// Job file in JSON; `-` reads standard input.
    #[arg(long, short)]
    input: PathBuf,

    /// complex, cohomology, homology, spectral, poincare, augmented or milnor.
    #[arg(long, short, value_parser = parse_command)]
    command: Option<Command>,

    /// Coefficient ring: Z, Q, F<p>, <base>[q], <base>[q1,q2], Q[q]/phi<h>.
    #[arg(long)]
    field: Option<String>,

    /// Specialize a Laurent polynomial ring to Q[q]/phi<h>.
    #[arg(long)]
    at_cyclotomic: Option<u64>,

    /// Largest parabolic subgroup to enumerate.
    #[arg(long)]
    cap: Option<usize>,

    /// table, structured or market.
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,

    /// Use the chain complex for `complex` and `spectral`.
    #[arg(long)]
    chain: bool,

    /// Write to this file instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn parse_command(s: &str) -> Result<Command, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn read_input(path: &PathBuf) -> Result<String, Error> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    Ok(text)
}

fn run(args: &Args) -> Result<String, Error> {
    let mut job = JobSpec::parse(&read_input(&args.input)?)?;
    if args.command.is_some() {
        job.command = args.command;
    }
    if args.field.is_some() {
        job.options.field = args.field.clone();
    }
    if args.at_cyclotomic.is_some() {
        job.options.at_cyclotomic = args.at_cyclotomic;
    }
    if args.cap.is_some() {
        job.options.cap = args.cap;
    }
    if args.format.is_some() {
        job.options.format = args.format;
    }
    if args.chain {
        job.options.direction = Some(DirectionView::Chain);
    }
    run_job(&job)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(text) => {
            if let Some(path) = &args.output {
                if let Err(e) = fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
