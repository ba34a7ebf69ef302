use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use herman_cli::{run, Command, Format, JobSpec};
use herman_core::ratmap::DEFAULT_DEGREE_CAP;

/// Exact p-adic verification of Siegel-disk cycles and Herman-ring
/// constructions for rational maps.
#[derive(Parser)]
#[command(name = "herman", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduction mod p and periodic points up to period 2 of a map record.
    Analyze(Common),
    /// Verify a cycle of Siegel disks: {"map", "disks"}.
    VerifySiegel(Common),
    /// Build Q and its rings from {"map", "disks", "params"}.
    ConstructHerman {
        #[command(flatten)]
        common: Common,
        /// Write the record of Q to this path.
        #[arg(long)]
        map_out: Option<PathBuf>,
    },
    /// Verify a cycle of Herman rings: {"map", "rings", "params"}.
    VerifyHerman(Common),
    /// Run the full pipeline on a built-in example.
    Reproduce {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        example: u8,
    },
    /// Run the property suites.
    Selftest(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    input: Option<PathBuf>,
    /// Sample points or pairs per sampled check.
    #[arg(long, default_value_t = 32)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Hensel lifting precision N, in p-adic digits.
    #[arg(long, default_value_t = 8)]
    precision: u32,
    /// Largest degree allowed for symbolic iterates.
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
    degree_cap: usize,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

fn job(command: Command, c: Common) -> JobSpec {
    JobSpec {
        input: c.input,
        samples: c.samples,
        seed: c.seed,
        precision: c.precision,
        degree_cap: c.degree_cap,
        out: c.out,
        format: match c.format {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        },
        ..JobSpec::new(command)
    }
}

fn main() -> ExitCode {
    let spec = match Cli::parse().command {
        Cmd::Analyze(c) => job(Command::Analyze, c),
        Cmd::VerifySiegel(c) => job(Command::VerifySiegel, c),
        Cmd::ConstructHerman { common, map_out } => JobSpec {
            map_out,
            ..job(Command::ConstructHerman, common)
        },
        Cmd::VerifyHerman(c) => job(Command::VerifyHerman, c),
        Cmd::Reproduce { common, example } => JobSpec {
            example: Some(example),
            ..job(Command::Reproduce, common)
        },
        Cmd::Selftest(c) => job(Command::Selftest, c),
    };
    let (code, outcome) = run(&spec);
    match outcome {
        Ok(rendered) => match &spec.out {
            None => {
                let _ = std::io::stdout().write_all(rendered.as_bytes());
            }
            Some(path) if code != 0 => eprintln!("verification failed; report written to {}", path.display()),
            Some(_) => {}
        },
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(code as u8)
}
