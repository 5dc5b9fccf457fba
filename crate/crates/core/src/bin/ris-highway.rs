use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ris_highway::cli::{
    cmd_compare, cmd_optimize, cmd_size_sweep, cmd_sweep, parse_lengths, CommonOptions,
    PlacementSpec,
};
use ris_highway::{Error, Mode};

/// Roadside RIS placement and coverage experiments.
#[derive(Parser)]
#[command(name = "ris-highway", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario JSON document (built-in highway when omitted)
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Override the carrier wavelength in meters
    #[arg(long)]
    wavelength: Option<f64>,
    /// Placement search stride in meters
    #[arg(long)]
    step: Option<u64>,
    /// Output file; a <out>.manifest.json is written next to it
    #[arg(long)]
    out: Option<PathBuf>,
}

impl From<Common> for CommonOptions {
    fn from(c: Common) -> Self {
        CommonOptions {
            scenario: c.scenario,
            wavelength: c.wavelength,
            step: c.step,
            out: c.out,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Greedy placement of N surfaces
    Optimize {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "focusing")]
        mode: String,
        #[arg(long)]
        n: usize,
    },
    /// Received power along the road for one placement
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "focusing")]
        mode: String,
        /// optimize:N, equidistant:N, or x1,x2,... (empty for direct path only)
        #[arg(long, default_value = "")]
        placement: String,
    },
    /// Received power against surface side length
    SizeSweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "focusing")]
        mode: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Comma-separated side lengths in meters, increasing
        #[arg(long)]
        lengths: String,
        /// Keep these coordinates instead of re-optimizing per side length
        #[arg(long)]
        frozen: Option<String>,
        /// Base station height follows side_length / 2
        #[arg(long)]
        couple_bs_height: bool,
    },
    /// Baseline, equidistant and optimized placements side by side
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Optimize { common, mode, n } => {
            let result = cmd_optimize(&common.into(), mode.parse()?, n)?;
            let positions: Vec<String> = result.positions.iter().map(u64::to_string).collect();
            println!("{}", positions.join(" "));
        }
        Command::Sweep {
            common,
            mode,
            placement,
        } => {
            let common: CommonOptions = common.into();
            let spec: PlacementSpec = placement.parse()?;
            let (_, csv) = cmd_sweep(&common, mode.parse()?, &spec)?;
            if common.out.is_none() {
                print!("{csv}");
            }
        }
        Command::SizeSweep {
            common,
            mode,
            n,
            lengths,
            frozen,
            couple_bs_height,
        } => {
            let common: CommonOptions = common.into();
            let mode: Mode = mode.parse()?;
            let lengths = parse_lengths(&lengths)?;
            let frozen = match frozen {
                Some(spec) => match spec.parse()? {
                    PlacementSpec::Explicit(xs) => Some(xs),
                    _ => return Err(Error::Usage("--frozen takes x1,x2,...".into())),
                },
                None => None,
            };
            let (_, csv) = cmd_size_sweep(&common, mode, &lengths, n, frozen, couple_bs_height)?;
            if common.out.is_none() {
                print!("{csv}");
            }
        }
        Command::Compare { common, n } => {
            let common: CommonOptions = common.into();
            let report = cmd_compare(&common, n)?;
            if common.out.is_none() {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
