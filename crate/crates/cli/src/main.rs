use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tilecoh::pipeline::{run, RunOptions};
use tilecoh::presets::{list_presets, load_target, preset_source};
use tilecoh::Error;

/// Exact integer Čech cohomology of codimension-3 icosahedral projection
/// tilings.
#[derive(Parser)]
#[command(name = "tilecoh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the cohomology for a config file or a bundled preset.
    Compute {
        /// Path to a TOML config, or a preset name.
        target: String,
        /// Write the structured report to this path.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Check universal coefficient identities and sample the intersection oracle.
        #[arg(long)]
        verify: bool,
        /// Extra prime for an F_p rank table (repeatable).
        #[arg(long = "prime", value_name = "P")]
        primes: Vec<u64>,
        /// Worker threads for the parallel stages.
        #[arg(long, value_name = "N")]
        threads: Option<usize>,
    },
    /// List the bundled presets.
    ListPresets,
    /// Print the TOML source of a bundled preset.
    ShowPreset { name: String },
}

fn compute(
    out: &mut impl Write,
    target: &str,
    json: Option<PathBuf>,
    verify: bool,
    primes: Vec<u64>,
    threads: Option<usize>,
) -> Result<i32, Error> {
    let config = load_target(target)?;
    let opts = RunOptions { verify, primes };
    let report = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(format!("--threads: {e}")))?
            .install(|| run(&config, &opts))?,
        None => run(&config, &opts)?,
    };
    write!(out, "{}", report.render())?;
    if let Some(path) = json {
        std::fs::write(&path, report.to_json() + "\n")?;
    }
    Ok(report.exit_code())
}

fn dispatch(cli: Cli, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let outcome = match cli.command {
        Command::Compute {
            target,
            json,
            verify,
            primes,
            threads,
        } => compute(out, &target, json, verify, primes, threads),
        Command::ListPresets => list_presets()
            .iter()
            .try_for_each(|p| writeln!(out, "{:<20} {:<2} {:<10} {}", p.name, p.lattice_type, p.planes, p.description))
            .map(|()| 0)
            .map_err(Error::from),
        Command::ShowPreset { name } => {
            preset_source(&name).and_then(|s| write!(out, "{s}").map(|()| 0).map_err(Error::from))
        }
    };
    outcome.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        e.exit_code()
    })
}

fn main() -> ExitCode {
    let code = dispatch(Cli::parse(), &mut std::io::stdout().lock(), &mut std::io::stderr());
    ExitCode::from(code as u8)
}
