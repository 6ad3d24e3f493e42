use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ncf_cli::commands::{
    cmd_axb_demo, cmd_dft_crosscheck, cmd_dilate, cmd_gen, cmd_transform, cmd_verify, CmdOutcome,
    UsageError,
};
use ncf_cli::report::Severity;

/// Fourier analysis on finite groups: transforms, inversion, positive
/// definite functions and Naimark dilations, with machine-readable reports.
#[derive(Parser)]
#[command(name = "ncf", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Core,
    Inversion,
    Posdef,
    Abelian,
    Axb,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Inversion => "inversion",
            Suite::Posdef => "posdef",
            Suite::Abelian => "abelian",
            Suite::Axb => "axb",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Forward,
    Invert,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and write its report
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fourier-transform a coefficient function, or reassemble an element
    /// from its transform
    Transform {
        #[arg(long)]
        group: Option<PathBuf>,
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long, value_enum, default_value = "forward")]
        direction: Direction,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shorthand for `transform --direction invert`
    Invert {
        #[arg(long)]
        group: Option<PathBuf>,
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Naimark-dilate a positive definite function
    Dilate {
        #[arg(long)]
        group: Option<PathBuf>,
        #[arg(long = "fn")]
        function: PathBuf,
        /// Relative rank-truncation tolerance for the Gram eigendecomposition
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check the transform against the dual-group DFT on an Abelian
    /// group
    DftCrosscheck {
        #[arg(long)]
        group: PathBuf,
        #[arg(long = "fn")]
        function: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the ax+b quadrature demonstration and emit its report
    AxbDemo {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a random coefficient function (with its group descriptor) as JSON
    Gen {
        #[arg(long)]
        group: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let quiet_outputs = matches!(cli.command, Command::Gen { .. });
    let result = match &cli.command {
        Command::Verify { suite, seed, out } => cmd_verify(suite.name(), *seed, out.as_deref()),
        Command::Transform {
            group,
            function,
            direction,
            seed,
            out,
        } => cmd_transform(
            group.as_deref(),
            function,
            matches!(direction, Direction::Invert),
            *seed,
            out.as_deref(),
        ),
        Command::Invert {
            group,
            function,
            seed,
            out,
        } => cmd_transform(group.as_deref(), function, true, *seed, out.as_deref()),
        Command::Dilate {
            group,
            function,
            tol,
            out,
        } => cmd_dilate(group.as_deref(), function, *tol, out.as_deref()),
        Command::DftCrosscheck {
            group,
            function,
            seed,
            tol,
            out,
        } => cmd_dft_crosscheck(group, function.as_deref(), *seed, *tol, out.as_deref()),
        Command::AxbDemo { out } => cmd_axb_demo(out.as_deref()),
        Command::Gen {
            group,
            k,
            seed,
            out,
        } => cmd_gen(group.as_deref(), *k, *seed, out.as_deref()),
    };

    match result {
        Ok(CmdOutcome { report, exit_code }) => {
            let wrote_file = match &cli.command {
                Command::Verify { out, .. }
                | Command::Transform { out, .. }
                | Command::Invert { out, .. }
                | Command::Dilate { out, .. }
                | Command::DftCrosscheck { out, .. }
                | Command::AxbDemo { out }
                | Command::Gen { out, .. } => out.is_some(),
            };
            if wrote_file {
                // short human summary; the full report went to --out
                let hard: Vec<_> = report
                    .checks
                    .iter()
                    .filter(|c| c.severity == Severity::Hard)
                    .collect();
                let passed = hard.iter().filter(|c| c.passed()).count();
                println!(
                    "{}: {passed}/{} hard checks passed ({} soft), {:.1} ms",
                    report.command,
                    hard.len(),
                    report.checks.len() - hard.len(),
                    report.wall_time_ms
                );
                for c in report.checks.iter().filter(|c| !c.passed()) {
                    println!(
                        "  {} {}: residual {:.3e}",
                        match c.severity {
                            Severity::Hard => "FAIL",
                            Severity::Soft => "soft-fail",
                        },
                        c.name,
                        c.residual
                    );
                }
            } else if quiet_outputs {
                // gen with no --out: print just the generated object
                if let Some(outputs) = &report.outputs {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(outputs).expect("serializes")
                    );
                }
            } else {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializes")
                );
            }
            ExitCode::from(exit_code)
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
