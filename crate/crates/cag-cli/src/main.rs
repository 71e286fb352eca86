//! `cag`: voting-power reports, single-point payoff solves, and
//! equilibrium phase diagrams for the two-player disclosure game.

mod presets;
mod run;
mod scenario;

use clap::{Parser, Subcommand};
use run::{Backend, CliError};
use scenario::{OutputFormat, Scenario, SharedFlags};

#[derive(Parser)]
#[command(
    name = "cag",
    version,
    about = "Cyber alliance game: voting power, payoff matrices, and equilibrium phase diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Voting-power report for one alliance
    Power {
        /// Alliance in shorthand, e.g. "[10:11,2,2,2]"
        alliance: String,
        /// Add Shapley-Shubik indices (up to 12 players)
        #[arg(long)]
        shapley: bool,
        /// Swing-counting backend
        #[arg(long, value_enum, default_value_t = Backend::Auto)]
        backend: Backend,
        /// Emit CSV instead of the aligned text table
        #[arg(long)]
        csv: bool,
        /// Also write the report to this file
        #[arg(long, value_name = "FILE")]
        out: Option<String>,
    },
    /// Payoff matrix and equilibria at one (p, q) point
    Solve {
        #[command(flatten)]
        shared: SharedFlags,
        /// Probability that player 1 finds the flaw first
        #[arg(long)]
        p: Option<f64>,
        /// Probability that player 1 wins the rediscovery race
        #[arg(long)]
        q: Option<f64>,
    },
    /// Equilibrium phase diagram over the whole (p, q) square
    Sweep {
        #[command(flatten)]
        shared: SharedFlags,
        /// Lattice points per axis
        #[arg(long, value_name = "N")]
        resolution: Option<usize>,
        /// Output format written next to the grid CSV
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
        /// Compute a mixed equilibrium for cells with no pure one
        #[arg(long)]
        include_mixed: bool,
    },
    /// Canned diagrams with pinned parameters
    #[command(subcommand)]
    Preset(PresetCommand),
}

#[derive(Subcommand)]
enum PresetCommand {
    /// List the preset catalog
    List,
    /// Run one preset and write its files
    Run {
        /// Preset name, as shown by `preset list`
        name: String,
        /// Base path for the output files (default: the preset name)
        #[arg(long, value_name = "PATH")]
        out: Option<String>,
        /// Output format written next to the grid CSV
        #[arg(long, value_enum, default_value_t = OutputFormat::Svg)]
        format: OutputFormat,
    },
}

fn load_scenario(flags: &SharedFlags) -> Result<Scenario, CliError> {
    let mut sc = match &flags.scenario {
        Some(path) => scenario::parse_scenario_raw(&run::read_scenario_file(path)?)?,
        None => Scenario::default(),
    };
    sc.apply_flags(flags);
    Ok(sc)
}

fn execute(command: Command) -> Result<String, CliError> {
    match command {
        Command::Power {
            alliance,
            shapley,
            backend,
            csv,
            out,
        } => run::run_power(&alliance, shapley, backend, csv, out.as_deref()),
        Command::Solve { shared, p, q } => {
            let mut sc = load_scenario(&shared)?;
            if p.is_some() {
                sc.p = p;
            }
            if q.is_some() {
                sc.q = q;
            }
            sc.finish()?;
            run::run_solve(&sc)
        }
        Command::Sweep {
            shared,
            resolution,
            format,
            include_mixed,
        } => {
            let mut sc = load_scenario(&shared)?;
            let settings = sc.sweep.get_or_insert_with(Default::default);
            if resolution.is_some() {
                settings.resolution = resolution;
            }
            if format.is_some() {
                settings.format = format;
            }
            sc.finish()?;
            run::run_sweep(&sc, include_mixed)
        }
        Command::Preset(PresetCommand::List) => Ok(run::list_presets()),
        Command::Preset(PresetCommand::Run { name, out, format }) => {
            run::run_preset(&name, out.as_deref(), format)
        }
    }
}

fn main() -> std::process::ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(text) => {
            print!("{text}");
            std::process::ExitCode::SUCCESS
        }
        Err(error) => {
            eprintln!("error: {error}");
            std::process::ExitCode::FAILURE
        }
    }
}
