mod document;
mod report;

use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use smca::instances::{builtin, Instance, BUILTIN_NAMES};
use smca::rational::parse_rational;
use smca::{BidProfile, Error, PaymentRule, Rational};

use document::InstanceDocument;

#[derive(Parser)]
#[command(
    name = "smca",
    version,
    about = "Single-minded combinatorial auctions: payments, conflict graphs, incentive checks"
)]
struct Cli {
    /// Emit JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct InstanceArgs {
    /// Built-in name (llg, bull, line5, star, cycle4) or path to a JSON instance.
    instance: String,
    /// Replace the instance bids, comma separated (e.g. "6,7,9/2").
    #[arg(long)]
    bids: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Nondecreasing,
    Overbid,
}

#[derive(Subcommand)]
enum Command {
    /// Winner determination and every payment rule side by side.
    Solve {
        #[command(flatten)]
        input: InstanceArgs,
    },
    /// Conflict graph, maximal independent sets and sufficient conditions.
    Graph {
        #[command(flatten)]
        input: InstanceArgs,
    },
    /// Print the instance as a JSON document.
    Export {
        #[command(flatten)]
        input: InstanceArgs,
    },
    /// Grid check of monotonicity or overbidding.
    Check {
        #[command(flatten)]
        input: InstanceArgs,
        #[arg(long, default_value = "vn")]
        rule: PaymentRule,
        #[arg(long, default_value = "0")]
        grid_lo: String,
        #[arg(long, default_value = "10")]
        grid_hi: String,
        #[arg(long, default_value = "1/2")]
        grid_step: String,
        #[arg(long, value_enum, default_value = "nondecreasing")]
        mode: Mode,
        /// In overbid mode, also test random valuation profiles drawn from this seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Number of random valuation profiles drawn when --seed is given.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Cap on payment evaluations.
        #[arg(long, default_value_t = smca::lab::DEFAULT_BUDGET)]
        budget: usize,
    },
}

fn load(input: &InstanceArgs) -> smca::Result<Instance> {
    let instance = match builtin(&input.instance) {
        Some(inst) => inst,
        None => {
            let path = Path::new(&input.instance);
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::input(format!(
                    "{}: {e} (built-in instances: {})",
                    input.instance,
                    BUILTIN_NAMES.join(", ")
                ))
            })?;
            InstanceDocument::parse(&text)?.to_instance()?
        }
    };
    match &input.bids {
        None => Ok(instance),
        Some(list) => {
            let bids = list
                .split(',')
                .map(|s| parse_rational(s.trim()))
                .collect::<smca::Result<Vec<Rational>>>()?;
            instance.with_bids(BidProfile::new(bids)?)
        }
    }
}

fn run(cli: Cli) -> smca::Result<bool> {
    match cli.command {
        Command::Solve { input } => {
            let inst = load(&input)?;
            report::solve(&inst, cli.json)?;
            Ok(true)
        }
        Command::Graph { input } => {
            let inst = load(&input)?;
            report::graph(&inst, cli.json)?;
            Ok(true)
        }
        Command::Export { input } => {
            let inst = load(&input)?;
            println!("{}", InstanceDocument::from_instance(&inst).to_json());
            Ok(true)
        }
        Command::Check {
            input,
            rule,
            grid_lo,
            grid_hi,
            grid_step,
            mode,
            seed,
            samples,
            budget,
        } => {
            let inst = load(&input)?;
            let settings = report::CheckSettings {
                rule,
                lo: parse_rational(&grid_lo)?,
                hi: parse_rational(&grid_hi)?,
                step: parse_rational(&grid_step)?,
                budget,
                seed,
                samples,
            };
            match mode {
                Mode::Nondecreasing => report::check_nondecreasing(&inst, &settings, cli.json),
                Mode::Overbid => report::check_overbid(&inst, &settings, cli.json),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_capacity() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
