mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polymap_core::groebner::Budget;

/// Environment variable overriding the default pair budget.
pub const BUDGET_ENV: &str = "POLYMAP_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "polymap", version, about = "Proper polynomial maps of the plane and their branch curves")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Maximum number of critical pairs per Gröbner computation.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Seed for the random points used by degree computations.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
}

impl Global {
    pub fn budget(&self) -> Result<Budget, String> {
        let pairs = match self.budget {
            Some(n) => Some(n),
            None => match std::env::var(BUDGET_ENV) {
                Ok(v) => Some(v.trim().parse().map_err(|_| format!("{BUDGET_ENV} must be an integer, got `{v}`"))?),
                Err(_) => None,
            },
        };
        Ok(match pairs {
            Some(n) => Budget {
                max_pairs: n,
                ..Budget::default()
            },
            None => Budget::default(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Tier {
    Full,
    Divisibility,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether a map is proper.
    Proper { map: String },
    /// Topological degree of a proper map.
    Degree { map: String },
    /// Branch curve of a map, or verification of a claimed one.
    Branch {
        map: String,
        #[arg(long)]
        claimed: Option<String>,
        #[arg(long, value_enum, default_value = "full")]
        tier: Tier,
    },
    /// Milnor number of a plane curve at the origin or at a given point.
    Milnor {
        poly: String,
        /// Base point `a,b` with rational coordinates.
        #[arg(long)]
        at: Option<String>,
    },
    /// Try to prove two maps inequivalent through their critical curves.
    Distinguish { map1: String, map2: String },
    /// Build a named family member: whitney, fd, fdn, semi_separate, separate.
    Family {
        name: String,
        /// Parameters as key=value, e.g. `d=3` or `q=y^3+x*y`.
        #[arg(long = "params", num_args = 1..)]
        params: Vec<String>,
    },
    /// Inspect a reflection group such as `G4`, `G(4,2,2)`, `cyclic(5)` or `product(2,3)`.
    Group {
        spec: String,
        #[arg(long)]
        fingerprint: bool,
        #[arg(long)]
        invariants: bool,
        #[arg(long)]
        quotient: bool,
        #[arg(long)]
        verify: bool,
    },
    /// Catalog groups of a given order.
    Classes {
        #[arg(long)]
        degree: u64,
    },
    /// Check every row of the table of Galois coverings.
    #[command(name = "verify-table4")]
    VerifyTable4 {
        #[arg(long, value_enum, default_value = "full")]
        tier: Tier,
    },
    /// Check the f_d package: Jacobian split, integral relations, curve types.
    #[command(name = "verify-theorem-a")]
    VerifyTheoremA {
        #[arg(long, default_value_t = 5)]
        d_max: u32,
    },
    /// Milnor certificates separating f_{d,n} from f_{d,m}.
    #[command(name = "verify-theorem-b")]
    VerifyTheoremB {
        #[arg(long, default_value_t = 3)]
        d: u32,
        #[arg(long, default_value_t = 4)]
        n_max: u32,
    },
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let start = Instant::now();
    let command_echo = argv.into_iter().skip(1).collect();
    match commands::run(&cli.command, &cli.global, command_echo) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = report.write(cli.global.json, &mut out) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
            ExitCode::from(report.exit_code() as u8)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
