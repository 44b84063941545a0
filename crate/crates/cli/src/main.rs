//! `dmcbounds`: reliability-function bounds for discrete memoryless channels.

mod approx_cmd;
mod info;
mod output;
mod product;
mod sweep;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dmcbounds::approx::Quantity;
use dmcbounds::{Channel, Error};

#[derive(Parser, Debug)]
#[command(name = "dmcbounds", version, about = "Bounds on the reliability function of discrete memoryless channels")]
struct Cli {
    /// Channel JSON file; `product` takes it twice.
    #[arg(long, global = true)]
    channel: Vec<PathBuf>,
    /// Also write the output to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Largest rho tried by the exponent searches.
    #[arg(long, global = true, default_value_t = 64.0)]
    rho_cap: f64,
    /// Largest product alphabet that may be built.
    #[arg(long, global = true, default_value_t = dmcbounds::DEFAULT_SIZE_CAP)]
    size_cap: usize,
    /// Iteration budget of `semidecide`.
    #[arg(long, global = true, default_value_t = 500)]
    budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Capacity, R_inf, zero-error quantities and expurgation rates.
    Info {
        /// Largest k for the expurgation rates.
        #[arg(long, default_value_t = 2)]
        max_k: usize,
        /// Largest block length for the zero-error lower bounds.
        #[arg(long, default_value_t = 2)]
        max_n: usize,
    },
    /// Tabulate E_sp, E_r and E_ex over a rate grid.
    Sweep(sweep::SweepArgs),
    /// R_inf and C0_fb of two channels and of their product.
    Product,
    /// Trace the approximation sequence of R_inf or C0_fb.
    Approx {
        #[arg(long, default_value = "R_inf")]
        quantity: String,
        #[arg(long, default_value_t = 50)]
        n_max: usize,
    },
    /// Try to certify that R_inf (or C0_fb) lies below lambda.
    Semidecide {
        #[arg(long, default_value = "R_inf")]
        quantity: String,
        #[arg(long)]
        lambda: f64,
    },
}

/// Failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 2,
            Error::SizeOverflow { .. } | Error::BudgetExceeded(..) => 4,
            Error::NonConvergence(..) | Error::RhoCapExceeded(_) => 1,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

pub struct Settings {
    pub format: Option<Format>,
    pub rho_cap: f64,
    pub size_cap: usize,
}

fn load(path: &Path) -> Result<Channel, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
    Channel::from_json(&text).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn single(paths: &[PathBuf]) -> Result<Channel, Failure> {
    match paths {
        [one] => load(one),
        _ => Err(Failure::parse("exactly one --channel is required")),
    }
}

fn quantity(s: &str) -> Result<Quantity, Failure> {
    s.parse().map_err(|e: Error| Failure::parse(e.to_string()))
}

/// Output text plus the process exit code on success.
fn run(cli: Cli) -> Result<(String, u8), Failure> {
    let settings = Settings {
        format: cli.format,
        rho_cap: cli.rho_cap,
        size_cap: cli.size_cap,
    };
    if !(settings.rho_cap > 1.0) {
        return Err(Failure::validation("--rho-cap must exceed 1"));
    }
    match cli.command {
        Command::Info { max_k, max_n } => {
            let w = single(&cli.channel)?;
            Ok((info::run(&w, max_k, max_n, &settings)?, 0))
        }
        Command::Sweep(args) => {
            let w = single(&cli.channel)?;
            Ok((sweep::run(&w, &args, &settings)?, 0))
        }
        Command::Product => {
            let [a, b] = cli.channel.as_slice() else {
                return Err(Failure::parse("product needs --channel twice"));
            };
            Ok((product::run(&load(a)?, &load(b)?, &settings)?, 0))
        }
        Command::Approx { quantity: q, n_max } => {
            let w = single(&cli.channel)?;
            Ok((approx_cmd::trace(&w, quantity(&q)?, n_max, &settings)?, 0))
        }
        Command::Semidecide { quantity: q, lambda } => {
            let w = single(&cli.channel)?;
            approx_cmd::semidecide(&w, quantity(&q)?, lambda, cli.budget, &settings)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
