//! `zid`: list, verify and tabulate the registered zeta identities.

mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zeta_identities::mp::{MAX_DIGITS, MIN_DIGITS};
use zeta_identities::registry::{identity, list_identities, verify_with, Status, VerificationReport, VerifyConfig};

const MIN_SIEVE: usize = 10_000;

#[derive(Parser)]
#[command(name = "zid", version, about = "Verify squared zeta-value identities to extended precision")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: CliConfig,
}

#[derive(Subcommand)]
enum Command {
    /// Show every registered identity.
    List,
    /// Verify the given identities; `all` stands for the whole catalog.
    Verify {
        #[arg(required = true)]
        ids: Vec<String>,
    },
    /// Verify the whole catalog, optionally one convergence class only.
    VerifyAll {
        #[arg(long, value_enum)]
        class: Option<ClassFilter>,
    },
    /// Print pi, gamma, Catalan's constant, zeta(2..9) and the two lattice constants.
    Constants,
}

#[derive(Args, Debug, Clone)]
struct CliConfig {
    /// Decimal digits to work to.
    #[arg(long, global = true, default_value_t = 30)]
    digits: u32,
    /// Table length for the double series.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    sieve_limit: usize,
    /// Overrides the registered tolerance of estimate-class identities.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ClassFilter {
    Exponential,
    Polynomial,
    Conditional,
}

impl ClassFilter {
    fn name(self) -> &'static str {
        match self {
            ClassFilter::Exponential => "exponential",
            ClassFilter::Polynomial => "polynomial",
            ClassFilter::Conditional => "conditional",
        }
    }
}

struct Usage(String);

impl CliConfig {
    fn check(&self) -> Result<VerifyConfig, Usage> {
        if !(MIN_DIGITS..=MAX_DIGITS).contains(&self.digits) {
            return Err(Usage(format!("--digits must lie in {MIN_DIGITS}..={MAX_DIGITS}, got {}", self.digits)));
        }
        if self.sieve_limit < MIN_SIEVE {
            return Err(Usage(format!("--sieve-limit must be at least {MIN_SIEVE}, got {}", self.sieve_limit)));
        }
        if let Some(t) = self.tolerance {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Usage(format!("--tolerance must be positive, got {t}")));
            }
        }
        Ok(VerifyConfig { sieve_limit: self.sieve_limit, tolerance: self.tolerance, ..VerifyConfig::default() })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, code)) => match emit(&cli.config, &text) {
            Ok(()) => ExitCode::from(code),
            Err(e) => {
                eprintln!("zid: {e}");
                ExitCode::from(2)
            }
        },
        Err(Usage(msg)) => {
            eprintln!("zid: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(config: &CliConfig, text: &str) -> std::io::Result<()> {
    match &config.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn run(cli: &Cli) -> Result<(String, u8), Usage> {
    let verify_config = cli.config.check()?;
    let json = cli.config.json;
    match &cli.command {
        Command::List => {
            let rows: Vec<_> = list_identities().iter().map(|i| i.summary()).collect();
            Ok((render::list(&rows, json), 0))
        }
        Command::Verify { ids } => {
            let ids = if ids.iter().any(|i| i == "all") {
                list_identities().iter().map(|i| i.id.clone()).collect()
            } else {
                for id in ids {
                    identity(id).map_err(|e| Usage(e.to_string()))?;
                }
                ids.clone()
            };
            verify_many(&ids, cli.config.digits, &verify_config, json)
        }
        Command::VerifyAll { class } => {
            let ids: Vec<String> = list_identities()
                .iter()
                .filter(|i| class.is_none_or(|c| i.class.family() == c.name()))
                .map(|i| i.id.clone())
                .collect();
            verify_many(&ids, cli.config.digits, &verify_config, json)
        }
        Command::Constants => render::constants(cli.config.digits, json).map(|t| (t, 0)).map_err(|e| Usage(e.to_string())),
    }
}

fn verify_many(ids: &[String], digits: u32, config: &VerifyConfig, json: bool) -> Result<(String, u8), Usage> {
    let mut reports: Vec<VerificationReport> = Vec::with_capacity(ids.len());
    for id in ids {
        reports.push(verify_with(id, digits, config).map_err(|e| Usage(e.to_string()))?);
    }
    let failed = reports.iter().any(|r| r.status == Status::Fail);
    Ok((render::reports(&reports, json), if failed { 1 } else { 0 }))
}
