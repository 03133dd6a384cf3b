//! Command-line frontend: parse a run config, dispatch the named checks,
//! print human-readable lines and optionally write the JSON report.
//!
//! Exit codes: 0 when all selected checks pass, 1 on a check failure, 2 on
//! an input error.

use clap::{Parser, Subcommand, ValueEnum};
use mgk::checks::{self, SuiteProfile};
use mgk::config::{ConfigError, Resolved, RunConfig};
use mgk::gamma::Convention;
use mgk::report::{aggregate_json, Report};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "mgk", version, about = "Exact Mellin-side gamma kernel verifier for monodromic modules on tori")]
struct Cli {
    /// Run configuration (TOML or JSON)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Write the JSON report here
    #[arg(long, global = true)]
    json: Option<PathBuf>,

    /// Sign convention for the Mellin-side Weyl action
    #[arg(long, global = true, value_enum)]
    convention: Option<ConventionArg>,

    /// Override the gamma parameter c (as "p/q")
    #[arg(long, global = true)]
    c: Option<String>,

    /// Override the de Rham window size
    #[arg(long, global = true)]
    window: Option<i64>,

    /// Override the group-enumeration cap
    #[arg(long, global = true)]
    cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Unsigned,
    Signed,
}

impl From<ConventionArg> for Convention {
    fn from(v: ConventionArg) -> Self {
        match v {
            ConventionArg::Unsigned => Convention::Unsigned,
            ConventionArg::Signed => Convention::Signed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Verify Ψ_{λ̲,c} * E_ξ ≅ E_ξ with equivariance bookkeeping
    KeyProp,
    /// Verify the projective system Ψ_{λ̲,c} * L_ξⁿ ≅ L_ξⁿ
    Unipotent {
        /// Top level of the tower
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Verify the blockwise identity Ψ_{λ̲,c} * E_θ ≅ E_θ over the Weyl orbit
    ETheta,
    /// Compute the gamma multiplier dimension dim V_{λ̲,ξ}
    Multiplier,
    /// Report the coinvariant algebra of the stabilizer of ξ
    Coinvariants,
    /// Report the W′ extension combinatorics of the family λ̲
    Wprime,
    /// Self-Tor binomial patterns and distinct-coset vanishing
    TorDemo,
    /// Run the verification matrix
    Suite {
        #[arg(long, value_enum, default_value = "smoke")]
        profile: ProfileArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Smoke,
    Full,
}

fn load_config(cli: &Cli) -> Result<RunConfig, ConfigError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| ConfigError::Missing("--config PATH is required for this command".into()))?;
    let mut cfg = RunConfig::load(path)?;
    if let Some(c) = &cli.c {
        cfg.c = c.clone();
    }
    if let Some(conv) = cli.convention {
        cfg.options.convention = conv.into();
    }
    if let Some(w) = cli.window {
        cfg.options.window = w;
    }
    if let Some(cap) = cli.cap {
        cfg.options.cap = cap;
    }
    Ok(cfg)
}

fn resolved(cli: &Cli) -> Result<(RunConfig, Resolved), ConfigError> {
    let cfg = load_config(cli)?;
    let res = cfg.resolve()?;
    Ok((cfg, res))
}

fn run(cli: &Cli) -> Result<Vec<Report>, ConfigError> {
    match &cli.command {
        Command::KeyProp => {
            let (_, res) = resolved(cli)?;
            let gamma = RunConfig::require_gamma(&res)?;
            let xi = RunConfig::require_xi(&res)?;
            Ok(vec![checks::key_prop_check(
                gamma,
                xi,
                res.options.convention,
            )])
        }
        Command::Unipotent { n_max } => {
            let (_, res) = resolved(cli)?;
            let gamma = RunConfig::require_gamma(&res)?;
            let xi = RunConfig::require_xi(&res)?;
            let n = n_max.unwrap_or(res.options.n_max);
            Ok(vec![checks::unipotent_check(
                gamma,
                xi,
                n,
                res.options.convention,
            )])
        }
        Command::ETheta => {
            let (_, res) = resolved(cli)?;
            let gamma = RunConfig::require_gamma(&res)?;
            let xi = RunConfig::require_xi(&res)?;
            Ok(vec![checks::e_theta_check(
                gamma,
                xi,
                res.options.convention,
            )])
        }
        Command::Multiplier => {
            let (_, res) = resolved(cli)?;
            let gamma = RunConfig::require_gamma(&res)?;
            let xi = RunConfig::require_xi(&res)?;
            Ok(vec![checks::multiplier_check(gamma, xi, res.options.window)])
        }
        Command::Coinvariants => {
            let (_, res) = resolved(cli)?;
            let xi = RunConfig::require_xi(&res)?;
            Ok(vec![checks::coinvariants_check(
                &res.rd.label,
                &res.weyl,
                xi,
            )])
        }
        Command::Wprime => {
            let (cfg, res) = resolved(cli)?;
            if cfg.lambdas.is_empty() {
                return Err(ConfigError::Missing(
                    "config needs a cocharacter family `lambdas`".into(),
                ));
            }
            let sigma = cfg.sigma.clone().unwrap_or_else(|| res.rd.sigma_default());
            Ok(vec![checks::wprime_check(
                &res.rd,
                &res.weyl,
                &cfg.lambdas,
                &sigma,
            )])
        }
        Command::TorDemo => {
            let (_, res) = resolved(cli)?;
            Ok(vec![checks::tor_demo_check(res.rd.rank.min(3))])
        }
        Command::Suite { profile } => {
            let profile = match profile {
                ProfileArg::Smoke => SuiteProfile::Smoke,
                ProfileArg::Full => SuiteProfile::Full,
            };
            let convention = cli
                .convention
                .map(Convention::from)
                .unwrap_or(Convention::Unsigned);
            let mut options = mgk::config::Options::default();
            if let Some(w) = cli.window {
                options.window = w;
            }
            let entries = checks::suite(profile, convention, &options);
            Ok(entries
                .into_iter()
                .map(|e| {
                    let mut r = e.report;
                    r.check = e.id;
                    r
                })
                .collect())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(reports) => {
            for r in &reports {
                println!("{}", r.human());
            }
            let all = reports.iter().all(|r| r.passed);
            println!(
                "{}: {}/{} checks passed",
                if all { "ok" } else { "FAILED" },
                reports.iter().filter(|r| r.passed).count(),
                reports.len()
            );
            if let Some(path) = &cli.json {
                let payload = aggregate_json(&reports);
                match serde_json::to_string_pretty(&payload) {
                    Ok(text) => {
                        if let Err(e) = std::fs::write(path, text) {
                            eprintln!("error: cannot write {}: {e}", path.display());
                            return ExitCode::from(2);
                        }
                    }
                    Err(e) => {
                        eprintln!("error: cannot serialize report: {e}");
                        return ExitCode::from(2);
                    }
                }
            }
            if all {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
