//! `genex`: exact genus-expansion coefficients, map counts and the
//! identities linking them.

mod cache;
mod commands;
mod error;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use genex::genus_even::default_trunc;

use cache::Cache;
use error::CliError;
use render::Format;

const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
const CACHE_ENV: &str = "GENEX_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "genex", version, about = "Exact genus expansions and map counts for regular random matrix weights")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand.
#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Result cache directory (overrides GENEX_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Compute without reading or writing the cache.
    #[arg(long, global = true)]
    no_cache: bool,
}

impl RunConfig {
    fn cache(&self) -> Cache {
        if self.no_cache {
            return Cache::disabled(ENGINE_VERSION);
        }
        let dir = self.cache_dir.clone().or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
        Cache::new(dir, ENGINE_VERSION)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Planar series z_0 and the higher Catalan numbers.
    Z0 {
        #[arg(long)]
        nu: u32,
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
    /// Recursion-coefficient correction z_g as a rational function of z_0.
    Zg {
        #[arg(long)]
        nu: u32,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        series_order: Option<usize>,
    },
    /// Free-energy coefficient e_g with its structure report.
    Eg {
        #[arg(long)]
        nu: u32,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        series_order: Option<usize>,
    },
    /// Labelled map counts by genus from exhaustive fat-graph enumeration.
    Maps {
        #[arg(long)]
        valence: usize,
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        genus: Option<u32>,
    },
    /// Check identities exactly.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Trivalent closed forms against map counts.
    Trivalent {
        #[arg(long, default_value_t = 4)]
        mmax: usize,
    },
    /// Counts and constants across modules.
    Report,
}

#[derive(Subcommand, Debug)]
enum VerifyTarget {
    /// Finite-n lattice identities from the recurrence table.
    Lattice {
        #[arg(long)]
        nu: u32,
        #[arg(long)]
        nmax: usize,
        #[arg(long, default_value_t = 5)]
        torder: usize,
        #[arg(long)]
        with_t1: bool,
        /// Perturb one moment before building the table.
        #[arg(long, hide = true)]
        corrupt_moment: Option<usize>,
    },
    /// Continuum-limit identities and z_g structure.
    Continuum {
        #[arg(long)]
        nu: u32,
        #[arg(long, default_value_t = 2)]
        g: usize,
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
    /// Odd-valence coefficient identities and the hodograph pair.
    Odd {
        #[arg(long)]
        nu: u32,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
}

fn dispatch(cmd: &Command, cache: &Cache) -> Result<serde_json::Value, CliError> {
    match cmd {
        Command::Z0 { nu, order } => {
            cache.lookup_or_compute(&format!("z0 nu={nu} order={order}"), || commands::z0(*nu, *order))
        }
        Command::Zg { nu, g, series_order } => {
            let t = series_order.unwrap_or(5 * g + 12);
            cache.lookup_or_compute(&format!("zg nu={nu} g={g} order={t}"), || commands::zg(*nu, *g, t))
        }
        Command::Eg { nu, g, series_order } => {
            let t = series_order.unwrap_or(default_trunc(*g));
            cache.lookup_or_compute(&format!("eg nu={nu} g={g} order={t}"), || commands::eg(*nu, *g, t))
        }
        Command::Maps { valence, vertices, genus } => {
            let gk = genus.map_or("all".to_string(), |g| g.to_string());
            cache.lookup_or_compute(&format!("maps valence={valence} vertices={vertices} genus={gk}"), || {
                commands::maps(*valence, *vertices, *genus)
            })
        }
        Command::Verify { target } => match target {
            VerifyTarget::Lattice { nu, nmax, torder, with_t1, corrupt_moment } => {
                let compute = || commands::verify_lattice(*nu, *nmax, *torder, *with_t1, *corrupt_moment);
                match corrupt_moment {
                    // negative controls never touch the cache
                    Some(_) => compute(),
                    None => cache.lookup_or_compute(
                        &format!("verify-lattice nu={nu} nmax={nmax} torder={torder} t1={with_t1}"),
                        compute,
                    ),
                }
            }
            VerifyTarget::Continuum { nu, g, order } => cache
                .lookup_or_compute(&format!("verify-continuum nu={nu} g={g} order={order}"), || {
                    commands::verify_continuum(*nu, *g, *order)
                }),
            VerifyTarget::Odd { nu, order } => cache
                .lookup_or_compute(&format!("verify-odd nu={nu} order={order}"), || {
                    commands::verify_odd_report(*nu, *order)
                }),
        },
        Command::Trivalent { mmax } => {
            cache.lookup_or_compute(&format!("trivalent mmax={mmax}"), || commands::trivalent(*mmax))
        }
        Command::Report => cache.lookup_or_compute("report", commands::report),
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let payload = dispatch(&cli.command, &cli.run.cache())?;
    let text = render::render(&payload, cli.run.format)?;
    std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Output(e.to_string()))?;
    Ok(payload.get("all_pass").and_then(|v| v.as_bool()) != Some(false))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
