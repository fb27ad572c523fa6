use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gini_qudit::experiments::{self, outputs_for, write_manifest, RunManifest};
use gini_qudit::qudit::Dimension;
use gini_qudit::search::SearchConfig;
use gini_qudit::Error;
use serde_json::json;

/// Gini uncertainty experiments for odd-dimensional qudits.
#[derive(Parser)]
#[command(name = "gini-qudit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SearchArgs {
    /// Haar-random states per dimension.
    #[arg(long, default_value_t = 400)]
    samples: usize,
    /// Number of top candidates refined by pattern search.
    #[arg(long, default_value_t = 5)]
    restarts: usize,
    /// Refine the best candidates by pattern search.
    #[arg(long)]
    refine: bool,
    #[arg(long, default_value_t = 0.1)]
    step_init: f64,
    #[arg(long, default_value_t = 1e-6)]
    step_min: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            n_random: self.samples,
            n_restarts: self.restarts,
            refine: self.refine,
            step_init: self.step_init,
            step_min: self.step_min,
            seed: self.seed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// G_XP of random pure states (one CSV row per sample).
    GxpHist {
        #[arg(long, default_value_t = 7)]
        d: usize,
        #[arg(long, default_value_t = 400)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Estimates of the Gini uncertainty constant over a range of odd d.
    EtaSweep {
        #[arg(long, default_value_t = 3)]
        d_min: usize,
        #[arg(long, default_value_t = 101)]
        d_max: usize,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Minimum-Gini-uncertainty fiducial state for one d (always refined).
    FindG {
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Expansion of a state over the coherent family of a fiducial.
    Expand {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        fiducial: PathBuf,
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Error norms of the expansion under multiplicative coefficient noise.
    Noise {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        fiducial: PathBuf,
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Entropic excess of minimum-Gini states over a range of odd d.
    EntropyCompare {
        #[arg(long, default_value_t = 3)]
        d_min: usize,
        #[arg(long, default_value_t = 31)]
        d_max: usize,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        out: PathBuf,
    },
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(raw) = std::env::var("GINI_QUDIT_THREADS") {
        let n: usize = raw
            .trim()
            .parse()
            .map_err(|_| anyhow::anyhow!("GINI_QUDIT_THREADS must be an integer, got {raw:?}"))?;
        if n > 0 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()?;
        }
    }
    Ok(())
}

fn manifest(
    command: &str,
    config: serde_json::Value,
    seed: Option<u64>,
    out: &Path,
) -> Result<(), Error> {
    write_manifest(
        out,
        &RunManifest::new(command, config, seed, &outputs_for(out)),
    )?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::GxpHist {
            d,
            samples,
            seed,
            out,
        } => {
            let hist = experiments::gxp_histogram(Dimension::new(d)?, samples, seed, &out)?;
            manifest(
                "gxp-hist",
                json!({ "d": d, "samples": samples }),
                Some(seed),
                &out,
            )?;
            println!("d = {d}: max G_XP over {samples} samples = {:.6}", hist.max);
        }
        Command::EtaSweep {
            d_min,
            d_max,
            search,
            out,
        } => {
            let cfg = search.config();
            let rows = experiments::eta_sweep(d_min, d_max, &cfg, &out)?;
            manifest(
                "eta-sweep",
                json!({ "d_min": d_min, "d_max": d_max, "search": cfg }),
                Some(cfg.seed),
                &out,
            )?;
            for r in rows {
                println!(
                    "d = {:>3}  eta_hat = {:.6}  eta_tilde = {:.6}  gap = {:+.6}",
                    r.d,
                    r.eta_hat,
                    r.eta_tilde,
                    r.gap()
                );
            }
        }
        Command::FindG { d, search, out } => {
            let cfg = search.config();
            let found = experiments::find_g(Dimension::new(d)?, &cfg, &out)?;
            manifest(
                "find-g",
                json!({ "d": d, "search": found.config }),
                Some(cfg.seed),
                &out,
            )?;
            print!(
                "d = {d}: Delta = {:.6} (eta_tilde = {:.6})",
                found.report.delta, found.eta_tilde
            );
            match found.reference_delta {
                Some(r) => println!(", published state Delta = {r:.6}"),
                None => println!(),
            }
        }
        Command::Expand {
            d,
            fiducial,
            state,
            out,
        } => {
            let result = experiments::expand_cmd(d, &fiducial, &state, &out)?;
            manifest(
                "expand",
                json!({ "d": d, "fiducial": fiducial.display().to_string(), "state": state.display().to_string() }),
                None,
                &out,
            )?;
            println!(
                "d = {d}: {} components, reconstruction residual {:.3e}",
                result.components.len(),
                result.residual
            );
        }
        Command::Noise {
            d,
            fiducial,
            state,
            epsilon,
            trials,
            seed,
            out,
        } => {
            let outcome =
                experiments::noise_cmd(d, &fiducial, &state, epsilon, trials, seed, &out)?;
            manifest(
                "noise",
                json!({
                    "d": d,
                    "fiducial": fiducial.display().to_string(),
                    "state": state.display().to_string(),
                    "epsilon": epsilon,
                    "trials": trials,
                }),
                Some(seed),
                &out,
            )?;
            println!(
                "epsilon = {epsilon}: average error norm {:.6} over {trials} trials",
                outcome.average
            );
        }
        Command::EntropyCompare {
            d_min,
            d_max,
            search,
            out,
        } => {
            let cfg = SearchConfig {
                refine: true,
                ..search.config()
            };
            let rows = experiments::entropy_compare(d_min, d_max, &cfg, &out)?;
            manifest(
                "entropy-compare",
                json!({ "d_min": d_min, "d_max": d_max, "search": cfg }),
                Some(cfg.seed),
                &out,
            )?;
            for r in rows {
                println!(
                    "d = {:>3}  Delta = {:.6}  entropic excess = {:.6}",
                    r.d, r.delta, r.entropic_excess
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(
            e @ (Error::EvenDimension(_) | Error::DimensionTooSmall(_) | Error::InvalidConfig(_)),
        ) => {
            eprintln!("usage error: {e}");
            ExitCode::from(2)
        }
        Err(Error::InvariantViolation { check, detail }) => {
            eprintln!("invariant check failed: {check}: {detail}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
