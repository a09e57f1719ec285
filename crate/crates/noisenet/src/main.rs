use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use noisenet::config::{ConfigFile, Experiment, NetworkFormat, Settings};
use noisenet::experiments::run;
use noisenet::output::{write_ranges, write_table};
use noisenet::Error;

/// Noise sensitivity experiments on community-structured networks.
#[derive(Parser)]
#[command(name = "noisenet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mean centralities and community scores under noise.
    Sensitivity(Common),
    /// Broadcast time for each seed selection strategy.
    Reliability {
        #[command(flatten)]
        common: Common,
        /// Comma separated strategies (permanence, closeness, betweenness, pagerank, degree, random).
        #[arg(long)]
        strategies: Option<String>,
        /// Fraction of vertices used as seeds.
        #[arg(long)]
        fraction: Option<f64>,
        /// Select seeds once on the original graph.
        #[arg(long)]
        reuse_seeds: bool,
    },
    /// Jaccard index of top-k vertex sets before and after noise.
    Stability {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        topk: Option<usize>,
        /// Comma separated metrics.
        #[arg(long)]
        metrics: Option<String>,
    },
    /// Components of permanence and modularity under noise.
    Decomposition(Common),
}

#[derive(Args)]
struct Common {
    /// TOML config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Network file.
    #[arg(long)]
    network: Option<PathBuf>,
    /// The network file is GML.
    #[arg(long, conflicts_with = "lfr")]
    gml: bool,
    /// The network and community files are LFR benchmark output.
    #[arg(long)]
    lfr: bool,
    /// Ground-truth community file.
    #[arg(long)]
    communities: Option<PathBuf>,
    /// Comma separated noise models (uniform, censored, crawled).
    #[arg(long)]
    models: Option<String>,
    /// Noise levels in percent, "from:to:step" or a comma separated list [default: 2:30:2].
    #[arg(long)]
    levels: Option<String>,
    /// Trials per level [default: 10].
    #[arg(long)]
    trials: Option<usize>,
    /// Master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Range tuple CSV (sensitivity only).
    #[arg(long)]
    ranges: Option<PathBuf>,
    /// Abort with status 2 when any noise item is infeasible.
    #[arg(long)]
    strict: bool,
}

fn list(s: Option<String>) -> Option<Vec<String>> {
    s.map(|s| s.split(',').map(|x| x.trim().to_string()).collect())
}

impl Common {
    fn settings(self) -> (Option<PathBuf>, Settings) {
        let format = if self.gml {
            Some(NetworkFormat::Gml)
        } else if self.lfr {
            Some(NetworkFormat::Lfr)
        } else {
            None
        };
        let settings = Settings {
            network: self.network,
            format,
            communities: self.communities,
            models: list(self.models),
            levels: self.levels,
            trials: self.trials,
            seed: self.seed,
            out: self.out,
            ranges: self.ranges,
            strict: self.strict.then_some(true),
            ..Settings::default()
        };
        (self.config, settings)
    }
}

fn settings(command: Command) -> (Experiment, Option<PathBuf>, Settings) {
    match command {
        Command::Sensitivity(c) => {
            let (config, s) = c.settings();
            (Experiment::Sensitivity, config, s)
        }
        Command::Decomposition(c) => {
            let (config, s) = c.settings();
            (Experiment::Decomposition, config, s)
        }
        Command::Reliability {
            common,
            strategies,
            fraction,
            reuse_seeds,
        } => {
            let (config, s) = common.settings();
            let s = Settings {
                strategies: list(strategies),
                fraction,
                reuse_seeds: reuse_seeds.then_some(true),
                ..s
            };
            (Experiment::Reliability, config, s)
        }
        Command::Stability {
            common,
            topk,
            metrics,
        } => {
            let (config, s) = common.settings();
            let s = Settings {
                topk,
                metrics: list(metrics),
                ..s
            };
            (Experiment::Stability, config, s)
        }
    }
}

fn execute(command: Command) -> Result<(), Error> {
    let (experiment, config, cli) = settings(command);
    let base = match config {
        Some(path) => ConfigFile::load(&path)?.settings_for(experiment),
        None => Settings::default(),
    };
    let spec = base.overlay(cli).resolve(experiment)?;
    let output = run(&spec)?;

    match &spec.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| Error::Io {
                path: path.clone(),
                source: e,
            })?;
            write_table(&output.table, BufWriter::new(file))?;
        }
        None => write_table(&output.table, io::stdout().lock())?,
    }
    if let Some(path) = &spec.ranges {
        let file = File::create(path).map_err(|e| Error::Io {
            path: path.clone(),
            source: e,
        })?;
        write_ranges(&output.ranges, BufWriter::new(file))?;
    }
    for r in &output.ranges {
        log::info!(
            "{} {}: ({:.3}, {:.3})",
            r.noise_model,
            r.subject,
            r.start,
            r.end
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(io::stderr(), "error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
