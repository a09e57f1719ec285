//! Run configuration: a TOML file with shared top-level keys and optional
//! `[sensitivity]`, `[reliability]`, `[stability]` and `[decomposition]`
//! sections, overridden in turn by command line flags.
//!
//! ```toml
//! seed = 7
//! network = "football.gml"
//! format = "gml"
//! models = ["uniform", "crawled"]
//! levels = "0:30:2"
//!
//! [stability]
//! topk = 20
//! trials = 20
//! ```

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use noisenet_core::{Metric, NoiseModel, StrategyKind};
use serde::Deserialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NetworkFormat {
    /// Whitespace separated edge list with a separate community file.
    Edges,
    /// GML; node `value` attributes may carry the communities.
    Gml,
    /// 1-indexed LFR network and community files.
    Lfr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Sensitivity,
    Reliability,
    Stability,
    Decomposition,
}

impl Experiment {
    pub const ALL: [Experiment; 4] = [
        Experiment::Sensitivity,
        Experiment::Reliability,
        Experiment::Stability,
        Experiment::Decomposition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Sensitivity => "sensitivity",
            Experiment::Reliability => "reliability",
            Experiment::Stability => "stability",
            Experiment::Decomposition => "decomposition",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Every setting, all optional, as found in one config layer.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub network: Option<PathBuf>,
    pub format: Option<NetworkFormat>,
    pub communities: Option<PathBuf>,
    pub models: Option<Vec<String>>,
    pub levels: Option<String>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub ranges: Option<PathBuf>,
    pub strict: Option<bool>,
    pub strategies: Option<Vec<String>>,
    pub fraction: Option<f64>,
    pub reuse_seeds: Option<bool>,
    pub topk: Option<usize>,
    pub metrics: Option<Vec<String>>,
}

macro_rules! layer {
    ($base:expr, $over:expr, $($field:ident),*) => {
        Settings { $($field: $over.$field.or($base.$field),)* }
    };
}

impl Settings {
    /// `over` wins wherever it is set.
    pub fn overlay(self, over: Settings) -> Settings {
        layer!(
            self,
            over,
            network,
            format,
            communities,
            models,
            levels,
            trials,
            seed,
            out,
            ranges,
            strict,
            strategies,
            fraction,
            reuse_seeds,
            topk,
            metrics
        )
    }

    fn rebase_paths(&mut self, dir: &Path) {
        for path in [
            &mut self.network,
            &mut self.communities,
            &mut self.out,
            &mut self.ranges,
        ]
        .into_iter()
        .flatten()
        {
            if path.is_relative() {
                *path = dir.join(&*path);
            }
        }
    }
}

/// A parsed config file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    pub shared: Settings,
    pub sections: Vec<(Experiment, Settings)>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut table: toml::Table = text.parse().map_err(|e| Error::Config(format!("{e}")))?;
        let mut sections = Vec::new();
        for experiment in Experiment::ALL {
            if let Some(value) = table.remove(experiment.name()) {
                let settings = Settings::deserialize(value)
                    .map_err(|e| Error::Config(format!("[{experiment}]: {e}")))?;
                sections.push((experiment, settings));
            }
        }
        let shared = Settings::deserialize(toml::Value::Table(table))
            .map_err(|e| Error::Config(format!("{e}")))?;
        Ok(ConfigFile { shared, sections })
    }

    /// Reads a config file; relative paths inside it are taken relative to
    /// the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut config = Self::parse(&text)?;
        let dir = path.parent().unwrap_or(Path::new(""));
        config.shared.rebase_paths(dir);
        for (_, s) in &mut config.sections {
            s.rebase_paths(dir);
        }
        Ok(config)
    }

    /// Shared keys overlaid with the experiment's section.
    pub fn settings_for(&self, experiment: Experiment) -> Settings {
        let section = self
            .sections
            .iter()
            .find(|(e, _)| *e == experiment)
            .map(|(_, s)| s.clone())
            .unwrap_or_default();
        self.shared.clone().overlay(section)
    }
}

/// Where the network and its ground truth come from.
#[derive(Debug, Clone, PartialEq)]
pub struct Source {
    pub network: PathBuf,
    pub format: NetworkFormat,
    pub communities: Option<PathBuf>,
}

/// Fully resolved run parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub experiment: Experiment,
    pub source: Source,
    pub models: Vec<NoiseModel>,
    pub levels: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub ranges: Option<PathBuf>,
    pub strict: bool,
    pub strategies: Vec<StrategyKind>,
    pub fraction: f64,
    pub reuse_seeds: bool,
    pub topk: usize,
    pub metrics: Vec<Metric>,
}

pub const DEFAULT_LEVELS: &str = "2:30:2";
pub const DEFAULT_TRIALS: usize = 10;
pub const DEFAULT_FRACTION: f64 = 0.05;
pub const DEFAULT_TOPK: usize = 20;

fn parse_names<T: FromStr>(names: &[String], what: &str) -> Result<Vec<T>> {
    if names.is_empty() {
        return Err(Error::Config(format!("empty {what} list")));
    }
    names
        .iter()
        .map(|n| {
            n.trim()
                .parse()
                .map_err(|_| Error::Config(format!("unknown {what} {n:?}")))
        })
        .collect()
}

/// Parses noise levels given in percent, either `from:to:step` (inclusive)
/// or a comma separated list. Returns fractions.
pub fn parse_levels(spec: &str) -> Result<Vec<f64>> {
    let bad = || Error::Config(format!("invalid levels {spec:?}"));
    let number = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    let percents: Vec<f64> = if spec.contains(':') {
        let parts: Vec<f64> = spec.split(':').map(number).collect::<Result<_>>()?;
        let [from, to, step] = parts[..] else {
            return Err(bad());
        };
        if step.is_nan() || step <= 0.0 || to < from {
            return Err(bad());
        }
        let count = ((to - from) / step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| from + i as f64 * step).collect()
    } else {
        spec.split(',').map(number).collect::<Result<_>>()?
    };
    if percents.iter().any(|&p| !(0.0..=30.0).contains(&p)) {
        return Err(Error::Config(format!(
            "levels {spec:?} must lie in 0..=30 percent"
        )));
    }
    Ok(percents.into_iter().map(|p| p / 100.0).collect())
}

impl Settings {
    pub fn resolve(self, experiment: Experiment) -> Result<RunSpec> {
        let missing = |what: &str| Error::Config(format!("{what} is required"));
        let network = self.network.ok_or_else(|| missing("network"))?;
        let format =
            self.format
                .unwrap_or_else(|| match network.extension().and_then(|e| e.to_str()) {
                    Some(ext) if ext.eq_ignore_ascii_case("gml") => NetworkFormat::Gml,
                    _ => NetworkFormat::Edges,
                });
        let models = match &self.models {
            Some(names) => parse_names(names, "noise model")?,
            None => NoiseModel::ALL.to_vec(),
        };
        let strategies = match &self.strategies {
            Some(names) => parse_names(names, "strategy")?,
            None => StrategyKind::ALL.to_vec(),
        };
        let metrics = match &self.metrics {
            Some(names) => parse_names(names, "metric")?,
            None => vec![
                Metric::Permanence,
                Metric::Closeness,
                Metric::Betweenness,
                Metric::PageRank,
                Metric::Degree,
            ],
        };
        let trials = self.trials.unwrap_or(DEFAULT_TRIALS);
        if trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        let fraction = self.fraction.unwrap_or(DEFAULT_FRACTION);
        if !(fraction > 0.0 && fraction <= 1.0) {
            return Err(Error::Config(format!(
                "fraction {fraction} is outside (0, 1]"
            )));
        }
        Ok(RunSpec {
            experiment,
            source: Source {
                network,
                format,
                communities: self.communities,
            },
            models,
            levels: parse_levels(self.levels.as_deref().unwrap_or(DEFAULT_LEVELS))?,
            trials,
            seed: self.seed.ok_or_else(|| missing("seed"))?,
            out: self.out,
            ranges: self.ranges,
            strict: self.strict.unwrap_or(false),
            strategies,
            fraction,
            reuse_seeds: self.reuse_seeds.unwrap_or(false),
            topk: self.topk.unwrap_or(DEFAULT_TOPK),
            metrics,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_specs() {
        let levels = parse_levels("2:30:2").unwrap();
        assert_eq!(levels, noisenet_core::default_levels());
        assert_eq!(parse_levels("0:4:2").unwrap(), vec![0.0, 0.02, 0.04]);
        assert_eq!(parse_levels("0, 10,30").unwrap(), vec![0.0, 0.1, 0.3]);
        assert!(parse_levels("2:40:2").is_err());
        assert!(parse_levels("2:30:0").is_err());
        assert!(parse_levels("2:30").is_err());
        assert!(parse_levels("ten").is_err());
    }

    #[test]
    fn sections_overlay_shared_keys() {
        let config = ConfigFile::parse(
            r#"
            seed = 3
            network = "net.txt"
            trials = 5
            models = ["uniform"]

            [stability]
            trials = 7
            topk = 9
            "#,
        )
        .unwrap();
        let spec = config
            .settings_for(Experiment::Stability)
            .resolve(Experiment::Stability)
            .unwrap();
        assert_eq!((spec.trials, spec.topk, spec.seed), (7, 9, 3));
        assert_eq!(spec.models, vec![NoiseModel::Uniform]);
        assert_eq!(spec.source.format, NetworkFormat::Edges);
        let spec = config
            .settings_for(Experiment::Sensitivity)
            .resolve(Experiment::Sensitivity)
            .unwrap();
        assert_eq!((spec.trials, spec.topk), (5, DEFAULT_TOPK));
    }

    #[test]
    fn cli_layer_wins() {
        let file = Settings {
            seed: Some(1),
            trials: Some(4),
            network: Some("a.gml".into()),
            ..Settings::default()
        };
        let cli = Settings {
            trials: Some(9),
            ..Settings::default()
        };
        let spec = file.overlay(cli).resolve(Experiment::Sensitivity).unwrap();
        assert_eq!((spec.trials, spec.seed), (9, 1));
        assert_eq!(spec.source.format, NetworkFormat::Gml);
    }

    #[test]
    fn config_errors() {
        assert!(ConfigFile::parse("sede = 3").is_err());
        assert!(ConfigFile::parse("[stability]\ntopkk = 3").is_err());
        let no_seed = Settings {
            network: Some("x".into()),
            ..Settings::default()
        };
        assert!(no_seed
            .resolve(Experiment::Sensitivity)
            .unwrap_err()
            .to_string()
            .contains("seed"));
        let bad_model = Settings {
            network: Some("x".into()),
            seed: Some(0),
            models: Some(vec!["gaussian".into()]),
            ..Settings::default()
        };
        assert!(bad_model.resolve(Experiment::Sensitivity).is_err());
    }
}
