use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::ValueEnum;
use fiverank::classgroup::DEFAULT_DISC_BOUND;
use fiverank::curves::DEFAULT_TRIAL_BOUND;
use serde::{Deserialize, Serialize};

/// Environment variable naming the config file when `--config` is absent.
pub const CONFIG_ENV: &str = "FIVERANK_CONFIG";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Pos,
    Neg,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SieveConfig {
    /// smallest |z| considered, as a decimal string
    pub start: String,
    pub sign: Sign,
    pub count: usize,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig { start: "0".into(), sign: Sign::Pos, count: 10 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    /// where `derive` writes the specialization dump
    pub specialization: PathBuf,
    /// JSONL destination; stdout when absent
    pub jsonl: Option<PathBuf>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { specialization: "specialization.json".into(), jsonl: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub trial_bound: u64,
    pub disc_bound: u64,
    pub workers: usize,
    pub sieve: SieveConfig,
    pub output: OutputConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            trial_bound: DEFAULT_TRIAL_BOUND,
            disc_bound: DEFAULT_DISC_BOUND,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            sieve: SieveConfig::default(),
            output: OutputConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> anyhow::Result<Self> {
        Ok(toml::from_str(text)?)
    }

    /// Reads `path`, or the file named by [`CONFIG_ENV`], or falls back to the
    /// defaults.
    pub fn load(path: Option<&Path>) -> anyhow::Result<Self> {
        let path = path.map(Path::to_path_buf).or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
        match path {
            Some(p) => {
                let text = std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
                Self::from_toml(&text).with_context(|| format!("parsing {}", p.display()))
            }
            None => Ok(Self::default()),
        }
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.trial_bound == 0 || self.disc_bound == 0 {
            bail!("bounds must be positive");
        }
        if self.workers == 0 {
            bail!("worker count must be at least 1");
        }
        if self.sieve.start.parse::<num_bigint::BigInt>().is_err() {
            bail!("sieve.start {:?} is not an integer", self.sieve.start);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_file_keeps_defaults() {
        let c = RunConfig::from_toml("workers = 2\n[sieve]\nsign = \"both\"\n").unwrap();
        assert_eq!(c.workers, 2);
        assert_eq!(c.sieve.sign, Sign::Both);
        assert_eq!(c.sieve.count, 10);
        assert_eq!(c.disc_bound, DEFAULT_DISC_BOUND);
        c.validate().unwrap();
    }

    #[test]
    fn bad_values_rejected() {
        assert!(RunConfig::from_toml("colour = 1").is_err());
        assert!(RunConfig::from_toml("workers = 0").unwrap().validate().is_err());
        assert!(RunConfig::from_toml("[sieve]\nstart = \"x\"").unwrap().validate().is_err());
    }
}
