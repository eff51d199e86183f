//! Run configuration: built-in defaults, overridden by a flat `key = value`
//! file (or the `config` block of a previous run manifest), overridden by
//! command-line flags.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    pub steps: usize,
    pub horizon: f64,
    pub n_bins: usize,
    pub alpha: f64,
    pub output_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            trials: 100_000,
            steps: 1_000,
            horizon: 1.0,
            n_bins: 60,
            alpha: 0.01,
            output_dir: PathBuf::from("out"),
        }
    }
}

/// Values that may come from the command line; `None` means "not given".
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub steps: Option<usize>,
    pub horizon: Option<f64>,
    pub n_bins: Option<usize>,
    pub alpha: Option<f64>,
    pub output_dir: Option<PathBuf>,
}

impl Overrides {
    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.trials {
            cfg.trials = v;
        }
        if let Some(v) = self.steps {
            cfg.steps = v;
        }
        if let Some(v) = self.horizon {
            cfg.horizon = v;
        }
        if let Some(v) = self.n_bins {
            cfg.n_bins = v;
        }
        if let Some(v) = self.alpha {
            cfg.alpha = v;
        }
        if let Some(v) = &self.output_dir {
            cfg.output_dir = v.clone();
        }
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> CliResult<T> {
    value
        .parse()
        .map_err(|_| CliError::Usage(format!("config line {line}: bad value {value:?} for {key}")))
}

/// Parses flat `key = value` text. Blank lines and `#` comments are skipped.
pub fn parse_config_text(text: &str) -> CliResult<Overrides> {
    let mut o = Overrides::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {line}: expected key = value")))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "seed" => o.seed = Some(parse_value(key, value, line)?),
            "trials" => o.trials = Some(parse_value(key, value, line)?),
            "steps" => o.steps = Some(parse_value(key, value, line)?),
            "horizon" => o.horizon = Some(parse_value(key, value, line)?),
            "bins" | "n_bins" => o.n_bins = Some(parse_value(key, value, line)?),
            "alpha" => o.alpha = Some(parse_value(key, value, line)?),
            "out" | "output_dir" => o.output_dir = Some(PathBuf::from(value)),
            other => return Err(CliError::Usage(format!("config line {line}: unknown key {other:?}"))),
        }
    }
    Ok(o)
}

/// Reads a config file. A JSON document is taken to be a run manifest and
/// its `config` block is used.
pub fn load_config_file(path: &Path) -> CliResult<Overrides> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    if text.trim_start().starts_with('{') {
        let doc: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let cfg: RunConfig = serde_json::from_value(doc.get("config").cloned().unwrap_or_default())
            .map_err(|e| CliError::Usage(format!("{}: no usable config block: {e}", path.display())))?;
        return Ok(Overrides {
            seed: Some(cfg.seed),
            trials: Some(cfg.trials),
            steps: Some(cfg.steps),
            horizon: Some(cfg.horizon),
            n_bins: Some(cfg.n_bins),
            alpha: Some(cfg.alpha),
            output_dir: Some(cfg.output_dir),
        });
    }
    parse_config_text(&text)
}

impl RunConfig {
    pub fn resolve(config_file: Option<&Path>, flags: &Overrides) -> CliResult<Self> {
        let mut cfg = RunConfig::default();
        if let Some(path) = config_file {
            load_config_file(path)?.apply(&mut cfg);
        }
        flags.apply(&mut cfg);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.trials == 0 || self.steps == 0 || self.n_bins == 0 {
            return Err(CliError::Usage("trials, steps and bins must be positive".into()));
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(CliError::Usage(format!("horizon must be positive, got {}", self.horizon)));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(CliError::Usage(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_flags_over_file_over_defaults() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        fs::write(&path, "# comment\nseed = 7\ntrials = 500 # inline\nalpha=0.05\n").unwrap();
        let flags = Overrides { trials: Some(300), ..Default::default() };
        let cfg = RunConfig::resolve(Some(&path), &flags).unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.trials, 300);
        assert_eq!(cfg.alpha, 0.05);
        assert_eq!(cfg.steps, 1_000);
    }

    #[test]
    fn bad_config_lines() {
        assert!(matches!(parse_config_text("seed 4"), Err(CliError::Usage(_))));
        assert!(matches!(parse_config_text("colour = red"), Err(CliError::Usage(_))));
        assert!(matches!(parse_config_text("trials = -3"), Err(CliError::Usage(_))));
    }

    #[test]
    fn manifest_config_block_is_accepted() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("manifest.json");
        let cfg = RunConfig { seed: 9, trials: 123, ..Default::default() };
        let doc = serde_json::json!({ "command": "fig3", "config": cfg });
        fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
        let back = RunConfig::resolve(Some(&path), &Overrides::default()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn validation() {
        let bad = Overrides { alpha: Some(1.5), ..Default::default() };
        assert!(RunConfig::resolve(None, &bad).is_err());
        let bad = Overrides { horizon: Some(0.0), ..Default::default() };
        assert!(RunConfig::resolve(None, &bad).is_err());
    }
}
