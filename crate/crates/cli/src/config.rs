//! Run configuration: an optional TOML file overlaid by command-line flags.

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use sigmacert::search::{ConnectingVector, Flavor, SearchBudget};
use std::path::{Path, PathBuf};
use std::time::Duration;

/// Every field is optional so that a file can supply any subset.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub spec: Option<PathBuf>,
    #[serde(rename = "char")]
    pub character: Option<String>,
    pub m: Option<usize>,
    pub flavor: Option<String>,
    /// `"0,1,2"` or `"suggest"`.
    pub cv: Option<String>,
    pub max_radius: Option<usize>,
    /// Overall limit in seconds.
    pub time_limit: Option<u64>,
    pub step_time_limit: Option<u64>,
    pub max_disk_states: Option<usize>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    /// Largest stage the connecting-vector heuristic may propose.
    pub k_max: Option<usize>,
    /// Ball radius used by the connecting-vector heuristic.
    pub window: Option<usize>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let mut config: RunConfig =
            toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        // relative spec paths are relative to the config file
        if let (Some(spec), Some(dir)) = (&config.spec, path.parent()) {
            if spec.is_relative() {
                config.spec = Some(dir.join(spec));
            }
        }
        Ok(config)
    }

    /// Fields set in `flags` replace those in `self`.
    pub fn overlay(self, flags: RunConfig) -> RunConfig {
        RunConfig {
            spec: flags.spec.or(self.spec),
            character: flags.character.or(self.character),
            m: flags.m.or(self.m),
            flavor: flags.flavor.or(self.flavor),
            cv: flags.cv.or(self.cv),
            max_radius: flags.max_radius.or(self.max_radius),
            time_limit: flags.time_limit.or(self.time_limit),
            step_time_limit: flags.step_time_limit.or(self.step_time_limit),
            max_disk_states: flags.max_disk_states.or(self.max_disk_states),
            out: flags.out.or(self.out),
            jobs: flags.jobs.or(self.jobs),
            k_max: flags.k_max.or(self.k_max),
            window: flags.window.or(self.window),
        }
    }

    pub fn spec_path(&self) -> Result<&Path> {
        match &self.spec {
            Some(p) => Ok(p),
            None => bail!("no group spec given (use --spec or `spec` in the config file)"),
        }
    }

    pub fn flavor(&self) -> Result<Flavor> {
        match &self.flavor {
            None => Ok(Flavor::Homological),
            Some(name) => Flavor::from_name(name)
                .with_context(|| format!("unknown flavor {name:?}, expected hom or htpy")),
        }
    }

    /// Homotopical runs are degree 2 only; for them `m` defaults to 2.
    pub fn degree(&self, flavor: Flavor) -> Result<usize> {
        match (flavor, self.m) {
            (Flavor::Homotopical, None | Some(2)) => Ok(2),
            (Flavor::Homotopical, Some(m)) => {
                bail!("the homotopical search is only defined for m = 2, got m = {m}")
            }
            (Flavor::Homological, Some(m)) => Ok(m),
            (Flavor::Homological, None) => bail!("no degree given (use --m)"),
        }
    }

    /// `None` means the heuristic should propose one.
    pub fn connecting_vector(&self, flavor: Flavor, m: usize) -> Result<Option<ConnectingVector>> {
        match self.cv.as_deref().map(str::trim) {
            None | Some("suggest") => Ok(None),
            Some(text) => {
                let cv = ConnectingVector::parse(text, flavor)?;
                if cv.entries.len() != m + 1 {
                    bail!(
                        "connecting vector {cv} has {} entries, degree {m} needs {}",
                        cv.entries.len(),
                        m + 1
                    );
                }
                Ok(Some(cv))
            }
        }
    }

    pub fn budget(&self) -> SearchBudget {
        let mut budget = SearchBudget::default();
        if let Some(r) = self.max_radius {
            budget = budget.with_max_radius(r);
        }
        if let Some(s) = self.time_limit {
            budget.overall_time_limit = Some(Duration::from_secs(s));
        }
        if let Some(s) = self.step_time_limit {
            budget.step_time_limit = Some(Duration::from_secs(s));
        }
        if let Some(k) = self.max_disk_states {
            budget.max_disk_states = k;
        }
        budget
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win() {
        let file: RunConfig = toml::from_str("m = 1\nflavor = \"hom\"\ncv = \"0,1\"\njobs = 2").unwrap();
        let flags = RunConfig {
            m: Some(2),
            cv: Some("0,1,2".into()),
            ..RunConfig::default()
        };
        let c = file.overlay(flags);
        assert_eq!(c.m, Some(2));
        assert_eq!(c.jobs, Some(2));
        assert_eq!(c.cv.as_deref(), Some("0,1,2"));
    }

    #[test]
    fn homotopical_degree() {
        let c = RunConfig {
            flavor: Some("htpy".into()),
            ..RunConfig::default()
        };
        assert_eq!(c.degree(Flavor::Homotopical).unwrap(), 2);
        let c = RunConfig { m: Some(3), ..c };
        assert!(c.degree(Flavor::Homotopical).is_err());
    }

    #[test]
    fn unknown_keys_are_errors() {
        assert!(toml::from_str::<RunConfig>("radius = 3").is_err());
    }
}
