//! Experiment configuration files (TOML).

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Overrides the window vertex cap of every experiment.
pub const ENV_MAX_VERTICES: &str = "CUTSET_LAB_MAX_VERTICES";
/// Overrides the enumeration state cap of every experiment.
pub const ENV_MAX_STATES: &str = "CUTSET_LAB_MAX_STATES";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub seed: u64,
    /// Relative paths resolve against the config file's directory.
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub limits: Limits,
    pub experiment: Vec<ExperimentConfig>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Limits {
    #[serde(default = "default_max_vertices")]
    pub max_vertices: usize,
    #[serde(default = "default_max_states")]
    pub max_states: u64,
    #[serde(default = "default_true")]
    pub parallel: bool,
}

fn default_max_vertices() -> usize {
    2_000_000
}

fn default_max_states() -> u64 {
    2_000_000_000
}

fn default_true() -> bool {
    true
}

impl Default for Limits {
    fn default() -> Self {
        Self { max_vertices: default_max_vertices(), max_states: default_max_states(), parallel: true }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Enumerate,
    ClosenessSup,
    DlFamily,
    HalfT,
    QiTransfer,
    Growth,
    Finiteness,
    SubgraphCount,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Enumerate => "enumerate",
            ExperimentKind::ClosenessSup => "closeness-sup",
            ExperimentKind::DlFamily => "dl-family",
            ExperimentKind::HalfT => "half-t",
            ExperimentKind::QiTransfer => "qi-transfer",
            ExperimentKind::Growth => "growth",
            ExperimentKind::Finiteness => "finiteness",
            ExperimentKind::SubgraphCount => "subgraph-count",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Output files are prefixed with this name.
    pub name: String,
    pub kind: ExperimentKind,
    pub provider: ProviderSpec,
    pub radius: u32,
    /// Second provider for maps.
    #[serde(default)]
    pub target: Option<ProviderSpec>,
    #[serde(default)]
    pub target_radius: Option<u32>,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub expect: Expect,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ProviderSpec {
    /// `cayley`, `hex`, `tree` or `dl`.
    pub family: String,
    /// For `cayley`: `Z<d>`, `F<k>` or `lamplighter`.
    #[serde(default)]
    pub group: Option<String>,
    #[serde(default)]
    pub generators: Option<Generators>,
    /// For `tree`.
    #[serde(default)]
    pub degree: Option<usize>,
    /// For `dl`.
    #[serde(default)]
    pub k: Option<u8>,
    #[serde(default)]
    pub n: Option<u8>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum Generators {
    /// `standard`, `king` or `lamplighter-dl`.
    Preset(String),
    /// Words over the family primitives, in order.
    Words(Vec<String>),
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Params {
    pub n_max: Option<usize>,
    pub n: Option<usize>,
    pub k_min: Option<u32>,
    pub k_max: Option<u32>,
    /// `subdivision` (default) or `endpoint`.
    pub convention: Option<String>,
    /// Write the cutset stream.
    pub stream: Option<bool>,
    /// Randomized brute-force closeness cross-checks.
    pub oracle_samples: Option<usize>,
    /// Largest `|Y|` for the cross-checks.
    pub oracle_max_size: Option<usize>,
    pub relators: Option<Vec<String>>,
    /// Randomized two-vertex instances.
    pub instances: Option<usize>,
    /// Size of the randomly grown set around `x`.
    pub grow: Option<usize>,
    /// Distance of `y` from the origin.
    pub y_distance: Option<u32>,
    pub map: Option<String>,
    /// Map constant; certified on `pair_radius` pairs when absent.
    pub m: Option<u32>,
    pub pair_radius: Option<u32>,
    pub fiber_n: Option<Vec<usize>>,
    /// `H_k` sizes for the transfer and closure checks.
    pub transfer_k: Option<Vec<u32>>,
    pub closure_k: Option<Vec<u32>>,
    pub closure_n_max: Option<u32>,
    pub radii: Option<Vec<u32>>,
    pub subperiodic_depth: Option<u32>,
    pub subperiodic_samples: Option<usize>,
    pub degree: Option<usize>,
}

/// Expected values turning an experiment into a regression check.
#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    /// Counts for `n = 1, 2, ...`.
    pub counts: Option<Vec<u64>>,
    pub running_max: Option<u32>,
    pub m: Option<u32>,
    pub growth: Option<Vec<usize>>,
    /// `zero` or `growing`.
    pub fx: Option<String>,
    pub stable_count: Option<u64>,
    pub stabilized_from: Option<u32>,
    pub never_stabilizes: Option<bool>,
    pub linear_in_r: Option<bool>,
    pub core_ball_radius: Option<u32>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: ConfigFile = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.experiment.is_empty() {
            return Err(CliError::Config("at least one [[experiment]] is required".into()));
        }
        let mut names = std::collections::BTreeSet::new();
        for (i, e) in self.experiment.iter().enumerate() {
            let at = format!("experiment[{i}] ({})", e.name);
            if e.name.is_empty() || !e.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
                return Err(CliError::Config(format!("{at}.name: use letters, digits, '-' and '_'")));
            }
            if !names.insert(e.name.clone()) {
                return Err(CliError::Config(format!("{at}.name: duplicate experiment name")));
            }
            crate::provider::build(&e.provider).map_err(|m| CliError::Config(format!("{at}.provider: {m}")))?;
            if let Some(t) = &e.target {
                crate::provider::build(t).map_err(|m| CliError::Config(format!("{at}.target: {m}")))?;
            }
            if let Some(c) = &e.params.convention {
                c.parse::<cutset_core::cutset::Convention>()
                    .map_err(|_| CliError::Config(format!("{at}.params.convention: unknown value {c:?}")))?;
            }
            if let Some(fx) = &e.expect.fx {
                if fx != "zero" && fx != "growing" {
                    return Err(CliError::Config(format!("{at}.expect.fx: expected \"zero\" or \"growing\"")));
                }
            }
        }
        Ok(())
    }

    /// Caps after applying the environment overrides.
    pub fn effective_limits(&self) -> Result<Limits, CliError> {
        let mut l = self.limits;
        if let Ok(v) = std::env::var(ENV_MAX_VERTICES) {
            l.max_vertices = v
                .parse()
                .map_err(|_| CliError::Config(format!("{ENV_MAX_VERTICES}: not a number: {v:?}")))?;
        }
        if let Ok(v) = std::env::var(ENV_MAX_STATES) {
            l.max_states =
                v.parse().map_err(|_| CliError::Config(format!("{ENV_MAX_STATES}: not a number: {v:?}")))?;
        }
        Ok(l)
    }
}

impl ExperimentConfig {
    pub fn require<T: Clone>(&self, value: &Option<T>, field: &str) -> Result<T, CliError> {
        value
            .clone()
            .ok_or_else(|| CliError::Config(format!("experiment {}: params.{field} is required", self.name)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
        [[experiment]]
        name = "sq"
        kind = "closeness-sup"
        provider = { family = "cayley", group = "Z2" }
        radius = 6
        params = { n_max = 6 }
    "#;

    #[test]
    fn parses_minimal_config() {
        let cfg = ConfigFile::parse(MINIMAL).unwrap();
        assert_eq!(cfg.experiment[0].kind, ExperimentKind::ClosenessSup);
        assert_eq!(cfg.limits, Limits::default());
    }

    #[test]
    fn rejects_unknown_fields_and_families() {
        let bad = MINIMAL.replace("radius = 6", "radius = 6\nradios = 3");
        assert!(matches!(ConfigFile::parse(&bad), Err(CliError::Config(_))));
        let bad = MINIMAL.replace("cayley", "penrose");
        let err = ConfigFile::parse(&bad).unwrap_err();
        assert!(err.to_string().contains("experiment[0] (sq).provider"), "{err}");
        let bad = MINIMAL.replace("closeness-sup", "closeness");
        assert!(matches!(ConfigFile::parse(&bad), Err(CliError::Config(_))));
    }
}
