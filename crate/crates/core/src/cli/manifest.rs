use std::collections::HashSet;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use toml::Spanned;

use super::scenario::{preset, preset_names, Scenario};
use super::CliError;
use crate::model::{ModelConfig, NonlinearityKind};

pub const DEFAULT_ORACLE_TOL: f64 = 1e-6;
pub const DEFAULT_OUT_DIR: &str = "out";

/// Coupling deformation selectable from flags and config files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Deform {
    Constant,
    Harmonious,
}

impl From<Deform> for NonlinearityKind {
    fn from(d: Deform) -> Self {
        match d {
            Deform::Constant => NonlinearityKind::Constant,
            Deform::Harmonious => NonlinearityKind::Harmonious,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// Maximum per-column deviation accepted by `--verify`.
    pub oracle: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { oracle: DEFAULT_ORACLE_TOL }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunManifest {
    pub scenarios: Vec<Scenario>,
    pub out_dir: PathBuf,
    pub tolerances: Tolerances,
}

impl RunManifest {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.scenarios.is_empty() {
            return Err(CliError::Usage("manifest has no scenarios".into()));
        }
        let mut seen = HashSet::new();
        for s in &self.scenarios {
            s.validate().map_err(CliError::Usage)?;
            if !seen.insert(s.name.as_str()) {
                return Err(CliError::Usage(format!("duplicate scenario name {:?}", s.name)));
            }
        }
        let tol = self.tolerances.oracle;
        if !(tol.is_finite() && tol > 0.0) {
            return Err(CliError::Usage(format!("oracle tolerance must be positive, got {tol}")));
        }
        Ok(())
    }
}

/// Parameter overrides shared by command-line flags and config entries.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub lambda: Option<f64>,
    pub alpha2: Option<f64>,
    pub k: Option<u32>,
    pub chi: Option<f64>,
    pub delta1: Option<f64>,
    pub delta3: Option<f64>,
    pub deform: Option<Deform>,
    pub tmax: Option<f64>,
    pub steps: Option<usize>,
    pub verify: Option<bool>,
}

impl Overrides {
    pub fn apply(&self, s: &mut Scenario) -> Result<(), CliError> {
        if let Some(a2) = self.alpha2 {
            if !(a2.is_finite() && a2 >= 0.0) {
                return Err(CliError::Usage(format!("alpha2 must be non-negative, got {a2}")));
            }
            s.config = s.config.clone().with_mean_photons(a2);
        }
        let c = &mut s.config;
        c.lambda = self.lambda.unwrap_or(c.lambda);
        c.k = self.k.unwrap_or(c.k);
        c.chi = self.chi.unwrap_or(c.chi);
        c.delta1 = self.delta1.unwrap_or(c.delta1);
        c.delta3 = self.delta3.unwrap_or(c.delta3);
        if let Some(d) = self.deform {
            c.nonlinearity = d.into();
        }
        s.t_max = self.tmax.unwrap_or(s.t_max);
        s.steps = self.steps.unwrap_or(s.steps);
        s.verify = self.verify.unwrap_or(s.verify);
        Ok(())
    }
}

/// Expands a preset argument; `all` selects every figure panel.
pub fn presets_for(name: &str) -> Result<Vec<Scenario>, CliError> {
    if name == "all" {
        return Ok(preset_names().iter().filter_map(|n| preset(n)).collect());
    }
    preset(name)
        .map(|s| vec![s])
        .ok_or_else(|| CliError::Usage(format!("unknown preset {name:?} (try --list-presets)")))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ManifestFile {
    out: Option<PathBuf>,
    tolerances: Option<ToleranceFile>,
    #[serde(default)]
    scenario: Vec<Spanned<ScenarioEntry>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ToleranceFile {
    oracle: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioEntry {
    name: Option<String>,
    preset: Option<String>,
    lambda: Option<f64>,
    alpha2: Option<f64>,
    k: Option<u32>,
    chi: Option<f64>,
    delta1: Option<f64>,
    delta3: Option<f64>,
    deform: Option<Deform>,
    tmax: Option<f64>,
    steps: Option<usize>,
    verify: Option<bool>,
}

impl ScenarioEntry {
    fn resolve(self) -> Result<Scenario, String> {
        let mut s = match (&self.preset, &self.name) {
            (Some(p), _) => preset(p).ok_or_else(|| format!("unknown preset {p:?}"))?,
            (None, Some(n)) => Scenario::new(n.clone(), ModelConfig::default()),
            (None, None) => return Err("scenario needs a name or a preset".into()),
        };
        if let Some(n) = self.name {
            s.name = n;
        }
        let o = Overrides {
            lambda: self.lambda,
            alpha2: self.alpha2,
            k: self.k,
            chi: self.chi,
            delta1: self.delta1,
            delta3: self.delta3,
            deform: self.deform,
            tmax: self.tmax,
            steps: self.steps,
            verify: self.verify,
        };
        o.apply(&mut s).map_err(|e| e.to_string())?;
        s.validate()?;
        Ok(s)
    }
}

fn line_of(text: &str, offset: usize) -> usize {
    text.as_bytes()[..offset.min(text.len())].iter().filter(|&&b| b == b'\n').count() + 1
}

/// Parses a TOML run manifest. Unknown keys are rejected.
///
/// ```toml
/// out = "results"
/// [tolerances]
/// oracle = 1e-6
/// [[scenario]]
/// preset = "fig3d"
/// verify = true
/// [[scenario]]
/// name = "weak-kerr"
/// chi = 0.05
/// deform = "harmonious"
/// ```
pub fn parse_manifest(text: &str) -> Result<RunManifest, CliError> {
    let file: ManifestFile = toml::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
    let mut scenarios = Vec::with_capacity(file.scenario.len());
    for entry in file.scenario {
        let line = line_of(text, entry.span().start);
        let s = entry
            .into_inner()
            .resolve()
            .map_err(|e| CliError::Usage(format!("config line {line}: {e}")))?;
        scenarios.push(s);
    }
    let tolerances = Tolerances {
        oracle: file.tolerances.and_then(|t| t.oracle).unwrap_or(DEFAULT_ORACLE_TOL),
    };
    let manifest = RunManifest {
        scenarios,
        out_dir: file.out.unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR)),
        tolerances,
    };
    manifest.validate()?;
    Ok(manifest)
}
