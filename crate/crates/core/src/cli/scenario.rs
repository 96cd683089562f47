use serde::Serialize;

use crate::model::{ModelConfig, NonlinearityKind};

pub const DEFAULT_T_MAX: f64 = 50.0;
pub const DEFAULT_STEPS: usize = 2001;
pub const DEFAULT_ALPHA2: f64 = 10.0;

/// One time-series run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Scenario {
    pub name: String,
    pub config: ModelConfig,
    pub t_max: f64,
    pub steps: usize,
    pub verify: bool,
}

impl Scenario {
    pub fn new(name: impl Into<String>, config: ModelConfig) -> Self {
        Self { name: name.into(), config, t_max: DEFAULT_T_MAX, steps: DEFAULT_STEPS, verify: false }
    }

    pub fn validate(&self) -> Result<(), String> {
        if !valid_name(&self.name) {
            return Err(format!("invalid scenario name {:?}: use letters, digits, '-', '_' or '.'", self.name));
        }
        if self.steps < 2 {
            return Err(format!("{}: steps must be at least 2, got {}", self.name, self.steps));
        }
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(format!("{}: tmax must be positive, got {}", self.name, self.t_max));
        }
        self.config.validate().map_err(|e| format!("{}: {e}", self.name))
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name.starts_with('.')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))
}

/// Panel letter to `(χ, Δ₁, Δ₃)`.
const PANELS: [(char, f64, f64, f64); 4] =
    [('a', 0.0, 0.0, 0.0), ('b', 0.4, 0.0, 0.0), ('c', 0.0, 7.0, 15.0), ('d', 0.4, 7.0, 15.0)];

/// Every figure preset name in a fixed order.
pub fn preset_names() -> Vec<String> {
    let mut names = Vec::new();
    for fig in 2..=7 {
        for (panel, ..) in PANELS {
            names.push(format!("fig{fig}{panel}"));
            names.push(format!("fig{fig}{panel}-nonlinear"));
        }
    }
    names.push("fig8a".into());
    names.push("fig8b".into());
    names
}

/// Resolves a figure panel name such as `fig3d` or `fig2b-nonlinear`.
///
/// Figures 2, 4 and 6 are single-photon, 3, 5 and 7 two-photon; figure 8 is
/// the harmonious resonant case with `k = 1` (a) or `k = 2` (b).
pub fn preset(name: &str) -> Option<Scenario> {
    let rest = name.strip_prefix("fig")?;
    let (body, nonlinear) = match rest.strip_suffix("-nonlinear") {
        Some(b) => (b, true),
        None => (rest, false),
    };
    let mut chars = body.chars();
    let fig = chars.next()?.to_digit(10)?;
    let panel = chars.next()?;
    if chars.next().is_some() {
        return None;
    }
    let base = ModelConfig::default().with_mean_photons(DEFAULT_ALPHA2);
    let config = match fig {
        2..=7 => {
            let &(_, chi, delta1, delta3) = PANELS.iter().find(|p| p.0 == panel)?;
            ModelConfig {
                chi,
                delta1,
                delta3,
                k: if fig % 2 == 0 { 1 } else { 2 },
                nonlinearity: if nonlinear { NonlinearityKind::Harmonious } else { NonlinearityKind::Constant },
                ..base
            }
        }
        8 if !nonlinear => ModelConfig {
            k: match panel {
                'a' => 1,
                'b' => 2,
                _ => return None,
            },
            nonlinearity: NonlinearityKind::Harmonious,
            ..base
        },
        _ => return None,
    };
    Some(Scenario::new(name, config))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn panel_tuples() {
        let s = preset("fig2b").unwrap();
        assert_eq!((s.config.chi, s.config.delta1, s.config.delta3, s.config.k), (0.4, 0.0, 0.0, 1));
        assert_eq!(s.config.nonlinearity, NonlinearityKind::Constant);
        let s = preset("fig2d-nonlinear").unwrap();
        assert_eq!((s.config.chi, s.config.delta1, s.config.delta3, s.config.k), (0.4, 7.0, 15.0, 1));
        assert_eq!(s.config.nonlinearity, NonlinearityKind::Harmonious);
        let s = preset("fig5c").unwrap();
        assert_eq!((s.config.chi, s.config.delta1, s.config.delta3, s.config.k), (0.0, 7.0, 15.0, 2));
        let s = preset("fig8b").unwrap();
        assert_eq!((s.config.chi, s.config.k), (0.0, 2));
        assert_eq!(s.config.nonlinearity, NonlinearityKind::Harmonious);
    }

    #[test]
    fn defaults() {
        let s = preset("fig6a").unwrap();
        assert_eq!((s.t_max, s.steps, s.verify), (50.0, 2001, false));
        assert!((s.config.mean_photons() - 10.0).abs() < 1e-12);
        assert_eq!(s.config.lambda, 1.0);
    }

    #[test]
    fn every_listed_name_resolves() {
        let names = preset_names();
        assert_eq!(names.len(), 50);
        for n in &names {
            let s = preset(n).unwrap();
            assert_eq!(&s.name, n);
            s.validate().unwrap();
        }
    }

    #[test]
    fn rejects_unknown_names() {
        for bad in ["", "fig", "fig1a", "fig2e", "fig9a", "fig2aa", "fig8c", "fig8a-nonlinear", "fig2a-linear", "fíg2a"] {
            assert!(preset(bad).is_none(), "{bad}");
        }
    }

    #[test]
    fn scenario_validation() {
        let mut s = preset("fig2a").unwrap();
        s.steps = 1;
        assert!(s.validate().is_err());
        let mut s = preset("fig2a").unwrap();
        s.t_max = 0.0;
        assert!(s.validate().is_err());
        let mut s = preset("fig2a").unwrap();
        s.name = "../x".into();
        assert!(s.validate().is_err());
    }
}
