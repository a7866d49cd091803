//! TOML scenario files.
//!
//! ```toml
//! [production]
//! A = 1.0
//! alpha = 0.5
//! sigma = 1.5
//!
//! [preferences]
//! beta = 1.0
//! gamma = 1.0
//!
//! [demography]
//! G = 1.2
//!
//! [scenario]
//! id = "fig1"
//! kind = "fundamental"
//! p = 3.0
//! e_o = 1.0
//! horizon = 400
//!
//! [sweep]
//! p = [1.5, 1.99, 2.5, 3.0]
//! ```

use std::path::Path;

use olg_land_core::{CesParams, CrraParams, Demography, PathKind, PricePathSpec, ScenarioConfig};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub production: Production,
    pub preferences: Preferences,
    pub demography: DemographySection,
    pub scenario: Scenario,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Production {
    #[serde(rename = "A")]
    pub a: f64,
    pub alpha: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Preferences {
    pub beta: f64,
    pub gamma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DemographySection {
    #[serde(rename = "G")]
    pub g: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default = "default_id")]
    pub id: String,
    pub kind: PathKind,
    pub p: f64,
    pub e_o: f64,
    #[serde(default = "default_horizon")]
    pub horizon: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t0: Option<usize>,
}

fn default_id() -> String {
    "custom".to_owned()
}

fn default_horizon() -> usize {
    olg_land_core::equilibrium::DEFAULT_HORIZON
}

/// Values to vary; the grid is the product of the listed axes.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<f64>>,
    #[serde(rename = "G", default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_o: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<f64>>,
}

/// Keys that may be swept, in grid order.
pub const SWEEP_KEYS: [&str; 8] = ["A", "alpha", "sigma", "beta", "gamma", "G", "e_o", "p"];

impl Sweep {
    fn axis(&self, key: &str) -> Option<&Vec<f64>> {
        match key {
            "A" => self.a.as_ref(),
            "alpha" => self.alpha.as_ref(),
            "sigma" => self.sigma.as_ref(),
            "beta" => self.beta.as_ref(),
            "gamma" => self.gamma.as_ref(),
            "G" => self.g.as_ref(),
            "e_o" => self.e_o.as_ref(),
            "p" => self.p.as_ref(),
            _ => None,
        }
    }
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::parse(&text).map_err(|source| CliError::Config {
            path: path.to_owned(),
            source: Box::new(source),
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config fields are plain TOML values")
    }

    pub fn preset(kind: PathKind) -> Self {
        let cfg = match kind {
            PathKind::Fundamental => ScenarioConfig::fig1(),
            PathKind::Bubbly => ScenarioConfig::fig2(),
        };
        let id = match kind {
            PathKind::Fundamental => "fig1",
            PathKind::Bubbly => "fig2",
        };
        Self::from_scenario(id, &cfg)
    }

    pub fn from_scenario(id: &str, cfg: &ScenarioConfig) -> Self {
        Self {
            production: Production {
                a: cfg.ces.a(),
                alpha: cfg.ces.alpha(),
                sigma: cfg.ces.sigma(),
            },
            preferences: Preferences {
                beta: cfg.pref.beta(),
                gamma: cfg.pref.gamma(),
            },
            demography: DemographySection { g: cfg.demo.growth() },
            scenario: Scenario {
                id: id.to_owned(),
                kind: cfg.kind(),
                p: cfg.p(),
                e_o: cfg.e_o,
                horizon: cfg.horizon,
                t0: cfg.t0_override,
            },
            sweep: None,
        }
    }

    /// Validated model config.
    pub fn scenario(&self) -> olg_land_core::Result<ScenarioConfig> {
        let ces = CesParams::new(self.production.a, self.production.alpha, self.production.sigma)?;
        let pref = CrraParams::new(self.preferences.beta, self.preferences.gamma)?;
        let demo = Demography::new(self.demography.g)?;
        let price = PricePathSpec::new(self.scenario.kind, self.scenario.p)?;
        let mut cfg = ScenarioConfig::new(ces, pref, demo, self.scenario.e_o, price, self.scenario.horizon)?;
        cfg.t0_override = self.scenario.t0;
        Ok(cfg)
    }

    /// Sweep axes actually listed, in [`SWEEP_KEYS`] order.
    pub fn sweep_axes(&self) -> Vec<(&'static str, Vec<f64>)> {
        let Some(sweep) = &self.sweep else {
            return Vec::new();
        };
        SWEEP_KEYS
            .iter()
            .filter_map(|&k| sweep.axis(k).map(|v| (k, v.clone())))
            .collect()
    }

    /// One config per grid point, last axis varying fastest. No axes, or
    /// an empty axis, gives no points.
    pub fn sweep_points(&self) -> Vec<ConfigFile> {
        let axes = self.sweep_axes();
        if axes.is_empty() || axes.iter().any(|(_, v)| v.is_empty()) {
            return Vec::new();
        }
        let mut points = vec![self.without_sweep()];
        for (key, values) in &axes {
            points = points
                .iter()
                .flat_map(|base| values.iter().map(move |&v| base.with_value(key, v)))
                .collect();
        }
        points
    }

    fn without_sweep(&self) -> Self {
        Self {
            sweep: None,
            ..self.clone()
        }
    }

    /// Value of a sweepable key.
    pub fn value(&self, key: &str) -> f64 {
        match key {
            "A" => self.production.a,
            "alpha" => self.production.alpha,
            "sigma" => self.production.sigma,
            "beta" => self.preferences.beta,
            "gamma" => self.preferences.gamma,
            "G" => self.demography.g,
            "e_o" => self.scenario.e_o,
            "p" => self.scenario.p,
            _ => f64::NAN,
        }
    }

    fn with_value(&self, key: &str, v: f64) -> Self {
        let mut c = self.clone();
        match key {
            "A" => c.production.a = v,
            "alpha" => c.production.alpha = v,
            "sigma" => c.production.sigma = v,
            "beta" => c.preferences.beta = v,
            "gamma" => c.preferences.gamma = v,
            "G" => c.demography.g = v,
            "e_o" => c.scenario.e_o = v,
            "p" => c.scenario.p = v,
            _ => {}
        }
        c
    }
}
