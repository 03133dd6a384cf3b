//! Run configuration: TOML-first with JSON accepted, unknown keys rejected,
//! rationals as `"p/q"` strings throughout.

use crate::gamma::{Convention, GammaData, GammaError};
use crate::rat::{parse_rat, ParseRatError};
use crate::rootdata::{
    build_root_datum, RootDatum, RootDatumError, RootDatumSpec, TorusPoint, WeylGroup,
    DEFAULT_GROUP_CAP,
};
use serde::Deserialize;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed TOML config: {0}")]
    Toml(String),
    #[error("malformed JSON config: {0}")]
    Json(String),
    #[error("malformed rational: {0}")]
    Rat(#[from] ParseRatError),
    #[error(transparent)]
    RootDatum(#[from] RootDatumError),
    #[error(transparent)]
    Gamma(#[from] GammaError),
    #[error("{0}")]
    Missing(String),
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default = "default_n_max")]
    pub n_max: u32,
    #[serde(default = "default_window")]
    pub window: i64,
    #[serde(default)]
    pub convention: Convention,
    #[serde(default = "default_cap")]
    pub cap: usize,
}

fn default_n_max() -> u32 {
    4
}
fn default_window() -> i64 {
    crate::derham::DEFAULT_WINDOW
}
fn default_cap() -> usize {
    DEFAULT_GROUP_CAP
}

impl Default for Options {
    fn default() -> Self {
        Options {
            n_max: default_n_max(),
            window: default_window(),
            convention: Convention::default(),
            cap: default_cap(),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub root_datum: RootDatumSpec,
    #[serde(default)]
    pub lambdas: Vec<Vec<i64>>,
    #[serde(default = "default_c")]
    pub c: String,
    #[serde(default)]
    pub sigma: Option<Vec<i64>>,
    #[serde(default)]
    pub xi: Vec<String>,
    #[serde(default)]
    pub checks: Vec<String>,
    #[serde(default)]
    pub options: Options,
}

fn default_c() -> String {
    "1".to_string()
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Toml(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Json(e.to_string()))
    }

    /// Loads a config by extension (`.json` as JSON, anything else TOML
    /// first, falling back to JSON).
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let is_json = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("json"));
        if is_json {
            Self::from_json(&text)
        } else {
            match Self::from_toml(&text) {
                Ok(cfg) => Ok(cfg),
                Err(toml_err) => Self::from_json(&text).map_err(|_| toml_err),
            }
        }
    }
}

/// Inputs resolved from a [`RunConfig`]: enumerated group, optional gamma
/// datum, optional torus point.
#[derive(Debug)]
pub struct Resolved {
    pub rd: RootDatum,
    pub weyl: WeylGroup,
    pub xi: Option<TorusPoint>,
    pub gamma: Option<GammaData>,
    pub options: Options,
}

impl RunConfig {
    pub fn resolve(&self) -> Result<Resolved, ConfigError> {
        let rd = build_root_datum(&self.root_datum)?;
        let weyl = WeylGroup::enumerate(&rd, self.options.cap)?;
        let xi = if self.xi.is_empty() {
            None
        } else {
            if self.xi.len() != rd.rank {
                return Err(ConfigError::RankMismatch(format!(
                    "xi has {} coordinates, root datum has rank {}",
                    self.xi.len(),
                    rd.rank
                )));
            }
            let coords = self
                .xi
                .iter()
                .map(|s| parse_rat(s))
                .collect::<Result<Vec<_>, _>>()?;
            Some(TorusPoint::new(coords))
        };
        let gamma = if self.lambdas.is_empty() {
            None
        } else {
            if self.lambdas.iter().any(|l| l.len() != rd.rank) {
                return Err(ConfigError::RankMismatch(
                    "every lambda must have one entry per lattice coordinate".into(),
                ));
            }
            let sigma = self.sigma.clone().unwrap_or_else(|| rd.sigma_default());
            if sigma.len() != rd.rank {
                return Err(ConfigError::RankMismatch(
                    "sigma must have one entry per lattice coordinate".into(),
                ));
            }
            let c = parse_rat(&self.c)?;
            Some(GammaData::new(
                rd.clone(),
                weyl.clone(),
                self.lambdas.clone(),
                c,
                sigma,
            )?)
        };
        Ok(Resolved {
            rd,
            weyl,
            xi,
            gamma,
            options: self.options.clone(),
        })
    }

    pub fn require_xi(resolved: &Resolved) -> Result<&TorusPoint, ConfigError> {
        resolved
            .xi
            .as_ref()
            .ok_or_else(|| ConfigError::Missing("config needs a torus point `xi`".into()))
    }

    pub fn require_gamma(resolved: &Resolved) -> Result<&GammaData, ConfigError> {
        resolved
            .gamma
            .as_ref()
            .ok_or_else(|| ConfigError::Missing("config needs a cocharacter family `lambdas`".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOML_EXAMPLE: &str = r#"
        lambdas = [[1, 0], [0, 1]]
        c = "1"
        xi = ["1/2", "1/2"]

        [root_datum]
        preset = "GL"
        rank = 2

        [options]
        n_max = 3
        convention = "unsigned"
    "#;

    #[test]
    fn toml_round_trip() {
        let cfg = RunConfig::from_toml(TOML_EXAMPLE).unwrap();
        assert_eq!(cfg.options.n_max, 3);
        assert_eq!(cfg.options.window, 24);
        let resolved = cfg.resolve().unwrap();
        assert_eq!(resolved.rd.rank, 2);
        assert_eq!(resolved.weyl.order(), 2);
        assert!(resolved.gamma.is_some());
        assert!(resolved.xi.is_some());
    }

    #[test]
    fn json_accepted() {
        let cfg = RunConfig::from_json(
            r#"{
                "root_datum": { "preset": "GL", "rank": 2 },
                "lambdas": [[1, 0], [0, 1]],
                "xi": ["0", "0"]
            }"#,
        )
        .unwrap();
        assert_eq!(cfg.c, "1");
        cfg.resolve().unwrap();
    }

    #[test]
    fn explicit_generator_config() {
        let cfg = RunConfig::from_json(
            r#"{
                "root_datum": { "preset": "explicit", "generators": [[[0,1],[1,0]]] }
            }"#,
        )
        .unwrap();
        let resolved = cfg.resolve().unwrap();
        assert_eq!(resolved.weyl.order(), 2);
    }

    #[test]
    fn unknown_keys_rejected() {
        let bad = r#"
            [root_datum]
            preset = "GL"
            rank = 2
            frobnicate = true
        "#;
        assert!(matches!(
            RunConfig::from_toml(bad),
            Err(ConfigError::Toml(_))
        ));
    }

    #[test]
    fn malformed_rational_rejected() {
        let cfg = RunConfig::from_toml(
            r#"
            lambdas = [[1,0],[0,1]]
            c = "1/0"
            [root_datum]
            preset = "GL"
            rank = 2
        "#,
        )
        .unwrap();
        match cfg.resolve() {
            Err(ConfigError::Rat(_)) => {}
            other => panic!("expected rational error, got {other:?}"),
        }
    }

    #[test]
    fn zero_c_rejected() {
        let cfg = RunConfig::from_toml(
            r#"
            lambdas = [[1,0],[0,1]]
            c = "0"
            [root_datum]
            preset = "GL"
            rank = 2
        "#,
        )
        .unwrap();
        match cfg.resolve() {
            Err(ConfigError::Gamma(GammaError::ZeroC)) => {}
            other => panic!("expected zero-c error, got {other:?}"),
        }
    }
}
