//! JSON configuration for rings, ideals and whole sessions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Field;
use crate::ring::GradedRing;
use crate::syzygy::IdealData;

/// `{"char": 0, "vars": ["x","y","z"], "F": "x^3+y^3+z^3"}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingConfig {
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub vars: Vec<String>,
    #[serde(rename = "F")]
    pub equation: String,
}

impl RingConfig {
    pub fn new(characteristic: u64, vars: &[&str], equation: &str) -> Self {
        RingConfig {
            characteristic,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            equation: equation.to_string(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::input(format!("ring config: {e}")))
    }

    /// The same equation read over another characteristic.
    pub fn with_characteristic(&self, characteristic: u64) -> Self {
        RingConfig {
            characteristic,
            ..self.clone()
        }
    }

    pub fn build(&self) -> Result<GradedRing> {
        let field = Field::from_characteristic(self.characteristic)?;
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        GradedRing::from_text(field, &vars, &self.equation)
    }
}

/// `{"gens": ["x^2","y^2","z^2"]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealConfig {
    pub gens: Vec<String>,
}

impl IdealConfig {
    pub fn new(gens: &[&str]) -> Self {
        IdealConfig {
            gens: gens.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::input(format!("ideal config: {e}")))
    }

    pub fn build(&self, ring: &GradedRing) -> Result<IdealData> {
        let gens: Vec<&str> = self.gens.iter().map(String::as_str).collect();
        IdealData::from_text(ring, &gens)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Table,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionOptions {
    pub n_max: Option<i64>,
    pub q_max: Option<u64>,
    pub seed: u64,
    pub format: OutputFormat,
}

/// Everything one invocation works on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Session {
    pub ring: RingConfig,
    pub ideal: Option<IdealConfig>,
    #[serde(default)]
    pub options: SessionOptions,
}

impl Session {
    pub fn ring(&self) -> Result<GradedRing> {
        self.ring.build()
    }

    pub fn ideal(&self, ring: &GradedRing) -> Result<IdealData> {
        self.ideal
            .as_ref()
            .ok_or_else(|| Error::input("this command needs an ideal"))?
            .build(ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_json() {
        let c = RingConfig::from_json(r#"{"char": 5, "vars": ["x","y","z"], "F": "x^3+y^3+z^3"}"#).unwrap();
        let r = c.build().unwrap();
        assert_eq!(r.characteristic(), 5);
        assert_eq!(r.delta(), 3);
        assert!(RingConfig::from_json(r#"{"char": 4, "vars": ["x"], "F": "x"}"#).unwrap().build().is_err());
        assert!(RingConfig::from_json(r#"{"vars": ["x"]}"#).is_err());
    }

    #[test]
    fn ideal_json() {
        let r = RingConfig::new(0, &["x", "y", "z"], "x^3+y^3+z^3").build().unwrap();
        let i = IdealConfig::from_json(r#"{"gens": ["x^2","y^2","z^2"]}"#).unwrap().build(&r).unwrap();
        assert_eq!(i.degrees(), &[2, 2, 2]);
        let bad = IdealConfig::new(&["x^2 + y"]).build(&r);
        assert!(bad.is_err());
    }
}
