//! Run configuration: one JSON object with a `model` key and flat
//! model parameters.
//!
//! ```json
//! { "model": "octagon", "m1": 0.5, "m2": 0.25, "grid": 60 }
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use limitshape::models::ModelKind;
use limitshape::regions::{PolygonRegion, Side};
use limitshape::solver::{from_descending, InitialGuess};
use limitshape::ExtReal;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const DEFAULT_GRID: usize = 50;
pub const DEFAULT_ARC_SAMPLES: usize = 200;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum ModelConfig {
    Aztec,
    Octagon { m1: f64, m2: f64 },
    Domino { sides: Vec<Side> },
    FvHexagon { m: f64, r: f64 },
    FiveVertex { r: f64, sides: Vec<Side> },
    Fortress,
    Fourvertex { a: f64, b: f64, c: f64 },
}

/// Starting anchors, inline or read from an earlier `solved.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InitSource {
    File(PathBuf),
    Inline(InitAnchors),
}

/// Anchors in decreasing order, as written by `solve`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InitAnchors {
    pub anchors: Vec<ExtReal>,
    #[serde(default)]
    pub b: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub model: ModelConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arc_samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub init: Option<InitSource>,
    /// Directory that relative `init` paths resolve against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl RunConfig {
    pub fn new(model: ModelConfig) -> Self {
        RunConfig { model, grid: None, arc_samples: None, init: None, base_dir: PathBuf::new() }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let config: RunConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut config = Self::from_json(&text)?;
        config.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(config)
    }

    pub fn grid(&self) -> usize {
        self.grid.unwrap_or(DEFAULT_GRID)
    }

    pub fn arc_samples(&self) -> usize {
        self.arc_samples.unwrap_or(DEFAULT_ARC_SAMPLES)
    }

    /// Checks parameter domains that do not need a solve.
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        match &self.model {
            ModelConfig::FvHexagon { r, .. } | ModelConfig::FiveVertex { r, .. } if !(*r > 1.0) => {
                bad(format!("five-vertex weight must satisfy r > 1, got {r}"))
            }
            ModelConfig::FvHexagon { m, .. } if !(*m > 0.0) => bad(format!("hexagon needs m > 0, got {m}")),
            ModelConfig::Fourvertex { a, b, c } if !(*a > 0.0 && *b > 0.0 && *c > 0.0) => {
                bad(format!("hexagon sides must be positive, got ({a}, {b}, {c})"))
            }
            _ if self.grid == Some(0) => bad("grid must be positive".into()),
            _ if self.arc_samples.is_some_and(|n| n < 2) => bad("arc_samples must be at least 2".into()),
            _ => Ok(()),
        }
    }

    /// The polygon for models solved through the rational-map machinery.
    pub fn region(&self) -> Result<Option<PolygonRegion>, CliError> {
        Ok(Some(match &self.model {
            ModelConfig::Aztec => PolygonRegion::aztec(),
            ModelConfig::Octagon { m1, m2 } => PolygonRegion::octagon(*m1, *m2)?,
            ModelConfig::Domino { sides } => PolygonRegion::new(ModelKind::Domino, sides.clone())?,
            ModelConfig::FvHexagon { m, r } => PolygonRegion::fv_hexagon(*m, *r)?,
            ModelConfig::FiveVertex { r, sides } => PolygonRegion::new(ModelKind::FiveVertex { r: *r }, sides.clone())?,
            ModelConfig::Fortress | ModelConfig::Fourvertex { .. } => return Ok(None),
        }))
    }

    pub fn initial_guess(&self) -> Result<Option<InitialGuess>, CliError> {
        let init = match &self.init {
            None => return Ok(None),
            Some(InitSource::Inline(a)) => a.clone(),
            Some(InitSource::File(p)) => {
                let path = self.base_dir.join(p);
                let text = fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
                serde_json::from_str(&text)?
            }
        };
        Ok(Some(InitialGuess { anchors: from_descending(&init.anchors), b: init.b }))
    }

    /// `key=value` pairs for output headers.
    pub fn describe(&self) -> String {
        match &self.model {
            ModelConfig::Aztec => "aztec".into(),
            ModelConfig::Octagon { m1, m2 } => format!("octagon m1={m1} m2={m2}"),
            ModelConfig::Domino { sides } => format!("domino sides={}", side_list(sides)),
            ModelConfig::FvHexagon { m, r } => format!("fv_hexagon m={m} r={r}"),
            ModelConfig::FiveVertex { r, sides } => format!("five_vertex r={r} sides={}", side_list(sides)),
            ModelConfig::Fortress => "fortress tau=1".into(),
            ModelConfig::Fourvertex { a, b, c } => format!("fourvertex a={a} b={b} c={c}"),
        }
    }
}

fn side_list(sides: &[Side]) -> String {
    let parts: Vec<String> = sides.iter().map(|s| format!("{}:{}", s.label, s.length)).collect();
    parts.join(";")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_keys() {
        let c = RunConfig::from_json(r#"{"model":"octagon","m1":0.5,"m2":0.25,"grid":10}"#).unwrap();
        assert_eq!(c.model, ModelConfig::Octagon { m1: 0.5, m2: 0.25 });
        assert_eq!(c.grid(), 10);
        assert_eq!(c.arc_samples(), DEFAULT_ARC_SAMPLES);
    }

    #[test]
    fn parses_sides_and_inline_init() {
        let c = RunConfig::from_json(
            r#"{"model":"domino","sides":[{"label":1,"length":1},{"label":2,"length":1},
                {"label":3,"length":1},{"label":4,"length":1}],
                "init":{"anchors":[0,-1,"inf",1]}}"#,
        )
        .unwrap();
        assert!(c.region().unwrap().is_some());
        let init = c.initial_guess().unwrap().unwrap();
        assert_eq!(init.anchors[0], ExtReal::from(1.0));
        assert!(init.anchors[1].is_infinite());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(RunConfig::from_json(r#"{"model":"fv_hexagon","m":1,"r":0.5}"#).is_err());
        assert!(RunConfig::from_json(r#"{"model":"fourvertex","a":1,"b":0,"c":1}"#).is_err());
        assert!(RunConfig::from_json(r#"{"model":"aztec","grid":0}"#).is_err());
        assert!(RunConfig::from_json(r#"{"model":"pentagon"}"#).is_err());
    }

    #[test]
    fn unit_models() {
        assert_eq!(RunConfig::from_json(r#"{"model":"fortress"}"#).unwrap().model, ModelConfig::Fortress);
        assert_eq!(RunConfig::from_json(r#"{"model":"aztec"}"#).unwrap().describe(), "aztec");
    }
}
