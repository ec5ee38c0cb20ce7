//! Job configuration (TOML). Field elements are written in power-basis
//! coordinates `[c_0, c_1, …]` meaning `Σ c_i θ^i`; each coordinate is an
//! integer or a rational string such as `"1/2"`.

use serde::{Deserialize, Serialize};
use shintani_core::{Error, Rat};
use std::path::{Path, PathBuf};
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

impl Num {
    pub fn to_rat(&self) -> Result<Rat, Error> {
        match self {
            Num::Int(n) => Ok(Rat::from_integer((*n).into())),
            Num::Text(s) => Rat::from_str(s.trim()).map_err(|_| Error::InvalidInput(format!("not a rational number: {s}"))),
        }
    }
}

pub type Coords = Vec<Num>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldConfig {
    /// Coefficients of the monic minimal polynomial, constant term first.
    pub min_poly: Vec<i64>,
    /// Integral basis, one row per basis element.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Coords>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<Vec<Coords>>,
    /// Whether `units` generate `𝒪^×/{±1}` (otherwise they are a basis of `Δ`).
    #[serde(default = "yes")]
    pub units_fundamental: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cones_file: Option<PathBuf>,
}

fn yes() -> bool {
    true
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig { min_poly: vec![0, 1], basis: None, units: None, units_fundamental: true, cones_file: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModulusConfig {
    pub generators: Vec<Coords>,
}

impl Default for ModulusConfig {
    fn default() -> Self {
        ModulusConfig { generators: vec![vec![Num::Int(1)]] }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Selection {
    Keyword(String),
    Indices(Vec<usize>),
}

impl Default for Selection {
    fn default() -> Self {
        Selection::Keyword("all".into())
    }
}

impl Selection {
    pub fn pick(&self, n: usize) -> Result<Vec<usize>, Error> {
        match self {
            Selection::Keyword(k) if k == "all" => Ok((0..n).collect()),
            Selection::Keyword(k) => Err(Error::InvalidInput(format!("unknown selection {k:?}"))),
            Selection::Indices(v) => {
                if let Some(i) = v.iter().find(|&&i| i >= n) {
                    return Err(Error::InvalidInput(format!("index {i} out of range (have {n})")));
                }
                Ok(v.clone())
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    /// Nonpositive points `s = −k` (for `funeq`: `1−k`).
    #[serde(default)]
    pub k: Vec<u32>,
    /// Real points `s > 1`.
    #[serde(default)]
    pub s: Vec<f64>,
    /// Orders `n` for `ler-vector`.
    #[serde(default)]
    pub n: Vec<u32>,
    #[serde(default)]
    pub characters: Selection,
    #[serde(default)]
    pub points: Selection,
    /// Prime ideal `𝔭` for `imprimitive`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<Vec<Coords>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_max: Option<usize>,
    /// `N` for the logarithm-sheaf table.
    #[serde(default)]
    pub log_n: Vec<usize>,
    #[serde(default)]
    pub assume_plectic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prec: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime_bound: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub field: FieldConfig,
    #[serde(default)]
    pub modulus: ModulusConfig,
    #[serde(default)]
    pub task: TaskConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConesFile {
    pub cones: Vec<Vec<Coords>>,
}

impl JobConfig {
    pub fn parse(text: &str) -> Result<Self, Error> {
        toml::from_str(text).map_err(|e| Error::InvalidInput(format!("config: {}", e.message())))
    }

    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        let mut cfg = Self::parse(&text)?;
        if let Some(c) = &cfg.field.cones_file {
            if c.is_relative() {
                if let Some(dir) = path.parent() {
                    cfg.field.cones_file = Some(dir.join(c));
                }
            }
        }
        Ok(cfg)
    }
}

impl ConesFile {
    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::InvalidInput(format!("cones file: {}", e.message())))
    }
}

/// `"-1,-1,1"` → `[-1, -1, 1]`.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>, Error> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::InvalidInput(format!("not an integer: {t}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_config() {
        let cfg = JobConfig::parse(
            r#"
            [field]
            min_poly = [-1, -1, 1]
            units = [[1, 1]]
            [modulus]
            generators = [[3]]
            [task]
            k = [1, 2]
            characters = [0, 2]
            prime = [["1/2", 1]]
            "#,
        )
        .unwrap();
        assert_eq!(cfg.field.min_poly, vec![-1, -1, 1]);
        assert!(cfg.field.units_fundamental);
        assert_eq!(cfg.task.characters.pick(3).unwrap(), vec![0, 2]);
        assert_eq!(cfg.task.points.pick(2).unwrap(), vec![0, 1]);
        assert_eq!(cfg.task.prime.as_ref().unwrap()[0][0].to_rat().unwrap(), Rat::new(1.into(), 2.into()));
    }

    #[test]
    fn rejects_unknown_keys() {
        let e = JobConfig::parse("[field]\nmin_poly = [0, 1]\ncolour = 3\n").unwrap_err();
        assert!(e.to_string().contains("colour"));
        assert!(JobConfig::parse("[field]\nmin_poly = [0, 1]\n[task]\nspeed = 1\n").is_err());
    }

    #[test]
    fn selection_out_of_range() {
        assert!(Selection::Indices(vec![4]).pick(4).is_err());
        assert!(Selection::Keyword("some".into()).pick(4).is_err());
    }

    #[test]
    fn int_lists() {
        assert_eq!(parse_int_list("-2, 0,1").unwrap(), vec![-2, 0, 1]);
        assert!(parse_int_list("1,x").is_err());
    }
}
