//! JSON distribution files.
//!
//! ```json
//! {
//!   "family": "HK",
//!   "variables": [{ "name": "Q", "cardinality": 1 }, ...],
//!   "factors": [{ "child": ["U1"], "parents": ["Q"], "rows": [["1/2", "1/2"]] }, ...],
//!   "encoders": [{ "child": "X1", "parents": ["Q", "U1", "W1"], "map": [0, 1, 2, 3] }],
//!   "channel": { "child": ["Y1", "Y2"], "parents": ["X1", "X2"], "rows": [...] },
//!   "common": { "K1": ["1/2", "1/2"], "K2": ["1"] }
//! }
//! ```
//!
//! Encoders take either a `map` (output index per parent row) or 0/1 `rows`.
//! `common` is optional and declares independent common parts used to lift an
//! independent-message distribution.

use std::fmt;
use std::path::Path;

use icregion::probspace::{build_joint, CondTable, FactorSpec, Family, JointDist, VariableDecl};
use icregion::rational::{format_rational, parse_rational, Rational};
use serde::{Deserialize, Serialize};

#[derive(Debug)]
pub enum DistError {
    Io(std::io::Error),
    Syntax { line: usize, column: usize, message: String },
    Semantic(String),
}

impl fmt::Display for DistError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistError::Io(e) => write!(f, "cannot read distribution file: {e}"),
            DistError::Syntax { line, column, message } => write!(f, "syntax error at line {line}, column {column}: {message}"),
            DistError::Semantic(m) => write!(f, "invalid distribution: {m}"),
        }
    }
}

impl std::error::Error for DistError {}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VarJson {
    name: String,
    cardinality: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableJson {
    child: Vec<String>,
    #[serde(default)]
    parents: Vec<String>,
    rows: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum EncoderJson {
    Map { child: String, parents: Vec<String>, map: Vec<usize> },
    Table(TableJson),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CommonJson {
    #[serde(rename = "K1")]
    k1: Vec<String>,
    #[serde(rename = "K2")]
    k2: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DistJson {
    family: String,
    variables: Vec<VarJson>,
    factors: Vec<TableJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    encoders: Vec<EncoderJson>,
    channel: TableJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    common: Option<CommonJson>,
}

/// A parsed distribution file.
#[derive(Clone, Debug, PartialEq)]
pub struct DistFile {
    pub spec: FactorSpec,
    /// Pmfs of `K1`, `K2` when the file declares common parts.
    pub common: Option<[Vec<Rational>; 2]>,
}

impl DistFile {
    pub fn joint(&self) -> Result<JointDist, DistError> {
        build_joint(&self.spec).map_err(semantic)
    }
}

fn semantic(e: impl fmt::Display) -> DistError {
    DistError::Semantic(e.to_string())
}

fn rationals(xs: &[String]) -> Result<Vec<Rational>, DistError> {
    xs.iter().map(|s| parse_rational(s).map_err(semantic)).collect()
}

fn table(t: &TableJson) -> Result<CondTable, DistError> {
    let child: Vec<&str> = t.child.iter().map(String::as_str).collect();
    let parents: Vec<&str> = t.parents.iter().map(String::as_str).collect();
    let rows = t.rows.iter().map(|r| rationals(r)).collect::<Result<_, _>>()?;
    Ok(CondTable::new(&child, &parents, rows))
}

fn card(vars: &[VarJson], name: &str) -> Result<usize, DistError> {
    vars.iter()
        .find(|v| v.name == name)
        .map(|v| v.cardinality)
        .ok_or_else(|| DistError::Semantic(format!("unknown variable `{name}`")))
}

pub fn parse_str(text: &str) -> Result<DistFile, DistError> {
    let raw: DistJson = serde_json::from_str(text)
        .map_err(|e| DistError::Syntax { line: e.line(), column: e.column(), message: e.to_string() })?;
    let family = Family::parse(&raw.family).ok_or_else(|| DistError::Semantic(format!("unknown family `{}`", raw.family)))?;
    let variables = raw.variables.iter().map(|v| VariableDecl::new(&v.name, v.cardinality)).collect();
    let factors = raw.factors.iter().map(table).collect::<Result<_, _>>()?;
    let encoders = raw
        .encoders
        .iter()
        .map(|e| match e {
            EncoderJson::Map { child, parents, map } => {
                let parents: Vec<&str> = parents.iter().map(String::as_str).collect();
                Ok(CondTable::deterministic(child, card(&raw.variables, child)?, &parents, map))
            }
            EncoderJson::Table(t) => table(t),
        })
        .collect::<Result<_, _>>()?;
    let common = match &raw.common {
        Some(c) => Some([rationals(&c.k1)?, rationals(&c.k2)?]),
        None => None,
    };
    let spec = FactorSpec { family, variables, factors, encoders, channel: table(&raw.channel)? };
    spec.validate().map_err(semantic)?;
    build_joint(&spec).map_err(semantic)?;
    Ok(DistFile { spec, common })
}

pub fn parse_dist(path: &Path) -> Result<DistFile, DistError> {
    let text = std::fs::read_to_string(path).map_err(DistError::Io)?;
    parse_str(&text)
}

fn table_json(t: &CondTable) -> TableJson {
    TableJson {
        child: t.child.clone(),
        parents: t.parents.clone(),
        rows: t.rows.iter().map(|r| r.iter().map(format_rational).collect()).collect(),
    }
}

/// Serializes back to JSON; every rational is written exactly.
pub fn to_json(d: &DistFile) -> String {
    let s = &d.spec;
    let raw = DistJson {
        family: s.family.name().to_string(),
        variables: s.variables.iter().map(|v| VarJson { name: v.name.clone(), cardinality: v.cardinality }).collect(),
        factors: s.factors.iter().map(table_json).collect(),
        encoders: s.encoders.iter().map(|t| EncoderJson::Table(table_json(t))).collect(),
        channel: table_json(&s.channel),
        common: d.common.as_ref().map(|[a, b]| CommonJson {
            k1: a.iter().map(format_rational).collect(),
            k2: b.iter().map(format_rational).collect(),
        }),
    };
    let mut out = serde_json::to_string_pretty(&raw).expect("plain data serializes");
    out.push('\n');
    out
}
