//! On-disk rule format.
//!
//! JSON schema:
//!
//! ```text
//! { "n": int, "m": int, "weight": spec-string, "nodes": [decimal strings],
//!   "node_weight": "1/m", "closure_residual": real, "generator_table": optional }
//! ```
//!
//! Nodes are written with 17 significant digits, which round-trips every
//! `f64` exactly. The CSV export (`index,node`) is for plotting only.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{NodeSet, QuadratureRule};
use crate::weights::{GeneratorTable, WeightFamily, WeightSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleRecord {
    pub n: usize,
    pub m: usize,
    pub weight: String,
    pub nodes: Vec<String>,
    pub node_weight: String,
    pub closure_residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_table: Option<GeneratorTable>,
}

/// Shortest-safe decimal form: 17 significant digits.
pub fn format_node(x: f64) -> String {
    format!("{x:.16e}")
}

impl RuleRecord {
    pub fn from_rule(rule: &QuadratureRule, closure_residual: f64) -> Self {
        Self {
            n: rule.weight().n(),
            m: rule.m(),
            weight: rule.weight().label().to_string(),
            nodes: rule.nodes().iter().map(|&x| format_node(x)).collect(),
            node_weight: format!("1/{}", rule.m()),
            closure_residual,
            generator_table: rule.weight().generator_table(),
        }
    }

    pub fn parse_nodes(&self) -> Result<Vec<f64>> {
        self.nodes
            .iter()
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("node `{s}` is not a decimal number")))
            })
            .collect()
    }

    /// Rebuilds the weight, preferring an embedded generator table over the
    /// path in a `table:` spec.
    pub fn weight_spec(&self) -> Result<WeightSpec> {
        let family = WeightFamily::parse(&self.weight)?;
        match (&family, &self.generator_table) {
            (WeightFamily::Table(_), Some(table)) => family.build_with_table(self.n, table),
            _ => family.build(self.n),
        }
    }

    pub fn to_rule(&self) -> Result<QuadratureRule> {
        let nodes = self.parse_nodes()?;
        if nodes.len() != self.m {
            return Err(Error::Parse(format!(
                "rule declares m = {} but lists {} nodes",
                self.m,
                nodes.len()
            )));
        }
        let expected_weight = format!("1/{}", self.m);
        if self.node_weight.trim() != expected_weight {
            return Err(Error::Parse(format!(
                "node_weight `{}` does not match m = {}",
                self.node_weight, self.m
            )));
        }
        let ns = NodeSet::from_nodes(self.n, nodes)?;
        QuadratureRule::new(ns, self.weight_spec()?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json() + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }

    pub fn read_json(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

/// Writes `index,node` rows, indices starting at 1.
pub fn write_csv(rule: &QuadratureRule, path: &Path) -> Result<()> {
    let io_err = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
    let mut file = fs::File::create(path).map_err(io_err)?;
    writeln!(file, "index,node").map_err(io_err)?;
    for (i, &x) in rule.nodes().iter().enumerate() {
        writeln!(file, "{},{}", i + 1, format_node(x)).map_err(io_err)?;
    }
    Ok(())
}
