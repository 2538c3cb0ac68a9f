//! Tabulated angle generators with monotone piecewise-cubic interpolation.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Knots `(theta_i, w_i)` interpolated by a Fritsch–Carlson monotone cubic.
///
/// Each piece is monotone between its end values, so a table of
/// nonnegative samples interpolates to a nonnegative function.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneCubic {
    theta: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

/// Serialized form of a generator table, embedded in rule files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorTable {
    pub theta: Vec<f64>,
    pub w: Vec<f64>,
}

#[derive(Debug, Deserialize)]
struct Row {
    theta: f64,
    w: f64,
}

impl GeneratorTable {
    /// Reads a CSV file with header `theta,w`.
    pub fn read_csv(path: &Path) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_path(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let headers = reader.headers().map_err(|e| Error::Parse(e.to_string()))?.clone();
        if headers.len() != 2 || &headers[0] != "theta" || &headers[1] != "w" {
            return Err(Error::Parse(format!(
                "{}: expected header `theta,w`, found `{}`",
                path.display(),
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut table = GeneratorTable {
            theta: Vec::new(),
            w: Vec::new(),
        };
        for row in reader.deserialize::<Row>() {
            let row = row.map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            table.theta.push(row.theta);
            table.w.push(row.w);
        }
        Ok(table)
    }
}

impl MonotoneCubic {
    pub fn new(theta: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if theta.len() != values.len() {
            return Err(Error::Weight("table columns differ in length".into()));
        }
        if theta.len() < 2 {
            return Err(Error::Weight("table needs at least two rows".into()));
        }
        if theta.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Weight("table theta must be strictly increasing".into()));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::Weight(format!(
                "table value {v} is negative or not finite"
            )));
        }
        let m = theta.len() - 1;
        let h: Vec<f64> = theta.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<f64> = (0..m).map(|i| (values[i + 1] - values[i]) / h[i]).collect();
        let mut slopes = vec![0.0; m + 1];
        slopes[0] = delta[0];
        slopes[m] = delta[m - 1];
        for i in 1..m {
            if delta[i - 1] * delta[i] > 0.0 {
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                slopes[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        Ok(Self {
            theta,
            values,
            slopes,
        })
    }

    pub fn from_table(table: &GeneratorTable) -> Result<Self> {
        Self::new(table.theta.clone(), table.w.clone())
    }

    pub fn to_table(&self) -> GeneratorTable {
        GeneratorTable {
            theta: self.theta.clone(),
            w: self.values.clone(),
        }
    }

    pub fn knots(&self) -> &[f64] {
        &self.theta
    }

    pub fn first(&self) -> f64 {
        self.theta[0]
    }

    pub fn last(&self) -> f64 {
        *self.theta.last().expect("non-empty")
    }

    /// Value at `t`, clamped to the table range.
    pub fn eval(&self, t: f64) -> f64 {
        let t = t.clamp(self.first(), self.last());
        let i = match self.theta.partition_point(|&x| x <= t) {
            0 => 0,
            p => (p - 1).min(self.theta.len() - 2),
        };
        let (x0, x1) = (self.theta[i], self.theta[i + 1]);
        let h = x1 - x0;
        let s = (t - x0) / h;
        let (y0, y1) = (self.values[i], self.values[i + 1]);
        let (d0, d1) = (self.slopes[i], self.slopes[i + 1]);
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1
    }
}
