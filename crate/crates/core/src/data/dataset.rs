use std::collections::HashSet;

use crate::{Error, Result};

/// A labelled `n x p` table of raw descriptor values.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    labels: Vec<String>,
    column_names: Vec<String>,
    values: Vec<Vec<f64>>,
}

impl Dataset {
    pub fn new(
        labels: Vec<String>,
        column_names: Vec<String>,
        values: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::TooFewPoints {
                required: 1,
                actual: 0,
            });
        }
        if column_names.is_empty() {
            return Err(Error::InvalidDataset("no descriptor columns".into()));
        }
        if labels.len() != values.len() {
            return Err(Error::DimensionMismatch {
                left: labels.len(),
                right: values.len(),
            });
        }
        let mut seen = HashSet::with_capacity(labels.len());
        for label in &labels {
            if label.is_empty() {
                return Err(Error::InvalidDataset("empty label".into()));
            }
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidDataset(format!("duplicate label `{label}`")));
            }
        }
        let p = column_names.len();
        for (label, row) in labels.iter().zip(&values) {
            if row.len() != p {
                return Err(Error::DimensionMismatch {
                    left: row.len(),
                    right: p,
                });
            }
            if let Some(v) = row.iter().find(|v| !v.is_finite()) {
                return Err(Error::InvalidDataset(format!(
                    "non-finite value {v} in row `{label}`"
                )));
            }
        }
        Ok(Self {
            labels,
            column_names,
            values,
        })
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Number of descriptor columns.
    pub fn dim(&self) -> usize {
        self.column_names.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn column_names(&self) -> &[String] {
        &self.column_names
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i]
    }

    pub fn column(&self, k: usize) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().map(move |row| row[k])
    }

    /// Keeps only the listed columns, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> Result<Self> {
        if let Some(&bad) = columns.iter().find(|&&k| k >= self.dim()) {
            return Err(Error::IndexOutOfBounds {
                index: bad,
                len: self.dim(),
            });
        }
        let names = columns
            .iter()
            .map(|&k| self.column_names[k].clone())
            .collect();
        let values = self
            .values
            .iter()
            .map(|row| columns.iter().map(|&k| row[k]).collect())
            .collect();
        Self::new(self.labels.clone(), names, values)
    }

    /// Looks up a column by name.
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.column_names.iter().position(|c| c == name)
    }
}
