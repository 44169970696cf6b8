use std::fmt;
use std::str::FromStr;

use super::Dataset;
use crate::{Error, Result};

/// Denominator used for the per-column standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SdMode {
    /// Divide by `n - 1`. Reproduces the depth-1 *para* cut-off of the
    /// substituent fixture, hence the default.
    #[default]
    Sample,
    /// Divide by `n`.
    Population,
}

impl SdMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SdMode::Sample => "sample",
            SdMode::Population => "population",
        }
    }

    fn denominator(self, n: usize) -> f64 {
        match self {
            SdMode::Sample => (n - 1) as f64,
            SdMode::Population => n as f64,
        }
    }
}

impl fmt::Display for SdMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SdMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "sample" => Ok(SdMode::Sample),
            "population" => Ok(SdMode::Population),
            other => Err(format!("unknown sd mode `{other}`")),
        }
    }
}

/// Per-column mean and standard deviation captured at normalisation time.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationStats {
    pub means: Vec<f64>,
    pub sds: Vec<f64>,
    pub mode: SdMode,
}

impl NormalizationStats {
    /// Column statistics of `data`. Fails on constant columns.
    pub fn fit(data: &Dataset, mode: SdMode) -> Result<Self> {
        let n = data.len();
        if n < 2 {
            return Err(Error::TooFewPoints {
                required: 2,
                actual: n,
            });
        }
        let mut means = Vec::with_capacity(data.dim());
        let mut sds = Vec::with_capacity(data.dim());
        for (k, name) in data.column_names().iter().enumerate() {
            let first = data.row(0)[k];
            if data.column(k).all(|v| v == first) {
                return Err(Error::ZeroVariance {
                    column: name.clone(),
                });
            }
            let mean = data.column(k).sum::<f64>() / n as f64;
            let ss: f64 = data.column(k).map(|v| (v - mean) * (v - mean)).sum();
            let sd = (ss / mode.denominator(n)).sqrt();
            if !(sd > 0.0 && sd.is_finite()) {
                return Err(Error::ZeroVariance {
                    column: name.clone(),
                });
            }
            means.push(mean);
            sds.push(sd);
        }
        Ok(Self { means, sds, mode })
    }

    /// Maps a raw descriptor row into normalised space.
    pub fn apply(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .zip(self.means.iter().zip(&self.sds))
            .map(|(v, (m, s))| (v - m) / s)
            .collect()
    }
}

/// Points in the space the clustering runs in.
///
/// Usually the z-scores of a [`Dataset`]; `stats` is `None` when the raw
/// values are used unchanged.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedDataset {
    labels: Vec<String>,
    column_names: Vec<String>,
    coords: Vec<Vec<f64>>,
    stats: Option<NormalizationStats>,
}

impl NormalizedDataset {
    /// Z-scores every column of `data`.
    pub fn normalize(data: &Dataset, mode: SdMode) -> Result<Self> {
        let stats = NormalizationStats::fit(data, mode)?;
        let coords = data.values().iter().map(|row| stats.apply(row)).collect();
        Ok(Self {
            labels: data.labels().to_vec(),
            column_names: data.column_names().to_vec(),
            coords,
            stats: Some(stats),
        })
    }

    /// Uses the raw values as coordinates.
    pub fn raw(data: &Dataset) -> Self {
        Self {
            labels: data.labels().to_vec(),
            column_names: data.column_names().to_vec(),
            coords: data.values().to_vec(),
            stats: None,
        }
    }

    /// Wraps coordinates that are already in the working space.
    pub fn from_coords(labels: Vec<String>, coords: Vec<Vec<f64>>) -> Result<Self> {
        let p = coords.first().map_or(1, Vec::len);
        let column_names = (0..p).map(|k| format!("x{}", k + 1)).collect();
        let data = Dataset::new(labels, column_names, coords)?;
        Ok(Self::raw(&data))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.column_names.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn column_names(&self) -> &[String] {
        &self.column_names
    }

    pub fn coords(&self) -> &[Vec<f64>] {
        &self.coords
    }

    pub fn stats(&self) -> Option<&NormalizationStats> {
        self.stats.as_ref()
    }
}

impl Dataset {
    /// Shorthand for [`NormalizedDataset::normalize`].
    pub fn normalize(&self, mode: SdMode) -> Result<NormalizedDataset> {
        NormalizedDataset::normalize(self, mode)
    }
}
