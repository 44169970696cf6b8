use super::NormalizedDataset;
use crate::{Error, Result};

/// Euclidean (L2) distance between two coordinate vectors.
pub fn euclidean_distance(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(l2(x, y))
}

#[inline]
fn l2(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// Symmetric distance matrix with a zero diagonal, stored as the row-major
/// upper triangle (`n (n - 1) / 2` entries).
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl DistanceMatrix {
    /// Pairwise distances between `points`. All points must share a dimension.
    pub fn from_points(points: &[Vec<f64>]) -> Result<Self> {
        let n = points.len();
        if let Some(first) = points.first() {
            if let Some(bad) = points.iter().find(|p| p.len() != first.len()) {
                return Err(Error::DimensionMismatch {
                    left: first.len(),
                    right: bad.len(),
                });
            }
        }
        let mut entries = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                entries.push(l2(&points[i], &points[j]));
            }
        }
        Ok(Self { n, entries })
    }

    /// Builds a matrix from condensed entries, validating them.
    pub fn from_condensed(n: usize, entries: Vec<f64>) -> Result<Self> {
        let expected = n * n.saturating_sub(1) / 2;
        if entries.len() != expected {
            return Err(Error::DimensionMismatch {
                left: entries.len(),
                right: expected,
            });
        }
        if let Some(bad) = entries.iter().find(|d| !(d.is_finite() && **d >= 0.0)) {
            return Err(Error::InvalidDataset(format!("invalid distance {bad}")));
        }
        Ok(Self { n, entries })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn condensed(&self) -> &[f64] {
        &self.entries
    }

    #[inline]
    fn offset(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        self.n * i - i * (i + 1) / 2 + (j - i - 1)
    }

    /// Distance between points `i` and `j`. Panics when either is out of range.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(
            i < self.n && j < self.n,
            "index ({i}, {j}) out of range for {} points",
            self.n
        );
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => 0.0,
            std::cmp::Ordering::Less => self.entries[self.offset(i, j)],
            std::cmp::Ordering::Greater => self.entries[self.offset(j, i)],
        }
    }

    /// Smallest distance from `i` to any other point, or `None` for `n < 2`.
    pub fn nearest_distance(&self, i: usize) -> Option<f64> {
        (0..self.n)
            .filter(|&j| j != i)
            .map(|j| self.get(i, j))
            .min_by(f64::total_cmp)
    }
}

/// Distance matrix over the coordinates of `nd`.
pub fn distance_matrix(nd: &NormalizedDataset) -> Result<DistanceMatrix> {
    if nd.len() < 2 {
        return Err(Error::TooFewPoints {
            required: 2,
            actual: nd.len(),
        });
    }
    DistanceMatrix::from_points(nd.coords())
}

impl NormalizedDataset {
    pub fn distance_matrix(&self) -> Result<DistanceMatrix> {
        distance_matrix(self)
    }
}
