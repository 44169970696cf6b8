//! Classical stepwise agglomerative linkage, used as a comparison point.
//!
//! Single, complete and average linkage update inter-cluster distances with
//! the Lance-Williams recurrence. Centroid linkage keeps each cluster's mean
//! coordinates (over its leaves) and measures distances between means, so its
//! merge heights may invert.

use std::fmt;
use std::str::FromStr;

use crate::data::{euclidean_distance, NormalizedDataset};
use crate::dendrogram::{DepthRecord, Dendrogram};
use crate::{Error, Result, DISTANCE_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkageMethod {
    /// Nearest neighbour: minimum cross-pair distance.
    Single,
    /// Furthest neighbour: maximum cross-pair distance.
    Complete,
    /// Unweighted mean over cross pairs.
    Average,
    /// Distance between cluster means.
    Centroid,
}

impl LinkageMethod {
    pub const ALL: [LinkageMethod; 4] = [
        LinkageMethod::Single,
        LinkageMethod::Complete,
        LinkageMethod::Average,
        LinkageMethod::Centroid,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LinkageMethod::Single => "single",
            LinkageMethod::Complete => "complete",
            LinkageMethod::Average => "average",
            LinkageMethod::Centroid => "centroid",
        }
    }

    /// Merge heights never decrease for these methods.
    pub fn is_monotone(self) -> bool {
        !matches!(self, LinkageMethod::Centroid)
    }
}

impl fmt::Display for LinkageMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LinkageMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        LinkageMethod::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown linkage method `{s}`"))
    }
}

/// Result of a stepwise run: one binary merge per trace record, the record's
/// cut-off holding the merge distance.
#[derive(Debug, Clone, PartialEq)]
pub struct StepwiseDendrogram {
    pub method: LinkageMethod,
    pub threshold: Option<f64>,
    dendrogram: Dendrogram,
}

impl StepwiseDendrogram {
    pub fn dendrogram(&self) -> &Dendrogram {
        &self.dendrogram
    }

    pub fn into_dendrogram(self) -> Dendrogram {
        self.dendrogram
    }

    pub fn step_count(&self) -> usize {
        self.dendrogram.depth_count()
    }

    pub fn merge_distances(&self) -> Vec<f64> {
        self.dendrogram.trace().iter().map(|r| r.cutoff).collect()
    }
}

struct Cluster {
    leaves: Vec<usize>,
    centroid: Vec<f64>,
}

/// Runs `method` until one cluster remains.
pub fn stepwise_cluster(nd: &NormalizedDataset, method: LinkageMethod) -> Result<StepwiseDendrogram> {
    stepwise_cluster_with(nd, method, None)
}

/// Runs `method`, stopping before the first merge whose distance exceeds
/// `threshold`.
///
/// At each step the closest pair of clusters merges. Pairs within
/// [`DISTANCE_TOLERANCE`] of the minimum are tied, and the tie goes to the
/// pair whose smallest leaves are lexicographically first.
pub fn stepwise_cluster_with(
    nd: &NormalizedDataset,
    method: LinkageMethod,
    threshold: Option<f64>,
) -> Result<StepwiseDendrogram> {
    let n = nd.len();
    if n < 2 {
        return Err(Error::TooFewPoints {
            required: 2,
            actual: n,
        });
    }
    let coords = nd.coords();
    let mut dist = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = euclidean_distance(&coords[i], &coords[j])?;
            dist[i][j] = d;
            dist[j][i] = d;
        }
    }
    // slot i holds the cluster whose smallest leaf is i
    let mut clusters: Vec<Option<Cluster>> = coords
        .iter()
        .enumerate()
        .map(|(i, c)| {
            Some(Cluster {
                leaves: vec![i],
                centroid: c.clone(),
            })
        })
        .collect();

    let mut trace = Vec::with_capacity(n - 1);
    loop {
        let active: Vec<usize> = (0..n).filter(|&i| clusters[i].is_some()).collect();
        if active.len() < 2 {
            break;
        }
        let pairs = || {
            active
                .iter()
                .enumerate()
                .flat_map(|(x, &a)| active[x + 1..].iter().map(move |&b| (a, b)))
        };
        let min = pairs()
            .map(|(a, b)| dist[a][b])
            .fold(f64::INFINITY, f64::min);
        if threshold.is_some_and(|t| min > t) {
            break;
        }
        let (a, b) = pairs()
            .find(|&(a, b)| dist[a][b] <= min + DISTANCE_TOLERANCE)
            .expect("at least one pair is active");
        let height = dist[a][b];

        let right = clusters[b].take().expect("active cluster");
        let left = clusters[a].as_mut().expect("active cluster");
        let (na, nb) = (left.leaves.len() as f64, right.leaves.len() as f64);
        for (c, r) in left.centroid.iter_mut().zip(&right.centroid) {
            *c = (na * *c + nb * r) / (na + nb);
        }
        left.leaves.extend(right.leaves);
        left.leaves.sort_unstable();
        let merged_leaves = left.leaves.clone();

        for &k in &active {
            if k == a || k == b {
                continue;
            }
            let d = match method {
                LinkageMethod::Single => dist[a][k].min(dist[b][k]),
                LinkageMethod::Complete => dist[a][k].max(dist[b][k]),
                LinkageMethod::Average => (na * dist[a][k] + nb * dist[b][k]) / (na + nb),
                LinkageMethod::Centroid => {
                    let other = &clusters[k].as_ref().expect("active cluster").centroid;
                    let own = &clusters[a].as_ref().expect("active cluster").centroid;
                    euclidean_distance(own, other)?
                }
            };
            dist[a][k] = d;
            dist[k][a] = d;
        }

        trace.push(DepthRecord {
            depth: trace.len() + 1,
            cutoff: height,
            groups: vec![merged_leaves],
        });
    }

    Ok(StepwiseDendrogram {
        method,
        threshold,
        dendrogram: Dendrogram::from_trace(nd.labels().to_vec(), trace)?,
    })
}

/// Adaptive versus stepwise tree shape.
#[derive(Debug, Clone, PartialEq)]
pub struct CompactnessReport {
    pub method: LinkageMethod,
    pub adaptive_levels: usize,
    pub stepwise_steps: usize,
    pub adaptive_max_arity: usize,
    pub stepwise_max_arity: usize,
    pub adaptive_groups_per_level: Vec<usize>,
    pub stepwise_groups_per_level: Vec<usize>,
}

impl CompactnessReport {
    pub fn adaptive_is_more_compact(&self) -> bool {
        self.adaptive_levels < self.stepwise_steps
    }
}

impl fmt::Display for CompactnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[usize]| {
            xs.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        writeln!(
            f,
            "adaptive: {} levels, {}-linkage: {} steps",
            self.adaptive_levels, self.method, self.stepwise_steps
        )?;
        writeln!(f, "levels: {} vs {}", self.adaptive_levels, self.stepwise_steps)?;
        writeln!(
            f,
            "max merge arity: {} vs {}",
            self.adaptive_max_arity, self.stepwise_max_arity
        )?;
        writeln!(
            f,
            "groups per level: [{}] vs [{}]",
            join(&self.adaptive_groups_per_level),
            join(&self.stepwise_groups_per_level)
        )?;
        let verdict = match self.adaptive_levels.cmp(&self.stepwise_steps) {
            std::cmp::Ordering::Less => "adaptive tree is more compact",
            std::cmp::Ordering::Equal => "equal depth",
            std::cmp::Ordering::Greater => "stepwise tree is more compact",
        };
        writeln!(f, "verdict: {verdict}")
    }
}

pub fn compare_compactness(
    adaptive: &Dendrogram,
    stepwise: &StepwiseDendrogram,
) -> Result<CompactnessReport> {
    let other = stepwise.dendrogram();
    if adaptive.labels() != other.labels() {
        return Err(Error::LeafMismatch);
    }
    let per_level = |d: &Dendrogram| d.trace().iter().map(|r| r.groups.len()).collect();
    Ok(CompactnessReport {
        method: stepwise.method,
        adaptive_levels: adaptive.depth_count(),
        stepwise_steps: other.depth_count(),
        adaptive_max_arity: adaptive.max_arity(),
        stepwise_max_arity: other.max_arity(),
        adaptive_groups_per_level: per_level(adaptive),
        stepwise_groups_per_level: per_level(other),
    })
}
