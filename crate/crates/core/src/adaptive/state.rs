use super::neighborhood::{cutoff_distance, extremely_close_sets, MergeGroup, Neighborhood};
use super::AdaptiveOptions;
use crate::data::{DistanceMatrix, NormalizedDataset};
use crate::dendrogram::{DepthRecord, NodeId};
use crate::{Error, Result};

/// An active point: an original observation or the mean of merged ones.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoPoint {
    /// Dendrogram node id. Originals use their dataset index.
    pub id: NodeId,
    pub coords: Vec<f64>,
    /// Sorted original indices covered by this point.
    pub leaves: Vec<usize>,
    /// 0 for original points.
    pub formed_at_depth: usize,
}

/// The active points after `depth` iterations, ordered by smallest leaf.
#[derive(Debug, Clone)]
pub struct ClusterState {
    depth: usize,
    points: Vec<PseudoPoint>,
    matrix: DistanceMatrix,
    next_id: NodeId,
    consumed: Vec<bool>,
    options: AdaptiveOptions,
}

impl ClusterState {
    pub fn initial(nd: &NormalizedDataset) -> Result<Self> {
        Self::with_options(nd, AdaptiveOptions::default())
    }

    pub fn with_options(nd: &NormalizedDataset, options: AdaptiveOptions) -> Result<Self> {
        if nd.is_empty() {
            return Err(Error::TooFewPoints {
                required: 1,
                actual: 0,
            });
        }
        let points = nd
            .coords()
            .iter()
            .enumerate()
            .map(|(i, c)| PseudoPoint {
                id: i,
                coords: c.clone(),
                leaves: vec![i],
                formed_at_depth: 0,
            })
            .collect::<Vec<_>>();
        Self::from_points(0, points, nd.len(), options)
    }

    fn from_points(
        depth: usize,
        points: Vec<PseudoPoint>,
        next_id: NodeId,
        options: AdaptiveOptions,
    ) -> Result<Self> {
        let coords: Vec<Vec<f64>> = points.iter().map(|p| p.coords.clone()).collect();
        let matrix = DistanceMatrix::from_points(&coords)?;
        Ok(Self {
            depth,
            consumed: vec![false; points.len()],
            points,
            matrix,
            next_id,
            options,
        })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn points(&self) -> &[PseudoPoint] {
        &self.points
    }

    pub fn matrix(&self) -> &DistanceMatrix {
        &self.matrix
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn options(&self) -> AdaptiveOptions {
        self.options
    }

    /// Cut-off distance of the current point set.
    pub fn cutoff(&self) -> Result<f64> {
        cutoff_distance(&self.matrix)
    }

    /// Neighbourhoods of every active point under the current cut-off.
    pub fn neighborhoods(&self) -> Result<Vec<Neighborhood>> {
        let cutoff = self.cutoff()?;
        (0..self.len())
            .map(|i| Neighborhood::build(&self.matrix, i, cutoff, self.options.tie_tolerance))
            .collect()
    }

    /// Replaces the members of `group` by their mean.
    ///
    /// Members are marked consumed until the next state is built, so a point
    /// can join only one group per depth.
    pub fn merge_group(&mut self, group: &MergeGroup, new_depth: usize) -> Result<PseudoPoint> {
        for &i in group.members() {
            if i >= self.points.len() {
                return Err(Error::IndexOutOfBounds {
                    index: i,
                    len: self.points.len(),
                });
            }
            if self.consumed[i] {
                return Err(Error::StaleIndex { index: i });
            }
        }
        let dim = self.points[group.members()[0]].coords.len();
        let mut coords = vec![0.0; dim];
        let mut leaves = Vec::new();
        for &i in group.members() {
            self.consumed[i] = true;
            let p = &self.points[i];
            for (acc, x) in coords.iter_mut().zip(&p.coords) {
                *acc += x;
            }
            leaves.extend_from_slice(&p.leaves);
        }
        let v = group.len() as f64;
        coords.iter_mut().for_each(|c| *c /= v);
        leaves.sort_unstable();

        let id = self.next_id;
        self.next_id += 1;
        Ok(PseudoPoint {
            id,
            coords,
            leaves,
            formed_at_depth: new_depth,
        })
    }

    /// One iteration: cut-off, neighbourhoods, extremely close sets, merge.
    ///
    /// Unmerged points carry over unchanged and no re-normalisation happens;
    /// the distance matrix is rebuilt over the new point set.
    pub fn cluster_step(&self) -> Result<(ClusterState, DepthRecord)> {
        if self.len() < 2 {
            return Err(Error::TooFewPoints {
                required: 2,
                actual: self.len(),
            });
        }
        let cutoff = self.cutoff()?;
        let neighborhoods = self.neighborhoods()?;
        let groups = extremely_close_sets(&neighborhoods);
        if groups.is_empty() {
            return Err(Error::Invariant(format!(
                "no extremely close set among {} points at depth {}",
                self.len(),
                self.depth + 1
            )));
        }

        let new_depth = self.depth + 1;
        let mut scratch = self.clone();
        scratch.consumed.iter_mut().for_each(|c| *c = false);
        let merged = groups
            .iter()
            .map(|g| scratch.merge_group(g, new_depth))
            .collect::<Result<Vec<_>>>()?;

        let record = DepthRecord {
            depth: new_depth,
            cutoff,
            groups: merged.iter().map(|p| p.leaves.clone()).collect(),
        };

        let mut points: Vec<PseudoPoint> = scratch
            .points
            .into_iter()
            .zip(&scratch.consumed)
            .filter(|(_, &used)| !used)
            .map(|(p, _)| p)
            .chain(merged)
            .collect();
        points.sort_by_key(|p| p.leaves[0]);

        let next = ClusterState::from_points(new_depth, points, scratch.next_id, self.options)?;
        if next.len() >= self.len() {
            return Err(Error::Invariant("clustering step did not shrink the point set".into()));
        }
        Ok((next, record))
    }
}
