use std::collections::BTreeSet;

use crate::data::DistanceMatrix;
use crate::{Error, Result, DISTANCE_TOLERANCE};

/// The minimax cut-off distance: the largest nearest-neighbour distance.
///
/// Every point has at least one other point within this distance, and the
/// point that attains it has exactly one neighbour at the boundary.
pub fn cutoff_distance(m: &DistanceMatrix) -> Result<f64> {
    if m.len() < 2 {
        return Err(Error::TooFewPoints {
            required: 2,
            actual: m.len(),
        });
    }
    Ok((0..m.len())
        .filter_map(|i| m.nearest_distance(i))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Points within the cut-off of `center`, nearest first.
///
/// `members[0]` is always the center itself. The rest are ordered by
/// distance; distances within the tie tolerance of the first distance of
/// their run count as equal and are ordered by index.
#[derive(Debug, Clone, PartialEq)]
pub struct Neighborhood {
    pub center: usize,
    pub members: Vec<usize>,
    pub distances: Vec<f64>,
    pub cutoff: f64,
}

impl Neighborhood {
    pub fn build(m: &DistanceMatrix, center: usize, cutoff: f64, tolerance: f64) -> Result<Self> {
        if center >= m.len() {
            return Err(Error::IndexOutOfBounds {
                index: center,
                len: m.len(),
            });
        }
        let mut others: Vec<(f64, usize)> = (0..m.len())
            .filter(|&j| j != center)
            .map(|j| (m.get(center, j), j))
            .filter(|(d, _)| *d <= cutoff + tolerance)
            .collect();
        others.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

        let mut start = 0;
        while start < others.len() {
            let anchor = others[start].0;
            let len = others[start..]
                .iter()
                .take_while(|(d, _)| *d - anchor <= tolerance)
                .count();
            others[start..start + len].sort_by_key(|&(_, j)| j);
            start += len;
        }

        let mut members = Vec::with_capacity(others.len() + 1);
        let mut distances = Vec::with_capacity(others.len() + 1);
        members.push(center);
        distances.push(0.0);
        for (d, j) in others {
            members.push(j);
            distances.push(d);
        }
        Ok(Self {
            center,
            members,
            distances,
            cutoff,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The first `v` members.
    pub fn prefix(&self, v: usize) -> Result<&[usize]> {
        if v == 0 || v > self.members.len() {
            return Err(Error::OutOfRange {
                requested: v,
                available: self.members.len(),
            });
        }
        Ok(&self.members[..v])
    }

    /// The first `v` members as a sorted set, or `None` when the
    /// neighbourhood is smaller than `v`.
    fn prefix_set(&self, v: usize) -> Option<Vec<usize>> {
        let mut set = self.members.get(..v)?.to_vec();
        set.sort_unstable();
        Some(set)
    }
}

/// Neighbourhood of point `i` under the default tie tolerance.
pub fn neighborhood(m: &DistanceMatrix, i: usize, cutoff: f64) -> Result<Neighborhood> {
    Neighborhood::build(m, i, cutoff, DISTANCE_TOLERANCE)
}

/// The first `v` entries of `nb`.
pub fn sub_neighborhood(nb: &Neighborhood, v: usize) -> Result<Vec<usize>> {
    nb.prefix(v).map(<[usize]>::to_vec)
}

/// A set of at least two active points merged into one pseudo-point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MergeGroup {
    members: Vec<usize>,
}

impl MergeGroup {
    pub fn new(mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.len() < 2 {
            return Err(Error::Invariant(format!(
                "merge group needs at least two points, got {members:?}"
            )));
        }
        Ok(Self { members })
    }

    /// Sorted member indices.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// All maximal extremely close sets.
///
/// A set `S` with `|S| = v` qualifies when, for every `i` in `S`, the first
/// `v` members of the neighbourhood of `i` are exactly `S`. Candidates are
/// the prefixes of each neighbourhood; any two qualifying sets are either
/// disjoint or nested, so keeping the maximal ones yields a partition of the
/// merged points. Result is sorted by smallest member.
///
/// `neighborhoods[i]` must be the neighbourhood of point `i`, all built
/// against the same cut-off.
pub fn extremely_close_sets(neighborhoods: &[Neighborhood]) -> Vec<MergeGroup> {
    let qualifies = |set: &[usize]| {
        set.iter().all(|&k| {
            neighborhoods
                .get(k)
                .and_then(|nb| nb.prefix_set(set.len()))
                .is_some_and(|p| p == set)
        })
    };

    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    for nb in neighborhoods {
        let largest = (2..=nb.len())
            .rev()
            .filter_map(|v| nb.prefix_set(v))
            .find(|set| qualifies(set));
        if let Some(set) = largest {
            found.insert(set);
        }
    }

    let found: Vec<Vec<usize>> = found.into_iter().collect();
    let mut maximal: Vec<MergeGroup> = found
        .iter()
        .filter(|s| {
            !found
                .iter()
                .any(|t| t.len() > s.len() && s.iter().all(|x| t.binary_search(x).is_ok()))
        })
        .map(|s| MergeGroup {
            members: s.clone(),
        })
        .collect();
    maximal.sort_by_key(|g| g.members[0]);
    maximal
}
