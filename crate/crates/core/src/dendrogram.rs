//! Cluster trees and the per-depth merge trace.
//!
//! Both the adaptive engine and the stepwise baselines produce a
//! [`Dendrogram`]. A tree is fully determined by its leaf labels and its
//! trace, so the nodes are always rebuilt from the trace
//! ([`Dendrogram::from_trace`]); this is also how stored traces are
//! loaded back.

use std::collections::HashSet;

use crate::{Error, Result};

pub type NodeId = usize;

/// One iteration of a clustering run.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthRecord {
    /// 1-based iteration number.
    pub depth: usize,
    /// Threshold of this iteration: the cut-off distance for the adaptive
    /// engine, the merge distance for stepwise methods.
    pub cutoff: f64,
    /// Clusters formed at this depth, each as the sorted set of original
    /// leaf indices it covers. Ordered by smallest leaf.
    pub groups: Vec<Vec<usize>>,
}

impl DepthRecord {
    /// Cut-off formatted to two decimals.
    pub fn cutoff_display(&self) -> String {
        format_cutoff(self.cutoff)
    }
}

pub fn format_cutoff(cutoff: f64) -> String {
    format!("{cutoff:.2}")
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Leaf {
        index: usize,
    },
    Merge {
        children: Vec<NodeId>,
        depth: usize,
        cutoff: f64,
        leaves: Vec<usize>,
    },
}

impl Node {
    pub fn depth(&self) -> usize {
        match self {
            Node::Leaf { .. } => 0,
            Node::Merge { depth, .. } => *depth,
        }
    }

    pub fn children(&self) -> &[NodeId] {
        match self {
            Node::Leaf { .. } => &[],
            Node::Merge { children, .. } => children,
        }
    }
}

/// A cluster tree (or forest, when a stepwise run stops at a threshold).
///
/// Node ids `0..n` are the leaves in dataset order; merge nodes follow in
/// trace order.
#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram {
    labels: Vec<String>,
    nodes: Vec<Node>,
    roots: Vec<NodeId>,
    trace: Vec<DepthRecord>,
}

impl Dendrogram {
    /// Replays `trace` over singleton leaves.
    ///
    /// Every group must be exactly the union of two or more clusters that
    /// are active at that depth, and depths must run `1, 2, ...`.
    pub fn from_trace(labels: Vec<String>, trace: Vec<DepthRecord>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::TooFewPoints {
                required: 1,
                actual: 0,
            });
        }
        let mut nodes: Vec<Node> = (0..n).map(|index| Node::Leaf { index }).collect();
        // (node id, sorted leaves), ordered by smallest leaf
        let mut active: Vec<(NodeId, Vec<usize>)> = (0..n).map(|i| (i, vec![i])).collect();

        for (pos, record) in trace.iter().enumerate() {
            if record.depth != pos + 1 {
                return Err(Error::Schema(format!(
                    "expected depth {}, found {}",
                    pos + 1,
                    record.depth
                )));
            }
            if record.groups.is_empty() {
                return Err(Error::Schema(format!("depth {} has no groups", record.depth)));
            }
            let mut seen = HashSet::new();
            let mut formed = Vec::with_capacity(record.groups.len());
            for group in &record.groups {
                if group.iter().any(|&l| l >= n) {
                    return Err(Error::Schema(format!("leaf out of range in {group:?}")));
                }
                if !group.iter().all(|l| seen.insert(*l)) {
                    return Err(Error::Schema(format!(
                        "groups overlap at depth {}",
                        record.depth
                    )));
                }
                let members: HashSet<usize> = group.iter().copied().collect();
                let mut children = Vec::new();
                let mut covered = 0;
                for (id, leaves) in &active {
                    let inside = leaves.iter().filter(|l| members.contains(l)).count();
                    if inside == leaves.len() {
                        children.push(*id);
                        covered += inside;
                    } else if inside > 0 {
                        return Err(Error::Schema(format!(
                            "group {group:?} splits an active cluster at depth {}",
                            record.depth
                        )));
                    }
                }
                if covered != members.len() || children.len() < 2 {
                    return Err(Error::Schema(format!(
                        "group {group:?} is not a union of two or more active clusters"
                    )));
                }
                let mut leaves: Vec<usize> = members.into_iter().collect();
                leaves.sort_unstable();
                let id = nodes.len();
                nodes.push(Node::Merge {
                    children,
                    depth: record.depth,
                    cutoff: record.cutoff,
                    leaves: leaves.clone(),
                });
                formed.push((id, leaves));
            }
            active.retain(|(_, leaves)| !seen.contains(&leaves[0]));
            active.extend(formed);
            active.sort_by_key(|(_, leaves)| leaves[0]);
        }

        let roots = active.into_iter().map(|(id, _)| id).collect();
        Ok(Self {
            labels,
            nodes,
            roots,
            trace,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leaf_count(&self) -> usize {
        self.labels.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn trace(&self) -> &[DepthRecord] {
        &self.trace
    }

    /// Number of iterations (adaptive levels or stepwise merges).
    pub fn depth_count(&self) -> usize {
        self.trace.len()
    }

    /// Top-level clusters; a single entry for a complete tree.
    pub fn roots(&self) -> &[NodeId] {
        &self.roots
    }

    /// The root of a complete tree.
    pub fn root(&self) -> Option<NodeId> {
        match self.roots.as_slice() {
            [only] => Some(*only),
            _ => None,
        }
    }

    /// Leaves under `id`, sorted.
    pub fn leaves(&self, id: NodeId) -> Vec<usize> {
        match &self.nodes[id] {
            Node::Leaf { index } => vec![*index],
            Node::Merge { leaves, .. } => leaves.clone(),
        }
    }

    /// Leaves under all roots, sorted.
    pub fn root_leaves(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.roots.iter().flat_map(|&r| self.leaves(r)).collect();
        all.sort_unstable();
        all
    }

    /// Largest number of children of any merge node.
    pub fn max_arity(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| n.children().len())
            .max()
            .unwrap_or(0)
    }

    /// Labels of a trace group, in leaf order.
    pub fn group_labels(&self, group: &[usize]) -> Vec<&str> {
        group.iter().map(|&l| self.labels[l].as_str()).collect()
    }
}
