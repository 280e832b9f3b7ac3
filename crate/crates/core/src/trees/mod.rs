//! Tree data model and statistics.
//!
//! Two families live here: plane multi-edge trees, where every parent-child
//! link carries a positive multiplicity, and pruned d-ary trees, where each
//! child occupies one of `d` labelled positions. Both are plain immutable
//! values. Heights count links, never multiplicities.

mod enumerate;
mod text;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use enumerate::{
    enumerate_dary, enumerate_dary_multi, enumerate_multi_edge, Enumerator, DEFAULT_ORACLE_CEILING,
};
pub use text::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("edge multiplicity must be positive")]
    ZeroMultiplicity,
    #[error("out-degree {found} exceeds bound d = {d}")]
    DegreeBound { found: u64, d: u32 },
    #[error("position {position} outside 1..={d}")]
    PositionOutOfRange { position: u32, d: u32 },
    #[error("positions must be strictly increasing ({prev} then {next})")]
    PositionsNotIncreasing { prev: u32, next: u32 },
    #[error("degree bound d must be positive")]
    ZeroDegree,
    #[error("oracle ceiling exceeded: requested {requested}, ceiling {ceiling}")]
    CeilingExceeded { requested: usize, ceiling: usize },
}

/// One parent-child link of a multi-edge tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Link {
    pub multiplicity: u32,
    pub child: MultiEdgeTree,
}

/// A rooted plane tree whose links carry positive edge multiplicities.
///
/// The value is the root vertex; children are ordered left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiEdgeTree {
    links: Vec<Link>,
}

impl MultiEdgeTree {
    /// The isolated vertex.
    pub fn leaf() -> Self {
        Self::default()
    }

    pub fn new(links: Vec<Link>) -> Result<Self, TreeError> {
        if links.iter().any(|l| l.multiplicity == 0) {
            return Err(TreeError::ZeroMultiplicity);
        }
        Ok(Self { links })
    }

    /// Builds a node from `(multiplicity, child)` pairs.
    pub fn from_pairs<I>(pairs: I) -> Result<Self, TreeError>
    where
        I: IntoIterator<Item = (u32, MultiEdgeTree)>,
    {
        Self::new(
            pairs
                .into_iter()
                .map(|(multiplicity, child)| Link {
                    multiplicity,
                    child,
                })
                .collect(),
        )
    }

    pub(crate) fn from_links_unchecked(links: Vec<Link>) -> Self {
        debug_assert!(links.iter().all(|l| l.multiplicity > 0));
        Self { links }
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn is_leaf(&self) -> bool {
        self.links.is_empty()
    }

    /// Total number of edges, counting multiplicities.
    pub fn size(&self) -> u64 {
        self.links
            .iter()
            .map(|l| u64::from(l.multiplicity) + l.child.size())
            .sum()
    }

    /// Sum of the multiplicities leaving this vertex.
    pub fn out_degree(&self) -> u64 {
        self.links.iter().map(|l| u64::from(l.multiplicity)).sum()
    }

    /// Largest out-degree over all vertices.
    pub fn max_out_degree(&self) -> u64 {
        self.links
            .iter()
            .map(|l| l.child.max_out_degree())
            .fold(self.out_degree(), u64::max)
    }

    pub fn stats(&self) -> TreeStats {
        TreeStats::of(self)
    }

    pub fn height(&self) -> usize {
        Shape::height(self)
    }
}

/// A multi-edge tree whose out-degrees are bounded by `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DAryMultiEdgeTree {
    tree: MultiEdgeTree,
    d: u32,
}

impl DAryMultiEdgeTree {
    pub fn new(tree: MultiEdgeTree, d: u32) -> Result<Self, TreeError> {
        if d == 0 {
            return Err(TreeError::ZeroDegree);
        }
        let found = tree.max_out_degree();
        if found > u64::from(d) {
            return Err(TreeError::DegreeBound { found, d });
        }
        Ok(Self { tree, d })
    }

    pub(crate) fn new_unchecked(tree: MultiEdgeTree, d: u32) -> Self {
        Self { tree, d }
    }

    pub fn tree(&self) -> &MultiEdgeTree {
        &self.tree
    }

    pub fn into_tree(self) -> MultiEdgeTree {
        self.tree
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn stats(&self) -> TreeStats {
        self.tree.stats()
    }
}

/// A child of a pruned d-ary node together with its 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub position: u32,
    pub child: DAryNode,
}

/// Vertex of a pruned d-ary tree. Positions are kept strictly increasing.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DAryNode {
    slots: Vec<Slot>,
}

impl DAryNode {
    pub fn leaf() -> Self {
        Self::default()
    }

    /// Builds a node from `(position, child)` pairs. The bound `d` is checked
    /// when the node is wrapped in a [`DAryTree`].
    pub fn from_pairs<I>(pairs: I) -> Result<Self, TreeError>
    where
        I: IntoIterator<Item = (u32, DAryNode)>,
    {
        let slots: Vec<Slot> = pairs
            .into_iter()
            .map(|(position, child)| Slot { position, child })
            .collect();
        for w in slots.windows(2) {
            if w[0].position >= w[1].position {
                return Err(TreeError::PositionsNotIncreasing {
                    prev: w[0].position,
                    next: w[1].position,
                });
            }
        }
        Ok(Self { slots })
    }

    pub(crate) fn from_slots_unchecked(slots: Vec<Slot>) -> Self {
        Self { slots }
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    fn check(&self, d: u32) -> Result<(), TreeError> {
        let mut prev = 0;
        for s in &self.slots {
            if s.position == 0 || s.position > d {
                return Err(TreeError::PositionOutOfRange {
                    position: s.position,
                    d,
                });
            }
            if s.position <= prev {
                return Err(TreeError::PositionsNotIncreasing {
                    prev,
                    next: s.position,
                });
            }
            prev = s.position;
            s.child.check(d)?;
        }
        Ok(())
    }
}

/// A pruned d-ary tree: the root node plus the arity bound.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DAryTree {
    root: DAryNode,
    d: u32,
}

impl DAryTree {
    pub fn new(root: DAryNode, d: u32) -> Result<Self, TreeError> {
        if d == 0 {
            return Err(TreeError::ZeroDegree);
        }
        root.check(d)?;
        Ok(Self { root, d })
    }

    pub(crate) fn new_unchecked(root: DAryNode, d: u32) -> Self {
        Self { root, d }
    }

    pub fn root(&self) -> &DAryNode {
        &self.root
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn stats(&self) -> TreeStats {
        TreeStats::of(&self.root)
    }

    pub fn height(&self) -> usize {
        Shape::height(&self.root)
    }
}

/// Structural view shared by both tree families: an ordered list of subtrees.
pub(crate) trait Shape {
    fn subtrees(&self) -> Box<dyn Iterator<Item = &Self> + '_>;
    fn degree(&self) -> usize;

    fn height(&self) -> usize {
        self.subtrees().map(|c| c.height() + 1).max().unwrap_or(0)
    }
}

impl Shape for MultiEdgeTree {
    fn subtrees(&self) -> Box<dyn Iterator<Item = &Self> + '_> {
        Box::new(self.links.iter().map(|l| &l.child))
    }

    fn degree(&self) -> usize {
        self.links.len()
    }
}

impl Shape for DAryNode {
    fn subtrees(&self) -> Box<dyn Iterator<Item = &Self> + '_> {
        Box::new(self.slots.iter().map(|s| &s.child))
    }

    fn degree(&self) -> usize {
        self.slots.len()
    }
}

/// Shape statistics preserved by the d-ary bijection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeStats {
    pub height: usize,
    pub vertices: usize,
    pub leaves: usize,
    /// Number of children `r` mapped to the number of vertices with exactly `r` children.
    pub children_histogram: BTreeMap<usize, usize>,
}

impl TreeStats {
    pub(crate) fn of<T: Shape>(root: &T) -> Self {
        let mut stats = TreeStats {
            height: 0,
            vertices: 0,
            leaves: 0,
            children_histogram: BTreeMap::new(),
        };
        // iterative walk; enumeration visits hundreds of thousands of trees
        let mut stack = vec![(root, 0usize)];
        while let Some((node, depth)) = stack.pop() {
            stats.vertices += 1;
            stats.height = stats.height.max(depth);
            let r = node.degree();
            if r == 0 {
                stats.leaves += 1;
            }
            *stats.children_histogram.entry(r).or_insert(0) += 1;
            stack.extend(node.subtrees().map(|c| (c, depth + 1)));
        }
        stats
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("TreeStats is always serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const EXAMPLE: &str = "(1:(1:(2:(),1:()),2:(1:())),3:(1:(),1:(2:()),3:()))";

    #[test]
    fn single_vertex_stats() {
        let s = MultiEdgeTree::leaf().stats();
        assert_eq!(s.height, 0);
        assert_eq!(s.vertices, 1);
        assert_eq!(s.leaves, 1);
        assert_eq!(s.children_histogram, BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn double_edge_adds_size_not_height() {
        let t = MultiEdgeTree::from_pairs([(2, MultiEdgeTree::leaf())]).unwrap();
        let s = t.stats();
        assert_eq!((s.height, s.vertices, t.size()), (1, 2, 2));
    }

    #[test]
    fn twelve_vertex_example() {
        let t: MultiEdgeTree = EXAMPLE.parse().unwrap();
        let s = t.stats();
        assert_eq!(s.height, 3);
        assert_eq!(s.vertices, 12);
        assert_eq!(s.leaves, 6);
        assert_eq!(t.max_out_degree(), 5);
        assert!(DAryMultiEdgeTree::new(t.clone(), 5).is_ok());
        assert_eq!(
            DAryMultiEdgeTree::new(t, 4),
            Err(TreeError::DegreeBound { found: 5, d: 4 })
        );
    }

    #[test]
    fn rejects_zero_multiplicity() {
        assert_eq!(
            MultiEdgeTree::from_pairs([(0, MultiEdgeTree::leaf())]),
            Err(TreeError::ZeroMultiplicity)
        );
    }

    #[test]
    fn dary_validation() {
        let node = DAryNode::from_pairs([(1, DAryNode::leaf()), (3, DAryNode::leaf())]).unwrap();
        assert!(DAryTree::new(node.clone(), 3).is_ok());
        assert_eq!(
            DAryTree::new(node, 2),
            Err(TreeError::PositionOutOfRange { position: 3, d: 2 })
        );
        assert!(DAryNode::from_pairs([(2, DAryNode::leaf()), (2, DAryNode::leaf())]).is_err());
    }

    #[test]
    fn stats_json_shape() {
        let t: MultiEdgeTree = "(2:(),1:())".parse().unwrap();
        let json: serde_json::Value = serde_json::from_str(&t.stats().to_json()).unwrap();
        assert_eq!(json["height"], 1);
        assert_eq!(json["vertices"], 3);
        assert_eq!(json["leaves"], 2);
        assert_eq!(json["children_histogram"]["0"], 2);
        assert_eq!(json["children_histogram"]["2"], 1);
    }
}
