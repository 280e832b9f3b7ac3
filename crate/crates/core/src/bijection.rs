//! Height-preserving bijection between d-ary multi-edge trees and pruned
//! d-ary trees.
//!
//! A vertex whose children are attached by `k_1, ..., k_r` edges maps to a
//! vertex whose children sit at positions `k_1, k_1 + k_2, ..., k_1 + ... + k_r`.
//! The inverse takes consecutive differences of the positions. Child order
//! is preserved, so every shape statistic carries over unchanged.

use crate::trees::{DAryMultiEdgeTree, DAryNode, DAryTree, Link, MultiEdgeTree, Slot, TreeError};

/// Maps a d-ary multi-edge tree to its pruned d-ary image.
///
/// The degree bound is re-validated here; a tree that violates it is rejected
/// instead of producing positions beyond `d`.
pub fn to_dary(t: &DAryMultiEdgeTree) -> Result<DAryTree, TreeError> {
    let d = t.d();
    let root = node_to_dary(t.tree(), d)?;
    Ok(DAryTree::new_unchecked(root, d))
}

fn node_to_dary(node: &MultiEdgeTree, d: u32) -> Result<DAryNode, TreeError> {
    let mut position: u64 = 0;
    let mut slots = Vec::with_capacity(node.links().len());
    for Link {
        multiplicity,
        child,
    } in node.links()
    {
        position += u64::from(*multiplicity);
        if position > u64::from(d) {
            return Err(TreeError::DegreeBound {
                found: node.out_degree(),
                d,
            });
        }
        slots.push(Slot {
            position: position as u32,
            child: node_to_dary(child, d)?,
        });
    }
    Ok(DAryNode::from_slots_unchecked(slots))
}

/// Inverse of [`to_dary`].
pub fn from_dary(t: &DAryTree) -> DAryMultiEdgeTree {
    DAryMultiEdgeTree::new_unchecked(node_from_dary(t.root()), t.d())
}

fn node_from_dary(node: &DAryNode) -> MultiEdgeTree {
    let mut prev = 0;
    let links = node
        .slots()
        .iter()
        .map(|Slot { position, child }| {
            let multiplicity = position - prev;
            prev = *position;
            Link {
                multiplicity,
                child: node_from_dary(child),
            }
        })
        .collect();
    MultiEdgeTree::from_links_unchecked(links)
}
