//! Exhaustive generators. These are the brute-force oracle every counting
//! formula is checked against, so they are deliberately naive: forests are
//! built by structural recursion and memoized by size.
//!
//! Output order is lexicographic on (first-child label, first-child subtree,
//! remaining siblings), where subtrees are ordered by size first.

use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;

use super::{DAryMultiEdgeTree, DAryNode, DAryTree, Link, MultiEdgeTree, Slot, TreeError};

pub const DEFAULT_ORACLE_CEILING: usize = 10;

/// Exhaustive generator with a configurable size ceiling.
#[derive(Debug, Clone, Copy)]
pub struct Enumerator {
    ceiling: usize,
}

impl Default for Enumerator {
    fn default() -> Self {
        Self {
            ceiling: DEFAULT_ORACLE_CEILING,
        }
    }
}

impl Enumerator {
    pub fn with_ceiling(ceiling: usize) -> Self {
        Self { ceiling }
    }

    pub fn ceiling(&self) -> usize {
        self.ceiling
    }

    fn guard(&self, requested: usize) -> Result<(), TreeError> {
        if requested > self.ceiling {
            Err(TreeError::CeilingExceeded {
                requested,
                ceiling: self.ceiling,
            })
        } else {
            Ok(())
        }
    }

    /// Visits every plane multi-edge tree with exactly `n` edges.
    pub fn multi_edge<F>(&self, n: usize, mut visit: F) -> Result<BigInt, TreeError>
    where
        F: FnMut(&MultiEdgeTree),
    {
        self.guard(n)?;
        let mut memo = MultiForests::default();
        let mut count = 0u64;
        if n == 0 {
            visit(&MultiEdgeTree::leaf());
            return Ok(BigInt::from(1));
        }
        // top level streams; only strictly smaller forests are materialized
        for m in 1..=n {
            for t in 0..=n - m {
                let subtrees = memo.forests(t);
                let rests = memo.forests(n - m - t);
                for sub in subtrees.iter() {
                    let child = MultiEdgeTree::from_links_unchecked(sub.clone());
                    for rest in rests.iter() {
                        let mut links = Vec::with_capacity(rest.len() + 1);
                        links.push(Link {
                            multiplicity: m as u32,
                            child: child.clone(),
                        });
                        links.extend(rest.iter().cloned());
                        visit(&MultiEdgeTree::from_links_unchecked(links));
                        count += 1;
                    }
                }
            }
        }
        Ok(BigInt::from(count))
    }

    /// Visits every d-ary multi-edge tree with `n_vertices` vertices.
    pub fn dary_multi<F>(
        &self,
        d: u32,
        n_vertices: usize,
        mut visit: F,
    ) -> Result<BigInt, TreeError>
    where
        F: FnMut(&DAryMultiEdgeTree),
    {
        if d == 0 {
            return Err(TreeError::ZeroDegree);
        }
        self.guard(n_vertices)?;
        if n_vertices == 0 {
            return Ok(BigInt::from(0));
        }
        let mut memo = BoundedForests::new(d);
        let remaining = n_vertices - 1;
        if remaining == 0 {
            visit(&DAryMultiEdgeTree::new_unchecked(MultiEdgeTree::leaf(), d));
            return Ok(BigInt::from(1));
        }
        let mut count = 0u64;
        for m in 1..=d {
            for tv in 1..=remaining {
                let subtrees = memo.forests(tv - 1, d);
                let rests = memo.forests(remaining - tv, d - m);
                for sub in subtrees.iter() {
                    let child = MultiEdgeTree::from_links_unchecked(sub.clone());
                    for rest in rests.iter() {
                        let mut links = Vec::with_capacity(rest.len() + 1);
                        links.push(Link {
                            multiplicity: m,
                            child: child.clone(),
                        });
                        links.extend(rest.iter().cloned());
                        let tree = MultiEdgeTree::from_links_unchecked(links);
                        visit(&DAryMultiEdgeTree::new_unchecked(tree, d));
                        count += 1;
                    }
                }
            }
        }
        Ok(BigInt::from(count))
    }

    /// Visits every pruned d-ary tree with `n_vertices` vertices.
    pub fn dary<F>(&self, d: u32, n_vertices: usize, mut visit: F) -> Result<BigInt, TreeError>
    where
        F: FnMut(&DAryTree),
    {
        if d == 0 {
            return Err(TreeError::ZeroDegree);
        }
        self.guard(n_vertices)?;
        if n_vertices == 0 {
            return Ok(BigInt::from(0));
        }
        let mut memo = PositionedForests::new(d);
        let remaining = n_vertices - 1;
        if remaining == 0 {
            visit(&DAryTree::new_unchecked(DAryNode::leaf(), d));
            return Ok(BigInt::from(1));
        }
        let mut count = 0u64;
        for p in 1..=d {
            for tv in 1..=remaining {
                let subtrees = memo.forests(tv - 1, 1);
                let rests = memo.forests(remaining - tv, p + 1);
                for sub in subtrees.iter() {
                    let child = DAryNode::from_slots_unchecked(sub.clone());
                    for rest in rests.iter() {
                        let mut slots = Vec::with_capacity(rest.len() + 1);
                        slots.push(Slot {
                            position: p,
                            child: child.clone(),
                        });
                        slots.extend(rest.iter().cloned());
                        visit(&DAryTree::new_unchecked(
                            DAryNode::from_slots_unchecked(slots),
                            d,
                        ));
                        count += 1;
                    }
                }
            }
        }
        Ok(BigInt::from(count))
    }
}

pub fn enumerate_multi_edge<F>(n: usize, visit: F) -> Result<BigInt, TreeError>
where
    F: FnMut(&MultiEdgeTree),
{
    Enumerator::default().multi_edge(n, visit)
}

pub fn enumerate_dary_multi<F>(d: u32, n_vertices: usize, visit: F) -> Result<BigInt, TreeError>
where
    F: FnMut(&DAryMultiEdgeTree),
{
    Enumerator::default().dary_multi(d, n_vertices, visit)
}

pub fn enumerate_dary<F>(d: u32, n_vertices: usize, visit: F) -> Result<BigInt, TreeError>
where
    F: FnMut(&DAryTree),
{
    Enumerator::default().dary(d, n_vertices, visit)
}

type Forests<L> = Rc<Vec<Vec<L>>>;

/// Forests of multi-edge trees keyed by total edge count.
#[derive(Default)]
struct MultiForests {
    memo: HashMap<usize, Forests<Link>>,
}

impl MultiForests {
    fn forests(&mut self, size: usize) -> Forests<Link> {
        if let Some(f) = self.memo.get(&size) {
            return Rc::clone(f);
        }
        let mut out = Vec::new();
        if size == 0 {
            out.push(Vec::new());
        } else {
            for m in 1..=size {
                for t in 0..=size - m {
                    let subtrees = self.forests(t);
                    let rests = self.forests(size - m - t);
                    for sub in subtrees.iter() {
                        let child = MultiEdgeTree::from_links_unchecked(sub.clone());
                        for rest in rests.iter() {
                            let mut links = Vec::with_capacity(rest.len() + 1);
                            links.push(Link {
                                multiplicity: m as u32,
                                child: child.clone(),
                            });
                            links.extend(rest.iter().cloned());
                            out.push(links);
                        }
                    }
                }
            }
        }
        let out = Rc::new(out);
        self.memo.insert(size, Rc::clone(&out));
        out
    }
}

/// Forests keyed by (vertex count, remaining multiplicity budget).
struct BoundedForests {
    d: u32,
    memo: HashMap<(usize, u32), Forests<Link>>,
}

impl BoundedForests {
    fn new(d: u32) -> Self {
        Self {
            d,
            memo: HashMap::new(),
        }
    }

    fn forests(&mut self, vertices: usize, budget: u32) -> Forests<Link> {
        if let Some(f) = self.memo.get(&(vertices, budget)) {
            return Rc::clone(f);
        }
        let mut out = Vec::new();
        if vertices == 0 {
            out.push(Vec::new());
        } else {
            for m in 1..=budget {
                for tv in 1..=vertices {
                    let subtrees = self.forests(tv - 1, self.d);
                    let rests = self.forests(vertices - tv, budget - m);
                    for sub in subtrees.iter() {
                        let child = MultiEdgeTree::from_links_unchecked(sub.clone());
                        for rest in rests.iter() {
                            let mut links = Vec::with_capacity(rest.len() + 1);
                            links.push(Link {
                                multiplicity: m,
                                child: child.clone(),
                            });
                            links.extend(rest.iter().cloned());
                            out.push(links);
                        }
                    }
                }
            }
        }
        let out = Rc::new(out);
        self.memo.insert((vertices, budget), Rc::clone(&out));
        out
    }
}

/// Forests keyed by (vertex count, first admissible position).
struct PositionedForests {
    d: u32,
    memo: HashMap<(usize, u32), Forests<Slot>>,
}

impl PositionedForests {
    fn new(d: u32) -> Self {
        Self {
            d,
            memo: HashMap::new(),
        }
    }

    fn forests(&mut self, vertices: usize, from: u32) -> Forests<Slot> {
        if let Some(f) = self.memo.get(&(vertices, from)) {
            return Rc::clone(f);
        }
        let mut out = Vec::new();
        if vertices == 0 {
            out.push(Vec::new());
        } else {
            for p in from..=self.d {
                for tv in 1..=vertices {
                    let subtrees = self.forests(tv - 1, 1);
                    let rests = self.forests(vertices - tv, p + 1);
                    for sub in subtrees.iter() {
                        let child = DAryNode::from_slots_unchecked(sub.clone());
                        for rest in rests.iter() {
                            let mut slots = Vec::with_capacity(rest.len() + 1);
                            slots.push(Slot {
                                position: p,
                                child: child.clone(),
                            });
                            slots.extend(rest.iter().cloned());
                            out.push(slots);
                        }
                    }
                }
            }
        }
        let out = Rc::new(out);
        self.memo.insert((vertices, from), Rc::clone(&out));
        out
    }
}
