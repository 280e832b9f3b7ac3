//! Exact uniform sampling of multi-edge trees with a given number of edges.
//!
//! A tree of size `n` with `k` vertices is a plane tree on `k` vertices plus a
//! composition of `n` into `k - 1` parts, one part per link in preorder. So a
//! uniform tree is drawn in three steps: `k` from the exact vertex-count
//! distribution, a uniform plane tree (cycle lemma), a uniform composition.
//!
//! Randomness comes from ChaCha8, whose output stream is fixed for a given
//! seed on every platform.

use num_bigint::{BigInt, RandBigInt};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::counting::count_vertices_eq;
use crate::trees::{Link, MultiEdgeTree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SamplerError {
    #[error("a plane tree needs at least one vertex")]
    NoVertices,
    #[error("cannot split {n} into {parts} positive parts")]
    InvalidParts { n: u64, parts: usize },
}

/// Repeated uniform draws of size-`n` trees from one seeded stream.
#[derive(Debug, Clone)]
pub struct Sampler {
    n: usize,
    rng: ChaCha8Rng,
    /// `(k, number of trees with at most k vertices)`, increasing.
    cumulative: Vec<(usize, BigInt)>,
}

impl Sampler {
    pub fn new(n: usize, seed: u64) -> Self {
        let mut acc = BigInt::zero();
        let cumulative = (1..=n + 1)
            .filter_map(|k| {
                let c = count_vertices_eq(n, k);
                if c.is_zero() {
                    return None;
                }
                acc += c;
                Some((k, acc.clone()))
            })
            .collect();
        Self {
            n,
            rng: ChaCha8Rng::seed_from_u64(seed),
            cumulative,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of vertices, drawn with probability `count_vertices_eq(n, k) / A_n`.
    fn draw_vertex_count(&mut self) -> usize {
        let total = &self.cumulative.last().expect("A_n >= 1").1;
        let r = self.rng.gen_bigint_range(&BigInt::zero(), total);
        let idx = self.cumulative.partition_point(|(_, c)| c <= &r);
        self.cumulative[idx].0
    }

    pub fn sample(&mut self) -> MultiEdgeTree {
        let k = self.draw_vertex_count();
        if k == 1 {
            return MultiEdgeTree::leaf();
        }
        let word = random_dyck_word(k, &mut self.rng);
        let parts = sample_composition(self.n as u64, k - 1, &mut self.rng)
            .expect("2 <= k <= n + 1 for n >= 1");
        build_from_dyck(&word, &parts)
    }
}

/// A uniform tree with `n` edges, determined by `seed`.
pub fn sample_tree(n: usize, seed: u64) -> MultiEdgeTree {
    Sampler::new(n, seed).sample()
}

/// A uniform plane tree with `k` vertices; every multiplicity is 1.
pub fn sample_plane_tree<R: Rng + ?Sized>(
    k: usize,
    rng: &mut R,
) -> Result<MultiEdgeTree, SamplerError> {
    if k == 0 {
        return Err(SamplerError::NoVertices);
    }
    let word = random_dyck_word(k, rng);
    Ok(build_from_dyck(&word, &vec![1; k - 1]))
}

/// A uniform composition of `n` into `parts` positive parts.
pub fn sample_composition<R: Rng + ?Sized>(
    n: u64,
    parts: usize,
    rng: &mut R,
) -> Result<Vec<u64>, SamplerError> {
    if parts == 0 || parts as u64 > n {
        return Err(SamplerError::InvalidParts { n, parts });
    }
    // cut points: a uniform (parts - 1)-subset of 1..n
    let mut cuts: Vec<u64> = rand::seq::index::sample(rng, (n - 1) as usize, parts - 1)
        .into_iter()
        .map(|i| i as u64 + 1)
        .collect();
    cuts.sort_unstable();
    let mut prev = 0;
    let mut out = Vec::with_capacity(parts);
    for c in cuts.into_iter().chain(std::iter::once(n)) {
        out.push(c - prev);
        prev = c;
    }
    Ok(out)
}

/// Uniform Dyck word of semilength `k - 1` (`true` = up).
///
/// Shuffle `k - 1` ups and `k` downs; exactly one cyclic rotation of the
/// result stays nonnegative until its final step (the cycle lemma), namely
/// the one starting right after the first minimum of the prefix sums.
/// Dropping that final down step leaves the Dyck word.
fn random_dyck_word<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<bool> {
    let len = 2 * k - 1;
    let mut steps: Vec<bool> = (0..len).map(|i| i < k - 1).collect();
    steps.shuffle(rng);
    let mut sum = 0i64;
    let mut min = i64::MAX;
    let mut argmin = 0;
    for (i, &up) in steps.iter().enumerate() {
        sum += if up { 1 } else { -1 };
        if sum < min {
            min = sum;
            argmin = i;
        }
    }
    let start = (argmin + 1) % len;
    let mut word: Vec<bool> = steps[start..]
        .iter()
        .chain(&steps[..start])
        .copied()
        .collect();
    let last = word.pop();
    debug_assert_eq!(last, Some(false));
    word
}

/// Builds the tree of a Dyck word, giving the `i`-th link in preorder
/// multiplicity `mults[i]`.
fn build_from_dyck(word: &[bool], mults: &[u64]) -> MultiEdgeTree {
    let mut stack: Vec<(usize, Vec<Link>)> = vec![(usize::MAX, Vec::new())];
    let mut next_edge = 0;
    for &up in word {
        if up {
            stack.push((next_edge, Vec::new()));
            next_edge += 1;
        } else {
            let (edge, links) = stack.pop().expect("balanced word");
            let child = MultiEdgeTree::from_links_unchecked(links);
            stack.last_mut().expect("balanced word").1.push(Link {
                multiplicity: mults[edge] as u32,
                child,
            });
        }
    }
    debug_assert_eq!(next_edge, mults.len());
    let (_, root) = stack.pop().expect("root frame");
    MultiEdgeTree::from_links_unchecked(root)
}
