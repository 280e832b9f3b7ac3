//! Plane rooted multi-edge trees: exact counting by size, height and number
//! of vertices, the bijection with pruned d-ary trees, uniform sampling, and
//! numerical checks of the asymptotic height and vertex laws.
//!
//! A multi-edge tree is a plane rooted tree whose links carry a positive
//! multiplicity; its size is the sum of all multiplicities.

pub mod asymptotics;
pub mod bijection;
pub mod counting;
pub mod numeric;
pub mod sampler;
pub mod series;
pub mod trees;

pub use bijection::{from_dary, to_dary};
pub use counting::{a_n, a_sequence, HeightCountTable, VertexCountTable};
pub use sampler::{sample_tree, Sampler};
pub use series::TruncatedSeries;
pub use trees::{DAryMultiEdgeTree, DAryTree, Enumerator, MultiEdgeTree, TreeStats};
