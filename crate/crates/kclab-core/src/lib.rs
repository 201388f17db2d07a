//! Exact k-Center laboratory core.
//!
//! Everything here works on exact nonnegative rationals: weighted graphs and
//! their shortest-path metrics ([`graph`]), Grid Tiling with Inequality
//! instances ([`gridtiling`]), the planar k-Center hardness construction built
//! from them ([`reduction`]), exact and approximate k-Center solvers
//! ([`kcenter`]) and builders/validators for the structural properties of the
//! constructed graphs ([`structure`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bitset;
pub mod graph;
pub mod gridtiling;
pub mod kcenter;
pub mod rational;
pub mod reduction;
pub mod setcover;
pub mod structure;

pub use graph::{Distance, GraphError, Metric, WeightedGraph};
pub use gridtiling::{GtAssignment, GtError, GtInstance};
pub use kcenter::{CenterSet, KCenterError, Net, SolveOutcome, SolveStatus};
pub use rational::{ParseRationalError, RationalLength};
pub use reduction::{LabelMap, ReductionError, ReductionInstance, StructureError, VertexRole};
