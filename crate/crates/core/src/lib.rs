//! Centered Hardy–Littlewood maximal operator on finite connected graphs.
//!
//! `M_G f(v)` is the largest average of `|f|` over the balls centered at `v` in the
//! shortest-path metric. The crate evaluates it exactly or in floating point, computes
//! its `ℓ^p` operator norms (exact for `0 < p <= 1`, certified lower bounds above),
//! restricted-type and weak-type norms, the dilation and overlapping indices, and
//! drives exhaustive checks over all small connected graphs.

pub mod cli;
pub mod covering;
pub mod error;
pub mod exact;
pub mod function;
pub mod graph;
pub mod maximal;
pub mod number;
pub mod numeric;
mod perm;
pub mod report;

pub use error::{Error, Result};
pub use graph::{named_graph, Ball, Family, Graph};
pub use number::{Exponent, Number};
