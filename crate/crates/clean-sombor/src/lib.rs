//! Clean graphs of ℤ_n and their exact Sombor indices.
//!
//! The clean graph of a ring pairs idempotents with units: vertices are
//! `(e, u)` and distinct vertices are adjacent iff `e·f ≡ 0` or `u·v ≡ 1`.
//! This crate builds that graph (and its induced subgraph on nonzero
//! idempotents) explicitly over ℤ_n, computes the Sombor index
//! `Σ √(deg(u)² + deg(v)²)` exactly in the ring of radical sums, evaluates
//! the matching closed-form expressions, and measures whether graph and
//! formula agree — with every comparison done in exact arithmetic, so a
//! mismatch is a mathematical fact rather than a rounding artifact.
//!
//! Modules:
//! - [`ring`]: factorization, totient, idempotents, units of ℤ_n.
//! - [`radical`]: exact sums `Σ cᵢ√dᵢ` in squarefree canonical form.
//! - [`graph`]: explicit clean-graph construction, degrees, partitions.
//! - [`sombor`]: the brute-force edge-summation oracle.
//! - [`formula`]: the closed-form evaluators and their dispatcher.
//! - [`report`]: per-`n` verification reports and range sweeps.
//! - [`export`]: deterministic DOT/JSON graph renderings.

pub mod export;
pub mod formula;
pub mod graph;
pub mod radical;
pub mod report;
pub mod ring;
pub mod sombor;

pub use graph::{CleanGraph, CleanVertex, Variant, DEFAULT_VERTEX_CAP};
pub use radical::{ParseRadicalError, RadicalSum};
pub use report::{RangeFilter, VerificationReport};
pub use ring::{ResidueRing, UnitClassification};

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("n must be at least {min} (got {n})")]
    ModulusTooSmall { n: u64, min: u64 },
    #[error(
        "the graph for n={n} would have {vertices} vertices, over the cap of {cap}; \
         raise --max-vertices or CLEAN_SOMBOR_MAX_VERTICES to allow it"
    )]
    VertexCapExceeded { n: u64, vertices: u64, cap: u64 },
    #[error("n={n} is too large for exact closed-form evaluation (limit {max})")]
    FormulaRangeExceeded { n: u64, max: u64 },
}
