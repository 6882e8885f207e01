//! Exact-arithmetic laboratory for the Schmidt-rank vectors of multipartite
//! pure states.
//!
//! Everything that decides an inequality or a rank runs over exact fields:
//! Gaussian rationals for states and matrices, arbitrary-precision integer
//! products for 0-entropy inequalities, `BigInt` vectors for polyhedral cone
//! enumeration, and prime fields for fast search prescreens. Floating point
//! appears in exactly one place, the von Neumann entropy cross-checks, and is
//! never used to decide anything.
//!
//! Module map:
//! - [`scalar`], [`matrix`], [`modp`], [`column_prefix`]: the arithmetic core.
//! - [`state`], [`named`]: sparse pure states, matricization, the state
//!   gallery, rank-triple realization.
//! - [`bipartition`], [`rankvec`]: canonical bipartition order, rank vectors,
//!   entropy cross-checks.
//! - [`inequality`]: 0-entropy inequality families and exact audits.
//! - [`cone`]: double description between halfspace and ray representations,
//!   orbit families, facet gaps.
//! - [`hypothesis`]: exhaustive and randomized searches for counterexamples
//!   to the open rank inequality, with exact certification.
//! - [`classical`]: support-size analogue and the purification bridge.

pub mod bipartition;
pub mod classical;
pub mod column_prefix;
pub mod cone;
pub mod error;
pub mod hypothesis;
pub mod inequality;
pub mod matrix;
pub mod modp;
pub mod named;
pub mod parallel;
pub mod rankvec;
pub mod scalar;
pub mod state;

pub use bipartition::{canonical_bipartitions, BipartitionIndex};
pub use column_prefix::independent_column_prefix;
pub use error::{Error, Result};
pub use inequality::{
    audit_state, instantiate_family, known_set, FamilyTemplate, RankInequality,
};
pub use matrix::ExactMatrix;
pub use modp::PrimeFieldMatrix;
pub use named::{named_state, tripartite_with_ranks};
pub use rankvec::{rank_vector, renyi_entropy, RankVector};
pub use scalar::GaussianRational;
pub use state::{PartyGrouping, PureState};
