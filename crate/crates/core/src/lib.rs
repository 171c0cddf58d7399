//! Degree sequences of sparse `t`-uniform hypergraphs.
//!
//! The crate realizes sequences in the tractable sparse regime, builds the
//! gadget reductions used on the hard side, performs hinge-flip surgery, and
//! ships an exhaustive oracle for small instances that all of the above is
//! checked against.

pub mod combinatorics;
pub mod experiment;
pub mod exponent;
pub mod flips;
pub mod hypergraph;
pub mod io;
pub mod lbds;
pub mod linear;
pub mod oracle;
pub mod params;
pub mod realize;
pub mod reduction;
pub mod sequence;

pub use exponent::{power_bound_ceil, power_bound_floor, Exponent};
pub use hypergraph::{degrees_of, verify_realization, Edge, UniformHypergraph};
pub use params::{classify_regime, validate_instance, RegimeLabel, SparseParams};
pub use sequence::{divisible_by_t, DegreeSequence};
