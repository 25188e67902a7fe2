//! Numeric structure recovery for uninorms with continuous underlying
//! operations: sections and their jumps, idempotent points, the
//! characterizing multi-function, decomposition into an extended ordinal
//! sum, and grid-based verification.

mod axioms;
mod decompose;
mod idempotents;
mod multifunction;
mod sections;
mod verify;

pub use axioms::{check_axioms, format_sig, Axiom, AxiomOutcome, AxiomReport};
pub use decompose::{
    decompose, decompose_with_tol, ClassificationSets, DecompositionResult, SummandKind,
    DECOMPOSE_GRID, DECOMPOSE_TOL,
};
pub use idempotents::{find_idempotents, is_idempotent, IdempotentSet, IDEMPOTENT_TOL};
pub use multifunction::{extract_multifunction, MultiFunctionGraph, Segment, SegmentKind};
pub use sections::{
    section_crossing, section_discontinuity, Crossing, JUMP_BRACKET, JUMP_THRESHOLD,
};
pub use verify::{verify_pointwise, PointwiseReport};

/// Bisection stops once its bracket is this narrow.
pub(crate) const BISECTION_WIDTH: f64 = 1e-12;

/// Breakpoints recovered by bisection within this distance of a grid point
/// or of each other are identified.
pub(crate) const SNAP_TOL: f64 = 1e-6;
