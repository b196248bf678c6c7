//! Chain complexes of enhanced states for links in the thickened annulus.
//!
//! A complete smoothing of a diagram leaves a family of circles, each
//! trivial or non-trivial around the axis; an enhanced state adds a + or -
//! label per circle. This crate enumerates those states, grades them by
//! smoothing weight, quantum degree, and the signed non-trivial label
//! count, and assembles the differential in two flavors: the skein
//! differential, which preserves the annular grading, and the full
//! Khovanov differential, which also carries the terms dropping it by two.

pub mod build;
pub mod plain;
pub mod rules;

pub use build::{
    apply_final_shift, assemble_differential, build, enumerate_states, BuildOptions,
    EnhancedState, ResolutionPlan, Shift, SkeinComplex, StateSet, DEFAULT_CAP,
};

use annular_diagram::DiagramError;
use annular_f2::F2Error;
use thiserror::Error;

/// Which differential to assemble.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Only the terms preserving the annular grading.
    Skein,
    /// The ordinary Khovanov differential.
    Khovanov,
}

#[derive(Debug, Error)]
pub enum SkeinError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    F2(#[from] F2Error),
    #[error("reduced mode needs a marked arc or circle")]
    MissingMark,
    #[error("the final shift was already applied")]
    AlreadyShifted,
    #[error("state count {states} exceeds the generator id space")]
    TooManyStates { states: u64 },
}
