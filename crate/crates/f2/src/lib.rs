//! Linear algebra, cochain complexes and filtered reduction over GF(2).
//!
//! This crate is the computational substrate for the rest of the workspace:
//!
//! * [`matrix`]: sparse matrices with deterministic elimination, solve
//!   queries answered by a preimage or a cokernel certificate;
//! * [`complex`]: finitely generated cochain complexes whose generators carry
//!   a homological degree and a three-slot grading key, with homology by rank
//!   counting per graded block;
//! * [`reduce`]: elementary (Gaussian) cancellation ordered by filtration
//!   jump, giving spectral sequence pages, bifiltered reduction and an
//!   independent homology route;
//! * [`cone`]: mapping cones of chain maps and explicit page-1 complexes
//!   with induced page-1 maps, built from representative cycles;
//! * [`random`]: seeded random filtered complexes and strictly filtered
//!   chain maps for property tests.
//!
//! Everything is exact; there are no tolerances anywhere.

pub mod bits;
pub mod complex;
pub mod cone;
pub mod matrix;
pub mod random;
pub mod reduce;

use thiserror::Error;

/// Structural violations detected by validation.
#[derive(Debug, Error)]
pub enum F2Error {
    #[error("edge {src} -> {tgt} does not raise homological degree by 1")]
    BadDegreeStep { src: u32, tgt: u32 },

    #[error("d^2 != 0 at generator {gen}")]
    DSquare { gen: u32 },

    #[error("edge {src} -> {tgt} raises filtration slot {coord}")]
    FiltrationRaised { src: u32, tgt: u32, coord: usize },

    #[error("edge {src} -> {tgt} crosses between grading blocks that the differential must preserve")]
    GroupingViolated { src: u32, tgt: u32 },

    #[error("edge {src} -> {tgt} has filtration jump {jump}, not a multiple of the page step {step}")]
    JumpNotMultiple {
        src: u32,
        tgt: u32,
        jump: i32,
        step: i32,
    },

    #[error("cone arrow {src} -> {tgt} does not raise homological degree by 1")]
    ConeArrowDegree { src: u32, tgt: u32 },

    #[error("arrow {src} -> {tgt} drops the filtration by {jump}, less than the required {step}")]
    ArrowJumpTooSmall {
        src: u32,
        tgt: u32,
        jump: i32,
        step: i32,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
