//! Link invariants computed from the annular complex: homology rank
//! tables, the filtration spectral sequence, Euler polynomials, the
//! transverse cycle, filtration values of distinguished classes, support
//! diagnostics for alternating diagrams, spanning-tree leaves, and the
//! deterministic randomized suites the command line exposes.

use std::collections::BTreeMap;

use annular_diagram::DiagramError;
use annular_f2::F2Error;
use annular_skein::SkeinError;
use thiserror::Error;

pub mod corpus;
pub mod euler;
pub mod homology;
pub mod psi;
pub mod render;
pub mod spanning;
pub mod suites;
pub mod support;
pub mod tensor;
pub mod tvalue;

/// Homology ranks keyed by the full grading triple (i, j, k).
pub type Ranks = BTreeMap<(i32, i32, i32), usize>;

/// Homology ranks keyed by (i, j) once the annular grading is forgotten.
pub type BiRanks = BTreeMap<(i32, i32), usize>;

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Linear(#[from] F2Error),
    #[error(transparent)]
    Skein(#[from] SkeinError),
    #[error("homology at (i, j) = ({i}, {j}) has rank {found}, expected {expected}")]
    ClassRank {
        i: i32,
        j: i32,
        found: usize,
        expected: usize,
    },
    #[error("operation needs a connected diagram")]
    SplitInput,
    #[error("polynomial is not divisible by the winding-circle factor")]
    NotDivisible,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub use euler::{euler_from_homology, euler_statesum, Laurent3};
pub use homology::{khovanov_homology, khovanov_table, skein_homology, skein_table};
pub use psi::{plamenevskaya, PsiReport};
pub use spanning::{spanning_leaves, spanning_report, SpanningLeaf, SpanningReport};
pub use support::{check_alternating_support, is_alternating, SupportReport};
pub use tensor::{convolve, split_union_check, UnionReport};
pub use tvalue::{class_cycle, hit_rank, t_value, unknot_t_values};
