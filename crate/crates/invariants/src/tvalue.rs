//! Filtration values of distinguished homology classes. The value of a
//! class is the least annular level whose subcomplex already carries a
//! cycle representing it, found by solving membership of a fixed cycle in
//! the span of level-bounded kernels and boundaries.

use annular_f2::complex::GradedComplexF2;
use annular_f2::matrix::{rank_and_solve, Solve, SparseMatrixF2};

use crate::InvariantError;

/// The three generator blocks the class at (i, j) interacts with, in the
/// grading slot the full differential preserves.
struct Blocks {
    prev: Vec<u32>,
    here: Vec<u32>,
    next: Vec<u32>,
}

fn blocks(cx: &GradedComplexF2, i: i32, j: i32) -> Blocks {
    Blocks {
        prev: cx.gens_where(|g| g.hdeg == i - 1 && g.key[0] == j),
        here: cx.gens_where(|g| g.hdeg == i && g.key[0] == j),
        next: cx.gens_where(|g| g.hdeg == i + 1 && g.key[0] == j),
    }
}

/// Cycle representing the unique homology class at (i, j), as a support
/// vector over block-local positions, together with the block.
fn cycle_in_block(
    cx: &GradedComplexF2,
    i: i32,
    j: i32,
) -> Result<(Vec<u32>, Blocks), InvariantError> {
    let b = blocks(cx, i, j);
    let m_out = cx.matrix_between(&b.here, &b.next);
    let m_in = cx.matrix_between(&b.prev, &b.here);
    let kernel = m_out.kernel_basis();
    let in_rank = m_in.rank();
    let h = kernel.len().saturating_sub(in_rank);
    if h != 1 {
        return Err(InvariantError::ClassRank {
            i,
            j,
            found: h,
            expected: 1,
        });
    }
    let solved = rank_and_solve(&m_in, &kernel);
    for (v, s) in kernel.iter().zip(&solved.solves) {
        if matches!(s, Solve::NotInImage(_)) {
            return Ok((v.clone(), b));
        }
    }
    Err(InvariantError::Internal(
        "kernel exceeded the image but every basis vector solved".into(),
    ))
}

/// Generator ids of a cycle representing the rank-one class at (i, j).
pub fn class_cycle(
    cx: &GradedComplexF2,
    i: i32,
    j: i32,
) -> Result<Vec<u32>, InvariantError> {
    let (cycle, b) = cycle_in_block(cx, i, j)?;
    Ok(cycle.iter().map(|&p| b.here[p as usize]).collect())
}

/// Kernel of the outgoing differential restricted to the generators of
/// `here` whose annular level is at most `k`, expressed in block-local
/// coordinates of the full `here` block.
fn level_kernel(
    cx: &GradedComplexF2,
    b: &Blocks,
    k: i32,
) -> Vec<Vec<u32>> {
    let mut sub = Vec::new();
    let mut positions = Vec::new();
    for (pos, &g) in b.here.iter().enumerate() {
        if cx.gen(g).key[1] <= k {
            sub.push(g);
            positions.push(pos as u32);
        }
    }
    let m_sub = cx.matrix_between(&sub, &b.next);
    m_sub
        .kernel_basis()
        .into_iter()
        .map(|v| v.into_iter().map(|p| positions[p as usize]).collect())
        .collect()
}

/// Columns spanning the boundaries landing in the block, block-local.
fn image_columns(cx: &GradedComplexF2, b: &Blocks) -> Vec<Vec<u32>> {
    let m_in = cx.matrix_between(&b.prev, &b.here);
    (0..b.prev.len()).map(|c| m_in.column(c).to_vec()).collect()
}

/// Least annular level k such that the rank-one class at (i, j) is hit by
/// the homology of the level-at-most-k subcomplex: the fixed representing
/// cycle must lie in the span of level-bounded cycles and boundaries.
pub fn t_value(cx: &GradedComplexF2, i: i32, j: i32) -> Result<i32, InvariantError> {
    let (z, b) = cycle_in_block(cx, i, j)?;
    let image = image_columns(cx, &b);
    let mut levels: Vec<i32> = b.here.iter().map(|&g| cx.gen(g).key[1]).collect();
    levels.sort_unstable();
    levels.dedup();
    for k in levels {
        let mut cols = level_kernel(cx, &b, k);
        cols.extend(image.iter().cloned());
        let m = SparseMatrixF2::from_columns(b.here.len(), cols);
        let solved = rank_and_solve(&m, std::slice::from_ref(&z));
        if matches!(solved.solves[0], Solve::Preimage(_)) {
            return Ok(k);
        }
    }
    Err(InvariantError::Internal(
        "class not reached at the top level, which contains every cycle".into(),
    ))
}

/// Rank of the image of the homology of the level-at-most-k subcomplex
/// inside the homology at (i, j): generalizes [`t_value`] to blocks of
/// rank above one.
pub fn hit_rank(
    cx: &GradedComplexF2,
    i: i32,
    j: i32,
    k: i32,
) -> Result<usize, InvariantError> {
    let b = blocks(cx, i, j);
    let image = image_columns(cx, &b);
    let image_rank = SparseMatrixF2::from_columns(b.here.len(), image.clone()).rank();
    let mut cols = level_kernel(cx, &b, k);
    cols.extend(image);
    let joint = SparseMatrixF2::from_columns(b.here.len(), cols).rank();
    Ok(joint - image_rank)
}

/// Filtration values of the two rank-one classes of a one-component
/// crossingless-or-twisted unknot table, at (i, j) = (0, 1) and (0, -1).
pub fn unknot_t_values(cx: &GradedComplexF2) -> Result<(i32, i32), InvariantError> {
    Ok((t_value(cx, 0, 1)?, t_value(cx, 0, -1)?))
}
