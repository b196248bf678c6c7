//! The distinguished transverse cycle of a braid closure: the oriented
//! smoothing (1 at negative letters, 0 at positive) with every circle
//! labeled minus except the marked meridian. Built in the reduced theory
//! with the meridian pair added, it is a cycle sitting alone at the bottom
//! annular level, and its level is pinned by the strand count alone.

use annular_diagram::braid::braid_closure;
use annular_f2::matrix::{rank_and_solve, Solve};
use annular_skein::{build, BuildOptions, Mode};

use crate::InvariantError;

/// Everything the transverse-cycle checks observe, shifted gradings
/// included. `checks_pass` summarizes the boolean fields.
#[derive(Clone, Debug)]
pub struct PsiReport {
    pub strands: u32,
    pub word: Vec<i32>,
    /// Smoothing mask of the oriented resolution.
    pub mask: u64,
    /// Generator id in both assembled complexes.
    pub id: u32,
    /// Shifted (i, j, k) of the cycle.
    pub position: (i32, i32, i32),
    /// 1 - (strands + 2): the predicted annular level.
    pub expected_k: i32,
    pub k_matches: bool,
    /// Closed under the full differential.
    pub cycle_full: bool,
    /// Closed under the annular differential alone.
    pub cycle_annular: bool,
    /// The only chain generator at its annular level.
    pub unique_at_level: bool,
    /// Its level is the least over the whole complex.
    pub bottom_level: bool,
    /// The annular homology at the bottom level has rank one and the
    /// cycle represents it (it is not a boundary).
    pub generates_bottom_homology: bool,
}

impl PsiReport {
    pub fn checks_pass(&self) -> bool {
        self.k_matches
            && self.cycle_full
            && self.cycle_annular
            && self.unique_at_level
            && self.bottom_level
            && self.generates_bottom_homology
    }
}

pub fn plamenevskaya(strands: u32, word: &[i32]) -> Result<PsiReport, InvariantError> {
    let d = braid_closure(strands, word)?;
    let options = BuildOptions {
        reduced: true,
        meridians: true,
        ..BuildOptions::default()
    };
    let annular = build(
        &d,
        BuildOptions {
            mode: Mode::Skein,
            ..options
        },
    )?;
    let full = build(
        &d,
        BuildOptions {
            mode: Mode::Khovanov,
            ..options
        },
    )?;

    let mut mask = 0u64;
    for (c, &letter) in word.iter().enumerate() {
        if letter < 0 {
            mask |= 1 << c;
        }
    }
    let id = annular.states.id(mask, 1);
    let gen = full.complex.gen(id);
    let position = (gen.hdeg, gen.key[0], gen.key[1]);
    let k = position.2;
    let expected_k = 1 - (strands as i32 + 2);

    let levels: Vec<i32> = full.complex.gens().map(|(_, g)| g.key[1]).collect();
    let min_level = levels.iter().copied().min().unwrap_or(k);
    let at_level = levels.iter().filter(|&&l| l == k).count();

    let homology = annular.complex.homology_table([true, true, false])?;
    let bottom_rank: usize = homology
        .iter()
        .filter(|&(&(_, key), _)| key[1] == k)
        .map(|(_, &r)| r)
        .sum();

    let block = annular
        .complex
        .gens_where(|g| g.hdeg == position.0 && g.key == gen.key);
    let prev = annular
        .complex
        .gens_where(|g| g.hdeg == position.0 - 1 && g.key == gen.key);
    let z: Vec<u32> = block
        .iter()
        .position(|&g| g == id)
        .map(|p| vec![p as u32])
        .ok_or_else(|| InvariantError::Internal("cycle missing from its own block".into()))?;
    let m_in = annular.complex.matrix_between(&prev, &block);
    let solved = rank_and_solve(&m_in, std::slice::from_ref(&z));
    let not_boundary = matches!(solved.solves[0], Solve::NotInImage(_));
    let cycle_full = full.complex.out_edges(id).next().is_none();
    let cycle_annular = annular.complex.out_edges(id).next().is_none();

    Ok(PsiReport {
        strands,
        word: word.to_vec(),
        mask,
        id,
        position,
        expected_k,
        k_matches: k == expected_k,
        cycle_full,
        cycle_annular,
        unique_at_level: at_level == 1,
        bottom_level: k == min_level,
        generates_bottom_homology: bottom_rank == 1 && not_boundary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_stabilized_unknot_cycle_sits_at_minus_three() {
        let report = plamenevskaya(2, &[1]).unwrap();
        assert_eq!(report.position.2, -3);
        assert!(report.checks_pass());
    }

    #[test]
    fn negative_letter_flips_into_the_oriented_mask() {
        let report = plamenevskaya(2, &[-1]).unwrap();
        assert_eq!(report.mask, 1);
        assert!(report.checks_pass());
    }

    #[test]
    fn three_strand_level_tracks_the_strand_count() {
        let report = plamenevskaya(3, &[1, -2]).unwrap();
        assert_eq!(report.expected_k, -4);
        assert!(report.checks_pass());
    }
}
