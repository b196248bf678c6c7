//! Deterministic input generators for the randomized suites: seeded braid
//! closures, twisted unknots made of stacked curls, move-equivalent
//! diagram pairs, and the fixed alternating word list.

use annular_diagram::braid::braid_closure;
use annular_diagram::surgery::{add_meridian_pair, insert_kink};
use annular_diagram::AnnularDiagram;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use annular_f2::random::rng;

use crate::InvariantError;

/// Random braid word: strands in 2..=max_strands, letters nonzero with
/// absolute value below the strand count.
pub fn random_word(rng: &mut ChaCha8Rng, max_strands: u32, max_len: usize) -> (u32, Vec<i32>) {
    let strands = rng.gen_range(2..=max_strands);
    let len = rng.gen_range(1..=max_len);
    let word = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands) as i32;
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    (strands, word)
}

/// Random braid closure, one time in four with the meridian pair stacked
/// inside so the corpus also exercises marked winding circles.
pub fn random_closure(
    rng: &mut ChaCha8Rng,
    max_strands: u32,
    max_len: usize,
) -> Result<AnnularDiagram, InvariantError> {
    let (strands, word) = random_word(rng, max_strands, max_len);
    let d = braid_closure(strands, &word)?;
    Ok(if rng.gen_ratio(1, 4) {
        add_meridian_pair(&d)
    } else {
        d
    })
}

/// A curl stacked on a random arc other than the marked one.
fn random_kink(rng: &mut ChaCha8Rng, d: &AnnularDiagram) -> Result<AnnularDiagram, InvariantError> {
    let arc = rng.gen_range(1..d.arc_count() as u32);
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    Ok(insert_kink(d, arc, sign, rng.gen_bool(0.5))?)
}

/// Twisted unknot: the closure of a staircase word using each braid
/// position exactly once with a random sign. Every crossing is then a
/// curl around the axis forming its own twist region, and the closure
/// is an unknot whichever signs are drawn.
pub fn random_twisted_unknot(
    rng: &mut ChaCha8Rng,
    max_regions: usize,
) -> Result<AnnularDiagram, InvariantError> {
    let m = rng.gen_range(0..=max_regions);
    let word: Vec<i32> = (1..=m as i32)
        .map(|pos| if rng.gen_bool(0.5) { pos } else { -pos })
        .collect();
    Ok(braid_closure(m as u32 + 1, &word)?)
}

/// Move-equivalent diagram pairs: curl insertions, canceling letter
/// pairs, and triple-point slides, ten of each.
pub fn move_pairs(
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(&'static str, AnnularDiagram, AnnularDiagram)>, InvariantError> {
    let mut out = Vec::new();
    for _ in 0..10 {
        let (strands, word) = random_word(rng, 3, 4);
        let d = braid_closure(strands, &word)?;
        out.push(("curl", d.clone(), random_kink(rng, &d)?));
    }
    for _ in 0..10 {
        let (strands, word) = random_word(rng, 3, 4);
        let g = rng.gen_range(1..strands) as i32;
        let at = rng.gen_range(0..=word.len());
        let mut longer = word.clone();
        longer.splice(at..at, [g, -g]);
        out.push((
            "cancel",
            braid_closure(strands, &word)?,
            braid_closure(strands, &longer)?,
        ));
    }
    for _ in 0..10 {
        let strands = rng.gen_range(3..=4);
        let g = rng.gen_range(1..strands - 1) as i32;
        let mut prefix = Vec::new();
        if rng.gen_bool(0.5) {
            prefix.push(rng.gen_range(1..strands) as i32);
        }
        let mut suffix = Vec::new();
        if rng.gen_bool(0.5) {
            suffix.push(-(rng.gen_range(1..strands) as i32));
        }
        let mut left = prefix.clone();
        left.extend([g, g + 1, g]);
        left.extend(&suffix);
        let mut right = prefix;
        right.extend([g + 1, g, g + 1]);
        right.extend(&suffix);
        out.push((
            "slide",
            braid_closure(strands, &left)?,
            braid_closure(strands, &right)?,
        ));
    }
    Ok(out)
}

/// Fifteen alternating three-strand closures using both generators, so
/// each is connected, links the axis three times, and alternates.
pub fn alternating_words() -> Vec<(u32, Vec<i32>)> {
    let words: [&[i32]; 15] = [
        &[1, -2],
        &[1, 1, -2],
        &[1, -2, -2],
        &[1, -2, 1, -2],
        &[1, 1, -2, -2],
        &[1, 1, 1, -2],
        &[1, -2, -2, -2],
        &[1, 1, -2, 1, -2],
        &[1, -2, 1, -2, -2],
        &[1, 1, 1, -2, -2],
        &[1, 1, 1, 1, -2],
        &[1, -2, -2, -2, -2],
        &[1, 1, -2, 1, -2, -2],
        &[1, -2, 1, -2, 1, -2],
        &[1, 1, 1, -2, -2, -2],
    ];
    words.iter().map(|w| (3, w.to_vec())).collect()
}

/// Factor pairs for the stacking checks: unknot-shaped pairs first (the
/// crossingless circle included), then small random closures.
pub fn stacked_pairs(
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(AnnularDiagram, AnnularDiagram)>, InvariantError> {
    let mut out = Vec::new();
    out.push((braid_closure(1, &[])?, braid_closure(1, &[])?));
    for _ in 0..4 {
        out.push((
            random_twisted_unknot(rng, 2)?,
            random_twisted_unknot(rng, 2)?,
        ));
    }
    for _ in 0..5 {
        let (sa, wa) = random_word(rng, 3, 3);
        let (sb, wb) = random_word(rng, 3, 3);
        out.push((braid_closure(sa, &wa)?, braid_closure(sb, &wb)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::support::is_alternating;

    #[test]
    fn corpora_are_deterministic_per_seed() {
        let mut a = rng(7);
        let mut b = rng(7);
        for _ in 0..5 {
            let (sa, wa) = random_word(&mut a, 4, 6);
            let (sb, wb) = random_word(&mut b, 4, 6);
            assert_eq!((sa, &wa), (sb, &wb));
        }
    }

    #[test]
    fn alternating_words_all_alternate() {
        for (strands, word) in alternating_words() {
            let d = braid_closure(strands, &word).unwrap();
            assert!(is_alternating(&d).unwrap(), "word {word:?}");
            assert!(d.is_connected());
        }
    }
}
