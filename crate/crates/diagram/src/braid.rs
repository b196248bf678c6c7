//! Braid words and their annular closures.

use crate::{AnnularDiagram, Crossing, DiagramError, FreeCircle, Mark};

/// Parses "n: w1 w2 ..." into a strand count and a word, e.g. "3: 1 -2 1 -2".
/// An empty word ("1:") is allowed and closes to crossingless circles.
pub fn parse_braid_word(text: &str) -> Result<(u32, Vec<i32>), DiagramError> {
    let err = |msg: &str| DiagramError::Parse {
        line: 1,
        msg: msg.to_string(),
    };
    let (head, tail) = text
        .split_once(':')
        .ok_or_else(|| err("expected \"strands: letters\""))?;
    let strands: u32 = head
        .trim()
        .parse()
        .map_err(|_| err("strand count is not a number"))?;
    if strands == 0 {
        return Err(err("strand count must be at least 1"));
    }
    let mut word = Vec::new();
    for tok in tail.split_whitespace() {
        let letter: i32 = tok
            .parse()
            .map_err(|_| err(&format!("bad braid letter {tok:?}")))?;
        word.push(letter);
    }
    Ok((strands, word))
}

/// Closes a braid word around the annulus axis. Strands are numbered from
/// the axis outward, so the strand-1 closure arc is the innermost ray
/// intersection and carries the basepoint. Strand positions the word never
/// touches close into crossingless circles of winding +1.
pub fn braid_closure(strands: u32, word: &[i32]) -> Result<AnnularDiagram, DiagramError> {
    if strands == 0 {
        return Err(DiagramError::Parse {
            line: 1,
            msg: "strand count must be at least 1".to_string(),
        });
    }
    for &letter in word {
        if letter == 0 || letter.unsigned_abs() >= strands {
            return Err(DiagramError::BadBraidLetter {
                letter,
                max: strands,
            });
        }
    }
    let n = strands as usize;
    // Arc ids 0..n are the top arcs of the strands; crossings consume the
    // current bottom arc of each position and produce two new ones.
    let mut next_arc = n as u32;
    let mut cur: Vec<u32> = (0..n as u32).collect();
    let mut crossings = Vec::with_capacity(word.len());
    for &letter in word {
        let g = letter.unsigned_abs() as usize;
        let tl = next_arc;
        let tr = next_arc + 1;
        next_arc += 2;
        let record = if letter > 0 {
            Crossing {
                arcs: [cur[g], tr, tl, cur[g - 1]],
                sign: 1,
            }
        } else {
            Crossing {
                arcs: [cur[g - 1], cur[g], tr, tl],
                sign: -1,
            }
        };
        crossings.push(record);
        cur[g - 1] = tl;
        cur[g] = tr;
    }
    // Close each strand: the bottom arc wraps around the annulus and merges
    // with the top arc of the same position, crossing the ray once.
    let mut rename: Vec<u32> = (0..next_arc).collect();
    let mut free_circles = Vec::new();
    let mut strand_circle = vec![None; n];
    let mut touched = vec![false; n];
    for i in 0..n {
        if cur[i] == i as u32 {
            strand_circle[i] = Some(free_circles.len());
            free_circles.push(FreeCircle { winding: 1 });
        } else {
            rename[cur[i] as usize] = i as u32;
            touched[i] = true;
        }
    }
    for c in &mut crossings {
        for a in &mut c.arcs {
            *a = rename[*a as usize];
        }
    }
    // Compact the surviving arc ids, keeping their order.
    let mut used = vec![false; next_arc as usize];
    for c in &crossings {
        for &a in &c.arcs {
            used[a as usize] = true;
        }
    }
    let mut compact = vec![u32::MAX; next_arc as usize];
    let mut count = 0;
    for (old, &u) in used.iter().enumerate() {
        if u {
            compact[old] = count;
            count += 1;
        }
    }
    for c in &mut crossings {
        for a in &mut c.arcs {
            *a = compact[*a as usize];
        }
    }
    let mut arc_ray = vec![0i32; count as usize];
    let mut ray_order = Vec::new();
    for (i, &t) in touched.iter().enumerate() {
        if t {
            let arc = compact[i];
            arc_ray[arc as usize] = 1;
            ray_order.push((arc, 1i8));
        }
    }
    let marked = if touched[0] {
        Some(Mark::Arc(compact[0]))
    } else {
        Some(Mark::Circle(strand_circle[0].unwrap()))
    };
    AnnularDiagram::from_parts(crossings, arc_ray, ray_order, free_circles, marked)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_crossing_closures() {
        let d = braid_closure(2, &[1]).unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.arc_count(), 2);
        assert_eq!((d.n_plus(), d.n_minus()), (1, 0));
        assert_eq!(d.marked(), Some(Mark::Arc(0)));
        assert_eq!(d.ray_order(), &[(0, 1), (1, 1)]);
        // The closure of a single positive letter is a curl: the strand-1
        // arc spans slots 2 and 3, the strand-2 arc slots 0 and 1.
        assert_eq!(d.crossings()[0].arcs, [1, 1, 0, 0]);
        let m = braid_closure(2, &[-1]).unwrap();
        assert_eq!((m.n_plus(), m.n_minus()), (0, 1));
        assert_eq!(m.crossings()[0].arcs, [0, 1, 1, 0]);
    }

    #[test]
    fn untouched_strands_close_into_circles() {
        let d = braid_closure(4, &[2]).unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.free_circles().len(), 2);
        assert_eq!(d.marked(), Some(Mark::Circle(0)));
        let core = braid_closure(1, &[]).unwrap();
        assert_eq!(core.arc_count(), 0);
        assert_eq!(core.free_circles(), &[FreeCircle { winding: 1 }]);
    }

    #[test]
    fn word_parsing() {
        assert_eq!(parse_braid_word("3: 1 -2 1 -2").unwrap(), (3, vec![1, -2, 1, -2]));
        assert_eq!(parse_braid_word("1:").unwrap(), (1, vec![]));
        assert!(parse_braid_word("x: 1").is_err());
        assert!(parse_braid_word("2 1 1").is_err());
        assert!(braid_closure(2, &[2]).is_err());
    }
}
