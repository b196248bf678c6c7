//! Complete smoothings of a diagram and the circles they produce.

use crate::{AnnularDiagram, DiagramError, Mark};

/// One circle of a complete smoothing. Non-trivial circles wind once around
/// the axis; trivial circles bound disks in the complement of the axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolvedCircle {
    pub nontrivial: bool,
    pub winding: i32,
    /// Deterministic identity across resolutions: the least arc id on the
    /// circle, or arc_count + index for a crossingless circle.
    pub key: u32,
}

/// A complete smoothing: its circles in canonical order (non-trivial first,
/// then by key) and the position of the marked circle, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub circles: Vec<ResolvedCircle>,
    pub marked: Option<usize>,
    /// Index into `circles` of the circle through each arc.
    pub arc_circle: Vec<usize>,
}

impl Resolution {
    pub fn nontrivial_count(&self) -> usize {
        self.circles.iter().filter(|c| c.nontrivial).count()
    }

    pub fn trivial_count(&self) -> usize {
        self.circles.len() - self.nontrivial_count()
    }
}

/// Smooths every crossing according to the mask (bit c set picks the
/// 1-smoothing at crossing c) and traces the resulting circles. The winding
/// of a circle is the signed count of its ray crossings.
pub fn resolve(d: &AnnularDiagram, mask: u64) -> Result<Resolution, DiagramError> {
    let ends = d.arc_ends()?;
    let arcs = d.arc_count();
    let mut seen = vec![false; arcs];
    let mut circles = Vec::new();
    let mut circle_key = vec![0u32; arcs];
    let mut marked = None;
    let marked_arc = match d.marked() {
        Some(Mark::Arc(a)) => Some(a),
        _ => None,
    };
    for start in 0..arcs as u32 {
        if seen[start as usize] {
            continue;
        }
        let mut winding = 0i32;
        let mut on_circle = false;
        let mut cur = (start, true);
        loop {
            let (arc, forward) = cur;
            debug_assert!(!seen[arc as usize]);
            seen[arc as usize] = true;
            circle_key[arc as usize] = start;
            let dir = if forward { 1 } else { -1 };
            winding += dir * d.arc_ray(arc);
            if marked_arc == Some(arc) {
                on_circle = true;
            }
            let end = if forward {
                ends[arc as usize].head
            } else {
                ends[arc as usize].tail
            };
            // Smoothings pair the slots (0,1),(2,3) or (0,3),(1,2); both
            // pairings are a single xor on the slot index.
            let pair = if mask >> end.crossing & 1 == 0 { 1 } else { 3 };
            let exit = end.slot ^ pair;
            let next = d.crossings()[end.crossing].arcs[exit];
            let next_forward = !d.crossings()[end.crossing].slot_is_head(exit);
            cur = (next, next_forward);
            if cur == (start, true) {
                break;
            }
        }
        if winding.unsigned_abs() > 1 {
            return Err(DiagramError::WindingRange { winding });
        }
        if on_circle {
            marked = Some(circles.len());
        }
        circles.push(ResolvedCircle {
            nontrivial: winding != 0,
            winding,
            key: start,
        });
    }
    for (i, fc) in d.free_circles().iter().enumerate() {
        if d.marked() == Some(Mark::Circle(i)) {
            marked = Some(circles.len());
        }
        circles.push(ResolvedCircle {
            nontrivial: fc.winding != 0,
            winding: fc.winding,
            key: arcs as u32 + i as u32,
        });
    }
    // Canonical order: non-trivial circles first, then by key. Remember
    // where the marked circle lands and where each arc's circle went.
    let marked_key = marked.map(|i| circles[i].key);
    circles.sort_by_key(|c| (!c.nontrivial, c.key));
    let pos_of_key = |k: u32| circles.iter().position(|c| c.key == k).unwrap();
    let marked = marked_key.map(pos_of_key);
    let arc_circle = circle_key.iter().map(|&k| pos_of_key(k)).collect();
    Ok(Resolution {
        circles,
        marked,
        arc_circle,
    })
}
