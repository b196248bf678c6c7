//! Faces of the diagram's shadow, the two checkerboard shadings, and the
//! signed region count picked up along the reference ray.
//!
//! A dart is an arc with a travel direction; it ends at the arc's head when
//! forward and at the tail when backward. Walking a face turns as sharply
//! counterclockwise as possible at every crossing: a dart ending at slot s
//! leaves through slot s + 3 mod 4. The face between slots s and s + 1 of a
//! crossing (its sector s) is the orbit of the dart leaving through slot s.

use crate::{AnnularDiagram, DiagramError};

#[derive(Clone, Debug)]
pub struct FaceData {
    /// Face of each dart, indexed by arc * 2 + direction (0 forward).
    dart_face: Vec<usize>,
    face_count: usize,
    /// Sector faces per crossing, indexed by slot.
    sectors: Vec<[usize; 4]>,
}

impl FaceData {
    pub fn face_count(&self) -> usize {
        self.face_count
    }

    pub fn face(&self, arc: u32, forward: bool) -> usize {
        self.dart_face[arc as usize * 2 + usize::from(!forward)]
    }

    pub fn sector(&self, crossing: usize, slot: usize) -> usize {
        self.sectors[crossing][slot]
    }

    /// Darts grouped by face, in walk order.
    pub fn orbits(&self) -> Vec<Vec<(u32, bool)>> {
        let mut out = vec![Vec::new(); self.face_count];
        for (i, &f) in self.dart_face.iter().enumerate() {
            out[f].push(((i / 2) as u32, i % 2 == 0));
        }
        out
    }
}

/// Computes the face decomposition. The diagram must be connected, have no
/// crossingless circles, and have at least one crossing; a connected shadow
/// with c crossings has exactly c + 2 faces, which is checked.
pub fn faces(d: &AnnularDiagram) -> Result<FaceData, DiagramError> {
    if !d.is_connected() {
        return Err(DiagramError::NotConnected);
    }
    if !d.free_circles().is_empty() {
        return Err(DiagramError::HasFreeCircles);
    }
    if d.crossing_count() == 0 {
        return Err(DiagramError::Internal(
            "face data needs at least one crossing".to_string(),
        ));
    }
    let ends = d.arc_ends()?;
    let n_darts = d.arc_count() * 2;
    let dart_index = |arc: u32, forward: bool| arc as usize * 2 + usize::from(!forward);
    let next = |arc: u32, forward: bool| {
        let end = if forward {
            ends[arc as usize].head
        } else {
            ends[arc as usize].tail
        };
        let exit = (end.slot + 3) % 4;
        let cr = &d.crossings()[end.crossing];
        (cr.arcs[exit], !cr.slot_is_head(exit))
    };
    let mut dart_face = vec![usize::MAX; n_darts];
    let mut face_count = 0;
    for start in 0..n_darts {
        if dart_face[start] != usize::MAX {
            continue;
        }
        let mut cur = ((start / 2) as u32, start % 2 == 0);
        loop {
            let idx = dart_index(cur.0, cur.1);
            if dart_face[idx] != usize::MAX {
                break;
            }
            dart_face[idx] = face_count;
            cur = next(cur.0, cur.1);
        }
        face_count += 1;
    }
    if face_count != d.crossing_count() + 2 {
        return Err(DiagramError::Internal(format!(
            "expected {} faces, found {face_count}",
            d.crossing_count() + 2
        )));
    }
    let sectors = d
        .crossings()
        .iter()
        .map(|cr| {
            std::array::from_fn(|s| {
                dart_face[dart_index(cr.arcs[s], !cr.slot_is_head(s))]
            })
        })
        .collect();
    Ok(FaceData {
        dart_face,
        face_count,
        sectors,
    })
}

/// The faces the reference ray passes through, from the axis outward. Each
/// ray intersection yields the face before and after crossing that arc;
/// consecutive visits must agree, the first face is the innermost one and
/// the last is the unbounded one.
#[derive(Clone, Debug)]
pub struct RayTrace {
    pub visits: Vec<(usize, usize)>,
    pub inner: usize,
    pub unbounded: usize,
}

pub fn ray_trace(d: &AnnularDiagram, f: &FaceData) -> Result<RayTrace, DiagramError> {
    if d.ray_order().is_empty() {
        return Err(DiagramError::NoRayArcs);
    }
    let mut visits = Vec::with_capacity(d.ray_order().len());
    for &(arc, sign) in d.ray_order() {
        let (before, after) = if sign > 0 {
            (f.face(arc, true), f.face(arc, false))
        } else {
            (f.face(arc, false), f.face(arc, true))
        };
        if let Some(&(_, prev_after)) = visits.last() {
            if prev_after != before {
                return Err(DiagramError::Internal(
                    "ray visits do not chain".to_string(),
                ));
            }
        }
        visits.push((before, after));
    }
    Ok(RayTrace {
        inner: visits[0].0,
        unbounded: visits[visits.len() - 1].1,
        visits,
    })
}

/// The crossing-anchored shading: at every crossing the sectors just
/// counterclockwise of the under-strand ends (sectors 0 and 2) are black.
/// Returns is-black per face, or an error when no such shading exists.
pub fn crossing_shading(d: &AnnularDiagram, f: &FaceData) -> Result<Vec<bool>, DiagramError> {
    let mut black = vec![None; f.face_count()];
    for c in 0..d.crossing_count() {
        for s in 0..4 {
            let want = s % 2 == 0;
            match black[f.sector(c, s)] {
                None => black[f.sector(c, s)] = Some(want),
                Some(b) if b != want => return Err(DiagramError::InconsistentShading),
                Some(_) => {}
            }
        }
    }
    black
        .into_iter()
        .map(|b| b.ok_or_else(|| DiagramError::Internal("unshaded face".to_string())))
        .collect()
}

/// The shading that makes the unbounded face white, spread across arcs: the
/// two faces along an arc always get opposite colors. Returns is-black per
/// face.
pub fn unbounded_white_shading(
    d: &AnnularDiagram,
    f: &FaceData,
    unbounded: usize,
) -> Result<Vec<bool>, DiagramError> {
    let mut black = vec![None; f.face_count()];
    black[unbounded] = Some(false);
    let mut queue = vec![unbounded];
    while let Some(face) = queue.pop() {
        let color = black[face].unwrap_or(false);
        for arc in 0..d.arc_count() as u32 {
            let (a, b) = (f.face(arc, true), f.face(arc, false));
            let other = if a == face {
                b
            } else if b == face {
                a
            } else {
                continue;
            };
            match black[other] {
                None => {
                    black[other] = Some(!color);
                    queue.push(other);
                }
                Some(c) if c == color => {
                    return Err(DiagramError::Internal(
                        "shadow is not checkerboard colorable".to_string(),
                    ))
                }
                Some(_) => {}
            }
        }
    }
    black
        .into_iter()
        .map(|b| b.ok_or_else(|| DiagramError::Internal("face missed by shading".to_string())))
        .collect()
}

/// Signed count of checkerboard regions met by the reference ray: white
/// regions minus black regions among the distinct faces the ray passes
/// through, under the crossing-anchored shading. When the ray meets an odd
/// number of strands this is zero by the alternation of colors.
pub fn m_number(d: &AnnularDiagram) -> Result<i32, DiagramError> {
    if d.ray_order().len() % 2 == 1 {
        return Ok(0);
    }
    let f = faces(d)?;
    let black = crossing_shading(d, &f)?;
    let trace = ray_trace(d, &f)?;
    let mut seen = vec![false; f.face_count()];
    let mut m = 0;
    for &(before, after) in &trace.visits {
        for face in [before, after] {
            if !seen[face] {
                seen[face] = true;
                m += if black[face] { -1 } else { 1 };
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::braid_closure;

    #[test]
    fn curl_closures_calibrate_m() {
        let pos = braid_closure(2, &[1]).unwrap();
        let f = faces(&pos).unwrap();
        assert_eq!(f.face_count(), 3);
        let trace = ray_trace(&pos, &f).unwrap();
        let black = crossing_shading(&pos, &f).unwrap();
        assert!(black[trace.unbounded]);
        assert_eq!(m_number(&pos).unwrap(), -1);

        let neg = braid_closure(2, &[-1]).unwrap();
        let f = faces(&neg).unwrap();
        let trace = ray_trace(&neg, &f).unwrap();
        let black = crossing_shading(&neg, &f).unwrap();
        assert!(!black[trace.unbounded]);
        let whites = black.iter().filter(|&&b| !b).count();
        assert_eq!((whites, black.len() - whites), (2, 1));
        assert_eq!(m_number(&neg).unwrap(), 1);
    }

    #[test]
    fn face_sizes_of_small_closures() {
        let sizes = |d: &AnnularDiagram| {
            let mut v: Vec<usize> = faces(d)
                .unwrap()
                .orbits()
                .iter()
                .map(|orbit| orbit.len())
                .collect();
            v.sort();
            v
        };
        let hopf = braid_closure(2, &[1, 1]).unwrap();
        assert_eq!(sizes(&hopf), vec![2, 2, 2, 2]);
        let two = braid_closure(3, &[1, 2]).unwrap();
        assert_eq!(sizes(&two), vec![1, 1, 3, 3]);
        let trefoil = braid_closure(2, &[1, 1, 1]).unwrap();
        assert_eq!(sizes(&trefoil), vec![2, 2, 2, 3, 3]);
    }

    #[test]
    fn ray_trace_chains_from_inner_to_unbounded() {
        for word in [vec![1, 1, 1], vec![1, -2, 1, -2]] {
            let strands = if word.iter().any(|&l| i32::abs(l) == 2) { 3 } else { 2 };
            let d = braid_closure(strands, &word).unwrap();
            let f = faces(&d).unwrap();
            let t = ray_trace(&d, &f).unwrap();
            assert_eq!(t.visits.len(), d.ray_order().len());
            assert_ne!(t.inner, t.unbounded);
        }
    }

    #[test]
    fn unbounded_white_shading_flips_across_arcs() {
        let d = braid_closure(2, &[1, 1, 1]).unwrap();
        let f = faces(&d).unwrap();
        let t = ray_trace(&d, &f).unwrap();
        let black = unbounded_white_shading(&d, &f, t.unbounded).unwrap();
        assert!(!black[t.unbounded]);
        for arc in 0..d.arc_count() as u32 {
            assert_ne!(black[f.face(arc, true)], black[f.face(arc, false)]);
        }
    }

    #[test]
    fn unsupported_diagrams_are_rejected() {
        let with_circle = braid_closure(3, &[2]).unwrap();
        assert!(matches!(
            faces(&with_circle),
            Err(DiagramError::HasFreeCircles) | Err(DiagramError::NotConnected)
        ));
        let crossingless = braid_closure(1, &[]).unwrap();
        assert!(faces(&crossingless).is_err());
    }
}
