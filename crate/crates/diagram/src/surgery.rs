//! Diagram surgeries: mirror images, curls, split unions, meridian circles,
//! and replacing a single crossing by one of its smoothings.

use std::collections::{BTreeMap, BTreeSet};

use crate::{AnnularDiagram, Crossing, DiagramError, End, FreeCircle, Mark};

/// The mirror image: every crossing switches sign while the shadow and the
/// ray data stay fixed. Records rotate so the under-in end stays at slot 0.
pub fn mirror(d: &AnnularDiagram) -> AnnularDiagram {
    let crossings = d
        .crossings()
        .iter()
        .map(|cr| {
            let [a, b, c, e] = cr.arcs;
            if cr.sign > 0 {
                Crossing {
                    arcs: [e, a, b, c],
                    sign: -1,
                }
            } else {
                Crossing {
                    arcs: [b, c, e, a],
                    sign: 1,
                }
            }
        })
        .collect();
    let m = AnnularDiagram::from_parts(
        crossings,
        (0..d.arc_count() as u32).map(|a| d.arc_ray(a)).collect(),
        d.ray_order().to_vec(),
        d.free_circles().to_vec(),
        d.marked(),
    );
    m.expect("mirror of a valid diagram is valid")
}

/// Inserts a curl on the given arc, right before its head end. The curl's
/// crossing sign and the order in which the strand passes itself are chosen
/// by the arguments; the arc keeps its id, tail, and ray data, while the new
/// arcs (the far side of the curl and the loop) cross the ray zero times.
pub fn insert_kink(
    d: &AnnularDiagram,
    arc: u32,
    sign: i8,
    under_first: bool,
) -> Result<AnnularDiagram, DiagramError> {
    if arc as usize >= d.arc_count() {
        return Err(DiagramError::Internal(format!(
            "curl target arc {arc} does not exist"
        )));
    }
    let ends = d.arc_ends()?;
    let far = d.arc_count() as u32;
    let loop_arc = far + 1;
    let mut crossings = d.crossings().to_vec();
    let head = ends[arc as usize].head;
    crossings[head.crossing].arcs[head.slot] = far;
    let record = match (sign > 0, under_first) {
        (true, true) => [arc, far, loop_arc, loop_arc],
        (true, false) => [loop_arc, loop_arc, far, arc],
        (false, true) => [arc, loop_arc, loop_arc, far],
        (false, false) => [loop_arc, arc, far, loop_arc],
    };
    crossings.push(Crossing {
        arcs: record,
        sign: if sign > 0 { 1 } else { -1 },
    });
    let mut arc_ray: Vec<i32> = (0..far).map(|a| d.arc_ray(a)).collect();
    arc_ray.extend([0, 0]);
    AnnularDiagram::from_parts(
        crossings,
        arc_ray,
        d.ray_order().to_vec(),
        d.free_circles().to_vec(),
        d.marked(),
    )
}

/// Stacks `outer` outside `inner` in the annulus: the split union whose ray
/// intersections list all of inner's before all of outer's. At most one of
/// the factors may carry the basepoint.
pub fn split_union(
    inner: &AnnularDiagram,
    outer: &AnnularDiagram,
) -> Result<AnnularDiagram, DiagramError> {
    let off = inner.arc_count() as u32;
    let coff = inner.free_circles().len();
    let mut crossings = inner.crossings().to_vec();
    crossings.extend(outer.crossings().iter().map(|cr| Crossing {
        arcs: cr.arcs.map(|a| a + off),
        sign: cr.sign,
    }));
    let mut arc_ray: Vec<i32> = (0..off).map(|a| inner.arc_ray(a)).collect();
    arc_ray.extend((0..outer.arc_count() as u32).map(|a| outer.arc_ray(a)));
    let mut ray_order = inner.ray_order().to_vec();
    ray_order.extend(outer.ray_order().iter().map(|&(a, s)| (a + off, s)));
    let mut free_circles = inner.free_circles().to_vec();
    free_circles.extend_from_slice(outer.free_circles());
    let marked = match (inner.marked(), outer.marked()) {
        (Some(_), Some(_)) => {
            return Err(DiagramError::Internal(
                "both split union factors carry the basepoint".to_string(),
            ))
        }
        (m, None) => m,
        (None, Some(Mark::Arc(a))) => Some(Mark::Arc(a + off)),
        (None, Some(Mark::Circle(i))) => Some(Mark::Circle(i + coff)),
    };
    AnnularDiagram::from_parts(crossings, arc_ray, ray_order, free_circles, marked)
}

/// Adds two crossingless circles of winding +1 and moves the basepoint onto
/// the first of them. Any previous basepoint is dropped.
pub fn add_meridian_pair(d: &AnnularDiagram) -> AnnularDiagram {
    let mut out = d.clone();
    let idx = out.free_circles().len();
    out.push_free_circle(FreeCircle { winding: 1 });
    out.push_free_circle(FreeCircle { winding: 1 });
    out.set_marked(Some(Mark::Circle(idx)));
    out
}

/// One arc of the surgered diagram before orientations are settled: a run of
/// old arcs with the directions a walk from `tail_pos` to `head_pos`
/// traverses them.
struct NewArc {
    old: u32,
    tail_pos: End,
    head_pos: End,
    ray_ref: i32,
    segs: Vec<(u32, i32)>,
}

/// Replaces crossing `c` by its 0- or 1-smoothing and merges the incident
/// arcs. Surviving crossings keep their relative order, so old crossing `i`
/// becomes `i` or `i - 1` depending on its position relative to `c`. When the
/// smoothing is incompatible with the strand orientations the affected
/// components are reoriented; windings and crossing signs are then only
/// defined up to that choice, while the circles of every complete smoothing
/// and their winding classes are unaffected.
pub fn resolve_crossing(
    d: &AnnularDiagram,
    c: usize,
    choice: u8,
) -> Result<AnnularDiagram, DiagramError> {
    if c >= d.crossing_count() {
        return Err(DiagramError::Internal(format!(
            "cannot smooth crossing {c} of a {} crossing diagram",
            d.crossing_count()
        )));
    }
    let ends = d.arc_ends()?;
    let cr = d.crossings()[c];
    let end_pos = |arc: u32, is_head: bool| -> End {
        if is_head {
            ends[arc as usize].head
        } else {
            ends[arc as usize].tail
        }
    };
    let at_c = |arc: u32, is_head: bool| end_pos(arc, is_head).crossing == c;
    let side = |slot: usize| (cr.arcs[slot], cr.slot_is_head(slot));
    let pairs: [(usize, usize); 2] = if choice == 0 {
        [(0, 1), (2, 3)]
    } else {
        [(0, 3), (1, 2)]
    };
    let mut joint: BTreeMap<(u32, bool), (u32, bool)> = BTreeMap::new();
    for &(s, t) in &pairs {
        joint.insert(side(s), side(t));
        joint.insert(side(t), side(s));
    }
    let members: BTreeSet<u32> = cr.arcs.iter().copied().collect();
    let bad = || DiagramError::Internal("inconsistent smoothing walk".to_string());

    // Walk the chains of merged arcs, starting from ends away from c.
    let mut consumed: BTreeSet<u32> = BTreeSet::new();
    let mut new_arcs: Vec<NewArc> = Vec::new();
    for &a in &members {
        if consumed.contains(&a) {
            continue;
        }
        let Some(r0) = [false, true].into_iter().find(|&r| !at_c(a, r)) else {
            continue;
        };
        let mut segs = vec![(a, if r0 { -1 } else { 1 })];
        consumed.insert(a);
        let mut tail_pos = end_pos(a, r0);
        let mut cur = (a, !r0);
        let mut head_pos = loop {
            let &(b, rb) = joint.get(&cur).ok_or_else(bad)?;
            segs.push((b, if rb { -1 } else { 1 }));
            consumed.insert(b);
            if !at_c(b, !rb) {
                break end_pos(b, !rb);
            }
            cur = (b, !rb);
        };
        // Normalize so the least old arc keeps its direction; a smoothing
        // compatible with the orientations then changes no arc direction.
        let old = segs.iter().map(|&(x, _)| x).min().ok_or_else(bad)?;
        if segs.iter().find(|&&(x, _)| x == old).ok_or_else(bad)?.1 < 0 {
            std::mem::swap(&mut tail_pos, &mut head_pos);
            for s in &mut segs {
                s.1 = -s.1;
            }
        }
        let ray_ref = segs.iter().map(|&(x, dx)| dx * d.arc_ray(x)).sum();
        new_arcs.push(NewArc {
            old,
            tail_pos,
            head_pos,
            ray_ref,
            segs,
        });
    }

    // Chains with no end away from c close up into crossingless circles.
    let mut free_circles = d.free_circles().to_vec();
    let mut cycle_circle: BTreeMap<u32, usize> = BTreeMap::new();
    for &a in &members {
        if consumed.contains(&a) {
            continue;
        }
        let mut winding = d.arc_ray(a);
        let mut on_cycle = vec![a];
        consumed.insert(a);
        let mut cur = (a, true);
        loop {
            let &(b, rb) = joint.get(&cur).ok_or_else(bad)?;
            if b == a {
                if rb {
                    return Err(bad());
                }
                break;
            }
            winding += if rb { -1 } else { 1 } * d.arc_ray(b);
            on_cycle.push(b);
            consumed.insert(b);
            cur = (b, !rb);
        }
        if winding.unsigned_abs() > 1 {
            return Err(DiagramError::WindingRange { winding });
        }
        for x in on_cycle {
            cycle_circle.insert(x, free_circles.len());
        }
        free_circles.push(FreeCircle { winding });
    }

    // Arcs not incident to c carry over as single-segment runs.
    for arc in 0..d.arc_count() as u32 {
        if !members.contains(&arc) {
            new_arcs.push(NewArc {
                old: arc,
                tail_pos: ends[arc as usize].tail,
                head_pos: ends[arc as usize].head,
                ray_ref: d.arc_ray(arc),
                segs: vec![(arc, 1)],
            });
        }
    }
    new_arcs.sort_by_key(|na| na.old);

    // Each remaining slot is one end of one new arc, in its reference
    // orientation for now.
    let mut slot_owner: BTreeMap<(usize, usize), (usize, bool)> = BTreeMap::new();
    for (i, na) in new_arcs.iter().enumerate() {
        slot_owner.insert((na.tail_pos.crossing, na.tail_pos.slot), (i, false));
        slot_owner.insert((na.head_pos.crossing, na.head_pos.slot), (i, true));
    }

    // Orient every component consistently, keeping the direction of its
    // least arc. The strand through a crossing occupies opposite slots, so
    // the continuation of an end at slot s leaves through slot s + 2.
    let mut flip: Vec<Option<bool>> = vec![None; new_arcs.len()];
    for i in 0..new_arcs.len() {
        if flip[i].is_some() {
            continue;
        }
        flip[i] = Some(false);
        let mut stack = vec![i];
        while let Some(j) = stack.pop() {
            let f = flip[j].ok_or_else(bad)?;
            let (tp, hp) = if f {
                (new_arcs[j].head_pos, new_arcs[j].tail_pos)
            } else {
                (new_arcs[j].tail_pos, new_arcs[j].head_pos)
            };
            for (pos, need_head) in [(hp, false), (tp, true)] {
                let key = (pos.crossing, (pos.slot + 2) % 4);
                let &(k, ref_head) = slot_owner.get(&key).ok_or_else(bad)?;
                let want = if need_head { !ref_head } else { ref_head };
                match flip[k] {
                    None => {
                        flip[k] = Some(want);
                        stack.push(k);
                    }
                    Some(cur) if cur != want => return Err(bad()),
                    Some(_) => {}
                }
            }
        }
    }
    let flip: Vec<bool> = flip.into_iter().map(|f| f.unwrap_or(false)).collect();

    // Rebuild the surviving records: rotate each so the under-in end is back
    // at slot 0, and read the sign off the over-in position.
    let mut crossings = Vec::with_capacity(d.crossing_count() - 1);
    for ci in (0..d.crossing_count()).filter(|&x| x != c) {
        let mut arcs = [0u32; 4];
        let mut heads = [false; 4];
        for (s, (arc, head)) in arcs.iter_mut().zip(&mut heads).enumerate() {
            let &(k, ref_head) = slot_owner.get(&(ci, s)).ok_or_else(bad)?;
            *arc = k as u32;
            *head = ref_head ^ flip[k];
        }
        let rot = match (heads[0], heads[2]) {
            (true, false) => 0,
            (false, true) => 2,
            _ => return Err(bad()),
        };
        let over_in = match (heads[1], heads[3]) {
            (true, false) => 1,
            (false, true) => 3,
            _ => return Err(bad()),
        };
        crossings.push(Crossing {
            arcs: std::array::from_fn(|s| arcs[(s + rot) % 4]),
            sign: if (over_in + 4 - rot) % 4 == 3 { 1 } else { -1 },
        });
    }

    let arc_ray: Vec<i32> = new_arcs
        .iter()
        .zip(&flip)
        .map(|(na, &f)| if f { -na.ray_ref } else { na.ray_ref })
        .collect();
    let mut seg_owner: BTreeMap<u32, (usize, i32)> = BTreeMap::new();
    for (i, na) in new_arcs.iter().enumerate() {
        for &(x, dx) in &na.segs {
            seg_owner.insert(x, (i, dx));
        }
    }
    let mut ray_order = Vec::new();
    for &(a, s) in d.ray_order() {
        if cycle_circle.contains_key(&a) {
            continue;
        }
        let &(i, dx) = seg_owner.get(&a).ok_or_else(bad)?;
        let sgn = if flip[i] { -(s * dx as i8) } else { s * dx as i8 };
        ray_order.push((i as u32, sgn));
    }
    let marked = match d.marked() {
        Some(Mark::Arc(a)) => Some(match cycle_circle.get(&a) {
            Some(&idx) => Mark::Circle(idx),
            None => Mark::Arc(seg_owner.get(&a).ok_or_else(bad)?.0 as u32),
        }),
        m => m,
    };
    AnnularDiagram::from_parts(crossings, arc_ray, ray_order, free_circles, marked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::braid_closure;
    use crate::resolve::resolve;

    fn class_counts(d: &AnnularDiagram, mask: u64) -> (usize, usize, Option<bool>) {
        let r = resolve(d, mask).unwrap();
        let nt = r.nontrivial_count();
        let marked_class = r.marked.map(|i| r.circles[i].nontrivial);
        (r.circles.len(), nt, marked_class)
    }

    #[test]
    fn mirror_swaps_smoothings() {
        for word in [vec![1], vec![1, 1], vec![1, -2, 1, -2]] {
            let strands = if word.iter().any(|&l| i32::abs(l) == 2) { 3 } else { 2 };
            let d = braid_closure(strands, &word).unwrap();
            let m = mirror(&d);
            assert_eq!(m.writhe(), -d.writhe());
            let full = (1u64 << d.crossing_count()) - 1;
            for mask in 0..=full {
                assert_eq!(class_counts(&d, mask), class_counts(&m, full ^ mask));
            }
            let back = mirror(&m);
            assert_eq!(back.crossings(), d.crossings());
        }
    }

    #[test]
    fn smoothing_a_crossing_matches_the_cube() {
        let words: [(u32, Vec<i32>); 5] = [
            (2, vec![1, 1]),
            (2, vec![1, 1, 1]),
            (2, vec![-1, -1]),
            (3, vec![1, -2, 1, -2]),
            (3, vec![1, 2]),
        ];
        for (strands, word) in words {
            let d = braid_closure(strands, &word).unwrap();
            let n = d.crossing_count();
            for c in 0..n {
                for choice in 0..2u64 {
                    let s = resolve_crossing(&d, c, choice as u8).unwrap();
                    assert_eq!(s.crossing_count(), n - 1);
                    for sub in 0..1u64 << (n - 1) {
                        // Reinsert the smoothed crossing's bit at position c.
                        let low = sub & ((1 << c) - 1);
                        let full = low | choice << c | (sub >> c) << (c + 1);
                        assert_eq!(
                            class_counts(&s, sub),
                            class_counts(&d, full),
                            "word {word:?} crossing {c} choice {choice} sub {sub}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn curl_smoothings_undo_the_curl() {
        let base = braid_closure(2, &[1, -1]).unwrap();
        for sign in [1i8, -1] {
            for under_first in [true, false] {
                let k = insert_kink(&base, 0, sign, under_first).unwrap();
                assert_eq!(k.crossing_count(), base.crossing_count() + 1);
                assert_eq!(k.writhe(), base.writhe() + sign as i32);
                let undo = if sign > 0 { 0u64 } else { 1 };
                let kc = k.crossing_count() - 1;
                for mask in 0..1u64 << base.crossing_count() {
                    let (total, nt, mc) = class_counts(&base, mask);
                    let with = class_counts(&k, mask | undo << kc);
                    assert_eq!(with, (total + 1, nt, mc));
                }
            }
        }
    }

    #[test]
    fn curl_closure_smooths_to_circles() {
        let d = braid_closure(2, &[1]).unwrap();
        let r0 = resolve_crossing(&d, 0, 0).unwrap();
        assert_eq!(r0.crossing_count(), 0);
        assert_eq!(r0.free_circles().len(), 2);
        assert!(r0.free_circles().iter().all(|f| f.winding == 1));
        assert_eq!(r0.marked(), Some(Mark::Circle(0)));
        let r1 = resolve_crossing(&d, 0, 1).unwrap();
        assert_eq!(r1.free_circles(), &[FreeCircle { winding: 0 }]);
    }

    #[test]
    fn hopf_smoothing_gives_the_curl_closure() {
        let d = braid_closure(2, &[1, 1]).unwrap();
        let s = resolve_crossing(&d, 0, 0).unwrap();
        let curl = braid_closure(2, &[1]).unwrap();
        assert_eq!(s.crossings(), curl.crossings());
        assert_eq!(s.ray_order(), curl.ray_order());
        assert_eq!(s.marked(), curl.marked());
        let t = resolve_crossing(&d, 0, 1).unwrap();
        assert_eq!(t.crossings(), &[Crossing { arcs: [1, 0, 0, 1], sign: -1 }]);
        assert_eq!(t.ray_order(), &[(0, 1), (0, -1)]);
    }

    #[test]
    fn split_union_stacks_ray_entries() {
        let a = braid_closure(2, &[1]).unwrap();
        let mut b = braid_closure(2, &[-1]).unwrap();
        b.set_marked(None);
        let u = split_union(&a, &b).unwrap();
        assert_eq!(u.crossing_count(), 2);
        assert_eq!(u.arc_count(), 4);
        assert_eq!(u.ray_order(), &[(0, 1), (1, 1), (2, 1), (3, 1)]);
        assert_eq!(u.marked(), Some(Mark::Arc(0)));
        assert_eq!(u.writhe(), 0);
        assert!(split_union(&a, &braid_closure(2, &[-1]).unwrap()).is_err());
    }

    #[test]
    fn meridian_pair_takes_the_basepoint() {
        let d = braid_closure(2, &[1]).unwrap();
        let m = add_meridian_pair(&d);
        assert_eq!(m.free_circles().len(), 2);
        assert_eq!(m.marked(), Some(Mark::Circle(0)));
        assert_eq!(resolve(&m, 0).unwrap().circles.len(), 4);
    }

    #[test]
    fn kink_cactus_smoothing_stays_valid() {
        // An unknot with three extra curls stacked on various arcs.
        let mut d = braid_closure(2, &[1]).unwrap();
        for (arc, sign, under_first) in [(0, -1, true), (2, 1, false), (3, -1, true)] {
            d = insert_kink(&d, arc, sign, under_first).unwrap();
        }
        assert_eq!(d.link_component_count(), 1);
        assert!(d.is_connected());
        for c in 0..d.crossing_count() {
            for choice in 0..2u8 {
                let s = resolve_crossing(&d, c, choice).unwrap();
                s.validate().unwrap();
                assert!(s.link_component_count() <= 2);
            }
        }
    }
}
