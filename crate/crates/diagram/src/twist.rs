//! Twist regions: maximal chains of crossings joined by bigon faces.

use crate::faces::{faces, ray_trace};
use crate::{AnnularDiagram, DiagramError};

#[derive(Clone, Debug)]
pub struct TwistRegions {
    /// Region id per crossing.
    pub region: Vec<usize>,
    /// Common sign per region.
    pub signs: Vec<i8>,
}

/// Groups crossings into twist regions: two crossings belong together when
/// some bigon face runs between them. The faces holding the axis and the
/// point at infinity do not count: a two-sided face there wraps around the
/// annulus instead of bounding a twist disk. Every region must be uniformly
/// signed, as mixed bigon chains cancel by planar isotopy and would make
/// the twist count ill-defined.
pub fn twist_regions(d: &AnnularDiagram) -> Result<TwistRegions, DiagramError> {
    let n = d.crossing_count();
    if n == 0 {
        return Ok(TwistRegions {
            region: Vec::new(),
            signs: Vec::new(),
        });
    }
    let f = faces(d)?;
    let trace = ray_trace(d, &f)?;
    let ends = d.arc_ends()?;
    let mut dsu: Vec<usize> = (0..n).collect();
    fn find(dsu: &mut Vec<usize>, x: usize) -> usize {
        let mut root = x;
        while dsu[root] != root {
            root = dsu[root];
        }
        let mut cur = x;
        while dsu[cur] != root {
            let next = dsu[cur];
            dsu[cur] = root;
            cur = next;
        }
        root
    }
    for (face, orbit) in f.orbits().into_iter().enumerate() {
        if face == trace.inner || face == trace.unbounded {
            continue;
        }
        let [(a1, f1), (a2, f2)] = orbit[..] else {
            continue;
        };
        let end = |arc: u32, forward: bool| {
            if forward {
                ends[arc as usize].head.crossing
            } else {
                ends[arc as usize].tail.crossing
            }
        };
        let (c1, c2) = (end(a1, f1), end(a2, f2));
        if c1 != c2 {
            let (r1, r2) = (find(&mut dsu, c1), find(&mut dsu, c2));
            dsu[r1] = r2;
        }
    }
    let mut region = vec![usize::MAX; n];
    let mut signs = Vec::new();
    for c in 0..n {
        let root = find(&mut dsu, c);
        if region[root] == usize::MAX {
            region[root] = signs.len();
            signs.push(d.crossings()[c].sign);
        }
        region[c] = region[root];
        if signs[region[c]] != d.crossings()[c].sign {
            return Err(DiagramError::MixedTwistRegion);
        }
    }
    Ok(TwistRegions { region, signs })
}

/// Twist count: negatively twisted regions minus positively twisted ones.
pub fn twist_number(d: &AnnularDiagram) -> Result<i32, DiagramError> {
    let regions = twist_regions(d)?;
    Ok(regions
        .signs
        .iter()
        .map(|&s| if s < 0 { 1 } else { -1 })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::braid_closure;
    use crate::surgery::insert_kink;

    #[test]
    fn single_blocks_are_single_regions() {
        assert_eq!(twist_number(&braid_closure(2, &[1]).unwrap()).unwrap(), -1);
        assert_eq!(twist_number(&braid_closure(2, &[-1]).unwrap()).unwrap(), 1);
        assert_eq!(twist_number(&braid_closure(2, &[1, 1]).unwrap()).unwrap(), -1);
        assert_eq!(
            twist_number(&braid_closure(2, &[1, 1, 1]).unwrap()).unwrap(),
            -1
        );
        assert_eq!(
            twist_number(&braid_closure(1, &[]).unwrap()).unwrap(),
            0
        );
    }

    #[test]
    fn kinks_are_their_own_regions() {
        let mut d = braid_closure(2, &[1]).unwrap();
        d = insert_kink(&d, 0, -1, true).unwrap();
        let regions = twist_regions(&d).unwrap();
        assert_eq!(regions.signs.len(), 2);
        assert_eq!(twist_number(&d).unwrap(), 0);
        let e = insert_kink(&d, 0, -1, false).unwrap();
        assert_eq!(twist_number(&e).unwrap(), 1);
    }

    #[test]
    fn figure_eight_has_four_regions() {
        let d = braid_closure(3, &[1, -2, 1, -2]).unwrap();
        let regions = twist_regions(&d).unwrap();
        assert_eq!(regions.signs.len(), 4);
        assert_eq!(twist_number(&d).unwrap(), 0);
    }

    #[test]
    fn cancelling_pair_is_mixed() {
        let d = braid_closure(2, &[1, -1]).unwrap();
        assert!(matches!(
            twist_regions(&d),
            Err(DiagramError::MixedTwistRegion)
        ));
    }
}
