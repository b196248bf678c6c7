//! Mapping cones of filtered chain maps and explicit page-1 complexes.
//!
//! A map between cochain complexes is given as a list of arrows from
//! generators of the source to generators of the target, raising homological
//! degree by 1 (the cone convention used throughout: the cone of f is the
//! direct sum of the two generator sets with differential d_A + f + d_B and
//! no degree shift). Chain-map-ness is certified by validating d^2 = 0 on the
//! assembled cone.
//!
//! For a map whose arrows all strictly drop a filtration slot, the page-1
//! groups of the cone are the disjoint union of the page-1 groups of the two
//! sides, and the page-1 differential is the cone of the induced page-1 map.
//! `page1_complex` and `page1_map` build those objects explicitly from
//! representative cycles, independently of the cancellation engine, so the
//! two routes can be compared.

use std::collections::{BTreeMap, BTreeSet};

use crate::bits::BitVec;
use crate::complex::{GradedComplexF2, RankTable};
use crate::matrix::{Eliminator, Reduced};
use crate::F2Error;

/// A mapping cone together with the generator embeddings of its two sides.
pub struct MappingCone {
    pub complex: GradedComplexF2,
    pub from_src: Vec<u32>,
    pub from_tgt: Vec<u32>,
}

/// Assembles the cone of `f: a -> b` (arrows raise hdeg by 1) and validates
/// that the result is a complex, which is equivalent to f being a chain map.
pub fn mapping_cone(
    a: &GradedComplexF2,
    b: &GradedComplexF2,
    f: &[(u32, u32)],
) -> Result<MappingCone, F2Error> {
    let mut cx = GradedComplexF2::new();
    let from_src: Vec<u32> = a.gens().map(|(_, g)| cx.add_gen(g.hdeg, g.key)).collect();
    let from_tgt: Vec<u32> = b.gens().map(|(_, g)| cx.add_gen(g.hdeg, g.key)).collect();
    for (s, t) in a.edges() {
        cx.toggle_edge(from_src[s as usize], from_src[t as usize]);
    }
    for (s, t) in b.edges() {
        cx.toggle_edge(from_tgt[s as usize], from_tgt[t as usize]);
    }
    for &(s, t) in f {
        if b.gen(t).hdeg != a.gen(s).hdeg + 1 {
            return Err(F2Error::ConeArrowDegree { src: s, tgt: t });
        }
        cx.toggle_edge(from_src[s as usize], from_tgt[t as usize]);
    }
    cx.validate()?;
    Ok(MappingCone {
        complex: cx,
        from_src,
        from_tgt,
    })
}

/// Checks that every arrow of `f` drops the filtration slot by at least
/// `min_drop`.
pub fn validate_strict_drop(
    a: &GradedComplexF2,
    b: &GradedComplexF2,
    f: &[(u32, u32)],
    coord: usize,
    min_drop: i32,
) -> Result<(), F2Error> {
    for &(s, t) in f {
        let drop = a.gen(s).key[coord] - b.gen(t).key[coord];
        if drop < min_drop {
            return Err(F2Error::ArrowJumpTooSmall {
                src: s,
                tgt: t,
                jump: drop,
                step: min_drop,
            });
        }
    }
    Ok(())
}

struct Block {
    /// Global generator ids of this (hdeg, level) block, sorted.
    gens: Vec<u32>,
    /// Boundary vectors of the level-preserving differential, block coords.
    boundaries: Vec<BitVec>,
    /// Representative cycles spanning the page-1 classes, block coords.
    reps: Vec<BitVec>,
    /// Generator ids of the reps inside the page-1 complex.
    page_ids: Vec<u32>,
}

impl Block {
    /// Expresses a cycle of the block in the page-1 basis; returns the page
    /// generator ids carrying coefficient 1.
    fn express(&self, vec: &BitVec) -> Result<Vec<u32>, F2Error> {
        let nr = self.reps.len();
        let mut elim = Eliminator::with_tracking(self.gens.len(), nr);
        for v in &self.boundaries {
            elim.push(v.clone(), None);
        }
        for (j, rep) in self.reps.iter().enumerate() {
            let mut combo = BitVec::zeros(nr);
            combo.toggle(j);
            elim.push(rep.clone(), Some(combo));
        }
        match elim.probe(vec) {
            Some(combo) => Ok(combo
                .iter_ones()
                .map(|j| self.page_ids[j])
                .collect()),
            None => Err(F2Error::Internal(
                "vector is not a cycle modulo boundaries of its block".into(),
            )),
        }
    }
}

/// Page 1 of the filtration on key slot `coord`, built from representative
/// cycles of the level-preserving differential. The complex's generators are
/// the page-1 classes (hdeg kept, key = level in slot `coord`) and its
/// differential is the induced page-1 differential (level drop `step`).
pub struct Page1 {
    pub complex: GradedComplexF2,
    coord: usize,
    step: i32,
    blocks: BTreeMap<(i32, i32), Block>,
}

impl Page1 {
    pub fn groups(&self) -> RankTable {
        self.complex.generator_table([true; 3])
    }
}

/// Builds the page-1 complex of the filtration on `coord` with level step
/// `step`.
pub fn page1_complex(
    cx: &GradedComplexF2,
    coord: usize,
    step: i32,
) -> Result<Page1, F2Error> {
    cx.validate()?;
    cx.validate_filtration(coord)?;
    let mut members: BTreeMap<(i32, i32), Vec<u32>> = BTreeMap::new();
    for (id, g) in cx.gens() {
        members.entry((g.hdeg, g.key[coord])).or_default().push(id);
    }
    let mut complex = GradedComplexF2::new();
    let mut blocks: BTreeMap<(i32, i32), Block> = BTreeMap::new();
    for (&(hdeg, level), gens) in &members {
        let empty: &[u32] = &[];
        let tgts = members.get(&(hdeg + 1, level)).map_or(empty, Vec::as_slice);
        let srcs = members.get(&(hdeg - 1, level)).map_or(empty, Vec::as_slice);
        let out = level_matrix(cx, coord, gens, tgts);
        let inn = level_matrix(cx, coord, srcs, gens);
        let boundaries: Vec<BitVec> = (0..inn.ncols())
            .map(|c| BitVec::from_indices(gens.len(), inn.column(c)))
            .filter(|v| !v.is_zero())
            .collect();
        let mut elim = Eliminator::new(gens.len());
        for v in &boundaries {
            elim.push(v.clone(), None);
        }
        let mut reps = Vec::new();
        let mut page_ids = Vec::new();
        for support in out.kernel_basis() {
            let v = BitVec::from_indices(gens.len(), &support);
            if let Reduced::Independent = elim.push(v.clone(), None) {
                let mut key = [0i32; 3];
                key[coord] = level;
                page_ids.push(complex.add_gen(hdeg, key));
                reps.push(v);
            }
        }
        blocks.insert(
            (hdeg, level),
            Block {
                gens: gens.clone(),
                boundaries,
                reps,
                page_ids,
            },
        );
    }
    // Induced differential: push each representative through the full
    // differential and read off the component exactly one level down.
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for ((hdeg, level), block) in &blocks {
        for (j, rep) in block.reps.iter().enumerate() {
            let support: Vec<u32> = rep.iter_ones().map(|i| block.gens[i]).collect();
            let image = apply_d(cx, &support);
            let down: Vec<u32> = image
                .into_iter()
                .filter(|&g| cx.gen(g).key[coord] == level - step)
                .collect();
            if down.is_empty() {
                continue;
            }
            let down_block = blocks.get(&(hdeg + 1, level - step)).ok_or_else(|| {
                F2Error::Internal("page-1 image lands outside every block".into())
            })?;
            let vec = support_to_block(&down, &down_block.gens);
            for id in down_block.express(&vec)? {
                edges.push((block.page_ids[j], id));
            }
        }
    }
    for (s, t) in edges {
        complex.toggle_edge(s, t);
    }
    complex.validate()?;
    Ok(Page1 {
        complex,
        coord,
        step,
        blocks,
    })
}

/// Induced page-1 map of a strictly level-dropping chain map `f: a -> b`:
/// the component of f dropping exactly `step`, acting on page-1 classes.
/// Returned as arrows between the two page-1 complexes' generators.
pub fn page1_map(
    pa: &Page1,
    pb: &Page1,
    b: &GradedComplexF2,
    f: &[(u32, u32)],
) -> Result<Vec<(u32, u32)>, F2Error> {
    assert_eq!(pa.coord, pb.coord);
    assert_eq!(pa.step, pb.step);
    let coord = pa.coord;
    let mut fmap: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &(s, t) in f {
        fmap.entry(s).or_default().push(t);
    }
    let mut arrows = Vec::new();
    for ((hdeg, level), block) in &pa.blocks {
        let tgt_level = level - pa.step;
        for (j, rep) in block.reps.iter().enumerate() {
            let mut image: BTreeSet<u32> = BTreeSet::new();
            for i in rep.iter_ones() {
                if let Some(ts) = fmap.get(&block.gens[i]) {
                    for &t in ts {
                        if !image.insert(t) {
                            image.remove(&t);
                        }
                    }
                }
            }
            let down: Vec<u32> = image
                .into_iter()
                .filter(|&t| b.gen(t).key[coord] == tgt_level)
                .collect();
            if down.is_empty() {
                continue;
            }
            let down_block = pb.blocks.get(&(hdeg + 1, tgt_level)).ok_or_else(|| {
                F2Error::Internal("page-1 map image lands outside every block".into())
            })?;
            let vec = support_to_block(&down, &down_block.gens);
            for id in down_block.express(&vec)? {
                arrows.push((block.page_ids[j], id));
            }
        }
    }
    Ok(arrows)
}

/// Coordinates of classes in the homology of one homological degree.
struct HomologyCoords {
    gens: Vec<u32>,
    dim: usize,
    elim: Eliminator,
}

impl HomologyCoords {
    fn new(cx: &GradedComplexF2, deg: i32) -> Self {
        let gens = cx.gens_where(|g| g.hdeg == deg);
        let next = cx.gens_where(|g| g.hdeg == deg + 1);
        let prev = cx.gens_where(|g| g.hdeg == deg - 1);
        let d_out = cx.matrix_between(&gens, &next);
        let d_in = cx.matrix_between(&prev, &gens);
        let boundaries: Vec<BitVec> = (0..d_in.ncols())
            .map(|c| BitVec::from_indices(gens.len(), d_in.column(c)))
            .collect();
        let kernel: Vec<BitVec> = d_out
            .kernel_basis()
            .into_iter()
            .map(|s| BitVec::from_indices(gens.len(), &s))
            .collect();
        // First pass to size the homology basis, second pass with tracking.
        let mut count = Eliminator::new(gens.len());
        for v in &boundaries {
            count.push(v.clone(), None);
        }
        let mut reps: Vec<&BitVec> = Vec::new();
        for v in &kernel {
            if let Reduced::Independent = count.push(v.clone(), None) {
                reps.push(v);
            }
        }
        let dim = reps.len();
        let mut elim = Eliminator::with_tracking(gens.len(), dim);
        for v in &boundaries {
            elim.push(v.clone(), None);
        }
        for (j, v) in reps.iter().enumerate() {
            let mut combo = BitVec::zeros(dim);
            combo.toggle(j);
            elim.push((*v).clone(), Some(combo));
        }
        HomologyCoords { gens, dim, elim }
    }

    /// Class coordinates of a cycle given by global generator support.
    fn coords(&self, support: &[u32]) -> Result<BitVec, F2Error> {
        let vec = support_to_block(support, &self.gens);
        self.elim.probe(&vec).ok_or_else(|| {
            F2Error::Internal("chain map image is not a cycle".into())
        })
    }
}

/// Rank of the induced map H^n(a) -> H^{n+1}(b), per n (arrows raise hdeg).
pub fn homology_map_ranks(
    a: &GradedComplexF2,
    b: &GradedComplexF2,
    f: &[(u32, u32)],
) -> Result<BTreeMap<i32, usize>, F2Error> {
    a.validate()?;
    b.validate()?;
    let mut fmap: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &(s, t) in f {
        fmap.entry(s).or_default().push(t);
    }
    let mut degs: Vec<i32> = a.gens().map(|(_, g)| g.hdeg).collect();
    degs.sort_unstable();
    degs.dedup();
    let mut out = BTreeMap::new();
    for n in degs {
        let src = HomologyCoords::new(a, n);
        if src.dim == 0 {
            continue;
        }
        let tgt = HomologyCoords::new(b, n + 1);
        // Homology basis representatives of a at degree n.
        let gens = a.gens_where(|g| g.hdeg == n);
        let next = a.gens_where(|g| g.hdeg == n + 1);
        let prev = a.gens_where(|g| g.hdeg == n - 1);
        let d_out = a.matrix_between(&gens, &next);
        let d_in = a.matrix_between(&prev, &gens);
        let mut elim = Eliminator::new(gens.len());
        for c in 0..d_in.ncols() {
            elim.reduce_sparse(d_in.column(c), None);
        }
        let mut rank_elim = Eliminator::new(tgt.dim.max(1));
        let mut rank = 0usize;
        for support in d_out.kernel_basis() {
            let v = BitVec::from_indices(gens.len(), &support);
            if let Reduced::Independent = elim.push(v, None) {
                let rep: Vec<u32> = support.iter().map(|&i| gens[i as usize]).collect();
                let mut image: BTreeSet<u32> = BTreeSet::new();
                for g in &rep {
                    if let Some(ts) = fmap.get(g) {
                        for &t in ts {
                            if !image.insert(t) {
                                image.remove(&t);
                            }
                        }
                    }
                }
                let image: Vec<u32> = image.into_iter().collect();
                let coords = tgt.coords(&image)?;
                if coords.is_zero() {
                    continue;
                }
                let mut padded = BitVec::zeros(tgt.dim.max(1));
                for i in coords.iter_ones() {
                    padded.toggle(i);
                }
                if let Reduced::Independent = rank_elim.push(padded, None) {
                    rank += 1;
                }
            }
        }
        if rank > 0 {
            out.insert(n, rank);
        }
    }
    Ok(out)
}

/// d applied to a sum of generators, as a sorted support list.
pub fn apply_d(cx: &GradedComplexF2, support: &[u32]) -> Vec<u32> {
    let mut acc: BTreeSet<u32> = BTreeSet::new();
    for &g in support {
        for t in cx.out_edges(g) {
            if !acc.insert(t) {
                acc.remove(&t);
            }
        }
    }
    acc.into_iter().collect()
}

fn support_to_block(support: &[u32], block_gens: &[u32]) -> BitVec {
    let mut v = BitVec::zeros(block_gens.len());
    for &g in support {
        let pos = block_gens
            .binary_search(&g)
            .expect("support must lie inside the block");
        v.toggle(pos);
    }
    v
}

/// Differential block between two generator lists, restricted to edges
/// preserving the filtration slot.
fn level_matrix(
    cx: &GradedComplexF2,
    coord: usize,
    srcs: &[u32],
    tgts: &[u32],
) -> crate::matrix::SparseMatrixF2 {
    let pos: BTreeMap<u32, u32> = tgts
        .iter()
        .enumerate()
        .map(|(i, &id)| (id, i as u32))
        .collect();
    let cols = srcs
        .iter()
        .map(|&s| {
            cx.out_edges(s)
                .filter(|&t| cx.gen(t).key[coord] == cx.gen(s).key[coord])
                .filter_map(|t| pos.get(&t).copied())
                .collect()
        })
        .collect();
    crate::matrix::SparseMatrixF2::from_columns(tgts.len(), cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two-term complexes 0 -> F -> 0 and a map hitting the class.
    #[test]
    fn cone_of_isomorphism_is_acyclic() {
        let mut a = GradedComplexF2::new();
        let x = a.add_gen(0, [1, 0, 0]);
        let mut b = GradedComplexF2::new();
        let y = b.add_gen(1, [0, 0, 0]);
        let cone = mapping_cone(&a, &b, &[(x, y)]).unwrap();
        assert_eq!(cone.complex.len(), 2);
        assert!(cone
            .complex
            .homology_table([false; 3])
            .unwrap()
            .is_empty());
        let ranks = homology_map_ranks(&a, &b, &[(x, y)]).unwrap();
        assert_eq!(ranks[&0], 1);
    }

    #[test]
    fn cone_rejects_non_chain_maps() {
        let mut a = GradedComplexF2::new();
        let x = a.add_gen(0, [1, 0, 0]);
        let xp = a.add_gen(1, [1, 0, 0]);
        a.toggle_edge(x, xp);
        let mut b = GradedComplexF2::new();
        let y = b.add_gen(1, [0, 0, 0]);
        let yp = b.add_gen(2, [0, 0, 0]);
        b.toggle_edge(y, yp);
        // f(x) = y fails f d = d f: the composite d_B f x = y' has no
        // cancelling partner, so the assembled cone has d^2 != 0.
        assert!(mapping_cone(&a, &b, &[(x, y)]).is_err());
    }

    #[test]
    fn page1_of_unfiltered_complex_is_homology() {
        let mut cx = GradedComplexF2::new();
        let x = cx.add_gen(0, [0; 3]);
        let y = cx.add_gen(1, [0; 3]);
        let z = cx.add_gen(1, [0; 3]);
        cx.toggle_edge(x, y);
        cx.toggle_edge(x, z);
        let page = page1_complex(&cx, 0, 1).unwrap();
        // One class survives in degree 1 (y + z is hit, y alone is not).
        assert_eq!(GradedComplexF2::table_total(&page.groups()), 1);
        assert_eq!(page.complex.edge_count(), 0);
    }
}
