//! Cochain complexes over GF(2) with auxiliary gradings.
//!
//! A complex is a list of generators, each carrying a homological degree and a
//! three-slot grading key, together with a set of differential edges. The
//! differential raises homological degree by exactly 1. Grading key slots mean
//! whatever a caller wants them to mean (internal quantum and annular
//! gradings, filtration levels of synthetic complexes, ...); the operations
//! here only care which slots the differential preserves or filters.

use std::collections::{BTreeMap, BTreeSet};

use crate::matrix::SparseMatrixF2;
use crate::F2Error;

/// Auxiliary grading carried by one generator.
pub type Key = [i32; 3];

/// A generator together with its gradings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gen {
    pub hdeg: i32,
    pub key: Key,
}

/// Rank data keyed by homological degree and (masked) grading key.
pub type RankTable = BTreeMap<(i32, Key), usize>;

/// Cochain complex over GF(2).
#[derive(Clone, Debug, Default)]
pub struct GradedComplexF2 {
    gens: Vec<Gen>,
    out: Vec<BTreeSet<u32>>,
}

impl GradedComplexF2 {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_gen(&mut self, hdeg: i32, key: Key) -> u32 {
        self.gens.push(Gen { hdeg, key });
        self.out.push(BTreeSet::new());
        (self.gens.len() - 1) as u32
    }

    /// Flips the differential coefficient from `src` to `tgt`.
    pub fn toggle_edge(&mut self, src: u32, tgt: u32) {
        debug_assert_eq!(
            self.gens[src as usize].hdeg + 1,
            self.gens[tgt as usize].hdeg,
            "differential must raise homological degree by 1"
        );
        let set = &mut self.out[src as usize];
        if !set.insert(tgt) {
            set.remove(&tgt);
        }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gen(&self, id: u32) -> Gen {
        self.gens[id as usize]
    }

    pub fn gens(&self) -> impl Iterator<Item = (u32, Gen)> + '_ {
        self.gens.iter().enumerate().map(|(i, g)| (i as u32, *g))
    }

    pub fn out_edges(&self, id: u32) -> impl Iterator<Item = u32> + '_ {
        self.out[id as usize].iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(s, set)| set.iter().map(move |&t| (s as u32, t)))
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(|s| s.len()).sum()
    }

    /// Ids of all generators satisfying a predicate, in index order.
    pub fn gens_where(&self, mut pred: impl FnMut(Gen) -> bool) -> Vec<u32> {
        self.gens()
            .filter(|&(_, g)| pred(g))
            .map(|(id, _)| id)
            .collect()
    }

    /// Checks degree steps and d^2 = 0.
    pub fn validate(&self) -> Result<(), F2Error> {
        for (src, set) in self.out.iter().enumerate() {
            for &tgt in set {
                if self.gens[tgt as usize].hdeg != self.gens[src as usize].hdeg + 1 {
                    return Err(F2Error::BadDegreeStep {
                        src: src as u32,
                        tgt,
                    });
                }
            }
        }
        for src in 0..self.gens.len() {
            let mut acc: BTreeSet<u32> = BTreeSet::new();
            for &mid in &self.out[src] {
                for &tgt in &self.out[mid as usize] {
                    if !acc.insert(tgt) {
                        acc.remove(&tgt);
                    }
                }
            }
            if !acc.is_empty() {
                return Err(F2Error::DSquare { gen: src as u32 });
            }
        }
        Ok(())
    }

    /// Checks that the differential never raises the given key slot.
    pub fn validate_filtration(&self, coord: usize) -> Result<(), F2Error> {
        for (src, tgt) in self.edges() {
            let jump =
                self.gens[src as usize].key[coord] - self.gens[tgt as usize].key[coord];
            if jump < 0 {
                return Err(F2Error::FiltrationRaised {
                    src,
                    tgt,
                    coord,
                });
            }
        }
        Ok(())
    }

    /// Key with the non-selected slots zeroed out.
    pub fn masked_key(key: Key, mask: [bool; 3]) -> Key {
        let mut out = [0; 3];
        for (i, keep) in mask.iter().enumerate() {
            if *keep {
                out[i] = key[i];
            }
        }
        out
    }

    /// Generator counts per (homological degree, masked key).
    pub fn generator_table(&self, mask: [bool; 3]) -> RankTable {
        let mut table = RankTable::new();
        for g in &self.gens {
            *table
                .entry((g.hdeg, Self::masked_key(g.key, mask)))
                .or_insert(0) += 1;
        }
        table
    }

    /// Homology ranks per (homological degree, masked key).
    ///
    /// The mask selects key slots the differential is required to preserve;
    /// the complex splits into summands along those slots and each summand is
    /// handled by rank counting. An edge crossing between summands is an
    /// internal invariant violation.
    pub fn homology_table(&self, mask: [bool; 3]) -> Result<RankTable, F2Error> {
        self.validate()?;
        let mut blocks: BTreeMap<Key, Vec<u32>> = BTreeMap::new();
        for (id, g) in self.gens() {
            blocks
                .entry(Self::masked_key(g.key, mask))
                .or_default()
                .push(id);
        }
        for (src, tgt) in self.edges() {
            let a = Self::masked_key(self.gens[src as usize].key, mask);
            let b = Self::masked_key(self.gens[tgt as usize].key, mask);
            if a != b {
                return Err(F2Error::GroupingViolated { src, tgt });
            }
        }
        let mut table = RankTable::new();
        for (key, ids) in blocks {
            let mut by_deg: BTreeMap<i32, Vec<u32>> = BTreeMap::new();
            for id in ids {
                by_deg.entry(self.gens[id as usize].hdeg).or_default().push(id);
            }
            let degs: Vec<i32> = by_deg.keys().copied().collect();
            let mut rank_out: BTreeMap<i32, usize> = BTreeMap::new();
            for &n in &degs {
                let srcs = &by_deg[&n];
                let tgts = by_deg.get(&(n + 1));
                let rank = match tgts {
                    Some(tgts) => self.matrix_between(srcs, tgts).rank(),
                    None => 0,
                };
                rank_out.insert(n, rank);
            }
            for &n in &degs {
                let dim = by_deg[&n].len();
                let r_out = rank_out[&n];
                let r_in = rank_out.get(&(n - 1)).copied().unwrap_or(0);
                let h = dim - r_out - r_in;
                if h > 0 {
                    table.insert((n, key), h);
                }
            }
        }
        Ok(table)
    }

    /// The differential block from `srcs` to `tgts` as a matrix whose columns
    /// index `srcs` and rows index `tgts` (in the order given).
    pub fn matrix_between(&self, srcs: &[u32], tgts: &[u32]) -> SparseMatrixF2 {
        let pos: BTreeMap<u32, u32> = tgts
            .iter()
            .enumerate()
            .map(|(i, &id)| (id, i as u32))
            .collect();
        let columns = srcs
            .iter()
            .map(|&s| {
                self.out[s as usize]
                    .iter()
                    .filter_map(|t| pos.get(t).copied())
                    .collect()
            })
            .collect();
        SparseMatrixF2::from_columns(tgts.len(), columns)
    }

    /// The same complex with generators listed in a permuted order.
    /// `perm[new_index] = old_index`; edges and gradings follow along.
    pub fn permuted(&self, perm: &[u32]) -> GradedComplexF2 {
        assert_eq!(perm.len(), self.gens.len());
        let mut inv = vec![0u32; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inv[old as usize] = new as u32;
        }
        let mut cx = GradedComplexF2::new();
        for &old in perm {
            let g = self.gens[old as usize];
            cx.add_gen(g.hdeg, g.key);
        }
        for (src, tgt) in self.edges() {
            cx.toggle_edge(inv[src as usize], inv[tgt as usize]);
        }
        cx
    }

    /// Total rank of a table.
    pub fn table_total(table: &RankTable) -> usize {
        table.values().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Interval complex: x -> y contributes nothing to homology; z survives.
    #[test]
    fn interval_plus_point() {
        let mut cx = GradedComplexF2::new();
        let x = cx.add_gen(0, [0, 0, 0]);
        let y = cx.add_gen(1, [0, 0, 0]);
        let _z = cx.add_gen(5, [2, 0, 0]);
        cx.toggle_edge(x, y);
        let h = cx.homology_table([true, false, false]).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h[&(5, [2, 0, 0])], 1);
    }

    #[test]
    fn d_square_detected() {
        let mut cx = GradedComplexF2::new();
        let a = cx.add_gen(0, [0; 3]);
        let b = cx.add_gen(1, [0; 3]);
        let c = cx.add_gen(2, [0; 3]);
        cx.toggle_edge(a, b);
        cx.toggle_edge(b, c);
        assert!(matches!(cx.validate(), Err(F2Error::DSquare { .. })));
        // A second route b' makes the squares cancel mod 2.
        let b2 = cx.add_gen(1, [0; 3]);
        cx.toggle_edge(a, b2);
        cx.toggle_edge(b2, c);
        assert!(cx.validate().is_ok());
    }

    #[test]
    fn permutation_invariance() {
        let mut cx = GradedComplexF2::new();
        let a = cx.add_gen(0, [1, 0, 0]);
        let b = cx.add_gen(1, [1, 0, 0]);
        let c = cx.add_gen(1, [1, 0, 0]);
        cx.toggle_edge(a, b);
        cx.toggle_edge(a, c);
        let h1 = cx.homology_table([true; 3]).unwrap();
        let h2 = cx.permuted(&[2, 0, 1]).homology_table([true; 3]).unwrap();
        assert_eq!(h1, h2);
    }
}
