//! Checks the cancellation-based spectral sequence against the textbook
//! subquotient definition, computed here from scratch with u64 bitmasks:
//!
//!   Z_r^p(n)   = { x in F_p C^n : dx in F_{p-r} C^{n+1} }
//!   E_r^{p,n}  = Z_r^p(n) / ( Z_{r-1}^{p-1}(n) + d Z_{r-1}^{p+r-1}(n-1) )
//!
//! where F_p is spanned by the generators of filtration <= p. Both summands
//! of the denominator land inside Z_r^p(n), so the quotient dimension is a
//! difference of two span ranks.

use std::collections::BTreeMap;

use annular_f2::complex::{GradedComplexF2, RankTable};
use annular_f2::random::{
    random_bifiltered_complex, random_filtered_complex, rng, RandomSpec,
};
use annular_f2::reduce::{homology_by_cancellation, reduce_bifiltered, spectral_pages};
use rand::seq::SliceRandom;

struct DegLayer {
    filt: Vec<i32>,
    /// Differential of each position, as a bitmask over next-degree positions.
    d: Vec<u64>,
}

struct Oracle {
    layers: BTreeMap<i32, DegLayer>,
    min_p: i32,
    max_p: i32,
}

fn rank64(vectors: &[u64]) -> usize {
    let mut pivots: Vec<u64> = Vec::new();
    let mut rank = 0;
    for &v in vectors {
        let mut v = v;
        for &p in &pivots {
            if v & (p & p.wrapping_neg()) != 0 {
                v ^= p;
            }
        }
        if v != 0 {
            pivots.push(v);
            rank += 1;
        }
    }
    rank
}

/// Kernel of the linear map with the given columns, as combination masks
/// over column indices.
fn kernel_combos(columns: &[u64]) -> Vec<u64> {
    assert!(columns.len() <= 64);
    let mut pivots: Vec<(u64, u64)> = Vec::new();
    let mut kernel = Vec::new();
    for (i, &col) in columns.iter().enumerate() {
        let mut v = col;
        let mut combo = 1u64 << i;
        for &(pv, pc) in &pivots {
            if v & (pv & pv.wrapping_neg()) != 0 {
                v ^= pv;
                combo ^= pc;
            }
        }
        if v == 0 {
            kernel.push(combo);
        } else {
            pivots.push((v, combo));
        }
    }
    kernel
}

impl Oracle {
    fn build(cx: &GradedComplexF2, coord: usize) -> Oracle {
        let mut ids: BTreeMap<i32, Vec<u32>> = BTreeMap::new();
        for (id, g) in cx.gens() {
            ids.entry(g.hdeg).or_default().push(id);
        }
        let mut pos: BTreeMap<u32, usize> = BTreeMap::new();
        for list in ids.values() {
            assert!(list.len() <= 64, "oracle is limited to 64 generators per degree");
            for (i, &id) in list.iter().enumerate() {
                pos.insert(id, i);
            }
        }
        let mut layers = BTreeMap::new();
        let mut min_p = i32::MAX;
        let mut max_p = i32::MIN;
        for (&n, list) in &ids {
            let mut filt = Vec::new();
            let mut d = Vec::new();
            for &id in list {
                let p = cx.gen(id).key[coord];
                min_p = min_p.min(p);
                max_p = max_p.max(p);
                let mut mask = 0u64;
                for t in cx.out_edges(id) {
                    mask |= 1 << pos[&t];
                }
                filt.push(p);
                d.push(mask);
            }
            layers.insert(n, DegLayer { filt, d });
        }
        Oracle { layers, min_p, max_p }
    }

    /// Basis of Z_r^p at degree n, as position masks over that degree.
    fn z_basis(&self, n: i32, p: i32, r: i32) -> Vec<u64> {
        let layer = match self.layers.get(&n) {
            Some(l) => l,
            None => return Vec::new(),
        };
        let high: u64 = match self.layers.get(&(n + 1)) {
            Some(next) => next
                .filt
                .iter()
                .enumerate()
                .filter(|&(_, &q)| q > p - r)
                .fold(0u64, |m, (i, _)| m | (1 << i)),
            None => 0,
        };
        let sources: Vec<usize> = (0..layer.filt.len()).filter(|&i| layer.filt[i] <= p).collect();
        let columns: Vec<u64> = sources.iter().map(|&i| layer.d[i] & high).collect();
        kernel_combos(&columns)
            .into_iter()
            .map(|combo| {
                let mut mask = 0u64;
                for (j, &src) in sources.iter().enumerate() {
                    if combo & (1 << j) != 0 {
                        mask |= 1 << src;
                    }
                }
                mask
            })
            .collect()
    }

    fn apply_d(&self, n: i32, mask: u64) -> u64 {
        let layer = &self.layers[&n];
        let mut out = 0u64;
        for i in 0..layer.d.len() {
            if mask & (1 << i) != 0 {
                out ^= layer.d[i];
            }
        }
        out
    }

    fn dim_e(&self, n: i32, p: i32, r: i32) -> usize {
        let z = self.z_basis(n, p, r);
        let mut den = self.z_basis(n, p - 1, r - 1);
        if self.layers.contains_key(&(n - 1)) {
            for v in self.z_basis(n - 1, p + r - 1, r - 1) {
                den.push(self.apply_d(n - 1, v));
            }
        }
        rank64(&z) - rank64(&den)
    }

    /// Page-r dimensions per (hdeg, filtration), nonzero entries only.
    fn page(&self, r: i32) -> BTreeMap<(i32, i32), usize> {
        let mut table = BTreeMap::new();
        for &n in self.layers.keys() {
            for p in self.min_p..=self.max_p {
                let dim = self.dim_e(n, p, r);
                if dim > 0 {
                    table.insert((n, p), dim);
                }
            }
        }
        table
    }

    /// Any page at least this index equals the limit.
    fn stable_r(&self) -> i32 {
        self.max_p - self.min_p + 2
    }
}

fn project(table: &RankTable, coord: usize) -> BTreeMap<(i32, i32), usize> {
    let mut out = BTreeMap::new();
    for (&(n, key), &count) in table {
        *out.entry((n, key[coord])).or_insert(0) += count;
    }
    out
}

fn total(table: &BTreeMap<(i32, i32), usize>) -> usize {
    table.values().sum()
}

#[test]
fn pages_match_subquotient_definition() {
    let mut r = rng(11);
    for trial in 0..30 {
        let spec = RandomSpec {
            gens: 13,
            hdeg_span: 4,
            filt_span: 5,
            stir: 45,
            ..RandomSpec::default()
        };
        let cx = random_filtered_complex(&mut r, spec);
        let oracle = Oracle::build(&cx, 0);
        let ss = spectral_pages(&cx, 0, 1, 4).unwrap();
        for page in 1..=4usize {
            assert_eq!(
                project(&ss.pages[page - 1].groups, 0),
                oracle.page(page as i32),
                "trial {trial}: page {page} disagrees with the subquotient definition"
            );
        }
        assert_eq!(
            project(&ss.einfty, 0),
            oracle.page(oracle.stable_r()),
            "trial {trial}: limit page disagrees"
        );
    }
}

#[test]
fn differential_ranks_match_page_drops() {
    // The page-r differential kills its rank from both source and target, so
    //   dim E_{r+1}(n, p) = dim E_r(n, p) - rank out of (n, p) - rank into (n, p)
    // with the incoming rank read off the block at (n-1, p+r).
    let mut r = rng(12);
    for trial in 0..20 {
        let spec = RandomSpec {
            gens: 12,
            hdeg_span: 4,
            filt_span: 5,
            stir: 40,
            ..RandomSpec::default()
        };
        let cx = random_filtered_complex(&mut r, spec);
        let oracle = Oracle::build(&cx, 0);
        let ss = spectral_pages(&cx, 0, 1, 4).unwrap();
        for page in 1..=4 {
            let cur = oracle.page(page);
            let next = oracle.page(page + 1);
            let rank_out = |n: i32, p: i32| -> usize {
                ss.pages[page as usize - 1]
                    .d_ranks
                    .get(&(n, [p, 0, 0]))
                    .copied()
                    .unwrap_or(0)
            };
            for n in -1..=5 {
                for p in oracle.min_p - 1..=oracle.max_p + 1 {
                    let lhs = next.get(&(n, p)).copied().unwrap_or(0);
                    let cur_dim = cur.get(&(n, p)).copied().unwrap_or(0);
                    let rhs = cur_dim - rank_out(n, p) - rank_out(n - 1, p + page as i32);
                    assert_eq!(
                        lhs, rhs,
                        "trial {trial}: page {page} rank bookkeeping fails at ({n}, {p})"
                    );
                }
            }
        }
    }
}

#[test]
fn pages_match_on_both_slots_of_bifiltered_complexes() {
    let mut r = rng(13);
    for trial in 0..16 {
        let spec = RandomSpec {
            gens: 12,
            hdeg_span: 3,
            filt_span: 4,
            stir: 40,
            ..RandomSpec::default()
        };
        let cx = random_bifiltered_complex(&mut r, spec);
        for coord in [0usize, 1] {
            let oracle = Oracle::build(&cx, coord);
            let ss = spectral_pages(&cx, coord, 1, 4).unwrap();
            for page in 1..=4usize {
                let cls = oracle.page(page as i32);
                assert_eq!(
                    project(&ss.pages[page - 1].groups, coord),
                    cls,
                    "trial {trial}: slot {coord} page {page} disagrees"
                );
                // Each cancelled page-r pair removes one source and one target.
                let drop = total(&cls) - total(&oracle.page(page as i32 + 1));
                let summed: usize = ss.pages[page - 1].d_ranks.values().sum();
                assert_eq!(2 * summed, drop, "trial {trial}: slot {coord} page {page} rank sum");
            }
            assert_eq!(
                project(&ss.einfty, coord),
                oracle.page(oracle.stable_r()),
                "trial {trial}: slot {coord} limit page disagrees"
            );
        }
    }
}

#[test]
fn pages_are_basis_independent() {
    let mut r = rng(14);
    for trial in 0..10 {
        let cx = random_filtered_complex(&mut r, RandomSpec::default());
        let mut perm: Vec<u32> = (0..cx.len() as u32).collect();
        perm.shuffle(&mut r);
        let shuffled = cx.permuted(&perm);
        let a = spectral_pages(&cx, 0, 1, 4).unwrap();
        let b = spectral_pages(&shuffled, 0, 1, 4).unwrap();
        for (pa, pb) in a.pages.iter().zip(&b.pages) {
            assert_eq!(pa.groups, pb.groups, "trial {trial}: groups depend on ordering");
            assert_eq!(pa.d_ranks, pb.d_ranks, "trial {trial}: ranks depend on ordering");
        }
        assert_eq!(a.einfty, b.einfty, "trial {trial}");
        assert_eq!(a.collapse_page, b.collapse_page, "trial {trial}");
    }
}

#[test]
fn limit_page_refines_homology() {
    let mut r = rng(15);
    for trial in 0..20 {
        let cx = random_bifiltered_complex(&mut r, RandomSpec::default());
        let homology = cx.homology_table([false; 3]).unwrap();
        assert_eq!(
            homology,
            homology_by_cancellation(&cx, [false; 3]).unwrap(),
            "trial {trial}: the two homology routes disagree"
        );
        let ss = spectral_pages(&cx, 0, 1, 2).unwrap();
        let mut per_degree: RankTable = RankTable::new();
        for (&(n, _), &count) in &ss.einfty {
            *per_degree.entry((n, [0, 0, 0])).or_insert(0) += count;
        }
        assert_eq!(per_degree, homology, "trial {trial}: limit page does not sum to homology");
    }
}

#[test]
fn bifiltered_reduction_keeps_both_spectral_sequences() {
    let mut r = rng(16);
    for trial in 0..16 {
        let spec = RandomSpec {
            gens: 12,
            hdeg_span: 3,
            filt_span: 4,
            stir: 40,
            ..RandomSpec::default()
        };
        let cx = random_bifiltered_complex(&mut r, spec);
        let (out, report) = reduce_bifiltered(&cx, (0, 1)).unwrap();
        assert_eq!(cx.len() - out.len(), 2 * report.cancelled_pairs, "trial {trial}");
        assert_eq!(out.edge_count(), report.remaining_entries, "trial {trial}");
        for (s, t) in out.edges() {
            let (a, b) = (out.gen(s), out.gen(t));
            assert!(
                a.key[0] != b.key[0] || a.key[1] != b.key[1],
                "trial {trial}: a zero-jump entry survived"
            );
        }
        // Survivor counts are the homology of the jump-(0,0) part.
        let mut diagonal = GradedComplexF2::new();
        for (_, g) in cx.gens() {
            diagonal.add_gen(g.hdeg, g.key);
        }
        for (s, t) in cx.edges() {
            if cx.gen(s).key == cx.gen(t).key {
                diagonal.toggle_edge(s, t);
            }
        }
        assert_eq!(
            out.generator_table([true; 3]),
            diagonal.homology_table([true; 3]).unwrap(),
            "trial {trial}: survivors differ from diagonal homology"
        );
        // Both one-parameter spectral sequences survive the reduction.
        for coord in [0usize, 1] {
            let before = spectral_pages(&cx, coord, 1, 4).unwrap();
            let after = spectral_pages(&out, coord, 1, 4).unwrap();
            for (pa, pb) in before.pages.iter().zip(&after.pages) {
                assert_eq!(
                    project(&pa.groups, coord),
                    project(&pb.groups, coord),
                    "trial {trial}: slot {coord} page {} changed",
                    pa.r
                );
                assert_eq!(
                    pa.d_ranks.values().sum::<usize>(),
                    pb.d_ranks.values().sum::<usize>(),
                    "trial {trial}: slot {coord} page {} rank changed",
                    pa.r
                );
            }
            assert_eq!(
                project(&before.einfty, coord),
                project(&after.einfty, coord),
                "trial {trial}: slot {coord} limit changed"
            );
            assert_eq!(before.collapse_page, after.collapse_page, "trial {trial}: slot {coord}");
        }
    }
}
