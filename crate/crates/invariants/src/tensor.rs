//! Split unions: stacking one diagram outside another tensors the
//! complexes over the ground field, so homology tables convolve and
//! filtration values of unknot classes add.

use annular_diagram::surgery::split_union;
use annular_diagram::AnnularDiagram;
use annular_skein::{build, BuildOptions, Mode};

use crate::{homology, tvalue, BiRanks, InvariantError, Ranks};

/// Rank-table convolution: the table of a tensor product over a field.
pub fn convolve(a: &Ranks, b: &Ranks) -> Ranks {
    let mut out = Ranks::new();
    for (&(i1, j1, k1), &r1) in a {
        for (&(i2, j2, k2), &r2) in b {
            *out.entry((i1 + i2, j1 + j2, k1 + k2)).or_insert(0) += r1 * r2;
        }
    }
    out
}

fn unknot_pair(table: &BiRanks) -> bool {
    let expected: BiRanks = [((0, 1), 1), ((0, -1), 1)].into_iter().collect();
    *table == expected
}

/// Outcome of the stacking checks. `t_additive` is `Some` only when both
/// factors carry the rank-one unknot pair at (0, +1) and (0, -1), the
/// shape on which additivity of filtration values is asserted.
#[derive(Clone, Debug)]
pub struct UnionReport {
    pub union_table: Ranks,
    pub convolution_matches: bool,
    pub t_additive: Option<bool>,
}

impl UnionReport {
    pub fn checks_pass(&self) -> bool {
        self.convolution_matches && self.t_additive.unwrap_or(true)
    }
}

/// Stacks `outer` outside `inner` (dropping outer's basepoint so the
/// union stays well marked) and checks the product structure: the skein
/// table must equal the convolution of the factor tables, and for a pair
/// of unknot-shaped factors the filtration values must add, including on
/// the rank-two middle block reached through [`tvalue::hit_rank`].
pub fn split_union_check(
    inner: &AnnularDiagram,
    outer: &AnnularDiagram,
) -> Result<UnionReport, InvariantError> {
    let outer = outer.without_mark();
    let union = split_union(inner, &outer)?;
    let table_inner = homology::skein_homology(inner, BuildOptions::default())?;
    let table_outer = homology::skein_homology(&outer, BuildOptions::default())?;
    let union_table = homology::skein_homology(&union, BuildOptions::default())?;
    let convolution_matches = union_table == convolve(&table_inner, &table_outer);

    let kh_options = BuildOptions {
        mode: Mode::Khovanov,
        ..BuildOptions::default()
    };
    let kh_inner = homology::khovanov_homology(inner, kh_options)?;
    let kh_outer = homology::khovanov_homology(&outer, kh_options)?;
    let t_additive = if unknot_pair(&kh_inner) && unknot_pair(&kh_outer) {
        let ca = build(inner, kh_options)?.complex;
        let cb = build(&outer, kh_options)?.complex;
        let cu = build(&union, kh_options)?.complex;
        let (ap, am) = tvalue::unknot_t_values(&ca)?;
        let (bp, bm) = tvalue::unknot_t_values(&cb)?;
        let top = tvalue::t_value(&cu, 0, 2)? == ap + bp;
        let bottom = tvalue::t_value(&cu, 0, -2)? == am + bm;
        let mixed_level = ap + bm;
        let middle = tvalue::hit_rank(&cu, 0, 0, mixed_level)? == 2
            && tvalue::hit_rank(&cu, 0, 0, mixed_level - 1)? == 0;
        Some(top && bottom && middle)
    } else {
        None
    };

    Ok(UnionReport {
        union_table,
        convolution_matches,
        t_additive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use annular_diagram::braid::braid_closure;

    #[test]
    fn stacked_winding_unknots_convolve_and_add() {
        let a = braid_closure(1, &[]).unwrap();
        let b = braid_closure(1, &[]).unwrap();
        let report = split_union_check(&a, &b).unwrap();
        assert!(report.convolution_matches);
        assert_eq!(report.t_additive, Some(true));
        let expected: Ranks = [((0, 2, 2), 1), ((0, 0, 0), 2), ((0, -2, -2), 1)]
            .into_iter()
            .collect();
        assert_eq!(report.union_table, expected);
    }

    #[test]
    fn kinked_factor_keeps_additivity() {
        let a = braid_closure(2, &[1]).unwrap();
        let b = braid_closure(1, &[]).unwrap();
        let report = split_union_check(&a, &b).unwrap();
        assert!(report.convolution_matches);
        assert_eq!(report.t_additive, Some(true));
    }
}
