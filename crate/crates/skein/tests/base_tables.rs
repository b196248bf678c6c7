//! Shifted skein homology of the smallest closures, pinned exactly.

use annular_diagram::braid::braid_closure;
use annular_diagram::pd::parse_annular_pd;
use annular_f2::complex::RankTable;
use annular_skein::{build, BuildOptions};

fn skein_table(strands: u32, word: &[i32]) -> RankTable {
    let d = braid_closure(strands, word).unwrap();
    let sc = build(&d, BuildOptions::default()).unwrap();
    sc.complex.homology_table([true, true, false]).unwrap()
}

fn table(entries: &[(i32, i32, i32)]) -> RankTable {
    entries
        .iter()
        .map(|&(i, j, k)| ((i, [j, k, 0]), 1))
        .collect()
}

#[test]
fn one_negative_crossing() {
    let got = skein_table(2, &[-1]);
    let expect = table(&[(-1, -3, 0), (0, -3, -2), (0, -1, 0), (0, 1, 2)]);
    assert_eq!(got, expect);
}

#[test]
fn one_positive_crossing() {
    let got = skein_table(2, &[1]);
    let expect = table(&[(1, 3, 0), (0, -1, -2), (0, 1, 0), (0, 3, 2)]);
    assert_eq!(got, expect);
}

#[test]
fn winding_one_unknot() {
    let got = skein_table(1, &[]);
    let expect = table(&[(0, 1, 1), (0, -1, -1)]);
    assert_eq!(got, expect);
}

#[test]
fn winding_zero_circle() {
    let d = parse_annular_pd("circle 0\n").unwrap();
    let sc = build(&d, BuildOptions::default()).unwrap();
    let got = sc.complex.homology_table([true, true, false]).unwrap();
    let expect = table(&[(0, 1, 0), (0, -1, 0)]);
    assert_eq!(got, expect);
}

#[test]
fn mirror_pair_tables_negate() {
    // The mirror option turns the positive closure into the negative one,
    // and the two tables match entry for entry under grading negation.
    let d = braid_closure(2, &[1]).unwrap();
    let sc = build(
        &d,
        BuildOptions {
            mirror: true,
            ..BuildOptions::default()
        },
    )
    .unwrap();
    let got = sc.complex.homology_table([true, true, false]).unwrap();
    assert_eq!(got, skein_table(2, &[-1]));
    let negated: RankTable = skein_table(2, &[1])
        .into_iter()
        .map(|((i, [j, k, _]), r)| ((-i, [-j, -k, 0]), r))
        .collect();
    assert_eq!(got, negated);
}
