//! Merge and split rules for labeled circles.
//!
//! A circle of a complete smoothing is trivial or non-trivial in the
//! annulus and carries a + or - label. Changing one smoothing from 0 to 1
//! either merges two circles into one or splits one circle into two, and
//! the differential acts on labels by the tables below.
//!
//! Terms flagged `d1` lower the annular grading by two. The skein
//! differential omits them; adding them back gives the ordinary Khovanov
//! differential.

/// A labeled circle: its annular type and its sign label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CircleLabel {
    pub nontrivial: bool,
    pub plus: bool,
}

impl CircleLabel {
    /// Contribution to the quantum grading.
    pub fn jdeg(self) -> i32 {
        if self.plus {
            1
        } else {
            -1
        }
    }

    /// Contribution to the annular grading.
    pub fn kdeg(self) -> i32 {
        match (self.nontrivial, self.plus) {
            (false, _) => 0,
            (true, true) => 1,
            (true, false) => -1,
        }
    }
}

const fn lab(nontrivial: bool, plus: bool) -> CircleLabel {
    CircleLabel { nontrivial, plus }
}

const TP: CircleLabel = lab(false, true);
const TM: CircleLabel = lab(false, false);
const NP: CircleLabel = lab(true, true);
const NM: CircleLabel = lab(true, false);

/// One output term of a merge: the label of the merged circle.
#[derive(Clone, Copy, Debug)]
pub struct MergeTerm {
    pub out_plus: bool,
    pub d1: bool,
}

struct MergeRow {
    inputs: [CircleLabel; 2],
    terms: &'static [MergeTerm],
}

const fn mt(out_plus: bool, d1: bool) -> MergeTerm {
    MergeTerm { out_plus, d1 }
}

/// Every unordered pair of input labels appears exactly once.
const MERGE: &[MergeRow] = &[
    MergeRow { inputs: [TP, TP], terms: &[mt(true, false)] },
    MergeRow { inputs: [TP, TM], terms: &[mt(false, false)] },
    MergeRow { inputs: [TM, TM], terms: &[] },
    MergeRow { inputs: [NP, NP], terms: &[mt(true, true)] },
    MergeRow { inputs: [NP, NM], terms: &[mt(false, false)] },
    MergeRow { inputs: [NM, NM], terms: &[] },
    MergeRow { inputs: [NP, TP], terms: &[mt(true, false)] },
    MergeRow { inputs: [NP, TM], terms: &[mt(false, true)] },
    MergeRow { inputs: [NM, TP], terms: &[mt(false, false)] },
    MergeRow { inputs: [NM, TM], terms: &[] },
];

/// The annular type of the circle two given circles merge into. Two
/// non-trivial circles always close up into a trivial one.
pub fn merge_output_type(a: bool, b: bool) -> bool {
    a ^ b
}

/// Output terms for merging two labeled circles, in either order.
pub fn merge_terms(a: CircleLabel, b: CircleLabel) -> &'static [MergeTerm] {
    for row in MERGE {
        if row.inputs == [a, b] || row.inputs == [b, a] {
            return row.terms;
        }
    }
    unreachable!("merge table covers all label pairs")
}

/// One output term of a split: labels for the two output circles, aligned
/// with the type pair the rule was looked up under.
#[derive(Clone, Copy, Debug)]
pub struct SplitTerm {
    pub out_plus: [bool; 2],
    pub d1: bool,
}

struct SplitRow {
    input: CircleLabel,
    /// Output types, non-trivial listed first.
    outputs: [bool; 2],
    terms: &'static [SplitTerm],
}

const fn st(out_plus: [bool; 2], d1: bool) -> SplitTerm {
    SplitTerm { out_plus, d1 }
}

const SPLIT: &[SplitRow] = &[
    SplitRow {
        input: TP,
        outputs: [false, false],
        terms: &[st([true, false], false), st([false, true], false)],
    },
    SplitRow {
        input: TP,
        outputs: [true, true],
        terms: &[st([true, false], false), st([false, true], false)],
    },
    SplitRow {
        input: TM,
        outputs: [false, false],
        terms: &[st([false, false], false)],
    },
    SplitRow {
        input: TM,
        outputs: [true, true],
        terms: &[st([false, false], true)],
    },
    SplitRow {
        input: NP,
        outputs: [true, false],
        terms: &[st([true, false], false), st([false, true], true)],
    },
    SplitRow {
        input: NM,
        outputs: [true, false],
        terms: &[st([false, false], false)],
    },
];

/// Output terms for splitting a labeled circle into circles of the given
/// types, non-trivial listed first. `None` marks a type combination no
/// planar smoothing change can produce: a non-trivial circle always splits
/// into one non-trivial and one trivial circle, a trivial circle into two
/// of equal type.
pub fn split_terms(input: CircleLabel, outputs: [bool; 2]) -> Option<&'static [SplitTerm]> {
    let canonical = [outputs[0] | outputs[1], outputs[0] & outputs[1]];
    SPLIT
        .iter()
        .find(|row| row.input == input && row.outputs == canonical)
        .map(|row| row.terms)
}
