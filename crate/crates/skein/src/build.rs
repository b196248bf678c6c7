//! Enhanced states and differential assembly.
//!
//! A generator of the complex is a complete smoothing together with a
//! + or - label on each resulting circle. Circles are ordered marked
//! circle first, then non-trivial before trivial, each block by least
//! member arc; labels are stored as a bitmask over that order with a set
//! bit meaning +.

use annular_diagram::resolve::resolve;
use annular_diagram::surgery::{add_meridian_pair, mirror};
use annular_diagram::{AnnularDiagram, DiagramError, Mark};
use annular_f2::complex::GradedComplexF2;

use crate::rules::{merge_output_type, merge_terms, split_terms, CircleLabel};
use crate::{Mode, SkeinError};

/// Build options for [`build`]. The defaults give the unreduced shifted
/// skein complex of the diagram as handed in.
#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    /// Keep only states labeling the marked circle +.
    pub reduced: bool,
    /// Add the innermost meridian pair (and move the mark) first.
    pub meridians: bool,
    /// Mirror the diagram first.
    pub mirror: bool,
    /// Apply the final grading shift.
    pub shifted: bool,
    /// Which differential to assemble.
    pub mode: Mode,
    /// Crossing capacity, checked before any enumeration.
    pub cap: usize,
}

/// Default crossing capacity. Inputs beyond this are refused rather than
/// attempted: state counts grow as 2^crossings times label choices.
pub const DEFAULT_CAP: usize = 24;

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            reduced: false,
            meridians: false,
            mirror: false,
            shifted: true,
            mode: Mode::Skein,
            cap: DEFAULT_CAP,
        }
    }
}

/// One circle slot of a resolution plan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlanCircle {
    pub nontrivial: bool,
    pub key: u32,
}

/// The circles of one complete smoothing in state order, with the data the
/// differential needs to line states up across a smoothing change.
#[derive(Clone, Debug)]
pub struct ResolutionPlan {
    pub circles: Vec<PlanCircle>,
    /// Position of the marked circle; always 0 when present.
    pub marked: Option<usize>,
    /// Position of the circle through each arc.
    pub arc_circle: Vec<u32>,
    /// Generator id of this smoothing's first state.
    pub state_base: u64,
}

/// All enhanced states of a diagram: one plan per smoothing mask plus the
/// state numbering they induce. States are numbered by ascending mask, then
/// ascending label bitmask.
#[derive(Clone, Debug)]
pub struct StateSet {
    pub plans: Vec<ResolutionPlan>,
    pub reduced: bool,
    total: u64,
}

/// One enhanced state with its gradings before the final shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnhancedState {
    pub mask: u64,
    pub labels: u64,
    /// Smoothing weight: the homological grading before shifting.
    pub i: i32,
    /// Signed count of + vs - labels on trivial circles.
    pub tau: i32,
    /// Signed count on non-trivial circles: the annular grading.
    pub psi: i32,
}

impl EnhancedState {
    /// Quantum grading before shifting.
    pub fn j(&self) -> i32 {
        self.i + self.tau + self.psi
    }
}

impl StateSet {
    pub fn state_count(&self) -> u64 {
        self.total
    }

    /// Label bits that may vary freely; the marked bit is pinned in reduced
    /// mode.
    fn free_bits(&self, plan: &ResolutionPlan) -> u32 {
        let fixed = usize::from(self.reduced && plan.marked.is_some());
        (plan.circles.len() - fixed) as u32
    }

    /// Generator id of a state. The labels must respect reduced mode.
    pub fn id(&self, mask: u64, labels: u64) -> u32 {
        let plan = &self.plans[mask as usize];
        let offset = if self.reduced && plan.marked.is_some() {
            debug_assert!(labels & 1 == 1, "reduced states label the marked circle +");
            labels >> 1
        } else {
            labels
        };
        debug_assert!(offset < 1u64 << self.free_bits(plan));
        (plan.state_base + offset) as u32
    }

    /// Label bitmask of the state enumerated at `offset` within a mask.
    pub fn labels_at(&self, mask: u64, offset: u64) -> u64 {
        let plan = &self.plans[mask as usize];
        if self.reduced && plan.marked.is_some() {
            1 | (offset << 1)
        } else {
            offset
        }
    }

    /// The state a generator id denotes, with gradings filled in.
    pub fn state(&self, id: u32) -> EnhancedState {
        let mask = self
            .plans
            .partition_point(|p| p.state_base <= id as u64)
            .saturating_sub(1) as u64;
        let labels = self.labels_at(mask, id as u64 - self.plans[mask as usize].state_base);
        self.enhanced(mask, labels)
    }

    pub fn enhanced(&self, mask: u64, labels: u64) -> EnhancedState {
        let plan = &self.plans[mask as usize];
        let mut tau = 0;
        let mut psi = 0;
        for (pos, circle) in plan.circles.iter().enumerate() {
            let sign = if labels >> pos & 1 == 1 { 1 } else { -1 };
            if circle.nontrivial {
                psi += sign;
            } else {
                tau += sign;
            }
        }
        EnhancedState {
            mask,
            labels,
            i: mask.count_ones() as i32,
            tau,
            psi,
        }
    }

    /// Every state in generator order.
    pub fn states(&self) -> Vec<EnhancedState> {
        let mut out = Vec::with_capacity(self.total as usize);
        for (mask, plan) in self.plans.iter().enumerate() {
            for offset in 0..1u64 << self.free_bits(plan) {
                let labels = self.labels_at(mask as u64, offset);
                out.push(self.enhanced(mask as u64, labels));
            }
        }
        out
    }
}

/// Enumerates the enhanced states of every complete smoothing.
pub fn enumerate_states(
    d: &AnnularDiagram,
    reduced: bool,
    cap: usize,
) -> Result<StateSet, SkeinError> {
    d.check_capacity(cap)?;
    d.validate()?;
    if reduced && d.marked().is_none() {
        return Err(SkeinError::MissingMark);
    }
    let mut plans = Vec::with_capacity(1 << d.crossing_count());
    let mut total = 0u64;
    for mask in 0..1u64 << d.crossing_count() {
        let res = resolve(d, mask)?;
        // State order: marked first, then non-trivial, then trivial, each
        // by least member arc. `resolve` already orders non-trivial first
        // by key, so only the marked circle moves.
        let mut order: Vec<usize> = (0..res.circles.len()).collect();
        order.sort_by_key(|&i| {
            let c = res.circles[i];
            (res.marked != Some(i), !c.nontrivial, c.key)
        });
        let mut position = vec![0u32; res.circles.len()];
        for (pos, &old) in order.iter().enumerate() {
            position[old] = pos as u32;
        }
        let circles = order
            .iter()
            .map(|&old| PlanCircle {
                nontrivial: res.circles[old].nontrivial,
                key: res.circles[old].key,
            })
            .collect();
        let plan = ResolutionPlan {
            circles,
            marked: res.marked.map(|_| 0),
            arc_circle: res.arc_circle.iter().map(|&c| position[c]).collect(),
            state_base: total,
        };
        let fixed = usize::from(reduced && plan.marked.is_some());
        total += 1u64 << (plan.circles.len() - fixed);
        plans.push(plan);
    }
    if total > u32::MAX as u64 {
        return Err(SkeinError::TooManyStates { states: total });
    }
    Ok(StateSet {
        plans,
        reduced,
        total,
    })
}

/// A grading shift applied to a complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shift {
    pub dh: i32,
    pub dj: i32,
    pub dk: i32,
}

/// The assembled complex of a diagram. Generators are the states of
/// `states` in order; the grading of generator g is (i, [j, k, 0]),
/// unshifted until [`apply_final_shift`] translates it.
#[derive(Clone, Debug)]
pub struct SkeinComplex {
    pub complex: GradedComplexF2,
    pub states: StateSet,
    pub diagram: AnnularDiagram,
    pub mode: Mode,
    /// The final shift, once applied.
    pub shift: Option<Shift>,
    /// Reduced with the mark on a winding circle: the final shift drops
    /// the quantum and annular gradings by one more.
    pub meridian_reduced: bool,
}

impl SkeinComplex {
    pub fn reduced(&self) -> bool {
        self.states.reduced
    }

    /// The shift [`apply_final_shift`] applies to this complex.
    pub fn final_shift(&self) -> Shift {
        let np = self.diagram.n_plus() as i32;
        let nm = self.diagram.n_minus() as i32;
        let meridian = i32::from(self.meridian_reduced);
        Shift {
            dh: -nm,
            dj: np - 2 * nm - meridian,
            dk: -meridian,
        }
    }
}

/// Assembles the differential over the enumerated states. Every edge comes
/// from changing one smoothing from 0 to 1 and applying the merge or split
/// rule matching the circle types; `mode` selects whether the terms that
/// drop the annular grading are kept.
pub fn assemble_differential(
    d: &AnnularDiagram,
    states: &StateSet,
    mode: Mode,
) -> Result<SkeinComplex, SkeinError> {
    let mut cx = GradedComplexF2::new();
    for (mask, plan) in states.plans.iter().enumerate() {
        for offset in 0..1u64 << states.free_bits(plan) {
            let labels = states.labels_at(mask as u64, offset);
            let s = states.enhanced(mask as u64, labels);
            cx.add_gen(s.i, [s.j(), s.psi, 0]);
        }
    }
    for (mask, plan) in states.plans.iter().enumerate() {
        let mask = mask as u64;
        for c in 0..d.crossing_count() {
            if mask >> c & 1 == 1 {
                continue;
            }
            let to = &states.plans[(mask | 1 << c) as usize];
            let edge = CubeEdge::prepare(d, plan, to, c)?;
            for offset in 0..1u64 << states.free_bits(plan) {
                let labels = states.labels_at(mask, offset);
                let src = states.id(mask, labels);
                for (out_labels, d1) in edge.terms(labels) {
                    if d1 && mode == Mode::Skein {
                        continue;
                    }
                    if states.reduced && to.marked.is_some() && out_labels & 1 == 0 {
                        continue;
                    }
                    cx.toggle_edge(src, states.id(mask | 1 << c, out_labels));
                }
            }
        }
    }
    cx.validate()?;
    verify_d_squared(&cx)?;
    let meridian_reduced = states.reduced
        && matches!(d.marked(), Some(Mark::Circle(i)) if d.free_circles()[i].winding != 0);
    Ok(SkeinComplex {
        complex: cx,
        states: states.clone(),
        diagram: d.clone(),
        mode,
        shift: None,
        meridian_reduced,
    })
}

/// One cube edge: how the circles of the source smoothing map to those of
/// the target when crossing `c` flips from 0 to 1.
enum CubeEdge {
    Merge {
        /// Positions of the two merging circles and their types.
        a: u32,
        b: u32,
        types: [bool; 2],
        /// Position of the merged circle.
        out: u32,
        /// Bit moves for spectator circles: (source position, target position).
        spectators: Vec<(u32, u32)>,
    },
    Split {
        input: u32,
        input_type: bool,
        outs: [u32; 2],
        out_types: [bool; 2],
        spectators: Vec<(u32, u32)>,
    },
}

impl CubeEdge {
    fn prepare(
        d: &AnnularDiagram,
        from: &ResolutionPlan,
        to: &ResolutionPlan,
        c: usize,
    ) -> Result<CubeEdge, SkeinError> {
        let touched = |plan: &ResolutionPlan| {
            let mut v: Vec<u32> = d.crossings()[c]
                .arcs
                .iter()
                .map(|&a| plan.arc_circle[a as usize])
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let from_active = touched(from);
        let to_active = touched(to);
        let internal = |msg: String| SkeinError::Diagram(DiagramError::Internal(msg));
        if from_active.len() + to_active.len() != 3 {
            return Err(internal(format!(
                "smoothing change at crossing {c} is neither a merge nor a split"
            )));
        }
        // Spectator circles keep their arcs, so their least-arc keys agree.
        let mut spectators = Vec::new();
        for (pos, circle) in from.circles.iter().enumerate() {
            let pos = pos as u32;
            if from_active.contains(&pos) {
                continue;
            }
            let target = to
                .circles
                .iter()
                .position(|t| t.key == circle.key)
                .ok_or_else(|| internal(format!("spectator circle {} lost", circle.key)))?;
            if to.circles[target].nontrivial != circle.nontrivial {
                return Err(internal(format!(
                    "spectator circle {} changed annular type",
                    circle.key
                )));
            }
            spectators.push((pos, target as u32));
        }
        let type_of = |plan: &ResolutionPlan, pos: u32| plan.circles[pos as usize].nontrivial;
        if from_active.len() == 2 {
            let (a, b) = (from_active[0], from_active[1]);
            let out = to_active[0];
            let types = [type_of(from, a), type_of(from, b)];
            if type_of(to, out) != merge_output_type(types[0], types[1]) {
                return Err(internal(format!(
                    "merge at crossing {c} produced the wrong circle type"
                )));
            }
            Ok(CubeEdge::Merge {
                a,
                b,
                types,
                out,
                spectators,
            })
        } else {
            let input = from_active[0];
            let outs = [to_active[0], to_active[1]];
            let out_types = [type_of(to, outs[0]), type_of(to, outs[1])];
            if split_terms(
                CircleLabel {
                    nontrivial: type_of(from, input),
                    plus: true,
                },
                out_types,
            )
            .is_none()
            {
                return Err(internal(format!(
                    "split at crossing {c} produced the wrong circle types"
                )));
            }
            Ok(CubeEdge::Split {
                input,
                input_type: type_of(from, input),
                outs,
                out_types,
                spectators,
            })
        }
    }

    /// Output label words for one source state, tagged with the dropped-term
    /// flag.
    fn terms(&self, labels: u64) -> Vec<(u64, bool)> {
        match self {
            CubeEdge::Merge {
                a,
                b,
                types,
                out,
                spectators,
            } => {
                let base = spectator_bits(labels, spectators);
                let la = CircleLabel {
                    nontrivial: types[0],
                    plus: labels >> a & 1 == 1,
                };
                let lb = CircleLabel {
                    nontrivial: types[1],
                    plus: labels >> b & 1 == 1,
                };
                merge_terms(la, lb)
                    .iter()
                    .map(|t| (base | u64::from(t.out_plus) << out, t.d1))
                    .collect()
            }
            CubeEdge::Split {
                input,
                input_type,
                outs,
                out_types,
                spectators,
            } => {
                let base = spectator_bits(labels, spectators);
                let il = CircleLabel {
                    nontrivial: *input_type,
                    plus: labels >> input & 1 == 1,
                };
                // Rule terms are aligned with the types listed non-trivial
                // first; line the actual output positions up with that.
                let canonical_first = out_types[0] | out_types[1];
                let (p0, p1) = if out_types[0] == canonical_first {
                    (outs[0], outs[1])
                } else {
                    (outs[1], outs[0])
                };
                split_terms(il, *out_types)
                    .expect("validated in prepare")
                    .iter()
                    .map(|t| {
                        let word = base
                            | u64::from(t.out_plus[0]) << p0
                            | u64::from(t.out_plus[1]) << p1;
                        (word, t.d1)
                    })
                    .collect()
            }
        }
    }
}

fn spectator_bits(labels: u64, spectators: &[(u32, u32)]) -> u64 {
    let mut out = 0;
    for &(src, tgt) in spectators {
        out |= (labels >> src & 1) << tgt;
    }
    out
}

/// Checks that composing the differential with itself vanishes.
fn verify_d_squared(cx: &GradedComplexF2) -> Result<(), SkeinError> {
    use std::collections::BTreeSet;
    for (id, _) in cx.gens() {
        let mut acc: BTreeSet<u32> = BTreeSet::new();
        for mid in cx.out_edges(id) {
            for tgt in cx.out_edges(mid) {
                if !acc.remove(&tgt) {
                    acc.insert(tgt);
                }
            }
        }
        if let Some(&tgt) = acc.iter().next() {
            return Err(SkeinError::Diagram(DiagramError::Internal(format!(
                "differential does not square to zero: {id} -> {tgt}"
            ))));
        }
    }
    Ok(())
}

/// Applies the final grading shift, once.
pub fn apply_final_shift(sc: &SkeinComplex) -> Result<SkeinComplex, SkeinError> {
    if sc.shift.is_some() {
        return Err(SkeinError::AlreadyShifted);
    }
    let shift = sc.final_shift();
    let mut cx = GradedComplexF2::new();
    for (_, g) in sc.complex.gens() {
        cx.add_gen(
            g.hdeg + shift.dh,
            [g.key[0] + shift.dj, g.key[1] + shift.dk, g.key[2]],
        );
    }
    for (src, tgt) in sc.complex.edges() {
        cx.toggle_edge(src, tgt);
    }
    Ok(SkeinComplex {
        complex: cx,
        states: sc.states.clone(),
        diagram: sc.diagram.clone(),
        mode: sc.mode,
        shift: Some(shift),
        meridian_reduced: sc.meridian_reduced,
    })
}

/// One-call pipeline: preprocess the diagram per the options, enumerate,
/// assemble, shift.
pub fn build(d: &AnnularDiagram, options: BuildOptions) -> Result<SkeinComplex, SkeinError> {
    let mut d = d.clone();
    if options.mirror {
        d = mirror(&d);
    }
    if options.meridians {
        d = add_meridian_pair(&d);
    }
    let states = enumerate_states(&d, options.reduced, options.cap)?;
    let sc = assemble_differential(&d, &states, options.mode)?;
    if options.shifted {
        apply_final_shift(&sc)
    } else {
        Ok(sc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use annular_diagram::braid::braid_closure;
    use annular_diagram::resolve::resolve;

    fn unshifted(word: (u32, &[i32]), mode: Mode) -> SkeinComplex {
        let d = braid_closure(word.0, word.1).unwrap();
        let options = BuildOptions {
            shifted: false,
            mode,
            ..BuildOptions::default()
        };
        build(&d, options).unwrap()
    }

    #[test]
    fn state_counts_match_circle_counts() {
        for (strands, word) in [(2u32, vec![1]), (2, vec![1, 1, 1]), (3, vec![1, -2, 1, -2])] {
            let d = braid_closure(strands, &word).unwrap();
            let states = enumerate_states(&d, false, DEFAULT_CAP).unwrap();
            let expected: u64 = (0..1u64 << d.crossing_count())
                .map(|m| 1u64 << resolve(&d, m).unwrap().circles.len())
                .sum();
            assert_eq!(states.state_count(), expected);
        }
        let d = braid_closure(2, &[1]).unwrap();
        assert_eq!(
            enumerate_states(&d, false, DEFAULT_CAP).unwrap().state_count(),
            6
        );
    }

    #[test]
    fn one_negative_crossing_chain_level() {
        // The single negative crossing closure: the 0-smoothing is one
        // trivial circle, the 1-smoothing two non-trivial ones. The only
        // skein term sends the + label to the two mixed words; the dropped
        // term sends the - label to the all-minus word.
        let sc = unshifted((2, &[-1]), Mode::Skein);
        let st = &sc.states;
        let w_minus = st.id(0, 0b0);
        let w_plus = st.id(0, 0b1);
        let outs = |id: u32| -> Vec<u32> { sc.complex.out_edges(id).collect() };
        assert_eq!(outs(w_plus), vec![st.id(1, 0b01), st.id(1, 0b10)]);
        assert_eq!(outs(w_minus), Vec::<u32>::new());

        let full = unshifted((2, &[-1]), Mode::Khovanov);
        let outs = |id: u32| -> Vec<u32> { full.complex.out_edges(id).collect() };
        assert_eq!(outs(w_plus), vec![st.id(1, 0b01), st.id(1, 0b10)]);
        assert_eq!(outs(w_minus), vec![st.id(1, 0b00)]);
    }

    #[test]
    fn differentials_move_gradings_by_their_bidegree() {
        for (strands, word) in [(2u32, vec![1, 1]), (3, vec![1, -2, 1, -2]), (3, vec![2, 1])] {
            for mode in [Mode::Skein, Mode::Khovanov] {
                let sc = unshifted((strands, &word), mode);
                for (src, tgt) in sc.complex.edges() {
                    let s = sc.complex.gen(src);
                    let t = sc.complex.gen(tgt);
                    assert_eq!(t.hdeg, s.hdeg + 1);
                    assert_eq!(t.key[0], s.key[0]);
                    let dk = s.key[1] - t.key[1];
                    match mode {
                        Mode::Skein => assert_eq!(dk, 0),
                        Mode::Khovanov => assert!(dk == 0 || dk == 2),
                    }
                }
            }
        }
    }

    #[test]
    fn final_shift_applies_once() {
        let d = braid_closure(2, &[-1]).unwrap();
        let sc = build(&d, BuildOptions::default()).unwrap();
        assert_eq!(sc.shift, Some(Shift { dh: -1, dj: -2, dk: 0 }));
        assert!(matches!(
            apply_final_shift(&sc),
            Err(SkeinError::AlreadyShifted)
        ));
    }

    #[test]
    fn meridian_reduced_shift_drops_one_more() {
        let d = braid_closure(3, &[1, -2, 1, -2]).unwrap();
        let options = BuildOptions {
            reduced: true,
            meridians: true,
            ..BuildOptions::default()
        };
        let sc = build(&d, options).unwrap();
        // Two positive and two negative crossings.
        assert_eq!(sc.shift, Some(Shift { dh: -2, dj: -3, dk: -1 }));
        // Without the meridian convention the mark sits on an arc and the
        // plain shift applies.
        let plain = build(
            &d,
            BuildOptions {
                reduced: true,
                ..BuildOptions::default()
            },
        )
        .unwrap();
        assert_eq!(plain.shift, Some(Shift { dh: -2, dj: -2, dk: 0 }));
    }

    #[test]
    fn reduced_mode_pins_the_marked_label() {
        let d = braid_closure(2, &[1]).unwrap();
        let states = enumerate_states(&d, true, DEFAULT_CAP).unwrap();
        assert_eq!(states.state_count(), 3);
        for s in states.states() {
            assert_eq!(s.labels & 1, 1);
        }
        assert!(matches!(
            enumerate_states(&braid_closure(2, &[1]).unwrap().without_mark(), true, DEFAULT_CAP),
            Err(SkeinError::MissingMark)
        ));
    }
}
