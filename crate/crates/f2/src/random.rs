//! Seeded random filtered complexes and filtered chain maps.
//!
//! Everything here is built from two kinds of atoms: free generators (zero
//! differential) and cancelling pairs x -> y, followed by a stream of
//! filtration-respecting elementary basis operations. d^2 = 0 and the jump
//! conditions hold by construction at every step, so the builders never need
//! a rejection loop, and the same elementary operations applied on both sides
//! of a map keep it a chain map.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::GradedComplexF2;

/// Shape parameters for a random filtered complex.
#[derive(Clone, Copy, Debug)]
pub struct RandomSpec {
    pub gens: usize,
    pub hdeg_span: i32,
    pub filt_span: i32,
    /// Number of elementary basis operations to apply.
    pub stir: usize,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec {
            gens: 10,
            hdeg_span: 4,
            filt_span: 4,
            stir: 30,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A filtered complex on key slot 0 (jumps nonnegative) with d^2 = 0.
pub fn random_filtered_complex(rng: &mut ChaCha8Rng, spec: RandomSpec) -> GradedComplexF2 {
    let mut cx = GradedComplexF2::new();
    while cx.len() < spec.gens {
        let hdeg = rng.gen_range(0..spec.hdeg_span);
        let p = rng.gen_range(0..spec.filt_span);
        if cx.len() + 2 <= spec.gens && rng.gen_bool(0.6) {
            let drop = rng.gen_range(0..=p);
            let x = cx.add_gen(hdeg, [p, 0, 0]);
            let y = cx.add_gen(hdeg + 1, [p - drop, 0, 0]);
            cx.toggle_edge(x, y);
        } else {
            cx.add_gen(hdeg, [p, 0, 0]);
        }
    }
    stir_filtered(rng, &mut cx, spec.stir, &[0]);
    debug_assert!(cx.validate().is_ok());
    debug_assert!(cx.validate_filtration(0).is_ok());
    cx
}

/// A bifiltered complex on key slots 0 and 1 (both jumps nonnegative).
pub fn random_bifiltered_complex(rng: &mut ChaCha8Rng, spec: RandomSpec) -> GradedComplexF2 {
    let mut cx = GradedComplexF2::new();
    while cx.len() < spec.gens {
        let hdeg = rng.gen_range(0..spec.hdeg_span);
        let p = rng.gen_range(0..spec.filt_span);
        let q = rng.gen_range(0..spec.filt_span);
        if cx.len() + 2 <= spec.gens && rng.gen_bool(0.6) {
            let dp = rng.gen_range(0..=p);
            let dq = rng.gen_range(0..=q);
            let x = cx.add_gen(hdeg, [p, q, 0]);
            let y = cx.add_gen(hdeg + 1, [p - dp, q - dq, 0]);
            cx.toggle_edge(x, y);
        } else {
            cx.add_gen(hdeg, [p, q, 0]);
        }
    }
    stir_filtered(rng, &mut cx, spec.stir, &[0, 1]);
    debug_assert!(cx.validate().is_ok());
    debug_assert!(cx.validate_filtration(0).is_ok());
    debug_assert!(cx.validate_filtration(1).is_ok());
    cx
}

/// A strictly filtration-dropping chain map f: a -> b (arrows raise hdeg by 1
/// and drop key slot 0 by at least `min_drop`), together with its endpoints.
pub fn random_filtered_map(
    rng: &mut ChaCha8Rng,
    spec: RandomSpec,
    min_drop: i32,
) -> (GradedComplexF2, GradedComplexF2, Vec<(u32, u32)>) {
    // Atoms for both sides; remember the free generators, which are cycles.
    let mut a = GradedComplexF2::new();
    let mut b = GradedComplexF2::new();
    let mut a_free: Vec<u32> = Vec::new();
    let mut b_free: Vec<u32> = Vec::new();
    build_atoms(rng, spec, &mut a, &mut a_free);
    build_atoms(rng, spec, &mut b, &mut b_free);
    // f sends some free a-generators to free b-cycles further down the
    // filtration; pair atoms map to zero.
    let mut f: Vec<(u32, u32)> = Vec::new();
    for &x in &a_free {
        let gx = a.gen(x);
        if rng.gen_bool(0.7) {
            let candidates: Vec<u32> = b_free
                .iter()
                .copied()
                .filter(|&y| {
                    let gy = b.gen(y);
                    gy.hdeg == gx.hdeg + 1 && gx.key[0] - gy.key[0] >= min_drop
                })
                .collect();
            if !candidates.is_empty() {
                let y = candidates[rng.gen_range(0..candidates.len())];
                f.push((x, y));
            }
        }
    }
    // Stir both sides; each elementary operation rewrites f accordingly.
    for _ in 0..spec.stir {
        if rng.gen_bool(0.5) {
            if let Some((u, v)) = pick_pair(rng, &a, &[0]) {
                apply_col_op(&mut a, u, v);
                map_col_op_src(&mut f, u, v);
            }
        } else if let Some((u, v)) = pick_pair(rng, &b, &[0]) {
            apply_col_op(&mut b, u, v);
            map_col_op_tgt(&mut f, u, v);
        }
    }
    normalize_edges(&mut f);
    debug_assert!(a.validate().is_ok() && b.validate().is_ok());
    debug_assert!(crate::cone::mapping_cone(&a, &b, &f).is_ok());
    debug_assert!(crate::cone::validate_strict_drop(&a, &b, &f, 0, min_drop).is_ok());
    (a, b, f)
}

fn build_atoms(
    rng: &mut ChaCha8Rng,
    spec: RandomSpec,
    cx: &mut GradedComplexF2,
    free: &mut Vec<u32>,
) {
    while cx.len() < spec.gens {
        let hdeg = rng.gen_range(0..spec.hdeg_span);
        let p = rng.gen_range(0..spec.filt_span);
        if cx.len() + 2 <= spec.gens && rng.gen_bool(0.4) {
            let drop = rng.gen_range(0..=p);
            let x = cx.add_gen(hdeg, [p, 0, 0]);
            let y = cx.add_gen(hdeg + 1, [p - drop, 0, 0]);
            cx.toggle_edge(x, y);
        } else {
            free.push(cx.add_gen(hdeg, [p, 0, 0]));
        }
    }
}

/// Picks (u, v) with equal hdeg and filt(v) <= filt(u) on every listed slot.
fn pick_pair(
    rng: &mut ChaCha8Rng,
    cx: &GradedComplexF2,
    coords: &[usize],
) -> Option<(u32, u32)> {
    for _ in 0..24 {
        let u = rng.gen_range(0..cx.len()) as u32;
        let v = rng.gen_range(0..cx.len()) as u32;
        if u == v {
            continue;
        }
        let (gu, gv) = (cx.gen(u), cx.gen(v));
        if gu.hdeg == gv.hdeg && coords.iter().all(|&c| gv.key[c] <= gu.key[c]) {
            return Some((u, v));
        }
    }
    None
}

/// Basis change u := u + v. Outgoing edges of u pick up those of v; wherever
/// u appears as a target, v is toggled alongside. Legal whenever
/// filt(v) <= filt(u), which keeps all jumps nonnegative.
fn apply_col_op(cx: &mut GradedComplexF2, u: u32, v: u32) {
    let v_out: Vec<u32> = cx.out_edges(v).collect();
    for t in v_out {
        cx.toggle_edge(u, t);
    }
    let into_u: Vec<u32> = cx
        .gens()
        .map(|(id, _)| id)
        .filter(|&s| cx.out_edges(s).any(|t| t == u))
        .collect();
    for s in into_u {
        cx.toggle_edge(s, v);
    }
}

fn map_col_op_src(f: &mut Vec<(u32, u32)>, u: u32, v: u32) {
    // f(u) += f(v) in the new basis.
    let v_imgs: Vec<u32> = f.iter().filter(|&&(s, _)| s == v).map(|&(_, t)| t).collect();
    for t in v_imgs {
        toggle_arrow(f, u, t);
    }
}

fn map_col_op_tgt(f: &mut Vec<(u32, u32)>, u: u32, v: u32) {
    // Arrows landing on u pick up a v component.
    let srcs: Vec<u32> = f.iter().filter(|&&(_, t)| t == u).map(|&(s, _)| s).collect();
    for s in srcs {
        toggle_arrow(f, s, v);
    }
}

fn toggle_arrow(f: &mut Vec<(u32, u32)>, s: u32, t: u32) {
    if let Some(pos) = f.iter().position(|&e| e == (s, t)) {
        f.remove(pos);
    } else {
        f.push((s, t));
    }
}

fn normalize_edges(f: &mut Vec<(u32, u32)>) {
    f.sort_unstable();
    f.dedup();
}

fn stir_filtered(rng: &mut ChaCha8Rng, cx: &mut GradedComplexF2, ops: usize, coords: &[usize]) {
    for _ in 0..ops {
        if let Some((u, v)) = pick_pair(rng, cx, coords) {
            apply_col_op(cx, u, v);
        }
    }
}
