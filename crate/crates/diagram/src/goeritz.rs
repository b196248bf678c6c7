//! Signature and determinant from the white-region quadratic form, with the
//! correction term read off the crossing types.

use crate::faces::{faces, ray_trace, unbounded_white_shading};
use crate::{AnnularDiagram, DiagramError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureData {
    pub signature: i32,
    pub determinant: u128,
    /// Correction subtracted from the form's signature.
    pub mu: i32,
    /// Crossings where the local writhe of the white pair matches the sign.
    pub type_two: Vec<bool>,
}

/// Computes the signature and determinant of the underlying oriented link.
/// The diagram must be connected with a nonempty ray; a crossingless diagram
/// is the unknot and returns signature 0, determinant 1.
pub fn signature_and_determinant(d: &AnnularDiagram) -> Result<SignatureData, DiagramError> {
    if !d.is_connected() {
        return Err(DiagramError::NotConnected);
    }
    if d.crossing_count() == 0 {
        return Ok(SignatureData {
            signature: 0,
            determinant: 1,
            mu: 0,
            type_two: Vec::new(),
        });
    }
    let f = faces(d)?;
    let trace = ray_trace(d, &f)?;
    let black = unbounded_white_shading(d, &f, trace.unbounded)?;
    // Map white faces to form indices, the unbounded one last.
    let mut white_index = vec![usize::MAX; f.face_count()];
    let mut whites = 0;
    for (face, &b) in black.iter().enumerate() {
        if !b && face != trace.unbounded {
            white_index[face] = whites;
            whites += 1;
        }
    }
    white_index[trace.unbounded] = whites;
    let mut form = vec![vec![0i64; whites + 1]; whites + 1];
    let mut mu = 0;
    let mut type_two = Vec::with_capacity(d.crossing_count());
    for c in 0..d.crossing_count() {
        let sectors: Vec<usize> = (0..4).map(|s| f.sector(c, s)).collect();
        // Around a crossing the sectors alternate colors, so the white pair
        // is either the (0,2) diagonal or the (1,3) diagonal.
        let eta = if !black[sectors[0]] { 1 } else { -1 };
        let (u, v) = if eta > 0 {
            (white_index[sectors[0]], white_index[sectors[2]])
        } else {
            (white_index[sectors[1]], white_index[sectors[3]])
        };
        let is_two = eta == d.crossings()[c].sign as i32;
        type_two.push(is_two);
        if is_two {
            mu += eta;
        }
        form[u][v] -= eta as i64;
        form[v][u] -= eta as i64;
        form[u][u] += eta as i64;
        form[v][v] += eta as i64;
    }
    // A crossing may join a white region to itself; both off-diagonal hits
    // then land on the diagonal and cancel the two diagonal bumps, which is
    // the correct degenerate contribution.
    form.truncate(whites);
    for row in &mut form {
        row.truncate(whites);
    }
    let signature = symmetric_signature(&form) - mu;
    let determinant = bareiss_det(&form).unsigned_abs();
    Ok(SignatureData {
        signature,
        determinant,
        mu,
        type_two,
    })
}

/// Exact determinant of an integer matrix by fraction-free elimination.
fn bareiss_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Signature of a symmetric integer matrix by congruence diagonalization
/// over exact fractions. Off-diagonal pivots contribute a hyperbolic pair,
/// hence zero.
fn symmetric_signature(m: &[Vec<i64>]) -> i32 {
    let mut a: Vec<Vec<Frac>> = m
        .iter()
        .map(|row| row.iter().map(|&x| Frac::int(x as i128)).collect())
        .collect();
    let mut live: Vec<usize> = (0..a.len()).collect();
    let mut sig = 0;
    while !live.is_empty() {
        if let Some(p) = live.iter().position(|&i| !a[i][i].is_zero()) {
            let i = live.remove(p);
            let piv = a[i][i];
            sig += piv.signum();
            for &r in &live {
                let factor = a[r][i].div(piv);
                for &s in &live {
                    let sub = factor.mul(a[i][s]);
                    a[r][s] = a[r][s].sub(sub);
                }
            }
        } else if let Some((pi, pj)) = find_offdiag(&a, &live) {
            // Clear the other rows against the 2x2 block [[0,b],[b,0]],
            // then drop the pair: its signature is zero.
            let (i, j) = (live[pi], live[pj]);
            let b = a[i][j];
            live.retain(|&x| x != i && x != j);
            for &r in &live {
                let fi = a[r][i].div(b);
                let fj = a[r][j].div(b);
                for &s in &live {
                    let sub = fi.mul(a[j][s]).add(fj.mul(a[i][s]));
                    a[r][s] = a[r][s].sub(sub);
                }
            }
        } else {
            break;
        }
    }
    sig
}

fn find_offdiag(a: &[Vec<Frac>], live: &[usize]) -> Option<(usize, usize)> {
    for (pi, &i) in live.iter().enumerate() {
        for (pj, &j) in live.iter().enumerate().skip(pi + 1) {
            if !a[i][j].is_zero() {
                return Some((pi, pj));
            }
        }
    }
    None
}

/// Reduced fraction with i128 parts; the entries stay tiny for the matrices
/// that arise here.
#[derive(Clone, Copy, Debug)]
struct Frac {
    num: i128,
    den: i128,
}

impl Frac {
    fn int(num: i128) -> Frac {
        Frac { num, den: 1 }
    }

    fn normalize(num: i128, den: i128) -> Frac {
        debug_assert!(den != 0);
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()).max(1) as i128;
        let s = if den < 0 { -1 } else { 1 };
        Frac {
            num: s * num / g,
            den: s * den / g,
        }
    }

    fn is_zero(self) -> bool {
        self.num == 0
    }

    fn signum(self) -> i32 {
        self.num.signum() as i32
    }

    fn add(self, o: Frac) -> Frac {
        Frac::normalize(self.num * o.den + o.num * self.den, self.den * o.den)
    }

    fn sub(self, o: Frac) -> Frac {
        Frac::normalize(self.num * o.den - o.num * self.den, self.den * o.den)
    }

    fn mul(self, o: Frac) -> Frac {
        Frac::normalize(self.num * o.num, self.den * o.den)
    }

    fn div(self, o: Frac) -> Frac {
        debug_assert!(!o.is_zero());
        Frac::normalize(self.num * o.den, self.den * o.num)
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::braid_closure;
    use crate::surgery::{insert_kink, mirror};

    fn sig_det(word: &[i32], strands: u32) -> (i32, u128) {
        let d = braid_closure(strands, word).unwrap();
        let s = signature_and_determinant(&d).unwrap();
        (s.signature, s.determinant)
    }

    #[test]
    fn pinned_signatures_and_determinants() {
        assert_eq!(sig_det(&[1], 2), (0, 1));
        assert_eq!(sig_det(&[-1], 2), (0, 1));
        assert_eq!(sig_det(&[1, 1], 2), (-1, 2));
        assert_eq!(sig_det(&[-1, -1], 2), (1, 2));
        assert_eq!(sig_det(&[1, 1, 1], 2), (-2, 3));
        assert_eq!(sig_det(&[-1, -1, -1], 2), (2, 3));
        assert_eq!(sig_det(&[1, -2, 1, -2], 3), (0, 5));
    }

    #[test]
    fn crossingless_unknot() {
        let d = braid_closure(1, &[]).unwrap();
        let s = signature_and_determinant(&d).unwrap();
        assert_eq!((s.signature, s.determinant), (0, 1));
    }

    #[test]
    fn curls_leave_signature_and_determinant_alone() {
        let base = braid_closure(2, &[1, 1, 1]).unwrap();
        let want = signature_and_determinant(&base).unwrap();
        for sign in [1i8, -1] {
            for under_first in [true, false] {
                let k = insert_kink(&base, 0, sign, under_first).unwrap();
                let got = signature_and_determinant(&k).unwrap();
                assert_eq!(got.signature, want.signature, "{sign} {under_first}");
                assert_eq!(got.determinant, want.determinant);
            }
        }
    }

    #[test]
    fn mirror_negates_signature() {
        for (strands, word) in [(2u32, vec![1, 1, 1]), (3, vec![1, -2, 1, -2]), (3, vec![1, 2, 1])] {
            let d = braid_closure(strands, &word).unwrap();
            let m = mirror(&d);
            let sd = signature_and_determinant(&d).unwrap();
            let sm = signature_and_determinant(&m).unwrap();
            assert_eq!(sd.signature, -sm.signature);
            assert_eq!(sd.determinant, sm.determinant);
        }
    }

    #[test]
    fn determinant_matrix_helpers() {
        assert_eq!(bareiss_det(&[vec![2, 1], vec![1, 2]]), 3);
        assert_eq!(bareiss_det(&[vec![0, 3], vec![3, 0]]), -9);
        assert_eq!(bareiss_det(&[]), 1);
        assert_eq!(symmetric_signature(&[vec![2, 1], vec![1, 2]]), 2);
        assert_eq!(symmetric_signature(&[vec![0, 3], vec![3, 0]]), 0);
        assert_eq!(symmetric_signature(&[vec![1, 0], vec![0, -5]]), 0);
        assert_eq!(symmetric_signature(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(
            symmetric_signature(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]),
            -1
        );
    }
}
