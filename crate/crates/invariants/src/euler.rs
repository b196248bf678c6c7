//! Laurent polynomials in (t, q, x) and the two Euler-type readings of a
//! diagram: the resolution state sum and the graded count of homology
//! ranks. The two agree after setting t = -1; away from that value the
//! state sum retains pairs that cancel in homology, so the equality the
//! suites assert is the specialized one.

use std::collections::BTreeMap;
use std::fmt;

use annular_diagram::resolve::resolve;
use annular_diagram::{AnnularDiagram, Mark};

use crate::{InvariantError, Ranks};

/// Laurent polynomial with i64 coefficients, keyed by (t, q, x) exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent3 {
    terms: BTreeMap<(i32, i32, i32), i64>,
}

impl Laurent3 {
    pub fn zero() -> Self {
        Laurent3::default()
    }

    pub fn monomial(t: i32, q: i32, x: i32, coef: i64) -> Self {
        let mut p = Laurent3::zero();
        p.add_term((t, q, x), coef);
        p
    }

    /// The factor qx + 1/(qx) a winding circle contributes.
    pub fn winding_factor() -> Self {
        let mut p = Laurent3::monomial(0, 1, 1, 1);
        p.add_term((0, -1, -1), 1);
        p
    }

    /// The factor q + 1/q a trivial circle contributes.
    pub fn trivial_factor() -> Self {
        let mut p = Laurent3::monomial(0, 1, 0, 1);
        p.add_term((0, -1, 0), 1);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<(i32, i32, i32), i64> {
        &self.terms
    }

    pub fn add_term(&mut self, key: (i32, i32, i32), coef: i64) {
        if coef == 0 {
            return;
        }
        let slot = self.terms.entry(key).or_insert(0);
        *slot += coef;
        if *slot == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Laurent3) -> Laurent3 {
        let mut out = self.clone();
        for (&key, &coef) in &other.terms {
            out.add_term(key, coef);
        }
        out
    }

    pub fn sub(&self, other: &Laurent3) -> Laurent3 {
        let mut out = self.clone();
        for (&key, &coef) in &other.terms {
            out.add_term(key, -coef);
        }
        out
    }

    pub fn mul(&self, other: &Laurent3) -> Laurent3 {
        let mut out = Laurent3::zero();
        for (&(a, b, c), &u) in &self.terms {
            for (&(d, e, f), &v) in &other.terms {
                out.add_term((a + d, b + e, c + f), u * v);
            }
        }
        out
    }

    /// Collapses t to -1, leaving a polynomial keyed by (q, x) exponents.
    pub fn eval_t_minus_one(&self) -> BTreeMap<(i32, i32), i64> {
        let mut out: BTreeMap<(i32, i32), i64> = BTreeMap::new();
        for (&(t, q, x), &coef) in &self.terms {
            let signed = if t.rem_euclid(2) == 1 { -coef } else { coef };
            let slot = out.entry((q, x)).or_insert(0);
            *slot += signed;
            if *slot == 0 {
                out.remove(&(q, x));
            }
        }
        out
    }

    /// Exact division by qx + 1/(qx). The t exponent is inert, so each
    /// t-slice divides independently: the lexicographically least (q, x)
    /// term of the remainder must come from the quotient term one step
    /// below it, which determines the quotient greedily.
    pub fn divide_by_winding_factor(&self) -> Result<Laurent3, InvariantError> {
        let mut quotient = Laurent3::zero();
        let mut slices: BTreeMap<i32, BTreeMap<(i32, i32), i64>> = BTreeMap::new();
        for (&(t, q, x), &coef) in &self.terms {
            slices.entry(t).or_default().insert((q, x), coef);
        }
        for (t, mut slice) in slices {
            let max_key = *slice.keys().next_back().expect("slice is nonempty");
            while let Some((&(b, c), &g)) = slice.first_key_value() {
                if (b, c) > max_key {
                    return Err(InvariantError::NotDivisible);
                }
                quotient.add_term((t, b + 1, c + 1), g);
                slice.remove(&(b, c));
                let upper = slice.entry((b + 2, c + 2)).or_insert(0);
                *upper -= g;
                if *upper == 0 {
                    slice.remove(&(b + 2, c + 2));
                }
            }
        }
        if quotient.mul(&Laurent3::winding_factor()) != *self {
            return Err(InvariantError::Internal(
                "division check failed after exact division".into(),
            ));
        }
        Ok(quotient)
    }
}

/// Terms in exponent order, signs folded into the separators, exponents
/// written only when nonzero: the unit prints as "1" and zero as "0".
impl fmt::Display for Laurent3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (pos, (&(t, q, x), &coef)) in self.terms.iter().enumerate() {
            match (pos, coef < 0) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            let mut factors = Vec::new();
            for (name, e) in [("t", t), ("q", q), ("x", x)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            if coef.unsigned_abs() != 1 || factors.is_empty() {
                factors.insert(0, coef.unsigned_abs().to_string());
            }
            f.write_str(&factors.join(" "))?;
        }
        Ok(())
    }
}

/// Graded rank count of a homology table: one t^i q^j x^k term per unit of
/// rank, all coefficients nonnegative. Setting t = -1 afterwards gives the
/// Euler characteristic.
pub fn euler_from_homology(ranks: &Ranks) -> Laurent3 {
    let mut p = Laurent3::zero();
    for (&(i, j, k), &r) in ranks {
        p.add_term((i, j, k), r as i64);
    }
    p
}

/// Positional division of a rank table by the winding-circle factor: each
/// i-slice must factor with nonnegative integer ranks. Returns the quotient
/// table or an error when no such factorization exists.
pub fn deconvolve_winding_factor(ranks: &Ranks) -> Result<Ranks, InvariantError> {
    let quotient = euler_from_homology(ranks).divide_by_winding_factor()?;
    let mut out = Ranks::new();
    for (&(i, j, k), &coef) in quotient.terms() {
        if coef < 0 {
            return Err(InvariantError::NotDivisible);
        }
        out.insert((i, j, k), coef as usize);
    }
    Ok(out)
}

/// State sum over all complete smoothings: mask weight (tq)^I against the
/// circle factors, under the same final shift the complex build applies,
/// t to the -(negative crossings) and q to (positive) - 2(negative), with
/// one more 1/(qx) when the mark pins a winding circle. In the reduced
/// reading the marked circle is pinned to its top label and contributes a
/// single monomial instead of a two-term factor.
pub fn euler_statesum(d: &AnnularDiagram, reduced: bool) -> Result<Laurent3, InvariantError> {
    let n = d.crossing_count();
    let np = d.n_plus() as i32;
    let nm = d.n_minus() as i32;
    let marked_winding_circle = matches!(
        d.marked(),
        Some(Mark::Circle(c)) if d.free_circles()[c].winding != 0
    );
    let meridian = reduced && marked_winding_circle;
    let mut prefactor = Laurent3::monomial(-nm, np - 2 * nm, 0, 1);
    if meridian {
        prefactor = prefactor.mul(&Laurent3::monomial(0, -1, -1, 1));
    }
    let mut sum = Laurent3::zero();
    for mask in 0u64..(1u64 << n) {
        let res = resolve(d, mask)?;
        let weight = mask.count_ones() as i32;
        let mut term = Laurent3::monomial(weight, weight, 0, 1);
        for (pos, circle) in res.circles.iter().enumerate() {
            let pinned = reduced && res.marked == Some(pos);
            let factor = match (circle.nontrivial, pinned) {
                (true, false) => Laurent3::winding_factor(),
                (false, false) => Laurent3::trivial_factor(),
                (true, true) => Laurent3::monomial(0, 1, 1, 1),
                (false, true) => Laurent3::monomial(0, 1, 0, 1),
            };
            term = term.mul(&factor);
        }
        sum = sum.add(&term);
    }
    Ok(prefactor.mul(&sum))
}
