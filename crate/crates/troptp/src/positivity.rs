//! Classification into the tropical total positivity classes.
//!
//! `TP^trop` (every minor tropically positive, all entries finite) and
//! `TN^trop(ℝ)` (every minor tropically nonnegative, finite entries) admit a
//! fast criterion through adjacent 2×2 minors: `A` is in `TP^trop` iff
//! `a[i][j] + a[i−1][j−1] > a[i−1][j] + a[i][j−1]` for all adjacent pairs,
//! and in `TN^trop(ℝ)` iff the weak inequalities hold (the opposites of
//! Monge matrices). A brute-force minor oracle validates the criterion and
//! handles matrices with `−∞` entries.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::matrix::TropMatrix;
use crate::perm::{minor_sign, TropSign};

/// Ceiling for the brute-force minor oracle.
pub const ORACLE_LIMIT: usize = 6;

/// A failing minor: 1-based row and column index sets with the observed sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub sign: TropSign,
}

/// Full classification produced by the minor oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityClass {
    pub is_tp: bool,
    pub is_tn_finite: bool,
    pub is_tn: bool,
    /// Largest `t` such that every minor of size at most `t` is positive.
    pub max_t_positive: usize,
    /// Largest `t` such that every minor of size at most `t` is nonnegative.
    pub max_t_nonnegative: usize,
    /// First failure witnesses, in lexicographic (size, rows, cols) order:
    /// at most one non-positive and one negative minor.
    pub witnesses: Vec<MinorWitness>,
}

/// Adjacent 2×2 minor check on an all-finite square matrix.
///
/// Strict mode tests `a[i][j] + a[i−1][j−1] > a[i−1][j] + a[i][j−1]` for all
/// `2 ≤ i, j ≤ n` (the `TP^trop` criterion); weak mode tests `≥` (the
/// `TN^trop(ℝ)` / Monge-opposite criterion). Violating `(i, j)` pairs are
/// reported 1-based.
pub fn adjacent_2x2_check(a: &TropMatrix, strict: bool) -> Result<(bool, Vec<(usize, usize)>)> {
    if !a.is_square() || !a.all_finite() {
        return Err(Error::RequiresFinite);
    }
    let n = a.rows();
    let mut violations = Vec::new();
    for i in 1..n {
        for j in 1..n {
            let lhs = a.get(i, j).times(a.get(i - 1, j - 1));
            let rhs = a.get(i - 1, j).times(a.get(i, j - 1));
            let ok = if strict { lhs > rhs } else { lhs >= rhs };
            if !ok {
                violations.push((i + 1, j + 1));
            }
        }
    }
    Ok((violations.is_empty(), violations))
}

/// Fast `TP^trop` membership via adjacent strict 2×2 minors.
pub fn is_tp(a: &TropMatrix) -> Result<bool> {
    adjacent_2x2_check(a, true).map(|(ok, _)| ok)
}

/// Fast `TN^trop(ℝ)` membership via adjacent weak 2×2 minors.
pub fn is_tn_finite(a: &TropMatrix) -> Result<bool> {
    adjacent_2x2_check(a, false).map(|(ok, _)| ok)
}

/// Brute-force classification: enumerates every `I × J` minor of size at
/// most `t` and classifies its sign.
///
/// With `t = n` the flags are exact class membership; with `t < n` they are
/// the `TP_t` / `TN_t` truncations.
pub fn classify_oracle(a: &TropMatrix, t: usize) -> Result<PositivityClass> {
    if !a.is_square() {
        return Err(Error::Shape);
    }
    let n = a.rows();
    if n > ORACLE_LIMIT {
        return Err(Error::TooLarge);
    }
    let t = t.min(n);
    let mut max_t_positive = 0usize;
    let mut max_t_nonnegative = 0usize;
    let mut all_positive = true;
    let mut all_nonnegative = true;
    let mut witnesses: Vec<MinorWitness> = Vec::new();
    for size in 1..=t {
        let mut size_positive = true;
        let mut size_nonnegative = true;
        for rows in (0..n).combinations(size) {
            for cols in (0..n).combinations(size) {
                let sign = minor_sign(a, &rows, &cols)?;
                if sign != TropSign::Positive {
                    size_positive = false;
                    if all_positive && witnesses.is_empty() {
                        witnesses.push(MinorWitness {
                            rows: rows.iter().map(|&i| i + 1).collect(),
                            cols: cols.iter().map(|&j| j + 1).collect(),
                            sign,
                        });
                    }
                }
                if !sign.is_nonnegative() {
                    size_nonnegative = false;
                    if all_nonnegative && witnesses.iter().all(|w| w.sign != TropSign::Negative) {
                        witnesses.push(MinorWitness {
                            rows: rows.iter().map(|&i| i + 1).collect(),
                            cols: cols.iter().map(|&j| j + 1).collect(),
                            sign,
                        });
                    }
                }
            }
        }
        if all_positive && size_positive {
            max_t_positive = size;
        } else {
            all_positive = false;
        }
        if all_nonnegative && size_nonnegative {
            max_t_nonnegative = size;
        } else {
            all_nonnegative = false;
        }
    }
    let finite = a.all_finite();
    Ok(PositivityClass {
        is_tp: finite && max_t_positive == t,
        is_tn_finite: finite && max_t_nonnegative == t,
        is_tn: max_t_nonnegative == t,
        max_t_positive,
        max_t_nonnegative,
        witnesses,
    })
}
