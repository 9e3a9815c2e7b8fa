//! Tropical permanent, optimal assignment enumeration, and minor signs.
//!
//! The tropical permanent `per(A) = max_σ Σ_i A[i][σ(i)]` is the optimal
//! assignment value of `A`. A square matrix is sign-nonsingular when the
//! permanent is finite and every optimal permutation has the same parity; a
//! minor is tropically positive (negative) when every optimal permutation of
//! the corresponding submatrix is even (odd).

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::matrix::TropMatrix;
use crate::scalar::{Rat, TropValue};

/// Permutation enumeration ceiling for exact parity classification.
pub const ENUM_LIMIT: usize = 8;

/// Brute-force ceiling for the permanent; above it a subset-DP optimal
/// assignment takes over (value only, no parity information).
pub const BRUTE_LIMIT: usize = 8;

/// Hard cap for the subset-DP assignment (memory `O(2^d)`).
const ASSIGNMENT_LIMIT: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// A permutation of `{0, .., d−1}` together with its parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
    parity: Parity,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &v in &images {
            if v >= d || seen[v] {
                return Err(Error::BadIndex);
            }
            seen[v] = true;
        }
        let parity = parity_of(&images);
        Ok(Permutation { images, parity })
    }

    pub fn identity(d: usize) -> Self {
        Permutation {
            images: (0..d).collect(),
            parity: Parity::Even,
        }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_even(&self) -> bool {
        self.parity == Parity::Even
    }
}

/// Parity by cycle decomposition: a cycle of length `k` contributes `k − 1`
/// transpositions.
fn parity_of(images: &[usize]) -> Parity {
    let mut visited = vec![false; images.len()];
    let mut transpositions = 0usize;
    for start in 0..images.len() {
        if visited[start] {
            continue;
        }
        let mut len = 0usize;
        let mut v = start;
        while !visited[v] {
            visited[v] = true;
            v = images[v];
            len += 1;
        }
        transpositions += len - 1;
    }
    if transpositions % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Sign class of a tropical minor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TropSign {
    /// Finite permanent, every optimal permutation even.
    Positive,
    /// Finite permanent, every optimal permutation odd.
    Negative,
    /// Permanent `−∞`, or optimal permutations of both parities.
    SignSingular,
}

impl TropSign {
    /// Tropically nonnegative: positive, or sign-singular.
    pub fn is_nonnegative(self) -> bool {
        self != TropSign::Negative
    }
}

fn perm_weight(a: &TropMatrix, images: &[usize]) -> TropValue {
    let mut acc = TropValue::unit();
    for (i, &j) in images.iter().enumerate() {
        acc = acc.times(a.get(i, j));
        if acc == TropValue::NegInf {
            return TropValue::NegInf;
        }
    }
    acc
}

/// The tropical permanent `max_σ Σ_i A[i][σ(i)]`; `−∞` when no permutation
/// has all-finite weight. Brute force up to [`BRUTE_LIMIT`], subset-DP
/// optimal assignment above.
pub fn permanent(a: &TropMatrix) -> Result<TropValue> {
    if !a.is_square() {
        return Err(Error::Shape);
    }
    let d = a.rows();
    if d == 0 {
        return Ok(TropValue::unit());
    }
    if d <= BRUTE_LIMIT {
        let mut best = TropValue::NegInf;
        for images in (0..d).permutations(d) {
            let w = perm_weight(a, &images);
            if w > best {
                best = w;
            }
        }
        Ok(best)
    } else {
        assignment_max(a)
    }
}

/// Optimal assignment by DP over column subsets: `dp[mask]` is the best
/// weight assigning rows `0..popcount(mask)` to the columns in `mask`.
fn assignment_max(a: &TropMatrix) -> Result<TropValue> {
    let d = a.rows();
    if d > ASSIGNMENT_LIMIT {
        return Err(Error::TooLarge);
    }
    let full = 1usize << d;
    let mut dp: Vec<Option<Rat>> = vec![None; full];
    dp[0] = Some(Rat::from_integer(0.into()));
    for mask in 0..full {
        let Some(base) = dp[mask].clone() else { continue };
        let row = mask.count_ones() as usize;
        if row == d {
            continue;
        }
        for col in 0..d {
            if mask & (1 << col) != 0 {
                continue;
            }
            let TropValue::Finite(w) = a.get(row, col) else { continue };
            let cand = &base + w;
            let slot = &mut dp[mask | (1 << col)];
            if slot.as_ref().map_or(true, |cur| cand > *cur) {
                *slot = Some(cand);
            }
        }
    }
    Ok(match dp[full - 1].take() {
        Some(r) => TropValue::Finite(r),
        None => TropValue::NegInf,
    })
}

/// The exact set of permutations attaining the permanent, in lexicographic
/// order of image sequences; empty iff the permanent is `−∞`.
pub fn optimal_permutations(a: &TropMatrix) -> Result<Vec<Permutation>> {
    if !a.is_square() {
        return Err(Error::Shape);
    }
    let d = a.rows();
    if d > ENUM_LIMIT {
        return Err(Error::TooLarge);
    }
    let mut best = TropValue::NegInf;
    let mut argmax: Vec<Vec<usize>> = Vec::new();
    for images in (0..d).permutations(d) {
        let w = perm_weight(a, &images);
        if w == TropValue::NegInf {
            continue;
        }
        if w > best {
            best = w;
            argmax.clear();
            argmax.push(images);
        } else if w == best {
            argmax.push(images);
        }
    }
    // itertools yields permutations in lexicographic order already
    argmax.into_iter().map(Permutation::new).collect()
}

/// Sign of the `I × J` tropical minor of `a` (0-based index sets).
///
/// A 1×1 minor is positive iff finite; it is sign-singular when `−∞`,
/// consistently with sign-nonsingularity requiring a finite permanent.
pub fn minor_sign(a: &TropMatrix, row_idx: &[usize], col_idx: &[usize]) -> Result<TropSign> {
    if row_idx.len() != col_idx.len() || row_idx.is_empty() {
        return Err(Error::Shape);
    }
    if row_idx.iter().any(|&i| i >= a.rows()) || col_idx.iter().any(|&j| j >= a.cols()) {
        return Err(Error::BadIndex);
    }
    let sub = a.submatrix(row_idx, col_idx);
    let opt = optimal_permutations(&sub)?;
    if opt.is_empty() {
        return Ok(TropSign::SignSingular);
    }
    let all_even = opt.iter().all(Permutation::is_even);
    let all_odd = opt.iter().all(|p| !p.is_even());
    Ok(if all_even {
        TropSign::Positive
    } else if all_odd {
        TropSign::Negative
    } else {
        TropSign::SignSingular
    })
}
