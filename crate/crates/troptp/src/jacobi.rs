//! Tropical Jacobi factorization: elementary matrices, the canonical
//! length-`n²` word and its weight sequence, word evaluation, parameter
//! recovery on `TP^trop`, factorization-scheme validation, and the explicit
//! tropical commutation move.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::TropMatrix;
use crate::network::WeightMatrix;
use crate::param::phi;
use crate::positivity::is_tp;
use crate::scalar::{Rat, TropValue};

/// A letter of the factorization alphabet: `i` (superdiagonal), `ī`
/// (subdiagonal, rendered `b{i}`), `ⓘ` (diagonal, rendered `c{i}`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    /// `x_i(s)`: identity with entry `(i, i+1) = s`; `1 ≤ i ≤ n−1`.
    Lower(usize),
    /// `x_ī(s)`: identity with entry `(i+1, i) = s`; `1 ≤ i ≤ n−1`.
    Barred(usize),
    /// `x_ⓘ(s)`: diagonal with entry `(i, i) = s`, unit elsewhere;
    /// `1 ≤ i ≤ n`.
    Circled(usize),
}

impl Letter {
    pub fn valid_for(self, n: usize) -> bool {
        match self {
            Letter::Lower(i) | Letter::Barred(i) => i >= 1 && i < n,
            Letter::Circled(i) => i >= 1 && i <= n,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Lower(i) => write!(f, "{}", i),
            Letter::Barred(i) => write!(f, "b{}", i),
            Letter::Circled(i) => write!(f, "c{}", i),
        }
    }
}

/// An ordered word over the alphabet, tied to an ambient dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub letters: Vec<Letter>,
    pub n: usize,
}

impl Word {
    pub fn new(letters: Vec<Letter>, n: usize) -> Result<Self> {
        if letters.iter().any(|l| !l.valid_for(n)) {
            return Err(Error::BadIndex);
        }
        Ok(Word { letters, n })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Space-separated rendering, e.g. `b2 b1 b2 c1 c2 c3 2 1 2` for `n = 3`.
    pub fn render(&self) -> String {
        self.letters
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// The tropical elementary Jacobi matrix for one letter.
pub fn jacobi_matrix(letter: Letter, s: &Rat, n: usize) -> Result<TropMatrix> {
    if !letter.valid_for(n) {
        return Err(Error::BadIndex);
    }
    let mut m = match letter {
        Letter::Lower(_) | Letter::Barred(_) => TropMatrix::identity(n),
        Letter::Circled(_) => TropMatrix::from_fn(n, n, |i, j| {
            if i == j {
                TropValue::unit()
            } else {
                TropValue::NegInf
            }
        }),
    };
    match letter {
        Letter::Lower(i) => m.set(i - 1, i, TropValue::Finite(s.clone())),
        Letter::Barred(i) => m.set(i, i - 1, TropValue::Finite(s.clone())),
        Letter::Circled(i) => m.set(i - 1, i - 1, TropValue::Finite(s.clone())),
    }
    Ok(m)
}

/// The canonical factorization word `𝔦` of length `n²`:
/// `𝔦̄¹ … 𝔦̄ⁿ⁻¹ ① … ⓝ 𝔦ⁿ⁻¹ … 𝔦¹` with `𝔦̄ᵏ = (n−k̄, …, n−1̄)` and
/// `𝔦ᵏ = (n−1, …, n−k)`.
pub fn canonical_word(n: usize) -> Word {
    let mut letters = Vec::with_capacity(n * n);
    for k in 1..n {
        for i in (n - k)..n {
            letters.push(Letter::Barred(i));
        }
    }
    for i in 1..=n {
        letters.push(Letter::Circled(i));
    }
    for k in (1..n).rev() {
        for i in ((n - k)..n).rev() {
            letters.push(Letter::Lower(i));
        }
    }
    Word { letters, n }
}

/// The canonical parameter vector `S_𝔦(W)`: left layers `k = 1..n−1`
/// (`w[n−k+1][1], …, w[n][k]`), the diagonal, then right layers mirrored
/// (ending `…, w[1][n−1], w[1][n]`).
pub fn weight_sequence(w: &WeightMatrix) -> Vec<Rat> {
    let n = w.n();
    let mut seq = Vec::with_capacity(n * n);
    for k in 1..n {
        for i in (n - k + 1)..=n {
            seq.push(w.at(i, i - (n - k)).clone());
        }
    }
    for i in 1..=n {
        seq.push(w.at(i, i).clone());
    }
    for k in (1..n).rev() {
        for j in ((n - k + 1)..=n).rev() {
            seq.push(w.at(j - (n - k), j).clone());
        }
    }
    seq
}

/// Left-to-right tropical product of the word's elementary matrices.
pub fn evaluate_word(word: &Word, params: &[Rat]) -> Result<TropMatrix> {
    if word.len() != params.len() {
        return Err(Error::LengthMismatch);
    }
    let mut acc = TropMatrix::identity(word.n);
    for (letter, s) in word.letters.iter().zip(params) {
        acc = acc.matmul(&jacobi_matrix(*letter, s, word.n)?)?;
    }
    Ok(acc)
}

/// The unique parameter vector factoring a `TP^trop` matrix through the
/// canonical word. Errors with `not-tp` below `TP^trop`, where the preimage
/// is not unique.
pub fn recover_params(a: &TropMatrix) -> Result<Vec<Rat>> {
    if !is_tp(a)? {
        return Err(Error::NotTp);
    }
    Ok(weight_sequence(&phi(a)?))
}

/// Validates a factorization scheme: the barred and unbarred subwords must
/// each be length-`n(n−1)/2` words composing to the order-reversing
/// permutation (minimal length forces reducedness), the circled letters must
/// be `① … ⓝ` once each, and the total length `n²`.
pub fn validate_scheme(word: &Word) -> bool {
    let n = word.n;
    let mut barred = Vec::new();
    let mut lower = Vec::new();
    let mut circled = vec![0usize; n];
    for letter in &word.letters {
        match *letter {
            Letter::Barred(i) => barred.push(i),
            Letter::Lower(i) => lower.push(i),
            Letter::Circled(i) => circled[i - 1] += 1,
        }
    }
    word.len() == n * n
        && circled.iter().all(|&c| c == 1)
        && reverses_order(&barred, n)
        && reverses_order(&lower, n)
}

/// True iff `transpositions` has minimal length and composes to the
/// permutation reversing `1..n`.
fn reverses_order(transpositions: &[usize], n: usize) -> bool {
    if transpositions.len() != n * (n - 1) / 2 {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for &i in transpositions {
        perm.swap(i - 1, i);
    }
    perm.iter().enumerate().all(|(pos, &v)| v == n - 1 - pos)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// The tropical commutation move on the quadruple
/// `x_i(s₁) ⊙ x_ⓘ(s₂) ⊙ x_ⓙ(s₃) ⊙ x_ī(s₄)` with `j = i+1`:
/// forward rewrites it as `x_ī(s′₁) ⊙ x_ⓘ(s′₂) ⊙ x_ⓙ(s′₃) ⊙ x_i(s′₄)`
/// with `T = max(s₂, s₁+s₃+s₄)`, `s′ = (s₃+s₄−T, T, s₂+s₃−T, s₁+s₃−T)`;
/// backward is the exact inverse, `T = max(s₃, s₁+s₂+s₄)`,
/// `s′ = (s₂+s₄−T, s₂+s₃−T, T, s₁+s₂−T)`.
pub fn commutation_map(s: &[Rat; 4], direction: Direction, i: usize, n: usize) -> Result<[Rat; 4]> {
    if i < 1 || i + 1 > n {
        return Err(Error::BadIndex);
    }
    let [s1, s2, s3, s4] = s;
    Ok(match direction {
        Direction::Forward => {
            let t = (s2.clone()).max(s1 + s3 + s4);
            [s3 + s4 - &t, t.clone(), s2 + s3 - &t, s1 + s3 - &t]
        }
        Direction::Backward => {
            let t = (s3.clone()).max(s1 + s2 + s4);
            [s2 + s4 - &t, s2 + s3 - &t, t.clone(), s1 + s2 - &t]
        }
    })
}
