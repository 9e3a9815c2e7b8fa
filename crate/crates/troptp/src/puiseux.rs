//! A finitely supported fragment of the nonarchimedean field `𝕂` of
//! generalized Puiseux series: exact arithmetic, valuation and sign,
//! determinants, classical transfer matrices of `G_n` over `𝕂`, and the
//! valuation correspondence `val(det 𝔄) = per(A)` on sign-nonsingular
//! tropicalizations.
//!
//! Elements are finite sums `Σ aₖ t^{bₖ}` with rational coefficients and
//! strictly decreasing rational exponents; `val` takes the leading exponent
//! (`val(0) = −∞`) and the sign is the leading coefficient's.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::jacobi::{recover_params, weight_sequence, Letter, Word};
use crate::matrix::TropMatrix;
use crate::network::{build_canonical, inequality_report, WeightMatrix};
use crate::perm::{minor_sign, permanent, TropSign};
use crate::scalar::{fmt_rat, rat, ratq, Rat, TropValue};

/// Size ceiling for `𝕂` determinants (permutation expansion).
pub const DET_LIMIT: usize = 6;

/// Size ceiling for the full valuation-correspondence report.
pub const VAL_CHECK_LIMIT: usize = 4;

/// A finitely supported generalized Puiseux series: terms
/// `(coefficient ≠ 0, exponent)` sorted by strictly decreasing exponent.
/// The empty sum is `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxPoly {
    terms: Vec<(Rat, Rat)>,
}

impl PuiseuxPoly {
    pub fn zero() -> Self {
        PuiseuxPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        PuiseuxPoly::monomial(rat(1), rat(0))
    }

    pub fn monomial(coeff: Rat, exponent: Rat) -> Self {
        if coeff.is_zero() {
            return PuiseuxPoly::zero();
        }
        PuiseuxPoly {
            terms: vec![(coeff, exponent)],
        }
    }

    /// The monomial `t^e`.
    pub fn t_pow(exponent: Rat) -> Self {
        PuiseuxPoly::monomial(rat(1), exponent)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Rat, Rat)] {
        &self.terms
    }

    fn from_map(map: BTreeMap<Rat, Rat>) -> Self {
        let mut terms: Vec<(Rat, Rat)> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (c, e))
            .collect();
        terms.reverse(); // BTreeMap ascends; we store descending exponents
        PuiseuxPoly { terms }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut map = BTreeMap::new();
        for (c, e) in self.terms.iter().chain(&other.terms) {
            let slot = map.entry(e.clone()).or_insert_with(Rat::zero);
            *slot += c;
        }
        PuiseuxPoly::from_map(map)
    }

    pub fn neg(&self) -> Self {
        PuiseuxPoly {
            terms: self.terms.iter().map(|(c, e)| (-c, e.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut map = BTreeMap::new();
        for (c1, e1) in &self.terms {
            for (c2, e2) in &other.terms {
                let slot = map.entry(e1 + e2).or_insert_with(Rat::zero);
                *slot += c1 * c2;
            }
        }
        PuiseuxPoly::from_map(map)
    }

    /// Rendered as `c1*t^e1 + c2*t^e2 + …` with exact rationals; `0` for the
    /// zero series.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(c, e)| format!("{}*t^{}", fmt_rat(c), fmt_rat(e)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for PuiseuxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// The valuation: the largest exponent of `f`, with `val(0) = −∞`.
pub fn k_val(f: &PuiseuxPoly) -> TropValue {
    match f.terms.first() {
        Some((_, e)) => TropValue::Finite(e.clone()),
        None => TropValue::NegInf,
    }
}

/// Positivity in `𝕂`: the sign of the leading coefficient.
pub fn k_positive(f: &PuiseuxPoly) -> Result<bool> {
    match f.terms.first() {
        Some((c, _)) => Ok(*c > Rat::zero()),
        None => Err(Error::ZeroSeries),
    }
}

/// A matrix over `𝕂`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<PuiseuxPoly>,
}

impl KMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> PuiseuxPoly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        KMatrix { rows, cols, entries }
    }

    pub fn identity(n: usize) -> Self {
        KMatrix::from_fn(n, n, |i, j| {
            if i == j {
                PuiseuxPoly::one()
            } else {
                PuiseuxPoly::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &PuiseuxPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> KMatrix {
        KMatrix::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self.get(row_idx[i], col_idx[j]).clone()
        })
    }

    /// Entrywise valuation.
    pub fn val(&self) -> TropMatrix {
        TropMatrix::from_fn(self.rows, self.cols, |i, j| k_val(self.get(i, j)))
    }
}

/// Classical matrix product over `𝕂`.
pub fn k_matmul(a: &KMatrix, b: &KMatrix) -> Result<KMatrix> {
    if a.cols != b.rows {
        return Err(Error::Shape);
    }
    Ok(KMatrix::from_fn(a.rows, b.cols, |i, j| {
        let mut acc = PuiseuxPoly::zero();
        for t in 0..a.cols {
            acc = acc.add(&a.get(i, t).mul(b.get(t, j)));
        }
        acc
    }))
}

/// Exact determinant by signed permutation expansion.
pub fn k_det(m: &KMatrix) -> Result<PuiseuxPoly> {
    if m.rows != m.cols {
        return Err(Error::Shape);
    }
    let n = m.rows;
    if n > DET_LIMIT {
        return Err(Error::TooLarge);
    }
    if n == 0 {
        return Ok(PuiseuxPoly::one());
    }
    let mut det = PuiseuxPoly::zero();
    for images in (0..n).permutations(n) {
        let mut prod = PuiseuxPoly::one();
        for (i, &j) in images.iter().enumerate() {
            prod = prod.mul(m.get(i, j));
        }
        let even = crate::perm::Permutation::new(images).expect("valid permutation").is_even();
        det = if even { det.add(&prod) } else { det.sub(&prod) };
    }
    Ok(det)
}

/// Monomial lift of a weight matrix: each `w[i][j]` becomes `t^{w[i][j]}`
/// (positive, of valuation `w[i][j]`).
pub fn lift_weights(w: &WeightMatrix) -> KMatrix {
    let n = w.n();
    KMatrix::from_fn(n, n, |i, j| PuiseuxPoly::t_pow(w.at(i + 1, j + 1).clone()))
}

/// Seeded lift with random positive rational leading coefficients, for
/// robustness checks (any positive coefficient preserves the valuations).
pub fn lift_weights_random(w: &WeightMatrix, seed: u64) -> KMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = w.n();
    KMatrix::from_fn(n, n, |i, j| {
        let coeff = ratq(rng.gen_range(1..=12), rng.gen_range(1..=12));
        PuiseuxPoly::monomial(coeff, w.at(i + 1, j + 1).clone())
    })
}

/// The classical (sum-product) transfer matrix of the canonical layout of
/// `G_n` with the given `𝕂`-valued weights, by explicit path enumeration:
/// entry `(i, j)` is `Σ_paths Π arc weights`.
pub fn k_transfer(wk: &KMatrix) -> Result<KMatrix> {
    if wk.rows != wk.cols {
        return Err(Error::Shape);
    }
    let n = wk.rows;
    if n > VAL_CHECK_LIMIT {
        return Err(Error::TooLarge);
    }
    Ok(KMatrix::from_fn(n, n, |i, j| {
        let mut total = PuiseuxPoly::zero();
        enumerate_paths(wk, n, i + 1, j + 1, 0, PuiseuxPoly::one(), &mut total);
        total
    }))
}

/// Depth-first walk over the canonical layout's transitions, accumulating
/// the product of arc weights of every path from level `level` at column `x`
/// to target `j`.
fn enumerate_paths(
    wk: &KMatrix,
    n: usize,
    level: usize,
    j: usize,
    x: usize,
    prefix: PuiseuxPoly,
    total: &mut PuiseuxPoly,
) {
    if x == 2 * n {
        if level == j {
            *total = total.add(&prefix);
        }
        return;
    }
    let wk_at = |i: usize, jj: usize| wk.get(i - 1, jj - 1);
    if x == n - 1 {
        // middle transition: horizontal carrying the diagonal weight
        let next = prefix.mul(wk_at(level, level));
        enumerate_paths(wk, n, level, j, x + 1, next, total);
        return;
    }
    // unit horizontal arc
    enumerate_paths(wk, n, level, j, x + 1, prefix.clone(), total);
    if x < n - 1 && level >= n - x {
        // descend: weight w[level][level - (n - x - 1)]
        let next = prefix.mul(wk_at(level, level - (n - x - 1)));
        enumerate_paths(wk, n, level - 1, j, x + 1, next, total);
    }
    if x >= n && x < 2 * n - 1 && level + 1 >= x - n + 2 && level < n {
        // ascend: weight w[level + 1 + n - x - 1][level + 1]
        let next = prefix.mul(wk_at(level + n - x, level + 1));
        enumerate_paths(wk, n, level + 1, j, x + 1, next, total);
    }
}

/// Classical elementary Jacobi matrix over `𝕂`.
pub fn k_jacobi(letter: Letter, s: &PuiseuxPoly, n: usize) -> Result<KMatrix> {
    if !letter.valid_for(n) {
        return Err(Error::BadIndex);
    }
    Ok(KMatrix::from_fn(n, n, |i, j| match letter {
        Letter::Lower(k) if (i, j) == (k - 1, k) => s.clone(),
        Letter::Barred(k) if (i, j) == (k, k - 1) => s.clone(),
        Letter::Circled(k) if (i, j) == (k - 1, k - 1) => s.clone(),
        _ if i == j => PuiseuxPoly::one(),
        _ => PuiseuxPoly::zero(),
    }))
}

/// Left-to-right classical product of the word's elementary matrices.
pub fn k_evaluate_word(word: &Word, params: &[PuiseuxPoly]) -> Result<KMatrix> {
    if word.len() != params.len() {
        return Err(Error::LengthMismatch);
    }
    let mut acc = KMatrix::identity(word.n);
    for (letter, s) in word.letters.iter().zip(params) {
        acc = k_matmul(&acc, &k_jacobi(*letter, s, word.n)?)?;
    }
    Ok(acc)
}

/// Outcome of the valuation-correspondence audit for one weight matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValReport {
    /// Entrywise `val` of the classical transfer matrix equals the tropical
    /// transfer matrix.
    pub entrywise_val: bool,
    /// On every minor with sign-nonsingular tropicalization,
    /// `val(det) = per` and the `𝕂`-sign matches the optimal parity.
    pub minor_correspondence: bool,
    /// All minors of the lifted transfer matrix positive in `𝕂`
    /// (membership in `TP(𝕂)`); only audited under strict inequalities.
    pub tp_over_k: Option<bool>,
    /// `recover_params(val M) = weight_sequence(W)`; only audited under
    /// strict inequalities.
    pub recover_matches: Option<bool>,
}

impl ValReport {
    pub fn all_hold(&self) -> bool {
        self.entrywise_val
            && self.minor_correspondence
            && self.tp_over_k != Some(false)
            && self.recover_matches != Some(false)
    }
}

/// Audits the nonarchimedean correspondence for `W`: lifts the weights to
/// monomials, computes the classical transfer matrix over `𝕂`, and compares
/// valuations, determinants, and recovered parameters against the tropical
/// side.
pub fn val_correspondence_check(w: &WeightMatrix) -> Result<ValReport> {
    let n = w.n();
    if n > VAL_CHECK_LIMIT {
        return Err(Error::TooLarge);
    }
    let m = k_transfer(&lift_weights(w))?;
    let trop = build_canonical(w).transfer_matrix()?;
    let entrywise_val = m.val() == trop;

    let mut minor_correspondence = true;
    let mut all_minors_positive = true;
    for size in 1..=n {
        for rows in (0..n).combinations(size) {
            for cols in (0..n).combinations(size) {
                let det = k_det(&m.submatrix(&rows, &cols))?;
                let sign = minor_sign(&trop, &rows, &cols)?;
                if sign != TropSign::SignSingular {
                    let per = permanent(&trop.submatrix(&rows, &cols))?;
                    if k_val(&det) != per || k_positive(&det)? != (sign == TropSign::Positive) {
                        minor_correspondence = false;
                    }
                }
                if det.is_zero() || !k_positive(&det)? {
                    all_minors_positive = false;
                }
            }
        }
    }

    let strict = inequality_report(w).strict();
    let (tp_over_k, recover_matches) = if strict {
        let recovered = recover_params(&m.val())? == weight_sequence(w);
        (Some(all_minors_positive), Some(recovered))
    } else {
        (None, None)
    };
    Ok(ValReport {
        entrywise_val,
        minor_correspondence,
        tp_over_k,
        recover_matches,
    })
}
