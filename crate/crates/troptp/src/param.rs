//! The parametrization maps `ψ` and `φ` between weight matrices and tropical
//! matrices, and seeded generators for the inequality classes.
//!
//! `ψ(W)[i][j]` is the uppermost-path weight of `G_n` (`Σ_{t=i}^{j} w[i][t]`
//! for `i ≤ j`, `Σ_{t=j}^{i} w[t][j]` for `i > j`); `φ` recovers weights from
//! a matrix by first differences along rows/columns. They are mutually
//! inverse on all of `ℝ^{n×n}`, and restrict to a bijection between
//! strict-inequality weight matrices and `TP^trop`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::TropMatrix;
use crate::network::{uppermost_weight, WeightMatrix};
use crate::scalar::{rat, TropValue};

/// `ψ(W)`: the matrix of uppermost-path weights; equals the transfer matrix
/// of `build_canonical(W)` exactly when the weak inequalities hold.
pub fn psi(w: &WeightMatrix) -> TropMatrix {
    let n = w.n();
    TropMatrix::from_fn(n, n, |i, j| {
        TropValue::Finite(uppermost_weight(w, i + 1, j + 1).expect("indices in range"))
    })
}

/// `φ(A)`: `a[i][j]` on the diagonal, `a[i][j] − a[i][j−1]` above it,
/// `a[i][j] − a[i−1][j]` below it. Inverse of [`psi`].
pub fn phi(a: &TropMatrix) -> Result<WeightMatrix> {
    if !a.is_square() {
        return Err(Error::Shape);
    }
    if !a.all_finite() {
        return Err(Error::RequiresFinite);
    }
    let n = a.rows();
    let at = |i: usize, j: usize| a.get(i - 1, j - 1).as_rat().unwrap();
    let mut entries = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            entries.push(match i.cmp(&j) {
                std::cmp::Ordering::Equal => at(i, j).clone(),
                std::cmp::Ordering::Less => at(i, j) - at(i, j - 1),
                std::cmp::Ordering::Greater => at(i, j) - at(i - 1, j),
            });
        }
    }
    WeightMatrix::new(n, entries)
}

/// Which inequality regime [`gen_weights`] samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenMode {
    /// Strict trapeze and parallelogram inequalities (interior of 𝒲).
    Strict,
    /// Weak inequalities; zero gaps allowed, so boundary cases occur.
    Weak,
    /// Unconstrained integer entries.
    Arbitrary,
}

/// Deterministic seeded weight-matrix generator.
///
/// Strict/weak modes build the off-diagonal levels as increasing partial
/// sums of integer gaps (strict: gaps in `1..=10`; weak: `0..=10`) from base
/// values in `−5..=5`, and set each `w[i][i]` to the trapeze bound plus a
/// gap. Arbitrary mode draws every entry from `−10..=10`.
pub fn gen_weights(n: usize, mode: GenMode, seed: u64) -> WeightMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = WeightMatrix::new(n, vec![rat(0); n * n]).expect("square grid");
    match mode {
        GenMode::Arbitrary => {
            for i in 1..=n {
                for j in 1..=n {
                    w.set(i, j, rat(rng.gen_range(-10..=10)));
                }
            }
        }
        GenMode::Strict | GenMode::Weak => {
            let lo = if mode == GenMode::Strict { 1 } else { 0 };
            // row chains w[i][1] < ... < w[i][i-1], column chains
            // w[1][i] < ... < w[i-1][i]
            for i in 2..=n {
                let mut row = rat(rng.gen_range(-5..=5));
                w.set(i, 1, row.clone());
                for j in 2..i {
                    row += rat(rng.gen_range(lo..=10));
                    w.set(i, j, row.clone());
                }
                let mut col = rat(rng.gen_range(-5..=5));
                w.set(1, i, col.clone());
                for j in 2..i {
                    col += rat(rng.gen_range(lo..=10));
                    w.set(j, i, col.clone());
                }
            }
            w.set(1, 1, rat(rng.gen_range(-5..=5)));
            for i in 2..=n {
                let base = w.at(i, i - 1) + w.at(i - 1, i - 1) + w.at(i - 1, i);
                w.set(i, i, base + rat(rng.gen_range(lo..=10)));
            }
        }
    }
    w
}
