//! Seeded symbol-error channel.
//!
//! Randomness is Xoshiro256++. Trial `i` of a run seeded with `seed` uses the
//! stream seeded by `seed + i * 0x9E3779B97F4A7C15` (wrapping), fed through
//! `seed_from_u64`.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};
use crate::matrix::Matrix;
use crate::multiplicity::MultParams;
use crate::multipoly::MultiPoly;
use crate::oracle::Code;
use crate::poly::Poly;

pub type TrialRng = Xoshiro256PlusPlus;

pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    seed.wrapping_add(trial.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub fn trial_rng(seed: u64, trial: u64) -> TrialRng {
    TrialRng::seed_from_u64(trial_seed(seed, trial))
}

/// Replaces `errors` distinct columns, each by a uniformly random column
/// different from the original. Returns the new word and the sorted indices.
pub fn corrupt_columns<R: Rng + ?Sized>(
    word: &Matrix,
    errors: usize,
    f: &FieldCtx,
    rng: &mut R,
) -> Result<(Matrix, Vec<usize>)> {
    let (rows, cols) = word.shape();
    if errors > cols {
        return Err(Error::ParamOutOfRange(format!("{errors} errors exceed block length {cols}")));
    }
    if errors > 0 && rows == 0 {
        return Err(Error::ParamOutOfRange("cannot corrupt empty columns".into()));
    }
    let mut out = word.clone();
    let mut picked = index::sample(rng, cols, errors).into_vec();
    picked.sort_unstable();
    for &i in &picked {
        let orig = word.column(i);
        let col = loop {
            let c: Vec<Fe> = (0..rows).map(|_| Fe(rng.gen_range(0..f.order()))).collect();
            if c != orig {
                break c;
            }
        };
        out.set_column(i, &col);
    }
    Ok((out, picked))
}

/// Uniform polynomial of degree `< k`.
pub fn random_poly<R: Rng + ?Sized>(k: usize, f: &FieldCtx, rng: &mut R) -> Poly {
    Poly::from_coeffs((0..k).map(|_| Fe(rng.gen_range(0..f.order()))).collect())
}

/// Uniform polynomial of total degree `<= d`.
pub fn random_mpoly<R: Rng + ?Sized>(params: &MultParams, rng: &mut R) -> MultiPoly {
    let coeffs = (0..params.message_len()).map(|_| Fe(rng.gen_range(0..params.q()))).collect();
    params.message_from_coeffs(coeffs)
}
