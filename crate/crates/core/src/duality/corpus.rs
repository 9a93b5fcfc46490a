//! Seeded generators of invertible polynomials, and the choice of subgroups
//! to check for each of them.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::atomic::AtomicBlock;
use crate::intmat::{ExponentMatrix, InvertiblePolynomial};
use crate::symmetry::{Subgroup, SymmetryGroup};
use crate::{Caps, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusMode {
    /// disjoint unions of Fermat, chain and loop blocks, exponents ≥ 2
    Atomic,
    /// random diagonal-dominant matrices; non-degeneracy unknown
    Sparse,
}

impl std::str::FromStr for CorpusMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "atomic" => Ok(CorpusMode::Atomic),
            "sparse" => Ok(CorpusMode::Sparse),
            other => Err(Error::InvalidParameter(format!(
                "unknown corpus mode {other:?}"
            ))),
        }
    }
}

/// Deterministic corpus of `count` polynomials in at most `n_max` variables.
pub fn generate_corpus(
    seed: u64,
    mode: CorpusMode,
    n_max: usize,
    exp_max: u64,
    count: usize,
) -> Result<Vec<InvertiblePolynomial>> {
    if n_max == 0 || n_max > crate::euler::MAX_STRATA_VARIABLES {
        return Err(Error::InvalidParameter(format!("n_max = {n_max}")));
    }
    if exp_max < 2 {
        return Err(Error::InvalidParameter(format!("exp_max = {exp_max}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| match mode {
            CorpusMode::Atomic => atomic_polynomial(&mut rng, n_max, exp_max),
            CorpusMode::Sparse => sparse_polynomial(&mut rng, n_max, exp_max),
        })
        .collect())
}

fn permuted(rng: &mut ChaCha8Rng, mut rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let n = rows.len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    rows.shuffle(rng);
    rows.into_iter()
        .map(|r| {
            let mut out = vec![0; n];
            for (j, e) in r.into_iter().enumerate() {
                out[perm[j]] = e;
            }
            out
        })
        .collect()
}

fn atomic_polynomial(rng: &mut ChaCha8Rng, n_max: usize, exp_max: u64) -> InvertiblePolynomial {
    let n = rng.gen_range(1..=n_max);
    let mut rows = Vec::with_capacity(n);
    let mut next_var = 0;
    while next_var < n {
        let size = rng.gen_range(1..=n - next_var);
        let vars: Vec<usize> = (next_var..next_var + size).collect();
        let exponents: Vec<u64> = (0..size).map(|_| rng.gen_range(2..=exp_max)).collect();
        let block = if size == 1 {
            AtomicBlock::Fermat {
                var: vars[0],
                exponent: exponents[0],
            }
        } else if rng.gen_bool(0.5) {
            AtomicBlock::Chain { vars, exponents }
        } else {
            AtomicBlock::Loop { vars, exponents }
        };
        rows.extend(block.rows(n));
        next_var += size;
    }
    let matrix = ExponentMatrix::new(permuted(rng, rows))
        .expect("atomic blocks with exponents ≥ 2 are invertible");
    InvertiblePolynomial::from_matrix(matrix)
}

fn sparse_polynomial(rng: &mut ChaCha8Rng, n_max: usize, exp_max: u64) -> InvertiblePolynomial {
    let n = rng.gen_range(1..=n_max);
    loop {
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            rng.gen_range(2..=exp_max)
                        } else if rng.gen_bool(0.3) {
                            rng.gen_range(1..exp_max)
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        if let Ok(matrix) = ExponentMatrix::new(permuted(rng, rows)) {
            return InvertiblePolynomial::from_matrix(matrix);
        }
    }
}

/// Subgroups checked for one polynomial: the whole lattice when
/// `|G_f| ≤ enumerate_up_to`, otherwise `random_cyclic` seeded cyclic subgroups.
pub fn subgroups_to_check(
    group: &Arc<SymmetryGroup>,
    enumerate_up_to: u64,
    random_cyclic: usize,
    seed: u64,
    caps: &Caps,
) -> Result<Vec<Subgroup>> {
    if group.order() as u64 <= enumerate_up_to {
        return Subgroup::full(group).all_subgroups(caps);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..random_cyclic)
        .map(|_| Subgroup::cyclic(group, rng.gen_range(0..group.order())))
        .collect())
}
