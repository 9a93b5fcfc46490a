//! Smith normal form of a nonsingular square integer matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;
use crate::{Error, Result};

/// `U·M·V = D` with `U`, `V` unimodular and `D = diag(d₁,…,dₙ)`,
/// `dᵢ ≥ 1`, `dᵢ | dᵢ₊₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl SmithDecomposition {
    /// The diagonal of `D`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.nrows())
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    /// Diagonal entries different from 1.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|x| !x.is_one())
            .collect()
    }

    /// Re-multiplies `U·M·V` and compares with `D`.
    pub fn reproduces(&self, m: &IntMatrix) -> bool {
        self.u.mul(m).mul(&self.v) == self.d
    }
}

/// Gcd-driven row/column reduction. Row operations accumulate into `U`,
/// column operations into `V`.
pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithDecomposition> {
    if !m.is_square() {
        return Err(Error::InvalidMatrix(
            "Smith normal form of a non-square matrix".into(),
        ));
    }
    if m.determinant().is_zero() {
        return Err(Error::SingularMatrix);
    }
    let n = m.nrows();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(n);
    let mut v = IntMatrix::identity(n);

    for t in 0..n {
        loop {
            let (pi, pj) = min_abs_entry(&a, t).expect("nonsingular: trailing block is nonzero");
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..n {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&pivot);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&pivot);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // Pivot must divide the rest of the trailing block; otherwise pull
            // an offending row up and reduce again.
            let offending =
                (t + 1..n).find(|&i| (t + 1..n).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    let snf = SmithDecomposition { u, v, d: a };
    debug_assert!(snf.reproduces(m));
    Ok(snf)
}

fn min_abs_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let n = a.nrows();
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..n {
        for j in t..n {
            let x = a[(i, j)].abs();
            if x.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| x < *b) {
                best = Some(((i, j), x));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn diag(snf: &SmithDecomposition) -> Vec<i64> {
        snf.diagonal()
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect()
    }

    fn check(a: &IntMatrix, expected: &[i64]) {
        let snf = smith_normal_form(a).unwrap();
        assert!(snf.reproduces(a));
        assert_eq!(snf.u.determinant().abs(), BigInt::one());
        assert_eq!(snf.v.determinant().abs(), BigInt::one());
        assert_eq!(diag(&snf), expected);
    }

    #[test]
    fn examples() {
        check(&m(&[&[2, 0], &[0, 2]]), &[2, 2]);
        // gcd of entries is 1 and the product is det = 4
        check(&m(&[&[2, 1], &[0, 2]]), &[1, 4]);
        check(&m(&[&[3]]), &[3]);
    }

    #[test]
    fn divisibility_repair() {
        // diag(2,3) is not in normal form: Z/2 x Z/3 = Z/6
        check(&m(&[&[2, 0], &[0, 3]]), &[1, 6]);
        check(&m(&[&[4, 0, 0], &[0, 6, 0], &[0, 0, 10]]), &[2, 2, 60]);
    }

    #[test]
    fn negative_entries() {
        check(&m(&[&[0, -3], &[2, 0]]), &[1, 6]);
        check(&m(&[&[-5]]), &[5]);
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(
            smith_normal_form(&m(&[&[1, 2], &[2, 4]])),
            Err(Error::SingularMatrix)
        );
    }
}
