//! Character pairing between `G_f~` (matrix `Eᵀ`) and `G_f` (matrix `E`):
//! `⟨β, α⟩ = βᵀ·E·α mod 1`.
//!
//! Since `E·α ∈ ℤⁿ` and `Eᵀ·β ∈ ℤⁿ`, the value only depends on the classes of
//! `α` and `β`, and the pairing identifies `G_f~` with the character group of
//! `G_f`.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use super::{GroupElement, Subgroup, SymmetryGroup};
use crate::{Error, Result};

/// Character value `exp(2πi·num/den)`, with `0 ≤ num < den` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PairingValue {
    pub num: u64,
    pub den: u64,
}

impl PairingValue {
    fn new(num: u64, den: u64) -> Self {
        let num = num % den;
        let g = num.gcd(&den);
        PairingValue {
            num: num / g,
            den: den / g,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Order of the value in `ℚ/ℤ`.
    pub fn order(&self) -> u64 {
        self.den
    }
}

/// Sum in `ℚ/ℤ`.
impl std::ops::Add for PairingValue {
    type Output = PairingValue;

    fn add(self, other: PairingValue) -> PairingValue {
        let den = self.den.lcm(&other.den);
        PairingValue::new(
            self.num * (den / self.den) + other.num * (den / other.den),
            den,
        )
    }
}

impl fmt::Display for PairingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            f.write_str("0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn check_transposed(dual: &SymmetryGroup, group: &SymmetryGroup) -> Result<()> {
    if dual.matrix() == &group.matrix().transpose() {
        Ok(())
    } else {
        Err(Error::MismatchedMatrices)
    }
}

/// Numerator of `⟨β, α⟩` over `d`, given `E·α` precomputed.
fn numerator(beta_k: &[u64], e_alpha: &[u64], d: u64) -> u64 {
    let d = d as u128;
    beta_k
        .iter()
        .zip(e_alpha)
        .fold(0u128, |acc, (&m, &v)| (acc + m as u128 * v as u128) % d) as u64
}

/// `⟨β, α⟩` for `β ∈ G_f~` and `α ∈ G_f`.
pub fn pairing(beta: &GroupElement, alpha: &GroupElement) -> Result<PairingValue> {
    check_transposed(beta.group(), alpha.group())?;
    let d = alpha.d();
    let e_alpha = alpha.group().exponent_image(alpha.index());
    Ok(PairingValue::new(numerator(beta.k(), &e_alpha, d), d))
}

/// The subgroup of `dual_group` annihilating `h` under the pairing, i.e. the
/// kernel of restricting characters of the ambient group to `h`.
pub fn dual_subgroup(h: &Subgroup, dual_group: &Arc<SymmetryGroup>) -> Result<Subgroup> {
    let group = h.group();
    check_transposed(dual_group, group)?;
    let d = group.d();
    let images: Vec<Vec<u64>> = h
        .generator_indices()
        .into_iter()
        .map(|g| group.exponent_image(g))
        .collect();
    let members: Vec<u32> = (0..dual_group.order())
        .filter(|&b| {
            let k = dual_group.k(b);
            images.iter().all(|v| numerator(k, v, d) == 0)
        })
        .map(|b| b as u32)
        .collect();
    Ok(Subgroup::from_sorted_members(dual_group, members))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intmat::ExponentMatrix;
    use crate::Caps;

    fn groups(rows: Vec<Vec<u64>>) -> (Arc<SymmetryGroup>, Arc<SymmetryGroup>) {
        let e = ExponentMatrix::new(rows).unwrap();
        let caps = Caps::default();
        (
            SymmetryGroup::new(&e, &caps).unwrap(),
            SymmetryGroup::new(&e.transpose(), &caps).unwrap(),
        )
    }

    #[test]
    fn fermat_value() {
        let (g, gt) = groups(vec![vec![2, 0], vec![0, 2]]);
        let beta = gt.element_from_fractions(&[(1, 2), (0, 1)]).unwrap();
        let alpha = g.element_from_fractions(&[(1, 2), (0, 1)]).unwrap();
        assert_eq!(
            pairing(&beta, &alpha).unwrap(),
            PairingValue { num: 1, den: 2 }
        );
        for a in g.elements() {
            assert!(pairing(&gt.identity(), &a).unwrap().is_zero());
        }
    }

    #[test]
    fn chain_generators_pair_to_order_four() {
        let (g, gt) = groups(vec![vec![2, 1], vec![0, 2]]);
        let beta = gt.generators().remove(0);
        let alpha = g.generators().remove(0);
        assert_eq!(pairing(&beta, &alpha).unwrap().order(), 4);
    }

    #[test]
    fn wrong_orientation_is_rejected() {
        let (g, gt) = groups(vec![vec![2, 1], vec![0, 2]]);
        assert_eq!(
            pairing(&g.identity(), &g.identity()),
            Err(Error::MismatchedMatrices)
        );
        assert!(dual_subgroup(&Subgroup::full(&g), &g).is_err());
        assert!(dual_subgroup(&Subgroup::full(&g), &gt).is_ok());
    }

    #[test]
    fn dual_examples() {
        let (g, gt) = groups(vec![vec![2, 0], vec![0, 2]]);
        assert!(dual_subgroup(&Subgroup::full(&g), &gt)
            .unwrap()
            .is_trivial());
        assert!(dual_subgroup(&Subgroup::trivial(&g), &gt)
            .unwrap()
            .is_full());

        let diag = g.element_from_fractions(&[(1, 2), (1, 2)]).unwrap();
        let h = Subgroup::cyclic(&g, diag.index());
        let dual = dual_subgroup(&h, &gt).unwrap();
        assert_eq!(dual.to_string(), "{(0, 0), (1/2, 1/2)}");
    }
}
