//! The diagonal symmetry group `G_f` of an invertible polynomial.
//!
//! An element is a vector `α = k/d ∈ (ℚ/ℤ)ⁿ` with `d = |det E|` and
//! `E·α ∈ ℤⁿ`; it acts by `xⱼ ↦ exp(2πi·αⱼ)·xⱼ`. Elements are stored as the
//! integer residues `k`, sorted lexicographically, so index 0 is always the
//! identity.

mod pairing;
mod subgroup;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::intmat::{smith_normal_form, ExponentMatrix, VarSet};
use crate::{Caps, Error, Result};

pub use pairing::{dual_subgroup, pairing, PairingValue};
pub use subgroup::{subgroup_from_generators, Subgroup};

/// Finite abelian group `G_f ≅ ⊕ ℤ/dᵢ`, fully enumerated.
#[derive(Debug)]
pub struct SymmetryGroup {
    matrix: ExponentMatrix,
    d: u64,
    factors: Vec<u64>,
    /// residues `k` of the generator attached to each factor
    generators: Vec<Vec<u64>>,
    /// sorted residues, `n` per element
    elements: Vec<u64>,
    /// mixed-radix coordinate (w.r.t. `factors`) of each sorted element
    coord_of: Vec<u32>,
    index_of_coord: Vec<u32>,
    /// `E` reduced mod `d²`, row-major
    e_mod_d2: Vec<u128>,
}

/// Builds and enumerates `G_f`.
///
/// With `U·E·V = D` from the Smith normal form, the columns `V·eᵢ/dᵢ` generate
/// the group and every element is `Σ cᵢ·gᵢ` with `0 ≤ cᵢ < dᵢ`.
pub fn full_symmetry_group(matrix: &ExponentMatrix, caps: &Caps) -> Result<Arc<SymmetryGroup>> {
    SymmetryGroup::new(matrix, caps)
}

impl SymmetryGroup {
    pub fn new(matrix: &ExponentMatrix, caps: &Caps) -> Result<Arc<Self>> {
        let det = matrix.abs_det();
        let d = match det.to_u64() {
            Some(d) if d <= caps.group_order && d <= u32::MAX as u64 => d,
            _ => return Err(Error::too_large("group order", det, caps.group_order)),
        };
        let n = matrix.n();
        let snf = smith_normal_form(&matrix.to_int_matrix())?;
        let d_big = BigInt::from(d);

        let mut factors = Vec::new();
        let mut generators = Vec::new();
        for (i, di) in snf.diagonal().iter().enumerate() {
            let di = di.to_u64().expect("invariant factor divides d");
            if di == 1 {
                continue;
            }
            let scale = BigInt::from(d / di);
            let k = (0..n)
                .map(|j| {
                    (&snf.v[(j, i)] * &scale)
                        .mod_floor(&d_big)
                        .to_u64()
                        .expect("reduced mod d")
                })
                .collect();
            factors.push(di);
            generators.push(k);
        }
        assert_eq!(factors.iter().product::<u64>(), d, "Π dᵢ = |det E|");

        let d2 = (d as u128) * (d as u128);
        let e_mod_d2 = matrix
            .rows()
            .iter()
            .flatten()
            .map(|&e| e as u128 % d2)
            .collect();

        // Enumerate Σ cᵢgᵢ in mixed-radix order of c.
        let order = d as usize;
        let mut raw = vec![0u64; order * n];
        let mut c = vec![0u64; factors.len()];
        let mut k = vec![0u64; n];
        for ci in 0..order {
            raw[ci * n..(ci + 1) * n].copy_from_slice(&k);
            // increment c, updating k incrementally
            for (pos, (&f, g)) in factors.iter().zip(&generators).enumerate() {
                c[pos] += 1;
                if c[pos] < f {
                    for (kj, gj) in k.iter_mut().zip(g) {
                        *kj = (*kj + gj) % d;
                    }
                    break;
                }
                // wrap: subtract (f-1)·g, i.e. add g once more (f·g ≡ 0)
                c[pos] = 0;
                for (kj, gj) in k.iter_mut().zip(g) {
                    *kj = (*kj + gj) % d;
                }
            }
        }

        let mut order_idx: Vec<u32> = (0..order as u32).collect();
        order_idx.sort_unstable_by(|&a, &b| {
            let (a, b) = (a as usize, b as usize);
            raw[a * n..(a + 1) * n].cmp(&raw[b * n..(b + 1) * n])
        });
        let mut elements = Vec::with_capacity(order * n);
        let mut index_of_coord = vec![0u32; order];
        for (sorted, &ci) in order_idx.iter().enumerate() {
            let ci = ci as usize;
            elements.extend_from_slice(&raw[ci * n..(ci + 1) * n]);
            index_of_coord[ci] = sorted as u32;
        }

        let group = SymmetryGroup {
            matrix: matrix.clone(),
            d,
            factors,
            generators,
            elements,
            coord_of: order_idx,
            index_of_coord,
            e_mod_d2,
        };
        for idx in 0..order {
            assert!(group.satisfies_symmetry(group.k(idx)), "E·k ≢ 0 mod d");
            if idx > 0 {
                assert!(group.k(idx - 1) < group.k(idx), "duplicate element");
            }
        }
        Ok(Arc::new(group))
    }

    pub fn matrix(&self) -> &ExponentMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    /// Common denominator `d = |det E|`, also the group order.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn order(&self) -> usize {
        self.d as usize
    }

    /// Nontrivial invariant factors, each dividing the next.
    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators
            .iter()
            .map(|k| self.index_of(k).expect("generator is an element"))
            .collect()
    }

    pub fn generators(self: &Arc<Self>) -> Vec<GroupElement> {
        self.generator_indices()
            .into_iter()
            .map(|i| self.element(i))
            .collect()
    }

    /// Residue vector `k` of element `idx`.
    pub fn k(&self, idx: usize) -> &[u64] {
        let n = self.n();
        &self.elements[idx * n..(idx + 1) * n]
    }

    pub fn element(self: &Arc<Self>, idx: usize) -> GroupElement {
        assert!(idx < self.order());
        GroupElement {
            group: Arc::clone(self),
            index: idx as u32,
        }
    }

    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    pub fn identity(self: &Arc<Self>) -> GroupElement {
        self.element(0)
    }

    /// Index of the element with residues `k`, if it is one.
    pub fn index_of(&self, k: &[u64]) -> Option<usize> {
        if k.len() != self.n() {
            return None;
        }
        let n = self.n();
        let (mut lo, mut hi) = (0, self.order());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.elements[mid * n..(mid + 1) * n].cmp(k) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// Looks up the element `(q₁,…,qₙ)` given as fractions `num/den`.
    pub fn element_from_fractions(self: &Arc<Self>, q: &[(i64, u64)]) -> Result<GroupElement> {
        let shown = || {
            let parts: Vec<String> = q.iter().map(|(a, b)| format!("{a}/{b}")).collect();
            format!("({})", parts.join(", "))
        };
        if q.len() != self.n() {
            return Err(Error::ElementNotInGroup(shown()));
        }
        let d = self.d as i128;
        let mut k = Vec::with_capacity(q.len());
        for &(num, den) in q {
            let scaled = num as i128 * d;
            if den == 0 || scaled % den as i128 != 0 {
                return Err(Error::ElementNotInGroup(shown()));
            }
            k.push((scaled / den as i128).rem_euclid(d) as u64);
        }
        self.index_of(&k)
            .map(|i| self.element(i))
            .ok_or_else(|| Error::ElementNotInGroup(shown()))
    }

    /// `E·k ≡ 0 (mod d)`, i.e. the diagonal map preserves every monomial.
    pub fn satisfies_symmetry(&self, k: &[u64]) -> bool {
        let d = self.d as u128;
        (0..self.n()).all(|i| self.row_times(i, k).is_multiple_of(d))
    }

    /// `(E·k)ᵢ mod d²`
    fn row_times(&self, i: usize, k: &[u64]) -> u128 {
        let n = self.n();
        let d2 = (self.d as u128) * (self.d as u128);
        self.e_mod_d2[i * n..(i + 1) * n]
            .iter()
            .zip(k)
            .fold(0u128, |acc, (&e, &kj)| (acc + e * kj as u128) % d2)
    }

    /// The integer vector `E·α mod d` for element `idx`.
    pub(crate) fn exponent_image(&self, idx: usize) -> Vec<u64> {
        let k = self.k(idx);
        let d = self.d as u128;
        (0..self.n())
            .map(|i| {
                let v = self.row_times(i, k);
                debug_assert_eq!(v % d, 0);
                (v / d) as u64
            })
            .collect()
    }

    fn coords(&self, idx: usize) -> impl Iterator<Item = u64> + '_ {
        let mut rest = self.coord_of[idx] as u64;
        self.factors.iter().map(move |&f| {
            let c = rest % f;
            rest /= f;
            c
        })
    }

    fn index_from_coords(&self, coords: impl Iterator<Item = u64>) -> usize {
        let mut ci = 0u64;
        let mut stride = 1u64;
        for (c, &f) in coords.zip(&self.factors) {
            ci += c * stride;
            stride *= f;
        }
        self.index_of_coord[ci as usize] as usize
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let coords = self
            .coords(a)
            .zip(self.coords(b))
            .zip(&self.factors)
            .map(|((x, y), &f)| (x + y) % f);
        self.index_from_coords(coords)
    }

    pub fn neg(&self, a: usize) -> usize {
        let coords = self.coords(a).zip(&self.factors).map(|(x, &f)| (f - x) % f);
        self.index_from_coords(coords)
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.coords(a)
            .zip(&self.factors)
            .map(|(x, &f)| f / x.gcd(&f))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// Coordinates on which element `idx` acts trivially.
    pub fn fixed_coordinates(&self, idx: usize) -> VarSet {
        VarSet::from_indices(
            self.k(idx)
                .iter()
                .enumerate()
                .filter(|(_, &x)| x == 0)
                .map(|(j, _)| j),
        )
    }

    pub fn to_json(self: &Arc<Self>) -> GroupJson {
        GroupJson {
            d: self.d,
            invariant_factors: self.factors.clone(),
            generators: self.generators.clone(),
        }
    }
}

/// `{d, invariant_factors, generators}` with generators as residue vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct GroupJson {
    pub d: u64,
    pub invariant_factors: Vec<u64>,
    pub generators: Vec<Vec<u64>>,
}

/// An element of a particular [`SymmetryGroup`].
#[derive(Clone)]
pub struct GroupElement {
    group: Arc<SymmetryGroup>,
    index: u32,
}

impl GroupElement {
    pub fn group(&self) -> &Arc<SymmetryGroup> {
        &self.group
    }

    pub fn index(&self) -> usize {
        self.index as usize
    }

    pub fn k(&self) -> &[u64] {
        self.group.k(self.index())
    }

    pub fn d(&self) -> u64 {
        self.group.d
    }

    pub fn is_identity(&self) -> bool {
        self.index == 0
    }

    /// Components `kⱼ/d` in lowest terms.
    pub fn fractions(&self) -> Vec<(u64, u64)> {
        let d = self.d();
        self.k()
            .iter()
            .map(|&k| {
                let g = k.gcd(&d);
                (k / g, d / g)
            })
            .collect()
    }

    pub fn order(&self) -> u64 {
        self.group.element_order(self.index())
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        same_group(&self.group, &other.group)?;
        Ok(self
            .group
            .element(self.group.add(self.index(), other.index())))
    }

    pub fn neg(&self) -> GroupElement {
        self.group.element(self.group.neg(self.index()))
    }
}

pub(crate) fn same_group(a: &Arc<SymmetryGroup>, b: &Arc<SymmetryGroup>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a.matrix == b.matrix {
        Ok(())
    } else {
        Err(Error::MismatchedOwners)
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group).is_ok() && self.index == other.index
    }
}

impl Eq for GroupElement {}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (j, (num, den)) in self.fractions().into_iter().enumerate() {
            if j > 0 {
                f.write_str(", ")?;
            }
            if num == 0 {
                f.write_str("0")?;
            } else {
                write!(f, "{num}/{den}")?;
            }
        }
        f.write_str(")")
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement{self}")
    }
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GroupElement", 2)?;
        st.serialize_field("k", self.k())?;
        st.serialize_field("d", &self.d())?;
        st.end()
    }
}
