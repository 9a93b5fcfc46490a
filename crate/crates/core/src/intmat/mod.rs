//! Exact integer linear algebra over exponent matrices, plus the polynomial
//! text format.

mod poly;
mod smith;

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use poly::{parse_polynomial, InvertiblePolynomial};
pub use smith::{smith_normal_form, SmithDecomposition};

/// Largest number of variables; subsets of variables are `u64` bitmasks.
pub const MAX_VARIABLES: usize = 64;

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidMatrix("rows of unequal length".into()));
        }
        let data = rows.iter().flatten().cloned().map(Into::into).collect();
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn determinant(&self) -> BigInt {
        determinant(self)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += factor * row[src]`
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * factor;
            self[(dst, j)] += v;
        }
    }

    /// `col[dst] += factor * col[src]`
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * factor;
            self[(i, dst)] += v;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Every intermediate division is exact, so no rationals are needed.
pub fn determinant(m: &IntMatrix) -> BigInt {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.nrows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    let det = a[(n - 1, n - 1)].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// A set of variable indices (0-based), stored as a bitmask.
///
/// Displays and serializes 1-based, matching the usual `x1..xn` names.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet(u64);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VarSet(bits)
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VARIABLES);
        if n == 64 {
            VarSet(u64::MAX)
        } else {
            VarSet((1u64 << n) - 1)
        }
    }

    /// Builds a set from 0-based indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        VarSet(indices.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: VarSet) -> VarSet {
        VarSet(self.0 & other.0)
    }

    /// Complement within `{0..n}`.
    pub fn complement(self, n: usize) -> VarSet {
        VarSet(!self.0 & VarSet::full(n).0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    /// All subsets of `{0..n}`, in increasing bitmask order.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = VarSet> {
        assert!(n < 64, "subset enumeration limited to 63 variables");
        (0..1u64 << n).map(VarSet)
    }

    /// All subsets of `self`, including the empty set.
    pub fn subsets(self) -> impl Iterator<Item = VarSet> {
        // Standard submask walk, emitting `self` first and the empty set last.
        let full = self.0;
        let mut next = Some(full);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 {
                None
            } else {
                Some((cur - 1) & full)
            };
            Some(VarSet(cur))
        })
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (pos, i) in self.iter().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

impl Serialize for VarSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter().map(|i| i + 1))
    }
}

impl<'de> Deserialize<'de> for VarSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<usize>::deserialize(d)?;
        if raw.iter().any(|&i| i == 0 || i > MAX_VARIABLES) {
            return Err(serde::de::Error::custom("variable index out of range"));
        }
        Ok(VarSet::from_indices(raw.into_iter().map(|i| i - 1)))
    }
}

/// Exponent matrix `E` of an invertible polynomial: row `i` lists the
/// exponents of monomial `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentMatrix {
    rows: Vec<Vec<u64>>,
    det: BigInt,
}

/// `{"n": .., "E": [[..], ..]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    #[serde(rename = "E")]
    pub entries: Vec<Vec<u64>>,
}

impl ExponentMatrix {
    /// Validates and wraps a square matrix of exponents.
    pub fn new(rows: Vec<Vec<u64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidMatrix("empty matrix".into()));
        }
        if n > MAX_VARIABLES {
            return Err(Error::InvalidMatrix(format!(
                "{n} variables exceeds the limit of {MAX_VARIABLES}"
            )));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare {
                monomials: n,
                variables: bad.len(),
            });
        }
        for (i, r) in rows.iter().enumerate() {
            if rows[..i].contains(r) {
                return Err(Error::DuplicateMonomial(format!("row {}", i + 1)));
            }
        }
        let det = determinant(&IntMatrix::from_rows(&rows)?);
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(ExponentMatrix { rows, det })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.rows[i][j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// Signed determinant; may be negative depending on monomial order.
    pub fn det(&self) -> &BigInt {
        &self.det
    }

    /// `|det E|`, the order of the symmetry group.
    pub fn abs_det(&self) -> BigInt {
        self.det.abs()
    }

    pub fn transpose(&self) -> ExponentMatrix {
        let n = self.n();
        let rows = (0..n)
            .map(|j| (0..n).map(|i| self.rows[i][j]).collect())
            .collect();
        let det = self.det.clone();
        ExponentMatrix { rows, det }
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.rows).expect("square by construction")
    }

    /// The submatrix on the given rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let picked: Vec<Vec<u64>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.rows[i][j]).collect())
            .collect();
        let mut m = IntMatrix::from_rows(&picked).expect("rectangular");
        if rows.is_empty() {
            m.cols = cols.len();
        }
        m
    }

    /// Rows (monomials) whose support lies inside `vars`, i.e. the monomials
    /// that survive on the coordinate subspace spanned by `vars`.
    pub fn rows_supported_in(&self, vars: VarSet) -> Vec<usize> {
        (0..self.n())
            .filter(|&i| {
                self.rows[i]
                    .iter()
                    .enumerate()
                    .all(|(j, &e)| e == 0 || vars.contains(j))
            })
            .collect()
    }

    /// Whether exactly `|vars|` monomials are supported in `vars`.
    pub fn is_block_compatible(&self, vars: VarSet) -> bool {
        self.rows_supported_in(vars).len() == vars.len()
    }

    /// Solves `E·w = (1,…,1)` exactly.
    pub fn weights(&self) -> WeightVector {
        let n = self.n();
        let mut aug: Vec<Vec<BigRational>> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&e| BigRational::from_integer(e.into()))
                    .chain(std::iter::once(BigRational::one()))
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&i| !aug[i][col].is_zero())
                .expect("nonsingular matrix has a pivot in every column");
            aug.swap(col, pivot);
            let inv = aug[col][col].recip();
            for v in aug[col].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = aug[col].clone();
            for (i, row) in aug.iter_mut().enumerate() {
                if i == col || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= &factor * p;
                }
            }
        }
        let w = aug.into_iter().map(|mut r| r.pop().unwrap()).collect();
        WeightVector { w }
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            n: self.n(),
            entries: self.rows.clone(),
        }
    }

    pub fn from_json(json: MatrixJson) -> Result<Self> {
        if json.entries.len() != json.n {
            return Err(Error::InvalidMatrix(format!(
                "n = {} but {} rows given",
                json.n,
                json.entries.len()
            )));
        }
        ExponentMatrix::new(json.entries)
    }
}

impl fmt::Display for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r:?}")?;
        }
        f.write_str("]")
    }
}

/// Quasihomogeneous weights: the unique rational solution of `E·w = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    pub w: Vec<BigRational>,
}

impl WeightVector {
    pub fn all_positive(&self) -> bool {
        self.w.iter().all(|x| x.is_positive())
    }

    /// Checks `E·w = 1` componentwise.
    pub fn solves(&self, e: &ExponentMatrix) -> bool {
        e.rows().iter().all(|r| {
            let s: BigRational = r
                .iter()
                .zip(&self.w)
                .map(|(&a, w)| w * BigRational::from_integer(a.into()))
                .sum();
            s.is_one()
        })
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.w.iter().map(ToString::to_string).collect()
    }
}
