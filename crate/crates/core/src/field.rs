//! Prime-field arithmetic and the dense linear algebra used by the
//! sharing scheme (rank, inverse, linear solve).
//!
//! Elements are plain `u64` residues wrapped in [`FieldElement`]; every
//! operation takes the [`FieldModulus`] explicitly so that one element type
//! serves the large synthesis field and the tiny enumeration fields alike.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The Mersenne prime 2^61 - 1, default field for synthesis.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too small (need p >= 3)")]
    ModulusTooSmall(u64),
    #[error("inverse of zero requested")]
    InverseOfZero,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("index {index} out of range for dimension {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("index set is not strictly increasing")]
    UnsortedIndices,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// A residue in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A prime modulus `p >= 3` that fits in a machine word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct FieldModulus(u64);

impl TryFrom<u64> for FieldModulus {
    type Error = FieldError;

    fn try_from(p: u64) -> Result<Self, Self::Error> {
        FieldModulus::new(p)
    }
}

impl From<FieldModulus> for u64 {
    fn from(m: FieldModulus) -> u64 {
        m.0
    }
}

impl Default for FieldModulus {
    fn default() -> Self {
        FieldModulus(MERSENNE_61)
    }
}

impl fmt::Display for FieldModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FieldModulus {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p < 3 {
            return Err(FieldError::ModulusTooSmall(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldModulus(p))
    }

    pub fn p(self) -> u64 {
        self.0
    }

    /// Reduces an arbitrary integer into the field.
    pub fn elem(self, v: u64) -> FieldElement {
        FieldElement(v % self.0)
    }

    pub fn elem_i64(self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.0 as i64) as u64)
    }

    pub fn add(self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(((a.0 as u128 + b.0 as u128) % self.0 as u128) as u64)
    }

    pub fn sub(self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(((a.0 as u128 + self.0 as u128 - b.0 as u128) % self.0 as u128) as u64)
    }

    pub fn neg(self, a: FieldElement) -> FieldElement {
        if a.0 == 0 {
            a
        } else {
            FieldElement(self.0 - a.0)
        }
    }

    pub fn mul(self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(((a.0 as u128 * b.0 as u128) % self.0 as u128) as u64)
    }

    pub fn pow(self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::InverseOfZero);
        }
        let (mut r0, mut r1) = (self.0 as i128, a.0 as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(FieldElement(t0.rem_euclid(self.0 as i128) as u64))
    }

    pub fn div(self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for
/// every 64-bit integer.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Dense row-major matrix over a prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<FieldElement>) -> Result<Self, FieldError> {
        if entries.len() != rows * cols {
            return Err(FieldError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![FieldElement::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    pub fn from_rows(rows: &[Vec<u64>], modulus: FieldModulus) -> Result<Self, FieldError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(FieldError::DimensionMismatch("ragged rows".into()));
            }
            entries.extend(row.iter().map(|&v| modulus.elem(v)));
        }
        Ok(Matrix { rows: rows.len(), cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|e| e.value()).collect()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, modulus: FieldModulus) -> Result<Matrix, FieldError> {
        if self.cols != other.rows {
            return Err(FieldError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = FieldElement::ZERO;
                for k in 0..self.cols {
                    acc = modulus.add(acc, modulus.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElement], modulus: FieldModulus) -> Result<Vec<FieldElement>, FieldError> {
        if v.len() != self.cols {
            return Err(FieldError::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(FieldElement::ZERO, |acc, (&a, &b)| modulus.add(acc, modulus.mul(a, b)))
            })
            .collect())
    }

    /// Selects the rows and columns named by two strictly increasing index sets.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Result<Matrix, FieldError> {
        check_indices(row_idx, self.rows)?;
        check_indices(col_idx, self.cols)?;
        let mut entries = Vec::with_capacity(row_idx.len() * col_idx.len());
        for &r in row_idx {
            for &c in col_idx {
                entries.push(self.get(r, c));
            }
        }
        Ok(Matrix { rows: row_idx.len(), cols: col_idx.len(), entries })
    }

    /// Reduces `self` in place to row echelon form and returns the pivot
    /// columns. Pivots are the first nonzero entry scanning columns left to
    /// right and rows top to bottom.
    fn echelon(&mut self, modulus: FieldModulus) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = modulus.inv(self.get(row, col)).expect("pivot is nonzero");
            for r in row + 1..self.rows {
                let f = self.get(r, col);
                if f.is_zero() {
                    continue;
                }
                let scale = modulus.mul(f, inv);
                for c in col..self.cols {
                    let v = modulus.sub(self.get(r, c), modulus.mul(scale, self.get(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self, modulus: FieldModulus) -> usize {
        self.clone().echelon(modulus).len()
    }

    /// Gauss-Jordan inverse of a square matrix.
    pub fn inverse(&self, modulus: FieldModulus) -> Result<Matrix, FieldError> {
        if self.rows != self.cols {
            return Err(FieldError::DimensionMismatch(format!(
                "inverse of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, FieldElement::ONE);
        }
        for col in 0..n {
            let p = (col..n).find(|&r| !aug.get(r, col).is_zero()).ok_or(FieldError::SingularMatrix)?;
            aug.swap_rows(col, p);
            let inv = modulus.inv(aug.get(col, col))?;
            for c in 0..2 * n {
                aug.set(col, c, modulus.mul(aug.get(col, c), inv));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = aug.get(r, col);
                if f.is_zero() {
                    continue;
                }
                for c in 0..2 * n {
                    let v = modulus.sub(aug.get(r, c), modulus.mul(f, aug.get(col, c)));
                    aug.set(r, c, v);
                }
            }
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        aug.submatrix(&rows, &cols)
    }

    /// Returns some `x` with `self * x = b`, or `None` when the system is
    /// inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &[FieldElement], modulus: FieldModulus) -> Result<Option<Vec<FieldElement>>, FieldError> {
        if b.len() != self.rows {
            return Err(FieldError::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let n = self.cols;
        let mut aug = Matrix::zeros(self.rows, n + 1);
        for (r, &br) in b.iter().enumerate() {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n, br);
        }
        let pivots = aug.echelon(modulus);
        if pivots.last() == Some(&n) {
            return Ok(None);
        }
        let mut x = vec![FieldElement::ZERO; n];
        for (row, &col) in pivots.iter().enumerate().rev() {
            let mut acc = aug.get(row, n);
            for (c, &xc) in x.iter().enumerate().skip(col + 1) {
                acc = modulus.sub(acc, modulus.mul(aug.get(row, c), xc));
            }
            x[col] = modulus.div(acc, aug.get(row, col))?;
        }
        Ok(Some(x))
    }
}

fn check_indices(idx: &[usize], len: usize) -> Result<(), FieldError> {
    for w in idx.windows(2) {
        if w[0] >= w[1] {
            return Err(FieldError::UnsortedIndices);
        }
    }
    if let Some(&last) = idx.last() {
        if last >= len {
            return Err(FieldError::IndexOutOfRange { index: last, len });
        }
    }
    Ok(())
}
