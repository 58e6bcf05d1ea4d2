use std::fmt;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::MatrixError;

/// Dense row-major matrix of nonnegative arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigUint>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigUint>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::Empty);
        }
        if entries.len() != rows * cols {
            return Err(MatrixError::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows<R: AsRef<[u64]>>(rows: &[R]) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.as_ref().len() != cols {
                return Err(MatrixError::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.as_ref().len()
                )));
            }
            entries.extend(r.as_ref().iter().map(|&v| BigUint::from(v)));
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigUint::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigUint::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigUint {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigUint) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigUint] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.entries
    }

    pub(crate) fn require_square(&self) -> Result<usize, MatrixError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self^e` by binary exponentiation; `self^0` is the identity.
    pub fn pow(&self, mut e: u64) -> Result<IntMatrix, MatrixError> {
        let n = self.require_square()?;
        let mut acc = IntMatrix::identity(n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Sub-matrix on the given row and column index lists.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.get(r, c).clone());
            }
        }
        IntMatrix {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.entries.iter().all(|v| !v.is_zero())
    }

    pub fn support(&self) -> BoolMatrix {
        let mut b = BoolMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if !self.get(r, c).is_zero() {
                    b.set(r, c);
                }
            }
        }
        b
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}", self)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, v) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Boolean matrix; row `i` holds the out-neighbours of vertex `i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoolMatrix {
    rows: usize,
    cols: usize,
    data: Vec<FixedBitSet>,
}

impl BoolMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![FixedBitSet::with_capacity(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut b = Self::zeros(n, n);
        for i in 0..n {
            b.set(i, i);
        }
        b
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].contains(c)
    }

    pub fn set(&mut self, r: usize, c: usize) {
        self.data[r].insert(c);
    }

    pub fn row(&self, r: usize) -> &FixedBitSet {
        &self.data[r]
    }

    pub fn mul(&self, rhs: &BoolMatrix) -> BoolMatrix {
        debug_assert_eq!(self.cols, rhs.rows);
        let mut out = BoolMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in self.data[i].ones() {
                out.data[i].union_with(&rhs.data[k]);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> BoolMatrix {
        debug_assert_eq!(self.rows, self.cols);
        let mut acc = BoolMatrix::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_full(&self) -> bool {
        self.data.iter().all(|r| r.count_ones(..) == self.cols)
    }

    pub fn has_diagonal(&self) -> bool {
        (0..self.rows.min(self.cols)).any(|i| self.get(i, i))
    }

    /// Vertices reachable from `v` by walks of length at least one.
    pub fn reach_plus(&self, v: usize) -> FixedBitSet {
        let mut seen = FixedBitSet::with_capacity(self.cols);
        let mut stack: Vec<usize> = self.data[v].ones().collect();
        for &w in &stack {
            seen.insert(w);
        }
        while let Some(u) = stack.pop() {
            for w in self.data[u].ones() {
                if !seen.put(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    pub fn transpose(&self) -> BoolMatrix {
        let mut t = BoolMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.data[r].ones() {
                t.set(c, r);
            }
        }
        t
    }
}
