//! Dense integer matrices and Smith normal form.
//!
//! Reduction is plain row/column elimination with the pivot chosen as the
//! smallest nonzero entry in absolute value. Entry growth is acceptable at
//! the sizes this crate targets (presentations up to a few dozen rows).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// A rectangular matrix over the integers. The 0x0 matrix is allowed.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(Error::RaggedMatrix {
                    row: i,
                    found: r.len(),
                    expected: ncols,
                });
            }
        }
        Ok(IntMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for literal matrices in tests and examples.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("literal rows must be rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn require_symmetric(&self) -> Result<()> {
        self.require_square()?;
        for i in 0..self.rows {
            for j in 0..i {
                if self[(i, j)] != self[(j, i)] {
                    return Err(Error::NotSymmetric { i, j });
                }
            }
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn neg(&self) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    /// Block-diagonal sum of the given matrices.
    pub fn block_diag(blocks: &[&IntMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zero(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Exact determinant by fraction-free elimination over the rationals.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigRational::from(self[(i, j)].clone()))
                    .collect()
            })
            .collect();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return BigInt::zero();
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            let pivot = m[col][col].clone();
            det *= &pivot;
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = &m[r][col] / &pivot;
                for c in col..n {
                    let t = &factor * &m[col][c];
                    m[r][c] -= t;
                }
            }
        }
        debug_assert!(det.is_integer());
        det.to_integer()
    }

    /// Smith normal form: unimodular `u`, `v` with `u * self * v = d`,
    /// `d` diagonal with a divisibility chain `d1 | d2 | ...`.
    pub fn smith_normal_form(&self) -> SnfResult {
        let mut calc = Reduction::new(self.clone());
        calc.diagonalize();
        calc.normalize_signs();
        calc.sort_diagonal();
        calc.enforce_chain();
        let rank = (0..self.rows.min(self.cols))
            .take_while(|&i| !calc.m[(i, i)].is_zero())
            .count();
        SnfResult {
            u: calc.u,
            v: calc.v,
            d: calc.m,
            rank,
        }
    }

    /// Diagonalization without the divisibility chain or reordering:
    /// `u * self * v = d` with `d` diagonal and nonnegative.
    ///
    /// Used where the generator system should stay as close to the input
    /// basis as possible (row operations are only applied when elimination
    /// genuinely requires them; a diagonal entry reached by column swaps
    /// alone keeps the original generator).
    pub fn diagonalize(&self) -> SnfResult {
        let mut calc = Reduction::new(self.clone());
        calc.diagonalize();
        calc.normalize_signs();
        let rank = (0..self.rows.min(self.cols))
            .take_while(|&i| !calc.m[(i, i)].is_zero())
            .count();
        SnfResult {
            u: calc.u,
            v: calc.v,
            d: calc.m,
            rank,
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Result of `smith_normal_form` / `diagonalize`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
    pub rank: usize,
}

impl SnfResult {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Diagonal entries that are neither 0 nor 1 (cyclic factor orders of
    /// the cokernel), plus the count of zero entries (free rank).
    pub fn cokernel(&self) -> (Vec<BigInt>, usize) {
        let n = self.d.rows().min(self.d.cols());
        let torsion = (0..n)
            .map(|i| self.d[(i, i)].clone())
            .filter(|d| !d.is_zero() && !d.is_one())
            .collect();
        // Every row beyond the diagonal rank is a free generator as well.
        let free = self.d.rows() - self.rank;
        (torsion, free)
    }
}

struct Reduction {
    m: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Reduction {
    fn new(m: IntMatrix) -> Self {
        let u = IntMatrix::identity(m.rows());
        let v = IntMatrix::identity(m.cols());
        Reduction { m, u, v }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.m.cols() {
            let (x, y) = (self.m[(a, j)].clone(), self.m[(b, j)].clone());
            self.m[(a, j)] = y;
            self.m[(b, j)] = x;
        }
        for j in 0..self.u.cols() {
            let (x, y) = (self.u[(a, j)].clone(), self.u[(b, j)].clone());
            self.u[(a, j)] = y;
            self.u[(b, j)] = x;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.m.rows() {
            let (x, y) = (self.m[(i, a)].clone(), self.m[(i, b)].clone());
            self.m[(i, a)] = y;
            self.m[(i, b)] = x;
        }
        for i in 0..self.v.rows() {
            let (x, y) = (self.v[(i, a)].clone(), self.v[(i, b)].clone());
            self.v[(i, a)] = y;
            self.v[(i, b)] = x;
        }
    }

    /// row[a] -= k * row[b]
    fn row_sub(&mut self, a: usize, b: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.m.cols() {
            let t = k * &self.m[(b, j)];
            self.m[(a, j)] -= t;
        }
        for j in 0..self.u.cols() {
            let t = k * &self.u[(b, j)];
            self.u[(a, j)] -= t;
        }
    }

    /// col[a] -= k * col[b]
    fn col_sub(&mut self, a: usize, b: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.m.rows() {
            let t = k * &self.m[(i, b)];
            self.m[(i, a)] -= t;
        }
        for i in 0..self.v.rows() {
            let t = k * &self.v[(i, b)];
            self.v[(i, a)] -= t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.m.cols() {
            let t = -self.m[(a, j)].clone();
            self.m[(a, j)] = t;
        }
        for j in 0..self.u.cols() {
            let t = -self.u[(a, j)].clone();
            self.u[(a, j)] = t;
        }
    }

    /// Smallest nonzero entry (by absolute value) of the trailing block,
    /// scanning row-major for determinism.
    fn pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.m.rows() {
            for j in k..self.m.cols() {
                let e = &self.m[(i, j)];
                if e.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.m[(bi, bj)].abs() <= e.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn diagonalize(&mut self) {
        let n = self.m.rows().min(self.m.cols());
        for k in 0..n {
            loop {
                let Some((pi, pj)) = self.pivot(k) else {
                    return;
                };
                self.swap_rows(k, pi);
                self.swap_cols(k, pj);
                let mut clean = true;
                for i in k + 1..self.m.rows() {
                    if !self.m[(i, k)].is_zero() {
                        let quot = div_round(&self.m[(i, k)], &self.m[(k, k)]);
                        self.row_sub(i, k, &quot);
                        if !self.m[(i, k)].is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in k + 1..self.m.cols() {
                    if !self.m[(k, j)].is_zero() {
                        let quot = div_round(&self.m[(k, j)], &self.m[(k, k)]);
                        self.col_sub(j, k, &quot);
                        if !self.m[(k, j)].is_zero() {
                            clean = false;
                        }
                    }
                }
                if clean {
                    break;
                }
            }
        }
    }

    fn normalize_signs(&mut self) {
        let n = self.m.rows().min(self.m.cols());
        for i in 0..n {
            if self.m[(i, i)].is_negative() {
                self.negate_row(i);
            }
        }
    }

    /// Move zero diagonal entries to the end (stable on nonzero entries).
    fn sort_diagonal(&mut self) {
        let n = self.m.rows().min(self.m.cols());
        let mut dst = 0;
        for i in 0..n {
            if !self.m[(i, i)].is_zero() {
                if i != dst {
                    self.swap_rows(dst, i);
                    self.swap_cols(dst, i);
                }
                dst += 1;
            }
        }
    }

    /// Repair the divisibility chain on the nonzero diagonal.
    fn enforce_chain(&mut self) {
        let n = self.m.rows().min(self.m.cols());
        let rank = (0..n)
            .take_while(|&i| !self.m[(i, i)].is_zero())
            .count();
        if rank < 2 {
            return;
        }
        loop {
            let mut fixed = true;
            for i in 0..rank - 1 {
                let a = self.m[(i, i)].clone();
                let b = self.m[(i + 1, i + 1)].clone();
                if (&b % &a).is_zero() {
                    continue;
                }
                fixed = false;
                // Fold the pair back into a 2x2 block and re-reduce it:
                // the pivot rule picks gcd(a, b) as the new leading entry.
                self.col_sub(i, i + 1, &BigInt::from(-1));
                loop {
                    let Some((pi, pj)) = self.pivot_in_pair(i) else {
                        break;
                    };
                    self.swap_rows(i, pi);
                    self.swap_cols(i, pj);
                    let mut clean = true;
                    let pk = self.m[(i, i)].clone();
                    if !self.m[(i + 1, i)].is_zero() {
                        let quot = div_round(&self.m[(i + 1, i)], &pk);
                        self.row_sub(i + 1, i, &quot);
                        if !self.m[(i + 1, i)].is_zero() {
                            clean = false;
                        }
                    }
                    if !self.m[(i, i + 1)].is_zero() {
                        let quot = div_round(&self.m[(i, i + 1)], &pk);
                        self.col_sub(i + 1, i, &quot);
                        if !self.m[(i, i + 1)].is_zero() {
                            clean = false;
                        }
                    }
                    if clean {
                        break;
                    }
                }
                if self.m[(i, i)].is_negative() {
                    self.negate_row(i);
                }
                if self.m[(i + 1, i + 1)].is_negative() {
                    self.negate_row(i + 1);
                }
            }
            if fixed {
                break;
            }
        }
    }

    fn pivot_in_pair(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..=k + 1 {
            for j in k..=k + 1 {
                let e = &self.m[(i, j)];
                if e.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.m[(bi, bj)].abs() <= e.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }
}

/// Round-to-nearest integer quotient, so remainders satisfy |r| <= |b|/2.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = num_integer::Integer::div_rem(a, b);
    if r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}
