//! Dense exact matrices and their determinants.
//!
//! Storage is 0-based and row-major. Formulas quoted with 1-based indices
//! `(i, j)` map to storage position `(i - 1, j - 1)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{rat_to_string, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::input("matrix dimensions must be positive"));
        }
        if entries.len() != rows * cols {
            return Err(Error::input(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    /// Builds a matrix from a 0-based entry function.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Rat::one() } else { Rat::zero() })
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

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Rat::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                acc += a * other.get(k, j);
            }
            acc
        }))
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|x| x.is_integer())
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    /// Exact determinant. Integer matrices go through fraction-free
    /// elimination, everything else through rational Gaussian elimination.
    pub fn determinant(&self) -> Result<Rat> {
        if !self.is_square() {
            return Err(Error::input(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.is_integral() {
            let rows = (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self.get(i, j).to_integer()).collect())
                .collect();
            Ok(Rat::from_integer(bareiss_determinant(rows)))
        } else {
            Ok(gaussian_determinant(self))
        }
    }
}

impl Serialize for ExactMatrix {
    /// Row-major nested arrays of decimal strings.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| rat_to_string(self.get(i, j))).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

/// Bareiss fraction-free determinant of a square integer matrix.
///
/// Every division in the update step is exact, so all intermediates stay
/// integers and are bounded by minors of the input.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (q, r) = t.div_rem(&prev);
                debug_assert!(r.is_zero(), "inexact division in fraction-free elimination");
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

fn gaussian_determinant(a: &ExactMatrix) -> Rat {
    let n = a.rows;
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j).clone()).collect())
        .collect();
    let mut det = Rat::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Rat::zero();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = &m[i][k] / &pivot;
            for j in k + 1..n {
                let t = &factor * &m[k][j];
                m[i][j] -= t;
            }
            m[i][k] = Rat::zero();
        }
    }
    det
}

/// Exact solve of an (possibly overdetermined, possibly rank-deficient) system
/// `A x = b` over the rationals. Returns one solution (free variables set to
/// zero) or `None` when the system is inconsistent.
pub fn solve_consistent(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for j in c..=cols {
            m[r][j] = &m[r][j] / &pivot;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..=cols {
                    let t = &factor * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}
