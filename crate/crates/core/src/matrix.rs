//! Dense exact-rational matrices: lower-triangular windows of infinite arrays
//! and rectangular windows (production matrices, shifted arrays).

use std::fmt::Write as _;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fps::{fmt_rational, parse_rational, rat, Rational};

/// The leading `M x M` window of an infinite lower-triangular matrix.
/// Row `n` stores the `n + 1` entries `d_{n,0} ..= d_{n,n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerTriMatrix {
    rows: Vec<Vec<Rational>>,
}

impl LowerTriMatrix {
    /// Validates that row `n` has exactly `n + 1` entries.
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        for (n, r) in rows.iter().enumerate() {
            if r.len() != n + 1 {
                return Err(Error::MatrixFormat(format!(
                    "row {n} has {} entries, expected {}",
                    r.len(),
                    n + 1
                )));
            }
        }
        Ok(LowerTriMatrix { rows })
    }

    pub fn from_fn(size: usize, mut entry: impl FnMut(usize, usize) -> Rational) -> Self {
        LowerTriMatrix {
            rows: (0..size)
                .map(|n| (0..=n).map(|k| entry(n, k)).collect())
                .collect(),
        }
    }

    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, |n, k| if n == k { rat(1) } else { Rational::zero() })
    }

    /// Accepts rows given either as the lower triangle or padded to any width
    /// with zeros above the diagonal.
    pub fn from_rows_padded(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let mut out = Vec::with_capacity(rows.len());
        for (n, mut r) in rows.into_iter().enumerate() {
            if r.len() < n + 1 {
                return Err(Error::MatrixFormat(format!(
                    "row {n} has {} entries, expected at least {}",
                    r.len(),
                    n + 1
                )));
            }
            if let Some(k) = r[n + 1..].iter().position(|x| !x.is_zero()) {
                return Err(Error::MatrixFormat(format!(
                    "entry ({n}, {}) lies above the diagonal but is nonzero",
                    n + 1 + k
                )));
            }
            r.truncate(n + 1);
            out.push(r);
        }
        Ok(LowerTriMatrix { rows: out })
    }

    /// Integer rows, each either triangular or square-padded with zeros.
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows_padded(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> &[Rational] {
        &self.rows[n]
    }

    /// Entry `(n, k)`; zero above the diagonal. Panics when `n` is outside the window.
    pub fn get(&self, n: usize, k: usize) -> Rational {
        if k > n {
            Rational::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    pub fn entry(&self, n: usize, k: usize) -> Option<&Rational> {
        self.rows.get(n).and_then(|r| r.get(k))
    }

    pub fn column(&self, k: usize) -> Vec<Rational> {
        (0..self.size()).map(|n| self.get(n, k)).collect()
    }

    pub fn truncate(&self, size: usize) -> Self {
        LowerTriMatrix {
            rows: self.rows.iter().take(size).cloned().collect(),
        }
    }

    /// Product on the common window.
    pub fn mul(&self, other: &LowerTriMatrix) -> LowerTriMatrix {
        let m = self.size().min(other.size());
        LowerTriMatrix::from_fn(m, |n, k| {
            let mut acc = Rational::zero();
            for j in k..=n {
                let a = &self.rows[n][j];
                if a.is_zero() {
                    continue;
                }
                let b = &other.rows[j][k];
                if !b.is_zero() {
                    acc += a * b;
                }
            }
            acc
        })
    }

    /// Matrix-vector product `D u` on the window (`u` is padded with zeros).
    pub fn apply(&self, u: &[Rational]) -> Vec<Rational> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(u.iter())
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// `[1] (+) self`: a new leading row and column holding the identity entry.
    pub fn direct_sum_one(&self) -> LowerTriMatrix {
        LowerTriMatrix::from_fn(self.size() + 1, |n, k| match (n, k) {
            (0, 0) => rat(1),
            (_, 0) => Rational::zero(),
            _ => self.rows[n - 1][k - 1].clone(),
        })
    }

    /// The `rows x cols` rectangle starting at row `skip` (columns past the
    /// diagonal are zero).
    pub fn shifted_window(&self, skip: usize, rows: usize, cols: usize) -> DenseMatrix {
        DenseMatrix::from_fn(rows, cols, |i, j| self.get(i + skip, j))
    }

    /// Square window as a dense matrix.
    pub fn to_dense(&self) -> DenseMatrix {
        let m = self.size();
        DenseMatrix::from_fn(m, m, |i, j| self.get(i, j))
    }

    /// First cell (row-major) where the two windows disagree, comparing the
    /// common leading window.
    pub fn first_difference(&self, other: &LowerTriMatrix) -> Option<(usize, usize)> {
        let m = self.size().min(other.size());
        for n in 0..m {
            for k in 0..=n {
                if self.rows[n][k] != other.rows[n][k] {
                    return Some((n, k));
                }
            }
        }
        None
    }

    /// One row per line, square-padded, entries separated by single spaces.
    pub fn to_text(&self) -> String {
        let m = self.size();
        let mut s = String::new();
        for n in 0..m {
            let line: Vec<String> = (0..m).map(|k| fmt_rational(&self.get(n, k))).collect();
            writeln!(s, "{}", line.join(" ")).unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let rows = parse_text_rows(text)?;
        Self::from_rows_padded(rows)
    }
}

fn parse_text_rows(text: &str) -> Result<Vec<Vec<Rational>>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .enumerate()
        .map(|(n, line)| {
            line.split_whitespace()
                .map(|tok| {
                    parse_rational(tok).ok_or_else(|| {
                        Error::MatrixFormat(format!("row {n}: bad entry {tok:?}"))
                    })
                })
                .collect()
        })
        .collect()
}

/// A rectangular exact-rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: Vec<Vec<Rational>>,
    cols: usize,
}

impl DenseMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut entry: impl FnMut(usize, usize) -> Rational) -> Self {
        DenseMatrix {
            rows: (0..rows)
                .map(|i| (0..cols).map(|j| entry(i, j)).collect())
                .collect(),
            cols,
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::MatrixFormat("ragged rows".into()));
        }
        Ok(Self::from_fn(rows.len(), cols, |i, j| rat(rows[i][j])))
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.nrows() {
            return Err(Error::MatrixFormat(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.cols,
                other.nrows(),
                other.cols
            )));
        }
        Ok(DenseMatrix::from_fn(self.nrows(), other.cols, |i, j| {
            let mut acc = Rational::zero();
            for (k, a) in self.rows[i].iter().enumerate() {
                if !a.is_zero() {
                    let b = &other.rows[k][j];
                    if !b.is_zero() {
                        acc += a * b;
                    }
                }
            }
            acc
        }))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(fmt_rational).collect();
            writeln!(s, "{}", line.join(" ")).unwrap();
        }
        s
    }
}

/// On-disk matrix record: stride, precision and rows of rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub ell: usize,
    pub precision: usize,
    pub rows: Vec<Vec<String>>,
}

impl MatrixFile {
    pub fn from_lower(m: &LowerTriMatrix, ell: usize, precision: usize) -> Self {
        MatrixFile {
            ell,
            precision,
            rows: m
                .rows()
                .iter()
                .map(|r| r.iter().map(fmt_rational).collect())
                .collect(),
        }
    }

    pub fn from_dense(m: &DenseMatrix, ell: usize, precision: usize) -> Self {
        MatrixFile {
            ell,
            precision,
            rows: m
                .rows()
                .iter()
                .map(|r| r.iter().map(fmt_rational).collect())
                .collect(),
        }
    }

    pub fn to_lower(&self) -> Result<LowerTriMatrix> {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(n, r)| {
                r.iter()
                    .map(|s| {
                        parse_rational(s).ok_or_else(|| {
                            Error::MatrixFormat(format!("row {n}: bad entry {s:?}"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        LowerTriMatrix::from_rows_padded(rows)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrix records always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MatrixFormat(e.to_string()))
    }
}

/// Reads a matrix from JSON (detected by a leading `{`) or whitespace text.
/// Returns the matrix and the stride recorded in the file, if any.
pub fn read_matrix(text: &str) -> Result<(LowerTriMatrix, Option<usize>)> {
    if text.trim_start().starts_with('{') {
        let f = MatrixFile::from_json(text)?;
        Ok((f.to_lower()?, Some(f.ell)))
    } else {
        Ok((LowerTriMatrix::from_text(text)?, None))
    }
}
