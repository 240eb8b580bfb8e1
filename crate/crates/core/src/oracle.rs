//! Formula-free cross-checks: sequences are read off matrix entries by exact
//! triangular solves, and matrices are rebuilt from seed rows by the
//! recurrences.

use num_integer::Integer;
use num_traits::Zero;

use crate::check::Verification;
use crate::error::{Error, Result};
use crate::fps::{Rational, Series};
use crate::matrix::LowerTriMatrix;
use crate::multi_almost::{check_recurrences, MultiAlmostSpec, SequenceChar};

/// Recurrence family governing a column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    A,
    /// `Z_m`, `1 <= m <= l`.
    Z(usize),
    W,
}

/// One equation `d[target] = sum_{j <= p} x_j d[row, base + l j]` of a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub target: (usize, usize),
    pub row: usize,
    pub base: usize,
    pub unknowns: usize,
}

/// The stride-`l` recurrence families and the equations used to solve them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceSystem {
    pub ell: usize,
    pub terms: usize,
}

impl RecurrenceSystem {
    pub fn new(ell: usize, terms: usize) -> Self {
        RecurrenceSystem { ell, terms }
    }

    pub fn families(&self) -> Vec<Family> {
        let mut v = vec![Family::A];
        v.extend((1..=self.ell).map(Family::Z));
        v.push(Family::W);
        v
    }

    /// Family whose recurrence produces column `k`.
    pub fn family(&self, k: usize) -> Family {
        match k {
            0 => Family::W,
            _ if k <= self.ell => Family::Z(k),
            _ => Family::A,
        }
    }

    /// First column referenced by the family, and the column solved for.
    fn columns(&self, family: Family) -> (usize, usize) {
        let ell = self.ell;
        match family {
            Family::A => (1, ell + 1),
            Family::Z(m) if m < ell => (m, m),
            Family::Z(_) => (0, ell),
            Family::W => (0, 0),
        }
    }

    /// Equation `p`: the first `p + 1` unknowns, with the last one multiplied
    /// by a diagonal entry.
    pub fn equation(&self, family: Family, p: usize) -> Equation {
        let (base, target_col) = self.columns(family);
        let row = base + self.ell * p;
        Equation {
            target: (row + self.ell, target_col),
            row,
            base,
            unknowns: p + 1,
        }
    }

    /// Rows needed so that every equation lies in the matrix.
    pub fn rows_needed(&self) -> usize {
        if self.terms == 0 {
            return 0;
        }
        self.families()
            .into_iter()
            .map(|f| self.equation(f, self.terms - 1).target.0 + 1)
            .max()
            .unwrap_or(0)
    }
}

/// Largest number of terms per sequence determined by `rows` rows.
pub fn default_terms(ell: usize, rows: usize) -> usize {
    let mut j = (rows / ell).saturating_sub(1);
    while j > 0 && RecurrenceSystem::new(ell, j).rows_needed() > rows {
        j -= 1;
    }
    j
}

/// Rejects matrices whose zero pattern or diagonal is not that of a
/// multiple almost-Riordan array with stride `ell`.
pub fn check_stride_pattern(d: &LowerTriMatrix, ell: usize) -> Result<()> {
    for n in 0..d.size() {
        if d.get(n, n).is_zero() {
            return Err(Error::SingularSystem(format!("zero diagonal entry at ({n}, {n})")));
        }
        for k in 0..n {
            let on_pattern = if k == 0 { n % ell == 0 } else { (n - k) % ell == 0 };
            if !on_pattern && !d.get(n, k).is_zero() {
                return Err(Error::SingularSystem(format!(
                    "nonzero entry at ({n}, {k}) breaks the stride-{ell} pattern"
                )));
            }
        }
    }
    Ok(())
}

fn series_from_terms(terms: &[Rational], ell: usize) -> Series {
    let len = ell * terms.len().saturating_sub(1) + 1;
    let mut c = vec![Rational::zero(); len];
    for (j, x) in terms.iter().enumerate() {
        c[ell * j] = x.clone();
    }
    Series::new(c)
}

fn solve_family(d: &LowerTriMatrix, sys: &RecurrenceSystem, family: Family) -> Vec<Rational> {
    let mut x: Vec<Rational> = Vec::with_capacity(sys.terms);
    for p in 0..sys.terms {
        let eq = sys.equation(family, p);
        let mut rhs = d.get(eq.target.0, eq.target.1);
        for (j, xj) in x.iter().enumerate() {
            rhs -= xj * d.get(eq.row, eq.base + sys.ell * j);
        }
        // diagonal entry, nonzero after check_stride_pattern
        x.push(rhs / d.get(eq.row, eq.base + sys.ell * p));
    }
    x
}

/// Solves for the first `terms` coefficients (in `t^l`) of `A, Z_1..Z_l, W`,
/// then checks every recurrence equation they determine.
pub fn extract_sequences(d: &LowerTriMatrix, ell: usize, terms: usize) -> Result<SequenceChar> {
    if ell == 0 || terms == 0 {
        return Err(Error::InvalidSpec("stride and term count must be positive".into()));
    }
    let sys = RecurrenceSystem::new(ell, terms);
    let needed = sys.rows_needed();
    if d.size() < needed {
        return Err(Error::Precision {
            needed: needed - 1,
            available: d.size().saturating_sub(1),
        });
    }
    check_stride_pattern(d, ell)?;
    let solve = |f| series_from_terms(&solve_family(d, &sys, f), ell);
    let seq = SequenceChar {
        ell,
        a: solve(Family::A),
        z: (1..=ell).map(|m| solve(Family::Z(m))).collect(),
        w: solve(Family::W),
    };
    let report = check_recurrences(d, &seq);
    if let Some(f) = report.first_failure() {
        return Err(Error::Inconsistent { row: f.row, col: f.col });
    }
    Ok(seq)
}

/// [`extract_sequences`] with the largest determinable number of terms.
pub fn extract_sequences_default(d: &LowerTriMatrix, ell: usize) -> Result<SequenceChar> {
    extract_sequences(d, ell, default_terms(ell, d.size()).max(1))
}

/// Rows `0..l` of `(b|g; f)`: row 0 is `(b_0)`, row `m` has
/// `g_0 f_{1,1} ... f_{m-1,1}` on the diagonal and zeros elsewhere.
pub fn seed_rows(spec: &MultiAlmostSpec) -> Vec<Vec<Rational>> {
    let ell = spec.ell();
    let mut rows = vec![vec![spec.b().coeff(0).clone()]];
    let mut lead = spec.g().coeff(0).clone();
    for m in 1..ell {
        if m > 1 {
            lead *= spec.f()[m - 2].coeff(1);
        }
        let mut row = vec![Rational::zero(); m + 1];
        row[m] = lead.clone();
        rows.push(row);
    }
    rows
}

/// Advances seed rows `0..l` to `rows` rows: row `n + l` from row `n`.
pub fn reconstruct(seed: &[Vec<Rational>], seq: &SequenceChar, rows: usize) -> Result<LowerTriMatrix> {
    let ell = seq.ell;
    if seed.len() != ell {
        return Err(Error::MatrixFormat(format!(
            "expected {ell} seed rows, found {}",
            seed.len()
        )));
    }
    let mut d: Vec<Vec<Rational>> = Vec::with_capacity(rows);
    for (i, r) in seed.iter().enumerate().take(rows) {
        if r.len() != i + 1 {
            return Err(Error::MatrixFormat(format!(
                "seed row {i} has {} entries, expected {}",
                r.len(),
                i + 1
            )));
        }
        d.push(r.clone());
    }
    for n in ell..rows {
        let src = &d[n - ell];
        let mut row = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let (series, base) = if k > ell {
                (&seq.a, k - ell)
            } else if k == ell {
                (&seq.z[ell - 1], 0)
            } else if k >= 1 {
                (&seq.z[k - 1], k)
            } else {
                (&seq.w, 0)
            };
            let mut acc = Rational::zero();
            let mut j = 0;
            while base + ell * j < src.len() {
                let cell = &src[base + ell * j];
                if !cell.is_zero() {
                    let term = series.get(ell * j).ok_or(Error::InsufficientSequence {
                        row: n,
                        col: k,
                        term: j,
                    })?;
                    acc += term * cell;
                }
                j += 1;
            }
            row.push(acc);
        }
        d.push(row);
    }
    LowerTriMatrix::new(d)
}

/// Stride guess: the gcd of the row offsets `n - k` of nonzero entries below
/// the diagonal (and of `n` for column 0), refined by trying its divisors
/// from the largest down until [`extract_sequences_default`] succeeds.
pub fn detect_stride(d: &LowerTriMatrix) -> Option<usize> {
    let mut period = 0usize;
    for n in 0..d.size() {
        for k in 0..n {
            if !d.get(n, k).is_zero() {
                period = period.gcd(&if k == 0 { n } else { n - k });
            }
        }
    }
    if period == 0 {
        return None;
    }
    (1..=period)
        .rev()
        .filter(|l| period.is_multiple_of(*l))
        .find(|&l| default_terms(l, d.size()) > 0 && extract_sequences_default(d, l).is_ok())
}

/// Checks user-supplied cellwise rules: `rule(n, k)` returns the terms
/// `(row, col, coefficient)` whose sum must equal `d_{n,k}`, or `None` when the
/// rule does not apply to that cell or references a cell outside the window.
pub fn check_cellwise<F>(d: &LowerTriMatrix, rule: F) -> Verification
where
    F: Fn(usize, usize) -> Option<Vec<(usize, usize, Rational)>>,
{
    let mut report = Verification::default();
    for n in 0..d.size() {
        for k in 0..=n {
            let Some(terms) = rule(n, k) else { continue };
            if terms.iter().any(|&(r, _, _)| r >= d.size()) {
                continue;
            }
            let found = terms
                .iter()
                .fold(Rational::zero(), |acc, (r, c, x)| acc + x * d.get(*r, *c));
            report.record(n, k, &d.get(n, k), found);
        }
    }
    report
}
