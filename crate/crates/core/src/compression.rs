//! Compression of multiple almost-Riordan arrays:
//! `dhat_{n,k} = d_{l n - (l-1) k, k}`.
//!
//! The compression of `(b|g; f_1..f_l)` is the array with column 0 `bhat`
//! and column `k = m + l i` (`1 <= m <= l`) equal to
//! `t ghat fhat_1 ... fhat_{m-1} (fhat_1 ... fhat_l)^i`, where
//! `bhat(t^l) = b`, `ghat(t^l) = g` and `fhat_j(t^l) = t^{l-1} f_j`.

use std::fmt;

use num_traits::{One, Zero};

use crate::check::Verification;
use crate::classic::{matrix_from_columns, require_rows};
use crate::error::{Error, Result};
use crate::folded::{fold, product, times_s, Multipliers};
use crate::fps::{Rational, Series};
use crate::matrix::LowerTriMatrix;
use crate::multi::column_chain;
use crate::multi_almost::{MultiAlmostSpec, SequenceChar};

#[derive(Clone, Debug, PartialEq)]
pub struct CompressedMatrix {
    pub rows: LowerTriMatrix,
    pub ell: usize,
}

/// Source rows needed for `rows` compressed rows.
pub fn source_rows_needed(ell: usize, rows: usize) -> usize {
    if rows == 0 {
        0
    } else {
        ell * (rows - 1) + 1
    }
}

pub fn compress_matrix(d: &LowerTriMatrix, ell: usize, rows: usize) -> Result<CompressedMatrix> {
    let needed = source_rows_needed(ell, rows);
    if d.size() < needed {
        return Err(Error::Precision {
            needed: needed.saturating_sub(1),
            available: d.size().saturating_sub(1),
        });
    }
    let m = LowerTriMatrix::from_fn(rows, |n, k| d.get(ell * n - (ell - 1) * k, k));
    Ok(CompressedMatrix { rows: m, ell })
}

/// The generating functions of a compressed array.
#[derive(Clone, Debug, PartialEq)]
pub struct HatSpec {
    pub ell: usize,
    pub b: Series,
    pub g: Series,
    pub f: Vec<Series>,
}

impl HatSpec {
    pub fn precision(&self) -> usize {
        self.f
            .iter()
            .map(Series::precision)
            .fold(self.b.precision().min(self.g.precision()), usize::min)
    }
}

impl fmt::Display for HatSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bhat = {}", self.b)?;
        writeln!(f, "ghat = {}", self.g)?;
        for (j, fj) in self.f.iter().enumerate() {
            writeln!(f, "fhat_{} = {}", j + 1, fj)?;
        }
        Ok(())
    }
}

pub fn hat_series(spec: &MultiAlmostSpec) -> Result<HatSpec> {
    let ell = spec.ell();
    Ok(HatSpec {
        ell,
        b: fold(spec.b(), ell, 0)?,
        g: fold(spec.g(), ell, 0)?,
        f: spec
            .f()
            .iter()
            .map(|fj| Ok(times_s(&fold(fj, ell, 1)?)))
            .collect::<Result<Vec<_>>>()?,
    })
}

pub fn build_compressed(hat: &HatSpec, rows: usize) -> Result<LowerTriMatrix> {
    require_rows(hat.precision(), rows)?;
    if rows == 0 {
        return LowerTriMatrix::new(Vec::new());
    }
    let n = rows - 1;
    let f: Vec<Series> = hat.f.iter().map(|x| x.truncate(n)).collect();
    let mut cols = vec![hat.b.truncate(n)];
    cols.extend(column_chain(times_s(&hat.g).truncate(n), &f, rows - 1));
    Ok(matrix_from_columns(&cols, rows))
}

/// One term `coef * dhat_{row, col}` of a compressed recurrence.
struct Term {
    row: usize,
    col: usize,
    seq_index: usize,
}

/// Cells referenced by the compressed recurrence for `dhat_{n,k}`, or `None`
/// when the cell is a seed (its source row precedes the first recurrence step).
fn compressed_terms(ell: usize, n: usize, k: usize, rows: usize) -> Option<Vec<Term>> {
    if ell * n < (ell - 1) * k + ell {
        return None;
    }
    // (row at j = 0, column at j = 0); rows advance by l-1, columns by l
    let (row0, col0): (isize, usize) = if k > ell {
        (n as isize - ell as isize, k - ell)
    } else if k == ell {
        (n as isize - ell as isize, 0)
    } else if k >= 1 {
        (n as isize - 1, k)
    } else {
        (n as isize - 1, 0)
    };
    if row0 < 0 {
        return None;
    }
    let mut terms = Vec::new();
    for j in 0.. {
        let row = row0 as usize + j * (ell - 1);
        let col = col0 + j * ell;
        if col > row {
            break;
        }
        if row >= rows {
            return None;
        }
        terms.push(Term {
            row,
            col,
            seq_index: j * ell,
        });
    }
    Some(terms)
}

/// Checks the compressed recurrences on every cell of `m` they determine:
/// `dhat_{n,k} = sum_j a_j dhat_{n-l+j(l-1), k+l(j-1)}` for `k > l`,
/// `dhat_{n,l} = sum_j z_{l,j} dhat_{n-l+j(l-1), jl}`,
/// `dhat_{n,m} = sum_j z_{m,j} dhat_{n-1+j(l-1), jl+m}` for `1 <= m < l`,
/// `dhat_{n,0} = sum_j w_j dhat_{n-1+j(l-1), jl}`.
pub fn check_compressed_recurrences(m: &LowerTriMatrix, seq: &SequenceChar) -> Verification {
    let ell = seq.ell;
    let mut report = Verification::default();
    for n in 0..m.size() {
        for k in 0..=n {
            let Some(terms) = compressed_terms(ell, n, k, m.size()) else {
                continue;
            };
            let series = if k > ell {
                &seq.a
            } else if k == ell {
                &seq.z[ell - 1]
            } else if k >= 1 {
                &seq.z[k - 1]
            } else {
                &seq.w
            };
            let mut acc = Rational::zero();
            let mut known = true;
            for t in &terms {
                let cell = m.get(t.row, t.col);
                if cell.is_zero() {
                    continue;
                }
                match series.get(t.seq_index) {
                    Some(c) => acc += c * &cell,
                    None => {
                        known = false;
                        break;
                    }
                }
            }
            if known {
                report.record(n, k, &m.get(n, k), acc);
            }
        }
    }
    report
}

pub fn compressed_recurrence_check(
    hat: &HatSpec,
    seq: &SequenceChar,
    rows: usize,
) -> Result<Verification> {
    Ok(check_compressed_recurrences(&build_compressed(hat, rows)?, seq))
}

/// Result of comparing both sides of one compressed identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: String,
    /// Index of the first coefficient where the two sides differ.
    pub first_mismatch: Option<usize>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.first_mismatch {
            None => write!(f, "{}: OK", self.name),
            Some(i) => write!(f, "{}: FAILED at coefficient {}", self.name, i),
        }
    }
}

fn compare(name: String, lhs: &Series, rhs: &Series, terms: usize) -> Result<IdentityReport> {
    let available = lhs.precision().min(rhs.precision()) + 1;
    if available < terms {
        return Err(Error::Precision {
            needed: terms - 1,
            available: available - 1,
        });
    }
    let first_mismatch = (0..terms).find(|&i| lhs.coeff(i) != rhs.coeff(i));
    Ok(IdentityReport {
        name,
        first_mismatch,
    })
}

/// The characterizing series of the compressed array, evaluated on the
/// compressed side. With `X = fhat_1 ... fhat_l / t^{l-1}` and the sequences
/// read as series in `x = t^l` (so `A(X^{1/l})` is `Ahat(X)`):
///
/// - `Ahat(X) = fhat_1 ... fhat_l / t^l`
/// - `Zhat_m(X) = (1 - g_0 f_{1,1} ... f_{m-1,1} t^{m-1} / (ghat fhat_1 ... fhat_{m-1})) / t`
/// - `Zhat_l(X) = fhat_l (ghat fhat_1 ... fhat_{l-1} - z t^{l-1} bhat) / (t^l ghat) + z`
/// - `What(X) = fhat_l (bhat (1 - w_0 t) - b_0) / (t^2 ghat) + w_0`
///
/// with `z = g_0 f_{1,1} ... f_{l-1,1} / b_0` and `w_0 = b_l / b_0` taken
/// from the array data. Returns the right-hand sides in the order `A, Z_1..Z_l, W`.
pub fn compressed_identity_rhs(hat: &HatSpec) -> Result<Vec<Series>> {
    let ell = hat.ell;
    let n = hat.precision();
    let b0 = hat.b.coeff(0).clone();
    let g0 = hat.g.coeff(0).clone();
    if hat.b.precision() < 1 {
        return Err(Error::Precision {
            needed: 1,
            available: hat.b.precision(),
        });
    }
    let w0 = hat.b.coeff(1) / &b0;
    let lead: Vec<Rational> = hat.f.iter().map(|f| f.coeff(1).clone()).collect();
    let prod_all = product(hat.f.iter(), n);
    let t = Series::var(n);

    let mut out = Vec::with_capacity(ell + 2);
    out.push(prod_all.shift(-(ell as i64))?);

    let mut c = g0.clone();
    let mut partial = Series::one(n);
    for m in 1..ell {
        if m > 1 {
            c *= &lead[m - 2];
            partial = &partial * &hat.f[m - 2];
        }
        // c t^{m-1} / (ghat fhat_1 ... fhat_{m-1})
        let ratio = Series::monomial(c.clone(), m - 1, n).div(&(&hat.g * &partial))?;
        out.push((&Series::one(ratio.precision()) - &ratio).div(&t)?);
    }

    let z = lead[..ell - 1].iter().fold(g0, |acc, x| acc * x) / &b0;
    let head = product(hat.f[..ell - 1].iter(), n);
    let inner = &(&hat.g * &head) - &Series::monomial(z.clone(), ell - 1, n).mul_truncated(&hat.b, n);
    let zl = (&hat.f[ell - 1] * &inner)
        .div(&Series::monomial(Rational::one(), ell, n).mul_truncated(&hat.g, n))?
        .add_constant(&z);
    out.push(zl);

    let one_minus = Series::from_rationals(&[Rational::one(), -w0.clone()], n);
    let numer = &hat.f[ell - 1] * &(&hat.b * &one_minus).add_constant(&-b0);
    let w = numer
        .div(&Series::monomial(Rational::one(), 2, n).mul_truncated(&hat.g, n))?
        .add_constant(&w0);
    out.push(w);
    Ok(out)
}

/// Verifies the compressed identities to `terms` coefficients: each sequence
/// (read in `x = t^l`) composed with `X = fhat_1 ... fhat_l / t^{l-1}` must
/// equal the corresponding right-hand side of [`compressed_identity_rhs`].
pub fn compressed_identity_check(
    hat: &HatSpec,
    seq: &SequenceChar,
    terms: usize,
) -> Result<Vec<IdentityReport>> {
    let ell = hat.ell;
    let m = Multipliers::new(
        hat.f
            .iter()
            .map(|f| f.shift(-1))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let x = &m.big_f;
    let rhs = compressed_identity_rhs(hat)?;
    let mut names = vec!["A".to_string()];
    names.extend((1..=ell).map(|i| format!("Z_{i}")));
    names.push("W".to_string());
    let mut lhs_series = vec![&seq.a];
    lhs_series.extend(seq.z.iter());
    lhs_series.push(&seq.w);
    names
        .into_iter()
        .zip(lhs_series)
        .zip(rhs)
        .map(|((name, s), r)| {
            let lhs = fold(s, ell, 0)?.compose(x)?;
            compare(name, &lhs, &r, terms)
        })
        .collect()
}
