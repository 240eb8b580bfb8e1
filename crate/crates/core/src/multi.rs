//! Multiple Riordan arrays `(g; f_1, ..., f_l)`.
//!
//! Column `k` has generating function `g f_1^{e_1} ... f_l^{e_l}` with
//! `e_j = floor((k + l - j) / l)`, i.e. the columns are
//! `g, g f_1, g f_1 f_2, ..., g f_1 ... f_l, g f_1 ... f_l f_1, ...`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::check::Verification;
use crate::classic::{matrix_from_columns, require_rows, require_unit};
use crate::error::{Error, Result};
use crate::fps::{Rational, Series};
use crate::folded::{fold, product, times_s, unfold, Multipliers};
use crate::matrix::LowerTriMatrix;

/// Subgroup labels shared by the multiple and multiple almost-Riordan groups.
/// Indices `j` are 1-based, as in `f_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Subgroup {
    Appell,
    Lagrange,
    Derivative,
    Bell(usize),
    Lhat(usize),
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subgroup::Appell => write!(f, "Appell"),
            Subgroup::Lagrange => write!(f, "Lagrange"),
            Subgroup::Derivative => write!(f, "Derivative"),
            Subgroup::Bell(j) => write!(f, "Bell_{j}"),
            Subgroup::Lhat(j) => write!(f, "Lhat_{j}"),
        }
    }
}

/// Checks the shared invariants of the multiplier list `f_1..f_l`.
pub(crate) fn validate_multipliers(ell: usize, f: &[Series]) -> Result<()> {
    if ell == 0 {
        return Err(Error::InvalidSpec("the stride must be at least 1".into()));
    }
    if f.len() != ell {
        return Err(Error::InvalidSpec(format!(
            "expected {ell} multiplier series, got {}",
            f.len()
        )));
    }
    for (j, fj) in f.iter().enumerate() {
        let phi = fold(fj, ell, 1)?;
        if phi.coeff(0).is_zero() {
            return Err(Error::InvalidSpec(format!(
                "f_{} must have a nonzero coefficient of t",
                j + 1
            )));
        }
    }
    Ok(())
}

/// `h = (f_1 ... f_l)^{1/l}` and its compositional inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct HPair {
    pub h: Series,
    pub hbar: Series,
}

/// `h = t * ((f_1 ... f_l) / t^l)^{1/l}`, `hbar` its compositional inverse.
pub fn compute_h_of(ell: usize, f: &[Series]) -> Result<HPair> {
    let n = f.iter().map(Series::precision).min().unwrap_or(0);
    let prod = product(f.iter(), n);
    let unit = prod.shift(-(ell as i64))?;
    let h = times_s(&unit.nth_root_unit(ell as u32)?);
    let hbar = h.comp_inverse()?;
    Ok(HPair { h, hbar })
}

/// The column chain `first, first*f_1, first*f_1*f_2, ...` cycling through the f's.
pub(crate) fn column_chain(first: Series, f: &[Series], count: usize) -> Vec<Series> {
    let ell = f.len();
    let mut cols = Vec::with_capacity(count);
    let mut col = first;
    for k in 0..count {
        let next = &col * &f[k % ell];
        cols.push(col);
        col = next;
    }
    cols
}

/// Multiple Riordan array `(g; f_1, ..., f_l)` with `g` in `K[[t^l]]` and
/// each `f_j` in `t K[[t^l]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiSpec {
    ell: usize,
    g: Series,
    f: Vec<Series>,
}

impl MultiSpec {
    pub fn new(ell: usize, g: Series, f: Vec<Series>) -> Result<Self> {
        validate_multipliers(ell, &f)?;
        g.check_stride(ell, 0)?;
        require_unit(&g, "g")?;
        Ok(MultiSpec { ell, g, f })
    }

    pub fn identity(ell: usize, precision: usize) -> Self {
        MultiSpec {
            ell,
            g: Series::one(precision),
            f: vec![Series::var(precision); ell],
        }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn f(&self) -> &[Series] {
        &self.f
    }

    pub fn precision(&self) -> usize {
        self.f
            .iter()
            .map(Series::precision)
            .fold(self.g.precision(), usize::min)
    }

    fn folded(&self) -> Result<(Series, Multipliers)> {
        Ok((
            fold(&self.g, self.ell, 0)?,
            Multipliers::from_f(self.ell, &self.f)?,
        ))
    }

    fn from_folded(ell: usize, g: &Series, phi: &[Series]) -> Self {
        MultiSpec {
            ell,
            g: unfold(g, ell, 0),
            f: phi.iter().map(|p| unfold(p, ell, 1)).collect(),
        }
    }
}

pub fn compute_h(spec: &MultiSpec) -> Result<HPair> {
    compute_h_of(spec.ell, &spec.f)
}

pub fn build_multiple(spec: &MultiSpec, rows: usize) -> Result<LowerTriMatrix> {
    require_rows(spec.precision(), rows)?;
    let n = rows.saturating_sub(1);
    let f: Vec<Series> = spec.f.iter().map(|x| x.truncate(n)).collect();
    let cols = column_chain(spec.g.truncate(n), &f, rows);
    Ok(matrix_from_columns(&cols, rows))
}

fn check_same_stride(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::StrideMismatch { left: a, right: b });
    }
    Ok(())
}

/// `(g; f_j)(d; h_j) = (g d(h); (f_j / h) h_j(h))`.
pub fn multi_mul(a: &MultiSpec, b: &MultiSpec) -> Result<MultiSpec> {
    check_same_stride(a.ell, b.ell)?;
    let (ga, ma) = a.folded()?;
    let (gb, mb) = b.folded()?;
    let g = &ga * &gb.compose(&ma.big_f)?;
    let phi = ma
        .phi
        .iter()
        .zip(&mb.phi)
        .map(|(p, q)| Ok(p * &q.compose(&ma.big_f)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(MultiSpec::from_folded(a.ell, &g, &phi))
}

/// `(g; f_j)^{-1} = (1 / g(hbar); t hbar / f_j(hbar))`.
pub fn multi_inv(a: &MultiSpec) -> Result<MultiSpec> {
    let (g, m) = a.folded()?;
    let g_inv = g.compose(&m.big_g)?.recip()?;
    let phi = m
        .phi
        .iter()
        .map(|p| p.compose(&m.big_g)?.recip())
        .collect::<Result<Vec<_>>>()?;
    Ok(MultiSpec::from_folded(a.ell, &g_inv, &phi))
}

/// Generating-function summaries of a multiple Riordan array.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryGfs {
    /// `[t^n y^k]` of `g (1 + y f_1 + ... + y^{l-1} f_1...f_{l-1}) / (1 - y^l f_1...f_l)`.
    pub table: LowerTriMatrix,
    /// The bivariate function at `y = 1`.
    pub row_sums: Series,
    /// The bivariate function at `y = t`.
    pub diagonal_sums: Series,
}

pub fn summary_gfs(spec: &MultiSpec, rows: usize) -> Result<SummaryGfs> {
    require_rows(spec.precision(), rows)?;
    let ell = spec.ell;
    let n = spec.precision();
    // numerators g f_1 ... f_m for m = 0..l-1, and F = f_1 ... f_l
    let mut numer = Vec::with_capacity(ell);
    let mut acc = spec.g.clone();
    for fj in &spec.f {
        numer.push(acc.clone());
        acc = &acc * fj;
    }
    let big_f = product(spec.f.iter(), n);

    let m = rows.saturating_sub(1);
    let mut columns = Vec::with_capacity(rows);
    let mut power = Series::one(m);
    'outer: loop {
        for nm in &numer {
            if columns.len() == rows {
                break 'outer;
            }
            columns.push(&nm.truncate(m) * &power);
        }
        power = &power * &big_f.truncate(m);
    }
    let table = matrix_from_columns(&columns, rows);

    let numer_sum = numer
        .iter()
        .fold(Series::zero(n), |s, x| &s + x);
    let row_sums = numer_sum.div(&(&Series::one(n) - &big_f))?;

    let mut diag_numer = Series::zero(n);
    for (m, nm) in numer.iter().enumerate() {
        diag_numer = &diag_numer + &nm.shift(m as i64)?;
    }
    let diag_denom = &Series::one(n) - &big_f.shift(ell as i64)?;
    let diagonal_sums = diag_numer.div(&diag_denom)?;
    Ok(SummaryGfs {
        table,
        row_sums,
        diagonal_sums,
    })
}

/// Sequence characterization of `(g; f_1, ..., f_l)`: the `A`-sequence governs
/// columns `k >= l` and `Z_m` governs column `m < l`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiSequenceChar {
    pub ell: usize,
    pub a: Series,
    /// `Z_0, ..., Z_{l-1}`.
    pub z: Vec<Series>,
}

pub fn multi_seq_char(spec: &MultiSpec) -> Result<MultiSequenceChar> {
    let ell = spec.ell;
    let (g, m) = spec.folded()?;
    let big_g = &m.big_g;
    let k = big_g.precision();
    let a = Series::var(k).div(big_g)?;
    let g_at = g.compose(big_g)?;
    let phi_at = m
        .phi
        .iter()
        .map(|p| p.compose(big_g))
        .collect::<Result<Vec<_>>>()?;
    let mut z = Vec::with_capacity(ell);
    let mut c = g.coeff(0).clone();
    let mut denom = g_at;
    for mi in 0..ell {
        if mi > 0 {
            c *= m.leading(mi - 1);
            denom = &denom * &phi_at[mi - 1];
        }
        let ratio = Series::constant(c.clone(), denom.precision()).div(&denom)?;
        let zm = (&Series::one(ratio.precision()) - &ratio).div(big_g)?;
        z.push(unfold(&zm, ell, 0));
    }
    Ok(MultiSequenceChar {
        ell,
        a: unfold(&a, ell, 0),
        z,
    })
}

/// Sum `sum_j seq_j d_{n, base + l j}` over the window, or `None` when a needed
/// sequence term is unknown.
pub(crate) fn stride_sum(
    d: &LowerTriMatrix,
    n: usize,
    base: usize,
    ell: usize,
    seq: &Series,
) -> Option<Rational> {
    let mut acc = Rational::zero();
    let mut j = 0;
    while base + ell * j <= n {
        let idx = ell * j;
        let cell = d.get(n, base + ell * j);
        if !cell.is_zero() {
            let term = seq.get(idx)?;
            acc += term * cell;
        }
        j += 1;
    }
    Some(acc)
}

/// Checks the stride-`l` recurrences of a multiple Riordan array on every cell
/// of `d` whose recurrence terms are known.
pub fn multi_check_recurrences(d: &LowerTriMatrix, seq: &MultiSequenceChar) -> Verification {
    let ell = seq.ell;
    let mut report = Verification::default();
    for n in 0..d.size().saturating_sub(ell) {
        for k in 0..=(n + ell) {
            let found = if k >= ell {
                stride_sum(d, n, k - ell, ell, &seq.a)
            } else {
                stride_sum(d, n, k, ell, &seq.z[k])
            };
            if let Some(found) = found {
                report.record(n + ell, k, &d.get(n + ell, k), found);
            }
        }
    }
    report
}

fn is_var(s: &Series) -> bool {
    s == &Series::var(s.precision())
}

fn is_one(s: &Series) -> bool {
    s == &Series::one(s.precision())
}

/// `g = h'` or, for even `l` where `-h` is an equally valid root, `g = -h'`.
pub(crate) fn is_derivative(ell: usize, g: &Series, f: &[Series]) -> bool {
    let Ok(hp) = compute_h_of(ell, f) else {
        return false;
    };
    let Ok(dh) = hp.h.derivative() else {
        return false;
    };
    g == &dh || (ell.is_multiple_of(2) && g == &-&dh)
}

pub(crate) fn bell_labels(g: &Series, f: &[Series]) -> Vec<Subgroup> {
    let tg = times_s(g);
    f.iter()
        .enumerate()
        .filter(|(_, fj)| *fj == &tg)
        .map(|(j, _)| Subgroup::Bell(j + 1))
        .collect()
}

pub(crate) fn all_vars(f: &[Series]) -> bool {
    f.iter().all(is_var)
}

pub(crate) fn var_labels(f: &[Series]) -> Vec<Subgroup> {
    f.iter()
        .enumerate()
        .filter(|(_, fj)| is_var(fj))
        .map(|(j, _)| Subgroup::Lhat(j + 1))
        .collect()
}

pub(crate) fn unit_series(s: &Series) -> bool {
    is_one(s) && s.coeff(0).is_one()
}

pub fn classify_multi_subgroups(spec: &MultiSpec) -> BTreeSet<Subgroup> {
    let mut labels = BTreeSet::new();
    if all_vars(&spec.f) {
        labels.insert(Subgroup::Appell);
    }
    if unit_series(&spec.g) {
        labels.insert(Subgroup::Lagrange);
    }
    if is_derivative(spec.ell, &spec.g, &spec.f) {
        labels.insert(Subgroup::Derivative);
    }
    labels.extend(bell_labels(&spec.g, &spec.f));
    labels
}
