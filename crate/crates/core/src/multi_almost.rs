//! Multiple almost-Riordan arrays `(b | g; f_1, ..., f_l)`.
//!
//! Column 0 is `b`; column `k >= 1` is `t g f_1^{e_1} ... f_l^{e_l}` with
//! `e_j = floor((k + l - 1 - j) / l)`, i.e. `tg, tg f_1, tg f_1 f_2, ...`.
//! Here `b, g` lie in `K[[t^l]]` and every `f_j` in `t K[[t^l]]`.
//!
//! Group operations and the sequence characterization are computed in
//! `s = t^l` (see [`crate::folded`]), so they never need the `l`-th root
//! `h = (f_1 ... f_l)^{1/l}`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::check::Verification;
use crate::classic::{build_riordan, matrix_from_columns, require_rows, require_unit, RiordanSpec};
use crate::error::{Error, Result};
use crate::folded::{fold, product, unfold, Multipliers};
use crate::fps::{fmt_rational, Rational, Series, StridedSeries};
use crate::matrix::{DenseMatrix, LowerTriMatrix};
use crate::multi::{
    all_vars, bell_labels, column_chain, compute_h_of, is_derivative, stride_sum, unit_series,
    validate_multipliers, var_labels, HPair, Subgroup,
};

#[derive(Clone, Debug, PartialEq)]
pub struct MultiAlmostSpec {
    ell: usize,
    b: Series,
    g: Series,
    f: Vec<Series>,
}

/// The array data written in `s = t^l`: `b(t) = b^(t^l)`, `g(t) = g^(t^l)`,
/// `f_j(t) = t phi_j(t^l)`.
struct Folded {
    b: Series,
    g: Series,
    m: Multipliers,
}

impl MultiAlmostSpec {
    pub fn new(ell: usize, b: Series, g: Series, f: Vec<Series>) -> Result<Self> {
        validate_multipliers(ell, &f)?;
        b.check_stride(ell, 0)?;
        g.check_stride(ell, 0)?;
        require_unit(&b, "b")?;
        require_unit(&g, "g")?;
        Ok(MultiAlmostSpec { ell, b, g, f })
    }

    pub fn identity(ell: usize, precision: usize) -> Self {
        MultiAlmostSpec {
            ell,
            b: Series::one(precision),
            g: Series::one(precision),
            f: vec![Series::var(precision); ell],
        }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn b(&self) -> &Series {
        &self.b
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
            .fold(self.b.precision().min(self.g.precision()), usize::min)
    }

    /// The same array with every series truncated to `precision`.
    pub fn truncate(&self, precision: usize) -> Self {
        MultiAlmostSpec {
            ell: self.ell,
            b: self.b.truncate(precision),
            g: self.g.truncate(precision),
            f: self.f.iter().map(|x| x.truncate(precision)).collect(),
        }
    }

    fn folded(&self) -> Result<Folded> {
        Ok(Folded {
            b: fold(&self.b, self.ell, 0)?,
            g: fold(&self.g, self.ell, 0)?,
            m: Multipliers::from_f(self.ell, &self.f)?,
        })
    }

    fn from_folded(ell: usize, b: &Series, g: &Series, phi: &[Series]) -> Self {
        MultiAlmostSpec {
            ell,
            b: unfold(b, ell, 0),
            g: unfold(g, ell, 0),
            f: phi.iter().map(|p| unfold(p, ell, 1)).collect(),
        }
    }
}

impl fmt::Display for MultiAlmostSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ell = {}", self.ell)?;
        writeln!(f, "b = {}", self.b)?;
        writeln!(f, "g = {}", self.g)?;
        for (j, fj) in self.f.iter().enumerate() {
            writeln!(f, "f_{} = {}", j + 1, fj)?;
        }
        Ok(())
    }
}

pub fn compute_h(spec: &MultiAlmostSpec) -> Result<HPair> {
    compute_h_of(spec.ell, &spec.f)
}

pub fn build_multi_almost(spec: &MultiAlmostSpec, rows: usize) -> Result<LowerTriMatrix> {
    require_rows(spec.precision(), rows)?;
    if rows == 0 {
        return LowerTriMatrix::new(Vec::new());
    }
    let n = rows - 1;
    let f: Vec<Series> = spec.f.iter().map(|x| x.truncate(n)).collect();
    let mut cols = vec![spec.b.truncate(n)];
    cols.extend(column_chain(spec.g.truncate(n).shift(1)?, &f, rows - 1));
    Ok(matrix_from_columns(&cols, rows))
}

/// Image of a stride-certified series under the array: for `u` supported on
/// `t^r K[[t^l]]`, `r = 0` gives `u_0 b + (tg/f_l)(u(h) - u_0)` and `r >= 1`
/// gives `t g f_1 ... f_{r-1} u(h) / h^r`.
pub fn mar_apply(spec: &MultiAlmostSpec, u: &StridedSeries) -> Result<Series> {
    let ell = spec.ell;
    if u.stride() != ell {
        return Err(Error::StrideMismatch {
            left: ell,
            right: u.stride(),
        });
    }
    let fs = spec.folded()?;
    let r = u.offset();
    let u_hat = fold(u.series(), ell, r)?;
    let u_at = u_hat.compose(&fs.m.big_f)?;
    if r == 0 {
        let u0 = u_hat.coeff(0).clone();
        let ratio = fs.g.div(&fs.m.phi[ell - 1])?;
        let tail = &ratio * &u_at.add_constant(&-u0.clone());
        Ok(unfold(&(&fs.b.scale(&u0) + &tail), ell, 0))
    } else {
        let k = fs.g.precision();
        let v = &(&fs.g * &product(fs.m.phi[..r - 1].iter(), k)) * &u_at;
        Ok(unfold(&v, ell, r))
    }
}

/// [`mar_apply`] for an arbitrary series, split into its `l` residue classes.
pub fn mar_apply_series(spec: &MultiAlmostSpec, u: &Series) -> Result<Series> {
    let ell = spec.ell;
    let mut total: Option<Series> = None;
    for r in 0..ell {
        let part = Series::new(
            u.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| if i % ell == r { c.clone() } else { Rational::zero() })
                .collect(),
        );
        let v = mar_apply(spec, &StridedSeries::new(part, ell, r)?)?;
        total = Some(match total {
            None => v,
            Some(t) => &t + &v,
        });
    }
    Ok(total.expect("ell >= 1"))
}

fn check_same_stride(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::StrideMismatch { left: a, right: b });
    }
    Ok(())
}

/// `(b|g; f)(c|d; k) = (c_0 b + (tg/f_l)(c(h) - c_0) | g d(h); (f_j/h) k_j(h))`.
pub fn mar_mul(a: &MultiAlmostSpec, c: &MultiAlmostSpec) -> Result<MultiAlmostSpec> {
    check_same_stride(a.ell, c.ell)?;
    let ell = a.ell;
    let fa = a.folded()?;
    let fc = c.folded()?;
    let big_f = &fa.m.big_f;
    let c0 = fc.b.coeff(0).clone();
    let ratio = fa.g.div(&fa.m.phi[ell - 1])?;
    let tail = &ratio * &fc.b.compose(big_f)?.add_constant(&-c0.clone());
    let b = &fa.b.scale(&c0) + &tail;
    let g = &fa.g * &fc.g.compose(big_f)?;
    let phi = fa
        .m
        .phi
        .iter()
        .zip(&fc.m.phi)
        .map(|(p, q)| Ok(p * &q.compose(big_f)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(MultiAlmostSpec::from_folded(ell, &b, &g, &phi))
}

/// Two-sided inverse:
/// `b' = 1/b_0 + f_l(hbar) (b_0 - b(hbar)) / (b_0 hbar g(hbar))`,
/// `g' = 1/g(hbar)`, `f'_j = t hbar / f_j(hbar)`.
pub fn mar_inv(a: &MultiAlmostSpec) -> Result<MultiAlmostSpec> {
    let ell = a.ell;
    let fa = a.folded()?;
    let big_g = &fa.m.big_g;
    let b0 = fa.b.coeff(0).clone();
    let g_at = fa.g.compose(big_g)?;
    let b_at = fa.b.compose(big_g)?;
    let phi_at = fa
        .m
        .phi
        .iter()
        .map(|p| p.compose(big_g))
        .collect::<Result<Vec<_>>>()?;
    let numer = &phi_at[ell - 1] * &(-&b_at.add_constant(&-b0.clone()));
    let tail = numer.div(&g_at.scale(&b0))?;
    let b = tail.add_constant(&b0.recip());
    let g = g_at.recip()?;
    let phi = phi_at
        .iter()
        .map(Series::recip)
        .collect::<Result<Vec<_>>>()?;
    Ok(MultiAlmostSpec::from_folded(ell, &b, &g, &phi))
}

/// `A`, `Z_1..Z_l` and `W` sequences, each a series in `t^l`.
#[derive(Clone, Debug, PartialEq)]
pub struct SequenceChar {
    pub ell: usize,
    pub a: Series,
    /// `Z_1, ..., Z_l` (index `m - 1`).
    pub z: Vec<Series>,
    pub w: Series,
}

/// Coefficients of `t^{l k}` for `k = 0..count` (fewer if unknown).
pub fn stride_terms(s: &Series, ell: usize, count: usize) -> Vec<Rational> {
    (0..count)
        .map_while(|k| s.get(ell * k).cloned())
        .collect()
}

impl SequenceChar {
    /// Sequences of the identity array: `A = 1`, `Z_l = 1`, all others zero.
    pub fn identity(ell: usize, precision: usize) -> Self {
        let mut z = vec![Series::zero(precision); ell];
        z[ell - 1] = Series::one(precision);
        SequenceChar {
            ell,
            a: Series::one(precision),
            z,
            w: Series::zero(precision),
        }
    }

    pub fn a_terms(&self, count: usize) -> Vec<Rational> {
        stride_terms(&self.a, self.ell, count)
    }

    /// Terms of `Z_m`, `m` in `1..=l`.
    pub fn z_terms(&self, m: usize, count: usize) -> Vec<Rational> {
        stride_terms(&self.z[m - 1], self.ell, count)
    }

    pub fn w_terms(&self, count: usize) -> Vec<Rational> {
        stride_terms(&self.w, self.ell, count)
    }

    /// Number of `t^l`-terms known for every sequence.
    pub fn known_terms(&self) -> usize {
        self.z
            .iter()
            .chain([&self.a, &self.w])
            .map(|s| s.precision() / self.ell + 1)
            .min()
            .unwrap_or(0)
    }

    /// Truncates every sequence to its first `terms` coefficients in `t^l`.
    pub fn truncate_terms(&self, terms: usize) -> Self {
        let p = (self.ell * terms).saturating_sub(1);
        SequenceChar {
            ell: self.ell,
            a: self.a.truncate(p),
            z: self.z.iter().map(|z| z.truncate(p)).collect(),
            w: self.w.truncate(p),
        }
    }

    /// Equality of the first `terms` coefficients in `t^l` of every sequence.
    pub fn agrees_with(&self, other: &SequenceChar, terms: usize) -> bool {
        let same = |x: &Series, y: &Series| {
            let a = stride_terms(x, self.ell, terms);
            a.len() == terms && a == stride_terms(y, self.ell, terms)
        };
        self.ell == other.ell
            && same(&self.a, &other.a)
            && same(&self.w, &other.w)
            && self.z.iter().zip(&other.z).all(|(x, y)| same(x, y))
    }
}

impl fmt::Display for SequenceChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.known_terms();
        let list = |v: Vec<Rational>| {
            v.iter().map(fmt_rational).collect::<Vec<_>>().join(", ")
        };
        writeln!(f, "A   = ({})", list(self.a_terms(n)))?;
        for m in 1..=self.ell {
            writeln!(f, "Z_{m} = ({})", list(self.z_terms(m, n)))?;
        }
        writeln!(f, "W   = ({})", list(self.w_terms(n)))
    }
}

pub fn mar_seq_char(spec: &MultiAlmostSpec) -> Result<SequenceChar> {
    let ell = spec.ell;
    let fs = spec.folded()?;
    let big_g = &fs.m.big_g;
    let k = big_g.precision();
    let b0 = fs.b.coeff(0).clone();
    let g0 = fs.g.coeff(0).clone();
    if fs.b.precision() < 1 {
        return Err(Error::Precision {
            needed: ell,
            available: spec.b.precision(),
        });
    }
    let w0 = fs.b.coeff(1) / &b0;

    let a = Series::var(k).div(big_g)?;
    let g_at = fs.g.compose(big_g)?;
    let b_at = fs.b.compose(big_g)?;
    let phi_at = fs
        .m
        .phi
        .iter()
        .map(|p| p.compose(big_g))
        .collect::<Result<Vec<_>>>()?;

    let mut z = Vec::with_capacity(ell);
    // Z_m for m < l: (1 - c_m / (g(hbar) f_1(hbar) ... f_{m-1}(hbar) / hbar^{m-1})) / hbar^l
    let mut c = g0.clone();
    let mut denom = g_at.clone();
    for m in 1..ell {
        if m > 1 {
            c *= fs.m.leading(m - 2);
            denom = &denom * &phi_at[m - 2];
        }
        let ratio = Series::constant(c.clone(), denom.precision()).div(&denom)?;
        let zm = (&Series::one(ratio.precision()) - &ratio).div(big_g)?;
        z.push(unfold(&zm, ell, 0));
    }
    // Z_l = z + A - z b(hbar) f_l(hbar) / (hbar g(hbar)),  z = g_0 f_{1,1} ... f_{l-1,1} / b_0
    let zc = (0..ell - 1).fold(g0, |acc, i| acc * fs.m.leading(i)) / &b0;
    let last = (&b_at * &phi_at[ell - 1]).div(&g_at)?.scale(&zc);
    let zl = (&a - &last).add_constant(&zc);
    z.push(unfold(&zl, ell, 0));

    // W = f_l(hbar) ((1 - w_0 hbar^l) b(hbar) - b_0) / (hbar^{l+1} g(hbar)) + w_0
    let one_minus = (-&big_g.scale(&w0)).add_constant(&Rational::one());
    let numer = &phi_at[ell - 1] * &(&one_minus * &b_at).add_constant(&-b0.clone());
    let w = numer.div(&(big_g * &g_at))?.add_constant(&w0);

    Ok(SequenceChar {
        ell,
        a: unfold(&a, ell, 0),
        z,
        w: unfold(&w, ell, 0),
    })
}

/// What generates a column of the production matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColumnGf {
    W,
    /// `t^m Z_m` for `1 <= m < l`.
    ShiftedZ(usize),
    /// `Z_l`.
    LastZ,
    /// `t^i A` for `i >= 1`.
    ShiftedA(usize),
}

impl fmt::Display for ColumnGf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColumnGf::W => write!(f, "W"),
            ColumnGf::ShiftedZ(m) => write!(f, "t^{m} Z_{m}"),
            ColumnGf::LastZ => write!(f, "Z_l"),
            ColumnGf::ShiftedA(i) => write!(f, "t^{i} A"),
        }
    }
}

/// Square production matrix with columns `(W, tZ_1, ..., t^{l-1}Z_{l-1}, Z_l, tA, t^2A, ...)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductionMatrix {
    pub ell: usize,
    pub matrix: DenseMatrix,
    pub columns: Vec<ColumnGf>,
}

pub fn column_layout(ell: usize, size: usize) -> Vec<ColumnGf> {
    (0..size)
        .map(|j| match j {
            0 => ColumnGf::W,
            _ if j < ell => ColumnGf::ShiftedZ(j),
            _ if j == ell => ColumnGf::LastZ,
            _ => ColumnGf::ShiftedA(j - ell),
        })
        .collect()
}

/// Production matrix from a sequence characterization.
pub fn production_from_sequences(seq: &SequenceChar, size: usize) -> Result<ProductionMatrix> {
    let ell = seq.ell;
    let columns = column_layout(ell, size);
    let mut rows = vec![vec![Rational::zero(); size]; size];
    for (j, col) in columns.iter().enumerate() {
        let (series, shift) = match *col {
            ColumnGf::W => (&seq.w, 0),
            ColumnGf::ShiftedZ(m) => (&seq.z[m - 1], m),
            ColumnGf::LastZ => (&seq.z[ell - 1], 0),
            ColumnGf::ShiftedA(i) => (&seq.a, i),
        };
        for (i, row) in rows.iter_mut().enumerate().skip(shift) {
            row[j] = series
                .get(i - shift)
                .ok_or(Error::Precision {
                    needed: i - shift,
                    available: series.precision(),
                })?
                .clone();
        }
    }
    let matrix = DenseMatrix::from_fn(size, size, |i, j| rows[i][j].clone());
    Ok(ProductionMatrix {
        ell,
        matrix,
        columns,
    })
}

pub fn mar_production(spec: &MultiAlmostSpec, size: usize) -> Result<ProductionMatrix> {
    production_from_sequences(&mar_seq_char(spec)?, size)
}

/// Checks `D P = D` with its first `l` rows deleted on a `size x size` window.
pub fn mar_verify_production(spec: &MultiAlmostSpec, size: usize) -> Result<Verification> {
    let p = mar_production(spec, size)?;
    let d = build_multi_almost(spec, size + spec.ell)?;
    Ok(verify_production_on(&d, &p.matrix, spec.ell, size))
}

/// `(D P)_{n,k} = d_{n+l,k}` for `n, k < size`; `d` needs `size + l` rows.
pub fn verify_production_on(d: &LowerTriMatrix, p: &DenseMatrix, ell: usize, size: usize) -> Verification {
    let window = d.truncate(size).to_dense();
    let cols = p.ncols().min(size);
    let mut report = Verification::default();
    for n in 0..size.min(d.size().saturating_sub(ell)) {
        for k in 0..cols {
            let mut acc = Rational::zero();
            for i in 0..=n.min(p.nrows() - 1) {
                let x = window.get(n, i);
                if !x.is_zero() {
                    acc += x * p.get(i, k);
                }
            }
            report.record(n, k, &d.get(n + ell, k), acc);
        }
    }
    report
}

/// Checks the four recurrence families on every cell whose terms are known:
/// `d_{n+l,k} = sum_j a_j d_{n,k-l+lj}` for `k > l`,
/// `d_{n+l,l} = sum_j z_{l,j} d_{n,lj}`,
/// `d_{n+l,m} = sum_j z_{m,j} d_{n,m+lj}` for `1 <= m < l`,
/// `d_{n+l,0} = sum_j w_j d_{n,lj}`.
pub fn check_recurrences(d: &LowerTriMatrix, seq: &SequenceChar) -> Verification {
    let ell = seq.ell;
    let mut report = Verification::default();
    for n in 0..d.size().saturating_sub(ell) {
        for k in 0..=(n + ell) {
            if let Some(found) = recurrence_value(d, seq, n, k) {
                report.record(n + ell, k, &d.get(n + ell, k), found);
            }
        }
    }
    report
}

/// Right-hand side of the recurrence for cell `(n + l, k)`, computed from row `n`.
pub fn recurrence_value(d: &LowerTriMatrix, seq: &SequenceChar, n: usize, k: usize) -> Option<Rational> {
    let ell = seq.ell;
    if k > ell {
        stride_sum(d, n, k - ell, ell, &seq.a)
    } else if k == ell {
        stride_sum(d, n, 0, ell, &seq.z[ell - 1])
    } else if k >= 1 {
        stride_sum(d, n, k, ell, &seq.z[k - 1])
    } else {
        stride_sum(d, n, 0, ell, &seq.w)
    }
}

/// The column classes as classical Riordan arrays in `s = t^l`:
/// part `j` (1-based) is `(g f_1 ... f_{j-1} / t^{j-1}, f_1 ... f_l)` and
/// supplies the columns `j, j + l, j + 2l, ...`.
pub fn mar_decompose(spec: &MultiAlmostSpec) -> Result<Vec<RiordanSpec>> {
    let fs = spec.folded()?;
    let mut parts = Vec::with_capacity(spec.ell);
    let mut g = fs.g.clone();
    for j in 0..spec.ell {
        if j > 0 {
            g = &g * &fs.m.phi[j - 1];
        }
        parts.push(RiordanSpec::new(g.clone(), fs.m.big_f.clone())?);
    }
    Ok(parts)
}

/// Interleaves column `b` with the columns of the decomposition parts.
pub fn reconstruct_from_parts(
    b: &Series,
    parts: &[RiordanSpec],
    rows: usize,
) -> Result<LowerTriMatrix> {
    let ell = parts.len();
    require_rows(b.precision(), rows)?;
    let s_rows = rows.saturating_sub(1) / ell + 1;
    let mats = parts
        .iter()
        .map(|p| build_riordan(p, s_rows))
        .collect::<Result<Vec<_>>>()?;
    Ok(LowerTriMatrix::from_fn(rows, |n, k| {
        if k == 0 {
            return b.coeff(n).clone();
        }
        let j = (k - 1) % ell + 1;
        let m = (k - 1) / ell;
        if n < j || !(n - j).is_multiple_of(ell) {
            return Rational::zero();
        }
        mats[j - 1].get((n - j) / ell, m)
    }))
}

/// `(b|g; f) = (b|g; t, ..., t)(1|1; f)`.
pub fn mar_factorize(spec: &MultiAlmostSpec) -> (MultiAlmostSpec, MultiAlmostSpec) {
    let n = spec.precision();
    let appell = MultiAlmostSpec {
        ell: spec.ell,
        b: spec.b.clone(),
        g: spec.g.clone(),
        f: vec![Series::var(n); spec.ell],
    };
    let lagrange = MultiAlmostSpec {
        ell: spec.ell,
        b: Series::one(n),
        g: Series::one(n),
        f: spec.f.clone(),
    };
    (appell, lagrange)
}

pub fn classify_mar_subgroups(spec: &MultiAlmostSpec) -> BTreeSet<Subgroup> {
    let mut labels = BTreeSet::new();
    if all_vars(&spec.f) {
        labels.insert(Subgroup::Appell);
    }
    if unit_series(&spec.b) && unit_series(&spec.g) {
        labels.insert(Subgroup::Lagrange);
    }
    if is_derivative(spec.ell, &spec.g, &spec.f) {
        labels.insert(Subgroup::Derivative);
    }
    labels.extend(bell_labels(&spec.g, &spec.f));
    labels.extend(var_labels(&spec.f));
    labels
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fps::rat;
    use crate::series_lang::evaluate_str;

    fn ev(s: &str, n: usize) -> Series {
        evaluate_str(s, n).unwrap()
    }

    fn e1(n: usize) -> MultiAlmostSpec {
        MultiAlmostSpec::new(
            3,
            ev("1/(1-t^6)", n),
            ev("1/(1-t^3)", n),
            vec![ev("t/(1-t^3)", n), ev("t*(1+t^3)", n), ev("t/(1+t^3)", n)],
        )
        .unwrap()
    }

    fn e2(n: usize) -> MultiAlmostSpec {
        MultiAlmostSpec::new(
            2,
            ev("1/(1-t^4)", n),
            ev("1/(1-t^2)", n),
            vec![ev("t", n), ev("t/(1-t^2)", n)],
        )
        .unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn identity_builds_identity() {
        for ell in 1..4 {
            let m = build_multi_almost(&MultiAlmostSpec::identity(ell, 9), 10).unwrap();
            assert_eq!(m, LowerTriMatrix::identity(10));
        }
    }

    #[test]
    fn example_rows() {
        let m = build_multi_almost(&e1(9), 10).unwrap();
        assert_eq!(m.row(6), &ints(&[1, 0, 0, 3, 0, 0, 1])[..]);
        assert_eq!(m.get(9, 3), rat(5));
        let m = build_multi_almost(&e2(9), 10).unwrap();
        assert_eq!(m.row(9), &ints(&[0, 1, 0, 4, 0, 6, 0, 4, 0, 1])[..]);
    }

    #[test]
    fn apply_examples() {
        let spec = e2(12);
        let one = StridedSeries::new(Series::one(12), 2, 0).unwrap();
        assert_eq!(mar_apply(&spec, &one).unwrap(), spec.b().clone());
        let t = StridedSeries::new(Series::var(12), 2, 1).unwrap();
        assert_eq!(mar_apply(&spec, &t).unwrap(), spec.g().shift(1).unwrap());
        let t2 = StridedSeries::new(Series::monomial(rat(1), 2, 12), 2, 0).unwrap();
        assert_eq!(mar_apply(&spec, &t2).unwrap(), ev("t^2/(1-t^2)", 12));
    }

    #[test]
    fn apply_matches_matrix_vector_product() {
        let spec = e1(24);
        let m = build_multi_almost(&spec, 20).unwrap();
        let u = ev("(1+2*t-t^2)/(1-t^2+3*t^5)", 24);
        let v = mar_apply_series(&spec, &u).unwrap();
        let mv = m.apply(u.coeffs());
        assert_eq!(v.coeffs()[..20], mv[..]);
    }

    #[test]
    fn sequences_of_triple_example() {
        let seq = mar_seq_char(&e1(30)).unwrap();
        assert_eq!(seq.a_terms(4), ints(&[1, 1, 0, 0]));
        assert_eq!(seq.z_terms(1, 4), ints(&[1, 0, 0, 0]));
        assert_eq!(seq.z_terms(2, 4), ints(&[2, -1, 1, -1]));
        assert_eq!(seq.z_terms(3, 4), ints(&[1, 3, -5, 12]));
        assert_eq!(seq.w_terms(4), ints(&[0, 1, -3, 8]));
    }

    #[test]
    fn sequences_of_double_example() {
        let seq = mar_seq_char(&e2(30)).unwrap();
        let n = 22;
        assert_eq!(seq.a.truncate(n), ev("1+t^2", n));
        assert_eq!(seq.z[0].truncate(n), ev("1", n));
        assert_eq!(seq.z[1].truncate(n), ev("(1+3*t^2+t^4)/(1+2*t^2)", n));
        assert_eq!(seq.w.truncate(n), ev("t^2*(1+t^2)/(1+2*t^2)", n));
        assert!(seq.a.precision() >= n);
    }

    #[test]
    fn identity_sequences() {
        let seq = mar_seq_char(&MultiAlmostSpec::identity(3, 12)).unwrap();
        assert_eq!(seq.a, Series::one(seq.a.precision()));
        // column l is fed by d_{0,0}: d_{l,l} = z_{l,0} d_{0,0}
        assert!(seq.z[..2].iter().all(Series::is_zero));
        assert_eq!(seq.z[2], Series::one(seq.z[2].precision()));
        assert!(seq.w.is_zero());
        assert!(seq.agrees_with(&SequenceChar::identity(3, 12), seq.known_terms()));
        assert!(seq.known_terms() >= 3);
    }

    #[test]
    fn printed_recurrence_instances() {
        let m = build_multi_almost(&e1(12), 13).unwrap();
        let seq = mar_seq_char(&e1(30)).unwrap();
        assert_eq!(recurrence_value(&m, &seq, 3, 0), Some(rat(1)));
        assert_eq!(recurrence_value(&m, &seq, 6, 3), Some(rat(5)));
        assert_eq!(recurrence_value(&m, &seq, 5, 2), Some(rat(3)));
        assert!(check_recurrences(&m, &seq).is_ok());
    }

    #[test]
    fn production_matrices_verify() {
        for spec in [e1(40), e2(40), MultiAlmostSpec::identity(2, 40)] {
            let report = mar_verify_production(&spec, 30).unwrap();
            assert!(report.is_ok(), "{report}");
            assert_eq!(report.checked, 900);
        }
    }

    #[test]
    fn double_example_production_first_row() {
        let p = mar_production(&e2(20), 10).unwrap();
        assert_eq!(p.matrix.rows()[0], ints(&[0, 0, 1, 0, 0, 0, 0, 0, 0, 0]));
        assert_eq!(p.matrix.rows()[2], ints(&[1, 0, 1, 0, 1, 0, 0, 0, 0, 0]));
        let d = build_multi_almost(&e2(20), 12).unwrap();
        let dp = d.truncate(10).to_dense().mul(&p.matrix).unwrap();
        assert_eq!(dp.rows()[0], ints(&[0, 0, 1, 0, 0, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn identity_production_is_shift() {
        let p = mar_production(&MultiAlmostSpec::identity(2, 20), 8).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                let expect = if j == i + 2 { 1 } else { 0 };
                assert_eq!(p.matrix.get(i, j), &rat(expect), "({i},{j})");
            }
        }
    }

    #[test]
    fn production_needs_precision() {
        assert!(matches!(
            mar_production(&e1(10), 20),
            Err(Error::Precision { .. })
        ));
    }

    #[test]
    fn group_laws_on_examples() {
        let a = e1(24);
        let id = MultiAlmostSpec::identity(3, 24);
        assert_eq!(mar_mul(&a, &id).unwrap(), a);
        assert_eq!(mar_mul(&id, &a).unwrap(), a);
        let inv = mar_inv(&a).unwrap();
        let p = mar_mul(&a, &inv).unwrap();
        assert_eq!(p, MultiAlmostSpec::identity(3, p.precision()));
        let q = mar_mul(&inv, &a).unwrap();
        assert_eq!(q, MultiAlmostSpec::identity(3, q.precision()));
        let b = e2(24);
        let p = mar_mul(&mar_inv(&b).unwrap(), &b).unwrap();
        assert_eq!(p, MultiAlmostSpec::identity(2, p.precision()));
        assert!(p.precision() >= 20);
    }

    #[test]
    fn product_is_matrix_product() {
        let a = e1(20);
        let c = MultiAlmostSpec::new(
            3,
            ev("(2+t^3)/(1-t^6)", 20),
            ev("1+5*t^3", 20),
            vec![ev("t", 20), ev("t/(1-2*t^3)", 20), ev("-t+t^4", 20)],
        )
        .unwrap();
        let ac = mar_mul(&a, &c).unwrap();
        let lhs = build_multi_almost(&ac, 16).unwrap();
        let rhs = build_multi_almost(&a, 16).unwrap().mul(&build_multi_almost(&c, 16).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn appell_times_lagrange() {
        let a = e1(18);
        let (ap, la) = mar_factorize(&a);
        assert_eq!(mar_mul(&ap, &la).unwrap(), a);
        assert!(classify_mar_subgroups(&ap).contains(&Subgroup::Appell));
        assert!(classify_mar_subgroups(&la).contains(&Subgroup::Lagrange));
        let id = MultiAlmostSpec::identity(2, 8);
        let (x, y) = mar_factorize(&id);
        assert_eq!(x, id);
        assert_eq!(y, id);
    }

    #[test]
    fn inverse_of_appell_element() {
        let a = MultiAlmostSpec::new(
            2,
            ev("1/(1-t^2)", 12),
            ev("1", 12),
            vec![ev("t", 12), ev("t", 12)],
        )
        .unwrap();
        let inv = mar_inv(&a).unwrap();
        // h = t: b' = 1/b0 + (b0 - b)/b0 = 2 - b
        assert_eq!(inv.b(), &ev("2-1/(1-t^2)", 12));
    }

    #[test]
    fn decomposition() {
        let parts = mar_decompose(&e2(12)).unwrap();
        assert_eq!(parts[0].g, ev("1/(1-t)", 5));
        assert_eq!(parts[0].f, ev("t/(1-t)", 5));
        let spec = e1(12);
        let parts = mar_decompose(&spec).unwrap();
        let rebuilt = reconstruct_from_parts(spec.b(), &parts, 10).unwrap();
        assert_eq!(rebuilt, build_multi_almost(&spec, 10).unwrap());
        let id = mar_decompose(&MultiAlmostSpec::identity(3, 9)).unwrap();
        assert!(id.iter().all(|p| p == &RiordanSpec::identity(p.precision())));
    }

    #[test]
    fn classification() {
        let appell = MultiAlmostSpec::new(
            2,
            ev("1/(1-t^2)", 10),
            ev("1+t^2", 10),
            vec![ev("t", 10), ev("t", 10)],
        )
        .unwrap();
        let labels = classify_mar_subgroups(&appell);
        assert!(labels.contains(&Subgroup::Appell));
        assert!(labels.contains(&Subgroup::Lhat(1)));
        assert!(labels.contains(&Subgroup::Lhat(2)));
        assert!(!labels.contains(&Subgroup::Lagrange));
        let lag = MultiAlmostSpec::new(2, ev("1", 10), ev("1", 10), vec![ev("t/(1-t^2)", 10), ev("t+t^3", 10)]).unwrap();
        assert_eq!(
            classify_mar_subgroups(&lag),
            BTreeSet::from([Subgroup::Lagrange])
        );
        let labels = classify_mar_subgroups(&e2(10));
        assert!(labels.contains(&Subgroup::Lhat(1)));
        assert!(!labels.contains(&Subgroup::Lhat(2)));
        assert!(labels.contains(&Subgroup::Bell(2)));
    }
}
