//! Classical Riordan arrays `(g, f)`, quasi-Riordan arrays `[g, f]` and
//! almost-Riordan arrays `(d | g, f)`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fps::{Rational, Series};
use crate::matrix::{DenseMatrix, LowerTriMatrix};

pub(crate) fn require_unit(s: &Series, name: &str) -> Result<()> {
    if s.coeff(0).is_zero() {
        return Err(Error::InvalidSpec(format!("{name} must have a nonzero constant term")));
    }
    Ok(())
}

pub(crate) fn require_order_one(s: &Series, name: &str) -> Result<()> {
    if s.order() != Some(1) {
        return Err(Error::InvalidSpec(format!(
            "{name} must have order one (zero constant term, nonzero coefficient of t)"
        )));
    }
    Ok(())
}

pub(crate) fn require_rows(precision: usize, rows: usize) -> Result<()> {
    if rows > 0 && precision + 1 < rows {
        return Err(Error::Precision {
            needed: rows - 1,
            available: precision,
        });
    }
    Ok(())
}

/// Lower-triangular window whose column `k` is the `k`-th series of `columns`.
pub(crate) fn matrix_from_columns(columns: &[Series], rows: usize) -> LowerTriMatrix {
    LowerTriMatrix::from_fn(rows, |n, k| columns[k].coeff(n).clone())
}

/// Riordan array `(g, f)`: column `k` has generating function `g f^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct RiordanSpec {
    pub g: Series,
    pub f: Series,
}

impl RiordanSpec {
    pub fn new(g: Series, f: Series) -> Result<Self> {
        require_unit(&g, "g")?;
        require_order_one(&f, "f")?;
        Ok(RiordanSpec { g, f })
    }

    pub fn identity(precision: usize) -> Self {
        RiordanSpec {
            g: Series::one(precision),
            f: Series::var(precision),
        }
    }

    pub fn precision(&self) -> usize {
        self.g.precision().min(self.f.precision())
    }
}

pub fn build_riordan(spec: &RiordanSpec, rows: usize) -> Result<LowerTriMatrix> {
    require_rows(spec.precision(), rows)?;
    let n = rows.saturating_sub(1);
    let g = spec.g.truncate(n);
    let f = spec.f.truncate(n);
    let mut cols = Vec::with_capacity(rows);
    let mut col = g;
    for _ in 0..rows {
        let next = &col * &f;
        cols.push(col);
        col = next;
    }
    Ok(matrix_from_columns(&cols, rows))
}

/// `(g, f)(d, h) = (g d(f), h(f))`.
pub fn riordan_mul(a: &RiordanSpec, b: &RiordanSpec) -> Result<RiordanSpec> {
    Ok(RiordanSpec {
        g: &a.g * &b.g.compose(&a.f)?,
        f: b.f.compose(&a.f)?,
    })
}

/// `(g, f)^{-1} = (1 / g(fbar), fbar)`.
pub fn riordan_inv(a: &RiordanSpec) -> Result<RiordanSpec> {
    let fbar = a.f.comp_inverse()?;
    Ok(RiordanSpec {
        g: a.g.compose(&fbar)?.recip()?,
        f: fbar,
    })
}

/// The `A`- and `Z`-sequences: `A = t / fbar`, `Z = (1 - g0 / g(fbar)) / fbar`.
pub fn riordan_a_z(spec: &RiordanSpec) -> Result<(Series, Series)> {
    let fbar = spec.f.comp_inverse()?;
    let n = fbar.precision();
    let a = Series::var(n).div(&fbar)?;
    let g0 = spec.g.coeff(0).clone();
    let ratio = spec.g.compose(&fbar)?.recip()?.scale(&g0);
    let z = (&Series::one(n) - &ratio).div(&fbar)?;
    Ok((a, z))
}

/// Production matrix with columns `(Z, A, tA, t^2 A, ...)`.
pub fn riordan_production(spec: &RiordanSpec, size: usize) -> Result<DenseMatrix> {
    if spec.precision() < size {
        return Err(Error::Precision {
            needed: size,
            available: spec.precision(),
        });
    }
    let (a, z) = riordan_a_z(spec)?;
    Ok(DenseMatrix::from_fn(size, size, |i, j| match j {
        0 => z.coeff(i).clone(),
        _ if i + 1 >= j => a.coeff(i + 1 - j).clone(),
        _ => Rational::zero(),
    }))
}

/// Checks `R P = R` with its first row removed on a `size`-row window.
/// Returns the first falsified cell, if any.
pub fn riordan_verify_production(spec: &RiordanSpec, size: usize) -> Result<Option<(usize, usize)>> {
    let p = riordan_production(spec, size)?;
    let r = build_riordan(spec, size + 1)?;
    let window = r.truncate(size).to_dense();
    let rp = window.mul(&p)?;
    for n in 0..size {
        for k in 0..size {
            if rp.get(n, k) != &r.get(n + 1, k) {
                return Ok(Some((n, k)));
            }
        }
    }
    Ok(None)
}

/// Quasi-Riordan array `[g, f]` with columns `(g, f, tf, t^2 f, ...)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiSpec {
    pub g: Series,
    pub f: Series,
}

impl QuasiSpec {
    pub fn new(g: Series, f: Series) -> Result<Self> {
        require_unit(&g, "g")?;
        require_order_one(&f, "f")?;
        Ok(QuasiSpec { g, f })
    }

    pub fn identity(precision: usize) -> Self {
        QuasiSpec {
            g: Series::one(precision),
            f: Series::var(precision),
        }
    }

    pub fn precision(&self) -> usize {
        self.g.precision().min(self.f.precision())
    }
}

pub fn build_quasi(spec: &QuasiSpec, rows: usize) -> Result<LowerTriMatrix> {
    require_rows(spec.precision(), rows)?;
    let mut cols = Vec::with_capacity(rows);
    if rows > 0 {
        cols.push(spec.g.clone());
    }
    let mut col = spec.f.clone();
    for _ in 1..rows {
        let next = col.shift(1)?;
        cols.push(col);
        col = next;
    }
    Ok(matrix_from_columns(&cols, rows))
}

/// `[g, f] u = g u(0) + (f/t)(u - u(0))`.
pub fn quasi_apply(spec: &QuasiSpec, u: &Series) -> Result<Series> {
    let u0 = u.coeff(0).clone();
    let f_over_t = spec.f.shift(-1)?;
    let tail = &f_over_t * &u.add_constant(&-u0.clone());
    Ok(&spec.g.scale(&u0) + &tail)
}

/// `[g, f][d, h] = [g d(0) + (f/t)(d - d(0)), f h / t]`.
pub fn quasi_mul(a: &QuasiSpec, b: &QuasiSpec) -> Result<QuasiSpec> {
    let f_over_t = a.f.shift(-1)?;
    Ok(QuasiSpec {
        g: quasi_apply(a, &b.g)?,
        f: &f_over_t * &b.f,
    })
}

/// Almost-Riordan array `(d | g, f)` with columns `(d, tg, tgf, tgf^2, ...)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlmostSpec {
    pub d: Series,
    pub g: Series,
    pub f: Series,
}

impl AlmostSpec {
    pub fn new(d: Series, g: Series, f: Series) -> Result<Self> {
        require_unit(&d, "d")?;
        require_unit(&g, "g")?;
        require_order_one(&f, "f")?;
        Ok(AlmostSpec { d, g, f })
    }

    pub fn identity(precision: usize) -> Self {
        AlmostSpec {
            d: Series::one(precision),
            g: Series::one(precision),
            f: Series::var(precision),
        }
    }

    pub fn precision(&self) -> usize {
        self.d.precision().min(self.g.precision()).min(self.f.precision())
    }
}

pub fn build_almost(spec: &AlmostSpec, rows: usize) -> Result<LowerTriMatrix> {
    require_rows(spec.precision(), rows)?;
    let mut cols = Vec::with_capacity(rows);
    if rows > 0 {
        cols.push(spec.d.clone());
    }
    let mut col = spec.g.shift(1)?;
    for _ in 1..rows {
        let next = &col * &spec.f;
        cols.push(col);
        col = next;
    }
    Ok(matrix_from_columns(&cols, rows))
}

/// `(a | g, f)(b | d, h) = (b0 a + (tg/f)(b(f) - b0) | g d(f), h(f))`.
pub fn almost_mul(x: &AlmostSpec, y: &AlmostSpec) -> Result<AlmostSpec> {
    let b0 = y.d.coeff(0).clone();
    let tg_over_f = x.g.div(&x.f.shift(-1)?)?;
    let tail = &tg_over_f * &y.d.compose(&x.f)?.add_constant(&-b0.clone());
    Ok(AlmostSpec {
        d: &x.d.scale(&b0) + &tail,
        g: &x.g * &y.g.compose(&x.f)?,
        f: y.f.compose(&x.f)?,
    })
}

/// `(d | g, f) = [d, tg] (1 | 1, f)`.
pub fn almost_factorize(spec: &AlmostSpec) -> Result<(QuasiSpec, AlmostSpec)> {
    let n = spec.precision();
    let quasi = QuasiSpec {
        g: spec.d.clone(),
        f: spec.g.shift(1)?,
    };
    let lagrange = AlmostSpec {
        d: Series::one(n),
        g: Series::one(n),
        f: spec.f.clone(),
    };
    Ok((quasi, lagrange))
}
