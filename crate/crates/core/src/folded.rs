//! Series in `t^l` (or `t * K[[t^l]]`) written as series in `s = t^l`.
//!
//! For `f_j = t phi_j(t^l)` the product `f_1 ... f_l` is `F(t^l)` with
//! `F(s) = s phi_1(s) ... phi_l(s)`, so `u(h) = u^(F)` for any `u` in
//! `K[[t^l]]` and `hbar^l = G(t^l)` with `G` the compositional inverse of `F`.
//! All group operations and sequence formulas can therefore be carried out
//! in `s` without extracting an `l`-th root.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fps::{Rational, Series};

/// Coefficients at `offset + ell*k`, after checking the support.
pub(crate) fn fold(s: &Series, ell: usize, offset: usize) -> Result<Series> {
    s.check_stride(ell, offset % ell)?;
    if let Some(v) = s.order() {
        if v < offset {
            return Err(Error::StrideViolation {
                index: v,
                stride: ell,
                offset,
            });
        }
    }
    let n = s.precision();
    if n < offset {
        return Err(Error::Precision {
            needed: offset,
            available: n,
        });
    }
    let m = (n - offset) / ell;
    Ok(Series::new(
        (0..=m).map(|k| s.coeff(offset + ell * k).clone()).collect(),
    ))
}

/// Places coefficient `k` at `offset + ell*k`.
pub(crate) fn unfold(x: &Series, ell: usize, offset: usize) -> Series {
    x.inflate(ell, offset)
}

/// `s * x`, which knows one more coefficient than `x`.
pub(crate) fn times_s(x: &Series) -> Series {
    let mut c = Vec::with_capacity(x.coeffs().len() + 1);
    c.push(Rational::zero());
    c.extend_from_slice(x.coeffs());
    Series::new(c)
}

/// Product of a list of series (the empty product is `1` at `precision`).
pub(crate) fn product<'a>(items: impl IntoIterator<Item = &'a Series>, precision: usize) -> Series {
    items
        .into_iter()
        .fold(Series::one(precision), |acc, x| &acc * x)
}

/// Folded multipliers `phi_j` of `f_1, ..., f_l` with `F = s phi_1 ... phi_l`
/// and its compositional inverse `G`.
#[derive(Clone, Debug)]
pub(crate) struct Multipliers {
    pub phi: Vec<Series>,
    pub big_f: Series,
    pub big_g: Series,
}

impl Multipliers {
    pub fn new(phi: Vec<Series>) -> Result<Self> {
        let k = phi.iter().map(Series::precision).min().unwrap_or(0);
        let big_f = times_s(&product(phi.iter(), k));
        let big_g = big_f.comp_inverse()?;
        Ok(Multipliers {
            phi,
            big_f,
            big_g,
        })
    }

    pub fn from_f(ell: usize, f: &[Series]) -> Result<Self> {
        let phi = f
            .iter()
            .map(|fj| fold(fj, ell, 1))
            .collect::<Result<Vec<_>>>()?;
        Self::new(phi)
    }

    /// `phi_j(0) = [t] f_j`.
    pub fn leading(&self, j: usize) -> &Rational {
        self.phi[j].coeff(0)
    }
}
