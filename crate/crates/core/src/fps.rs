//! Truncated formal power series over the rationals.
//!
//! A [`Series`] stores the coefficients `c_0..=c_N` of a power series in `t`
//! together with its precision `N`: every coefficient above `N` is unknown.
//! Binary operations return the minimum precision of their inputs (adjusted
//! where an operation sheds known coefficients, e.g. division by `t^k`), so a
//! result never claims more than its inputs determine.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficient (always kept in lowest terms, positive denominator).
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p/q`, or `n` when the denominator is one.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `n` or `p/q` (optional leading minus).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Rational `n`-th root of `q`, if one exists. For even `n` the positive root is returned.
pub fn rational_root(q: &Rational, n: u32) -> Result<Rational> {
    let irrational = || Error::IrrationalRoot {
        n,
        value: fmt_rational(q),
    };
    if n == 0 {
        return Err(irrational());
    }
    if q.is_negative() && n.is_multiple_of(2) {
        return Err(irrational());
    }
    let root_of = |x: &BigInt| -> Option<BigInt> {
        let r = x.abs().nth_root(n);
        (num_traits::pow(r.clone(), n as usize) == x.abs()).then_some(r)
    };
    let p = root_of(q.numer()).ok_or_else(irrational)?;
    let d = root_of(q.denom()).ok_or_else(irrational)?;
    let root = Rational::new(p, d);
    Ok(if q.is_negative() { -root } else { root })
}

/// Coefficients `0..=count` of `u^alpha` with constant term `v0` (a chosen
/// value of `u_0^alpha`), by J. C. P. Miller's recurrence.
fn miller_power(u: &[Rational], alpha: &Rational, v0: Rational, count: usize) -> Vec<Rational> {
    let alpha1 = alpha + Rational::one();
    let mut v = Vec::with_capacity(count + 1);
    v.push(v0);
    for k in 1..=count {
        let mut acc = Rational::zero();
        for j in 1..=k.min(u.len() - 1) {
            let uj = &u[j];
            if uj.is_zero() {
                continue;
            }
            let w = &alpha1 * rat(j as i64) - rat(k as i64);
            acc += w * uj * &v[k - j];
        }
        v.push(acc / (rat(k as i64) * &u[0]));
    }
    v
}

/// A power series in `t` known up to and including the coefficient of `t^N`.
#[derive(Clone, Debug)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    /// Builds a series from its known coefficients; precision is `coeffs.len() - 1`.
    ///
    /// Panics on an empty vector: a series always knows at least its constant term.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Series { coeffs }
    }

    /// A polynomial with the given integer coefficients, known exactly up to `precision`.
    pub fn from_ints(coeffs: &[i64], precision: usize) -> Self {
        let mut c: Vec<Rational> = coeffs.iter().take(precision + 1).map(|&x| rat(x)).collect();
        c.resize(precision + 1, Rational::zero());
        Series { coeffs: c }
    }

    /// A polynomial with the given rational coefficients, known exactly up to `precision`.
    pub fn from_rationals(coeffs: &[Rational], precision: usize) -> Self {
        let mut c: Vec<Rational> = coeffs.iter().take(precision + 1).cloned().collect();
        c.resize(precision + 1, Rational::zero());
        Series { coeffs: c }
    }

    pub fn zero(precision: usize) -> Self {
        Series {
            coeffs: vec![Rational::zero(); precision + 1],
        }
    }

    pub fn one(precision: usize) -> Self {
        Self::constant(Rational::one(), precision)
    }

    pub fn constant(c: Rational, precision: usize) -> Self {
        let mut s = Self::zero(precision);
        s.coeffs[0] = c;
        s
    }

    /// `c * t^k` known up to `precision`.
    pub fn monomial(c: Rational, k: usize, precision: usize) -> Self {
        let mut s = Self::zero(precision);
        if k <= precision {
            s.coeffs[k] = c;
        }
        s
    }

    /// The series `t`.
    pub fn var(precision: usize) -> Self {
        Self::monomial(Rational::one(), 1, precision)
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `t^n`. Panics when `n` exceeds the precision.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.coeffs.get(n)
    }

    /// Least index of a nonzero coefficient; `None` when every known coefficient vanishes.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.order().is_none()
    }

    pub fn truncate(&self, precision: usize) -> Self {
        let p = precision.min(self.precision());
        Series {
            coeffs: self.coeffs[..=p].to_vec(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Adds a constant to the series.
    pub fn add_constant(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    pub fn mul_truncated(&self, other: &Series, precision: usize) -> Self {
        let n = precision.min(self.precision()).min(other.precision());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series { coeffs: out }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Series::one(self.precision());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Quotient `self / divisor`, with precision `min(N_a, N_b) - order(divisor)`.
    pub fn div(&self, divisor: &Series) -> Result<Series> {
        let vb = divisor.order().ok_or(Error::ZeroDivisor)?;
        if let Some(va) = self.order() {
            if vb > va {
                return Err(Error::DivisionOrder {
                    divisor: vb,
                    dividend: va,
                });
            }
        }
        let common = self.precision().min(divisor.precision());
        if common < vb {
            return Err(Error::Precision {
                needed: vb,
                available: common,
            });
        }
        let n = common - vb;
        let a = &self.coeffs[vb..];
        let b = &divisor.coeffs[vb..];
        let inv_b0 = b[0].recip();
        let mut q: Vec<Rational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = a[k].clone();
            for i in 1..=k {
                if !b[i].is_zero() {
                    acc -= &b[i] * &q[k - i];
                }
            }
            q.push(acc * &inv_b0);
        }
        Ok(Series { coeffs: q })
    }

    /// Multiplicative inverse `1 / self`; requires a nonzero constant term.
    pub fn recip(&self) -> Result<Series> {
        Series::one(self.precision()).div(self)
    }

    /// `outer(inner)` by Horner evaluation, truncated to `min(N_outer, N_inner)`.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::CompositionOrder);
        }
        let n = self.precision().min(inner.precision());
        let mut acc = Series::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul_truncated(inner, n);
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse of an order-one series, by Lagrange inversion:
    /// `[t^n] fbar = (1/n) [t^(n-1)] (f/t)^(-n)`.
    pub fn comp_inverse(&self) -> Result<Series> {
        if self.order() != Some(1) {
            return Err(Error::Order {
                expected: 1,
                found: self.order(),
            });
        }
        let n = self.precision();
        let u = &self.coeffs[1..];
        let mut out = vec![Rational::zero(); n + 1];
        for k in 1..=n {
            let alpha = rat(-(k as i64));
            let v0 = u[0].recip().pow(k as i32);
            let v = miller_power(u, &alpha, v0, k - 1);
            out[k] = &v[k - 1] / rat(k as i64);
        }
        Ok(Series { coeffs: out })
    }

    /// The `n`-th root of a series with nonzero constant term, normalised so that
    /// its constant term is the rational root of `u(0)` (positive for even `n`).
    pub fn nth_root_unit(&self, n: u32) -> Result<Series> {
        let u0 = &self.coeffs[0];
        if u0.is_zero() {
            return Err(Error::ZeroConstant);
        }
        if n == 0 {
            return Err(Error::InvalidSpec("root index must be positive".into()));
        }
        let v0 = rational_root(u0, n)?;
        let v = miller_power(&self.coeffs, &ratio(1, n as i64), v0, self.precision());
        Ok(Series { coeffs: v })
    }

    /// Multiplies by `t^k`. For `k > 0` the precision stays at `N` (the top `k`
    /// coefficients fall off); for `k < 0` it drops to `N + k`.
    pub fn shift(&self, k: i64) -> Result<Series> {
        let n = self.precision();
        if k >= 0 {
            let k = k as usize;
            let mut out = vec![Rational::zero(); n + 1];
            if k <= n {
                out[k..=n].clone_from_slice(&self.coeffs[..=n - k]);
            }
            return Ok(Series { coeffs: out });
        }
        let d = k.unsigned_abs() as usize;
        match self.order() {
            Some(v) if v < d => {
                return Err(Error::ShiftOrder {
                    shift: k,
                    order: Some(v),
                })
            }
            _ => {}
        }
        if n < d {
            return Err(Error::Precision {
                needed: d,
                available: n,
            });
        }
        Ok(Series {
            coeffs: self.coeffs[d..].to_vec(),
        })
    }

    /// Checks that the support lies in `{offset + stride * k}`.
    pub fn check_stride(&self, stride: usize, offset: usize) -> Result<()> {
        if stride == 0 || offset >= stride {
            return Err(Error::InvalidSpec(format!(
                "offset {offset} must be below stride {stride}"
            )));
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % stride != offset && !c.is_zero() {
                return Err(Error::StrideViolation {
                    index: i,
                    stride,
                    offset,
                });
            }
        }
        Ok(())
    }

    /// Extracts `k -> [t^(offset + stride*k)]`, precision `floor((N - offset)/stride)`.
    pub fn decimate(&self, stride: usize, offset: usize) -> Result<Series> {
        self.check_stride(stride, offset)?;
        let n = self.precision();
        if n < offset {
            return Err(Error::Precision {
                needed: offset,
                available: n,
            });
        }
        let m = (n - offset) / stride;
        Ok(Series {
            coeffs: (0..=m)
                .map(|k| self.coeffs[offset + stride * k].clone())
                .collect(),
        })
    }

    /// Inverse of [`Series::decimate`]: places coefficient `k` at index
    /// `offset + stride*k`. The off-stride coefficients between the last known
    /// on-stride index and the next one are certified zero, so the precision is
    /// `offset + stride*(K + 1) - 1`.
    pub fn inflate(&self, stride: usize, offset: usize) -> Series {
        let k = self.precision();
        let n = offset + stride * (k + 1) - 1;
        let mut out = vec![Rational::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[offset + stride * i] = c.clone();
        }
        Series { coeffs: out }
    }

    /// Formal derivative; precision drops by one.
    pub fn derivative(&self) -> Result<Series> {
        let n = self.precision();
        if n == 0 {
            return Err(Error::Precision {
                needed: 1,
                available: 0,
            });
        }
        Ok(Series {
            coeffs: (1..=n)
                .map(|i| &self.coeffs[i] * rat(i as i64))
                .collect(),
        })
    }

    /// True when the two series agree on their first `count` coefficients
    /// (both must know that many).
    pub fn agrees_to(&self, other: &Series, count: usize) -> bool {
        count <= self.coeffs.len()
            && count <= other.coeffs.len()
            && self.coeffs[..count] == other.coeffs[..count]
    }
}

/// Equality up to the smaller of the two precisions.
impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        let n = self.precision().min(other.precision());
        self.coeffs[..=n] == other.coeffs[..=n]
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let n = self.precision().min(rhs.precision());
        Series {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let n = self.precision().min(rhs.precision());
        Series {
            coeffs: (0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(),
        }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.mul_truncated(rhs, usize::MAX)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = fmt_rational(&c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != "1" {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.precision() + 1)
    }
}

/// A series certified to have support in `{offset + stride*k : k >= 0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct StridedSeries {
    series: Series,
    stride: usize,
    offset: usize,
}

impl StridedSeries {
    pub fn new(series: Series, stride: usize, offset: usize) -> Result<Self> {
        if stride == 0 || offset >= stride {
            return Err(Error::InvalidSpec(format!(
                "offset {offset} must lie in 0..{stride}"
            )));
        }
        series.check_stride(stride, offset)?;
        Ok(StridedSeries {
            series,
            stride,
            offset,
        })
    }

    pub fn series(&self) -> &Series {
        &self.series
    }

    pub fn into_series(self) -> Series {
        self.series
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    /// Coefficients on the stride, as a series in `t^stride`.
    pub fn decimated(&self) -> Series {
        self.series
            .decimate(self.stride, self.offset)
            .expect("stride certified at construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64], n: usize) -> Series {
        Series::from_ints(c, n)
    }

    /// Naive power-series oracle: sum_k a_k * b^k via repeated convolution.
    fn compose_oracle(a: &Series, b: &Series) -> Series {
        let n = a.precision().min(b.precision());
        let mut out = Series::zero(n);
        let mut p = Series::one(n);
        for k in 0..=n {
            out = &out + &p.scale(a.coeff(k));
            p = p.mul_truncated(b, n);
        }
        out
    }

    #[test]
    fn add_examples() {
        assert_eq!(&s(&[1, 1], 4) + &s(&[1, -1], 4), s(&[2], 4));
        let geo = Series::one(6).div(&s(&[1, -1], 6)).unwrap();
        assert_eq!(&geo + &Series::zero(6), geo);
        let a = s(&[1, 2, 3], 2);
        let b = Series::from_rationals(&[ratio(1, 2), ratio(1, 3)], 2);
        let sum = &a + &b;
        assert_eq!(sum.coeffs(), &[ratio(3, 2), ratio(7, 3), rat(3)]);
    }

    #[test]
    fn add_takes_min_precision() {
        assert_eq!((&s(&[1], 3) + &s(&[1], 7)).precision(), 3);
    }

    #[test]
    fn mul_examples() {
        let geo = Series::from_ints(&[1; 10], 9);
        assert_eq!(&s(&[1, -1], 9) * &geo, Series::one(9));
        assert_eq!(&Series::var(5) * &Series::var(5), Series::monomial(rat(1), 2, 5));
        // (1+t^3)(1+2t^3+3t^6+4t^9)
        let a = s(&[1, 0, 0, 1], 9);
        let b = s(&[1, 0, 0, 2, 0, 0, 3, 0, 0, 4], 9);
        assert_eq!(&a * &b, s(&[1, 0, 0, 3, 0, 0, 5, 0, 0, 7], 9));
    }

    #[test]
    fn div_examples() {
        assert_eq!(
            Series::monomial(rat(1), 2, 6).div(&Series::var(6)).unwrap(),
            Series::var(5)
        );
        // 1/(1-t^2): convolution oracle says (1-t^2) * q = 1 forces q_n = q_{n-2}.
        let q = Series::one(8).div(&s(&[1, 0, -1], 8)).unwrap();
        assert_eq!(q, s(&[1, 0, 1, 0, 1, 0, 1, 0, 1], 8));
        let q = s(&[1, 0, 3, 0, 1], 10).div(&s(&[1, 0, 2], 10)).unwrap();
        assert_eq!(q, s(&[1, 0, 1, 0, -1, 0, 2, 0, -4, 0, 8], 10));
    }

    #[test]
    fn div_errors() {
        assert_eq!(
            Series::one(4).div(&Series::var(4)),
            Err(Error::DivisionOrder {
                divisor: 1,
                dividend: 0
            })
        );
        assert_eq!(Series::one(4).div(&Series::zero(4)), Err(Error::ZeroDivisor));
    }

    #[test]
    fn div_precision_drops_by_divisor_order() {
        let q = s(&[0, 0, 1, 1], 8).div(&s(&[0, 0, 1], 6)).unwrap();
        assert_eq!(q.precision(), 4);
    }

    #[test]
    fn compose_examples() {
        let g = s(&[3, 1, 4, 1, 5], 6);
        assert_eq!(g.compose(&Series::var(6)).unwrap(), g);
        // t/(1-t) o t/(1-t) = t/(1-2t)
        let f = Series::var(8).div(&s(&[1, -1], 8)).unwrap();
        let ff = f.compose(&f).unwrap();
        let expect = Series::var(8).div(&s(&[1, -2], 8)).unwrap();
        assert_eq!(ff, expect);
        assert_eq!(ff, compose_oracle(&f, &f));
    }

    #[test]
    fn compose_rejects_constant_inner() {
        assert_eq!(
            Series::var(3).compose(&Series::one(3)),
            Err(Error::CompositionOrder)
        );
    }

    #[test]
    fn comp_inverse_examples() {
        assert_eq!(Series::var(5).comp_inverse().unwrap(), Series::var(5));
        let f = Series::var(10).div(&s(&[1, -1], 10)).unwrap();
        let inv = f.comp_inverse().unwrap();
        let expect = Series::var(10).div(&s(&[1, 1], 10)).unwrap();
        assert_eq!(inv, expect);
        assert_eq!(compose_oracle(&f, &inv), Series::var(10));
    }

    #[test]
    fn comp_inverse_of_t_over_sqrt() {
        // t / sqrt(1 - t^2)  has inverse  t / sqrt(1 + t^2)
        let n = 12;
        let h = Series::var(n)
            .div(&s(&[1, 0, -1], n).nth_root_unit(2).unwrap())
            .unwrap();
        let hbar = Series::var(n)
            .div(&s(&[1, 0, 1], n).nth_root_unit(2).unwrap())
            .unwrap();
        assert_eq!(h.comp_inverse().unwrap(), hbar);
    }

    #[test]
    fn comp_inverse_general_leading_coefficient() {
        let f = Series::from_rationals(&[rat(0), ratio(-2, 3), rat(1), ratio(1, 5)], 8);
        let inv = f.comp_inverse().unwrap();
        assert_eq!(f.compose(&inv).unwrap(), Series::var(8));
        assert_eq!(inv.compose(&f).unwrap(), Series::var(8));
    }

    #[test]
    fn comp_inverse_order_error() {
        assert!(matches!(
            s(&[0, 0, 1], 4).comp_inverse(),
            Err(Error::Order { expected: 1, .. })
        ));
    }

    #[test]
    fn nth_root_examples() {
        assert_eq!(Series::one(5).nth_root_unit(3).unwrap(), Series::one(5));
        assert_eq!(s(&[1, 2, 1], 6).nth_root_unit(2).unwrap(), s(&[1, 1], 6));
        let u = Series::one(12).div(&s(&[1, 0, 0, -1], 12)).unwrap();
        let r = u.nth_root_unit(3).unwrap();
        assert_eq!(r.pow(3), u);
        // (1-x)^(-1/3) = 1 + x/3 + 2x^2/9 + 14x^3/81 + ...
        assert_eq!(r.coeff(3), &ratio(1, 3));
        assert_eq!(r.coeff(6), &ratio(2, 9));
        assert_eq!(r.coeff(9), &ratio(14, 81));
    }

    #[test]
    fn nth_root_errors() {
        assert!(matches!(
            s(&[2, 1], 3).nth_root_unit(2),
            Err(Error::IrrationalRoot { .. })
        ));
        assert!(matches!(
            s(&[-4, 1], 3).nth_root_unit(2),
            Err(Error::IrrationalRoot { .. })
        ));
        assert_eq!(s(&[0, 1], 3).nth_root_unit(2), Err(Error::ZeroConstant));
        assert_eq!(
            s(&[-8], 3).nth_root_unit(3).unwrap(),
            Series::constant(rat(-2), 3)
        );
        assert_eq!(
            Series::constant(ratio(4, 9), 2).nth_root_unit(2).unwrap(),
            Series::constant(ratio(2, 3), 2)
        );
    }

    #[test]
    fn shift_examples() {
        let g = s(&[1, 2, 3], 5);
        assert_eq!(g.shift(1).unwrap(), s(&[0, 1, 2, 3], 5));
        assert_eq!(g.shift(1).unwrap().precision(), 5);
        assert_eq!(s(&[0, 0, 1, 0, 1], 6).shift(-2).unwrap(), s(&[1, 0, 1], 4));
        assert!(matches!(
            s(&[0, 1], 4).shift(-2),
            Err(Error::ShiftOrder { shift: -2, .. })
        ));
    }

    #[test]
    fn shift_unit_part_of_product() {
        // f1 f2 f3 of the triple example = t^3 (1+t^3) / ((1-t^3)(1+t^3)) = t^3/(1-t^3)
        let n = 12;
        let f1 = Series::var(n).div(&s(&[1, 0, 0, -1], n)).unwrap();
        let f2 = s(&[0, 1, 0, 0, 1], n);
        let f3 = Series::var(n).div(&s(&[1, 0, 0, 1], n)).unwrap();
        let prod = &(&f1 * &f2) * &f3;
        let unit = prod.shift(-3).unwrap();
        let oracle = Series::one(n).div(&s(&[1, 0, 0, -1], n)).unwrap();
        assert_eq!(unit, oracle);
        assert_eq!(unit.precision(), n - 3);
    }

    #[test]
    fn decimate_examples() {
        let a = Series::one(12).div(&s(&[1, 0, 0, 0, -1], 12)).unwrap();
        let d = a.decimate(2, 0).unwrap();
        assert_eq!(d, Series::one(6).div(&s(&[1, 0, -1], 6)).unwrap());
        assert_eq!(d.precision(), 6);
        let b = s(&[0, 1, 0, 1, 0, 1], 5);
        assert_eq!(b.decimate(2, 1).unwrap(), s(&[1, 1, 1], 2));
        assert_eq!(b.decimate(2, 1).unwrap().shift(1).unwrap(), s(&[0, 1, 1], 2));
        assert_eq!(Series::one(9).decimate(3, 0).unwrap(), Series::one(3));
        assert!(matches!(
            s(&[1, 1], 4).decimate(2, 0),
            Err(Error::StrideViolation { index: 1, .. })
        ));
    }

    #[test]
    fn inflate_inverts_decimate() {
        let a = s(&[0, 2, 0, 0, -1, 0, 0, 7], 9);
        let d = a.decimate(3, 1).unwrap();
        let back = d.inflate(3, 1);
        assert_eq!(back, a);
        assert_eq!(back.precision(), 9);
    }

    #[test]
    fn derivative_example() {
        assert_eq!(s(&[5, 1, 1, 1], 3).derivative().unwrap(), s(&[1, 2, 3], 2));
    }

    #[test]
    fn display_format() {
        let a = Series::from_rationals(&[rat(1), rat(-1), ratio(3, 2)], 3);
        assert_eq!(a.to_string(), "1 - t + 3/2*t^2 + O(t^4)");
        assert_eq!(Series::zero(1).to_string(), "0 + O(t^2)");
    }

    #[test]
    fn strided_series_rejects_off_stride() {
        assert!(StridedSeries::new(s(&[0, 1, 0, 1], 3), 2, 1).is_ok());
        assert!(StridedSeries::new(s(&[1, 1], 3), 2, 0).is_err());
        assert!(StridedSeries::new(s(&[1], 3), 2, 2).is_err());
    }

    #[test]
    fn rational_parse_and_format() {
        assert_eq!(parse_rational("-6/4"), Some(ratio(-3, 2)));
        assert_eq!(parse_rational("12"), Some(rat(12)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(fmt_rational(&ratio(-3, 2)), "-3/2");
    }
}
