#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use riordan_core::classic::AlmostSpec;
use riordan_core::multi_almost::MultiAlmostSpec;
use riordan_core::series_lang::evaluate_str;
use riordan_core::{rat, ratio, DenseMatrix, LowerTriMatrix, Rational, Series};

pub const SEED: u64 = 0x5EED_2024;

pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ stream)
}

pub fn ev(expr: &str, n: usize) -> Series {
    evaluate_str(expr, n).unwrap()
}

pub fn spec(ell: usize, b: &str, g: &str, f: &[&str], n: usize) -> MultiAlmostSpec {
    MultiAlmostSpec::new(ell, ev(b, n), ev(g, n), f.iter().map(|x| ev(x, n)).collect()).unwrap()
}

/// Triple almost-Riordan array of the first worked example.
pub fn e1(n: usize) -> MultiAlmostSpec {
    spec(3, "1/(1-t^6)", "1/(1-t^3)", &["t/(1-t^3)", "t*(1+t^3)", "t/(1+t^3)"], n)
}

/// Double almost-Riordan array built on the Fibonacci-Stanley tree.
pub fn e2(n: usize) -> MultiAlmostSpec {
    spec(2, "1/(1-t^4)", "1/(1-t^2)", &["t", "t/(1-t^2)"], n)
}

pub fn lower(rows: &[&[i64]]) -> LowerTriMatrix {
    LowerTriMatrix::from_int_rows(rows).unwrap()
}

pub const E1_MATRIX: &[&[i64]] = &[
    &[1],
    &[0, 1],
    &[0, 0, 1],
    &[0, 0, 0, 1],
    &[0, 1, 0, 0, 1],
    &[0, 0, 2, 0, 0, 1],
    &[1, 0, 0, 3, 0, 0, 1],
    &[0, 1, 0, 0, 2, 0, 0, 1],
    &[0, 0, 3, 0, 0, 3, 0, 0, 1],
    &[0, 0, 0, 5, 0, 0, 4, 0, 0, 1],
];

/// Production matrix as printed for the first example.
pub const E1_PRODUCTION: &[&[i64]] = &[
    &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    &[0, 1, 0, 0, 1, 0, 0, 0, 0, 0],
    &[0, 0, 2, 0, 0, 1, 0, 0, 0, 0],
    &[1, 0, 0, 1, 0, 0, 1, 0, 0, 0],
    &[0, 0, 0, 0, 1, 0, 0, 1, 0, 0],
    &[0, 0, -1, 0, 0, 1, 0, 0, 1, 0],
    &[-3, 0, 0, 3, 0, 0, 1, 0, 0, 1],
    &[0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
    &[0, 0, 1, 0, 0, 0, 0, 0, 1, 0],
    &[8, 0, 0, -5, 0, 0, 0, 0, 0, 1],
];

pub const E2_MATRIX: &[&[i64]] = &[
    &[1],
    &[0, 1],
    &[0, 0, 1],
    &[0, 1, 0, 1],
    &[1, 0, 1, 0, 1],
    &[0, 1, 0, 2, 0, 1],
    &[0, 0, 1, 0, 2, 0, 1],
    &[0, 1, 0, 3, 0, 3, 0, 1],
    &[1, 0, 1, 0, 3, 0, 3, 0, 1],
    &[0, 1, 0, 4, 0, 6, 0, 4, 0, 1],
];

/// Production matrix as printed for the second example (rows 3 and 9 are
/// printed with ten entries, the others with eleven).
pub const E2_PRODUCTION: &[&[i64]] = &[
    &[0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    &[0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0],
    &[1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0],
    &[0, 0, 0, 1, 0, 1, 0, 0, 0, 0],
    &[-1, 0, -1, 0, 1, 0, 1, 0, 0, 0, 0],
    &[0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0],
    &[2, 0, 2, 0, 0, 0, 1, 0, 1, 0, 0],
    &[0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0],
    &[-4, 0, -4, 0, 0, 0, 0, 0, 1, 0, 1],
    &[0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
];

/// Dyck paths with no valley at odd heights, by length and final height.
pub const DYCK_MATRIX: &[&[i64]] = &[
    &[1],
    &[0, 1],
    &[0, 0, 1],
    &[0, 1, 0, 1],
    &[0, 0, 2, 0, 1],
    &[0, 2, 0, 2, 0, 1],
    &[0, 0, 4, 0, 3, 0, 1],
    &[0, 4, 0, 5, 0, 3, 0, 1],
    &[0, 0, 9, 0, 8, 0, 4, 0, 1],
    &[0, 9, 0, 12, 0, 9, 0, 4, 0, 1],
];

/// Compression of the first example as printed (nine rows).
pub const E1_COMPRESSED: &[&[i64]] = &[
    &[1],
    &[0, 1],
    &[1, 1, 1],
    &[0, 1, 2, 1],
    &[1, 1, 3, 3, 1],
    &[0, 1, 4, 5, 2, 1],
    &[1, 1, 5, 7, 3, 3, 1],
    &[0, 1, 6, 9, 4, 6, 4, 1],
    &[1, 1, 7, 11, 5, 10, 9, 4, 1],
];

/// Compression of the second example as printed (seven rows).
pub const E2_COMPRESSED: &[&[i64]] = &[
    &[1],
    &[0, 1],
    &[1, 1, 1],
    &[0, 1, 1, 1],
    &[1, 1, 1, 2, 1],
    &[0, 1, 1, 3, 2, 1],
    &[1, 1, 1, 4, 3, 3, 1],
];

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

/// Cells `(row, col, expected, found)` where a dense matrix differs from a
/// printed prefix; each printed row is compared over its printed length.
pub fn dense_mismatches(m: &DenseMatrix, printed: &[&[i64]]) -> Vec<(usize, usize, i64, Rational)> {
    let mut out = Vec::new();
    for (i, row) in printed.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            let got = m.get(i, j);
            if *got != rat(x) {
                out.push((i, j, x, got.clone()));
            }
        }
    }
    out
}

pub fn lower_mismatches(m: &LowerTriMatrix, printed: &[&[i64]]) -> Vec<(usize, usize, i64, Rational)> {
    let mut out = Vec::new();
    for (i, row) in printed.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            let got = if i < m.size() { m.get(i, j) } else { rat(i64::MIN) };
            if got != rat(x) {
                out.push((i, j, x, got));
            }
        }
    }
    out
}

/// Small rational `p/q` with `|p| <= 3`, `1 <= q <= 3`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

pub fn small_nonzero<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let q = small_rational(rng);
        if q != rat(0) {
            return q;
        }
    }
}

/// A series `c_0 + c_1 t^l + ... + c_d t^{ld}` (plus `offset`), with `c_0 != 0`
/// and `d <= 3`, at precision `n`.
pub fn random_strided<R: Rng>(rng: &mut R, ell: usize, offset: usize, n: usize) -> Series {
    let mut c = vec![rat(0); n + 1];
    c[offset] = small_nonzero(rng);
    for k in 1..=3 {
        let i = offset + ell * k;
        if i <= n && rng.gen_bool(0.7) {
            c[i] = small_rational(rng);
        }
    }
    Series::new(c)
}

pub fn random_mar_spec<R: Rng>(rng: &mut R, ell: usize, n: usize) -> MultiAlmostSpec {
    let b = random_strided(rng, ell, 0, n);
    let g = random_strided(rng, ell, 0, n);
    let f = (0..ell).map(|_| random_strided(rng, ell, 1, n)).collect();
    MultiAlmostSpec::new(ell, b, g, f).unwrap()
}

pub fn random_almost_spec<R: Rng>(rng: &mut R, n: usize) -> AlmostSpec {
    let d = random_strided(rng, 1, 0, n);
    let g = random_strided(rng, 1, 0, n);
    let f = random_strided(rng, 1, 1, n);
    AlmostSpec::new(d, g, f).unwrap()
}

/// Unit series with arbitrary small coefficients up to degree `deg`.
pub fn random_unit<R: Rng>(rng: &mut R, deg: usize, n: usize) -> Series {
    let mut c = vec![rat(0); n + 1];
    c[0] = small_nonzero(rng);
    for x in c.iter_mut().take(deg.min(n) + 1).skip(1) {
        *x = small_rational(rng);
    }
    Series::new(c)
}

/// Equality of specs, requiring both to carry at least `min_precision`.
pub fn same_spec(x: &MultiAlmostSpec, y: &MultiAlmostSpec, min_precision: usize) -> bool {
    x.precision() >= min_precision && y.precision() >= min_precision && x == y
}
