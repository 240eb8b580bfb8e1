//! Cell-by-cell verification reports.

use std::fmt;

use crate::fps::{fmt_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellFailure {
    pub row: usize,
    pub col: usize,
    pub expected: Rational,
    pub found: Rational,
}

impl fmt::Display for CellFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cell ({}, {}): expected {}, found {}",
            self.row,
            self.col,
            fmt_rational(&self.expected),
            fmt_rational(&self.found)
        )
    }
}

/// Outcome of checking a family of cell identities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verification {
    pub checked: usize,
    pub failures: Vec<CellFailure>,
}

impl Verification {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&CellFailure> {
        self.failures.first()
    }

    /// Records one comparison; `expected` is the stored cell, `found` the recomputed value.
    pub fn record(&mut self, row: usize, col: usize, expected: &Rational, found: Rational) {
        self.checked += 1;
        if expected != &found {
            self.failures.push(CellFailure {
                row,
                col,
                expected: expected.clone(),
                found,
            });
        }
    }

    pub fn merge(&mut self, other: Verification) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.first_failure() {
            None => write!(f, "OK ({} cells)", self.checked),
            Some(c) => write!(
                f,
                "FAILED at {} ({} of {} cells wrong)",
                c,
                self.failures.len(),
                self.checked
            ),
        }
    }
}
