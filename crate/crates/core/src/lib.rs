//! Exact construction, group operations, sequence characterization and
//! compression of Riordan arrays and their multiple almost-Riordan
//! generalisations, over the rationals.

pub mod check;
pub mod classic;
pub mod compression;
pub mod error;
mod folded;
pub mod fps;
pub mod matrix;
pub mod multi;
pub mod multi_almost;
pub mod oracle;
pub mod series_lang;

pub use check::{CellFailure, Verification};
pub use error::{Error, Result};
pub use fps::{rat, ratio, Rational, Series, StridedSeries};
pub use matrix::{DenseMatrix, LowerTriMatrix, MatrixFile};
