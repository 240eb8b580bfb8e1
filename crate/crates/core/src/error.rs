use thiserror::Error;

/// Errors produced by series arithmetic, array construction and verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division order error: divisor has order {divisor}, dividend has order {dividend}")]
    DivisionOrder { divisor: usize, dividend: usize },

    #[error("division by a series that is zero to its precision")]
    ZeroDivisor,

    #[error("composition requires an inner series with zero constant term")]
    CompositionOrder,

    #[error("expected a series of order {expected}, found {}", fmt_order(.found))]
    Order {
        expected: usize,
        found: Option<usize>,
    },

    #[error("{value} has no rational {n}-th root")]
    IrrationalRoot { n: u32, value: String },

    #[error("series has zero constant term; shift out the power of t first")]
    ZeroConstant,

    #[error("cannot shift by {shift}: series has order {}", fmt_order(.order))]
    ShiftOrder { shift: i64, order: Option<usize> },

    #[error("coefficient of t^{index} is nonzero but the support must be {offset} mod {stride}")]
    StrideViolation {
        index: usize,
        stride: usize,
        offset: usize,
    },

    #[error("stride mismatch: {left} vs {right}")]
    StrideMismatch { left: usize, right: usize },

    #[error("insufficient precision: need {needed}, have {available}")]
    Precision { needed: usize, available: usize },

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("singular system: {0}")]
    SingularSystem(String),

    #[error("inconsistent recurrence at cell ({row}, {col})")]
    Inconsistent { row: usize, col: usize },

    #[error("sequence term {term} is needed for cell ({row}, {col}) but is not available")]
    InsufficientSequence { row: usize, col: usize, term: usize },

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("malformed matrix: {0}")]
    MatrixFormat(String),
}

fn fmt_order(order: &Option<usize>) -> String {
    match order {
        Some(o) => o.to_string(),
        None => "infinity".to_string(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
