use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative count: {0}")]
    NegativeCount(i64),

    #[error("negative delta: {0}")]
    NegativeDelta(i64),

    #[error("height mismatch: |r|={right}, |l|={left}")]
    HeightMismatch { right: u64, left: u64 },

    #[error("balance violated: d_top + ||r|| = {top_side} but d_bottom + ||l|| = {bottom_side}")]
    Unbalanced { top_side: i64, bottom_side: i64 },

    #[error("negative row width {width} at row {row}")]
    NegativeWidth { row: usize, width: i64 },

    #[error("multiset sizes differ: {0} vs {1}")]
    SizeMismatch(u64, u64),

    #[error(
        "tangency balance violated: ||alpha|| + ||beta|| = {got}, expected d_bottom = {expected}"
    )]
    TangencyBalance { got: u64, expected: u64 },

    #[error("unknown polygon family {0:?}")]
    UnknownFamily(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("generator index must be non-zero")]
    ZeroIndex,

    #[error("guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("result does not clear to integer coefficients: {0}")]
    NonIntegral(String),

    #[error("specialization has imaginary residue: {0}")]
    ImaginaryResidue(String),
}

pub type Result<T> = std::result::Result<T, Error>;
