//! Error type shared by all modules of the crate.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("series variable mismatch: `{0}` vs `{1}`")]
    VarMismatch(String, String),
    #[error("division by a series with zero constant term")]
    DivByZeroConstant,
    #[error("reversion requires f(0) = 0 and a nonzero linear coefficient")]
    BadReversion,
    #[error("series logarithm requires constant term 1, found {0}")]
    LogConstantNotOne(String),
    #[error("series exponential requires constant term 0")]
    ExpConstantNotZero,
    #[error("coefficient request ({0}, {1}) beyond truncation order {2}")]
    BeyondTruncation(u32, u32, u32),
    #[error("coefficient request at order {0} outside computed window [{1}, {2}]")]
    OutsideWindow(i64, i64, i64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series has no resolvable leading coefficient (all terms below noise floor)")]
    NoLeadingCoefficient,
    #[error("square root of a series with odd leading order or nonpositive leading coefficient")]
    BadSeriesSqrt,
    #[error("fixed-point truncation did not converge: {0}")]
    NonConvergentTruncation(String),
    #[error("insufficient data for extrapolation: have {have} points, need {need}")]
    InsufficientData { have: usize, need: usize },
    #[error("imaginary residue {residue} above tolerance {tol} (contour or branch error)")]
    ImaginaryResidue { residue: String, tol: String },
    #[error("quadrature did not converge: error estimate {0} above target {1}")]
    QuadratureNonConvergent(String, String),
    #[error("catastrophic cancellation: lost {lost} bits at working precision {prec}")]
    CatastrophicCancellation { lost: u32, prec: u32 },
    #[error("inverse Laplace methods disagree: {a} vs {b} (relative gap {gap})")]
    MethodDisagreement { a: String, b: String, gap: String },
    #[error(
        "independent extraction paths disagree: {a} vs {b} (relative gap {gap}, tolerance {tol})"
    )]
    PathDisagreement {
        a: String,
        b: String,
        gap: String,
        tol: String,
    },
    #[error("asymmetry factor {0} outside [-1, 1]")]
    OmegaOutOfRange(String),
    #[error("table audit failed: {0}")]
    TableAudit(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
