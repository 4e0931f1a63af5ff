use thiserror::Error;

/// Crate-wide error type. Every rejection carries enough context to
/// reproduce the offending call.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = {0} exceeds the desk-scale limit 2^31")]
    PrimeTooLarge(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("residue {0} must be nonzero mod {1}")]
    ZeroResidue(u64, u64),
    #[error("interval wraps mod {p}: start {start}, length {length}")]
    IntervalWraps { start: i64, length: u64, p: u64 },
    #[error("enumeration guard exceeded: estimated {estimate:.3e} points > {limit:.1e}")]
    GuardExceeded { estimate: f64, limit: f64 },
    #[error("dimension {0} exceeds desk-scale cap {1}")]
    DimensionTooLarge(usize, usize),
    #[error("coefficient hypothesis violated at index {index}: |{value}| >= bound {bound:.6e}")]
    HypothesisViolated {
        index: usize,
        value: String,
        bound: f64,
    },
    #[error("polynomial must be nonzero")]
    ZeroPolynomial,
    #[error("polynomial must be non-constant")]
    ConstantPolynomial,
    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { divisor: String, dividend: String },
    #[error("root iteration did not converge; worst residual {residual:.3e}")]
    NonConvergence { residual: f64 },
    #[error("internal cross-check failed: {0}")]
    CrossCheckFailed(String),
    #[error("work budget exceeded: estimated {estimate:.3e} ops > budget {budget:.3e}; first offenders: {offenders}")]
    BudgetExceeded {
        estimate: f64,
        budget: f64,
        offenders: String,
    },
    #[error("fit rejected: {0}")]
    DegenerateFit(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
