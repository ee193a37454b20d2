use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("parse error on line {line}: {message}")]
    ParseLine { line: usize, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("graph has {n} vertices, limit for this operation is {limit}")]
    SizeLimit { n: usize, limit: usize },

    #[error("matrix is not positive definite (pivot {pivot} = {value:e})")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("eigensolver did not converge: off-diagonal residual {residual:e} after {sweeps} sweeps")]
    EigenNoConvergence { residual: f64, sweeps: usize },

    #[error("linear program failed: {0}")]
    Lp(String),

    #[error("semidefinite solver failed: {0}")]
    Solver(String),

    #[error("duality certification failed: primal {primal}, dual {dual}, gap {gap:e}")]
    DualityCertification { primal: f64, dual: f64, gap: f64 },

    #[error("certificate check `{claim}` failed: {detail}")]
    Certification { claim: String, detail: String },

    #[error("inequality chain violated: {0}")]
    ChainViolation(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn certification(claim: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Certification {
            claim: claim.into(),
            detail: detail.into(),
        }
    }

    /// True for errors originating in input parsing.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::ParseLine { .. })
    }

    /// True for numerical-engine failures (eigen, LP, SDP, duality).
    pub fn is_solver(&self) -> bool {
        matches!(
            self,
            Error::EigenNoConvergence { .. }
                | Error::Lp(_)
                | Error::Solver(_)
                | Error::DualityCertification { .. }
                | Error::NotPositiveDefinite { .. }
        )
    }
}
