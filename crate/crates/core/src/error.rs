use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A table failed an axiom scan. `witness` holds the offending indices.
    #[error("axiom violated: {axiom} (witness {witness:?})")]
    Axiom {
        axiom: &'static str,
        witness: Vec<usize>,
    },

    #[error("size cap exceeded: {what} has order {order}, cap is {cap}")]
    Cap {
        what: &'static str,
        order: usize,
        cap: usize,
    },

    #[error("objects live over different rings")]
    RingMismatch,

    #[error("submodule is not fully invariant in its ambient module")]
    NotFullyInvariant,

    #[error("ideal is not two-sided")]
    NotTwoSided,

    #[error("ideal is not proper")]
    ImproperIdeal,

    #[error("carrier is not closed: {0}")]
    NotClosed(String),

    #[error("zero module where a nonzero module is required")]
    ZeroModule,

    #[error("map is not order preserving: {0}")]
    NotMonotone(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("module is not injective: {0}")]
    NotInjective(String),

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unresolved reference `{0}`")]
    Unresolved(String),

    /// Two routes that must agree did not. Always an engine bug.
    #[error("internal inconsistency in {check}: {detail}")]
    Inconsistency { check: String, detail: String },
}

impl Error {
    pub(crate) fn axiom(axiom: &'static str, witness: &[usize]) -> Self {
        Error::Axiom {
            axiom,
            witness: witness.to_vec(),
        }
    }

    pub(crate) fn inconsistency(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Inconsistency {
            check: check.into(),
            detail: detail.into(),
        }
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Unresolved(_) => 1,
            Error::Cap { .. } => 2,
            Error::Inconsistency { .. } => 4,
            _ => 3,
        }
    }
}
