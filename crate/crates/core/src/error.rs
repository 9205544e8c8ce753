use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Two arguments live over different groups or alphabets.
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    /// A Cayley table failed the group-axiom check.
    #[error("invalid cayley table: {0}")]
    InvalidCayley(String),

    /// An element does not belong to the group it was used with.
    #[error("invalid element: {0}")]
    InvalidElement(String),

    /// A translated read fell outside the supplied window.
    #[error("out of window: {0}")]
    OutOfWindow(String),

    /// A pattern or rule violated a structural invariant.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The write symbol equals p(e); the resulting CA is the identity.
    #[error("write symbol {0} equals p(e); the pattern CA would be the identity")]
    IdentityRule(u8),

    /// A dense table or search space would exceed the configured cap.
    #[error("table of {cells} entries exceeds the cap of {cap}; raise the cap to proceed")]
    TableTooLarge { cells: u128, cap: usize },

    /// The natural order is only defined on idempotents.
    #[error("input CA is not idempotent; the natural order is defined on idempotents")]
    NotIdempotent,

    /// Operation requires a specific carrier group.
    #[error("unsupported carrier: {0}")]
    UnsupportedCarrier(String),

    /// The trimmed subshift graph is empty.
    #[error("empty subshift: entropy undefined")]
    EmptySubshift,

    /// Power iteration failed to converge.
    #[error("power iteration did not converge within {0} iterations")]
    NoConvergence(u64),

    /// A stated precondition was violated by the caller.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Input text could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for CLI use: 3 for size-cap refusals, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TableTooLarge { .. } => 3,
            _ => 2,
        }
    }
}
