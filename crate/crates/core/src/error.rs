use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A table or loop would exceed the configured resource cap.
    #[error("capacity exceeded: {what} needs {needed} (cap {cap})")]
    Capacity {
        what: &'static str,
        needed: u64,
        cap: u64,
    },

    /// A requested error target cannot be certified with the configured
    /// truncation parameters.
    #[error("precision target {target:e} unreachable: best certificate {achieved:e}")]
    Precision { target: f64, achieved: f64 },

    #[error("insufficient data: {admitted} admitted samples, at least {required} required")]
    InsufficientData { admitted: usize, required: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
