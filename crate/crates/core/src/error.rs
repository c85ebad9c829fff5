use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A computation would exceed its configured word budget.
    #[error("budget exceeded in degree {degree}: {words} tensor words needed, limit is {limit}")]
    Budget { degree: u32, words: u64, limit: u64 },

    /// A requested degree is above the configured degree cap.
    #[error("degree {degree} is above the configured cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },

    /// The degreewise basis disagrees with the Witt dimension formula.
    #[error("lie basis in degree {degree} has {basis} elements but the Witt formula predicts {witt}")]
    DimensionMismatch { degree: u32, basis: u64, witt: String },

    /// The base space of a loop-space query is known not to be simply connected.
    #[error("{space} is not simply connected: {diagnosis}")]
    NotSimplyConnected { space: String, diagnosis: String },

    /// An internal consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// True for refusals caused by a resource limit rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Budget { .. } | Error::DegreeCap { .. })
    }
}
