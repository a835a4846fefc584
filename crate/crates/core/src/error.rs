use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("domain error: {what} = {value}")]
    Domain { what: &'static str, value: f64 },

    /// A velocity reached or exceeded what the non-relativistic model allows.
    #[error("relativistic input: {what} = {beta} (must be < 1)")]
    Relativistic { what: &'static str, beta: f64 },

    #[error("unsupported Bessel/harmonic order {order} (max {max})")]
    UnsupportedOrder { order: i32, max: i32 },

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("integration diverged at step {step} (t = {t:e} s)")]
    Divergence { step: usize, t: f64 },

    #[error("config key `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
