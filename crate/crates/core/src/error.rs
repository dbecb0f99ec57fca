use core::fmt;

use crate::modmath::Natural;

/// Errors raised by the arithmetic layers and the construction pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The candidate characteristic failed the primality check.
    NotPrime(Natural),
    /// Two operands were reduced modulo different primes.
    ModulusMismatch,
    /// Two operands live in different field contexts.
    ContextMismatch,
    /// Inversion of zero, or division by the zero polynomial.
    DivisionByZero,
    /// A caller-supplied value violates an operation's precondition.
    InvalidInput(String),
    /// A result failed its post-hoc verification. This always indicates a
    /// violated precondition or a bug; it is never silently ignored.
    Verification(String),
    /// A brute-force enumeration would exceed its budget.
    BudgetExceeded { needed: Natural, cap: Natural },
    /// Text could not be parsed into a number, element or polynomial.
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn verification(msg: impl Into<String>) -> Self {
        Error::Verification(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(n) => write!(f, "{n} is not prime"),
            Error::ModulusMismatch => write!(f, "operands use different moduli"),
            Error::ContextMismatch => write!(f, "operands belong to different fields"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::Verification(msg) => write!(f, "verification failed: {msg}"),
            Error::BudgetExceeded { needed, cap } => {
                write!(f, "enumeration needs {needed} items, budget is {cap}")
            }
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
