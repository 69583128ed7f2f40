use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("argument must be positive, got 0")]
    Zero,
    #[error("D must be squarefree (got {0})")]
    NotSquarefree(i64),
    #[error("D must be odd (got {0})")]
    EvenD(u64),
    #[error("field parameter m = {0} does not define a quadratic field")]
    DegenerateField(i64),
    #[error("nu must exceed 1 (got {0})")]
    NuTooSmall(String),
    #[error("({p}, {q}) does not solve p^2 + {d} = q^2")]
    NotASolution { p: u64, q: u64, d: u64 },
    #[error("ideal basis ({a}, {b}, {g}) is not a canonical ideal basis")]
    InvalidIdeal { a: String, b: String, g: String },
    #[error("the zero element does not generate a nonzero ideal")]
    ZeroGenerator,
    #[error("form ({0}) is not positive definite")]
    NotPositiveDefinite(String),
    #[error("form ({0}) is not well-rounded")]
    NotWellRounded(String),
    #[error("operation requires a real quadratic field")]
    NotRealField,
    #[error("operation requires g = 1 (got g = {0})")]
    NotPrimitive(String),
    #[error("search bound must be at least 1")]
    BadBound,
    #[error("table mismatch: {0}")]
    TableMismatch(String),
    #[error("integer overflow")]
    Overflow,
}
