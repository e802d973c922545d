use thiserror::Error;

use crate::scalar::Symbol;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("time derivative of `{0}` is not supported")]
    UnsupportedDerivative(Symbol),
    #[error("expression already contains rhoddot; the Ermakov closure cannot be applied")]
    ClosurePrecondition,
    #[error("no value assigned to `{0}`")]
    MissingAssignment(Symbol),
    #[error("`{0}` is zero but appears with a negative exponent")]
    DivisionByZero(Symbol),
    #[error("expression is not invertible in the Laurent ring: {0}")]
    NotInvertible(String),
    #[error("basis element T[{m},{n}] has two negative indices")]
    BothNegative { m: i64, n: i64 },
    #[error("hypergeometric series does not terminate: {0}")]
    NonTerminating(String),
    #[error("lower Pochhammer symbol vanishes before the series terminates")]
    LowerParameterZero,
    #[error("Gamma({num})/Gamma({den}) has a pole in the numerator only")]
    GammaPole { num: i64, den: i64 },
    #[error("bracket of T[{m},{n}] and T[{r},{s}] did not terminate within j <= {cap}")]
    BracketCap { m: i64, n: i64, r: i64, s: i64, cap: usize },
    #[error("reordering q^{k} p^{l} produces an infinite series")]
    InfiniteReorder { k: i64, l: i64 },
    #[error("transform is not canonical: AB - CD = {0}")]
    NotCanonical(String),
    #[error("{0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("rho crossed zero between t = {t0} and t = {t1}")]
    BlowUp { t0: f64, t1: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
