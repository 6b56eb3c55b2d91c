use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid characteristic {0}: expected a prime p with 2 < p < 2^31")]
    InvalidCharacteristic(u32),

    #[error("invalid variable list: {0}")]
    InvalidVariables(String),

    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("operands belong to different rings")]
    MixedRings,

    #[error("negative exponent {0}")]
    NegativeExponent(i64),

    #[error("exponent vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("colon by the zero element")]
    ColonByZero,

    #[error("colon or saturation by the zero ideal")]
    ZeroIdeal,

    #[error("submodule V is not contained in U")]
    NotContained,

    #[error("the module is zero")]
    ZeroModule,

    #[error("sequence element a_{0} is zero")]
    ZeroElement(usize),

    #[error("sequence element a_{0} does not lie in the maximal ideal")]
    NotInMaximalIdeal(usize),

    #[error("sequence element a_{index} does not lie in the ideal {ideal}")]
    NotInIdeal { index: usize, ideal: String },

    #[error("the sequence is not a system of parameters of the module")]
    NotSystemOfParameters,

    #[error("input is not homogeneous: {0}")]
    NonHomogeneous(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no stabilization before the tabulation cap n = {cap}; retry with a larger cap")]
    NoStabilization { cap: usize },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// A statement that holds for every input failed on a concrete one.
    /// Seeing this means the engine is wrong, not the mathematics.
    #[error("property violation: {0}")]
    PropertyViolation(String),

    #[error("problem file: {0}")]
    Problem(String),
}
