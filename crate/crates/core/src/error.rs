use thiserror::Error;

/// Everything that can go wrong across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrimeModulus(u64),
    #[error("modulus {0} does not fit a signed 64-bit word")]
    ModulusTooLarge(u64),
    #[error("no inverse: value is 0 mod {modulus}")]
    ZeroNoInverse { modulus: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vector lengths differ")]
    LengthMismatch,
    #[error("modulus tags differ")]
    ModulusMismatch,
    #[error("register {register} out of range 1..={n}")]
    RegisterOutOfRange { register: usize, n: usize },
    #[error("row {row} out of range 1..={rows}")]
    RowOutOfRange { row: usize, rows: usize },
    #[error("register {0} named twice")]
    DuplicateRegister(usize),
    #[error("Y is only defined for q = 2")]
    YRequiresQubit,
    #[error("syntax error at line {line}, column {column}: {message}")]
    SyntaxError {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("header mismatch: {0}")]
    HeaderMismatch(String),
    #[error("generators are linearly dependent over the field")]
    DependentGenerators,
    #[error("target prime equals the source local dimension q = {0}")]
    SameModulus(u64),
    #[error("no register choice gives the X block full rank; canonical form unreachable")]
    CanonicalFormUnreachable,
    #[error("instance too large: {0}")]
    InstanceTooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
