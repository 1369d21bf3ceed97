use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("generator `{0}` has no action but an action bound was requested")]
    MissingAction(String),
    #[error("table `{table}` is only complete up to arity {limit}, gluing needs arity {arity}")]
    Incomplete {
        table: String,
        arity: usize,
        limit: usize,
    },
    #[error("parity mismatch: {0}")]
    ParityMismatch(String),
    #[error("invalid table entry: {0}")]
    InvalidEntry(String),
    #[error("differential does not square to zero on basis element {0}")]
    NotAComplex(usize),
    #[error("differential leaves the window: {0}")]
    WindowNotClosed(String),
    #[error("linearized structure has a nonzero constant term at input {0}")]
    NonzeroConstant(String),
    #[error("no augmentation supplied")]
    PlanarityZero,
    #[error("no homology class has functional value 1")]
    PlanarityNotOne,
    #[error("U is not nilpotent on homology within power bound {0}")]
    NotNilpotent(usize),
    #[error("U does not commute with the linearized differential")]
    NotAModule,
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("inconsistent inputs: {0}")]
    Inconsistent(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    InvalidInput(String),
}
