use num_bigint::BigInt;
use thiserror::Error;

use crate::diagnostics::Diagnostic;

/// Every fallible operation in the crate returns this error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("lattice `{lattice}`: vector `{vector}` has length {found}, expected rank {expected}")]
    DimensionMismatch {
        lattice: String,
        vector: String,
        expected: usize,
        found: usize,
    },
    #[error("lattice `{lattice}`: Gram matrix row {row} has length {found}, expected {expected}")]
    NonSquareGram {
        lattice: String,
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("lattice `{lattice}`: Gram matrix is not symmetric at ({row}, {col})")]
    AsymmetricGram {
        lattice: String,
        row: usize,
        col: usize,
    },
    #[error("lattice `{lattice}`: {found} basis labels for rank {expected}")]
    LabelCount {
        lattice: String,
        expected: usize,
        found: usize,
    },
    #[error("lattice `{lattice}`: duplicate basis label `{label}`")]
    DuplicateLabel { lattice: String, label: String },
    #[error(
        "class {class} on `{lattice}` is not representable by a smooth curve under this form \
         (c.c + c.K = {sum} is odd)"
    )]
    OddAdjunction {
        lattice: String,
        class: String,
        sum: BigInt,
    },
    #[error("adjunction Euler number requested for the zero class on `{lattice}`")]
    ZeroClass { lattice: String },
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("value does not fit in 64 bits: {0}")]
    Overflow(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("surface {surface} has no restriction matrix from component {component}")]
    MissingRestriction { surface: String, component: String },
    #[error("insufficient basis: {0}")]
    InsufficientBasis(String),
    #[error("configuration is not d-semistable; normal-class residual {residual}")]
    NotDSemistable { residual: String },
    #[error("inadmissible input ({} error diagnostic(s))", count_errors(.0))]
    Inadmissible(Vec<Diagnostic>),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("partition: {0}")]
    Partition(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("invalid ample-margin table: {0}")]
    AmpleTable(String),
    #[error("{0}")]
    Unsupported(String),
}

fn count_errors(diags: &[Diagnostic]) -> usize {
    diags.iter().filter(|d| d.is_error()).count()
}

pub type Result<T> = std::result::Result<T, Error>;
