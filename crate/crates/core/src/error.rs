use thiserror::Error;

use crate::exact_algebra::{RationalError, SliceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid generator set: {0}")]
    InvalidGenerators(String),
    #[error("no Lie action declared for `{0}`")]
    UndeclaredAction(String),
    #[error("subcomplex filter is not stable under d: {0}")]
    UnstableFilter(String),
    #[error("invalid structure constants: {0}")]
    StructureConstants(String),
    #[error("not a Lie subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("expected bidegree {expected:?}, found {found:?}")]
    Bidegree { expected: (u32, u32), found: (u32, u32) },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("weight window too small: {0}")]
    WeightWindow(String),
    #[error("truncation too small: {0}")]
    Truncation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Slice(#[from] SliceError),
    #[error(transparent)]
    Rational(#[from] RationalError),
}

pub type Result<T> = std::result::Result<T, Error>;
