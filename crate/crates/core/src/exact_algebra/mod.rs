//! Exact rationals, polynomials, rational functions and sparse linear algebra.

mod poly;
mod ratfunc;
mod scalar;
mod sparse;
mod var;

pub use poly::{Monomial, MultiPoly};
pub use ratfunc::{RationalError, RationalFunction};
pub use scalar::{ParseScalarError, Scalar};
pub use sparse::{
    cohomology, kernel_basis, kernel_with_free_columns, rank, rref, solve, ComplexSlice, EchelonSpan,
    SliceCohomology, SliceError, SparseMatrix, SparseRow,
};
pub use var::{MultiIndex, Var, MAX_DIM};
