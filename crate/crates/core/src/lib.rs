//! Exact symbolic workbench for the variational bicomplex, Weil and Gelfand-Fuks
//! cohomology, universal characteristic forms and anomaly polynomials.

pub mod char_ring;
pub mod error;
pub mod exact_algebra;
pub mod formal_vf;
pub mod geometry_models;
pub mod jet_calculus;
pub mod superalgebra;
pub mod weil_cohomology;

pub use error::{Error, Result};
pub use exact_algebra::{MultiIndex, MultiPoly, RationalFunction, Scalar, SparseMatrix, Var};
