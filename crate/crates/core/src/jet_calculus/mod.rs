//! Differential forms on jet spaces in the contact basis: total derivatives,
//! prolongations, the horizontal/vertical split, the interior Euler operator
//! and the Euler-Lagrange and Helmholtz maps.

mod context;
mod field;
mod form;
mod variational;

pub use context::{FieldNaming, JetContext};
pub use field::{commutator_on, EvolutionaryField, JetVectorField, ProjectableField, ProlongedField, SumField};
pub use form::{word_bidegree, FormGen, FormWord, JetForm};
pub use variational::{
    cartan_lie_derivative, contract_pr, euler_lagrange, euler_lagrange_expressions, functional_equiv, helmholtz,
    interior_euler, lie_derivative_pr, source_coefficients, weak_invariance_check,
};
