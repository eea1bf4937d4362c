//! Concrete natural bundles: jets of Riemannian metrics and of principal
//! connections, their universal curvature forms, lifts of infinitesimal
//! automorphisms, equivariant extensions and the maps ν_σ, ψ_σ to formal vector
//! fields.

mod connection;
mod equivariant;
mod field;
mod matrix;
mod metric;
mod verify;

pub use connection::{calibrate_quadratic_factor, gauge_quadratic_factor, ConnectionJetModel, GaugeForm};
pub use equivariant::{
    cartan_d, curvature_of, max_parameter_degree, parameter_component, transgression, EquivariantJetForm, LiftModel,
};
pub use field::{parameter_degree, x_monomial, AutField, FormalParameter};
pub use matrix::{determinant, minor, pfaffian, MatrixOfForms, TracePolynomial};
pub use metric::MetricJetModel;
pub use verify::{
    ce_curvature, ce_symmetric_theta, nu_sigma, nu_sigma_kernel_dimension, psi_sigma, verify_bianchi, verify_cartan, verify_lemma15,
    verify_lemma20, verify_prop14, IdentityCheck, VerificationReport, WeilProbe,
};
