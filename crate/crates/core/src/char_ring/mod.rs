//! Invariant-polynomial rings of SO(n) and U(N), Â and Chern characters, and
//! anomaly polynomials with their cancellation verdicts.

mod anomaly;
mod characters;
mod invariants;
mod ring;
mod series;

pub use anomaly::{anomaly_p, anomaly_q, GravitationalAnomaly, MixedAnomaly, Verdict};
pub use characters::{a_hat, chern_character, power_sums, RepDescriptor, MAX_FORM_DEGREE};
pub use invariants::{characteristic_form, invariant_polynomial_dimension};
pub use ring::{invariant_ring_dimension, GeneratorKind, InvariantPolynomial, Presentation, RingGenerator};
pub use series::{a_hat_log, cosh_half, cosh_half_log, sinhc_half, PowerSeries};
