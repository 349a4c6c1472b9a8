//! Polynomial integrability systems and the numeric search over them.

pub mod numeric;
pub mod objective;
pub mod poly;
pub mod rationalize;
pub mod system;

pub use numeric::{
    flatten, numeric_search, Certificate, SearchConfig, SearchResult, StartOutcome, DEFAULT_SEED,
};
pub use objective::{residual_and_gradient, Objective};
pub use poly::{Monomial, Poly};
pub use rationalize::{best_rational, rationalize_and_certify, round_matrix};
pub use system::{
    emit_polynomial_system, emit_polynomial_system_with, render_poly, unknown_index, unknown_label,
    EmitOptions, Equation, PolynomialSystem, Provenance,
};
