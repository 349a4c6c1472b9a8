//! Integrable complex structures on real Lie algebras, with exact rational
//! verification and a numeric search for the cases where a structure may
//! not exist.

pub mod algebra;
pub mod complex;
pub mod constructions;
pub mod error;
pub mod json;
pub mod linalg;
pub mod scalar;
pub mod search;

pub use algebra::{direct_product, LieAlgebra};
pub use complex::{
    is_integrable, nijenhuis, quasi_invariant_vectors, EigenPair, Endomorphism,
    IntegrabilityReport, PairValue,
};
pub use constructions::{
    bianchi, build_product_j, catalog_specs, existence_specs, orthogonal_algebra,
    orthogonal_pairing, standard_structure, standard_triple, validate_jordan_triple, BianchiSpec,
    JordanCase, JordanTriple,
};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use scalar::{format_rational, parse_rational, rat, Rational, Ring, Scalar};
pub use search::{
    emit_polynomial_system, numeric_search, rationalize_and_certify, residual_and_gradient,
    SearchConfig, SearchResult,
};
