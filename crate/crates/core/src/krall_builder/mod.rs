//! Krall dual Hahn polynomials: set transforms, instances, the Casorati
//! determinant, the polynomials `q_n`, their measures and their higher order
//! difference operator.

mod casorati;
mod instance;
mod lemma;
mod measures;
mod moments;
mod operator;
mod search;
mod sets;

pub use casorati::{
    casorati_matrix, krall_q, krall_q_coefficients, krall_q_family, omega_at, omega_nonzero_sweep, omega_ratfun,
    omega_teor_ratfun, sweep_end,
};
pub use instance::{KrallInstance, Row, Violation};
pub use lemma::{
    build_m, build_s, build_s_casorati, lemma_degree, lemma_leading_coefficient, lemma_p_poly, lemma_p_ratio,
    lemma_q_matrix,
};
pub use measures::{
    christoffel_masses, christoffel_measure, corollary_instance, geronimus_mismatch, target_masses, target_measure,
    verify_orthogonality, OrthogonalityReport,
};
pub use moments::{moment_constant, verify_moment_identities, MomentOutcome, MomentReport};
pub use operator::{build_higher_op, corollary_order, eigen_mismatch, predicted_order, HigherOperator};
pub use search::{find_equivalent_representations, Representation, SearchResult};
pub use sets::FiniteSet;
