//! The Milnor-number series and its stratum table.
//!
//! `I(t,a,b,c,d,f) = Σ G_{i,j}(t) a^i b^j c^{i²} d^{ij} f^{j²}` where
//! `G_{i,j}(t)` collects the measures of the arcs with `v_x = i`, `v_y = j`
//! graded by Milnor number.

mod closed;
mod eq1;
mod fab;
mod gtable;
mod system6;

pub use closed::{
    gaa_closed_form, gij_closed_form, leading_term, lemma3_check, leading_term_formula, mass_check,
    milnor_measure,
};
pub use eq1::{
    assemble_i, assemble_i_from_table, verify_eq1, verify_symmetry_and_support, Eq1Report,
    Eq1Window, SymmetryReport, I_VARS,
};
pub use fab::{
    fab_closed, fab_coefficient, fab_series, solve_system5, verify_eq4, Eq4Report, FabClosed,
};
pub use gtable::{compute_g, GMemo, GTable};
pub use system6::{solve_system6, System6Instance, System6Table, SystemRing};

use thiserror::Error;

use crate::ring::RingError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("diagonal {i} is singular: 1 - eps_i - C*eps_i does not divide exactly")]
    SingularDiagonal { i: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no monomial is fully determined by the window")]
    WindowTooSmall,
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Greatest common divisor of positive indices.
pub(crate) fn gcd(a: usize, b: usize) -> usize {
    num_integer::Integer::gcd(&a, &b)
}
