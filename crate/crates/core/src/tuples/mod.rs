//! The intersection series of an arc against unordered tuples of arcs,
//!
//! ```text
//! I(t,a,b,c,d,p,q,r,s,u) = ∫_{ℒ × ⊔_k S^kℒ} t^{Σ γ₁∘γ₂} … u^k
//! ```
//!
//! with the pair integrand taken as a product over the tuple. Its `u¹`
//! slice is the pair series `J`.

mod tables;
mod thm4;

pub use tables::{
    alpha_brute, alpha_table, eps_brute, eps_table, AlphaForm, AlphaTable, CoeffTable, EpsTable,
    Orientation,
};
pub use thm4::{
    solve_thm4, thm4_rhs, tuples_bound, u_slice, Boundary, Thm4, Thm4Solution, Thm4Step,
};

use thiserror::Error;

use crate::powerstruct::PowerError;
use crate::ring::RingError;
use crate::solver::SolverError;

pub const TUPLE_VARS: [&str; 10] = ["t", "a", "b", "c", "d", "p", "q", "r", "s", "u"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TupleError {
    #[error("invalid bound: {0}")]
    InvalidBound(String),
    #[error("monomial {0} would not gain a power of t")]
    InadmissibleMap(String),
    #[error("grade {grade} changed at iteration {iteration}")]
    NoStabilization { iteration: usize, grade: u64 },
    #[error(transparent)]
    Power(#[from] PowerError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Ring(#[from] RingError),
}
