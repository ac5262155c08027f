//! The intersection series of a pair of arcs,
//!
//! ```text
//! J(t,a,b,c,d,p,q,r,s) = ∫ t^{γ₁∘γ₂} a^{v_x¹v_x²} b^{v_x¹v_y²} c^{v_y¹v_x²} d^{v_y¹v_y²}
//!                          p^{v_x¹} q^{v_y¹} r^{v_x²} s^{v_y²}
//! ```
//!
//! split into strata by the relative position of `v_x` and `v_y` on each
//! arc, and solved from its functional equation by fixed-point iteration.

mod lemma4;
mod phipsi;
mod strata;

pub use lemma4::{
    lemma4_rhs, solve_lemma4, u_free_collapse, Lemma4, Lemma4Solution, TraceStep,
};
pub use phipsi::{
    phi, phi_brute, phi_fresh, psi, psi_brute, psi_fresh, Arg, PartialSum, PHI_VARS, PSI_VARS,
};
pub use strata::{stratum_contribution, stratum_direct, strata_sum, StratumId};

use thiserror::Error;

use crate::ring::{Bound, MultiSeries, RingError};

pub const J_VARS: [&str; 9] = ["t", "a", "b", "c", "d", "p", "q", "r", "s"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairsError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid bound: {0}")]
    InvalidBound(String),
    #[error("monomial {0} would not gain a power of t")]
    InadmissibleMap(String),
    #[error("t^{slice} changed at iteration {iteration}")]
    NoStabilization { iteration: usize, slice: u64 },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Weight 1 on `t` up to `order`, and `p, q, r, s ≤ cap`.
pub fn pairs_bound(order: u64, cap: u32) -> Bound {
    let mut b = Bound::t_graded(J_VARS.len(), 0, order);
    for v in 5..9 {
        b = b.with_cap(v, cap);
    }
    b
}

/// Exchanging the two arcs: `b ↔ c, p ↔ r, q ↔ s`.
pub fn arc_swap(j: &MultiSeries) -> MultiSeries {
    j.swap_vars(&[("b", "c"), ("p", "r"), ("q", "s")])
}

/// Exchanging the coordinates `x ↔ y`: `a ↔ d, b ↔ c, p ↔ q, r ↔ s`.
pub fn coordinate_swap(j: &MultiSeries) -> MultiSeries {
    j.swap_vars(&[("a", "d"), ("b", "c"), ("p", "q"), ("r", "s")])
}
