//! Exact coefficient and series arithmetic.
//!
//! * [`LaurentPoly`]: elements of ℤ[𝕃, 𝕃⁻¹], the coefficient ring of every series.
//! * [`TSeries`]: truncated power series in `t`.
//! * [`RationalFunc`]: closed forms in `(t, 𝕃)`, expandable and evaluable at `t = 1`.
//! * [`MultiSeries`] and [`MonomialMap`]: sparse truncated series in a tuple of
//!   variables together with the monomial substitutions that drive every
//!   functional equation.

mod laurent;
mod multi;
mod quotient;
mod rational;
mod subst;
mod tseries;

pub use laurent::{lm1_pow_l, LaurentPoly};
pub use multi::{Admission, Bound, Exps, MultiSeries, TruncStats};
pub use quotient::LaurentQuotient;
pub use rational::RationalFunc;
pub use subst::{MonomialMap, VarImage};
pub(crate) use subst::parse_monomial;
pub use tseries::TSeries;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("not a unit of Z[L, 1/L]: {0}")]
    NotAUnit(String),
    #[error("cannot evaluate negative powers of L at L = 0")]
    ZeroBase,
    #[error("cannot parse Laurent polynomial from {0:?}")]
    Parse(String),
    #[error("denominator constant term {0} is not a unit")]
    NonUnitDenominator(String),
    #[error("constant term {0} is not a unit")]
    NonUnitConstantTerm(String),
    #[error("denominator vanishes at t = 1")]
    PoleAtOne,
    #[error("inadmissible monomial map at source monomial {monomial}: {reason}")]
    InadmissibleMap { monomial: String, reason: String },
    #[error("variable lists differ: {0}")]
    VariableMismatch(String),
    #[error("exponent overflow")]
    Overflow,
}
