//! Exact motivic generating series for plane arcs.
//!
//! The crate is layered bottom-up:
//!
//! * [`ring`]: Laurent polynomials in 𝕃 and the truncated series built on them.
//! * [`solver`]: the Milnor-number series `I(t,a,b,c,d,f)`, its stratum table
//!   `G_{i,j}(t)`, closed forms and the checks of its functional equations.
//! * [`powerstruct`]: the power structure `(A(t), m) ↦ A(t)^m` over ℤ[𝕃, 𝕃⁻¹].
//! * [`pairs`]: the intersection series `J` of two arcs.
//! * [`tuples`]: the intersection series of an arc against unordered tuples.

pub mod pairs;
pub mod powerstruct;
pub mod ring;
pub mod solver;
pub mod tuples;

pub use ring::{LaurentPoly, MultiSeries, RationalFunc, TSeries};
