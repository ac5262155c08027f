//! Closed contributions of the strata of `ℒ × ℒ` on which the two arcs
//! separate after one blow-up.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::phipsi::{phi, psi, Arg, PartialSum};
use super::{PairsError, J_VARS};
use crate::ring::{lm1_pow_l, Bound, LaurentPoly, MultiSeries};

/// The strata with an explicit contribution, named by the relative position
/// of `v_x` and `v_y` on each arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StratumId {
    /// `v_y¹ > v_x¹`, `v_y² < v_x²`
    S2,
    /// `v_y¹ > v_x¹`, `v_y² = v_x²`
    S3,
    /// `v_y¹ < v_x¹`, `v_y² > v_x²`
    S4,
    /// `v_y¹ < v_x¹`, `v_y² = v_x²`
    S6,
    /// `v_y¹ = v_x¹`, `v_y² > v_x²`
    S7,
    /// `v_y¹ = v_x¹`, `v_y² < v_x²`
    S8,
    /// both arcs with `v_x = v_y` and distinct tangent directions
    S9a,
}

impl StratumId {
    pub const ALL: [StratumId; 7] = [
        StratumId::S2,
        StratumId::S3,
        StratumId::S4,
        StratumId::S6,
        StratumId::S7,
        StratumId::S8,
        StratumId::S9a,
    ];
}

impl fmt::Display for StratumId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StratumId::S2 => "2",
            StratumId::S3 => "3",
            StratumId::S4 => "4",
            StratumId::S6 => "6",
            StratumId::S7 => "7",
            StratumId::S8 => "8",
            StratumId::S9a => "9a",
        };
        f.write_str(s)
    }
}

impl FromStr for StratumId {
    type Err = PairsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StratumId::ALL
            .into_iter()
            .find(|id| id.to_string() == s)
            .ok_or_else(|| PairsError::Unsupported(format!("unknown stratum {s:?}")))
    }
}

fn a(m: &str, l: i64) -> Arg {
    Arg::parse(&J_VARS, m, l)
}

fn finish(pre: LaurentPoly, sum: PartialSum) -> Result<MultiSeries, PairsError> {
    let factor = pre.div_exact(&sum.denominator).ok_or_else(|| {
        PairsError::Unsupported(format!("{} does not divide the prefactor", sum.denominator))
    })?;
    Ok(sum.numerator.scale(&factor))
}

/// The contribution of one stratum to `J`, truncated to `bound`.
pub fn stratum_contribution(which: StratumId, bound: &Bound) -> Result<MultiSeries, PairsError> {
    let l4 = lm1_pow_l(4, 0);
    match which {
        StratumId::S2 => finish(
            l4,
            phi(
                &J_VARS,
                &[a("b*t", 0), a("a", 0), a("d", 0), a("c", 0), a("p", -1), a("q", -1), a("s", -1), a("r", -1)],
                bound,
            )?,
        ),
        StratumId::S3 => finish(
            l4,
            psi(&J_VARS, &[a("t*a*b", 0), a("c*d", 0), a("p", -1), a("q", -1), a("r*s", -2)], bound)?,
        ),
        StratumId::S4 => finish(
            l4,
            phi(
                &J_VARS,
                &[a("c*t", 0), a("d", 0), a("a", 0), a("b", 0), a("q", -1), a("p", -1), a("r", -1), a("s", -1)],
                bound,
            )?,
        ),
        StratumId::S6 => finish(
            l4,
            psi(&J_VARS, &[a("t*c*d", 0), a("a*b", 0), a("q", -1), a("p", -1), a("r*s", -2)], bound)?,
        ),
        StratumId::S7 => finish(
            l4,
            psi(&J_VARS, &[a("t*a*c", 0), a("b*d", 0), a("r", -1), a("s", -1), a("p*q", -2)], bound)?,
        ),
        StratumId::S8 => finish(
            l4,
            psi(&J_VARS, &[a("t*b*d", 0), a("a*c", 0), a("s", -1), a("r", -1), a("p*q", -2)], bound)?,
        ),
        StratumId::S9a => finish(
            &lm1_pow_l(5, 0) * &LaurentPoly::from_terms([(1, 1), (0, -2)]),
            phi(
                &J_VARS,
                &[
                    a("t*a*b*c*d", 0),
                    a("1", 0),
                    a("1", 0),
                    a("1", 0),
                    a("p*q", -1),
                    a("1", -1),
                    a("r*s", -1),
                    a("1", -1),
                ],
                bound,
            )?,
        ),
    }
}

/// Sum of all seven explicit strata.
pub fn strata_sum(bound: &Bound) -> Result<MultiSeries, PairsError> {
    let mut out = MultiSeries::new(&J_VARS, bound.clone());
    for id in StratumId::ALL {
        out.add_assign(&stratum_contribution(id, bound)?);
    }
    Ok(out)
}

/// The same contribution summed directly over the arc orders
/// `(v_x¹, v_y¹, v_x², v_y²)`, each arc pair weighted by
/// `t^{v¹v²} a^{v_x¹v_x²} b^{v_x¹v_y²} c^{v_y¹v_x²} d^{v_y¹v_y²} p^{v_x¹} q^{v_y¹} r^{v_x²} s^{v_y²}`
/// and the measure of its stratum. Needs caps on `p, q, r, s`.
pub fn stratum_direct(which: StratumId, bound: &Bound) -> Result<MultiSeries, PairsError> {
    let cap = |v: usize| {
        bound.caps[v].ok_or_else(|| PairsError::InvalidBound(format!("{} is not capped", J_VARS[v])))
    };
    let (mp, mq, mr, ms) = (cap(5)?, cap(6)?, cap(7)?, cap(8)?);
    let in_stratum = |x1: u32, y1: u32, x2: u32, y2: u32| match which {
        StratumId::S2 => y1 > x1 && y2 < x2,
        StratumId::S3 => y1 > x1 && y2 == x2,
        StratumId::S4 => y1 < x1 && y2 > x2,
        StratumId::S6 => y1 < x1 && y2 == x2,
        StratumId::S7 => y1 == x1 && y2 > x2,
        StratumId::S8 => y1 == x1 && y2 < x2,
        StratumId::S9a => y1 == x1 && y2 == x2,
    };
    // Pairs of directions with λ₁ ≠ λ₂ among all (λ₁, λ₂) ∈ (ℂ*)².
    let lm1 = LaurentPoly::l_minus_one();
    let distinct = &lm1 * &(&lm1 - &LaurentPoly::one());
    let mut out = MultiSeries::new(&J_VARS, bound.clone());
    for x1 in 1..=mp {
        for y1 in 1..=mq {
            for x2 in 1..=mr {
                for y2 in 1..=ms {
                    if !in_stratum(x1, y1, x2, y2) {
                        continue;
                    }
                    let e = vec![
                        x1.min(y1) * x2.min(y2),
                        x1 * x2,
                        x1 * y2,
                        y1 * x2,
                        y1 * y2,
                        x1,
                        y1,
                        x2,
                        y2,
                    ];
                    let mut mu = lm1_pow_l(4, -((x1 + y1 + x2 + y2) as i64));
                    if which == StratumId::S9a {
                        mu = (&mu * &distinct)
                            .div_exact(&lm1.pow(2))
                            .expect("(L-1)^2 divides the measure");
                    }
                    out.add_term(e, mu);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairs::pairs_bound;

    #[test]
    fn strata_match_direct_sums() {
        let bound = pairs_bound(12, 4);
        for id in StratumId::ALL {
            let closed = stratum_contribution(id, &bound).unwrap();
            let direct = stratum_direct(id, &bound).unwrap();
            assert_eq!(closed, direct, "stratum {id}");
            assert!(!closed.is_zero());
        }
    }

    #[test]
    fn vanish_without_p() {
        let bound = pairs_bound(12, 4).with_cap(5, 0);
        for id in StratumId::ALL {
            assert!(stratum_contribution(id, &bound).unwrap().is_zero(), "stratum {id}");
        }
    }

    #[test]
    fn names_round_trip() {
        for id in StratumId::ALL {
            assert_eq!(id.to_string().parse::<StratumId>().unwrap(), id);
        }
    }
}
