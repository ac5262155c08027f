//! The functional equation
//!
//! ```text
//! J = J(t, tabcd, bd, cd, d, pq𝕃⁻¹, q, rs𝕃⁻¹, s)
//!   + J(t, tabcd, ac, ab, a, pq𝕃⁻¹, p, rs𝕃⁻¹, r)
//!   + (𝕃−1) J(t, tabcd, 1, 1, 1, pq𝕃⁻¹, 1, rs𝕃⁻¹, 1)
//!   + (the seven explicit strata)
//! ```
//!
//! and its solution by iteration from `J = 0`. Every image of a monomial of
//! `J` gains `t^{k_a} ≥ t`, so the `t^k` slice is final after `k` rounds.

use serde::Serialize;

use super::strata::strata_sum;
use super::{PairsError, J_VARS};
use crate::ring::{Bound, LaurentPoly, MonomialMap, MultiSeries, TruncStats};

/// The right-hand side of the equation for a fixed bound, with the strata
/// precomputed.
#[derive(Clone, Debug)]
pub struct Lemma4 {
    bound: Bound,
    strata: MultiSeries,
    maps: [MonomialMap; 3],
}

/// One round of the iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub iteration: usize,
    pub changed_terms: usize,
    pub lowest_changed_t: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma4Solution {
    pub j: MultiSeries,
    /// Rounds that changed the series; the following round changed nothing.
    pub iterations: usize,
    pub trace: Vec<TraceStep>,
    /// Images dropped by the bound in the final round.
    pub stats: TruncStats,
}

impl Lemma4 {
    /// `bound` must cap `p, q, r, s` by one common value so that both
    /// symmetries of `J` survive truncation.
    pub fn new(bound: &Bound) -> Result<Self, PairsError> {
        if bound.nvars() != J_VARS.len() || bound.weights[0] == 0 {
            return Err(PairsError::InvalidBound("expected a t-graded bound over t,a,b,c,d,p,q,r,s".into()));
        }
        let caps = &bound.caps[5..9];
        if caps[0].is_none() || caps.iter().any(|c| *c != caps[0]) {
            return Err(PairsError::InvalidBound(
                "p, q, r, s need one common cap".into(),
            ));
        }
        let m = |spec: &[(&str, &str, i64)]| MonomialMap::from_spec(&J_VARS, spec);
        let maps = [
            m(&[
                ("a", "t*a*b*c*d", 0),
                ("b", "b*d", 0),
                ("c", "c*d", 0),
                ("p", "p*q", -1),
                ("r", "r*s", -1),
            ]),
            m(&[
                ("a", "t*a*b*c*d", 0),
                ("b", "a*c", 0),
                ("c", "a*b", 0),
                ("d", "a", 0),
                ("p", "p*q", -1),
                ("q", "p", 0),
                ("r", "r*s", -1),
                ("s", "r", 0),
            ]),
            m(&[
                ("a", "t*a*b*c*d", 0),
                ("b", "1", 0),
                ("c", "1", 0),
                ("d", "1", 0),
                ("p", "p*q", -1),
                ("q", "1", 0),
                ("r", "r*s", -1),
                ("s", "1", 0),
            ]),
        ];
        Ok(Self {
            bound: bound.clone(),
            strata: strata_sum(bound)?,
            maps,
        })
    }

    pub fn bound(&self) -> &Bound {
        &self.bound
    }

    pub fn strata(&self) -> &MultiSeries {
        &self.strata
    }

    /// The right-hand side at `jc`. The collapsed term sums only the stored
    /// monomials of `jc`, so it misses sources beyond the caps.
    pub fn rhs(&self, jc: &MultiSeries) -> Result<(MultiSeries, TruncStats), PairsError> {
        if jc.vars() != J_VARS {
            return Err(PairsError::InvalidBound(format!("variables {:?}", jc.vars())));
        }
        if let Some((e, _)) = jc.terms().find(|(e, _)| e[1] == 0) {
            return Err(PairsError::InadmissibleMap(jc.monomial_string(e)));
        }
        let mut out = self.strata.clone();
        let one = LaurentPoly::one();
        let mut stats = TruncStats::default();
        stats += self.maps[0].apply_into(jc, &one, &mut out)?;
        stats += self.maps[1].apply_into(jc, &one, &mut out)?;
        stats += self.maps[2].apply_into(jc, &LaurentPoly::l_minus_one(), &mut out)?;
        Ok((out, stats))
    }

    pub fn solve(&self) -> Result<Lemma4Solution, PairsError> {
        let order = self.bound.max_weight as usize;
        let mut j = MultiSeries::new(&J_VARS, self.bound.clone());
        let mut trace = Vec::new();
        for iteration in 1..=order + 1 {
            let (next, stats) = self.rhs(&j)?;
            let diff = next.sub(&j);
            let lowest = diff.terms().map(|(e, _)| e[0] as u64).min();
            trace.push(TraceStep {
                iteration,
                changed_terms: diff.len(),
                lowest_changed_t: lowest,
            });
            match lowest {
                None => {
                    return Ok(Lemma4Solution {
                        j,
                        iterations: iteration - 1,
                        trace,
                        stats,
                    })
                }
                Some(slice) if slice < iteration as u64 => {
                    return Err(PairsError::NoStabilization { iteration, slice })
                }
                Some(_) => j = next,
            }
        }
        let slice = trace.last().and_then(|s| s.lowest_changed_t).unwrap_or(0);
        Err(PairsError::NoStabilization {
            iteration: order + 1,
            slice,
        })
    }
}

pub fn lemma4_rhs(jc: &MultiSeries, bound: &Bound) -> Result<(MultiSeries, TruncStats), PairsError> {
    Lemma4::new(bound)?.rhs(jc)
}

pub fn solve_lemma4(bound: &Bound) -> Result<Lemma4Solution, PairsError> {
    Lemma4::new(bound)?.solve()
}

/// `J(1, 1, 1, 1, 1, p, q, r, s)` over the stored terms, as a series in
/// `(p, q, r, s)`.
pub fn u_free_collapse(j: &MultiSeries) -> MultiSeries {
    let caps = j.bound().caps[5..9].to_vec();
    let bound = Bound {
        weights: vec![0; 4],
        max_weight: 0,
        caps,
    };
    let mut out = MultiSeries::new(&["p", "q", "r", "s"], bound);
    for (e, c) in j.terms() {
        out.add_term(e[5..9].to_vec(), c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairs::{arc_swap, coordinate_swap, pairs_bound};
    use crate::solver::fab_coefficient;

    #[test]
    fn zero_input_gives_strata() {
        let eq = Lemma4::new(&pairs_bound(4, 3)).unwrap();
        let empty = MultiSeries::new(&J_VARS, eq.bound().clone());
        assert_eq!(eq.rhs(&empty).unwrap().0, *eq.strata());
    }

    #[test]
    fn rejects_monomials_without_a() {
        let eq = Lemma4::new(&pairs_bound(4, 3)).unwrap();
        let mut j = MultiSeries::new(&J_VARS, eq.bound().clone());
        j.add_term(vec![1, 0, 1, 0, 0, 1, 0, 0, 0], LaurentPoly::one());
        assert!(matches!(eq.rhs(&j), Err(PairsError::InadmissibleMap(_))));
    }

    #[test]
    fn uneven_caps_rejected() {
        assert!(Lemma4::new(&pairs_bound(4, 3).with_cap(6, 2)).is_err());
    }

    #[test]
    fn slices_depend_on_lower_slices() {
        let eq = Lemma4::new(&pairs_bound(5, 3)).unwrap();
        let sol = eq.solve().unwrap();
        for k in 1..=5u32 {
            // Changing the slices t^{≥k} of the input leaves the output's
            // slices t^{≤k} unchanged.
            let mut poked = sol.j.filter(|e| e[0] < k);
            poked.add_term(vec![k, 1, 1, 1, 1, 1, 1, 1, 1], LaurentPoly::l());
            let (a, _) = eq.rhs(&sol.j).unwrap();
            let (b, _) = eq.rhs(&poked).unwrap();
            let low = |s: &MultiSeries| s.filter(|e| e[0] <= k);
            assert_eq!(low(&a), low(&b), "slice {k}");
        }
    }

    #[test]
    fn solution_properties() {
        let bound = pairs_bound(6, 4);
        let eq = Lemma4::new(&bound).unwrap();
        let sol = eq.solve().unwrap();
        assert!(sol.iterations <= 6);
        assert_eq!(eq.rhs(&sol.j).unwrap().0, sol.j);
        assert_eq!(arc_swap(&sol.j), sol.j);
        assert_eq!(coordinate_swap(&sol.j), sol.j);
        for step in &sol.trace {
            if let Some(t) = step.lowest_changed_t {
                assert!(t >= step.iteration as u64);
            }
        }
    }

    #[test]
    fn u_free_sanity_in_top_degrees() {
        // At t = a = b = c = d = 1 the integrand is p^{v_x¹} q^{v_y¹} r^{v_x²} s^{v_y²},
        // so J collapses to f(p,q)·f(r,s). The truncated solution misses
        // pairs of arcs with high contact, whose measure sits in low 𝕃-degree,
        // so only the top degree is exact once the base exponent is in range.
        let order = 6u32;
        let cap = 3u32;
        let sol = solve_lemma4(&pairs_bound(order as u64, cap)).unwrap();
        let collapsed = u_free_collapse(&sol.j);
        let mut exact = 0;
        for x1 in 1..=cap {
            for y1 in 1..=cap {
                for x2 in 1..=cap {
                    for y2 in 1..=cap {
                        let base = x1.min(y1) * x2.min(y2);
                        if base > order {
                            continue;
                        }
                        let e = vec![x1, y1, x2, y2];
                        let expect = &fab_coefficient(x1 as usize, y1 as usize)
                            * &fab_coefficient(x2 as usize, y2 as usize);
                        let top = expect.degree().unwrap();
                        let defect = &expect - &collapsed.coeff(&e);
                        let Some(d) = defect.degree() else {
                            exact += 1;
                            continue;
                        };
                        assert!(d < top, "{e:?}: defect {defect}");
                    }
                }
            }
        }
        assert!(exact > 0);
    }
}
