//! The functional equation for the tuple series
//!
//! ```text
//! I = Σ ε_{k₁,k₂}(u) (𝕃⁻¹r)^{k₁} (𝕃⁻¹s)^{k₂}
//!       I(t, tabcd, bd, cd, d, (ac)^{k₁}(bdt)^{k₂}pq𝕃⁻¹, c^{k₁}d^{k₂}q, rs𝕃⁻¹, s, u)
//!   + Σ ε_{k₁,k₂}(u) (𝕃⁻¹s)^{k₁} (𝕃⁻¹r)^{k₂}
//!       I(t, tabcd, ac, ab, a, (bd)^{k₁}(act)^{k₂}pq𝕃⁻¹, b^{k₁}a^{k₂}p, rs𝕃⁻¹, r, u)
//!   + (𝕃−1) Σ α_{k₁,k₂,k₃}(u) (𝕃⁻¹r)^{k₂} (𝕃⁻¹s)^{k₃}
//!       I(t, tabcd, 1, 1, 1, t^{k₁}(ac)^{k₂}(bd)^{k₃}pq𝕃⁻¹, 1, rs𝕃⁻¹, 1, u)
//! ```
//!
//! Every term is an image of `I`, so the `u⁰` slice `f(p, q)` is supplied
//! as boundary data and the iteration determines the slices `u ≥ 1`.

use rayon::prelude::*;
use serde::Serialize;

use super::tables::{alpha_table, eps_table, AlphaForm, AlphaTable, EpsTable, Orientation};
use super::{TupleError, TUPLE_VARS};
use crate::pairs::J_VARS;
use crate::ring::{Bound, Exps, LaurentPoly, MonomialMap, MultiSeries, TruncStats, VarImage};
use crate::solver::fab_closed;

const T: usize = 0;
const A: usize = 1;
const B: usize = 2;
const C: usize = 3;
const D: usize = 4;
const P: usize = 5;
const Q: usize = 6;
const R: usize = 7;
const S: usize = 8;
const U: usize = 9;

/// What stands in the `u⁰` slice of the input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Boundary {
    /// The `u⁰` slice is `f(p, q)`, whatever the input stores there; the
    /// collapsed term uses its exact row sums.
    Fab,
    /// The input is used as stored.
    None,
}

/// Weight 1 on `t` and on `u` up to `order`, and `p, q, r, s ≤ cap`.
pub fn tuples_bound(order: u64, cap: u32) -> Bound {
    let mut weights = vec![0; TUPLE_VARS.len()];
    weights[T] = 1;
    weights[U] = 1;
    Bound {
        weights,
        max_weight: order,
        caps: (0..TUPLE_VARS.len())
            .map(|v| (P..=S).contains(&v).then_some(cap))
            .collect(),
    }
}

/// One substituted term: `Σ_m factor · map(I)`.
#[derive(Clone, Debug)]
struct Term {
    map: MonomialMap,
    factor: MultiSeries,
    collapsed: bool,
}

#[derive(Clone, Debug)]
pub struct Thm4 {
    bound: Bound,
    terms: Vec<Term>,
    seed: MultiSeries,
    row_seed: MultiSeries,
}

/// One round of the iteration; `lowest_changed` is in the `t + u` grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Thm4Step {
    pub iteration: usize,
    pub changed_terms: usize,
    pub lowest_changed: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Thm4Solution {
    pub i: MultiSeries,
    pub iterations: usize,
    pub trace: Vec<Thm4Step>,
    pub stats: TruncStats,
}

fn unit(v: usize) -> Vec<i64> {
    let mut e = vec![0; TUPLE_VARS.len()];
    e[v] = 1;
    e
}

fn mono(parts: &[(usize, i64)]) -> Vec<i64> {
    let mut e = vec![0; TUPLE_VARS.len()];
    for (v, k) in parts {
        e[*v] += k;
    }
    e
}

fn image(exps: Vec<i64>, l_exp: i64) -> VarImage {
    VarImage {
        scale: LaurentPoly::l_pow(l_exp),
        exps,
    }
}

/// `Σ_m table(m) · 𝕃^{−(k_r+k_s)} r^{k_r} s^{k_s} u^m`
fn factor_series(bound: &Bound, coeffs: &crate::ring::TSeries, kr: u32, ks: u32, scale: &LaurentPoly) -> MultiSeries {
    let mut f = MultiSeries::new(&TUPLE_VARS, bound.clone());
    let l = LaurentPoly::l_pow(-((kr + ks) as i64));
    for (m, c) in coeffs.nonzero_terms() {
        let mut e = vec![0; TUPLE_VARS.len()];
        e[R] = kr;
        e[S] = ks;
        e[U] = m as u32;
        f.add_term(e, &(c * &l) * scale);
    }
    f
}

impl Thm4 {
    /// Builds the tables and maps for `bound`, which must be graded by
    /// `t + u` and cap each of `p, q, r, s`.
    pub fn new(bound: &Bound) -> Result<Self, TupleError> {
        Self::with_options(bound, Orientation::XLeads, AlphaForm::Derived)
    }

    pub fn with_options(bound: &Bound, orientation: Orientation, form: AlphaForm) -> Result<Self, TupleError> {
        if bound.nvars() != TUPLE_VARS.len() || bound.weights[T] != 1 || bound.weights[U] != 1 {
            return Err(TupleError::InvalidBound("expected weight 1 on t and u over t,a,b,c,d,p,q,r,s,u".into()));
        }
        let cap = |v: usize| {
            bound.caps[v].ok_or_else(|| TupleError::InvalidBound(format!("{} is not capped", TUPLE_VARS[v])))
        };
        let (cp, cq, cr, cs) = (cap(P)?, cap(Q)?, cap(R)?, cap(S)?);
        let order = bound.max_weight as u32;
        let umax = order.min(cr.max(cs));
        let eps1: EpsTable = eps_table(cr, cs, umax, orientation)?;
        let eps2: EpsTable = eps_table(cs, cr, umax, orientation)?;
        let alpha: AlphaTable = alpha_table(order, cr, cs, umax, form)?;

        let tabcd = mono(&[(T, 1), (A, 1), (B, 1), (C, 1), (D, 1)]);
        let zero = vec![0; TUPLE_VARS.len()];
        let rs = image(mono(&[(R, 1), (S, 1)]), -1);
        let mut terms = Vec::new();
        let one = LaurentPoly::one();

        for (k, coeffs) in eps1.table.iter() {
            let (k1, k2) = (k[0] as i64, k[1] as i64);
            let p = mono(&[(A, k1), (C, k1), (B, k2), (D, k2), (T, k2), (P, 1), (Q, 1)]);
            let q = mono(&[(C, k1), (D, k2), (Q, 1)]);
            let images = vec![
                image(unit(T), 0),
                image(tabcd.clone(), 0),
                image(mono(&[(B, 1), (D, 1)]), 0),
                image(mono(&[(C, 1), (D, 1)]), 0),
                image(unit(D), 0),
                image(p, -1),
                image(q, 0),
                rs.clone(),
                image(unit(S), 0),
                image(unit(U), 0),
            ];
            terms.push(Term {
                map: MonomialMap::new(&TUPLE_VARS, images),
                factor: factor_series(bound, coeffs, k[0], k[1], &one),
                collapsed: false,
            });
        }
        for (k, coeffs) in eps2.table.iter() {
            let (k1, k2) = (k[0] as i64, k[1] as i64);
            let p = mono(&[(B, k1), (D, k1), (A, k2), (C, k2), (T, k2), (P, 1), (Q, 1)]);
            let q = mono(&[(B, k1), (A, k2), (P, 1)]);
            let images = vec![
                image(unit(T), 0),
                image(tabcd.clone(), 0),
                image(mono(&[(A, 1), (C, 1)]), 0),
                image(mono(&[(A, 1), (B, 1)]), 0),
                image(unit(A), 0),
                image(p, -1),
                image(q, 0),
                rs.clone(),
                image(unit(R), 0),
                image(unit(U), 0),
            ];
            terms.push(Term {
                map: MonomialMap::new(&TUPLE_VARS, images),
                factor: factor_series(bound, coeffs, k[1], k[0], &one),
                collapsed: false,
            });
        }
        let lm1 = LaurentPoly::l_minus_one();
        for (k, coeffs) in alpha.table.iter() {
            let (k1, k2, k3) = (k[0] as i64, k[1] as i64, k[2] as i64);
            let p = mono(&[(T, k1), (A, k2), (C, k2), (B, k3), (D, k3), (P, 1), (Q, 1)]);
            let images = vec![
                image(unit(T), 0),
                image(tabcd.clone(), 0),
                image(zero.clone(), 0),
                image(zero.clone(), 0),
                image(zero.clone(), 0),
                image(p, -1),
                image(zero.clone(), 0),
                rs.clone(),
                image(zero.clone(), 0),
                image(unit(U), 0),
            ];
            terms.push(Term {
                map: MonomialMap::new(&TUPLE_VARS, images),
                factor: factor_series(bound, coeffs, k[1], k[2], &lm1),
                collapsed: true,
            });
        }

        let closed = fab_closed();
        let mut seed = MultiSeries::new(&TUPLE_VARS, bound.clone());
        let mut row_seed = MultiSeries::new(&TUPLE_VARS, bound.clone());
        for i in 1..=cp {
            for j in 1..=cq {
                let mut e = vec![0; TUPLE_VARS.len()];
                e[P] = i;
                e[Q] = j;
                seed.add_term(e, closed.coefficient(i as usize, j as usize));
            }
            let mut e = vec![0; TUPLE_VARS.len()];
            e[P] = i;
            row_seed.add_term(e, closed.row_sum(i as usize)?);
        }
        Ok(Self {
            bound: bound.clone(),
            terms,
            seed,
            row_seed,
        })
    }

    pub fn bound(&self) -> &Bound {
        &self.bound
    }

    /// `f(p, q)` placed in the `u⁰` slice.
    pub fn seed(&self) -> &MultiSeries {
        &self.seed
    }

    fn check_support(&self, ic: &MultiSeries) -> Result<(), TupleError> {
        if ic.vars() != TUPLE_VARS {
            return Err(TupleError::InvalidBound(format!("variables {:?}", ic.vars())));
        }
        for (e, _) in ic.terms() {
            let ok = if e[U] == 0 {
                e.iter().enumerate().all(|(v, x)| *x == 0 || v == P || v == Q)
            } else {
                e[A] >= 1
            };
            if !ok {
                return Err(TupleError::InadmissibleMap(ic.monomial_string(e)));
            }
        }
        Ok(())
    }

    /// The right-hand side at `ic`, including its `u⁰` slice.
    pub fn rhs(&self, ic: &MultiSeries, boundary: Boundary) -> Result<(MultiSeries, TruncStats), TupleError> {
        self.check_support(ic)?;
        let (plain, collapsed) = match boundary {
            Boundary::None => (ic.clone(), ic.clone()),
            Boundary::Fab => {
                let body = ic.filter(|e| e[U] > 0);
                (body.add(&self.seed), body.add(&self.row_seed))
            }
        };
        let parts: Vec<Result<(MultiSeries, TruncStats), TupleError>> = self
            .terms
            .par_iter()
            .map(|term| {
                let src = if term.collapsed { &collapsed } else { &plain };
                let (img, mut stats) = term.map.apply(src, &self.bound)?;
                let (out, st) = img.mul_counted(&term.factor);
                stats += st;
                Ok((out, stats))
            })
            .collect();
        let mut out = MultiSeries::new(&TUPLE_VARS, self.bound.clone());
        let mut stats = TruncStats::default();
        for part in parts {
            let (s, st) = part?;
            out.add_assign(&s);
            stats += st;
        }
        Ok((out, stats))
    }

    pub fn solve(&self) -> Result<Thm4Solution, TupleError> {
        let order = self.bound.max_weight as usize;
        let mut i = self.seed.clone();
        let mut trace = Vec::new();
        for iteration in 1..=order + 1 {
            let (next, stats) = self.rhs(&i, Boundary::Fab)?;
            let diff = next.sub(&i);
            let lowest = diff.terms().map(|(e, _)| (e[T] + e[U]) as u64).min();
            trace.push(Thm4Step {
                iteration,
                changed_terms: diff.len(),
                lowest_changed: lowest,
            });
            match lowest {
                None => {
                    return Ok(Thm4Solution {
                        i,
                        iterations: iteration - 1,
                        trace,
                        stats,
                    })
                }
                Some(grade) if grade < iteration as u64 => {
                    return Err(TupleError::NoStabilization { iteration, grade })
                }
                Some(_) => i = next,
            }
        }
        let grade = trace.last().and_then(|s| s.lowest_changed).unwrap_or(0);
        Err(TupleError::NoStabilization {
            iteration: order + 1,
            grade,
        })
    }
}

pub fn thm4_rhs(ic: &MultiSeries, boundary: Boundary) -> Result<(MultiSeries, TruncStats), TupleError> {
    Thm4::new(ic.bound())?.rhs(ic, boundary)
}

pub fn solve_thm4(bound: &Bound) -> Result<Thm4Solution, TupleError> {
    Thm4::new(bound)?.solve()
}

/// The `u^k` slice over the remaining nine variables, with `t` bounded by
/// `order − k` and the caps of `i`.
pub fn u_slice(i: &MultiSeries, k: u32) -> MultiSeries {
    let b = i.bound();
    let bound = Bound {
        weights: b.weights[..U].to_vec(),
        max_weight: b.max_weight.saturating_sub(k as u64),
        caps: b.caps[..U].to_vec(),
    };
    let mut out = MultiSeries::new(&J_VARS, bound);
    for (e, c) in i.terms() {
        if e[U] == k {
            let e: Exps = e[..U].to_vec();
            out.add_term(e, c.clone());
        }
    }
    out
}
