//! The two-variable integral `f(a, b) = ∫ a^{v_x} b^{v_y}` and its
//! functional equation
//! `f(a,b) = f(ab𝕃⁻¹, a) + f(ab𝕃⁻¹, b) + (𝕃−1) f(ab𝕃⁻¹, 1)`.

use serde::Serialize;

use super::system6::{solve_system6, System6Instance, System6Table};
use super::SolverError;
use crate::ring::{
    lm1_pow_l, Bound, LaurentPoly, MonomialMap, MultiSeries, RationalFunc, TruncStats,
};

/// `f(a, b) = pre · ab / ((1 − ρ_a a)(1 − ρ_b b))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FabClosed {
    pub prefactor: LaurentPoly,
    pub ratio_a: LaurentPoly,
    pub ratio_b: LaurentPoly,
}

pub fn fab_closed() -> FabClosed {
    FabClosed {
        prefactor: lm1_pow_l(2, -2),
        ratio_a: LaurentPoly::l_pow(-1),
        ratio_b: LaurentPoly::l_pow(-1),
    }
}

impl FabClosed {
    /// Coefficient of `a^i b^j`.
    pub fn coefficient(&self, i: usize, j: usize) -> LaurentPoly {
        if i == 0 || j == 0 {
            return LaurentPoly::zero();
        }
        &(&self.prefactor * &self.ratio_a.pow(i as u32 - 1)) * &self.ratio_b.pow(j as u32 - 1)
    }

    /// `f(P, 1)` coefficient of `P^i`: the row sum `Σ_j f_{ij}`, taken as
    /// the `t → 1` value of the geometric series in `j`.
    pub fn row_sum(&self, i: usize) -> Result<LaurentPoly, SolverError> {
        if i == 0 {
            return Ok(LaurentPoly::zero());
        }
        let rf = RationalFunc::new(
            vec![LaurentPoly::zero(), self.coefficient(i, 1)],
            vec![LaurentPoly::one(), -self.ratio_b.clone()],
        );
        let q = rf.eval_t1()?;
        q.as_poly()
            .cloned()
            .ok_or_else(|| SolverError::Unsupported(format!("row sum {q} is not a Laurent polynomial")))
    }
}

/// `(𝕃−1)²𝕃^{−i−j}` for `i, j ≥ 1`, zero on the axes.
pub fn fab_coefficient(i: usize, j: usize) -> LaurentPoly {
    fab_closed().coefficient(i, j)
}

fn ab_bound(amax: usize, bmax: usize) -> Bound {
    Bound {
        weights: vec![1, 1],
        max_weight: (amax + bmax) as u64,
        caps: vec![Some(amax as u32), Some(bmax as u32)],
    }
}

/// `f` over `(a, b)` with `a ≤ amax`, `b ≤ bmax`.
pub fn fab_series(amax: usize, bmax: usize) -> MultiSeries {
    let closed = fab_closed();
    let mut s = MultiSeries::new(&["a", "b"], ab_bound(amax, bmax));
    for i in 1..=amax {
        for j in 1..=bmax {
            s.add_term(vec![i as u32, j as u32], closed.coefficient(i, j));
        }
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct Eq4Report {
    pub residual: MultiSeries,
    pub checked: usize,
    pub stats: TruncStats,
}

impl Eq4Report {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// LHS − RHS of the functional equation for `f` on `a ≤ imax, b ≤ jmax`.
pub fn verify_eq4(imax: usize, jmax: usize) -> Result<Eq4Report, SolverError> {
    if imax == 0 || jmax == 0 {
        return Err(SolverError::WindowTooSmall);
    }
    let n = imax.max(jmax);
    let vars = ["a", "b"];
    let source = fab_series(n, n);
    let target = ab_bound(imax, jmax);
    let lhs = fab_series(imax, jmax);
    let mut rhs = MultiSeries::new(&vars, target.clone());
    let one = LaurentPoly::one();
    let m1 = MonomialMap::from_spec(&vars, &[("a", "a*b", -1), ("b", "a", 0)]);
    let m2 = MonomialMap::from_spec(&vars, &[("a", "a*b", -1)]);
    let mut stats = m1.apply_into(&source, &one, &mut rhs)?;
    stats += m2.apply_into(&source, &one, &mut rhs)?;

    // f(P, 1) as a series in P alone, then P ↦ ab𝕃⁻¹.
    let closed = fab_closed();
    let mut collapsed = MultiSeries::new(&vars, ab_bound(n, 0));
    for i in 1..=n {
        collapsed.add_term(vec![i as u32, 0], closed.row_sum(i)?);
    }
    stats += m2.apply_into(&collapsed, &LaurentPoly::l_minus_one(), &mut rhs)?;

    Ok(Eq4Report {
        residual: lhs.sub(&rhs),
        checked: imax * jmax,
        stats,
    })
}

/// The coefficient recursion for `f` solved on exact Laurent polynomials.
pub fn solve_system5(imax: usize, jmax: usize) -> Result<System6Table<LaurentPoly>, SolverError> {
    let n = imax.max(jmax);
    solve_system6(&System6Instance {
        eps: (1..=n).map(|i| LaurentPoly::l_pow(-(i as i64))).collect(),
        c: LaurentPoly::l_minus_one(),
        seed: lm1_pow_l(2, -2),
        imax,
        jmax,
    })
}
