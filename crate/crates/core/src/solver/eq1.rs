//! The series `I(t,a,b,c,d,f)`, its functional equation
//!
//! ```text
//! I(t,a,b,c,d,f) = I(t, t⁻¹ab𝕃⁻¹, b, tcdf, df², f)
//!                + I(t, t⁻¹ab𝕃⁻¹, a, tcdf, dc², c)
//!                + (𝕃−1) I(t, t⁻¹ab𝕃⁻¹, 1, tcdf, 1, 1)
//! ```
//!
//! and the symmetry `I(t,a,b,c,d,f) = I(t,b,a,f,d,c)`.

use std::collections::HashMap;

use serde::Serialize;

use super::gtable::GTable;
use super::SolverError;
use crate::ring::{
    Bound, Exps, LaurentPoly, MonomialMap, MultiSeries, RationalFunc, RingError, TSeries,
    TruncStats,
};

pub const I_VARS: [&str; 6] = ["t", "a", "b", "c", "d", "f"];

fn support(m: usize, i: usize, j: usize) -> Exps {
    [m, i, j, i * i, i * j, j * j].iter().map(|&x| x as u32).collect()
}

fn on_support(e: &[u32]) -> bool {
    let (i, j) = (e[1] as u64, e[2] as u64);
    e[3] as u64 == i * i && e[4] as u64 == i * j && e[5] as u64 == j * j
}

/// `Σ G_{i,j}(t) a^i b^j c^{i²} d^{ij} f^{j²}` over the table's entries in
/// both orientations.
pub fn assemble_i_from_table(table: &GTable) -> MultiSeries {
    let mut s = MultiSeries::new(&I_VARS, Bound::t_graded(6, 0, table.order() as u64));
    for (i, j, g) in table.entries() {
        for (m, c) in g.nonzero_terms() {
            s.add_term(support(m, i, j), c.clone());
            if i != j {
                s.add_term(support(m, j, i), c.clone());
            }
        }
    }
    s
}

pub fn assemble_i(imax: usize, jmax: usize, order: usize) -> Result<MultiSeries, SolverError> {
    Ok(assemble_i_from_table(&GTable::compute(imax, jmax, order)?))
}

/// Index rectangle and `t`-order over which the equation is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Eq1Window {
    pub imax: usize,
    pub jmax: usize,
    pub torder: usize,
}

impl Eq1Window {
    /// Whether `G_{x,y}` lies in the window (in either orientation).
    fn known(&self, x: usize, y: usize) -> bool {
        x >= 1 && y >= 1 && ((x <= self.imax && y <= self.jmax) || (y <= self.imax && x <= self.jmax))
    }

    /// Largest `l` with `G_{x,1..=l}` all known.
    fn row_limit(&self, x: usize) -> usize {
        let mut lim = 0;
        if x <= self.imax {
            lim = lim.max(self.jmax);
        }
        if x <= self.jmax {
            lim = lim.max(self.imax);
        }
        lim
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Eq1Report {
    pub window: Eq1Window,
    /// LHS − RHS on the checked monomials.
    pub residual: MultiSeries,
    /// Number of `(i, j, t-exponent)` cells compared.
    pub checked: usize,
    pub stats: TruncStats,
    pub first_offender: Option<String>,
}

impl Eq1Report {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

fn shift_factor(x: usize, steps: usize, order: usize) -> TSeries {
    TSeries::monomial(
        LaurentPoly::l_pow(-((x * steps) as i64)),
        (x * x - x) * steps,
        order,
    )
}

/// Checks the functional equation on every window cell.
///
/// The diagonal term needs whole rows `Σ_l G_{i,l}`; beyond the window the
/// row is continued by `G_{i,l} = t^{i²−i}𝕃^{−i}G_{i,l−i}`, which reaches
/// only entries already in the window. For `i = 1` that continuation is a
/// geometric series in `𝕃⁻¹` and is summed in closed form.
pub fn verify_eq1(i_series: &MultiSeries, window: Eq1Window) -> Result<Eq1Report, SolverError> {
    if i_series.vars() != I_VARS {
        return Err(RingError::VariableMismatch(i_series.vars().join(",")).into());
    }
    let torder = window
        .torder
        .min(i_series.bound().max_weight.min(usize::MAX as u64) as usize);
    if window.imax == 0 || window.jmax == 0 {
        return Err(SolverError::WindowTooSmall);
    }
    if let Some((e, _)) = i_series.terms().find(|(e, _)| !on_support(e)) {
        return Err(SolverError::Malformed(format!(
            "monomial {} is off the support",
            i_series.monomial_string(e)
        )));
    }

    let bound = Bound::t_graded(6, 0, torder as u64);
    let mut windowed = MultiSeries::new(&I_VARS, bound.clone());
    let mut g: HashMap<(usize, usize), TSeries> = HashMap::new();
    for (e, c) in i_series.terms() {
        let (m, x, y) = (e[0] as usize, e[1] as usize, e[2] as usize);
        if m <= torder && window.known(x, y) {
            windowed.add_term(e.clone(), c.clone());
            g.entry((x, y))
                .or_insert_with(|| TSeries::zero(torder))
                .set_coeff(m, c.clone());
        }
    }
    let entry = |x: usize, y: usize| g.get(&(x, y)).cloned().unwrap_or_else(|| TSeries::zero(torder));

    let one = LaurentPoly::one();
    let map1 = MonomialMap::from_spec(
        &I_VARS,
        &[("a", "t^-1*a*b", -1), ("c", "t*c*d*f", 0), ("d", "d*f^2", 0)],
    );
    let map2 = MonomialMap::from_spec(
        &I_VARS,
        &[
            ("a", "t^-1*a*b", -1),
            ("b", "a", 0),
            ("c", "t*c*d*f", 0),
            ("d", "d*c^2", 0),
            ("f", "c", 0),
        ],
    );
    let map3 = MonomialMap::from_spec(
        &I_VARS,
        &[
            ("a", "t^-1*a*b", -1),
            ("b", "1", 0),
            ("c", "t*c*d*f", 0),
            ("d", "1", 0),
            ("f", "1", 0),
        ],
    );
    let mut rhs = MultiSeries::new(&I_VARS, bound.clone());
    let mut stats = map1.apply_into(&windowed, &one, &mut rhs)?;
    stats += map2.apply_into(&windowed, &one, &mut rhs)?;
    stats += map3.apply_into(&windowed, &LaurentPoly::l_minus_one(), &mut rhs)?;

    // Row tails beyond the window, feeding the diagonal cells.
    let n = window.imax.min(window.jmax);
    for x in 1..=n {
        let lim = window.row_limit(x);
        let tail = if x == 1 {
            // (𝕃−1)𝕃⁻¹ Σ_{k≥1} 𝕃^{−k} G_{1,lim} = 𝕃⁻¹ G_{1,lim}
            let geometric = RationalFunc::new(
                vec![LaurentPoly::zero(), LaurentPoly::l_pow(-1)],
                vec![one.clone(), -LaurentPoly::l_pow(-1)],
            );
            let unit = geometric
                .mul(&RationalFunc::constant(LaurentPoly::l_minus_one()))
                .eval_t1()?;
            let unit = unit.as_poly().cloned().ok_or(RingError::PoleAtOne)?;
            entry(1, lim).scale(&(&unit * &LaurentPoly::l_pow(-1)))
        } else {
            let step = x * x - x;
            let mut sum = TSeries::zero(torder);
            let mut l = lim + 1;
            loop {
                let steps = (l - lim).div_ceil(x);
                if (steps + 1) * step > torder {
                    break;
                }
                sum = &sum + &(&shift_factor(x, steps, torder) * &entry(x, l - steps * x));
                l += 1;
            }
            (&sum * &shift_factor(x, 1, torder)).scale(&LaurentPoly::l_minus_one())
        };
        for (m, c) in tail.nonzero_terms() {
            rhs.add_term(support(m, x, x), c.clone());
        }
    }

    let lhs_minus_rhs = windowed.sub(&rhs);
    let residual = lhs_minus_rhs.filter(|e| window.known(e[1] as usize, e[2] as usize) && on_support(e));
    let mut cells = 0;
    for x in 1..=window.imax.max(window.jmax) {
        for y in 1..=window.imax.max(window.jmax) {
            if window.known(x, y) {
                cells += torder + 1;
            }
        }
    }
    let first_offender = residual
        .terms()
        .next()
        .map(|(e, c)| format!("{} (residual {c})", residual.monomial_string(e)));
    Ok(Eq1Report {
        window: Eq1Window { torder, ..window },
        residual,
        checked: cells,
        stats,
        first_offender,
    })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SymmetryReport {
    /// Monomials whose coefficient differs from that of their mirror.
    pub asymmetric: Vec<String>,
    /// Monomials outside `c = a², d = ab, f = b²`.
    pub off_support: Vec<String>,
}

impl SymmetryReport {
    pub fn holds(&self) -> bool {
        self.asymmetric.is_empty() && self.off_support.is_empty()
    }
}

/// Checks invariance under `a ↔ b, c ↔ f` on the largest square of
/// `(a, b)` exponents present, and the support relations.
pub fn verify_symmetry_and_support(i_series: &MultiSeries) -> SymmetryReport {
    let mut report = SymmetryReport::default();
    let amax = i_series.terms().map(|(e, _)| e[1]).max().unwrap_or(0);
    let bmax = i_series.terms().map(|(e, _)| e[2]).max().unwrap_or(0);
    let n = amax.min(bmax);
    let swapped = i_series.swap_vars(&[("a", "b"), ("c", "f")]);
    let in_square = |e: &[u32]| e[1] <= n && e[2] <= n;
    for (e, c) in i_series.terms() {
        if !on_support(e) {
            report.off_support.push(i_series.monomial_string(e));
        }
        if in_square(e) && swapped.coeff(e) != *c {
            report.asymmetric.push(i_series.monomial_string(e));
        }
    }
    for (e, _) in swapped.terms() {
        if in_square(e) && i_series.coeff(e).is_zero() {
            report.asymmetric.push(i_series.monomial_string(e));
        }
    }
    report
}
