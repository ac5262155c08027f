//! Closed forms of `G_{i,j}` for small gcd, and the facts derived from them.

use super::gtable::compute_g;
use super::{gcd, SolverError};
use crate::ring::{lm1_pow_l, LaurentPoly, LaurentQuotient, RationalFunc};

/// Dense `t`-polynomial from sparse `(t-exponent, coefficient)` pairs.
fn tpoly(terms: &[(usize, LaurentPoly)]) -> Vec<LaurentPoly> {
    let len = terms.iter().map(|(k, _)| k + 1).max().unwrap_or(0);
    let mut v = vec![LaurentPoly::zero(); len];
    for (k, c) in terms {
        v[*k] += c;
    }
    v
}

fn l(e: i64) -> LaurentPoly {
    LaurentPoly::l_pow(e)
}

/// `G_{a,a}(t)` for `a ≤ 4`.
///
/// The `a = 4` numerator printed in the literature,
/// `1 − t²𝕃⁻¹ + t⁶𝕃⁻¹ − t⁸𝕃⁻³`, disagrees with the recursion from `t¹⁶` on;
/// the numerator returned here is the one the recursion produces.
pub fn gaa_closed_form(a: usize) -> Result<RationalFunc, SolverError> {
    let one = LaurentPoly::one();
    Ok(match a {
        1 => RationalFunc::constant(lm1_pow_l(2, -2)),
        2 => RationalFunc::new(
            tpoly(&[(2, lm1_pow_l(3, -5))]),
            tpoly(&[(0, one), (2, -l(-1))]),
        ),
        3 => RationalFunc::new(
            tpoly(&[(6, lm1_pow_l(3, -7)), (8, lm1_pow_l(3, -8))]),
            tpoly(&[(0, one), (6, -l(-2))]),
        ),
        4 => {
            let num = RationalFunc::polynomial(tpoly(&[
                (0, one.clone()),
                (2, -l(-1)),
                (4, &l(-1) - &l(-2)),
                (6, l(-2)),
                (8, -l(-3)),
            ]));
            let den = tpoly(&[(0, one.clone()), (12, -l(-3))]);
            let den2 = tpoly(&[(0, one.clone()), (2, -l(-1))]);
            RationalFunc::monomial(lm1_pow_l(3, -9), 12)
                .mul(&num)
                .mul(&RationalFunc::new(vec![one.clone()], den))
                .mul(&RationalFunc::new(vec![one], den2))
        }
        0 => return Err(SolverError::InvalidBounds("indices start at 1".into())),
        _ => {
            return Err(SolverError::Unsupported(format!(
                "no closed form for G_{{a,a}} with a = {a} > 4"
            )))
        }
    })
}

/// `G_{i,j} = t^{(i−1)(j−1)−(a−1)²} 𝕃^{2a−i−j} G_{a,a}` with `a = gcd(i, j)`.
pub fn gij_closed_form(i: usize, j: usize) -> Result<RationalFunc, SolverError> {
    if i == 0 || j == 0 {
        return Err(SolverError::InvalidBounds("indices start at 1".into()));
    }
    let a = gcd(i, j);
    let gaa = gaa_closed_form(a)?;
    let texp = (i - 1) * (j - 1) - (a - 1) * (a - 1);
    let lexp = 2 * a as i64 - (i + j) as i64;
    Ok(RationalFunc::monomial(l(lexp), texp).mul(&gaa))
}

/// Lowest nonzero term of the computed `G_{i,j}`.
pub fn leading_term(i: usize, j: usize) -> (usize, LaurentPoly) {
    let (k, _) = leading_term_formula(i, j);
    let g = compute_g(i, j, k);
    let v = g.valuation().expect("G_{i,j} is nonzero");
    (v, g.coeff(v).clone())
}

/// `(𝕃−1)²t^{(i−1)(j−1)}𝕃^{−i−j}` when `gcd(i,j) = 1`, otherwise
/// `(𝕃−1)³t^{(i−1)(j−1)+a−1}𝕃^{−i−j−1}`.
pub fn leading_term_formula(i: usize, j: usize) -> (usize, LaurentPoly) {
    let a = gcd(i, j);
    let base = (i - 1) * (j - 1);
    let ij = (i + j) as i64;
    if a == 1 {
        (base, lm1_pow_l(2, -ij))
    } else {
        (base + a - 1, lm1_pow_l(3, -ij - 1))
    }
}

/// `G_{i,j}(1)` equals the measure `(𝕃−1)²𝕃^{−i−j}` of the whole stratum.
pub fn mass_check(i: usize, j: usize) -> Result<bool, SolverError> {
    let at_one = gij_closed_form(i, j)?.eval_t1()?;
    let expect = LaurentQuotient::from_poly(lm1_pow_l(2, -((i + j) as i64)));
    Ok(at_one == expect)
}

/// `G_{i,j} = t^{(i−1)(j−1)−(a−1)²} 𝕃^{2a−i−j} G_{a,a}` on the computed
/// series to `order`, for any gcd.
pub fn lemma3_check(i: usize, j: usize, order: usize) -> bool {
    let a = gcd(i, j);
    let texp = (i - 1) * (j - 1) - (a - 1) * (a - 1);
    let lexp = 2 * a as i64 - (i + j) as i64;
    let rhs = compute_g(a, a, order).shift_t(texp).scale(&l(lexp));
    compute_g(i, j, order) == rhs
}

/// Measure of the arcs with `v_x = i`, `v_y = j` and Milnor number `mu`.
pub fn milnor_measure(i: usize, j: usize, mu: usize) -> LaurentPoly {
    compute_g(i, j, mu).coeff(mu).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma3_on_computed_series() {
        for i in 1..=12 {
            for j in i..=12 {
                assert!(lemma3_check(i, j, 30), "({i},{j})");
            }
        }
    }

    #[test]
    fn closed_forms_match_recursion() {
        for i in 1..=12 {
            for j in 1..=12 {
                if gcd(i, j) > 4 {
                    assert!(gij_closed_form(i, j).is_err());
                    continue;
                }
                let rf = gij_closed_form(i, j).unwrap();
                assert_eq!(rf.expand(30).unwrap(), compute_g(i, j, 30), "G[{i},{j}]");
            }
        }
    }

    #[test]
    fn printed_a4_numerator_differs() {
        let printed = RationalFunc::monomial(lm1_pow_l(3, -9), 12)
            .mul(&RationalFunc::polynomial(tpoly(&[
                (0, LaurentPoly::one()),
                (2, -l(-1)),
                (6, l(-1)),
                (8, -l(-3)),
            ])))
            .mul(&RationalFunc::new(
                vec![LaurentPoly::one()],
                tpoly(&[(0, LaurentPoly::one()), (12, -l(-3))]),
            ))
            .mul(&RationalFunc::new(
                vec![LaurentPoly::one()],
                tpoly(&[(0, LaurentPoly::one()), (2, -l(-1))]),
            ));
        let computed = compute_g(4, 4, 20);
        let p = printed.expand(20).unwrap();
        assert_eq!(p.truncate(15), computed.truncate(15));
        assert_ne!(p.coeff(16), computed.coeff(16));
    }

    #[test]
    fn examples() {
        assert_eq!(
            gij_closed_form(3, 5).unwrap(),
            RationalFunc::monomial(lm1_pow_l(2, -8), 8)
        );
        assert_eq!(
            gij_closed_form(4, 6).unwrap(),
            RationalFunc::monomial(l(-6), 14).mul(&gaa_closed_form(2).unwrap())
        );
        assert!(gaa_closed_form(5).is_err());
        assert_eq!(leading_term(3, 3), (6, lm1_pow_l(3, -7)));
        assert_eq!(leading_term(2, 5), (4, lm1_pow_l(2, -7)));
        assert_eq!(leading_term(1, 1), (0, lm1_pow_l(2, -2)));
        for i in 1..=12 {
            for j in 1..=12 {
                assert_eq!(leading_term(i, j), leading_term_formula(i, j), "({i},{j})");
            }
        }
    }

    #[test]
    fn masses() {
        for (i, j) in [(2, 2), (3, 3), (1, 5), (4, 4), (4, 6), (8, 12)] {
            assert!(mass_check(i, j).unwrap(), "({i},{j})");
        }
        let g22 = gij_closed_form(2, 2).unwrap().eval_t1().unwrap();
        assert_eq!(g22.as_poly(), Some(&lm1_pow_l(2, -4)));
    }

    #[test]
    fn milnor() {
        assert_eq!(milnor_measure(2, 4, 6), lm1_pow_l(3, -8));
        assert_eq!(milnor_measure(1, 7, 0), lm1_pow_l(2, -8));
        assert!(milnor_measure(1, 7, 3).is_zero());
        assert_eq!(milnor_measure(2, 3, 2), lm1_pow_l(2, -5));
        assert!(milnor_measure(2, 3, 4).is_zero());
    }
}
