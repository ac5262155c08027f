//! The coefficient tables
//!
//! ```text
//! ∏_{k≥l} (1 − x^k y^l u)^{−(𝕃−1)²} = Σ ε_{k₁,k₂}(u) x^{k₁} y^{k₂}
//! ∏_{k<l} (1 − (xy)^k z^l u)^{−(𝕃−1)²} ∏_{k>l} (1 − y^k (xz)^l u)^{−(𝕃−1)²}
//!     ∏_n (1 − (xyz)^n u)^{−(𝕃−1)(𝕃−2)} = Σ α_{k₁,k₂,k₃}(u) x^{k₁} y^{k₂} z^{k₃}
//! ```
//!
//! with every index starting at 1.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::TupleError;
use crate::powerstruct::{motivic_exp, Stratum, StratumList};
use crate::ring::{Bound, Exps, LaurentPoly, MultiSeries, TSeries};

/// Which of the two indices of an ε-factor may be the larger one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    /// `∏_{k≥l} (1 − x^k y^l u)`
    #[default]
    XLeads,
    /// `∏_{k≤l} (1 − x^k y^l u)`
    YLeads,
}

/// The α-product as derived from the measures of the strata, or with the
/// second and third factors as they are printed in the source derivation:
/// `∏_{k>l}(1 − x^k(yz)^l u)` and `∏_{k<l}(1 − (xyz)^k 𝕃^{−l} u)^{−(𝕃−2)(𝕃−1)²}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlphaForm {
    #[default]
    Derived,
    Printed,
}

/// Coefficients `table[k] = Σ_m c_{k,m} u^m`, polynomial in `u` up to `umax`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoeffTable {
    pub maxima: Vec<u32>,
    pub umax: u32,
    pub entries: BTreeMap<Exps, TSeries>,
}

impl CoeffTable {
    fn from_series(s: &MultiSeries, maxima: Vec<u32>, umax: u32) -> Self {
        let mut entries: BTreeMap<Exps, TSeries> = BTreeMap::new();
        for (e, c) in s.terms() {
            let entry = entries
                .entry(e[1..].to_vec())
                .or_insert_with(|| TSeries::zero(umax as usize));
            entry.set_coeff(e[0] as usize, c.clone());
        }
        Self { maxima, umax, entries }
    }

    /// The entry at `k`, zero when absent.
    pub fn get(&self, k: &[u32]) -> TSeries {
        self.entries
            .get(k)
            .cloned()
            .unwrap_or_else(|| TSeries::zero(self.umax as usize))
    }

    /// Coefficient of `x^k u^m`.
    pub fn coeff(&self, k: &[u32], m: u32) -> LaurentPoly {
        self.entries
            .get(k)
            .map(|s| s.coeff(m as usize).clone())
            .unwrap_or_default()
    }

    /// Nonzero entries.
    pub fn iter(&self) -> impl Iterator<Item = (&Exps, &TSeries)> + '_ {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsTable {
    pub orientation: Orientation,
    pub table: CoeffTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaTable {
    pub form: AlphaForm,
    pub table: CoeffTable,
}

fn capped_bound(umax: u32, maxima: &[u32]) -> Bound {
    let mut caps = vec![Some(umax)];
    caps.extend(maxima.iter().map(|m| Some(*m)));
    Bound {
        weights: vec![0; caps.len()],
        max_weight: 0,
        caps,
    }
}

fn eps_strata(kmax: u32, lmax: u32, orientation: Orientation) -> Vec<(Exps, LaurentPoly)> {
    let mu = crate::ring::lm1_pow_l(2, 0);
    let mut out = Vec::new();
    for k in 1..=kmax {
        for l in 1..=lmax {
            let keep = match orientation {
                Orientation::XLeads => k >= l,
                Orientation::YLeads => k <= l,
            };
            if keep {
                out.push((vec![k, l], mu.clone()));
            }
        }
    }
    out
}

fn alpha_strata(maxima: &[u32], form: AlphaForm) -> Vec<(Exps, LaurentPoly)> {
    let lm1 = LaurentPoly::l_minus_one();
    let lm2 = &lm1 - &LaurentPoly::one();
    let sq = crate::ring::lm1_pow_l(2, 0);
    let top = maxima.iter().copied().max().unwrap_or(0);
    let mut out = Vec::new();
    for k in 1..=top {
        for l in 1..=top {
            if k < l {
                out.push((vec![k, k, l], sq.clone()));
            }
            if k > l {
                let value = match form {
                    AlphaForm::Derived => vec![l, k, l],
                    AlphaForm::Printed => vec![k, l, l],
                };
                out.push((value, sq.clone()));
            }
        }
        let mu = match form {
            AlphaForm::Derived => &lm1 * &lm2,
            // Σ_{l>k} 𝕃^{−l}·(𝕃−2)(𝕃−1)² = (𝕃−2)(𝕃−1)𝕃^{−k}
            AlphaForm::Printed => (&lm1 * &lm2).shift(-(k as i64)),
        };
        out.push((vec![k, k, k], mu));
    }
    out.retain(|(v, _)| v.iter().zip(maxima).all(|(e, m)| e <= m));
    out
}

fn expand(
    vars: &[&str],
    strata: Vec<(Exps, LaurentPoly)>,
    maxima: &[u32],
    umax: u32,
) -> Result<MultiSeries, TupleError> {
    let list = StratumList::new(
        vars,
        strata
            .into_iter()
            .map(|(value, measure)| Stratum {
                value,
                scale: LaurentPoly::one(),
                measure,
            })
            .collect(),
    )?;
    Ok(motivic_exp(&list, &capped_bound(umax, maxima))?.0)
}

/// ε up to `x^{k1max} y^{k2max} u^{umax}`.
pub fn eps_table(k1max: u32, k2max: u32, umax: u32, orientation: Orientation) -> Result<EpsTable, TupleError> {
    let maxima = [k1max, k2max];
    let s = expand(&["x", "y"], eps_strata(k1max, k2max, orientation), &maxima, umax)?;
    Ok(EpsTable {
        orientation,
        table: CoeffTable::from_series(&s, maxima.to_vec(), umax),
    })
}

/// α up to `x^{k1max} y^{k2max} z^{k3max} u^{umax}`.
pub fn alpha_table(
    k1max: u32,
    k2max: u32,
    k3max: u32,
    umax: u32,
    form: AlphaForm,
) -> Result<AlphaTable, TupleError> {
    let maxima = [k1max, k2max, k3max];
    let s = expand(&["x", "y", "z"], alpha_strata(&maxima, form), &maxima, umax)?;
    Ok(AlphaTable {
        form,
        table: CoeffTable::from_series(&s, maxima.to_vec(), umax),
    })
}

/// The same products multiplied out factor by factor, writing
/// `(1 − X)^{−Σ c_j 𝕃^j}` as a product of geometric series and linear
/// factors `1 − 𝕃^j X`.
fn brute_product(vars: &[&str], strata: &[(Exps, LaurentPoly)], maxima: &[u32], umax: u32) -> MultiSeries {
    let mut names = vec!["u"];
    names.extend_from_slice(vars);
    let bound = capped_bound(umax, maxima);
    let mut acc = MultiSeries::new(&names, bound.clone());
    acc.add_term(vec![0; names.len()], LaurentPoly::one());
    for (value, mu) in strata {
        let mut unit = vec![1u32];
        unit.extend(value.iter().copied());
        for (j, c) in mu.terms() {
            let reps: u32 = c.magnitude().try_into().expect("small multiplicity");
            let mut factor = MultiSeries::new(&names, bound.clone());
            if c.sign() == num_bigint::Sign::Plus {
                for n in 0..=umax {
                    let e = unit.iter().map(|x| x * n).collect();
                    factor.add_term(e, LaurentPoly::l_pow(j * n as i64));
                }
            } else {
                factor.add_term(vec![0; names.len()], LaurentPoly::one());
                factor.add_term(unit.clone(), -LaurentPoly::l_pow(j));
            }
            for _ in 0..reps {
                acc = acc.mul(&factor);
            }
        }
    }
    acc
}

/// Brute-force ε for cross-checking [`eps_table`].
pub fn eps_brute(k1max: u32, k2max: u32, umax: u32, orientation: Orientation) -> CoeffTable {
    let maxima = [k1max, k2max];
    let s = brute_product(&["x", "y"], &eps_strata(k1max, k2max, orientation), &maxima, umax);
    CoeffTable::from_series(&s, maxima.to_vec(), umax)
}

/// Brute-force α for cross-checking [`alpha_table`].
pub fn alpha_brute(k1max: u32, k2max: u32, k3max: u32, umax: u32, form: AlphaForm) -> CoeffTable {
    let maxima = [k1max, k2max, k3max];
    let s = brute_product(&["x", "y", "z"], &alpha_strata(&maxima, form), &maxima, umax);
    CoeffTable::from_series(&s, maxima.to_vec(), umax)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::lm1_pow_l;

    #[test]
    fn eps_examples() {
        let e = eps_table(4, 4, 3, Orientation::XLeads).unwrap();
        assert!(e.table.get(&[0, 0]).coeff(0).is_one());
        assert_eq!(e.table.get(&[0, 0]).valuation(), Some(0));
        assert_eq!(e.table.get(&[0, 0]).nonzero_terms().count(), 1);
        assert_eq!(e.table.coeff(&[1, 1], 1), lm1_pow_l(2, 0));
        assert_eq!(e.table.coeff(&[2, 1], 1), lm1_pow_l(2, 0));
        assert!(e.table.coeff(&[1, 2], 1).is_zero());
        let e = eps_table(4, 4, 3, Orientation::YLeads).unwrap();
        assert!(e.table.coeff(&[2, 1], 1).is_zero());
        assert_eq!(e.table.coeff(&[1, 2], 1), lm1_pow_l(2, 0));
        for (k, s) in e.table.iter() {
            if k.iter().any(|x| *x > 0) {
                assert!(s.coeff(0).is_zero());
            }
        }
    }

    #[test]
    fn alpha_examples() {
        let a = alpha_table(3, 3, 3, 2, AlphaForm::Derived).unwrap();
        assert!(a.table.coeff(&[0, 0, 0], 0).is_one());
        assert_eq!(a.table.coeff(&[1, 1, 2], 1), lm1_pow_l(2, 0));
        assert_eq!(a.table.coeff(&[1, 2, 1], 1), lm1_pow_l(2, 0));
        let lm1 = LaurentPoly::l_minus_one();
        assert_eq!(a.table.coeff(&[1, 1, 1], 1), &lm1 * &(&lm1 - &LaurentPoly::one()));
        let p = alpha_table(3, 3, 3, 2, AlphaForm::Printed).unwrap();
        assert_eq!(
            p.table.coeff(&[1, 1, 1], 1),
            (&lm1 * &(&lm1 - &LaurentPoly::one())).shift(-1)
        );
        assert!(p.table.coeff(&[1, 2, 1], 1).is_zero());
        assert_eq!(p.table.coeff(&[2, 1, 1], 1), lm1_pow_l(2, 0));
    }

    #[test]
    fn tables_match_brute_force() {
        for n in 1..=5u32 {
            for o in [Orientation::XLeads, Orientation::YLeads] {
                assert_eq!(eps_table(n, n, 3, o).unwrap().table, eps_brute(n, n, 3, o), "eps {n} {o:?}");
            }
            assert_eq!(eps_table(n, 2, 2, Orientation::XLeads).unwrap().table, eps_brute(n, 2, 2, Orientation::XLeads));
        }
        for n in 1..=4u32 {
            for f in [AlphaForm::Derived, AlphaForm::Printed] {
                assert_eq!(alpha_table(n, n, n, 2, f).unwrap().table, alpha_brute(n, n, n, 2, f), "alpha {n} {f:?}");
            }
        }
        assert_eq!(
            alpha_table(5, 3, 2, 2, AlphaForm::Derived).unwrap().table,
            alpha_brute(5, 3, 2, 2, AlphaForm::Derived)
        );
    }
}
