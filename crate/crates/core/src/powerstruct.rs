//! The power structure `(A(t), m) ↦ A(t)^m` over ℤ[𝕃, 𝕃⁻¹], fixed by
//! `(1−t)^{−𝕃^j} = (1−t𝕃^j)^{−1}`, and the motivic exponential built on it.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{Bound, Exps, LaurentPoly, MultiSeries, TSeries, TruncStats};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PowerError {
    #[error("constant term must be 1, found {0}")]
    NonUnitConstant(String),
    #[error("stratum value {0} appears twice")]
    DuplicateValue(String),
    #[error("stratum {0} has zero measure")]
    ZeroMeasure(String),
    #[error("stratum value has {found} exponents, expected {expected}")]
    Arity { expected: usize, found: usize },
    #[error("the bound does not limit the power of u")]
    Unbounded,
}

/// `(1 − x)^{−c} = Σ_n C(c+n−1, n) xⁿ` for any integer `c`.
fn binomial_series(c: &BigInt, order: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(order + 1);
    let mut a = BigInt::one();
    out.push(a.clone());
    for n in 1..=order {
        a = a * (c + BigInt::from(n - 1)) / BigInt::from(n);
        out.push(a.clone());
    }
    out
}

/// `(1 − t)^{−m} = ∏_j (1 − t𝕃^j)^{−c_j}` for `m = Σ c_j 𝕃^j`.
pub fn one_minus_t_pow(m: &LaurentPoly, order: usize) -> TSeries {
    let mut acc = TSeries::one(order);
    for (j, c) in m.terms() {
        let coeffs = binomial_series(c, order)
            .into_iter()
            .enumerate()
            .map(|(n, b)| LaurentPoly::monomial(b, j * n as i64))
            .collect();
        acc = &acc * &TSeries::from_coeffs(coeffs, order);
    }
    acc
}

/// `[S^k m]` for `k = 0..=kmax`: the coefficients of `(1 − t)^{−m}`.
pub fn sym_powers(m: &LaurentPoly, kmax: usize) -> Vec<LaurentPoly> {
    one_minus_t_pow(m, kmax).coeffs().to_vec()
}

/// The exponents `b_k` with `A = ∏_{k≥1} (1 − t^k)^{−b_k}`.
pub fn product_exponents(a: &TSeries) -> Result<Vec<LaurentPoly>, PowerError> {
    if !a.coeff(0).is_one() {
        return Err(PowerError::NonUnitConstant(a.coeff(0).to_string()));
    }
    let order = a.order();
    let mut rest = a.clone();
    let mut b = vec![LaurentPoly::zero()];
    for k in 1..=order {
        let bk = rest.coeff(k).clone();
        if !bk.is_zero() {
            let kill = one_minus_t_pow(&-bk.clone(), order / k)
                .extend_exact(order)
                .substitute_power(k);
            rest = &rest * &kill;
        }
        b.push(bk);
    }
    Ok(b)
}

/// `A(t)^m` through `A = ∏ (1 − t^k)^{−b_k}`, so that
/// `A^m = ∏ ((1 − u)^{−m b_k})|_{u = t^k}`.
pub fn series_pow(a: &TSeries, m: &LaurentPoly) -> Result<TSeries, PowerError> {
    let order = a.order();
    let b = product_exponents(a)?;
    let mut out = TSeries::one(order);
    for (k, bk) in b.iter().enumerate().skip(1) {
        if bk.is_zero() {
            continue;
        }
        let factor = one_minus_t_pow(&(m * bk), order / k)
            .extend_exact(order)
            .substitute_power(k);
        out = &out * &factor;
    }
    Ok(out)
}

/// One piece of a partition of the arc space: the value `scale · x^value`
/// of the integrand on it and its measure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub value: Exps,
    pub scale: LaurentPoly,
    pub measure: LaurentPoly,
}

/// Strata over a declared variable tuple with pairwise distinct values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumList {
    vars: Vec<String>,
    strata: Vec<Stratum>,
}

impl StratumList {
    pub fn new<S: AsRef<str>>(vars: &[S], strata: Vec<Stratum>) -> Result<Self, PowerError> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for s in &strata {
            if s.value.len() != vars.len() {
                return Err(PowerError::Arity {
                    expected: vars.len(),
                    found: s.value.len(),
                });
            }
            if s.measure.is_zero() {
                return Err(PowerError::ZeroMeasure(format!("{:?}", s.value)));
            }
            if !seen.insert((s.value.clone(), s.scale.clone())) {
                return Err(PowerError::DuplicateValue(format!("{:?}", s.value)));
            }
        }
        Ok(Self { vars, strata })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }
}

/// `∏_j (1 − u·f_j)^{−μ_j}` over the variables `(u, vars…)`, truncated to
/// `bound`. The `uᵏ` slice integrates `∏ f(γ_i)` over unordered `k`-tuples.
pub fn motivic_exp(
    strata: &StratumList,
    bound: &Bound,
) -> Result<(MultiSeries, TruncStats), PowerError> {
    let mut vars = vec!["u".to_string()];
    vars.extend(strata.vars.iter().cloned());
    if bound.caps[0].is_none() && bound.weights[0] == 0 {
        return Err(PowerError::Unbounded);
    }
    let mut out = MultiSeries::new(&vars, bound.clone());
    out.add_term(vec![0; vars.len()], LaurentPoly::one());
    let mut stats = TruncStats::default();
    for s in &strata.strata {
        let mut unit: Exps = vec![1];
        unit.extend(s.value.iter().copied());
        // Largest n with u^n f^n inside the bound.
        let mut nmax = 0usize;
        loop {
            let e: Exps = unit.iter().map(|x| x * (nmax as u32 + 1)).collect();
            if !bound.admits(&e) {
                break;
            }
            nmax += 1;
        }
        let sym = sym_powers(&s.measure, nmax);
        let mut factor = MultiSeries::new(&vars, bound.clone());
        for (n, c) in sym.into_iter().enumerate() {
            let e: Exps = unit.iter().map(|x| x * n as u32).collect();
            factor.add_term(e, &c * &s.scale.pow(n as u32));
        }
        let (next, st) = out.mul_counted(&factor);
        stats += st;
        out = next;
    }
    Ok((out, stats))
}

/// Inputs for one check of the seven axioms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomInstance {
    pub a: TSeries,
    pub b: TSeries,
    pub m: LaurentPoly,
    pub n: LaurentPoly,
    /// Substitution power for `A(t^k)`.
    pub k: usize,
}

/// The axioms (numbered 1 to 7) that fail on `inst`, each compared as an
/// exact identity of truncated series.
pub fn failed_axioms(inst: &AxiomInstance) -> Result<Vec<u8>, PowerError> {
    let AxiomInstance { a, b, m, n, k } = inst;
    let order = a.order().min(b.order());
    let (a, b) = (a.truncate(order), b.truncate(order));
    let pow = |x: &TSeries, e: &LaurentPoly| series_pow(x, e);
    let mut failed = Vec::new();
    if pow(&a, &LaurentPoly::zero())? != TSeries::one(order) {
        failed.push(1);
    }
    if pow(&a, &LaurentPoly::one())? != a {
        failed.push(2);
    }
    if pow(&(&a * &b), m)? != &pow(&a, m)? * &pow(&b, m)? {
        failed.push(3);
    }
    if pow(&a, &(m + n))? != &pow(&a, m)? * &pow(&a, n)? {
        failed.push(4);
    }
    if pow(&a, &(m * n))? != pow(&pow(&a, n)?, m)? {
        failed.push(5);
    }
    let one_plus_t = TSeries::from_coeffs(vec![LaurentPoly::one(), LaurentPoly::one()], order.max(1));
    if pow(&one_plus_t, m)?.coeff(1) != m {
        failed.push(6);
    }
    if pow(&a.substitute_power(*k), m)? != pow(&a, m)?.substitute_power(*k) {
        failed.push(7);
    }
    Ok(failed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn defining_series() {
        let s = one_minus_t_pow(&LaurentPoly::l(), 3);
        assert_eq!(s.coeffs(), &[lp("1"), lp("L"), lp("L^2"), lp("L^3")]);
        let s = one_minus_t_pow(&LaurentPoly::l_pow(-2), 2);
        assert_eq!(s.coeffs(), &[lp("1"), lp("L^-2"), lp("L^-4")]);
        assert_eq!(one_minus_t_pow(&LaurentPoly::zero(), 4), TSeries::one(4));
    }

    #[test]
    fn negative_multiplicity_is_inverse() {
        let m = lp("2*L - 3 + L^-1");
        let pos = one_minus_t_pow(&m, 8);
        let neg = one_minus_t_pow(&-m, 8);
        assert_eq!(neg, pos.invert().unwrap());
    }

    #[test]
    fn symmetric_powers() {
        assert_eq!(sym_powers(&lp("L^2"), 3), vec![lp("1"), lp("L^2"), lp("L^4"), lp("L^6")]);
        assert!(sym_powers(&lp("1"), 5).iter().all(LaurentPoly::is_one));
        assert_eq!(sym_powers(&lp("L + 1"), 2)[2], lp("L^2 + L + 1"));
    }

    #[test]
    fn one_plus_t() {
        let a = TSeries::from_coeffs(vec![lp("1"), lp("1")], 6);
        let m = lp("3*L^2 - L^-1");
        assert_eq!(series_pow(&a, &m).unwrap().coeff(1), &m);
        assert_eq!(series_pow(&a, &lp("1")).unwrap(), a);
        let bad = TSeries::from_coeffs(vec![lp("2")], 3);
        assert!(series_pow(&bad, &m).is_err());
    }

    #[test]
    fn single_stratum() {
        let bound = Bound::t_graded(2, 0, 4);
        let l = StratumList::new(
            &["a"],
            vec![Stratum { value: vec![1], scale: lp("1"), measure: lp("L - 1").shift(-1) }],
        )
        .unwrap();
        let (s, _) = motivic_exp(&l, &bound).unwrap();
        assert_eq!(s.coeff(&[1, 1]), lp("1 - L^-1"));
        let l = StratumList::new(
            &["a"],
            vec![Stratum { value: vec![1], scale: lp("1"), measure: lp("L") }],
        )
        .unwrap();
        let (s, _) = motivic_exp(&l, &bound).unwrap();
        assert_eq!(s.coeff(&[2, 2]), sym_powers(&lp("L"), 2)[2]);
        assert_eq!(s.coeff(&[2, 2]), lp("L^2"));
    }

    #[test]
    fn splitting_a_stratum() {
        let bound = Bound::t_graded(3, 0, 6);
        let one = |m: &str| {
            let l = StratumList::new(
                &["a", "b"],
                vec![Stratum { value: vec![1, 2], scale: lp("1"), measure: lp(m) }],
            )
            .unwrap();
            motivic_exp(&l, &bound).unwrap().0
        };
        assert_eq!(one("L^2 - 1"), one("L^2 - L").mul(&one("L - 1")));
    }

    #[test]
    fn duplicate_values_rejected() {
        let s = Stratum { value: vec![1], scale: lp("1"), measure: lp("L") };
        assert!(StratumList::new(&["a"], vec![s.clone(), s]).is_err());
    }
}
