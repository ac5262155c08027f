//! Sparse truncated series in a declared tuple of variables.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{LaurentPoly, RingError};

/// Exponent tuple, one entry per declared variable.
pub type Exps = Vec<u32>;

/// Truncation policy: a monomial is kept iff its grading weight
/// `Σ weights[v]·e[v]` is at most `max_weight` and every capped variable is
/// within its cap.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bound {
    pub weights: Vec<u32>,
    pub max_weight: u64,
    pub caps: Vec<Option<u32>>,
}

/// Why a term did not make it into a truncated result.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncStats {
    pub dropped_weight: u64,
    pub dropped_cap: u64,
}

impl TruncStats {
    pub fn merge(&mut self, other: TruncStats) {
        self.dropped_weight += other.dropped_weight;
        self.dropped_cap += other.dropped_cap;
    }
}

impl std::ops::AddAssign for TruncStats {
    fn add_assign(&mut self, rhs: Self) {
        self.merge(rhs);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Admission {
    Kept,
    OverWeight,
    OverCap,
}

impl Bound {
    /// Weight 1 on variable `t_index`, 0 elsewhere, no caps.
    pub fn t_graded(nvars: usize, t_index: usize, order: u64) -> Self {
        let mut weights = vec![0; nvars];
        weights[t_index] = 1;
        Self {
            weights,
            max_weight: order,
            caps: vec![None; nvars],
        }
    }

    pub fn with_cap(mut self, var: usize, cap: u32) -> Self {
        self.caps[var] = Some(cap);
        self
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, e: &[u32]) -> u64 {
        e.iter()
            .zip(&self.weights)
            .map(|(x, w)| *x as u64 * *w as u64)
            .sum()
    }

    pub fn admission(&self, e: &[u32]) -> Admission {
        if self
            .caps
            .iter()
            .zip(e)
            .any(|(cap, x)| cap.is_some_and(|c| *x > c))
        {
            return Admission::OverCap;
        }
        if self.weight(e) > self.max_weight {
            return Admission::OverWeight;
        }
        Admission::Kept
    }

    pub fn admits(&self, e: &[u32]) -> bool {
        self.admission(e) == Admission::Kept
    }

    /// The tighter of two bounds over the same variables.
    pub fn meet(&self, other: &Bound) -> Bound {
        assert_eq!(self.weights, other.weights, "bounds use different gradings");
        Bound {
            weights: self.weights.clone(),
            max_weight: self.max_weight.min(other.max_weight),
            caps: self
                .caps
                .iter()
                .zip(&other.caps)
                .map(|(a, b)| match (a, b) {
                    (Some(x), Some(y)) => Some(*x.min(y)),
                    (x, None) => *x,
                    (None, y) => *y,
                })
                .collect(),
        }
    }
}

/// `Σ c_e · x^e` over a declared variable tuple, truncated by a [`Bound`].
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiSeries {
    vars: Vec<String>,
    bound: Bound,
    #[serde(with = "term_list")]
    terms: BTreeMap<Exps, LaurentPoly>,
}

mod term_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        terms: &BTreeMap<Exps, LaurentPoly>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let list: Vec<(&Exps, &LaurentPoly)> = terms.iter().collect();
        list.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<Exps, LaurentPoly>, D::Error> {
        use serde::de::Error;
        let list: Vec<(Exps, LaurentPoly)> = Vec::deserialize(d)?;
        let mut out = BTreeMap::new();
        for (e, c) in list {
            if c.is_zero() {
                return Err(D::Error::custom("zero coefficient stored in series"));
            }
            if out.insert(e, c).is_some() {
                return Err(D::Error::custom("repeated monomial in series"));
            }
        }
        Ok(out)
    }
}

impl MultiSeries {
    pub fn new<S: AsRef<str>>(vars: &[S], bound: Bound) -> Self {
        assert_eq!(vars.len(), bound.nvars(), "bound arity differs from variable count");
        Self {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            bound,
            terms: BTreeMap::new(),
        }
    }

    /// Checks the invariants after deserialization.
    pub fn validate(&self) -> Result<(), RingError> {
        if self.vars.len() != self.bound.nvars() || self.bound.caps.len() != self.vars.len() {
            return Err(RingError::VariableMismatch("bound arity".into()));
        }
        for e in self.terms.keys() {
            if e.len() != self.vars.len() {
                return Err(RingError::VariableMismatch(format!("exponent tuple {e:?}")));
            }
            if !self.bound.admits(e) {
                return Err(RingError::VariableMismatch(format!(
                    "stored monomial {e:?} exceeds the series bound"
                )));
            }
        }
        Ok(())
    }

    pub fn empty_like(&self) -> Self {
        Self {
            vars: self.vars.clone(),
            bound: self.bound.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn with_bound(&self, bound: Bound) -> Self {
        let mut out = Self::new(&self.vars, bound);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn bound(&self) -> &Bound {
        &self.bound
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &LaurentPoly)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> LaurentPoly {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Adds `c · x^e`, reporting whether the bound kept it.
    pub fn add_term(&mut self, e: Exps, c: LaurentPoly) -> Admission {
        debug_assert_eq!(e.len(), self.vars.len());
        let adm = self.bound.admission(&e);
        if adm != Admission::Kept || c.is_zero() {
            return adm;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
        Admission::Kept
    }

    /// Like [`add_term`](Self::add_term) but records drops in `stats`.
    pub fn add_term_counted(&mut self, e: Exps, c: LaurentPoly, stats: &mut TruncStats) {
        match self.add_term(e, c) {
            Admission::Kept => {}
            Admission::OverWeight => stats.dropped_weight += 1,
            Admission::OverCap => stats.dropped_cap += 1,
        }
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "series over different variables");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut out = Self::new(&self.vars, self.bound.meet(&other.bound));
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            vars: self.vars.clone(),
            bound: self.bound.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.check_vars(other);
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = self.empty_like();
        if c.is_zero() {
            return out;
        }
        for (e, x) in &self.terms {
            out.terms.insert(e.clone(), x * c);
        }
        out
    }

    /// Truncated product; the result keeps `self`'s bound.
    pub fn mul(&self, other: &Self) -> Self {
        self.mul_counted(other).0
    }

    pub fn mul_counted(&self, other: &Self) -> (Self, TruncStats) {
        self.check_vars(other);
        let mut out = Self::new(&self.vars, self.bound.meet(&other.bound));
        let mut stats = TruncStats::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term_counted(e, c1 * c2, &mut stats);
            }
        }
        (out, stats)
    }

    /// Keeps only terms satisfying `pred`.
    pub fn filter(&self, mut pred: impl FnMut(&[u32]) -> bool) -> Self {
        let mut out = self.empty_like();
        for (e, c) in &self.terms {
            if pred(e) {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Renames variables by a permutation of positions: the exponent at
    /// position `i` moves to position `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.vars.len());
        let mut out = self.empty_like();
        for (e, c) in &self.terms {
            let mut f = vec![0; e.len()];
            for (i, x) in e.iter().enumerate() {
                f[perm[i]] = *x;
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// Swaps named variable pairs.
    pub fn swap_vars(&self, pairs: &[(&str, &str)]) -> Self {
        let mut perm: Vec<usize> = (0..self.vars.len()).collect();
        for (a, b) in pairs {
            let i = self.var_index(a).expect("unknown variable");
            let j = self.var_index(b).expect("unknown variable");
            perm.swap(i, j);
        }
        self.permute(&perm)
    }

    /// Largest grading weight among stored terms.
    pub fn max_weight(&self) -> Option<u64> {
        self.terms.keys().map(|e| self.bound.weight(e)).max()
    }

    /// Text rendering of a single monomial.
    pub fn monomial_string(&self, e: &[u32]) -> String {
        let parts: Vec<String> = self
            .vars
            .iter()
            .zip(e)
            .filter(|(_, x)| **x > 0)
            .map(|(v, x)| if *x == 1 { v.clone() } else { format!("{v}^{x}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*{}", self.monomial_string(e))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiSeries[{}]({self})", self.vars.join(","))
    }
}
