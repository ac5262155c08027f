//! Closed-form rational functions in `(t, 𝕃)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{LaurentPoly, LaurentQuotient, RingError, TSeries};

/// `num(t) / den(t)` with coefficients in ℤ[𝕃, 𝕃⁻¹], stored as dense
/// coefficient vectors indexed by the power of `t`.
///
/// Never simplified; equality is decided by cross-multiplication.
#[derive(Clone, Serialize, Deserialize)]
pub struct RationalFunc {
    num: Vec<LaurentPoly>,
    den: Vec<LaurentPoly>,
}

fn trim(v: &mut Vec<LaurentPoly>) {
    while v.last().is_some_and(LaurentPoly::is_zero) {
        v.pop();
    }
}

fn poly_mul(a: &[LaurentPoly], b: &[LaurentPoly]) -> Vec<LaurentPoly> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![LaurentPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    trim(&mut out);
    out
}

impl RationalFunc {
    /// Panics when `den` is identically zero.
    pub fn new(mut num: Vec<LaurentPoly>, mut den: Vec<LaurentPoly>) -> Self {
        trim(&mut num);
        trim(&mut den);
        assert!(!den.is_empty(), "RationalFunc with zero denominator");
        Self { num, den }
    }

    pub fn polynomial(num: Vec<LaurentPoly>) -> Self {
        Self::new(num, vec![LaurentPoly::one()])
    }

    pub fn constant(c: LaurentPoly) -> Self {
        Self::polynomial(vec![c])
    }

    /// `c · t^k`.
    pub fn monomial(c: LaurentPoly, k: usize) -> Self {
        let mut num = vec![LaurentPoly::zero(); k];
        num.push(c);
        Self::polynomial(num)
    }

    pub fn numerator(&self) -> &[LaurentPoly] {
        &self.num
    }

    pub fn denominator(&self) -> &[LaurentPoly] {
        &self.den
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(poly_mul(&self.num, &other.num), poly_mul(&self.den, &other.den))
    }

    /// Series expansion to `t^order`: `result · den ≡ num (mod t^{order+1})`.
    pub fn expand(&self, order: usize) -> Result<TSeries, RingError> {
        let d0 = &self.den[0];
        if !d0.is_unit() {
            return Err(RingError::NonUnitDenominator(d0.to_string()));
        }
        let num = TSeries::from_coeffs(self.num.clone(), order);
        let den = TSeries::from_coeffs(self.den.clone(), order);
        Ok(&num * &den.invert()?)
    }

    /// Limit `t → 1`, with the common factors of the resulting quotient
    /// cancelled.
    pub fn eval_t1(&self) -> Result<LaurentQuotient, RingError> {
        let num: LaurentPoly = self.num.iter().sum();
        let den: LaurentPoly = self.den.iter().sum();
        if den.is_zero() {
            return Err(RingError::PoleAtOne);
        }
        Ok(LaurentQuotient::new(num, den))
    }
}

impl PartialEq for RationalFunc {
    fn eq(&self, other: &Self) -> bool {
        poly_mul(&self.num, &other.den) == poly_mul(&other.num, &self.den)
    }
}

impl Eq for RationalFunc {}

fn fmt_tpoly(v: &[LaurentPoly], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (k, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        match k {
            0 => write!(f, "({c})")?,
            1 => write!(f, "({c})*t")?,
            _ => write!(f, "({c})*t^{k}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        fmt_tpoly(&self.num, f)?;
        f.write_str("] / [")?;
        fmt_tpoly(&self.den, f)?;
        f.write_str("]")
    }
}

impl fmt::Debug for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunc{self}")
    }
}
