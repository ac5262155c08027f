//! Truncated power series in `t` over ℤ[𝕃, 𝕃⁻¹].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{LaurentPoly, RingError};

/// `Σ_{k=0}^{order} c_k t^k`, known modulo `t^{order+1}`.
///
/// Binary operations on series of different orders truncate to the smaller
/// order.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TSeries {
    order: usize,
    coeffs: Vec<LaurentPoly>,
}

impl TSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeffs: vec![LaurentPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(LaurentPoly::one(), order)
    }

    pub fn constant(c: LaurentPoly, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c · t^k`, zero when `k > order`.
    pub fn monomial(c: LaurentPoly, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Coefficients `c_0, c_1, …`; entries past `order` are dropped.
    pub fn from_coeffs(mut coeffs: Vec<LaurentPoly>, order: usize) -> Self {
        coeffs.resize(order + 1, LaurentPoly::zero());
        Self { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> &LaurentPoly {
        static ZERO: std::sync::OnceLock<LaurentPoly> = std::sync::OnceLock::new();
        self.coeffs
            .get(k)
            .unwrap_or_else(|| ZERO.get_or_init(LaurentPoly::zero))
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: LaurentPoly) {
        if k <= self.order {
            self.coeffs[k] = c;
        }
    }

    /// Nonzero `(k, c_k)` pairs.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = (usize, &LaurentPoly)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LaurentPoly::is_zero)
    }

    /// Lowest `k` with `c_k ≠ 0`.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Same coefficients, padded with zeros up to a larger order. Only sound
    /// when the caller knows the series is exact past its current order.
    pub fn extend_exact(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order.max(self.order) + 1, LaurentPoly::zero());
        Self {
            order: order.max(self.order),
            coeffs,
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift_t(&self, k: usize) -> Self {
        let mut out = Self::zero(self.order);
        for i in 0..=self.order {
            if i + k > self.order {
                break;
            }
            out.coeffs[i + k] = self.coeffs[i].clone();
        }
        out
    }

    /// Substitutes `t ↦ t^k` (for `k ≥ 1`), keeping the order.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k >= 1);
        let mut out = Self::zero(self.order);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * k > self.order {
                break;
            }
            out.coeffs[i * k] = c.clone();
        }
        out
    }

    /// Substitutes `t ↦ c·t` for a coefficient `c`.
    pub fn scale_variable(&self, c: &LaurentPoly) -> Self {
        let mut power = LaurentPoly::one();
        let mut out = Self::zero(self.order);
        for (i, x) in self.coeffs.iter().enumerate() {
            out.coeffs[i] = x * &power;
            power = &power * c;
        }
        out
    }

    /// Multiplicative inverse; the constant term must be ±𝕃^k.
    pub fn invert(&self) -> Result<Self, RingError> {
        let c0 = &self.coeffs[0];
        let inv0 = c0
            .invert_unit()
            .map_err(|_| RingError::NonUnitConstantTerm(c0.to_string()))?;
        let mut out = Self::zero(self.order);
        out.coeffs[0] = inv0.clone();
        for n in 1..=self.order {
            let mut acc = LaurentPoly::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() || out.coeffs[n - k].is_zero() {
                    continue;
                }
                acc += &(&self.coeffs[k] * &out.coeffs[n - k]);
            }
            out.coeffs[n] = -(&acc * &inv0);
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one(self.order);
        for _ in 0..n {
            result = &result * self;
        }
        result
    }
}

impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.nonzero_terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let coeff = if c.len() > 1 {
                format!("({c})")
            } else {
                c.to_string()
            };
            match k {
                0 => f.write_str(&coeff)?,
                1 => write!(f, "{coeff}*t")?,
                _ => write!(f, "{coeff}*t^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.order + 1)
    }
}

impl fmt::Debug for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TSeries({self})")
    }
}

impl<'a> Add<&'a TSeries> for &'a TSeries {
    type Output = TSeries;
    fn add(self, rhs: &'a TSeries) -> TSeries {
        let order = self.order.min(rhs.order);
        TSeries {
            order,
            coeffs: (0..=order).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl<'a> Sub<&'a TSeries> for &'a TSeries {
    type Output = TSeries;
    fn sub(self, rhs: &'a TSeries) -> TSeries {
        let order = self.order.min(rhs.order);
        TSeries {
            order,
            coeffs: (0..=order).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Neg for &TSeries {
    type Output = TSeries;
    fn neg(self) -> TSeries {
        TSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a TSeries> for &'a TSeries {
    type Output = TSeries;
    fn mul(self, rhs: &'a TSeries) -> TSeries {
        let order = self.order.min(rhs.order);
        let mut out = TSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] += &(a * b);
            }
        }
        out
    }
}

impl Add for TSeries {
    type Output = TSeries;
    fn add(self, rhs: TSeries) -> TSeries {
        &self + &rhs
    }
}

impl Sub for TSeries {
    type Output = TSeries;
    fn sub(self, rhs: TSeries) -> TSeries {
        &self - &rhs
    }
}

impl Mul for TSeries {
    type Output = TSeries;
    fn mul(self, rhs: TSeries) -> TSeries {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn invert_geometric() {
        let s = TSeries::from_coeffs(vec![LaurentPoly::one(), lp("-L")], 3);
        let inv = s.invert().unwrap();
        let expect = TSeries::from_coeffs(
            (0..4).map(LaurentPoly::l_pow).collect(),
            3,
        );
        assert_eq!(inv, expect);
        assert_eq!(&s * &inv, TSeries::one(3));
    }

    #[test]
    fn invert_requires_unit() {
        let s = TSeries::from_coeffs(vec![LaurentPoly::l_minus_one(), lp("1")], 3);
        assert!(matches!(s.invert(), Err(RingError::NonUnitConstantTerm(_))));
    }

    #[test]
    fn mul_and_scale() {
        let a = TSeries::from_coeffs(vec![lp("1"), lp("1")], 2);
        let b = TSeries::from_coeffs(vec![lp("1"), lp("-1")], 2);
        assert_eq!(&a * &b, TSeries::from_coeffs(vec![lp("1"), lp("0"), lp("-1")], 2));
        let lm1 = LaurentPoly::l_minus_one();
        assert_eq!(
            a.scale(&lm1),
            TSeries::from_coeffs(vec![lm1.clone(), lm1], 2)
        );
    }

    #[test]
    fn mixed_orders_truncate() {
        let a = TSeries::one(5);
        let b = TSeries::one(2);
        assert_eq!((&a + &b).order(), 2);
        assert_eq!((&a * &b).order(), 2);
    }

    #[test]
    fn power_substitution() {
        let a = TSeries::from_coeffs(vec![lp("1"), lp("L"), lp("2")], 5);
        let s = a.substitute_power(2);
        assert_eq!(s.coeff(2), &lp("L"));
        assert_eq!(s.coeff(4), &lp("2"));
        assert!(s.coeff(1).is_zero());
    }
}
