//! Laurent polynomials in 𝕃 with arbitrary-precision integer coefficients.
//!
//! Every ring element appearing in the generating series lives in ℤ[𝕃, 𝕃⁻¹].
//! The representation is sparse and canonical: no zero coefficient is ever
//! stored, so structural equality is ring equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::RingError;

/// An element of ℤ[𝕃, 𝕃⁻¹].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int<T: Into<BigInt>>(c: T) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · 𝕃^exp`.
    pub fn monomial<T: Into<BigInt>>(c: T, exp: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// 𝕃^exp.
    pub fn l_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    /// The class of the affine line.
    pub fn l() -> Self {
        Self::l_pow(1)
    }

    /// 𝕃 − 1, the class of ℂ*.
    pub fn l_minus_one() -> Self {
        Self::from_terms([(1, 1), (0, -1)])
    }

    /// Builds a polynomial from (exponent, coefficient) pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, T>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, T)>,
        T: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in pairs {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Highest exponent of 𝕃, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest exponent of 𝕃, `None` for zero.
    pub fn low_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Multiplies by `c · 𝕃^shift` without a general product.
    pub fn mul_monomial(&self, c: &BigInt, shift: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (e + shift, x * c)).collect(),
        }
    }

    /// Multiplies by 𝕃^shift.
    pub fn shift(&self, shift: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, x)| (e + shift, x.clone())).collect(),
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        self.mul_monomial(c, 0)
    }

    pub fn pow(&self, n: u32) -> Self {
        if let Some((c, e)) = self.as_monomial() {
            return Self::monomial(num_traits::pow(c.clone(), n as usize), e * n as i64);
        }
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Returns `(c, e)` when the polynomial is the single term `c·𝕃^e`.
    pub fn as_monomial(&self) -> Option<(&BigInt, i64)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c, *e))
        } else {
            None
        }
    }

    /// Units of ℤ[𝕃, 𝕃⁻¹] are exactly ±𝕃^k.
    pub fn is_unit(&self) -> bool {
        self.as_monomial()
            .is_some_and(|(c, _)| c.is_one() || (-c).is_one())
    }

    pub fn invert_unit(&self) -> Result<Self, RingError> {
        match self.as_monomial() {
            Some((c, e)) if c.is_one() || (-c).is_one() => Ok(Self::monomial(c.clone(), -e)),
            _ => Err(RingError::NotAUnit(self.to_string())),
        }
    }

    /// Exact division in ℤ[𝕃, 𝕃⁻¹]; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((c, e)) = divisor.as_monomial() {
            let mut terms = BTreeMap::new();
            for (k, x) in &self.terms {
                let (q, r) = x.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                terms.insert(k - e, q);
            }
            return Some(Self { terms });
        }
        // Long division from the top degree; the remainder must vanish before
        // its degree drops below the span the quotient can reach.
        let d_hi = divisor.degree().unwrap();
        let d_lo = divisor.low_degree().unwrap();
        let lead = divisor.coeff(d_hi);
        let lo_bound = self.low_degree().unwrap() - d_lo;
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        while let Some(r_hi) = rem.degree() {
            let shift = r_hi - d_hi;
            if shift < lo_bound {
                return None;
            }
            let (q, r) = rem.coeff(r_hi).div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            rem -= &divisor.mul_monomial(&q, shift);
            quotient.add_term(shift, q);
        }
        Some(quotient)
    }

    /// Evaluates at 𝕃 = v with exact rational arithmetic.
    pub fn specialize(&self, v: &BigRational) -> Result<BigRational, RingError> {
        if v.is_zero() {
            if self.low_degree().is_some_and(|e| e < 0) {
                return Err(RingError::ZeroBase);
            }
            return Ok(BigRational::from_integer(self.coeff(0)));
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                num_traits::pow(v.clone(), *e as usize)
            } else {
                num_traits::pow(v.recip(), e.unsigned_abs() as usize)
            };
            acc += p * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }

    /// Gcd of the integer coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            match (*e, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => f.write_str("L")?,
                (1, false) => write!(f, "{abs}*L")?,
                (e, true) => write!(f, "L^{e}")?,
                (e, false) => write!(f, "{abs}*L^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = RingError;

    /// Parses the canonical text form, e.g. `L^2 - 2*L + 1` or `-L^-3 + 4`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RingError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let bytes = compact.as_bytes();
        let mut result = Self::zero();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = BigInt::one();
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -sign;
                }
                i += 1;
            } else if i != 0 {
                return Err(bad());
            }
            // Term ends at the next '+'/'-' that is not an exponent sign.
            let start = i;
            while i < bytes.len() {
                let c = bytes[i];
                if (c == b'+' || c == b'-') && i > start && !matches!(bytes[i - 1], b'^' | b'(') {
                    break;
                }
                i += 1;
            }
            let term = &compact[start..i];
            let (coeff, exp) = parse_term(term).ok_or_else(bad)?;
            result.add_term(exp, sign * coeff);
        }
        Ok(result)
    }
}

fn parse_term(term: &str) -> Option<(BigInt, i64)> {
    if term.is_empty() {
        return None;
    }
    let (coeff_part, l_part) = match term.find('L') {
        None => return Some((term.parse().ok()?, 0)),
        Some(pos) => (&term[..pos], &term[pos + 1..]),
    };
    let coeff = match coeff_part {
        "" => BigInt::one(),
        c => c.strip_suffix('*')?.parse().ok()?,
    };
    let exp = match l_part {
        "" => 1,
        e => {
            let e = e.strip_prefix('^')?;
            let e = e.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(e);
            e.parse().ok()?
        }
    };
    Some((coeff, exp))
}

impl Serialize for LaurentPoly {
    /// JSON form: `[[exponent, "coefficient"], ...]`, descending exponent.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(i64, String)> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| (*e, c.to_str_radix(10)))
            .collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs: Vec<(i64, String)> = Vec::deserialize(deserializer)?;
        let mut p = Self::zero();
        for (e, c) in pairs {
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            if c.is_zero() {
                return Err(D::Error::custom("zero coefficient in Laurent polynomial"));
            }
            if p.terms.contains_key(&e) {
                return Err(D::Error::custom("repeated exponent in Laurent polynomial"));
            }
            p.terms.insert(e, c);
        }
        Ok(p)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        Self {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -(self.clone())
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        if self.terms.len() < rhs.terms.len() {
            return rhs * self;
        }
        if let Some((c, e)) = rhs.as_monomial() {
            return self.mul_monomial(c, e);
        }
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &rhs.terms {
            for (e2, c2) in &self.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl<'a> std::iter::Sum<&'a LaurentPoly> for LaurentPoly {
    fn sum<I: Iterator<Item = &'a LaurentPoly>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

/// Shorthand used across the crate: `(𝕃−1)^k · 𝕃^e`.
pub fn lm1_pow_l(k: u32, e: i64) -> LaurentPoly {
    LaurentPoly::l_minus_one().pow(k).shift(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn binomial_products() {
        let lm1 = LaurentPoly::l_minus_one();
        assert_eq!(&lm1 * &lm1, lp("L^2 - 2*L + 1"));
        assert_eq!(&lm1 * &LaurentPoly::l_pow(-2), lp("L^-1 - L^-2"));
        assert_eq!(lm1.pow(3), lp("L^3 - 3*L^2 + 3*L - 1"));
        assert_eq!(lm1.pow(0), LaurentPoly::one());
    }

    #[test]
    fn unit_inversion() {
        assert_eq!(LaurentPoly::l_pow(-3).invert_unit().unwrap(), LaurentPoly::l_pow(3));
        assert_eq!(lp("-L^2").invert_unit().unwrap(), lp("-L^-2"));
        assert!(matches!(
            LaurentPoly::l_minus_one().invert_unit(),
            Err(RingError::NotAUnit(_))
        ));
        assert!(lp("2*L").invert_unit().is_err());
        assert!(LaurentPoly::zero().invert_unit().is_err());
    }

    #[test]
    fn specialization() {
        let x = lm1_pow_l(2, -2);
        let two = BigRational::from_integer(2.into());
        assert_eq!(x.specialize(&two).unwrap(), BigRational::new(1.into(), 4.into()));
        assert!(x.specialize(&BigRational::one()).unwrap().is_zero());
        let three = BigRational::from_integer(3.into());
        assert_eq!(lp("L^2 - 1").specialize(&three).unwrap(), BigRational::from_integer(8.into()));
        assert!(matches!(x.specialize(&BigRational::zero()), Err(RingError::ZeroBase)));
        assert_eq!(
            lp("L^2 + 5").specialize(&BigRational::zero()).unwrap(),
            BigRational::from_integer(5.into())
        );
    }

    #[test]
    fn text_form() {
        assert_eq!(lp("L^2 - 2*L + 1").to_string(), "L^2 - 2*L + 1");
        assert_eq!(lp("-L^-3 + 4").to_string(), "4 - L^-3");
        assert_eq!(lp("L^-1-L^-2").to_string(), "L^-1 - L^-2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(lp("3*L^(-2)"), LaurentPoly::monomial(3, -2));
        assert!("L^".parse::<LaurentPoly>().is_err());
        assert!("2L".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn json_form() {
        let x = lp("L^2 - 2*L + 1");
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"[[2,"1"],[1,"-2"],[0,"1"]]"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<LaurentPoly>(r#"[[0,"0"]]"#).is_err());
    }

    #[test]
    fn exact_division() {
        let a = lm1_pow_l(3, -5);
        let b = lp("1 - L^-1");
        assert_eq!(a.div_exact(&b).unwrap(), lm1_pow_l(2, -4));
        assert!(LaurentPoly::one().div_exact(&LaurentPoly::l_minus_one()).is_none());
        assert!(lp("L^2 + 1").div_exact(&lp("L + 1")).is_none());
        assert_eq!(lp("2*L^2 - 2").div_exact(&lp("2*L + 2")).unwrap(), lp("L - 1"));
    }

    #[test]
    fn big_coefficients_do_not_overflow() {
        let x = lp("L + 1").pow(200);
        let mid = x.coeff(100);
        assert!(mid.bits() > 190);
    }
}
