//! Reduced quotients of Laurent polynomials, used for `t = 1` limits.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::LaurentPoly;

/// `num / den` with `gcd(num, den) = 1` up to units, `den` free of 𝕃-power
/// factors and with positive leading coefficient. Structural equality is
/// equality of quotients.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentQuotient {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl LaurentQuotient {
    /// Panics when `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self {
                num,
                den: LaurentPoly::one(),
            };
        }
        let (n_shift, n) = to_dense(&num);
        let (d_shift, d) = to_dense(&den);
        let g = poly_gcd(&n, &d);
        let mut n = poly_div_exact(&n, &g);
        let mut d = poly_div_exact(&d, &g);
        if d.last().unwrap().is_negative() {
            n.iter_mut().for_each(|c| *c = -&*c);
            d.iter_mut().for_each(|c| *c = -&*c);
        }
        Self {
            num: from_dense(n_shift - d_shift, &n),
            den: from_dense(0, &d),
        }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self::new(p, LaurentPoly::one())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    /// The quotient as a Laurent polynomial when the denominator cancelled.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            &(&self.num * &other.den) - &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    /// Degree in 𝕃 (`deg num − deg den`); `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.degree()? - self.den.degree()?)
    }
}

impl fmt::Display for LaurentQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for LaurentQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentQuotient({self})")
    }
}

/// Splits `p = 𝕃^shift · q(𝕃)` with `q(0) ≠ 0`; returns ascending coefficients of `q`.
fn to_dense(p: &LaurentPoly) -> (i64, Vec<BigInt>) {
    let lo = p.low_degree().unwrap();
    let hi = p.degree().unwrap();
    let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (e, c) in p.terms() {
        v[(e - lo) as usize] = c.clone();
    }
    (lo, v)
}

fn from_dense(shift: i64, v: &[BigInt]) -> LaurentPoly {
    LaurentPoly::from_terms(
        v.iter()
            .enumerate()
            .map(|(i, c)| (shift + i as i64, c.clone())),
    )
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let c = content(v);
    if c.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder of `a` by `b` (both nonzero, ascending coefficients).
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lc = b.last().unwrap();
    while !r.is_empty() && r.len() > db {
        let shift = r.len() - 1 - db;
        let top = r.last().unwrap().clone();
        for x in r.iter_mut() {
            *x *= lc;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &top * bc;
        }
        trim(&mut r);
        r = primitive(&r);
    }
    r
}

/// Gcd in ℤ[x] via primitive remainder sequences, positive leading coefficient.
fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let c = content(a).gcd(&content(b));
    let mut x = primitive(a);
    let mut y = primitive(b);
    trim(&mut x);
    trim(&mut y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = prem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    let mut g: Vec<BigInt> = x.iter().map(|v| v * &c).collect();
    if g.last().is_some_and(Signed::is_negative) {
        g.iter_mut().for_each(|v| *v = -&*v);
    }
    g
}

/// Exact division in ℤ[x]; panics if `b` does not divide `a`.
fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lc = b.last().unwrap();
    if r.len() < b.len() {
        assert!(r.is_empty(), "inexact polynomial division");
        return vec![];
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while !r.is_empty() && r.len() > db {
        let shift = r.len() - 1 - db;
        let (qc, rem) = r.last().unwrap().div_rem(lc);
        assert!(rem.is_zero(), "inexact polynomial division");
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &qc * bc;
        }
        q[shift] = qc;
        trim(&mut r);
    }
    assert!(r.is_empty(), "inexact polynomial division");
    q
}
