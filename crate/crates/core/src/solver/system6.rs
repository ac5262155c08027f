//! The recurrence system
//!
//! ```text
//! f_{ij} = ε_j f_{i−j,j}            (i > j)
//! f_{ii} = C ε_i Σ_{j≥1} f_{ij}
//! ```
//!
//! solved through the finite diagonal formula
//! `f_{ii} = C ε_i / (1 − ε_i − C ε_i) · Σ_{0<j<i} f_{ij}` for `i ≥ 2`.
//! For `i = 1` the divisor is usually zero, so `f_{11}` is the seed.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::SolverError;
use crate::ring::{LaurentPoly, TSeries};

/// The operations the solver needs from its coefficient ring.
pub trait SystemRing: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_elem(&self, o: &Self) -> Self;
    fn sub_elem(&self, o: &Self) -> Self;
    fn mul_elem(&self, o: &Self) -> Self;
    /// `self / d` when the quotient exists in the ring.
    fn div_exact_elem(&self, d: &Self) -> Option<Self>;
}

impl SystemRing for LaurentPoly {
    fn zero_like(&self) -> Self {
        LaurentPoly::zero()
    }
    fn one_like(&self) -> Self {
        LaurentPoly::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
    fn div_exact_elem(&self, d: &Self) -> Option<Self> {
        self.div_exact(d)
    }
}

impl SystemRing for TSeries {
    fn zero_like(&self) -> Self {
        TSeries::zero(self.order())
    }
    fn one_like(&self) -> Self {
        TSeries::one(self.order())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
    fn div_exact_elem(&self, d: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        d.invert().ok().map(|inv| self * &inv)
    }
}

impl SystemRing for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
    fn div_exact_elem(&self, d: &Self) -> Option<Self> {
        (!d.is_zero()).then(|| self / d)
    }
}

/// `eps[k - 1]` holds `ε_k`; it must cover `1..=max(imax, jmax)`.
#[derive(Clone, Debug)]
pub struct System6Instance<R> {
    pub eps: Vec<R>,
    pub c: R,
    pub seed: R,
    pub imax: usize,
    pub jmax: usize,
}

/// Square solution table, 1-based and symmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct System6Table<R> {
    n: usize,
    imax: usize,
    jmax: usize,
    entries: Vec<R>,
}

impl<R: SystemRing> System6Table<R> {
    /// `f_{ij}`; `None` outside `1..=n`.
    pub fn get(&self, i: usize, j: usize) -> Option<&R> {
        if i == 0 || j == 0 || i > self.n || j > self.n {
            return None;
        }
        Some(&self.entries[(i - 1) * self.n + (j - 1)])
    }

    pub fn imax(&self) -> usize {
        self.imax
    }

    pub fn jmax(&self) -> usize {
        self.jmax
    }

    /// Entries `(i, j, f_ij)` in the requested rectangle.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &R)> + '_ {
        (1..=self.imax).flat_map(move |i| (1..=self.jmax).map(move |j| (i, j, self.get(i, j).unwrap())))
    }
}

pub fn solve_system6<R: SystemRing>(inst: &System6Instance<R>) -> Result<System6Table<R>, SolverError> {
    let n = inst.imax.max(inst.jmax);
    if inst.imax == 0 || inst.jmax == 0 {
        return Err(SolverError::InvalidBounds("imax and jmax must be positive".into()));
    }
    if inst.eps.len() < n {
        return Err(SolverError::InvalidBounds(format!(
            "{} eps values given, {n} needed",
            inst.eps.len()
        )));
    }
    if inst.seed.is_zero_elem() {
        return Err(SolverError::Unsupported("the seed f_11 must be nonzero".into()));
    }
    let zero = inst.seed.zero_like();
    let one = inst.seed.one_like();
    let mut f = vec![zero.clone(); n * n];
    let idx = |i: usize, j: usize| (i - 1) * n + (j - 1);
    f[idx(1, 1)] = inst.seed.clone();
    for i in 2..=n {
        let mut row_sum = zero.clone();
        for j in 1..i {
            let v = inst.eps[j - 1].mul_elem(&f[idx(i - j, j)]);
            row_sum = row_sum.add_elem(&v);
            f[idx(j, i)] = v.clone();
            f[idx(i, j)] = v;
        }
        let eps = &inst.eps[i - 1];
        let c_eps = inst.c.mul_elem(eps);
        let divisor = one.sub_elem(eps).sub_elem(&c_eps);
        if divisor.is_zero_elem() {
            return Err(SolverError::SingularDiagonal { i });
        }
        f[idx(i, i)] = c_eps
            .mul_elem(&row_sum)
            .div_exact_elem(&divisor)
            .ok_or(SolverError::SingularDiagonal { i })?;
    }
    Ok(System6Table {
        n,
        imax: inst.imax,
        jmax: inst.jmax,
        entries: f,
    })
}
