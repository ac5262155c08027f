//! Monomial substitutions `x_v ↦ scale_v · y^{image_v}` on sparse series.
//!
//! Images may carry negative exponents (the blow-up substitution
//! `a ↦ t⁻¹ab𝕃⁻¹` does); they must cancel on every monomial the map is
//! applied to, which is checked per monomial.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use super::{Bound, Exps, LaurentPoly, MultiSeries, RingError, TruncStats};

/// Image of one source variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarImage {
    pub scale: LaurentPoly,
    pub exps: Vec<i64>,
}

/// A substitution from the variables of a source series into a target
/// variable tuple.
#[derive(Clone, Debug)]
pub struct MonomialMap {
    target_vars: Vec<String>,
    images: Vec<VarImage>,
    /// Reject images whose grading weight is below the source's.
    nondecreasing: bool,
}

const PAR_THRESHOLD: usize = 2048;

impl MonomialMap {
    pub fn new<S: AsRef<str>>(target_vars: &[S], images: Vec<VarImage>) -> Self {
        let m = target_vars.len();
        assert!(images.iter().all(|im| im.exps.len() == m));
        Self {
            target_vars: target_vars.iter().map(|v| v.as_ref().to_string()).collect(),
            images,
            nondecreasing: true,
        }
    }

    /// Builds a map from textual images over a shared variable tuple, e.g.
    /// `[("a", "t^-1*a*b", -1)]` meaning `a ↦ t⁻¹ab·𝕃⁻¹`. Unlisted
    /// variables are fixed.
    pub fn from_spec<S: AsRef<str>>(vars: &[S], spec: &[(&str, &str, i64)]) -> Self {
        let names: Vec<&str> = vars.iter().map(|v| v.as_ref()).collect();
        let n = names.len();
        let mut images: Vec<VarImage> = (0..n)
            .map(|i| {
                let mut exps = vec![0; n];
                exps[i] = 1;
                VarImage {
                    scale: LaurentPoly::one(),
                    exps,
                }
            })
            .collect();
        for (src, img, l_exp) in spec {
            let i = names
                .iter()
                .position(|v| v == src)
                .unwrap_or_else(|| panic!("unknown variable {src}"));
            images[i] = VarImage {
                scale: LaurentPoly::l_pow(*l_exp),
                exps: parse_monomial(&names, img),
            };
        }
        Self::new(&names, images)
    }

    pub fn identity<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::from_spec(vars, &[])
    }

    /// Disables the grading check (the image weight may drop).
    pub fn allow_decreasing(mut self) -> Self {
        self.nondecreasing = false;
        self
    }

    pub fn target_vars(&self) -> &[String] {
        &self.target_vars
    }

    pub fn images(&self) -> &[VarImage] {
        &self.images
    }

    /// Image exponent vector and coefficient factor of a single monomial,
    /// or an error when the map is inadmissible on it.
    pub fn image_of(
        &self,
        e: &[u32],
        source_bound: &Bound,
        target_bound: &Bound,
    ) -> Result<(Exps, LaurentPoly), RingError> {
        assert_eq!(e.len(), self.images.len(), "source arity differs from map");
        let m = self.target_vars.len();
        let mut acc = vec![0i64; m];
        let mut factor = LaurentPoly::one();
        let mut sign = BigInt::one();
        let mut shift = 0i64;
        for (x, img) in e.iter().zip(&self.images) {
            if *x == 0 {
                continue;
            }
            for (a, d) in acc.iter_mut().zip(&img.exps) {
                *a = d
                    .checked_mul(*x as i64)
                    .and_then(|v| a.checked_add(v))
                    .ok_or(RingError::Overflow)?;
            }
            match img.scale.as_monomial() {
                Some((c, s)) => {
                    if (-c).is_one() {
                        if *x % 2 == 1 {
                            sign = -sign;
                        }
                    } else if !c.is_one() {
                        factor = &factor * &LaurentPoly::from_int(c.clone()).pow(*x);
                    }
                    shift += s * *x as i64;
                }
                None => factor = &factor * &img.scale.pow(*x),
            }
        }
        let render = || {
            e.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        if acc.iter().any(|v| *v < 0) {
            return Err(RingError::InadmissibleMap {
                monomial: format!("[{}]", render()),
                reason: format!("image exponents {acc:?} are negative"),
            });
        }
        let img: Exps = acc
            .into_iter()
            .map(|v| u32::try_from(v).map_err(|_| RingError::Overflow))
            .collect::<Result<_, _>>()?;
        if self.nondecreasing && target_bound.weight(&img) < source_bound.weight(e) {
            return Err(RingError::InadmissibleMap {
                monomial: format!("[{}]", render()),
                reason: "grading weight decreases".into(),
            });
        }
        Ok((img, factor.mul_monomial(&sign, shift)))
    }

    /// Checks admissibility on every monomial of `support` without building
    /// the image.
    pub fn certify(&self, support: &MultiSeries, target_bound: &Bound) -> Result<(), RingError> {
        for (e, _) in support.terms() {
            self.image_of(e, support.bound(), target_bound)?;
        }
        Ok(())
    }

    /// Applies the map to every term of `s`, truncating to `target_bound`.
    pub fn apply(
        &self,
        s: &MultiSeries,
        target_bound: &Bound,
    ) -> Result<(MultiSeries, TruncStats), RingError> {
        let mut out = MultiSeries::new(&self.target_vars, target_bound.clone());
        let stats = self.apply_into(s, &LaurentPoly::one(), &mut out)?;
        Ok((out, stats))
    }

    /// Adds `factor · map(s)` into `out`, returning truncation counts.
    pub fn apply_into(
        &self,
        s: &MultiSeries,
        factor: &LaurentPoly,
        out: &mut MultiSeries,
    ) -> Result<TruncStats, RingError> {
        let target_bound = out.bound().clone();
        let compute = |(e, c): (&Exps, &LaurentPoly)| -> Result<(Exps, LaurentPoly), RingError> {
            let (img, f) = self.image_of(e, s.bound(), &target_bound)?;
            Ok((img, &(c * &f) * factor))
        };
        let images: Vec<(Exps, LaurentPoly)> = if s.len() >= PAR_THRESHOLD {
            let terms: Vec<_> = s.terms().collect();
            terms.into_par_iter().map(compute).collect::<Result<_, _>>()?
        } else {
            s.terms().map(compute).collect::<Result<_, _>>()?
        };
        let mut stats = TruncStats::default();
        for (img, c) in images {
            out.add_term_counted(img, c, &mut stats);
        }
        Ok(stats)
    }
}

/// Parses `t^-1*a*b^2` into an exponent vector over `names`; `1` is the
/// empty monomial.
pub(crate) fn parse_monomial(names: &[&str], s: &str) -> Vec<i64> {
    let mut exps = vec![0i64; names.len()];
    if s.trim() == "1" {
        return exps;
    }
    for factor in s.split('*') {
        let factor = factor.trim();
        let (name, pow) = match factor.split_once('^') {
            Some((n, p)) => (n, p.parse::<i64>().expect("bad exponent")),
            None => (factor, 1),
        };
        let i = names
            .iter()
            .position(|v| *v == name)
            .unwrap_or_else(|| panic!("unknown variable {name} in {s}"));
        exps[i] += pow;
    }
    exps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::lm1_pow_l;

    const V: [&str; 6] = ["t", "a", "b", "c", "d", "f"];

    fn eq1_first_map() -> MonomialMap {
        MonomialMap::from_spec(
            &V,
            &[("a", "t^-1*a*b", -1), ("c", "t*c*d*f", 0), ("d", "d*f^2", 0)],
        )
    }

    #[test]
    fn seed_monomial_image() {
        let bound = Bound::t_graded(6, 0, 10);
        let mut s = MultiSeries::new(&V, bound.clone());
        s.add_term(vec![0, 1, 1, 1, 1, 1], lm1_pow_l(2, -2));
        let (img, stats) = eq1_first_map().apply(&s, &bound).unwrap();
        assert_eq!(stats, TruncStats::default());
        assert_eq!(img.len(), 1);
        assert_eq!(img.coeff(&[0, 1, 2, 1, 2, 4]), lm1_pow_l(2, -3));
    }

    #[test]
    fn identity_map() {
        let bound = Bound::t_graded(6, 0, 10);
        let mut s = MultiSeries::new(&V, bound.clone());
        s.add_term(vec![3, 1, 2, 1, 2, 4], LaurentPoly::l());
        s.add_term(vec![0, 1, 1, 1, 1, 1], lm1_pow_l(2, -2));
        let (img, _) = MonomialMap::identity(&V).apply(&s, &bound).unwrap();
        assert_eq!(img, s);
    }

    #[test]
    fn negative_t_exponent_is_rejected() {
        let bound = Bound::t_graded(6, 0, 10);
        let mut s = MultiSeries::new(&V, bound.clone());
        s.add_term(vec![0, 1, 0, 0, 0, 0], LaurentPoly::one());
        let map = MonomialMap::from_spec(&V, &[("a", "t^-1*a", 0)]);
        assert!(matches!(
            map.apply(&s, &bound),
            Err(RingError::InadmissibleMap { .. })
        ));
        assert!(map.certify(&s, &bound).is_err());
    }

    #[test]
    fn signed_scales() {
        let bound = Bound::t_graded(2, 0, 10);
        let mut s = MultiSeries::new(&["t", "a"], bound.clone());
        s.add_term(vec![0, 3], LaurentPoly::one());
        let map = MonomialMap::new(
            &["t", "a"],
            vec![
                VarImage { scale: LaurentPoly::one(), exps: vec![1, 0] },
                VarImage { scale: LaurentPoly::monomial(-2, 1), exps: vec![0, 1] },
            ],
        );
        let (img, _) = map.apply(&s, &bound).unwrap();
        assert_eq!(img.coeff(&[0, 3]), LaurentPoly::monomial(-8, 3));
    }
}
