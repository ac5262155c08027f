//! The auxiliary sums
//!
//! ```text
//! Φ(α,β,γ,δ,π,κ,ρ,σ) = Σ_{i<j, k<l} α^{ik} β^{il} γ^{jk} δ^{jl} π^i κ^j ρ^k σ^l
//! Ψ(α,β,π,κ,ρ)       = Σ_{i<j, k}   α^{ik} β^{jk} π^i κ^j ρ^k
//! ```
//!
//! with every index starting at 1, evaluated at monomial arguments.

use rayon::prelude::*;

use super::PairsError;
use crate::ring::{parse_monomial, Bound, Exps, LaurentPoly, MultiSeries};

/// A monomial argument `scale · x^exps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arg {
    pub scale: LaurentPoly,
    pub exps: Exps,
}

impl Arg {
    pub fn new(scale: LaurentPoly, exps: Exps) -> Self {
        Self { scale, exps }
    }

    /// `Arg::parse(vars, "p*q", -1)` is `pq𝕃⁻¹`; `"1"` gives a scalar.
    pub fn parse<S: AsRef<str>>(vars: &[S], monomial: &str, l_exp: i64) -> Self {
        let names: Vec<&str> = vars.iter().map(|v| v.as_ref()).collect();
        let exps = parse_monomial(&names, monomial)
            .into_iter()
            .map(|e| u32::try_from(e).expect("arguments have nonnegative exponents"))
            .collect();
        Self::new(LaurentPoly::l_pow(l_exp), exps)
    }

    pub fn scalar(scale: LaurentPoly, nvars: usize) -> Self {
        Self::new(scale, vec![0; nvars])
    }

    fn is_scalar(&self) -> bool {
        self.exps.iter().all(|e| *e == 0)
    }

    fn is_one(&self) -> bool {
        self.is_scalar() && self.scale.is_one()
    }

    fn scale_pow(&self, n: u64) -> LaurentPoly {
        let n = u32::try_from(n).expect("index product fits in u32");
        match self.scale.as_monomial() {
            Some((c, e)) => LaurentPoly::monomial(c.pow(n), e * n as i64),
            None => self.scale.pow(n),
        }
    }
}

/// `numerator / denominator`, the denominator coming from indices summed
/// in closed form.
#[derive(Clone, Debug)]
pub struct PartialSum {
    pub numerator: MultiSeries,
    pub denominator: LaurentPoly,
}

/// Index layout of a sum: `uppers[u] = Some(l)` means index `u` runs over
/// values above index `l`; each argument is raised to the product of its
/// indices.
struct Shape {
    uppers: Vec<Option<usize>>,
    powers: Vec<Vec<usize>>,
}

const MAX_INDEX: u64 = 4096;

fn sum_shape(
    vars: &[String],
    shape: &Shape,
    args: &[Arg],
    bound: &Bound,
) -> Result<PartialSum, PairsError> {
    let nvars = vars.len();
    for a in args {
        if a.exps.len() != nvars {
            return Err(PairsError::Unsupported(format!(
                "argument arity {} differs from {nvars} variables",
                a.exps.len()
            )));
        }
    }
    let mut out = MultiSeries::new(vars, bound.clone());
    if args.iter().any(|a| a.scale.is_zero()) {
        return Ok(PartialSum {
            numerator: out,
            denominator: LaurentPoly::one(),
        });
    }
    let nidx = shape.uppers.len();
    // Closed-form indices: upper indices on which only scalars depend.
    let mut ratio: Vec<Option<LaurentPoly>> = vec![None; nidx];
    for (u, slot) in ratio.iter_mut().enumerate() {
        let touching: Vec<usize> = (0..args.len()).filter(|&a| shape.powers[a].contains(&u)).collect();
        if touching.iter().any(|&a| !args[a].is_scalar()) {
            continue;
        }
        if shape.uppers[u].is_none() {
            return Err(PairsError::Unsupported(format!("index {u} carries no variable")));
        }
        let mut r = LaurentPoly::one();
        for &a in &touching {
            if shape.powers[a] == [u] {
                r = &r * &args[a].scale;
            } else if !args[a].is_one() {
                return Err(PairsError::Unsupported(
                    "closed-form index with a non-uniform ratio".into(),
                ));
            }
        }
        if r.is_one() {
            return Err(PairsError::Unsupported("divergent geometric sum".into()));
        }
        *slot = Some(r);
    }
    if ratio.iter().enumerate().any(|(u, r)| {
        r.is_some() && shape.uppers.contains(&Some(u))
    }) {
        return Err(PairsError::Unsupported("closed-form index bounds another index".into()));
    }
    let looped: Vec<usize> = (0..nidx).filter(|u| ratio[*u].is_none()).collect();
    let mut denominator = LaurentPoly::one();
    for r in ratio.iter().flatten() {
        denominator = &denominator * &(&LaurentPoly::one() - r);
    }

    let ctx = Ctx { shape, args, bound, ratio: &ratio, looped: &looped, nvars };
    // Parallel over the first looped index.
    let first = looped[0];
    let mut firsts = Vec::new();
    let mut vals = vec![0u64; nidx];
    let mut v = ctx.lowest(first, &vals);
    loop {
        vals[first] = v;
        if !ctx.admits_from(&vals, 1) {
            break;
        }
        firsts.push(v);
        v += 1;
        if v > MAX_INDEX {
            return Err(PairsError::Unsupported("index is not limited by the bound".into()));
        }
    }
    let parts: Vec<Result<Vec<(Exps, LaurentPoly)>, PairsError>> = firsts
        .into_par_iter()
        .map(|v| {
            let mut vals = vec![0u64; nidx];
            vals[first] = v;
            let mut acc = Vec::new();
            ctx.recurse(&mut vals, 1, &mut acc)?;
            Ok(acc)
        })
        .collect();
    for part in parts {
        for (e, c) in part? {
            out.add_term(e, c);
        }
    }
    Ok(PartialSum {
        numerator: out,
        denominator,
    })
}

struct Ctx<'a> {
    shape: &'a Shape,
    args: &'a [Arg],
    bound: &'a Bound,
    ratio: &'a [Option<LaurentPoly>],
    looped: &'a [usize],
    nvars: usize,
}

impl Ctx<'_> {
    fn lowest(&self, u: usize, vals: &[u64]) -> u64 {
        match self.shape.uppers[u] {
            Some(l) => vals[l] + 1,
            None => 1,
        }
    }

    /// Exponents with looped indices past `depth` at their minimum.
    fn exps(&self, vals: &[u64], depth: usize) -> Option<Exps> {
        let mut v = vals.to_vec();
        for &u in &self.looped[depth..] {
            v[u] = self.lowest(u, &v);
        }
        let mut e = vec![0u64; self.nvars];
        for (a, idx) in self.args.iter().zip(&self.shape.powers) {
            if a.is_scalar() {
                continue;
            }
            let p: u64 = idx.iter().map(|&u| v[u]).product();
            for (x, y) in e.iter_mut().zip(&a.exps) {
                *x += p * *y as u64;
            }
        }
        e.into_iter().map(|x| u32::try_from(x).ok()).collect()
    }

    fn admits_from(&self, vals: &[u64], depth: usize) -> bool {
        self.exps(vals, depth).is_some_and(|e| self.bound.admits(&e))
    }

    fn coefficient(&self, vals: &[u64]) -> LaurentPoly {
        let mut c = LaurentPoly::one();
        for (a, idx) in self.args.iter().zip(&self.shape.powers) {
            if idx.iter().any(|u| self.ratio[*u].is_some()) || a.scale.is_one() {
                continue;
            }
            let p: u64 = idx.iter().map(|&u| vals[u]).product();
            c = &c * &a.scale_pow(p);
        }
        // Σ_{u > l} r^u = r^{l+1} / (1 − r)
        for (u, r) in self.ratio.iter().enumerate() {
            if let Some(r) = r {
                let l = self.shape.uppers[u].unwrap();
                let start = vals[l] + 1;
                c = &c * &Arg::scalar(r.clone(), 0).scale_pow(start);
            }
        }
        c
    }

    fn recurse(
        &self,
        vals: &mut Vec<u64>,
        depth: usize,
        acc: &mut Vec<(Exps, LaurentPoly)>,
    ) -> Result<(), PairsError> {
        if depth == self.looped.len() {
            let e = self.exps(vals, depth).expect("checked");
            acc.push((e, self.coefficient(vals)));
            return Ok(());
        }
        let u = self.looped[depth];
        let mut v = self.lowest(u, vals);
        loop {
            vals[u] = v;
            if !self.admits_from(vals, depth + 1) {
                break;
            }
            self.recurse(vals, depth + 1, acc)?;
            v += 1;
            if v > MAX_INDEX {
                return Err(PairsError::Unsupported("index is not limited by the bound".into()));
            }
        }
        vals[u] = 0;
        Ok(())
    }
}

/// Φ at eight monomial arguments, truncated to `bound`.
pub fn phi<S: AsRef<str>>(vars: &[S], args: &[Arg; 8], bound: &Bound) -> Result<PartialSum, PairsError> {
    // indices i=0, j=1, k=2, l=3
    let shape = Shape {
        uppers: vec![None, Some(0), None, Some(2)],
        powers: vec![
            vec![0, 2],
            vec![0, 3],
            vec![1, 2],
            vec![1, 3],
            vec![0],
            vec![1],
            vec![2],
            vec![3],
        ],
    };
    let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
    sum_shape(&vars, &shape, args, bound)
}

/// Ψ at five monomial arguments, truncated to `bound`.
pub fn psi<S: AsRef<str>>(vars: &[S], args: &[Arg; 5], bound: &Bound) -> Result<PartialSum, PairsError> {
    // indices i=0, j=1, k=2
    let shape = Shape {
        uppers: vec![None, Some(0), None],
        powers: vec![vec![0, 2], vec![1, 2], vec![0], vec![1], vec![2]],
    };
    let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
    sum_shape(&vars, &shape, args, bound)
}

/// Variable names for Φ and Ψ at fresh arguments.
pub const PHI_VARS: [&str; 8] = ["al", "be", "ga", "de", "pi", "ka", "rh", "si"];
pub const PSI_VARS: [&str; 5] = ["al", "be", "pi", "ka", "rh"];

fn fresh_args(n: usize) -> Vec<Arg> {
    (0..n)
        .map(|v| {
            let mut e = vec![0; n];
            e[v] = 1;
            Arg::new(LaurentPoly::one(), e)
        })
        .collect()
}

/// No total weight; the listed variables capped at `cap`.
fn capped_bound(n: usize, capped: &[usize], cap: u32) -> Bound {
    let mut b = Bound::t_graded(n, 0, u64::MAX);
    b.weights[0] = 0;
    for &v in capped {
        b = b.with_cap(v, cap);
    }
    b
}

/// Φ with each argument its own variable and the single-index slots capped.
pub fn phi_fresh(cap: u32) -> Result<PartialSum, PairsError> {
    let bound = capped_bound(8, &[4, 5, 6, 7], cap);
    let args: [Arg; 8] = fresh_args(8).try_into().expect("eight arguments");
    phi(&PHI_VARS, &args, &bound)
}

pub fn psi_fresh(cap: u32) -> Result<PartialSum, PairsError> {
    let bound = capped_bound(5, &[2, 3, 4], cap);
    let args: [Arg; 5] = fresh_args(5).try_into().expect("five arguments");
    psi(&PSI_VARS, &args, &bound)
}

/// The nested-loop sum that [`phi_fresh`] must equal.
pub fn phi_brute(cap: u32) -> MultiSeries {
    let mut out = MultiSeries::new(&PHI_VARS, capped_bound(8, &[4, 5, 6, 7], cap));
    for i in 1..=cap {
        for j in i + 1..=cap {
            for k in 1..=cap {
                for l in k + 1..=cap {
                    out.add_term(vec![i * k, i * l, j * k, j * l, i, j, k, l], LaurentPoly::one());
                }
            }
        }
    }
    out
}

pub fn psi_brute(cap: u32) -> MultiSeries {
    let mut out = MultiSeries::new(&PSI_VARS, capped_bound(5, &[2, 3, 4], cap));
    for i in 1..=cap {
        for j in i + 1..=cap {
            for k in 1..=cap {
                out.add_term(vec![i * k, j * k, i, j, k], LaurentPoly::one());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;


    fn fresh(vars: &[&str]) -> Vec<Arg> {
        (0..vars.len())
            .map(|v| {
                let mut e = vec![0; vars.len()];
                e[v] = 1;
                Arg::new(LaurentPoly::one(), e)
            })
            .collect()
    }

    fn capped(n: usize, capped: &[usize], cap: u32) -> Bound {
        let mut b = Bound::t_graded(n, 0, u64::MAX);
        b.weights[0] = 0;
        for &v in capped {
            b = b.with_cap(v, cap);
        }
        b
    }

    #[test]
    fn phi_lowest_term() {
        let bound = capped(8, &[4, 5, 6, 7], 2);
        let args: [Arg; 8] = fresh(&PHI_VARS).try_into().unwrap();
        let s = phi(&PHI_VARS, &args, &bound).unwrap();
        assert_eq!(s.numerator.len(), 1);
        assert!(s.numerator.coeff(&[1, 2, 2, 4, 1, 2, 1, 2]).is_one());
        assert!(s.denominator.is_one());
    }

    #[test]
    fn zero_slot() {
        let bound = capped(8, &[4, 5, 6, 7], 4);
        let mut args: [Arg; 8] = fresh(&PHI_VARS).try_into().unwrap();
        args[6].scale = LaurentPoly::zero();
        assert!(phi(&PHI_VARS, &args, &bound).unwrap().numerator.is_zero());
        let bound = capped(5, &[2, 3, 4], 4);
        let mut args: [Arg; 5] = fresh(&PSI_VARS).try_into().unwrap();
        args[3].scale = LaurentPoly::zero();
        assert!(psi(&PSI_VARS, &args, &bound).unwrap().numerator.is_zero());
    }

    #[test]
    fn psi_lowest_term() {
        let bound = capped(5, &[2, 3, 4], 1);
        let bound = bound.with_cap(3, 2);
        let args: [Arg; 5] = fresh(&PSI_VARS).try_into().unwrap();
        let s = psi(&PSI_VARS, &args, &bound).unwrap();
        assert_eq!(s.numerator.len(), 1);
        assert!(s.numerator.coeff(&[1, 2, 1, 2, 1]).is_one());
    }

    #[test]
    fn unbounded_index_is_reported() {
        let bound = capped(5, &[2, 3], 3);
        let args: [Arg; 5] = fresh(&PSI_VARS).try_into().unwrap();
        assert!(psi(&PSI_VARS, &args, &bound).is_err());
    }

    #[test]
    fn phi_matches_brute_force() {
        for cap in 1..=6u32 {
            let bound = capped(8, &[4, 5, 6, 7], cap);
            let args: [Arg; 8] = fresh(&PHI_VARS).try_into().unwrap();
            let s = phi(&PHI_VARS, &args, &bound).unwrap();
            let mut brute = MultiSeries::new(&PHI_VARS, bound.clone());
            for i in 1..=cap {
                for j in i + 1..=cap {
                    for k in 1..=cap {
                        for l in k + 1..=cap {
                            brute.add_term(vec![i * k, i * l, j * k, j * l, i, j, k, l], LaurentPoly::one());
                        }
                    }
                }
            }
            assert_eq!(s.numerator, brute, "cap {cap}");
        }
    }

    #[test]
    fn psi_matches_brute_force() {
        for cap in 1..=6u32 {
            let bound = capped(5, &[2, 3, 4], cap);
            let args: [Arg; 5] = fresh(&PSI_VARS).try_into().unwrap();
            let s = psi(&PSI_VARS, &args, &bound).unwrap();
            let mut brute = MultiSeries::new(&PSI_VARS, bound.clone());
            for i in 1..=cap {
                for j in i + 1..=cap {
                    for k in 1..=cap {
                        brute.add_term(vec![i * k, j * k, i, j, k], LaurentPoly::one());
                    }
                }
            }
            assert_eq!(s.numerator, brute, "cap {cap}");
        }
    }

    #[test]
    fn geometric_index_in_closed_form() {
        // Ψ(x, 1, y, 𝕃⁻¹, z): the index j is summed as 𝕃^{-(i+1)}/(1 − 𝕃⁻¹).
        let vars = ["x", "y", "z"];
        let mut bound = Bound::t_graded(3, 0, u64::MAX);
        bound.weights[0] = 0;
        let bound = bound.with_cap(0, 12).with_cap(1, 3).with_cap(2, 3);
        let args = [
            Arg::parse(&vars, "x", 0),
            Arg::parse(&vars, "1", 0),
            Arg::parse(&vars, "y", 0),
            Arg::parse(&vars, "1", -1),
            Arg::parse(&vars, "z", 0),
        ];
        let s = psi(&vars, &args, &bound).unwrap();
        assert_eq!(s.denominator, "1 - L^-1".parse().unwrap());
        let mut brute = MultiSeries::new(&vars, bound.clone());
        for i in 1..=3u32 {
            for k in 1..=3u32 {
                if i * k <= 12 {
                    brute.add_term(vec![i * k, i, k], LaurentPoly::l_pow(-(i as i64 + 1)));
                }
            }
        }
        assert_eq!(s.numerator, brute);
    }
}
