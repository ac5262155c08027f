//! The table `(i, j) ↦ G_{i,j}(t)` with its memo and export formats.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::system6::{solve_system6, System6Instance};
use super::SolverError;
use crate::ring::{lm1_pow_l, LaurentPoly, TSeries};

/// `ε_k = t^{k²−k} 𝕃^{−k}` as a series.
pub(crate) fn g_eps(k: usize, order: usize) -> TSeries {
    TSeries::monomial(LaurentPoly::l_pow(-(k as i64)), k * k - k, order)
}

pub(crate) fn g_seed(order: usize) -> TSeries {
    TSeries::constant(lm1_pow_l(2, -2), order)
}

/// Concurrent memo for `G_{i,j}` keyed by the unordered pair. An entry
/// computed to order `N` serves every request of order `≤ N`.
#[derive(Default)]
pub struct GMemo {
    inner: RwLock<HashMap<(usize, usize), TSeries>>,
}

impl GMemo {
    pub fn new() -> Self {
        Self::default()
    }

    fn lookup(&self, key: (usize, usize), order: usize) -> Option<TSeries> {
        let map = self.inner.read().unwrap();
        map.get(&key)
            .filter(|s| s.order() >= order)
            .map(|s| s.truncate(order))
    }

    /// Stores `s` unless an entry of at least the same order is present.
    fn offer(&self, key: (usize, usize), s: &TSeries) {
        let mut map = self.inner.write().unwrap();
        match map.get(&key) {
            Some(old) if old.order() >= s.order() => {}
            _ => {
                map.insert(key, s.clone());
            }
        }
    }

    /// `G_{i,j}(t)` modulo `t^{order+1}`.
    pub fn get(&self, i: usize, j: usize, order: usize) -> TSeries {
        assert!(i >= 1 && j >= 1, "G is indexed from 1");
        let key = (i.min(j), i.max(j));
        if let Some(s) = self.lookup(key, order) {
            return s;
        }
        let (i, j) = key;
        let s = if i == 1 && j == 1 {
            g_seed(order)
        } else if i < j {
            // G_{i,j} = t^{i²−i} 𝕃^{−i} G_{i,j−i}
            &g_eps(i, order) * &self.get(i, j - i, order)
        } else {
            let mut row = TSeries::zero(order);
            for k in 1..i {
                row = &row + &self.get(i, k, order);
            }
            let eps = g_eps(i, order);
            let c_eps = eps.scale(&LaurentPoly::l_minus_one());
            let divisor = &(&TSeries::one(order) - &eps) - &c_eps;
            let inv = divisor
                .invert()
                .expect("1 − t^{i²−i}𝕃^{1−i} has constant term 1 for i ≥ 2");
            &(&c_eps * &row) * &inv
        };
        self.offer(key, &s);
        s
    }

    pub fn len(&self) -> usize {
        self.inner.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn global_memo() -> &'static GMemo {
    static MEMO: OnceLock<GMemo> = OnceLock::new();
    MEMO.get_or_init(GMemo::new)
}

/// `G_{i,j}(t)` to order `order`, memoized process-wide.
pub fn compute_g(i: usize, j: usize, order: usize) -> TSeries {
    global_memo().get(i, j, order)
}

/// A frozen table of `G_{i,j}` over a rectangle, stored once per unordered
/// pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GTable {
    order: usize,
    entries: BTreeMap<(usize, usize), TSeries>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    i: usize,
    j: usize,
    coeffs: Vec<(usize, LaurentPoly)>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    order: usize,
    entries: Vec<EntryJson>,
}

fn check_bounds(imax: usize, jmax: usize) -> Result<(), SolverError> {
    if imax == 0 || jmax == 0 {
        return Err(SolverError::InvalidBounds("index bounds must be positive".into()));
    }
    Ok(())
}

impl GTable {
    pub fn empty(order: usize) -> Self {
        Self {
            order,
            entries: BTreeMap::new(),
        }
    }

    /// Fills `1 ≤ i ≤ imax, 1 ≤ j ≤ jmax` from the shared memo, in parallel.
    pub fn compute(imax: usize, jmax: usize, order: usize) -> Result<Self, SolverError> {
        check_bounds(imax, jmax)?;
        let keys = rect_keys(imax, jmax);
        let entries = keys
            .into_par_iter()
            .map(|(i, j)| ((i, j), compute_g(i, j, order)))
            .collect();
        Ok(Self { order, entries })
    }

    /// Same rectangle, solved through the generic recurrence solver with
    /// `ε_k = t^{k²−k}𝕃^{−k}` and `C = 𝕃 − 1`.
    pub fn via_system6(imax: usize, jmax: usize, order: usize) -> Result<Self, SolverError> {
        check_bounds(imax, jmax)?;
        let n = imax.max(jmax);
        let inst = System6Instance {
            eps: (1..=n).map(|k| g_eps(k, order)).collect(),
            c: TSeries::constant(LaurentPoly::l_minus_one(), order),
            seed: g_seed(order),
            imax,
            jmax,
        };
        let sol = solve_system6(&inst)?;
        let entries = rect_keys(imax, jmax)
            .into_iter()
            .map(|(i, j)| ((i, j), sol.get(i, j).unwrap().clone()))
            .collect();
        Ok(Self { order, entries })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&TSeries> {
        self.entries.get(&(i.min(j), i.max(j)))
    }

    /// Replaces an entry (used to build corrupted tables in tests).
    pub fn set(&mut self, i: usize, j: usize, s: TSeries) {
        self.entries.insert((i.min(j), i.max(j)), s.truncate(self.order).extend_exact(self.order));
    }

    /// Stored entries with `i ≤ j`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &TSeries)> + '_ {
        self.entries.iter().map(|((i, j), s)| (*i, *j, s))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest `i` and `j` such that the whole rectangle is present.
    pub fn rectangle(&self) -> (usize, usize) {
        let mut best = (0, 0);
        let max = self.entries.keys().map(|(_, j)| *j).max().unwrap_or(0);
        for imax in 1..=max {
            let mut jmax = 0;
            while jmax < max && (1..=imax).all(|i| self.get(i, jmax + 1).is_some()) {
                jmax += 1;
            }
            if jmax >= imax && imax * jmax > best.0 * best.1 {
                best = (imax, jmax);
            }
        }
        best
    }

    pub fn to_json(&self) -> String {
        let table = TableJson {
            order: self.order,
            entries: self
                .entries()
                .map(|(i, j, s)| EntryJson {
                    i,
                    j,
                    coeffs: s.nonzero_terms().map(|(k, c)| (k, c.clone())).collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&table).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, SolverError> {
        let raw: TableJson =
            serde_json::from_str(text).map_err(|e| SolverError::Malformed(e.to_string()))?;
        let mut out = Self::empty(raw.order);
        for e in raw.entries {
            if e.i == 0 || e.j == 0 || e.i > e.j {
                return Err(SolverError::Malformed(format!("bad index pair ({}, {})", e.i, e.j)));
            }
            let mut s = TSeries::zero(raw.order);
            for (k, c) in e.coeffs {
                if k > raw.order {
                    return Err(SolverError::Malformed(format!(
                        "t^{k} exceeds order {} in G[{},{}]",
                        raw.order, e.i, e.j
                    )));
                }
                if c.is_zero() || !s.coeff(k).is_zero() {
                    return Err(SolverError::Malformed(format!(
                        "zero or repeated t^{k} coefficient in G[{},{}]",
                        e.i, e.j
                    )));
                }
                s.set_coeff(k, c);
            }
            if out.entries.insert((e.i, e.j), s).is_some() {
                return Err(SolverError::Malformed(format!("repeated entry ({}, {})", e.i, e.j)));
            }
        }
        Ok(out)
    }

    /// One row per nonzero monomial coefficient; an identically zero entry
    /// is kept as a row with empty exponent fields.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# order={}\ni,j,t_exp,L_exp,coefficient\n", self.order);
        for (i, j, s) in self.entries() {
            if s.is_zero() {
                writeln!(out, "{i},{j},,,").unwrap();
            }
            for (k, c) in s.nonzero_terms() {
                for (e, x) in c.terms().rev() {
                    writeln!(out, "{i},{j},{k},{e},{x}").unwrap();
                }
            }
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, SolverError> {
        let bad = |m: String| SolverError::Malformed(m);
        let mut lines = text.lines();
        let order = lines
            .next()
            .and_then(|l| l.strip_prefix("# order="))
            .and_then(|v| v.trim().parse::<usize>().ok())
            .ok_or_else(|| bad("missing '# order=N' line".into()))?;
        if lines.next().map(str::trim) != Some("i,j,t_exp,L_exp,coefficient") {
            return Err(bad("missing CSV header".into()));
        }
        let mut coeffs: BTreeMap<(usize, usize), BTreeMap<usize, LaurentPoly>> = BTreeMap::new();
        for (n, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split(',').map(str::trim).collect();
            if f.len() != 5 {
                return Err(bad(format!("line {}: expected 5 fields", n + 3)));
            }
            let num = |s: &str| s.parse::<usize>().map_err(|_| bad(format!("line {}: bad index {s:?}", n + 3)));
            let (i, j) = (num(f[0])?, num(f[1])?);
            if i == 0 || i > j {
                return Err(bad(format!("line {}: bad index pair", n + 3)));
            }
            let entry = coeffs.entry((i, j)).or_default();
            if f[2].is_empty() && f[3].is_empty() && f[4].is_empty() {
                continue;
            }
            let k = num(f[2])?;
            if k > order {
                return Err(bad(format!("line {}: t^{k} exceeds order", n + 3)));
            }
            let e: i64 = f[3].parse().map_err(|_| bad(format!("line {}: bad L exponent", n + 3)))?;
            let x: BigInt = f[4].parse().map_err(|_| bad(format!("line {}: bad coefficient", n + 3)))?;
            let c = entry.entry(k).or_default();
            if !c.coeff(e).eq(&BigInt::from(0)) {
                return Err(bad(format!("line {}: repeated monomial", n + 3)));
            }
            c.add_term(e, x);
        }
        let mut out = Self::empty(order);
        for (key, cs) in coeffs {
            let mut s = TSeries::zero(order);
            for (k, c) in cs {
                s.set_coeff(k, c);
            }
            out.entries.insert(key, s);
        }
        Ok(out)
    }

    /// Text rendering, one entry per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, j, s) in self.entries() {
            writeln!(out, "G[{i},{j}] = {s}").unwrap();
        }
        out
    }
}

fn rect_keys(imax: usize, jmax: usize) -> Vec<(usize, usize)> {
    let mut keys: Vec<(usize, usize)> = (1..=imax)
        .flat_map(|i| (1..=jmax).map(move |j| (i.min(j), i.max(j))))
        .collect();
    keys.sort_unstable();
    keys.dedup();
    keys
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn spec_values() {
        assert_eq!(compute_g(1, 2, 5), TSeries::constant(lm1_pow_l(2, -3), 5));
        assert_eq!(compute_g(2, 3, 5), TSeries::monomial(lm1_pow_l(2, -5), 2, 5));
        let g22 = compute_g(2, 2, 4);
        let expect = TSeries::from_coeffs(
            vec![lp("0"), lp("0"), lm1_pow_l(3, -5), lp("0"), lm1_pow_l(3, -6)],
            4,
        );
        assert_eq!(g22, expect);
    }

    #[test]
    fn memo_serves_lower_orders() {
        let memo = GMemo::new();
        let high = memo.get(3, 3, 20);
        let n = memo.len();
        let low = memo.get(3, 3, 7);
        assert_eq!(memo.len(), n);
        assert_eq!(low, high.truncate(7));
    }

    #[test]
    fn system6_agrees_with_memo() {
        let a = GTable::compute(5, 7, 12).unwrap();
        let b = GTable::via_system6(5, 7, 12).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rectangle(), (5, 7));
    }

    #[test]
    fn json_and_csv_round_trip() {
        let t = GTable::compute(3, 4, 8).unwrap();
        assert_eq!(GTable::from_json(&t.to_json()).unwrap(), t);
        assert_eq!(GTable::from_csv(&t.to_csv()).unwrap(), t);
        assert_eq!(t.to_json(), GTable::compute(3, 4, 8).unwrap().to_json());
    }

    #[test]
    fn invalid_bounds() {
        assert!(GTable::compute(0, 3, 5).is_err());
    }
}
