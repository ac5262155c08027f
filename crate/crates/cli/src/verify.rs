//! The `verify` checks. Each returns a [`Report`]; any failure maps to exit 1.

use clap::ValueEnum;
use motivic::pairs::{
    arc_swap, coordinate_swap, lemma4_rhs, pairs_bound, phi_brute, phi_fresh, psi_brute, psi_fresh,
    solve_lemma4, stratum_contribution, stratum_direct, StratumId, J_VARS,
};
use motivic::powerstruct::{failed_axioms, AxiomInstance};
use motivic::ring::{LaurentPoly, MultiSeries, TSeries};
use motivic::solver::{
    assemble_i_from_table, compute_g, fab_coefficient, gaa_closed_form, gij_closed_form, leading_term,
    leading_term_formula, lemma3_check, mass_check, solve_system5, verify_eq1, verify_eq4,
    verify_symmetry_and_support, Eq1Window, GTable,
};
use motivic::tuples::{solve_thm4, tuples_bound, u_slice};
use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Eq1,
    Eq2Support,
    Eq4,
    Lemma3,
    Table,
    Leading,
    Mass,
    PowerAxioms,
    PhiPsi,
    Lemma4,
    Thm4,
}

#[derive(Debug)]
pub struct Report {
    pub checked: usize,
    pub unit: &'static str,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl Report {
    fn new(unit: &'static str) -> Self {
        Self {
            checked: 0,
            unit,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for n in &self.notes {
            out.push_str(n);
            out.push('\n');
        }
        if self.holds() {
            out.push_str(&format!("checked {} {}, all exact\n", self.checked, self.unit));
        } else {
            out.push_str(&format!(
                "checked {} {}, {} failed\nfirst offender: {}\n",
                self.checked,
                self.unit,
                self.failures.len(),
                self.failures[0]
            ));
        }
        out
    }
}

/// Bounds shared by the checks; each check reads the ones it needs.
#[derive(Clone, Copy, Debug)]
pub struct Params {
    pub imax: usize,
    pub jmax: usize,
    pub max: usize,
    pub order: usize,
    pub cap: u32,
    pub trials: usize,
    pub seed: u64,
}

pub fn eq1(table: &GTable, p: &Params) -> Result<Report, CliError> {
    let i = assemble_i_from_table(table);
    let window = Eq1Window {
        imax: p.imax,
        jmax: p.jmax,
        torder: p.order,
    };
    let r = verify_eq1(&i, window)?;
    let mut rep = Report::new("monomials");
    rep.checked = r.checked;
    if !r.holds() {
        let offender = r.first_offender.clone().unwrap_or_else(|| r.residual.to_string());
        rep.failures.push(offender);
        rep.notes.push(format!("nonzero residual monomials: {}", r.residual.len()));
    }
    Ok(rep)
}

pub fn eq2_support(table: &GTable) -> Report {
    let i = assemble_i_from_table(table);
    let r = verify_symmetry_and_support(&i);
    let mut rep = Report::new("monomials");
    rep.checked = i.len();
    rep.failures.extend(r.off_support.iter().map(|m| format!("{m} is off the support")));
    rep.failures.extend(r.asymmetric.iter().map(|m| format!("{m} differs from its mirror")));
    rep
}

pub fn eq4(p: &Params) -> Result<Report, CliError> {
    let r = verify_eq4(p.max, p.max)?;
    let mut rep = Report::new("coefficients");
    rep.checked = r.checked;
    if let Some((e, c)) = r.residual.terms().next() {
        rep.failures.push(format!("{} residual {c}", r.residual.monomial_string(e)));
    }
    let table = solve_system5(p.max, p.max)?;
    for (i, j, c) in table.iter() {
        rep.check(*c == fab_coefficient(i, j), || format!("system solution at ({i},{j}) is {c}"));
    }
    Ok(rep)
}

pub fn lemma3(p: &Params) -> Report {
    let mut rep = Report::new("pairs");
    for i in 1..=p.max {
        for j in i..=p.max {
            rep.check(lemma3_check(i, j, p.order), || format!("G[{i},{j}]"));
        }
    }
    rep
}

/// Computed `G_{i,j}` against the expanded closed forms.
pub fn table(p: &Params) -> Result<Report, CliError> {
    let mut rep = Report::new("entries");
    for a in 1..=4 {
        let closed = gaa_closed_form(a)?.expand(p.order)?;
        rep.check(closed == compute_g(a, a, p.order), || format!("G[{a},{a}]"));
    }
    for i in 1..=p.max {
        for j in i..=p.max {
            if i.gcd(&j) <= 4 {
                let closed = gij_closed_form(i, j)?.expand(p.order)?;
                rep.check(closed == compute_g(i, j, p.order), || format!("G[{i},{j}]"));
            }
        }
    }
    Ok(rep)
}

pub fn leading(p: &Params) -> Report {
    let mut rep = Report::new("pairs");
    for i in 1..=p.max {
        for j in i..=p.max {
            let got = leading_term(i, j);
            let want = leading_term_formula(i, j);
            rep.check(got == want, || format!("G[{i},{j}] leads with t^{} ({})", got.0, got.1));
        }
    }
    rep
}

pub fn mass(p: &Params) -> Result<Report, CliError> {
    let mut rep = Report::new("pairs");
    for i in 1..=p.max {
        for j in i..=p.max {
            if i.gcd(&j) <= 4 {
                let ok = mass_check(i, j)?;
                rep.check(ok, || format!("G[{i},{j}](1)"));
            }
        }
    }
    Ok(rep)
}

fn random_poly(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for _ in 0..rng.gen_range(0..=3) {
        p.add_term(rng.gen_range(-3..=3), BigInt::from(rng.gen_range(-5..=5)));
    }
    p
}

fn random_series(rng: &mut ChaCha8Rng, order: usize) -> TSeries {
    let mut coeffs = vec![LaurentPoly::one()];
    coeffs.extend((1..=order).map(|_| random_poly(rng)));
    TSeries::from_coeffs(coeffs, order)
}

pub fn random_instance(rng: &mut ChaCha8Rng, order: usize) -> AxiomInstance {
    AxiomInstance {
        a: random_series(rng, order),
        b: random_series(rng, order),
        m: random_poly(rng),
        n: random_poly(rng),
        k: rng.gen_range(2..=3),
    }
}

pub fn power_axioms(p: &Params) -> Result<Report, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut rep = Report::new("instances");
    for trial in 0..p.trials {
        let inst = random_instance(&mut rng, p.order);
        let failed = failed_axioms(&inst)?;
        rep.check(failed.is_empty(), || {
            format!("trial {trial}: axioms {failed:?} fail for m = {}, n = {}", inst.m, inst.n)
        });
    }
    Ok(rep)
}

/// Φ and Ψ against nested loops for caps up to `cap`, then the stratum
/// contributions against direct summation.
pub fn phi_psi(p: &Params) -> Result<Report, CliError> {
    let mut rep = Report::new("sums");
    for cap in 1..=p.cap {
        let phi = phi_fresh(cap)?;
        rep.check(phi.numerator == phi_brute(cap) && phi.denominator.is_one(), || format!("phi at cap {cap}"));
        let psi = psi_fresh(cap)?;
        rep.check(psi.numerator == psi_brute(cap) && psi.denominator.is_one(), || format!("psi at cap {cap}"));
    }
    let bound = pairs_bound(p.order as u64, p.cap);
    for id in StratumId::ALL {
        let ok = stratum_contribution(id, &bound)? == stratum_direct(id, &bound)?;
        rep.check(ok, || format!("stratum {id}"));
    }
    Ok(rep)
}

pub fn lemma4(p: &Params) -> Result<Report, CliError> {
    let bound = pairs_bound(p.order as u64, p.cap);
    let sol = solve_lemma4(&bound)?;
    let j = &sol.j;
    let mut rep = Report::new("properties");
    rep.notes.push(format!(
        "solved to t^{} with p,q,r,s <= {}: {} terms after {} iterations",
        p.order,
        p.cap,
        j.len(),
        sol.iterations
    ));
    rep.check(sol.iterations <= p.order, || format!("took {} iterations", sol.iterations));
    rep.check(lemma4_rhs(j, &bound)?.0 == *j, || "not a fixed point".into());
    rep.check(arc_swap(j) == *j, || "arc swap symmetry".into());
    rep.check(coordinate_swap(j) == *j, || "coordinate swap symmetry".into());
    Ok(rep)
}

/// The `u⁰` slice against `f(p,q)` built from its coefficients, and the
/// `u¹` slice against the pair series one order lower.
pub fn thm4(p: &Params) -> Result<Report, CliError> {
    if p.order < 2 {
        return Err(CliError::Usage("verify thm4 needs --order >= 2".into()));
    }
    let sol = solve_thm4(&tuples_bound(p.order as u64, p.cap))?;
    let mut rep = Report::new("properties");
    rep.notes.push(format!(
        "solved to t+u <= {} with p,q,r,s <= {}: {} terms after {} iterations",
        p.order,
        p.cap,
        sol.i.len(),
        sol.iterations
    ));
    let u0 = u_slice(&sol.i, 0);
    let mut fab = MultiSeries::new(&J_VARS, u0.bound().clone());
    for a in 1..=p.cap {
        for b in 1..=p.cap {
            fab.add_term(vec![0, 0, 0, 0, 0, a, b, 0, 0], fab_coefficient(a as usize, b as usize));
        }
    }
    rep.check(u0 == fab, || "u^0 slice differs from f(p,q)".into());
    let j = solve_lemma4(&pairs_bound(p.order as u64 - 1, p.cap))?.j;
    let u1 = u_slice(&sol.i, 1);
    rep.check(u1 == j, || {
        let diff = u1.sub(&j);
        let first = diff
            .terms()
            .next()
            .map(|(e, c)| format!("{} ({c})", diff.monomial_string(e)))
            .unwrap_or_default();
        format!("u^1 slice differs from the pair series at {first}")
    });
    Ok(rep)
}
