use std::path::{Path, PathBuf};
use std::str::FromStr;

use motivic::pairs::{pairs_bound, phi_fresh, psi_fresh, solve_lemma4, PartialSum};
use motivic::powerstruct::{one_minus_t_pow, series_pow};
use motivic::ring::{LaurentPoly, MultiSeries, TSeries};
use motivic::solver::{
    assemble_i_from_table, compute_g, gaa_closed_form, gij_closed_form, GTable,
};
use motivic::tuples::{solve_thm4, tuples_bound};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::cache::{self, Cache};
use crate::config::Config;
use crate::render::{self, Format, Value};
use crate::verify::{self, Check, Params};
use crate::{Cli, CliError, Command};

pub const DEFAULT_ORDER: usize = 30;
pub const DEFAULT_INDEX: usize = 12;
const PAIRS_ORDER: usize = 8;
const TUPLES_ORDER: usize = 6;
const SERIES_CAP: u32 = 3;
const PHI_CAP: u32 = 6;
const POWER_ORDER: usize = 10;

struct Ctx {
    config: Config,
    cache: Cache,
    format: Format,
}

impl Ctx {
    fn positive<T: FromStr + PartialOrd + Default + Copy>(
        &self,
        flag: Option<T>,
        key: &str,
        default: T,
    ) -> Result<T, CliError> {
        let v = self.config.pick(flag, key, default)?;
        if v <= T::default() {
            return Err(CliError::Usage(format!("{key} must be positive")));
        }
        Ok(v)
    }
}

pub fn run(cli: Cli) -> Result<String, CliError> {
    let config = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let cache = if cli.no_cache {
        Cache::disabled()
    } else {
        Cache::new(config.cache_dir(cli.cache_dir.clone()))
    };
    let format: Format = match cli.format {
        Some(f) => f,
        None => config.pick(None, "format", Format::Text)?,
    };
    let ctx = Ctx {
        config,
        cache,
        format,
    };
    match cli.command {
        Command::Gtable { imax, jmax, order } => {
            let imax = ctx.positive(imax, "imax", DEFAULT_INDEX)?;
            let jmax = ctx.positive(jmax, "jmax", DEFAULT_INDEX)?;
            let order = ctx.positive(order, "order", DEFAULT_ORDER)?;
            Ok(render::gtable(&gtable(&ctx, imax, jmax, order)?, ctx.format))
        }
        Command::Gij { i, j, order } => {
            let order = ctx.positive(order, "order", DEFAULT_ORDER)?;
            if i == 0 || j == 0 {
                return Err(CliError::Usage("indices start at 1".into()));
            }
            let closed = (i.gcd(&j) <= 4).then(|| gij_closed_form(i, j)).transpose()?;
            entry(&ctx, i, j, order, closed.map(|c| c.to_string()))
        }
        Command::Gaa { a, order } => {
            let order = ctx.positive(order, "order", DEFAULT_ORDER)?;
            if a == 0 {
                return Err(CliError::Usage("indices start at 1".into()));
            }
            let closed = (a <= 4).then(|| gaa_closed_form(a)).transpose()?;
            if let Some(c) = &closed {
                if c.expand(order)? != compute_g(a, a, order) {
                    return Err(CliError::Failed(format!(
                        "G[{a},{a}] differs from its closed form {c} below t^{}\n",
                        order + 1
                    )));
                }
            }
            entry(&ctx, a, a, order, closed.map(|c| c.to_string()))
        }
        Command::AssembleI { imax, jmax, order } => {
            let imax = ctx.positive(imax, "imax", DEFAULT_INDEX)?;
            let jmax = ctx.positive(jmax, "jmax", DEFAULT_INDEX)?;
            let order = ctx.positive(order, "order", DEFAULT_ORDER)?;
            let table = gtable(&ctx, imax, jmax, order)?;
            Ok(render::series(&assemble_i_from_table(&table), ctx.format))
        }
        Command::Verify {
            which,
            imax,
            jmax,
            max,
            order,
            cap,
            trials,
            seed,
        } => run_verify(&ctx, which, imax, jmax, max, order, cap, trials, seed),
        Command::Power { m, base, order } => {
            let order = ctx.positive(order, "order", POWER_ORDER)?;
            let m = parse_poly(&m)?;
            let out = match base {
                None => one_minus_t_pow(&m, order),
                Some(b) => {
                    let coeffs = b.split(',').map(parse_poly).collect::<Result<Vec<_>, _>>()?;
                    series_pow(&TSeries::from_coeffs(coeffs, order), &m)?
                }
            };
            Ok(render::tseries(&out, ctx.format))
        }
        Command::Phi { cap } => {
            let cap = ctx.positive(cap, "cap", PHI_CAP)?;
            Ok(partial_sum(&phi_fresh(cap)?, ctx.format))
        }
        Command::Psi { cap } => {
            let cap = ctx.positive(cap, "cap", PHI_CAP)?;
            Ok(partial_sum(&psi_fresh(cap)?, ctx.format))
        }
        Command::SolvePairs { order, cap } => {
            let order = ctx.positive(order, "order", PAIRS_ORDER)?;
            let cap = ctx.positive(cap, "cap", SERIES_CAP)?;
            let key = cache::key("pairs", "lemma4", &[("order", order.to_string()), ("cap", cap.to_string())]);
            let j = cached_series(&ctx, &key, || {
                Ok(solve_lemma4(&pairs_bound(order as u64, cap))?.j)
            })?;
            Ok(render::series(&j, ctx.format))
        }
        Command::SolveTuples { order, cap } => {
            let order = ctx.positive(order, "order", TUPLES_ORDER)?;
            let cap = ctx.positive(cap, "cap", SERIES_CAP)?;
            let key = cache::key("tuples", "thm4", &[("order", order.to_string()), ("cap", cap.to_string())]);
            let i = cached_series(&ctx, &key, || {
                Ok(solve_thm4(&tuples_bound(order as u64, cap))?.i)
            })?;
            Ok(render::series(&i, ctx.format))
        }
        Command::Specialize { input, value } => {
            let value: String = match value {
                Some(v) => v,
                None => ctx
                    .config
                    .pick(None, "value", String::new())?,
            };
            if value.is_empty() {
                return Err(CliError::Usage("specialize needs --value".into()));
            }
            let v = BigRational::from_str(value.trim())
                .map_err(|_| CliError::Usage(format!("{value:?} is not an exact rational")))?;
            if v.is_zero() {
                return Err(CliError::Usage("L cannot be specialized to 0".into()));
            }
            specialize(&load(&input)?, &v, ctx.format)
        }
        Command::Export { input, output } => {
            let text = match load(&input)? {
                Loaded::Table(t) => render::gtable(&t, ctx.format),
                Loaded::Series(s) => render::series(&s, ctx.format),
            };
            emit(text, output)
        }
        Command::Import { input, output } => {
            let text = match load(&input)? {
                Loaded::Table(t) => render::gtable(&t, Format::Json),
                Loaded::Series(s) => render::series(&s, Format::Json),
            };
            emit(text, output)
        }
    }
}

fn parse_poly(s: &str) -> Result<LaurentPoly, CliError> {
    s.trim()
        .parse()
        .map_err(|e| CliError::Usage(format!("cannot parse {s:?} as a Laurent polynomial in L: {e}")))
}

/// The cached table for this rectangle, shared by `gtable`, `assemble-i`
/// and the table-based checks.
fn gtable(ctx: &Ctx, imax: usize, jmax: usize, order: usize) -> Result<GTable, CliError> {
    let key = cache::key(
        "solver",
        "gtable",
        &[
            ("imax", imax.to_string()),
            ("jmax", jmax.to_string()),
            ("order", order.to_string()),
        ],
    );
    ctx.cache.get_or_compute(
        &key,
        || Ok(GTable::compute(imax, jmax, order)?),
        GTable::to_json,
        |p| GTable::from_json(p).ok(),
    )
}

fn cached_series(
    ctx: &Ctx,
    key: &str,
    compute: impl FnOnce() -> Result<MultiSeries, CliError>,
) -> Result<MultiSeries, CliError> {
    ctx.cache.get_or_compute(
        key,
        compute,
        |s| serde_json::to_string(s).expect("series serializes"),
        |p| {
            serde_json::from_str::<MultiSeries>(p)
                .ok()
                .filter(|s| s.validate().is_ok())
        },
    )
}

fn entry(ctx: &Ctx, i: usize, j: usize, order: usize, closed: Option<String>) -> Result<String, CliError> {
    let mut table = GTable::empty(order);
    table.set(i, j, compute_g(i, j, order));
    let mut out = render::gtable(&table, ctx.format);
    if ctx.format == Format::Text {
        if let Some(c) = closed {
            out.push_str(&format!("closed form: {c}\n"));
        }
    }
    Ok(out)
}

fn partial_sum(s: &PartialSum, format: Format) -> String {
    match format {
        Format::Text => format!("denominator = {}\n{}", s.denominator, render::series(&s.numerator, format)),
        Format::Csv => format!("# denominator={}\n{}", s.denominator, render::series(&s.numerator, format)),
        Format::Json => {
            #[derive(Serialize)]
            struct Raw<'a> {
                denominator: &'a LaurentPoly,
                numerator: &'a MultiSeries,
            }
            render::json_value(&Raw {
                denominator: &s.denominator,
                numerator: &s.numerator,
            })
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_verify(
    ctx: &Ctx,
    which: Check,
    imax: Option<usize>,
    jmax: Option<usize>,
    max: Option<usize>,
    order: Option<usize>,
    cap: Option<u32>,
    trials: Option<usize>,
    seed: Option<u64>,
) -> Result<String, CliError> {
    let (order_default, cap_default) = match which {
        Check::PowerAxioms => (POWER_ORDER, SERIES_CAP),
        Check::PhiPsi => (PAIRS_ORDER, PHI_CAP),
        Check::Lemma4 => (PAIRS_ORDER, SERIES_CAP),
        Check::Thm4 => (TUPLES_ORDER, SERIES_CAP),
        _ => (DEFAULT_ORDER, SERIES_CAP),
    };
    let imax = ctx.positive(imax, "imax", DEFAULT_INDEX)?;
    let p = Params {
        imax,
        jmax: ctx.positive(jmax, "jmax", imax)?,
        max: ctx.positive(max, "max", DEFAULT_INDEX)?,
        order: ctx.positive(order, "order", order_default)?,
        cap: ctx.positive(cap, "cap", cap_default)?,
        trials: ctx.positive(trials, "trials", 100)?,
        seed: ctx.config.pick(seed, "seed", 0)?,
    };
    let report = match which {
        Check::Eq1 => verify::eq1(&gtable(ctx, p.imax, p.jmax, p.order)?, &p)?,
        Check::Eq2Support => verify::eq2_support(&gtable(ctx, p.imax, p.jmax, p.order)?),
        Check::Eq4 => verify::eq4(&p)?,
        Check::Lemma3 => verify::lemma3(&p),
        Check::Table => verify::table(&p)?,
        Check::Leading => verify::leading(&p),
        Check::Mass => verify::mass(&p)?,
        Check::PowerAxioms => verify::power_axioms(&p)?,
        Check::PhiPsi => verify::phi_psi(&p)?,
        Check::Lemma4 => verify::lemma4(&p)?,
        Check::Thm4 => verify::thm4(&p)?,
    };
    if report.holds() {
        Ok(report.render())
    } else {
        Err(CliError::Failed(report.render()))
    }
}

enum Loaded {
    Table(GTable),
    Series(MultiSeries),
}

/// A table as JSON or CSV, or a series as JSON, told apart by content.
fn load(path: &Path) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let bad = |m: String| CliError::Usage(format!("{}: {m}", path.display()));
    if text.trim_start().starts_with("# order=") {
        return GTable::from_csv(&text).map(Loaded::Table).map_err(|e| bad(e.to_string()));
    }
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| bad(format!("neither a table CSV nor JSON: {e}")))?;
    if value.get("entries").is_some() {
        GTable::from_json(&text).map(Loaded::Table).map_err(|e| bad(e.to_string()))
    } else if value.get("terms").is_some() {
        let s: MultiSeries = serde_json::from_value(value).map_err(|e| bad(e.to_string()))?;
        s.validate().map_err(|e| bad(e.to_string()))?;
        Ok(Loaded::Series(s))
    } else {
        Err(bad("JSON is neither a G table nor a series".into()))
    }
}

fn specialize(input: &Loaded, v: &BigRational, format: Format) -> Result<String, CliError> {
    let mut rows = Vec::new();
    match input {
        Loaded::Table(t) => {
            for (i, j, s) in t.entries() {
                for (k, c) in s.nonzero_terms() {
                    rows.push(Value {
                        label: format!("G[{i},{j}] t^{k}"),
                        fields: vec![
                            ("i".into(), i.to_string()),
                            ("j".into(), j.to_string()),
                            ("t_exp".into(), k.to_string()),
                        ],
                        value: c.specialize(v)?,
                    });
                }
            }
        }
        Loaded::Series(s) => {
            for (e, c) in s.terms() {
                rows.push(Value {
                    label: s.monomial_string(e),
                    fields: s.vars().iter().cloned().zip(e.iter().map(u32::to_string)).collect(),
                    value: c.specialize(v)?,
                });
            }
        }
    }
    Ok(render::values(&rows, format))
}

fn emit(text: String, output: Option<PathBuf>) -> Result<String, CliError> {
    match output {
        None => Ok(text),
        Some(p) => {
            std::fs::write(&p, text)?;
            Ok(String::new())
        }
    }
}
