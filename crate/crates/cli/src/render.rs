//! Text, CSV and JSON renderings. Every numeral is an exact decimal integer
//! or a `num/den` rational.

use std::fmt::Write;

use clap::ValueEnum;
use motivic::ring::{LaurentPoly, MultiSeries, TSeries};
use motivic::solver::GTable;
use num_rational::BigRational;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

pub fn gtable(table: &GTable, format: Format) -> String {
    match format {
        Format::Text => table.to_text(),
        Format::Csv => table.to_csv(),
        Format::Json => {
            let mut s = table.to_json();
            s.push('\n');
            s
        }
    }
}

pub fn series(s: &MultiSeries, format: Format) -> String {
    match format {
        Format::Json => json(s),
        Format::Text => {
            let mut out = String::new();
            for (e, c) in s.terms() {
                writeln!(out, "{} = {c}", s.monomial_string(e)).unwrap();
            }
            if s.is_zero() {
                out.push_str("0\n");
            }
            out
        }
        Format::Csv => {
            let mut out = s.vars().join(",");
            out.push_str(",L_exp,coefficient\n");
            for (e, c) in s.terms() {
                let exps: Vec<String> = e.iter().map(u32::to_string).collect();
                for (l, x) in c.terms().rev() {
                    writeln!(out, "{},{l},{x}", exps.join(",")).unwrap();
                }
            }
            out
        }
    }
}

pub fn tseries(s: &TSeries, format: Format) -> String {
    match format {
        Format::Text => format!("{s}\n"),
        Format::Json => {
            #[derive(Serialize)]
            struct Raw<'a> {
                order: usize,
                coeffs: Vec<(usize, &'a LaurentPoly)>,
            }
            json(&Raw {
                order: s.order(),
                coeffs: s.nonzero_terms().collect(),
            })
        }
        Format::Csv => {
            let mut out = format!("# order={}\nt_exp,L_exp,coefficient\n", s.order());
            for (k, c) in s.nonzero_terms() {
                for (l, x) in c.terms().rev() {
                    writeln!(out, "{k},{l},{x}").unwrap();
                }
            }
            out
        }
    }
}

/// One specialized coefficient: where it sits and its value.
pub struct Value {
    pub label: String,
    pub fields: Vec<(String, String)>,
    pub value: BigRational,
}

pub fn values(rows: &[Value], format: Format) -> String {
    match format {
        Format::Text => rows
            .iter()
            .map(|r| format!("{} = {}\n", r.label, r.value))
            .collect(),
        Format::Csv => {
            let mut out = String::new();
            if let Some(first) = rows.first() {
                let names: Vec<&str> = first.fields.iter().map(|(n, _)| n.as_str()).collect();
                writeln!(out, "{},value", names.join(",")).unwrap();
            }
            for r in rows {
                let vals: Vec<&str> = r.fields.iter().map(|(_, v)| v.as_str()).collect();
                writeln!(out, "{},{}", vals.join(","), r.value).unwrap();
            }
            out
        }
        Format::Json => {
            let list: Vec<serde_json::Map<String, serde_json::Value>> = rows
                .iter()
                .map(|r| {
                    let mut m = serde_json::Map::new();
                    for (n, v) in &r.fields {
                        m.insert(n.clone(), serde_json::Value::String(v.clone()));
                    }
                    m.insert("value".into(), serde_json::Value::String(r.value.to_string()));
                    m
                })
                .collect();
            json(&list)
        }
    }
}

pub fn json_value<T: Serialize>(v: &T) -> String {
    json(v)
}
