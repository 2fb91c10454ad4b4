//! Report emission as aligned tables, CSV with fixed headers, or JSON arrays.
//!
//! Exact rationals are written as `num/den`, with a six-decimal approximation
//! alongside wherever a ratio appears.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidInput(format!("unknown format {other:?}"))),
        }
    }
}

/// A report type that can be flattened into rows under a fixed header.
pub trait Record: Serialize {
    const HEADER: &'static [&'static str];

    fn rows(&self) -> Vec<Vec<String>>;
}

pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `"num/den"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: u128 = num.parse().map_err(|_| bad())?;
    let den: u128 = den.parse().map_err(|_| bad())?;
    if den == 0 {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn decimal6(r: &Rational) -> String {
    format!("{:.6}", to_f64(r))
}

pub(crate) fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

/// Renders records in the requested format. Row order follows input order;
/// an empty input still produces the CSV header (or `[]` for JSON).
pub fn write_reports<R: Record>(records: &[R], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(records).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(R::HEADER).expect("in-memory write");
            for r in records {
                for row in r.rows() {
                    w.write_record(&row).expect("in-memory write");
                }
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
        Format::Table => {
            let rows: Vec<Vec<String>> = records.iter().flat_map(|r| r.rows()).collect();
            render_table(R::HEADER, &rows)
        }
    }
}

fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect();
        writeln!(out, "{}", parts.join("  ").trim_end()).unwrap();
    };
    line(&mut header.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    out
}

/// One parsed row of a dominance CSV.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceRow {
    pub a: i64,
    pub n: u64,
    pub c2: Rational,
    pub c2_decimal: String,
    pub classification: String,
}

/// Reads back CSV written for dominance reports.
pub fn parse_dominance_csv(text: &str) -> Result<Vec<DominanceRow>> {
    let bad = |e: &dyn std::fmt::Display| Error::InvalidInput(format!("malformed CSV: {e}"));
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| bad(&e))?.clone();
    if header.iter().collect::<Vec<_>>() != crate::analysis::DominanceReport::HEADER {
        return Err(Error::InvalidInput(format!("unexpected header {header:?}")));
    }
    let mut out = Vec::new();
    for record in reader.records() {
        let r = record.map_err(|e| bad(&e))?;
        out.push(DominanceRow {
            a: r[0].parse().map_err(|e| bad(&e))?,
            n: r[1].parse().map_err(|e| bad(&e))?,
            c2: parse_rational(&r[2])?,
            c2_decimal: r[3].to_string(),
            classification: r[4].to_string(),
        });
    }
    Ok(out)
}
