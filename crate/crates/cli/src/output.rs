//! Serialisation of tables. Counts and rationals are always written as
//! decimal strings so nothing passes through floating point.

use std::collections::BTreeMap;

use clap::ValueEnum;
use hultman::exactmath::{format_rational, rational_to_f64};
use hultman::{Comparison, DistributionTable, ExactInt, MomentPair};
use serde_json::{json, Value};

use crate::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

fn csv_bytes(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.into_error()))
}

fn json_bytes(value: &Value) -> Result<Vec<u8>, CliError> {
    let mut out = serde_json::to_vec_pretty(value)?;
    out.push(b'\n');
    Ok(out)
}

/// Rows `(n, k, count)` across several `n`.
pub fn multi_table(rows: &[(usize, i64, ExactInt)], signed: bool, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Csv => csv_bytes(
            &["n", "k", "count"],
            rows.iter().map(|(n, k, c)| vec![n.to_string(), k.to_string(), c.to_string()]),
        ),
        Format::Json => json_bytes(&json!({
            "signed": signed,
            "rows": rows
                .iter()
                .map(|(n, k, c)| json!({"n": n, "k": k, "count": c.to_string()}))
                .collect::<Vec<_>>(),
        })),
    }
}

/// `k,count` rows of one table. With `dense = Some((lo, hi))` every key in
/// `lo..=hi` is written, zeros included; otherwise only non-zero keys.
pub fn single_table(table: &DistributionTable, dense: Option<(i64, i64)>, format: Format) -> Result<Vec<u8>, CliError> {
    let rows: Vec<(i64, ExactInt)> = match dense {
        Some((lo, hi)) => {
            let lo = table.min_key().map_or(lo, |m| m.min(lo));
            let hi = table.max_key().map_or(hi, |m| m.max(hi));
            (lo..=hi).map(|k| (k, table.get(k))).collect()
        }
        None => table.counts().iter().map(|(&k, c)| (k, c.clone())).collect(),
    };
    match format {
        Format::Csv => csv_bytes(&["k", "count"], rows.iter().map(|(k, c)| vec![k.to_string(), c.to_string()])),
        Format::Json => json_bytes(&json!({
            "n": table.n(),
            "statistic": table.statistic(),
            "total": table.total().to_string(),
            "counts": rows.iter().map(|(k, c)| json!({"k": k, "count": c.to_string()})).collect::<Vec<_>>(),
        })),
    }
}

fn hint(q: &hultman::ExactRational) -> String {
    format!("{:.15}", rational_to_f64(q))
}

pub fn moments(rows: &[(usize, MomentPair)], signed: bool, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Csv => csv_bytes(
            &["n", "mean", "variance", "mean_approx", "variance_approx"],
            rows.iter().map(|(n, m)| {
                vec![
                    n.to_string(),
                    format_rational(&m.mean),
                    format_rational(&m.variance),
                    hint(&m.mean),
                    hint(&m.variance),
                ]
            }),
        ),
        Format::Json => json_bytes(&json!({
            "signed": signed,
            "rows": rows.iter().map(|(n, m)| json!({
                "n": n,
                "mean": format_rational(&m.mean),
                "variance": format_rational(&m.variance),
                "mean_approx": hint(&m.mean),
                "variance_approx": hint(&m.variance),
            })).collect::<Vec<_>>(),
        })),
    }
}

pub fn comparison(c: &Comparison, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Csv => csv_bytes(
            &["k", "count", "reference", "offset"],
            c.rows
                .iter()
                .map(|(k, d, r)| vec![k.to_string(), d.to_string(), r.to_string(), c.offset.to_string()]),
        ),
        Format::Json => json_bytes(&json!({
            "n": c.n,
            "metric": c.metric.name(),
            "offset": c.offset,
            "total_variation": format_rational(&c.total_variation),
            "rows": c.rows.iter().map(|(k, d, r)| json!({
                "k": k,
                "count": d.to_string(),
                "reference": r.to_string(),
            })).collect::<Vec<_>>(),
        })),
    }
}

/// Parses `k,count` or `n,k,count` CSV back into `(key columns, count)`.
pub fn parse_csv_counts(bytes: &[u8]) -> Result<BTreeMap<Vec<i64>, ExactInt>, CliError> {
    let mut r = csv::Reader::from_reader(bytes);
    let mut out = BTreeMap::new();
    for record in r.records() {
        let record = record?;
        let fields: Vec<&str> = record.iter().collect();
        let (count, keys) = fields.split_last().ok_or_else(|| CliError::Format("empty record".into()))?;
        let keys = keys
            .iter()
            .map(|s| s.parse::<i64>().map_err(|e| CliError::Format(format!("`{s}`: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let count: ExactInt = count.parse().map_err(|e| CliError::Format(format!("`{count}`: {e}")))?;
        out.insert(keys, count);
    }
    Ok(out)
}
