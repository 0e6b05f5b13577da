//! Report serialization. JSON floats are rounded to 9 significant digits
//! and keys keep struct field order, so equal inputs give byte-identical
//! output.

use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::search::{HullReport, SplitExperimentReport};

/// Rounds to 9 significant digits.
pub fn round_sig9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.8e}").parse().unwrap_or(x)
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n
                .as_f64()
                .map(round_sig9)
                .and_then(serde_json::Number::from_f64)
            {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value).map_err(|e| Error::Internal(e.to_string()))?;
    round_value(&mut v);
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn fmt(x: f64) -> String {
    format!("{}", round_sig9(x))
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt).unwrap_or_default()
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Internal(e.to_string())
}

/// One row per `(label, measure)` pair.
pub fn measures_csv<'a, I>(rows: I) -> Result<String>
where
    I: IntoIterator<Item = (&'a str, &'a str, f64)>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["partition", "measure", "value"])
        .map_err(csv_err)?;
    for (label, measure, value) in rows {
        w.write_record([label, measure, &fmt(value)])
            .map_err(csv_err)?;
    }
    finish(w)
}

/// `scenario,I,delta_I,delta_MI,ratio`, random splits suffixed with their seed.
pub fn split_experiment_csv(report: &SplitExperimentReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["scenario", "I", "delta_I", "delta_MI", "ratio"])
        .map_err(csv_err)?;
    for s in &report.scenarios {
        let name = match s.seed {
            Some(seed) => format!("{}:{seed}", s.scenario.as_str()),
            None => s.scenario.as_str().to_owned(),
        };
        w.write_record([
            name,
            fmt(s.information),
            fmt(s.delta_information),
            fmt(s.delta_mutual_information),
            fmt_opt(s.ratio),
        ])
        .map_err(csv_err)?;
    }
    finish(w)
}

/// `label,x,y,on_hull`
pub fn hull_csv(report: &HullReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["label", "x", "y", "on_hull"])
        .map_err(csv_err)?;
    for p in &report.points {
        w.write_record([p.label.clone(), fmt(p.x), fmt(p.y), p.on_hull.to_string()])
            .map_err(csv_err)?;
    }
    finish(w)
}

pub fn write_output(text: &str, out: Option<&std::path::Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::io("<stdout>", e))
        }
    }
}
