//! Fixed-column CSV and JSON reports. Output depends only on the rows and the
//! seed, so identical runs produce identical bytes.

use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::experiment::{CertifyRow, ExponentFit, Pipeline3Report, Status};

pub const COLUMNS: [&str; 9] = [
    "instance",
    "n",
    "count",
    "bound_cert",
    "kst_bound",
    "delta_bound",
    "slope",
    "status",
    "seed",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::input(format!("unknown format `{s}`"))),
        }
    }
}

/// One report line. Absent values print as empty CSV fields and JSON nulls.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub instance: String,
    pub n: u64,
    pub count: u64,
    pub bound_cert: Option<u64>,
    pub kst_bound: Option<f64>,
    pub delta_bound: Option<f64>,
    pub slope: Option<f64>,
    pub status: Status,
    pub seed: u64,
}

impl ReportRow {
    pub fn new(instance: impl Into<String>, n: u64, count: u64, seed: u64) -> Self {
        ReportRow {
            instance: instance.into(),
            n,
            count,
            bound_cert: None,
            kst_bound: None,
            delta_bound: None,
            slope: None,
            status: Status::Ok,
            seed,
        }
    }

    pub fn from_certify(row: &CertifyRow, seed: u64) -> Self {
        ReportRow {
            bound_cert: row.bound_cert(),
            kst_bound: Some(row.kst_bound),
            delta_bound: row.delta_bound,
            status: row.status,
            ..ReportRow::new(&row.instance, row.m.max(row.n) as u64, row.exact, seed)
        }
    }

    /// One row per size, each carrying the fitted slope.
    pub fn from_fit(instance: &str, fit: &ExponentFit<f64>, seed: u64) -> Vec<Self> {
        fit.sizes
            .iter()
            .zip(&fit.counts)
            .map(|(&n, &count)| ReportRow {
                slope: Some(fit.slope),
                ..ReportRow::new(instance, n, count, seed)
            })
            .collect()
    }

    pub fn from_pipeline3(rep: &Pipeline3Report, seed: u64) -> Self {
        let n = rep.size.iter().copied().max().unwrap_or(0) as u64;
        ReportRow {
            status: rep.status(),
            ..ReportRow::new(&rep.instance, n, rep.count, seed)
        }
    }

    fn fields(&self) -> [String; 9] {
        let float = |v: Option<f64>| v.map(|x| format!("{x:.6}")).unwrap_or_default();
        [
            self.instance.clone(),
            self.n.to_string(),
            self.count.to_string(),
            self.bound_cert.map(|v| v.to_string()).unwrap_or_default(),
            float(self.kst_bound),
            float(self.delta_bound),
            float(self.slope),
            self.status.as_str().to_string(),
            self.seed.to_string(),
        ]
    }

    fn to_json(&self) -> Value {
        // same six-decimal rounding as the CSV
        let float = |v: Option<f64>| {
            v.map(|x| format!("{x:.6}").parse::<f64>().expect("formatted float parses"))
        };
        json!({
            "instance": self.instance,
            "n": self.n,
            "count": self.count,
            "bound_cert": self.bound_cert,
            "kst_bound": float(self.kst_bound),
            "delta_bound": float(self.delta_bound),
            "slope": float(self.slope),
            "status": self.status.as_str(),
            "seed": self.seed,
        })
    }
}

pub fn render(rows: &[ReportRow], format: Format, seed: u64) -> Result<String> {
    match format {
        Format::Csv => {
            let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(COLUMNS).map_err(io)?;
            for row in rows {
                w.write_record(row.fields()).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        Format::Json => {
            let doc = json!({
                "seed": seed,
                "columns": COLUMNS,
                "rows": rows.iter().map(ReportRow::to_json).collect::<Vec<_>>(),
            });
            Ok(serde_json::to_string_pretty(&doc)? + "\n")
        }
    }
}

pub fn emit_report(rows: &[ReportRow], format: Format, path: &Path, seed: u64) -> Result<()> {
    std::fs::write(path, render(rows, format, seed)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row() -> ReportRow {
        ReportRow {
            kst_bound: Some(722.5934603657847),
            slope: Some(2.0),
            ..ReportRow::new("pg:7", 57, 456, 42)
        }
    }

    #[test]
    fn empty_csv_is_header_only() {
        assert_eq!(
            render(&[], Format::Csv, 0).unwrap(),
            "instance,n,count,bound_cert,kst_bound,delta_bound,slope,status,seed\n"
        );
    }

    #[test]
    fn one_row_is_two_lines() {
        let text = render(&[row()], Format::Csv, 42).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1], "pg:7,57,456,,722.593460,,2.000000,ok,42");
    }

    #[test]
    fn fields_with_commas_are_quoted() {
        let r = ReportRow::new("a,b", 1, 1, 0);
        let text = render(&[r], Format::Csv, 0).unwrap();
        assert!(text.lines().nth(1).unwrap().starts_with("\"a,b\","));
    }

    #[test]
    fn json_mirrors_csv() {
        let text = render(&[row()], Format::Json, 42).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["seed"], 42);
        assert_eq!(v["columns"].as_array().unwrap().len(), 9);
        assert_eq!(v["rows"][0]["kst_bound"], 722.59346);
        assert_eq!(v["rows"][0]["bound_cert"], Value::Null);
    }

    #[test]
    fn rendering_is_deterministic() {
        let rows = vec![row(), ReportRow::new("id", 3, 3, 42)];
        for f in [Format::Csv, Format::Json] {
            assert_eq!(render(&rows, f, 42).unwrap(), render(&rows, f, 42).unwrap());
        }
    }

    #[test]
    fn unwritable_path_is_an_error() {
        let err = emit_report(&[], Format::Csv, Path::new("/nonexistent/dir/out.csv"), 0);
        assert!(matches!(err, Err(Error::Io(_))));
    }
}
