//! Report records, the constants table, and their JSON/CSV/text forms.
//!
//! Every check produces a [`Record`] `{suite, paper_ref, value, bound, pass}`.
//! Reports hold no timestamps, so identical runs serialise to identical
//! bytes; run metadata goes to a separate [`Metadata`] file.

use crate::constants::{
    choi_bracket, choi_cp_approx, cot_constant, csc_constant, osekowski_cpinf, p_star, sigma_p, weak_dp,
    weak_subordinate_constant,
};
use crate::error::Result;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub suite: String,
    /// The statement the check exercises, e.g. "V ≤ U majorisation".
    #[serde(rename = "paper_ref")]
    pub reference: String,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

impl Record {
    /// Passes when value ≤ bound.
    pub fn at_most(suite: &str, reference: &str, value: f64, bound: f64) -> Self {
        Self::new(suite, reference, value, bound, value <= bound)
    }

    /// Passes when value ≥ bound.
    pub fn at_least(suite: &str, reference: &str, value: f64, bound: f64) -> Self {
        Self::new(suite, reference, value, bound, value >= bound)
    }

    /// Records |value − target| against `tol`.
    pub fn close(suite: &str, reference: &str, value: f64, target: f64, tol: f64) -> Self {
        let gap = (value - target).abs();
        Self::new(suite, reference, gap, tol, gap <= tol)
    }

    pub fn new(suite: &str, reference: &str, value: f64, bound: f64, pass: bool) -> Self {
        // NaN never passes and is stored as infinity to keep the JSON numeric.
        let pass = pass && !value.is_nan() && !bound.is_nan();
        let clean = |x: f64| if x.is_nan() { f64::INFINITY } else { x };
        Self { suite: suite.into(), reference: reference.into(), value: clean(value), bound: clean(bound), pass }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self { command: command.into(), records: Vec::new() }
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    /// 0 when every record passed, 1 otherwise.
    pub fn exit_status(&self) -> i32 {
        i32::from(!self.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn to_json(&self) -> Result<String> {
        // serde_json cannot print infinities, so they become strings.
        let mut v = serde_json::to_value(self)?;
        if let Some(records) = v.get_mut("records").and_then(|r| r.as_array_mut()) {
            for (rec, orig) in records.iter_mut().zip(&self.records) {
                for (key, x) in [("value", orig.value), ("bound", orig.bound)] {
                    if !x.is_finite() {
                        rec[key] = serde_json::Value::String(format!("{x}"));
                    }
                }
            }
        }
        Ok(serde_json::to_string_pretty(&v)? + "\n")
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        for r in &self.records {
            out.serialize(r)?;
        }
        out.flush()?;
        Ok(())
    }

    /// Fixed-width text table, one line per record.
    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<18} {:<52} {:>14} {:>14}  result", "suite", "check", "value", "bound");
        for r in &self.records {
            let _ = writeln!(
                s,
                "{:<18} {:<52} {:>14} {:>14}  {}",
                r.suite,
                r.reference,
                fmt_num(r.value),
                fmt_num(r.bound),
                if r.pass { "PASS" } else { "FAIL" }
            );
        }
        let failed = self.failures().count();
        let _ = writeln!(s, "{} checks, {} failed", self.records.len(), failed);
        s
    }
}

fn fmt_num(x: f64) -> String {
    if x == 0.0 || (1e-3..1e6).contains(&x.abs()) {
        format!("{x:.6}")
    } else {
        format!("{x:.4e}")
    }
}

/// Run information kept out of the report so that reports are reproducible.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Metadata {
    pub command: String,
    pub version: String,
    pub started_unix_seconds: u64,
    pub elapsed_seconds: f64,
    pub config: serde_json::Value,
}

impl Metadata {
    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }
}

/// One row of the constants table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsRow {
    pub p: f64,
    pub p_star: f64,
    /// p* − 1.
    pub transform: f64,
    pub cot: f64,
    pub csc: f64,
    /// 2/Γ(p+1) on [1, 2], p^{p−1}/2 beyond.
    pub weak_subordinate: f64,
    /// D_p, unknown for p > 2.
    pub weak_orthogonal: Option<f64>,
    pub c_p_inf: f64,
    pub choi_approx: f64,
    pub choi_low: f64,
    pub choi_high: f64,
    pub sigma: f64,
}

pub fn constants_table(p_list: &[f64]) -> Result<Vec<ConstantsRow>> {
    p_list
        .iter()
        .map(|&p| {
            let ps = p_star(p)?;
            let (lo, hi) = choi_bracket(p)?;
            Ok(ConstantsRow {
                p,
                p_star: ps,
                transform: ps - 1.0,
                cot: cot_constant(p)?,
                csc: csc_constant(p)?,
                weak_subordinate: weak_subordinate_constant(p)?,
                weak_orthogonal: if p <= 2.0 { Some(weak_dp(p)?) } else { None },
                c_p_inf: osekowski_cpinf(p)?,
                choi_approx: choi_cp_approx(p)?,
                choi_low: lo,
                choi_high: hi,
                sigma: sigma_p(p)?,
            })
        })
        .collect()
}

const CONSTANT_HEADERS: [&str; 12] = [
    "p",
    "p_star",
    "p_star_minus_1",
    "cot",
    "csc",
    "weak_subordinate",
    "weak_orthogonal_D_p",
    "C_p_inf",
    "choi_approx",
    "choi_low",
    "choi_high",
    "sigma",
];

fn constants_cells(r: &ConstantsRow) -> [String; 12] {
    let f = |x: f64| format!("{x:.12}");
    [
        format!("{}", r.p),
        f(r.p_star),
        f(r.transform),
        f(r.cot),
        f(r.csc),
        f(r.weak_subordinate),
        r.weak_orthogonal.map_or_else(|| "open".to_string(), f),
        f(r.c_p_inf),
        f(r.choi_approx),
        f(r.choi_low),
        f(r.choi_high),
        f(r.sigma),
    ]
}

pub fn write_constants_csv<W: Write>(rows: &[ConstantsRow], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CONSTANT_HEADERS)?;
    for r in rows {
        out.write_record(constants_cells(r))?;
    }
    out.flush()?;
    Ok(())
}

pub fn constants_pretty(rows: &[ConstantsRow]) -> String {
    let cells: Vec<[String; 12]> = rows.iter().map(constants_cells).collect();
    let mut widths: Vec<usize> = CONSTANT_HEADERS.iter().map(|h| h.len()).collect();
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let mut s = String::new();
    let line = |s: &mut String, items: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = items.zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        let _ = writeln!(s, "{}", parts.join("  "));
    };
    line(&mut s, &mut CONSTANT_HEADERS.iter().copied());
    for row in &cells {
        line(&mut s, &mut row.iter().map(|c| c.as_str()));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows() {
        let rows = constants_table(&[1.5, 2.0, 3.0, 4.0]).unwrap();
        let two = &rows[1];
        assert!((two.transform - 1.0).abs() < 1e-15);
        assert!((two.cot - 1.0).abs() < 1e-12);
        assert!((two.csc - 2f64.sqrt()).abs() < 1e-12);
        assert!((two.sigma - 2f64.sqrt()).abs() < 1e-10);
        assert!((two.weak_orthogonal.unwrap() - 1.0).abs() < 1e-10);
        assert_eq!(rows[0].transform, rows[2].transform);
        assert!(rows[3].weak_orthogonal.is_none());
        let mut buf = Vec::new();
        write_constants_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 5);
        assert!(text.lines().nth(4).unwrap().contains(",open,"));
        assert!(constants_pretty(&rows).contains("open"));
    }

    #[test]
    fn report_json_is_stable_and_exit_status() {
        let mut r = Report::new("verify");
        r.push(Record::at_most("demo", "ratio below ceiling", 0.5, 1.0));
        r.push(Record::close("demo", "agreement", 1.0, 1.0 + 1e-10, 1e-9));
        assert_eq!(r.exit_status(), 0);
        let json = r.to_json().unwrap();
        assert_eq!(json, r.to_json().unwrap());
        assert!(json.contains("\"paper_ref\""));
        r.push(Record::at_least("demo", "nan never passes", f64::NAN, 0.0));
        assert_eq!(r.exit_status(), 1);
        assert!(r.to_json().unwrap().contains("\"inf\""));
        assert!(r.table().contains("FAIL"));
    }
}
