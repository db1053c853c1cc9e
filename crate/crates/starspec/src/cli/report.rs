//! Deterministic report emission. JSON and CSV are written by hand so that
//! every float carries 17 significant digits and repeated runs with the same
//! configuration produce byte-identical files.

use std::fmt::Write as _;

use crate::analysis::{ExperimentReport, ReportValue};

pub const REPORT_VERSION: &str = "starspec-report-1";

/// 17 significant digits; round-trips any f64 exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out
}

fn value_json(v: &ReportValue) -> String {
    match v {
        ReportValue::Float(x) => fmt_f64(*x),
        ReportValue::Int(i) => i.to_string(),
        ReportValue::Bool(b) => b.to_string(),
        ReportValue::Text(s) => format!("\"{}\"", json_escape(s)),
    }
}

fn value_csv(v: &ReportValue) -> String {
    match v {
        ReportValue::Float(x) => fmt_f64(*x),
        ReportValue::Int(i) => i.to_string(),
        ReportValue::Bool(b) => b.to_string(),
        ReportValue::Text(s) => {
            if s.contains(',') || s.contains('"') || s.contains('\n') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.clone()
            }
        }
    }
}

/// Full JSON document: experiment, config echo, rows, summary, version.
pub fn report_json(report: &ExperimentReport) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(
        out,
        "  \"experiment\": \"{}\",",
        json_escape(&report.experiment)
    );
    out.push_str("  \"config_echo\": {");
    for (i, (k, v)) in report.config_echo.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "\n    \"{}\": \"{}\"", json_escape(k), json_escape(v));
    }
    if report.config_echo.is_empty() {
        out.push_str("},\n");
    } else {
        out.push_str("\n  },\n");
    }
    out.push_str("  \"rows\": [");
    for (i, row) in report.rows.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str("\n    {");
        for (j, (name, value)) in row.cells.iter().enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            let _ = write!(out, "\"{}\": {}", json_escape(name), value_json(value));
        }
        out.push('}');
    }
    if report.rows.is_empty() {
        out.push_str("],\n");
    } else {
        out.push_str("\n  ],\n");
    }
    let _ = writeln!(out, "  \"summary\": {{");
    let _ = writeln!(out, "    \"max_defect\": {},", fmt_f64(report.max_defect));
    let _ = writeln!(out, "    \"threshold\": {},", fmt_f64(report.threshold));
    let _ = writeln!(out, "    \"pass\": {},", report.pass);
    out.push_str("    \"notes\": [");
    for (i, n) in report.notes.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "\"{}\"", json_escape(n));
    }
    out.push_str("]\n  },\n");
    let _ = writeln!(out, "  \"version\": \"{REPORT_VERSION}\"");
    out.push_str("}\n");
    out
}

/// CSV mirror of the rows: header from the first row's column names.
pub fn report_csv(report: &ExperimentReport) -> String {
    let mut out = String::new();
    if let Some(first) = report.rows.first() {
        let header: Vec<&str> = first.cells.iter().map(|(n, _)| n.as_str()).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &report.rows {
            let line: Vec<String> = header
                .iter()
                .map(|name| row.get(name).map(value_csv).unwrap_or_default())
                .collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::ReportRow;

    #[test]
    fn float_format_round_trips() {
        for &x in &[0.1, 1.0 / 3.0, 2.5e-12, 6.02e23, -0.0, 1.0] {
            let s = fmt_f64(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{s}");
        }
    }

    #[test]
    fn json_and_csv_are_deterministic() {
        let mut r = ExperimentReport::new("demo");
        r.echo("seed", 7);
        r.rows.push(ReportRow::new().float("t", 0.5).float("defect", 1e-11));
        r.rows.push(ReportRow::new().float("t", 0.25).float("defect", 5e-12));
        r.max_defect = 1e-11;
        r.threshold = 1e-10;
        let a = report_json(&r);
        let b = report_json(&r);
        assert_eq!(a, b);
        assert!(a.contains("\"pass\": true"));
        let csv = report_csv(&r);
        assert!(csv.starts_with("t,defect\n"));
        assert_eq!(csv.lines().count(), 3);
    }
}
