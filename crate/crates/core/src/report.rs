//! Text, JSON and CSV rendering of verification reports.
//!
//! Machine formats print floats with 17 significant digits so values round
//! trip; text uses 10. `runtime_ms` is wall-clock and therefore only written
//! when timing is requested, which keeps repeated runs byte-identical.

use std::fmt::Write;

use crate::identities::{SumResult, VerificationReport};
use crate::Cx;

pub const COLUMNS: [&str; 14] = [
    "family", "n", "a", "k", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_err", "tol", "pass", "evals",
    "runtime_ms", "notes",
];

/// 17 significant digits, or `None` for NaN and infinities.
pub fn fmt_sig17(x: f64) -> Option<String> {
    x.is_finite().then(|| format!("{x:.16e}"))
}

/// 10 significant digits for humans.
pub fn fmt_sig10(x: f64) -> String {
    format!("{x:.9e}")
}

fn json_num(x: Option<f64>) -> String {
    x.and_then(fmt_sig17).unwrap_or_else(|| "null".into())
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

pub fn to_json(r: &VerificationReport, timing: bool) -> String {
    let notes: Vec<String> = r.notes.iter().map(|s| json_str(s)).collect();
    let fields = [
        json_str(&r.family),
        r.n.map_or("null".into(), |n| n.to_string()),
        json_num(r.a),
        r.k.map_or("null".into(), |k| k.to_string()),
        json_num(Some(r.lhs.re)),
        json_num(Some(r.lhs.im)),
        json_num(Some(r.rhs.re)),
        json_num(Some(r.rhs.im)),
        json_num(Some(r.abs_err)),
        json_num(Some(r.tol)),
        r.pass.to_string(),
        r.evaluations.to_string(),
        json_num(timing.then_some(r.runtime_ms)),
        format!("[{}]", notes.join(",")),
    ];
    let body: Vec<String> = COLUMNS.iter().zip(fields).map(|(k, v)| format!("\"{k}\":{v}")).collect();
    format!("{{{}}}", body.join(","))
}

/// A JSON array, one object per line.
pub fn to_json_array(reports: &[VerificationReport], timing: bool) -> String {
    if reports.is_empty() {
        return "[]\n".into();
    }
    let rows: Vec<String> = reports.iter().map(|r| format!("  {}", to_json(r, timing))).collect();
    format!("[\n{}\n]\n", rows.join(",\n"))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_num(x: Option<f64>) -> String {
    x.and_then(fmt_sig17).unwrap_or_default()
}

pub fn csv_header() -> String {
    COLUMNS.join(",")
}

pub fn to_csv_row(r: &VerificationReport, timing: bool) -> String {
    [
        csv_field(&r.family),
        r.n.map(|n| n.to_string()).unwrap_or_default(),
        csv_num(r.a),
        r.k.map(|k| k.to_string()).unwrap_or_default(),
        csv_num(Some(r.lhs.re)),
        csv_num(Some(r.lhs.im)),
        csv_num(Some(r.rhs.re)),
        csv_num(Some(r.rhs.im)),
        csv_num(Some(r.abs_err)),
        csv_num(Some(r.tol)),
        r.pass.to_string(),
        r.evaluations.to_string(),
        csv_num(timing.then_some(r.runtime_ms)),
        csv_field(&r.notes.join("; ")),
    ]
    .join(",")
}

pub fn to_csv(reports: &[VerificationReport], timing: bool) -> String {
    let mut out = csv_header();
    out.push('\n');
    for r in reports {
        out.push_str(&to_csv_row(r, timing));
        out.push('\n');
    }
    out
}

fn cx_text(z: Cx) -> String {
    if z.im == 0.0 {
        fmt_sig10(z.re)
    } else {
        format!("({}, {})", fmt_sig10(z.re), fmt_sig10(z.im))
    }
}

pub fn to_text(r: &VerificationReport, timing: bool) -> String {
    let mut out = String::new();
    let _ = write!(out, "{:<4} {}", if r.pass { "PASS" } else { "FAIL" }, r.family);
    if let Some(n) = r.n {
        let _ = write!(out, " n={n}");
    }
    if let Some(a) = r.a {
        let _ = write!(out, " a={a}");
    }
    if let Some(k) = r.k {
        let _ = write!(out, " k={k}");
    }
    let _ = write!(
        out,
        "  lhs={}  rhs={}  err={}  tol={:.1e}  evals={}",
        cx_text(r.lhs),
        cx_text(r.rhs),
        fmt_sig10(r.abs_err),
        r.tol,
        r.evaluations
    );
    if timing {
        let _ = write!(out, "  {:.3} ms", r.runtime_ms);
    }
    for note in &r.notes {
        let _ = write!(out, "\n       note: {note}");
    }
    out
}

pub fn to_text_all(reports: &[VerificationReport], timing: bool) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&to_text(r, timing));
        out.push('\n');
    }
    out
}

/// Tolerance applied to a finite-sum identity; the `n = 2` coth
/// representation is pinned harder.
pub fn sum_tolerance(s: &SumResult) -> f64 {
    use crate::identities::SumKind;
    if s.kind == SumKind::Th3Alt && s.n == 2 {
        1e-14
    } else {
        1e-12
    }
}

/// Wraps a finite sum as a report; plain evaluations compare with themselves.
pub fn sum_report(s: &SumResult) -> VerificationReport {
    let mut r = VerificationReport::new(s.kind.name(), Some(s.n), None, None);
    r.lhs = Cx::new(s.value, 0.0);
    r.tol = sum_tolerance(s);
    match s.expected {
        Some(e) => {
            r.rhs = Cx::new(e, 0.0);
            r.abs_err = (s.value - e).abs();
            r.pass = r.abs_err <= r.tol;
        }
        None => {
            r.rhs = r.lhs;
            r.abs_err = 0.0;
            r.pass = true;
            r.notes.push("evaluation only".into());
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::{finite_sum, SumKind};

    fn sample() -> VerificationReport {
        let mut r = VerificationReport::new("TH1", Some(3), Some(2.0), None);
        r.lhs = Cx::new(0.5535743588970452, 0.0);
        r.rhs = Cx::new(0.5535743588970452, 0.0);
        r.abs_err = 1e-17;
        r.tol = 1e-10;
        r.pass = true;
        r.evaluations = 120;
        r.runtime_ms = 1.5;
        r.notes.push("a \"quoted\", note".into());
        r
    }

    #[test]
    fn json_parses_and_keeps_precision() {
        let s = to_json(&sample(), false);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        assert_eq!(keys.len(), COLUMNS.len());
        assert_eq!(v["lhs_re"].as_f64().unwrap(), 0.5535743588970452);
        assert!(v["runtime_ms"].is_null() && v["k"].is_null());
        assert_eq!(v["notes"][0], "a \"quoted\", note");
        let timed: serde_json::Value = serde_json::from_str(&to_json(&sample(), true)).unwrap();
        assert_eq!(timed["runtime_ms"].as_f64(), Some(1.5));
        let arr: serde_json::Value = serde_json::from_str(&to_json_array(&[sample(), sample()], false)).unwrap();
        assert_eq!(arr.as_array().unwrap().len(), 2);
    }

    #[test]
    fn csv_columns() {
        let out = to_csv(&[sample()], false);
        let mut lines = out.lines();
        assert_eq!(lines.next().unwrap(), COLUMNS.join(","));
        let row = lines.next().unwrap();
        assert!(row.starts_with("TH1,3,2.0000000000000000e0,,"));
        assert!(row.ends_with(",true,120,,\"a \"\"quoted\"\", note\""));
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, std::f64::consts::PI, 1e-300, 123_456_789.123_456_78] {
            assert_eq!(fmt_sig17(x).unwrap().parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_sig17(f64::NAN), None);
    }

    #[test]
    fn sums_as_reports() {
        let r = sum_report(&finite_sum(SumKind::Lemma3, 3).unwrap());
        assert!(r.pass && r.family == "LEMMA3");
        let r = sum_report(&finite_sum(SumKind::Th3Sum(1), 4).unwrap());
        assert!(r.pass && r.abs_err == 0.0);
        assert!(to_text(&r, false).starts_with("PASS TH3_SUM(1) n=4"));
    }
}
