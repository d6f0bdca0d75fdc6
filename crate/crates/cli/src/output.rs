//! Text renderings shared by every subcommand.

use std::fmt::Write as _;

use diamond_wiretap::BoundReport;
use serde::Serialize;

/// `%g`-style rendering with six significant digits.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Flat `key: value` document.
#[derive(Default)]
pub struct KvDoc {
    lines: Vec<(String, String)>,
}

impl KvDoc {
    pub fn put(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.lines.push((key.into(), value.into()));
    }

    pub fn num(&mut self, key: impl Into<String>, value: f64) {
        self.put(key, num(value));
    }

    pub fn bound(&mut self, prefix: &str, b: &BoundReport) {
        self.num(format!("{prefix}.rate"), b.rate);
        self.num(format!("{prefix}.rho"), b.rho);
        self.put(format!("{prefix}.binding"), b.binding.join(","));
        if let Some(branch) = b.branch {
            self.put(format!("{prefix}.branch"), branch);
        }
        for (i, note) in b.notes.iter().enumerate() {
            self.put(format!("{prefix}.note.{}", i + 1), note.clone());
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.lines {
            let _ = writeln!(out, "{k}: {v}");
        }
        out
    }
}

pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}
