//! Key-sorted JSON reports with fixed six-decimal numbers, so that report
//! files are byte-stable across runs and platforms.

use std::collections::BTreeMap;
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
    Obj(Report),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report(BTreeMap<String, Value>);

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn insert(&mut self, key: impl Into<String>, value: Value) -> &mut Self {
        self.0.insert(key.into(), value);
        self
    }

    pub fn num(&mut self, key: impl Into<String>, v: f64) -> &mut Self {
        self.insert(key, Value::Num(v))
    }

    pub fn int(&mut self, key: impl Into<String>, v: u64) -> &mut Self {
        self.insert(key, Value::Int(v))
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.get(key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Value)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out.push('\n');
        out
    }

    fn write(&self, out: &mut String, depth: usize) {
        if self.0.is_empty() {
            out.push_str("{}");
            return;
        }
        out.push_str("{\n");
        let pad = "  ".repeat(depth + 1);
        for (i, (k, v)) in self.0.iter().enumerate() {
            out.push_str(&pad);
            out.push_str(&quote(k));
            out.push_str(": ");
            match v {
                Value::Num(x) => out.push_str(&fixed6(*x)),
                Value::Int(n) => write!(out, "{n}").unwrap(),
                Value::Text(s) => out.push_str(&quote(s)),
                Value::Bool(b) => write!(out, "{b}").unwrap(),
                Value::Obj(r) => r.write(out, depth + 1),
            }
            if i + 1 < self.0.len() {
                out.push(',');
            }
            out.push('\n');
        }
        out.push_str(&"  ".repeat(depth));
        out.push('}');
    }
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization is infallible")
}

/// Fixed-point rendering with six decimals; negative zero prints as zero.
pub fn fixed6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}
