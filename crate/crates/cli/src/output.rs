use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

/// A command's output: the resolved inputs it ran with, the result, and optional tabular rows.
pub struct Report {
    pub command: String,
    pub input: Value,
    pub result: Value,
    /// Column names and rows for commands whose result is naturally a table.
    pub table: Option<(Vec<String>, Vec<Vec<Value>>)>,
}

impl Report {
    pub fn new(command: impl Into<String>, input: Value, result: Value) -> Self {
        Self {
            command: command.into(),
            input,
            result,
            table: None,
        }
    }

    pub fn with_table(mut self, header: Vec<String>, rows: Vec<Vec<Value>>) -> Self {
        self.table = Some((header, rows));
        self
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Json => {
                let mut env = Map::new();
                env.insert("command".into(), Value::String(self.command.clone()));
                env.insert("input".into(), self.input.clone());
                env.insert("result".into(), self.result.clone());
                serde_json::to_writer_pretty(&mut *out, &Value::Object(env))?;
                writeln!(out)
            }
            Format::Plain => {
                writeln!(out, "command = {}", self.command)?;
                let mut lines = Vec::new();
                flatten("input", &self.input, &mut lines);
                match &self.table {
                    Some((header, rows)) => {
                        for (k, v) in lines {
                            writeln!(out, "{k} = {v}")?;
                        }
                        writeln!(out, "{}", header.join("\t"))?;
                        for r in rows {
                            writeln!(
                                out,
                                "{}",
                                r.iter().map(plain).collect::<Vec<_>>().join("\t")
                            )?;
                        }
                        return Ok(());
                    }
                    None => flatten("result", &self.result, &mut lines),
                }
                for (k, v) in lines {
                    writeln!(out, "{k} = {v}")?;
                }
                Ok(())
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                match &self.table {
                    Some((header, rows)) => {
                        w.write_record(header)?;
                        for r in rows {
                            w.write_record(r.iter().map(csv_cell))?;
                        }
                    }
                    None => {
                        let mut lines = Vec::new();
                        flatten("input", &self.input, &mut lines);
                        flatten("result", &self.result, &mut lines);
                        w.write_record(["key", "value"])?;
                        for (k, v) in lines {
                            w.write_record([k, v])?;
                        }
                    }
                }
                w.flush()
            }
        }
    }
}

/// `%g`-style formatting with six significant digits.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&exp) {
        let s = format!("{x:.5e}");
        let (m, e) = s.split_once('e').expect("scientific");
        return format!("{}e{e}", trim_zeros(m));
    }
    let decimals = (5 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => sig6(n.as_f64().expect("f64")),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Bool(b) => b.to_string(),
        Value::Array(a) => format!("[{}]", a.iter().map(plain).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => v.to_string(),
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// `path = value` pairs; arrays of scalars stay on one line.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&format!("{prefix}.{k}"), x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        other => out.push((prefix.to_string(), plain(other))),
    }
}
