// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Result tables: `#key=value` metadata lines, one header row, data rows.

use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { meta: Vec::new(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.meta.push((key.to_string(), value.to_string()));
        self
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row width");
        self.rows.push(row);
    }

    /// Header and rows as CSV text.
    pub fn body(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("#{k}={v}\n"));
        }
        out.push_str(&self.body());
        out
    }

    /// Writes the file and returns the SHA-256 of its body.
    pub fn write(&self, path: &Path) -> Result<String> {
        fs::write(path, self.render()).map_err(|e| Error::io(path.display().to_string(), e))?;
        Ok(hex::encode(Sha256::digest(self.body().as_bytes())))
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn parse(text: &str) -> Result<Table> {
        let mut meta = Vec::new();
        let mut body_start = 0;
        for line in text.split_inclusive('\n') {
            let Some(rest) = line.strip_prefix('#') else { break };
            let rest = rest.trim_end();
            if let Some((k, v)) = rest.split_once('=') {
                meta.push((k.trim().to_string(), v.trim().to_string()));
            }
            body_start += line.len();
        }
        let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(text[body_start..].as_bytes());
        let bad = |e: csv::Error| Error::InvalidInput(format!("malformed CSV: {e}"));
        let header = r.headers().map_err(bad)?.iter().map(str::to_string).collect();
        let rows = r
            .records()
            .map(|rec| rec.map(|x| x.iter().map(str::to_string).collect()))
            .collect::<std::result::Result<_, _>>()
            .map_err(bad)?;
        Ok(Table { meta, header, rows })
    }

    pub fn read(path: &Path) -> Result<Table> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        Table::parse(&text)
    }
}

/// Shortest round-trip float text; empty for NaN.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        x.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_parse() {
        let mut t = Table::new(&["t_us", "I"]);
        t.meta("seed", 7).meta("note", "a=b");
        t.push(vec![num(0.5), num(1e-12)]);
        t.push(vec![num(1.0), num(f64::NAN)]);
        let text = t.render();
        assert!(text.starts_with("#seed=7\n#note=a=b\nt_us,I\n"));
        let back = Table::parse(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.meta_value("note"), Some("a=b"));
        assert_eq!(back.column("I"), Some(1));
    }
}
