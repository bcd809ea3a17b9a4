//! The three output formats. Every command builds all three renderings up
//! front; JSON always goes through serde so rationals stay exact strings.

use std::io::Write;

use clap::ValueEnum;
use ec_riordan::paths::StepSet;
use ec_riordan::rational::{self, Rational};
use serde::{Serialize, Serializer};

use crate::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub struct Output {
    json: String,
    text: String,
    csv: String,
}

impl Output {
    pub fn new<T: Serialize>(value: &T, text: String, csv: String) -> CliResult<Output> {
        let json = serde_json::to_string_pretty(value).map_err(|e| CliError::Input(e.to_string()))?;
        Ok(Output { json, text, csv })
    }

    pub fn print(&self, format: Format) {
        let body = match format {
            Format::Json => &self.json,
            Format::Csv => &self.csv,
            Format::Text => &self.text,
        };
        // A closed pipe (e.g. `| head`) is not an error worth reporting.
        let _ = writeln!(std::io::stdout().lock(), "{}", body.trim_end());
    }
}

/// A sequence serialized as a JSON array of `"p/q"` strings.
pub struct Seq<'a>(pub &'a [Rational]);

impl Serialize for Seq<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        rational::serde_str::vec::serialize(self.0, s)
    }
}

pub mod opt_seq {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&Seq(v)),
            None => s.serialize_none(),
        }
    }
}

#[derive(Default)]
pub struct Lines(Vec<String>);

impl Lines {
    pub fn raw(&mut self, line: String) {
        self.0.push(line);
    }

    pub fn line(&mut self, name: &str, value: String) {
        self.0.push(format!("{name}: {value}"));
    }

    pub fn seq(&mut self, name: &str, values: &[Rational]) {
        self.line(name, rational::format_list(values));
    }

    pub fn finish(self) -> String {
        self.0.join("\n")
    }
}

pub struct Csv(csv::Writer<Vec<u8>>);

impl Default for Csv {
    fn default() -> Self {
        Csv(csv::WriterBuilder::new().flexible(true).from_writer(Vec::new()))
    }
}

impl Csv {
    pub fn record<I, T>(&mut self, fields: I)
    where
        I: IntoIterator<Item = T>,
        T: AsRef<[u8]>,
    {
        self.0.write_record(fields).expect("writing to memory");
    }

    pub fn values(&mut self, values: &[Rational]) {
        self.record(values.iter().map(rational::format));
    }

    pub fn seq(&mut self, name: &str, values: &[Rational]) {
        self.record(std::iter::once(name.to_string()).chain(values.iter().map(rational::format)));
    }

    pub fn finish(self) -> String {
        String::from_utf8(self.0.into_inner().expect("writing to memory")).expect("utf-8 fields")
    }
}

pub fn steps_text(set: &StepSet) -> String {
    let mut parts: Vec<String> =
        set.steps.iter().map(|s| format!("({},{}):{}", s.dx, s.dy, rational::format(&s.w))).collect();
    if let Some(o) = &set.origin_override {
        parts.push(format!("first (1,0) from origin:{}", rational::format(o)));
    }
    parts.join(" ")
}
