//! Command reports. The text and json forms carry the same fields in the same
//! order, and each parses back to the identical [`Report`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Positive,
    Negative,
    Inconclusive,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Positive => 0,
            Outcome::Negative => 1,
            Outcome::Inconclusive => 4,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Outcome::Positive => "positive",
            Outcome::Negative => "negative",
            Outcome::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Entry {
    /// Rendered `key = value`.
    Field { key: String, value: String },
    /// Rendered `key:` followed by indented lines.
    Block { key: String, lines: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub outcome: Outcome,
    pub status: String,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Format, CliError> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(CliError::Input(format!("unknown format `{other}` (expected text or json)"))),
        }
    }
}

impl Report {
    pub fn new(command: &str, outcome: Outcome, status: impl Into<String>) -> Report {
        Report { command: command.into(), outcome, status: status.into(), entries: Vec::new() }
    }

    pub fn field(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.entries.push(Entry::Field { key: key.into(), value: value.to_string() });
        self
    }

    /// Splits `text` into lines, dropping empty ones.
    pub fn block(&mut self, key: &str, text: &str) -> &mut Self {
        let lines = text.lines().filter(|l| !l.trim().is_empty()).map(str::to_string).collect();
        self.entries.push(Entry::Block { key: key.into(), lines });
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.outcome.exit_code()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\noutcome: {}\nstatus: {}\n", self.command, self.outcome.name(), self.status);
        for e in &self.entries {
            match e {
                Entry::Field { key, value } => out.push_str(&format!("{key} = {value}\n")),
                Entry::Block { key, lines } => {
                    out.push_str(&format!("{key}:\n"));
                    for l in lines {
                        out.push_str(&format!("  {l}\n"));
                    }
                }
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Report, CliError> {
        let bad = |line: usize, what: &str| CliError::Input(format!("report line {line}: {what}"));
        let mut lines = text.lines().enumerate().peekable();
        let mut header = |name: &str| -> Result<String, CliError> {
            let (i, l) = lines.next().ok_or_else(|| bad(0, "truncated header"))?;
            l.strip_prefix(&format!("{name}: "))
                .map(str::to_string)
                .ok_or_else(|| bad(i + 1, &format!("expected `{name}:`")))
        };
        let command = header("command")?;
        let outcome = match header("outcome")?.as_str() {
            "positive" => Outcome::Positive,
            "negative" => Outcome::Negative,
            "inconclusive" => Outcome::Inconclusive,
            other => return Err(CliError::Input(format!("unknown outcome `{other}`"))),
        };
        let status = header("status")?;
        let mut entries = Vec::new();
        while let Some((i, l)) = lines.next() {
            if let Some((key, value)) = l.split_once(" = ") {
                entries.push(Entry::Field { key: key.into(), value: value.into() });
            } else if let Some(key) = l.strip_suffix(':') {
                let mut block = Vec::new();
                while let Some((_, next)) = lines.peek() {
                    match next.strip_prefix("  ") {
                        Some(rest) => {
                            block.push(rest.to_string());
                            lines.next();
                        }
                        None => break,
                    }
                }
                entries.push(Entry::Block { key: key.into(), lines: block });
            } else {
                return Err(bad(i + 1, "expected `key = value` or `key:`"));
            }
        }
        Ok(Report { command, outcome, status, entries })
    }

    pub fn from_json(text: &str) -> Result<Report, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("bad json report: {e}")))
    }

    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| match e {
            Entry::Field { key: k, .. } | Entry::Block { key: k, .. } => k == key,
        })
    }

    pub fn value(&self, key: &str) -> Option<&str> {
        match self.get(key)? {
            Entry::Field { value, .. } => Some(value),
            Entry::Block { .. } => None,
        }
    }

    pub fn lines(&self, key: &str) -> Option<&[String]> {
        match self.get(key)? {
            Entry::Block { lines, .. } => Some(lines),
            Entry::Field { .. } => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("realizable", Outcome::Negative, "certified not realizable");
        r.field("chi", 3).block("witnesses", "s_3χ=3 > bound=1\nface {a, b} has multiset {4, 6}\n");
        r.block("notes", "");
        r
    }

    #[test]
    fn text_and_json_round_trip() {
        let r = sample();
        assert_eq!(Report::from_text(&r.to_text()).unwrap(), r);
        assert_eq!(Report::from_json(&r.render(Format::Json)).unwrap(), r);
    }

    #[test]
    fn exit_codes_follow_outcome() {
        assert_eq!(sample().exit_code(), 1);
        assert_eq!(Report::new("x", Outcome::Inconclusive, "").exit_code(), 4);
    }
}
