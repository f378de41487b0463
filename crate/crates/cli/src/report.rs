//! Deterministic text and JSON rendering of command results.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub enum Field {
    Text(String),
    Lines(Vec<String>),
}

/// One command result. Certificate commands fill `fields`; commands that
/// produce a file put it in `document` and their fields become `#` comments,
/// so the output can be fed back as input.
pub struct Report {
    command: String,
    digests: Vec<(&'static str, String)>,
    fields: Vec<(&'static str, Field)>,
    document: Option<String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Report {
    pub fn new(command: String) -> Self {
        Report {
            command,
            digests: Vec::new(),
            fields: Vec::new(),
            document: None,
        }
    }

    pub fn digest(&mut self, label: &'static str, bytes: &[u8]) -> &mut Self {
        self.digests.push((label, sha256_hex(bytes)));
        self
    }

    pub fn text(&mut self, key: &'static str, value: impl ToString) -> &mut Self {
        self.fields.push((key, Field::Text(value.to_string())));
        self
    }

    pub fn lines(&mut self, key: &'static str, lines: Vec<String>) -> &mut Self {
        self.fields.push((key, Field::Lines(lines)));
        self
    }

    pub fn document(&mut self, text: String) -> &mut Self {
        self.document = Some(text);
        self
    }

    /// Fields with `OUTCOME` moved to the front.
    fn ordered(&self) -> impl Iterator<Item = &(&'static str, Field)> {
        let (first, rest): (Vec<_>, Vec<_>) =
            self.fields.iter().partition(|(k, _)| *k == "OUTCOME");
        first.into_iter().chain(rest)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("# command: {}\n", self.command);
        for (label, hex) in &self.digests {
            out.push_str(&format!("# {label}-sha256: {hex}\n"));
        }
        let prefix = if self.document.is_some() { "# " } else { "" };
        for (key, field) in self.ordered() {
            match field {
                Field::Text(v) => out.push_str(&format!("{prefix}{key} {v}\n")),
                Field::Lines(lines) => {
                    out.push_str(&format!("{prefix}{key} {}\n", lines.len()));
                    for line in lines {
                        out.push_str(&format!("{prefix}{line}\n"));
                    }
                }
            }
        }
        if let Some(doc) = &self.document {
            out.push_str(doc);
        }
        while out.ends_with("\n\n") {
            out.pop();
        }
        if !out.ends_with('\n') {
            out.push('\n');
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut map = Map::new();
        map.insert("command".into(), json!(self.command));
        for (label, hex) in &self.digests {
            map.insert(format!("{label}_sha256"), json!(hex));
        }
        for (key, field) in &self.fields {
            let value = match field {
                Field::Text(v) => json!(v),
                Field::Lines(lines) => json!(lines),
            };
            map.insert(key.to_lowercase(), value);
        }
        if let Some(doc) = &self.document {
            let lines: Vec<&str> = doc.lines().collect();
            map.insert("document".into(), json!(lines));
        }
        let mut out =
            serde_json::to_string_pretty(&Value::Object(map)).expect("JSON values serialize");
        out.push('\n');
        out
    }
}
