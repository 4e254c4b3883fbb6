//! Dual-format reports (human-readable text followed by a JSON section) and
//! run manifests recording how an output was produced.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::rng::GENERATOR;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const JSON_MARKER: &str = "--- json ---";

/// Real number with 12 significant digits, trailing zeros trimmed.
pub fn fmt_real(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x.is_infinite() {
            if x > 0.0 { "inf".into() } else { "-inf".into() }
        } else {
            "0".into()
        };
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&magnitude) {
        return format!("{x:.11e}");
    }
    let decimals = (11 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub title: String,
    pub lines: Vec<String>,
    pub data: Value,
}

impl Report {
    pub fn new(title: impl Into<String>, data: Value) -> Self {
        Report {
            title: title.into(),
            lines: Vec::new(),
            data,
        }
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.lines.push(s.into());
        self
    }

    pub fn field(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        self.lines.push(format!("{key:<22} {value}"));
        self
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.title);
        out.push('\n');
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out.push_str(JSON_MARKER);
        out.push('\n');
        out.push_str(&serde_json::to_string_pretty(&self.data).expect("report data serializes"));
        out.push('\n');
        out
    }
}

/// The JSON section of a rendered report.
pub fn parse_json_section(text: &str) -> Option<Value> {
    let at = text.find(&format!("\n{JSON_MARKER}\n"))?;
    serde_json::from_str(&text[at + JSON_MARKER.len() + 2..]).ok()
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    /// File name without directories, so manifests do not depend on where a
    /// run wrote its outputs.
    pub name: String,
    pub sha256: String,
}

impl FileDigest {
    pub fn new(path: &std::path::Path, bytes: &[u8]) -> Self {
        FileDigest {
            name: path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default(),
            sha256: sha256_hex(bytes),
        }
    }
}

/// Everything needed to reproduce an output byte-for-byte. The worker count
/// is deliberately absent: results do not depend on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub generator: String,
    pub command: String,
    pub params: Value,
    pub seed: u64,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
}

impl RunManifest {
    pub fn new(command: impl Into<String>, params: Value, seed: u64) -> Self {
        RunManifest {
            tool: "unex".into(),
            version: VERSION.into(),
            generator: GENERATOR.into(),
            command: command.into(),
            params,
            seed,
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_formatting() {
        assert_eq!(fmt_real(3.0), "3");
        assert_eq!(fmt_real(-2.0000000000000004), "-2");
        assert_eq!(fmt_real(2.414213562373095), "2.41421356237");
        assert_eq!(fmt_real(1e-13), "1.00000000000e-13");
        assert_eq!(fmt_real(-0.0), "0");
        assert_eq!(fmt_real(0.125), "0.125");
    }

    #[test]
    fn render_and_parse() {
        let mut r = Report::new("check", serde_json::json!({"status": "certified", "n": 3}));
        r.field("status", "certified");
        let text = r.render();
        assert!(text.starts_with("check\nstatus"));
        assert_eq!(parse_json_section(&text).unwrap()["n"], 3);
    }

    #[test]
    fn digest() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
