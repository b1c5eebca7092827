//! Flat `key = value` configuration documents with `[section]` headers.
//! Unknown sections or keys are rejected so that typos fail loudly.

use biphoton::entanglement::ImperfectionModel;
use std::collections::BTreeSet;
use std::fmt::Write as _;

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub section: String,
    pub key: String,
    pub value: String,
    pub line: usize,
}

/// Parse a `[section]` / `key = value` document. Blank lines and lines
/// starting with `#` are ignored.
pub fn parse(text: &str) -> Result<Vec<Entry>, ConfigError> {
    let mut entries = Vec::new();
    let mut section = String::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| ConfigError(format!("line {}: unterminated section", idx + 1)))?;
            section = name.trim().to_string();
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| ConfigError(format!("line {}: expected key = value", idx + 1)))?;
        if section.is_empty() {
            return Err(ConfigError(format!(
                "line {}: key {} appears before any [section]",
                idx + 1,
                key.trim()
            )));
        }
        entries.push(Entry {
            section: section.clone(),
            key: key.trim().to_string(),
            value: value.trim().to_string(),
            line: idx + 1,
        });
    }
    Ok(entries)
}

/// Typed accessor over parsed entries that tracks which keys were consumed
/// and rejects leftovers.
pub struct Document {
    entries: Vec<Entry>,
    consumed: BTreeSet<usize>,
}

impl Document {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        Ok(Self {
            entries: parse(text)?,
            consumed: BTreeSet::new(),
        })
    }

    pub fn get(&mut self, section: &str, key: &str) -> Option<String> {
        for (i, e) in self.entries.iter().enumerate() {
            if e.section == section && e.key == key {
                self.consumed.insert(i);
                return Some(e.value.clone());
            }
        }
        None
    }

    pub fn get_f64(&mut self, section: &str, key: &str) -> Result<Option<f64>, ConfigError> {
        match self.get(section, key) {
            None => Ok(None),
            Some(v) => v
                .parse::<f64>()
                .map(Some)
                .map_err(|_| ConfigError(format!("{section}.{key}: bad number {v:?}"))),
        }
    }

    pub fn get_u64(&mut self, section: &str, key: &str) -> Result<Option<u64>, ConfigError> {
        match self.get(section, key) {
            None => Ok(None),
            Some(v) => v
                .parse::<u64>()
                .map(Some)
                .map_err(|_| ConfigError(format!("{section}.{key}: bad integer {v:?}"))),
        }
    }

    /// Error out on any entry that was never consumed.
    pub fn reject_unknown(&self) -> Result<(), ConfigError> {
        let unknown: Vec<String> = self
            .entries
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.consumed.contains(i))
            .map(|(_, e)| format!("{}.{} (line {})", e.section, e.key, e.line))
            .collect();
        if unknown.is_empty() {
            Ok(())
        } else {
            Err(ConfigError(format!(
                "unknown configuration keys: {}",
                unknown.join(", ")
            )))
        }
    }
}

/// Read an imperfection model from its config-file form.
pub fn imperfections_from_str(text: &str) -> Result<ImperfectionModel, ConfigError> {
    let mut doc = Document::parse(text)?;
    let section = "imperfections";
    let mut model = ImperfectionModel::ideal();
    if let Some(v) = doc.get_f64(section, "accidental_fraction")? {
        model.accidental_fraction = v;
    }
    model.accidental_rate = doc.get_f64(section, "accidental_rate")?;
    model.pair_rate = doc.get_f64(section, "pair_rate")?;
    if let Some(v) = doc.get_f64(section, "split_transmission")? {
        model.split_transmission = v;
    }
    if let Some(v) = doc.get_f64(section, "basis_error_a")? {
        model.basis_error_a = v;
    }
    if let Some(v) = doc.get_f64(section, "basis_error_b")? {
        model.basis_error_b = v;
    }
    doc.reject_unknown()?;
    model
        .validate()
        .map_err(|e| ConfigError(format!("invalid imperfections: {e}")))?;
    Ok(model)
}

/// Config-file form of an imperfection model.
pub fn imperfections_to_string(model: &ImperfectionModel) -> String {
    let mut out = String::from("[imperfections]\n");
    let _ = writeln!(out, "accidental_fraction = {}", model.accidental_fraction);
    if let Some(r) = model.accidental_rate {
        let _ = writeln!(out, "accidental_rate = {r}");
    }
    if let Some(r) = model.pair_rate {
        let _ = writeln!(out, "pair_rate = {r}");
    }
    let _ = writeln!(out, "split_transmission = {}", model.split_transmission);
    let _ = writeln!(out, "basis_error_a = {}", model.basis_error_a);
    let _ = writeln!(out, "basis_error_b = {}", model.basis_error_b);
    out
}
