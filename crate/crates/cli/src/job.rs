//! Job specifications and the two file formats that produce them.
//!
//! The text format is one `key: value` pair per line. Values are atoms or bracketed,
//! comma-separated lists that may nest:
//!
//! ```text
//! file   := (line '\n')*
//! line   := blank | '#' comment | key ':' value
//! value  := list | atom
//! list   := '[' (value (',' value)*)? ']'
//! atom   := any text without ',' '[' ']', trimmed
//! ```
//!
//! `true`/`false` and integer atoms become booleans and numbers; everything else is a
//! string. The keys `seed`, `retries` and `field_prescreen` go into `options`, and a key
//! `expect.<path>` adds an expected output value, `<path>` being dot-separated object
//! keys and array indices (`expect.values.0.mu: 2`). A file
//! whose first non-blank character is `{` is read as JSON with the same field names.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize};
use serde_json::{Map, Number, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Milnor,
    Chi,
    Csm,
    LimitCycle,
    Lagrangian,
    Conormal,
    CheckNbl,
    MuTotal,
    VerifyEuler,
    Segre,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Milnor => "milnor",
            Command::Chi => "chi",
            Command::Csm => "csm",
            Command::LimitCycle => "limit-cycle",
            Command::Lagrangian => "lagrangian",
            Command::Conormal => "conormal",
            Command::CheckNbl => "check-nbl",
            Command::MuTotal => "mu-total",
            Command::VerifyEuler => "verify-euler",
            Command::Segre => "segre",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default = "default_retries")]
    pub retries: u32,
    #[serde(default)]
    pub field_prescreen: bool,
}

fn default_retries() -> u32 {
    3
}

impl Default for JobOptions {
    fn default() -> Self {
        JobOptions { seed: None, retries: default_retries(), field_prescreen: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    #[serde(deserialize_with = "strings")]
    pub ring: Vec<String>,
    #[serde(default, deserialize_with = "strings", skip_serializing_if = "Vec::is_empty")]
    pub map: Vec<String>,
    #[serde(default, deserialize_with = "string_rows", skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<Vec<String>>,
    /// `segre`: generators of the ambient cycle `B`.
    #[serde(default, deserialize_with = "strings", skip_serializing_if = "Vec::is_empty")]
    pub ideal: Vec<String>,
    /// `segre`: forms cutting `A = B ∩ V(cut)`; when empty the fibre over `points[0]` is used.
    #[serde(default, deserialize_with = "strings", skip_serializing_if = "Vec::is_empty")]
    pub cut: Vec<String>,
    /// `segre`: number of leading affine variables in `ring`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub affine: Option<usize>,
    /// `check-nbl`: target values at which the fibre dimension is checked.
    #[serde(default, deserialize_with = "string_rows", skip_serializing_if = "Vec::is_empty")]
    pub samples: Vec<Vec<String>>,
    /// Allows `μ` for maps with `n ≥ 2`.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub experimental: bool,
    #[serde(default)]
    pub options: JobOptions,
    /// Expected output values by path; a mismatch makes the job fail.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expect: BTreeMap<String, Value>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Atom {
    Text(String),
    Int(i64),
}

impl Atom {
    fn into_string(self) -> String {
        match self {
            Atom::Text(s) => s,
            Atom::Int(i) => i.to_string(),
        }
    }
}

fn strings<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<String>, D::Error> {
    Ok(Vec::<Atom>::deserialize(d)?.into_iter().map(Atom::into_string).collect())
}

fn string_rows<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<String>>, D::Error> {
    Ok(Vec::<Vec<Atom>>::deserialize(d)?
        .into_iter()
        .map(|r| r.into_iter().map(Atom::into_string).collect())
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobError(pub String);

impl std::fmt::Display for JobError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for JobError {}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn value(&mut self) -> Result<Value, String> {
        self.skip_ws();
        if self.s.get(self.pos) != Some(&b'[') {
            let start = self.pos;
            while self.pos < self.s.len() && !matches!(self.s[self.pos], b',' | b'[' | b']') {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap().trim();
            return Ok(atom(text));
        }
        self.pos += 1;
        let mut items = Vec::new();
        self.skip_ws();
        if self.s.get(self.pos) == Some(&b']') {
            self.pos += 1;
            return Ok(Value::Array(items));
        }
        loop {
            items.push(self.value()?);
            self.skip_ws();
            match self.s.get(self.pos) {
                Some(b',') => self.pos += 1,
                Some(b']') => {
                    self.pos += 1;
                    return Ok(Value::Array(items));
                }
                _ => return Err(format!("expected ',' or ']' at column {}", self.pos + 1)),
            }
        }
    }
}

fn atom(text: &str) -> Value {
    match text {
        "true" => Value::Bool(true),
        "false" => Value::Bool(false),
        _ => {
            if let Ok(u) = text.parse::<u64>() {
                Value::Number(Number::from(u))
            } else if let Ok(i) = text.parse::<i64>() {
                Value::Number(Number::from(i))
            } else {
                Value::String(text.to_string())
            }
        }
    }
}

fn parse_value(text: &str) -> Result<Value, String> {
    let mut c = Cursor { s: text.as_bytes(), pos: 0 };
    let v = c.value()?;
    c.skip_ws();
    if c.pos != c.s.len() {
        return Err(format!("trailing text at column {}", c.pos + 1));
    }
    Ok(v)
}

/// Reads the line-oriented format into the JSON shape of [`JobSpec`].
pub fn text_to_json(text: &str) -> Result<Value, JobError> {
    let mut top = Map::new();
    let mut options = Map::new();
    let mut expect = Map::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| JobError(format!("line {}: {msg}", no + 1));
        let (key, rest) = line.split_once(':').ok_or_else(|| err("expected `key: value`".into()))?;
        let key = key.trim();
        let value = parse_value(rest).map_err(err)?;
        let (slot, key) = match key.strip_prefix("expect.") {
            Some(path) => (&mut expect, path),
            None if matches!(key, "seed" | "retries" | "field_prescreen") => (&mut options, key),
            None => (&mut top, key),
        };
        if slot.insert(key.to_string(), value).is_some() {
            return Err(err(format!("duplicate key `{key}`")));
        }
    }
    if !options.is_empty() {
        top.insert("options".into(), Value::Object(options));
    }
    if !expect.is_empty() {
        top.insert("expect".into(), Value::Object(expect));
    }
    Ok(Value::Object(top))
}

/// Parses a job file in either format.
pub fn parse_job(text: &str) -> Result<JobSpec, JobError> {
    let value = if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| JobError(format!("json: {e}")))?
    } else {
        text_to_json(text)?
    };
    let job: JobSpec = serde_json::from_value(value).map_err(|e| JobError(e.to_string()))?;
    job.validate()?;
    Ok(job)
}

impl JobSpec {
    /// Checks command-specific required fields; polynomials are checked when run.
    pub fn validate(&self) -> Result<(), JobError> {
        let need = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(JobError(format!("{}: {what}", self.command.name())))
            }
        };
        need(!self.ring.is_empty(), "ring must not be empty")?;
        match self.command {
            Command::Segre => {
                need(self.affine.is_some(), "`affine` is required")?;
                need(!self.cut.is_empty() || self.points.len() == 1, "give `cut` or exactly one point")
            }
            Command::Milnor | Command::Chi | Command::VerifyEuler => {
                need(!self.map.is_empty(), "`map` is required")?;
                need(!self.points.is_empty(), "`points` is required")
            }
            Command::Csm | Command::LimitCycle | Command::Lagrangian => need(self.map.len() == 1, "`map` takes one polynomial"),
            Command::Conormal | Command::CheckNbl | Command::MuTotal => need(!self.map.is_empty(), "`map` is required"),
        }
    }

    /// Seed used when none is given: the first eight bytes of the SHA-256 of the job
    /// with its seed removed.
    pub fn default_seed(&self) -> u64 {
        let mut canon = self.clone();
        canon.options.seed = None;
        let bytes = serde_json::to_vec(&canon).expect("job serialises");
        let digest = Sha256::digest(&bytes);
        u64::from_le_bytes(digest[..8].try_into().unwrap())
    }

    pub fn seed(&self) -> u64 {
        self.options.seed.unwrap_or_else(|| self.default_seed())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_agree() {
        let text = "# node\ncommand: verify-euler\nring: [x, y]\nmap: [x*y]\npoints: [[0, 0], [1/2, -1]]\nseed: 9\n";
        let json = r#"{"command": "verify-euler", "ring": ["x", "y"], "map": ["x*y"],
                       "points": [[0, 0], ["1/2", -1]], "options": {"seed": 9}}"#;
        let a = parse_job(text).unwrap();
        assert_eq!(a, parse_job(json).unwrap());
        assert_eq!(a.points[1], vec!["1/2".to_string(), "-1".to_string()]);
        assert_eq!(a.options.retries, 3);
    }

    #[test]
    fn expectations() {
        let j = parse_job("command: milnor\nring: [x, y]\nmap: [x^3 + y^2]\npoints: [[0, 0]]\nexpect.values.0.mu: 2\n").unwrap();
        assert_eq!(j.expect.get("values.0.mu"), Some(&Value::from(2)));
    }

    #[test]
    fn malformed_files() {
        assert!(parse_job("command milnor").is_err());
        assert!(parse_job("command: milnor\nring: [x\n").is_err());
        assert!(parse_job("command: milnor\ncommand: chi\nring: [x]").is_err());
        assert!(parse_job("command: frobnicate\nring: [x]").is_err());
        assert!(parse_job("command: milnor\nring: [x]\nmap: [x^2]").is_err());
        assert!(parse_job("command: csm\nring: [x, y]\nmap: [x]\ncolour: red").is_err());
    }

    #[test]
    fn default_seed_ignores_the_seed_field() {
        let a = parse_job("command: csm\nring: [x, y, z]\nmap: [x*y - z^2]").unwrap();
        let mut b = a.clone();
        b.options.seed = Some(1);
        assert_eq!(a.default_seed(), b.default_seed());
        assert_eq!(b.seed(), 1);
        let c = parse_job("command: csm\nring: [x, y, z]\nmap: [x*y + z^2]").unwrap();
        assert_ne!(a.default_seed(), c.default_seed());
    }
}
