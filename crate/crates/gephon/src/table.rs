//! Numeric result tables and their CSV form.
//!
//! Values are quantized to 9 significant digits when pushed, so the text
//! form is exact: parsing an emitted table yields an identical table.

use std::fmt::Write as _;

pub const SIGNIFICANT_DIGITS: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config_hash: String,
}

impl Provenance {
    pub fn new(command: &str, config_hash: &str) -> Self {
        Self {
            tool: "gephon".to_owned(),
            version: env!("CARGO_PKG_VERSION").to_owned(),
            command: command.to_owned(),
            config_hash: config_hash.to_owned(),
        }
    }

    fn line(&self) -> String {
        format!("# tool={} version={} command={} config_sha256={}", self.tool, self.version, self.command, self.config_hash)
    }

    fn parse(line: &str) -> Result<Self, TableError> {
        let body = line.strip_prefix("# ").ok_or(TableError::MissingProvenance)?;
        let mut fields = [None, None, None, None];
        for part in body.split(' ') {
            let (k, v) = part.split_once('=').ok_or(TableError::MissingProvenance)?;
            let slot = match k {
                "tool" => 0,
                "version" => 1,
                "command" => 2,
                "config_sha256" => 3,
                _ => return Err(TableError::MissingProvenance),
            };
            fields[slot] = Some(v.to_owned());
        }
        let [Some(tool), Some(version), Some(command), Some(config_hash)] = fields else {
            return Err(TableError::MissingProvenance);
        };
        Ok(Self { tool, version, command, config_hash })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TableError {
    #[error("row has {got} fields, header has {expected}")]
    RowLength { expected: usize, got: usize },
    #[error("unknown column `{0}`")]
    UnknownColumn(String),
    #[error("first line must be a `# tool=... config_sha256=...` provenance comment")]
    MissingProvenance,
    #[error("missing header row")]
    MissingHeader,
    #[error("line {line}: cannot parse `{field}` as a number")]
    BadNumber { line: usize, field: String },
    #[error("column name `{0}` must be non-empty and free of commas, quotes and whitespace")]
    BadColumnName(String),
}

/// Rounds to [`SIGNIFICANT_DIGITS`]; non-finite values pass through.
pub fn quantize(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Shortest text that parses back to `x`; exponent form outside
/// [1e-4, 1e9).
pub fn format_value(x: f64) -> String {
    let a = x.abs();
    if x != 0.0 && a.is_finite() && !(1e-4..1e9).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub provenance: Provenance,
}

impl PartialEq for SweepResult {
    /// Bitwise comparison, so NaN markers compare equal to themselves.
    fn eq(&self, other: &Self) -> bool {
        self.header == other.header
            && self.provenance == other.provenance
            && self.rows.len() == other.rows.len()
            && self.rows.iter().zip(&other.rows).all(|(a, b)| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits()))
    }
}

impl SweepResult {
    pub fn new<S: AsRef<str>>(header: &[S], provenance: Provenance) -> Result<Self, TableError> {
        let header: Vec<String> = header.iter().map(|s| s.as_ref().to_owned()).collect();
        if let Some(bad) = header.iter().find(|h| h.is_empty() || h.contains([',', '"', '#']) || h.contains(char::is_whitespace)) {
            return Err(TableError::BadColumnName(bad.clone()));
        }
        Ok(Self { header, rows: Vec::new(), provenance })
    }

    pub fn push(&mut self, row: &[f64]) -> Result<(), TableError> {
        if row.len() != self.header.len() {
            return Err(TableError::RowLength { expected: self.header.len(), got: row.len() });
        }
        self.rows.push(row.iter().map(|x| quantize(*x)).collect());
        Ok(())
    }

    pub fn column_index(&self, name: &str) -> Result<usize, TableError> {
        self.header.iter().position(|h| h == name).ok_or_else(|| TableError::UnknownColumn(name.to_owned()))
    }

    pub fn column(&self, name: &str) -> Result<Vec<f64>, TableError> {
        let i = self.column_index(name)?;
        Ok(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.provenance.line());
        let _ = writeln!(out, "{}", self.header.join(","));
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(|x| format_value(*x)).collect();
            let _ = writeln!(out, "{}", fields.join(","));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, TableError> {
        let mut lines = text.lines().enumerate();
        let (_, first) = lines.next().ok_or(TableError::MissingProvenance)?;
        let provenance = Provenance::parse(first)?;
        let (_, header) = lines.next().ok_or(TableError::MissingHeader)?;
        let header: Vec<&str> = header.split(',').collect();
        let mut result = Self::new(&header, provenance)?;
        for (idx, line) in lines {
            let mut row = Vec::with_capacity(header.len());
            for field in line.split(',') {
                let x: f64 = field.parse().map_err(|_| TableError::BadNumber { line: idx + 1, field: field.to_owned() })?;
                row.push(x);
            }
            if row.len() != result.header.len() {
                return Err(TableError::RowLength { expected: result.header.len(), got: row.len() });
            }
            result.rows.push(row);
        }
        Ok(result)
    }
}
