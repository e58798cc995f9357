//! State files, family sweeps and plain-text output.
//!
//! A state file is JSON:
//!
//! ```json
//! { "dim": 4, "label": "optional", "matrix": [[[re, im], ...], ...] }
//! ```

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::discord::discord3;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, DensityMatrix, C64};
use crate::monogamy::{pairwise_discord_12, pairwise_discord_13};
use crate::par::map_range;
use crate::xstate::{Family, FamilyParam};

/// Significant digits written to CSV.
pub const CSV_DIGITS: usize = 12;

/// `x` rounded to `digits` significant digits, printed in the shortest form
/// that reads back to the rounded value.
pub fn format_sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let rounded: f64 = format!("{:.*e}", digits - 1, x).parse().unwrap_or(x);
    let a = rounded.abs();
    if (1e-5..1e16).contains(&a) {
        rounded.to_string()
    } else {
        format!("{rounded:e}")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl StateFile {
    pub fn from_matrix(m: &ComplexMatrix, label: Option<String>) -> Self {
        let dim = m.dim();
        let matrix = (0..dim).map(|r| (0..dim).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect()).collect();
        Self { dim, label, matrix }
    }

    pub fn from_state(rho: &DensityMatrix, label: Option<String>) -> Self {
        Self::from_matrix(rho.matrix(), label)
    }

    /// The raw matrix, checked only for shape.
    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        if self.matrix.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: self.matrix.len() });
        }
        let mut data = Vec::with_capacity(self.dim * self.dim);
        for row in &self.matrix {
            if row.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: row.len() });
            }
            data.extend(row.iter().map(|&[re, im]| C64::new(re, im)));
        }
        ComplexMatrix::from_row_major(data)
    }

    pub fn to_state(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.to_matrix()?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("state file serialises");
        s.push('\n');
        s
    }
}

impl FromStr for StateFile {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}

pub fn parse_state(text: &str) -> Result<DensityMatrix> {
    text.parse::<StateFile>()?.to_state()
}

pub fn load_state_file(path: impl AsRef<Path>) -> Result<StateFile> {
    fs::read_to_string(path)?.parse()
}

pub fn load_state(path: impl AsRef<Path>) -> Result<DensityMatrix> {
    load_state_file(path)?.to_state()
}

pub fn write_state(path: impl AsRef<Path>, rho: &DensityMatrix, label: Option<String>) -> Result<()> {
    fs::write(path, StateFile::from_state(rho, label).to_json())?;
    Ok(())
}

/// Quantities a sweep can tabulate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Column {
    Discord123,
    D12,
    D13,
    Residual,
    K1,
    K2,
    K3,
}

impl Column {
    pub const ALL: [Column; 7] =
        [Column::Discord123, Column::D12, Column::D13, Column::Residual, Column::K1, Column::K2, Column::K3];

    pub fn name(self) -> &'static str {
        match self {
            Column::Discord123 => "discord_1_23",
            Column::D12 => "d12",
            Column::D13 => "d13",
            Column::Residual => "residual",
            Column::K1 => "k1",
            Column::K2 => "k2",
            Column::K3 => "k3",
        }
    }
}

impl FromStr for Column {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Column::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown column `{s}`")))
    }
}

/// One-parameter sweep along a family. For the Bell family the swept
/// coefficient is one of `c1`, `c2`, `c3` and the others are held at the
/// values in `base`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub base: FamilyParam,
    pub parameter: String,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub outputs: Vec<Column>,
}

impl SweepSpec {
    pub fn new(
        base: FamilyParam,
        parameter: &str,
        from: f64,
        to: f64,
        steps: usize,
        outputs: Vec<Column>,
    ) -> Result<Self> {
        let allowed: &[&str] = match base.family() {
            Family::Ghz | Family::W => &["p"],
            Family::Bell => &["c1", "c2", "c3"],
        };
        if !allowed.contains(&parameter) {
            return Err(Error::Parameter(format!(
                "family {} has no parameter `{parameter}` (expected one of {})",
                base.family(),
                allowed.join(", ")
            )));
        }
        if from.is_nan() || to.is_nan() || from > to {
            return Err(Error::Parameter(format!("sweep range {from} > {to}")));
        }
        if steps < 2 {
            return Err(Error::Parameter(format!("sweep needs at least 2 steps, got {steps}")));
        }
        if outputs.is_empty() {
            return Err(Error::Parameter("sweep needs at least one output column".into()));
        }
        Ok(Self { base, parameter: parameter.to_string(), from, to, steps, outputs })
    }

    pub fn value(&self, k: usize) -> f64 {
        if k + 1 == self.steps {
            return self.to;
        }
        self.from + (self.to - self.from) * k as f64 / (self.steps - 1) as f64
    }

    pub fn member(&self, x: f64) -> FamilyParam {
        match (self.base, self.parameter.as_str()) {
            (FamilyParam::Ghz { .. }, _) => FamilyParam::Ghz { p: x },
            (FamilyParam::W { .. }, _) => FamilyParam::W { p: x },
            (FamilyParam::Bell { c2, c3, .. }, "c1") => FamilyParam::Bell { c1: x, c2, c3 },
            (FamilyParam::Bell { c1, c3, .. }, "c2") => FamilyParam::Bell { c1, c2: x, c3 },
            (FamilyParam::Bell { c1, c2, .. }, _) => FamilyParam::Bell { c1, c2, c3: x },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

fn sweep_row(spec: &SweepSpec, x: f64) -> Result<Vec<f64>> {
    let rho = spec.member(x).state()?;
    let d = discord3(&rho)?;
    let needs_pairs = spec.outputs.iter().any(|c| matches!(c, Column::D12 | Column::D13 | Column::Residual));
    let (d12, d13) = if needs_pairs {
        (pairwise_discord_12(&rho)?, pairwise_discord_13(&rho)?)
    } else {
        (0.0, 0.0)
    };
    let mut row = vec![x];
    row.extend(spec.outputs.iter().map(|c| match c {
        Column::Discord123 => d.value,
        Column::D12 => d12,
        Column::D13 => d13,
        Column::Residual => d.value - d12 - d13,
        Column::K1 => d.k1,
        Column::K2 => d.k2,
        Column::K3 => d.k3,
    }));
    Ok(row)
}

/// Evaluates every row; rows come back in parameter order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Table> {
    let rows = map_range(spec.steps, |k| sweep_row(spec, spec.value(k)));
    let mut header = vec![spec.parameter.clone()];
    header.extend(spec.outputs.iter().map(|c| c.name().to_string()));
    Ok(Table { header, rows: rows.into_iter().collect::<Result<_>>()? })
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    Error::Parse { line, column: 0, message: e.to_string() }
}

pub fn write_csv(out: impl Write, table: &Table) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&table.header).map_err(csv_error)?;
    for row in &table.rows {
        w.write_record(row.iter().map(|&v| format_sig(v, CSV_DIGITS))).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn table_to_csv(table: &Table) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, table).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

pub fn read_csv(text: &str) -> Result<Table> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().map_err(csv_error)?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(csv_error)?;
        let row = rec
            .iter()
            .enumerate()
            .map(|(j, field)| {
                field.parse::<f64>().map_err(|e| Error::Parse {
                    line: i + 2,
                    column: j + 1,
                    message: format!("`{field}`: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(Table { header, rows })
}

/// Flat key/value output of a command.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Record {
    fields: Vec<(String, String)>,
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn num(&mut self, key: &str, value: f64) -> &mut Self {
        self.push(key, format_sig(value, CSV_DIGITS))
    }

    pub fn vec3(&mut self, key: &str, v: &[f64; 3]) -> &mut Self {
        let parts: Vec<String> = v.iter().map(|&x| format_sig(x, CSV_DIGITS)).collect();
        self.push(key, parts.join(","))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn fields(&self) -> &[(String, String)] {
        &self.fields
    }

    /// `key=value` lines.
    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.fields {
            let _ = writeln!(s, "{k}={v}");
        }
        s
    }

    /// Keys padded to a common width.
    pub fn to_aligned(&self) -> String {
        let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut s = String::new();
        for (k, v) in &self.fields {
            let _ = writeln!(s, "{k:<width$}  {v}");
        }
        s
    }
}

pub fn parse_kv(text: &str) -> Record {
    let mut rec = Record::new();
    for line in text.lines() {
        if let Some((k, v)) = line.split_once('=') {
            rec.push(k.trim(), v.trim());
        }
    }
    rec
}
