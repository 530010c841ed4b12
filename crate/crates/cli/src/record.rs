//! Per-state CSV rows and the commented header that precedes them.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use monocone::{Family, Party};

use crate::error::{CliError, Result};

/// Bumped whenever a column is added, removed or reordered.
pub const SCHEMA_VERSION: u32 = 1;

pub const COLUMNS: [&str; 13] = [
    "state_id",
    "family",
    "seed",
    "stream",
    "delta_c",
    "delta_d_node_a",
    "delta_d_node_b",
    "delta_d_node_c",
    "delta_d_max_schmidt",
    "ggm",
    "max_schmidt_party",
    "theorem1_margin",
    "theorem2_margin",
];

/// One sampled state. Discord quantities are in bits.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureRecord {
    pub state_id: u64,
    pub family: Family,
    pub seed: u64,
    pub stream: u64,
    pub delta_c: f64,
    pub delta_d_node_a: f64,
    pub delta_d_node_b: f64,
    pub delta_d_node_c: f64,
    pub delta_d_max_schmidt: f64,
    pub ggm: f64,
    pub max_schmidt_party: Party,
    pub theorem1_margin: f64,
    pub theorem2_margin: f64,
}

/// Seventeen significant digits, enough to round-trip any f64.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

impl MeasureRecord {
    pub fn delta_d(&self, node: Party) -> f64 {
        match node {
            Party::A => self.delta_d_node_a,
            Party::B => self.delta_d_node_b,
            Party::C => self.delta_d_node_c,
        }
    }

    pub fn fields(&self) -> [String; 13] {
        [
            self.state_id.to_string(),
            self.family.to_string(),
            self.seed.to_string(),
            self.stream.to_string(),
            format_float(self.delta_c),
            format_float(self.delta_d_node_a),
            format_float(self.delta_d_node_b),
            format_float(self.delta_d_node_c),
            format_float(self.delta_d_max_schmidt),
            format_float(self.ggm),
            self.max_schmidt_party.to_string(),
            format_float(self.theorem1_margin),
            format_float(self.theorem2_margin),
        ]
    }

    pub fn from_fields(row: &csv::StringRecord) -> Result<Self> {
        if row.len() != COLUMNS.len() {
            return Err(CliError::Record(format!("expected {} fields, found {}", COLUMNS.len(), row.len())));
        }
        let int = |i: usize| parse::<u64>(&row[i], COLUMNS[i]);
        let real = |i: usize| -> Result<f64> {
            let x = parse::<f64>(&row[i], COLUMNS[i])?;
            if !x.is_finite() {
                return Err(CliError::Record(format!("{} is not finite", COLUMNS[i])));
            }
            Ok(x)
        };
        Ok(MeasureRecord {
            state_id: int(0)?,
            family: row[1].parse().map_err(CliError::Record)?,
            seed: int(2)?,
            stream: int(3)?,
            delta_c: real(4)?,
            delta_d_node_a: real(5)?,
            delta_d_node_b: real(6)?,
            delta_d_node_c: real(7)?,
            delta_d_max_schmidt: real(8)?,
            ggm: real(9)?,
            max_schmidt_party: parse(&row[10], COLUMNS[10])?,
            theorem1_margin: real(11)?,
            theorem2_margin: real(12)?,
        })
    }
}

fn parse<T: FromStr>(s: &str, column: &str) -> Result<T> {
    s.trim().parse().map_err(|_| CliError::Record(format!("bad value `{s}` in column {column}")))
}

/// Provenance written as `#` comment lines ahead of the column header.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordHeader {
    pub seed: u64,
    pub rng: String,
    pub tol_tangle: f64,
    pub tol_discord: f64,
    pub measure: String,
    pub families: Vec<Family>,
}

impl RecordHeader {
    pub fn lines(&self) -> Vec<String> {
        let families: Vec<&str> = self.families.iter().map(|f| f.as_str()).collect();
        vec![
            format!("# monocone measure records, schema v{SCHEMA_VERSION}"),
            format!("# tool_version: {}", env!("CARGO_PKG_VERSION")),
            format!("# seed: {}", self.seed),
            format!("# rng: {}", self.rng),
            format!("# families: {}", families.join(",")),
            format!("# tol_tangle: {:e}", self.tol_tangle),
            format!("# tol_discord: {:e}", self.tol_discord),
            format!("# measure: {}", self.measure),
        ]
    }
}

/// Writes the comment header, the column row and all records.
pub fn write_records<W: Write>(mut out: W, header: &RecordHeader, records: &[MeasureRecord]) -> Result<()> {
    for line in header.lines() {
        writeln!(out, "{line}").map_err(csv::Error::from)?;
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for r in records {
        w.write_record(r.fields())?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Reads records written by [`write_records`], skipping comment lines. The
/// column row must match [`COLUMNS`] exactly.
pub fn read_records<R: BufRead>(input: R) -> Result<Vec<MeasureRecord>> {
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input);
    let headers = r.headers()?.clone();
    if headers.iter().ne(COLUMNS.iter().copied()) {
        return Err(CliError::Record(format!("unexpected columns: {}", headers.iter().collect::<Vec<_>>().join(","))));
    }
    r.records().map(|row| MeasureRecord::from_fields(&row?)).collect()
}

/// Node used for plotted discord scores.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeChoice {
    Fixed(Party),
    MaxSchmidt,
}

impl NodeChoice {
    pub fn resolve(self, max_schmidt: Party) -> Party {
        match self {
            NodeChoice::Fixed(p) => p,
            NodeChoice::MaxSchmidt => max_schmidt,
        }
    }
}

impl FromStr for NodeChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "max-schmidt" => Ok(NodeChoice::MaxSchmidt),
            _ => s
                .parse::<Party>()
                .map(NodeChoice::Fixed)
                .map_err(|_| format!("unknown node `{s}`, expected A, B, C or max-schmidt")),
        }
    }
}

impl fmt::Display for NodeChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeChoice::Fixed(p) => write!(f, "{p}"),
            NodeChoice::MaxSchmidt => f.write_str("max-schmidt"),
        }
    }
}
