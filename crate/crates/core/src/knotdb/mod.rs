//! Knot table ingestion and identification of Montesinos codes by invariants.

mod columns;
mod poly;

pub use columns::ColumnMap;
pub use poly::{parse_jones_string, PolyParseError};

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::diagram::{montesinos_pd, PDCode};
use crate::invariants::{determinant, jones, mirror_canonical, InvariantError, LaurentPolynomial, Variable};
use crate::montesinos::{MontesinosCode, MontesinosInfo};
use crate::ratfrac::Fraction;

/// Number of knots with crossing number 11 or 12.
pub const CENSUS_SIZE: usize = 2728;

/// Checksum of the snapshot shipped in `data/`.
pub const PINNED_SNAPSHOT_SHA256: &str = "328993a786da249c3130a51c2c73c64e06f4564279cacc7aa96bbeed201614cf";
pub const PINNED_SNAPSHOT_VERSION: &str = "KnotInfo (database_knotinfo 2026.10.5), crossings 3-12";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotDbError {
    #[error("row {row}: missing column {column:?}")]
    MissingColumn { row: usize, column: String },
    #[error("row {row}: cannot parse Jones polynomial: {source}")]
    BadPolynomial { row: usize, source: PolyParseError },
    #[error("row {row}: duplicate knot name {name:?}")]
    DuplicateName { row: usize, name: String },
    #[error("row {row}: bad {column} value {value:?}: {reason}")]
    BadField { row: usize, column: String, value: String, reason: String },
    #[error("census incomplete: {found} knots with 11 or 12 crossings, expected {expected}")]
    Incomplete { found: usize, expected: usize },
    #[error("column config: {0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
    #[error("row {row}: {message}")]
    Csv { row: usize, message: String },
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KnotRecord {
    /// Zero-padded census form, e.g. `12a0554`.
    pub name: String,
    pub crossing_number: u32,
    pub alternating: bool,
    pub bridge_index: u32,
    pub determinant: u64,
    /// Mirror-canonical Jones polynomial.
    pub jones: LaurentPolynomial,
    pub montesinos_notation: Option<String>,
    /// Canonical code parsed from a notation with at least three tangles.
    pub montesinos_code: Option<MontesinosCode>,
    #[serde(skip)]
    pub pd: Option<PDCode>,
}

impl KnotRecord {
    pub fn is_census(&self) -> bool {
        matches!(self.crossing_number, 11 | 12)
    }
}

/// Row-level anomalies that do not stop loading.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LoadWarning {
    DeterminantMismatch { name: String, stored: u64, from_jones: u64 },
    BridgeOutOfRange { name: String, bridge_index: u32 },
}

/// Immutable knot table indexed by name and by `(determinant, Jones)`.
#[derive(Debug, Clone)]
pub struct KnotTable {
    records: Vec<KnotRecord>,
    by_name: HashMap<String, usize>,
    by_key: HashMap<(u64, LaurentPolynomial), Vec<usize>>,
    warnings: Vec<LoadWarning>,
    checksum: String,
}

impl KnotTable {
    pub fn from_records(records: Vec<KnotRecord>) -> Result<KnotTable, KnotDbError> {
        let mut by_name = HashMap::new();
        let mut by_key: HashMap<_, Vec<usize>> = HashMap::new();
        let mut warnings = Vec::new();
        for (i, rec) in records.iter().enumerate() {
            if by_name.insert(rec.name.clone(), i).is_some() {
                return Err(KnotDbError::DuplicateName { row: i + 2, name: rec.name.clone() });
            }
            by_key.entry((rec.determinant, rec.jones.clone())).or_default().push(i);
            let from_jones = rec.jones.eval_minus_one().unsigned_abs();
            if from_jones != rec.determinant {
                warnings.push(LoadWarning::DeterminantMismatch {
                    name: rec.name.clone(),
                    stored: rec.determinant,
                    from_jones,
                });
            }
            if rec.is_census() && !(2..=4).contains(&rec.bridge_index) {
                warnings.push(LoadWarning::BridgeOutOfRange {
                    name: rec.name.clone(),
                    bridge_index: rec.bridge_index,
                });
            }
        }
        Ok(KnotTable { records, by_name, by_key, warnings, checksum: String::new() })
    }

    pub fn records(&self) -> &[KnotRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Accepts both `12a0554` and KnotInfo's `12a_554`.
    pub fn get(&self, name: &str) -> Option<&KnotRecord> {
        self.by_name.get(&normalize_name(name)).map(|&i| &self.records[i])
    }

    /// Records with the given determinant and (mirror-canonical) Jones
    /// polynomial, in file order.
    pub fn lookup(&self, det: u64, jones: &LaurentPolynomial) -> Vec<&KnotRecord> {
        self.by_key
            .get(&(det, jones.clone()))
            .map(|ix| ix.iter().map(|&i| &self.records[i]).collect())
            .unwrap_or_default()
    }

    pub fn census_records(&self) -> impl Iterator<Item = &KnotRecord> {
        self.records.iter().filter(|r| r.is_census())
    }

    pub fn census_count(&self) -> usize {
        self.census_records().count()
    }

    pub fn check_completeness(&self) -> Result<(), KnotDbError> {
        match self.census_count() {
            CENSUS_SIZE => Ok(()),
            found => Err(KnotDbError::Incomplete { found, expected: CENSUS_SIZE }),
        }
    }

    pub fn warnings(&self) -> &[LoadWarning] {
        &self.warnings
    }

    /// SHA-256 of the source file, hex encoded; empty for tables built in
    /// memory.
    pub fn checksum(&self) -> &str {
        &self.checksum
    }

    pub fn version(&self) -> &str {
        if self.checksum == PINNED_SNAPSHOT_SHA256 {
            PINNED_SNAPSHOT_VERSION
        } else {
            "unpinned snapshot"
        }
    }
}

/// `12a_554` becomes `12a0554`; other names are returned unchanged.
pub fn normalize_name(name: &str) -> String {
    let name = name.trim();
    if let Some((head, tail)) = name.split_once('_') {
        let kind = head.chars().last();
        let crossings = &head[..head.len().saturating_sub(1)];
        if matches!(kind, Some('a' | 'n'))
            && !crossings.is_empty()
            && crossings.bytes().all(|b| b.is_ascii_digit())
            && !tail.is_empty()
            && tail.bytes().all(|b| b.is_ascii_digit())
        {
            if let Ok(k) = tail.parse::<u32>() {
                return format!("{head}{k:04}");
            }
        }
    }
    name.to_string()
}

/// Parses `K(b1/a1;b2/a2;...)`. Returns `Ok(None)` for fewer than three
/// tangles (two-bridge entries) and for non-Montesinos markers.
pub fn parse_montesinos_notation(s: &str) -> Result<Option<MontesinosCode>, String> {
    let s = s.trim();
    let Some(inner) = s.strip_prefix("K(").and_then(|t| t.strip_suffix(')')) else {
        return Ok(None);
    };
    let tangles: Vec<Fraction> = inner
        .split(';')
        .map(|t| t.trim().parse::<Fraction>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    if tangles.len() < 3 {
        return Ok(None);
    }
    MontesinosCode::new(0, tangles).map(|c| Some(c.canonicalize())).map_err(|e| e.to_string())
}

fn parse_bool(s: &str) -> Option<bool> {
    match s.trim().to_ascii_lowercase().as_str() {
        "y" | "yes" | "true" | "t" | "1" => Some(true),
        "n" | "no" | "false" | "f" | "0" => Some(false),
        _ => None,
    }
}

struct Columns {
    name: usize,
    crossing_number: usize,
    alternating: usize,
    bridge_index: usize,
    determinant: usize,
    jones: usize,
    notation: Option<usize>,
    pd: Option<usize>,
}

/// Loads a knot table from a CSV file and records its checksum.
pub fn load_knot_table(path: &Path, map: &ColumnMap) -> Result<KnotTable, KnotDbError> {
    let bytes = fs::read(path).map_err(|e| KnotDbError::Io(format!("{}: {e}", path.display())))?;
    let mut table = load_knot_table_from_bytes(&bytes, map)?;
    table.checksum = hex::encode(Sha256::digest(&bytes));
    Ok(table)
}

/// Loads a knot table from in-memory CSV text. Row numbers in errors are
/// 1-based file lines, the header being row 1.
pub fn load_knot_table_from_bytes(bytes: &[u8], map: &ColumnMap) -> Result<KnotTable, KnotDbError> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(map.delimiter)
        .has_headers(true)
        .flexible(false)
        .from_reader(bytes);
    let csv_err = |e: csv::Error| KnotDbError::Csv {
        row: e.position().map_or(0, |p| p.line() as usize),
        message: e.to_string(),
    };
    let header = reader.headers().map_err(csv_err)?.clone();
    let find = |col: &str| header.iter().position(|h| h.trim() == col);
    let require = |col: &str| {
        find(col).ok_or_else(|| KnotDbError::MissingColumn { row: 1, column: col.to_string() })
    };
    let cols = Columns {
        name: require(&map.name)?,
        crossing_number: require(&map.crossing_number)?,
        alternating: require(&map.alternating)?,
        bridge_index: require(&map.bridge_index)?,
        determinant: require(&map.determinant)?,
        jones: require(&map.jones_polynomial)?,
        notation: find(&map.montesinos_notation),
        pd: find(&map.pd_notation),
    };

    let mut records = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (i, row) in reader.records().enumerate() {
        let row = row.map_err(csv_err)?;
        if i < map.skip_rows {
            continue;
        }
        let line = row.position().map_or(i + 2, |p| p.line() as usize);
        let rec = parse_row(&row, &cols, map, line)?;
        if seen.insert(rec.name.clone(), line).is_some() {
            return Err(KnotDbError::DuplicateName { row: line, name: rec.name });
        }
        records.push(rec);
    }
    KnotTable::from_records(records)
}

fn parse_row(row: &csv::StringRecord, cols: &Columns, map: &ColumnMap, line: usize) -> Result<KnotRecord, KnotDbError> {
    let field = |ix: usize| row.get(ix).unwrap_or("").trim();
    let bad = |column: &str, value: &str, reason: &str| KnotDbError::BadField {
        row: line,
        column: column.to_string(),
        value: value.to_string(),
        reason: reason.to_string(),
    };
    let int = |column: &str, ix: usize| -> Result<u64, KnotDbError> {
        field(ix).parse::<u64>().map_err(|_| bad(column, field(ix), "expected a non-negative integer"))
    };

    let name = normalize_name(field(cols.name));
    if name.is_empty() {
        return Err(bad(&map.name, "", "empty name"));
    }
    let crossing_number = int(&map.crossing_number, cols.crossing_number)? as u32;
    let alternating = parse_bool(field(cols.alternating))
        .ok_or_else(|| bad(&map.alternating, field(cols.alternating), "expected Y or N"))?;
    let bridge_index = int(&map.bridge_index, cols.bridge_index)? as u32;
    let determinant = int(&map.determinant, cols.determinant)?;
    if determinant == 0 {
        return Err(bad(&map.determinant, "0", "determinant of a knot is positive"));
    }
    let raw_jones = parse_jones_string(field(cols.jones), Variable::T)
        .map_err(|source| KnotDbError::BadPolynomial { row: line, source })?;

    let notation = cols.notation.map(field).filter(|s| s.starts_with("K("));
    let montesinos_code = match notation {
        Some(s) => parse_montesinos_notation(s).map_err(|e| bad(&map.montesinos_notation, s, &e))?,
        None => None,
    };
    let pd = match cols.pd.map(field).filter(|s| !s.is_empty()) {
        Some(s) => Some(PDCode::from_nested_lists(s).map_err(|e| bad(&map.pd_notation, s, &e.to_string()))?),
        None => None,
    };
    Ok(KnotRecord {
        name,
        crossing_number,
        alternating,
        bridge_index,
        determinant,
        jones: mirror_canonical(&raw_jones),
        montesinos_notation: notation.map(str::to_string),
        montesinos_code,
        pd,
    })
}

/// Outcome of matching a code against the table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "names", rename_all = "snake_case")]
pub enum MatchResult {
    Unique(String),
    /// At least two names, sorted.
    Ambiguous(Vec<String>),
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identification {
    pub code: MontesinosCode,
    pub determinant: u64,
    /// Mirror-canonical.
    #[serde(deserialize_with = "jones_from_str")]
    pub jones: LaurentPolynomial,
    pub result: MatchResult,
    /// Crossing number of the unique match, if any.
    pub crossing_number: Option<u32>,
    /// The unique match has fewer crossings than the enumerated diagram.
    pub reduced_crossing: bool,
    /// The Montesinos notation column narrowed several invariant matches.
    pub resolved_by_notation: bool,
}

fn jones_from_str<'de, D: Deserializer<'de>>(deserializer: D) -> Result<LaurentPolynomial, D::Error> {
    let s = String::deserialize(deserializer)?;
    parse_jones_string(&s, Variable::T).map_err(serde::de::Error::custom)
}

/// Matches a code by determinant and mirror-canonical Jones polynomial of
/// its diagram. When several rows share the invariants, rows whose
/// Montesinos notation canonicalizes to the same code are preferred.
pub fn identify(info: &MontesinosInfo, table: &KnotTable) -> Result<Identification, KnotDbError> {
    let pd = montesinos_pd(&info.diagram_code).map_err(InvariantError::from)?;
    let det = determinant(&pd)?;
    let poly = mirror_canonical(&jones(&pd)?);
    let candidates = table.lookup(det, &poly);
    let mut resolved_by_notation = false;
    let chosen: Vec<&KnotRecord> = if candidates.len() > 1 {
        let by_notation: Vec<&KnotRecord> = candidates
            .iter()
            .copied()
            .filter(|r| r.montesinos_code.as_ref() == Some(&info.code))
            .collect();
        if by_notation.is_empty() {
            candidates
        } else {
            resolved_by_notation = true;
            by_notation
        }
    } else {
        candidates
    };
    let (result, crossing_number) = match chosen.as_slice() {
        [] => (MatchResult::None, None),
        [one] => (MatchResult::Unique(one.name.clone()), Some(one.crossing_number)),
        many => {
            let mut names: Vec<String> = many.iter().map(|r| r.name.clone()).collect();
            names.sort();
            (MatchResult::Ambiguous(names), None)
        }
    };
    Ok(Identification {
        code: info.code.clone(),
        determinant: det,
        jones: poly,
        reduced_crossing: crossing_number.is_some_and(|c| u64::from(c) < info.diagram_crossings),
        crossing_number,
        result,
        resolved_by_notation,
    })
}
