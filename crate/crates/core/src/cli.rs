//! Command-line front end: argument parsing, orchestration, caching and
//! output formatting.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::classify::{census_report, CensusReport, ClassifyError, MontesinosIndex};
use crate::knotdb::{identify, load_knot_table, ColumnMap, Identification, KnotDbError, KnotTable, MatchResult};
use crate::montesinos::{enumerate_montesinos_knots, MontesinosInfo};
use crate::ratfrac::enumerate_rational_tangles;

/// Bumped whenever cached payloads change shape or meaning.
const CACHE_SCHEMA: &str = "knotcensus-cache-1";

#[derive(Debug, Parser)]
#[command(name = "knotcensus", version, about = "Montesinos knot census and tunnel-number classification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// KnotInfo CSV snapshot.
    #[arg(long, global = true, env = "KNOTCENSUS_KNOTINFO")]
    pub knotinfo: Option<PathBuf>,

    /// Override one column mapping, e.g. `--column jones_polynomial=jones`.
    #[arg(long = "column", global = true, value_name = "KEY=VALUE")]
    pub columns: Vec<String>,

    /// File of `key=value` column mappings, applied before `--column`.
    #[arg(long, global = true, value_name = "PATH")]
    pub columns_config: Option<PathBuf>,

    /// Cache enumeration and identification results as JSON here.
    #[arg(long, global = true, env = "KNOTCENSUS_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

fn crossing_list() -> clap::builder::RangedI64ValueParser<u32> {
    clap::value_parser!(u32).range(1..=16)
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rational tangles with exactly L crossings.
    Tangles {
        #[arg(long, required = true, value_delimiter = ',', value_parser = crossing_list())]
        crossings: Vec<u32>,
    },
    /// Montesinos knots with an N-crossing diagram.
    Montesinos {
        #[arg(long, required = true, value_delimiter = ',', value_parser = crossing_list())]
        crossings: Vec<u32>,
        /// Only knots identified in the table with crossing number N.
        #[arg(long)]
        knots_only: bool,
    },
    /// Match every enumerated code against the table.
    Identify {
        #[arg(long, required = true, value_delimiter = ',', value_parser = crossing_list())]
        crossings: Vec<u32>,
    },
    /// Tunnel-number verdict for every census knot.
    Classify {
        #[arg(long, value_delimiter = ',', value_parser = crossing_list(), default_value = "11,12")]
        crossings: Vec<u32>,
    },
    /// Census report; `--tables` gives the aggregated cell counts.
    Report {
        #[arg(long)]
        tables: bool,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Conflict(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Conflict(_) => 3,
        }
    }
}

impl From<KnotDbError> for CliError {
    fn from(e: KnotDbError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        CliError::Conflict(e.to_string())
    }
}

/// Result of a run: the artifact plus diagnostics meant for standard error.
#[derive(Debug, Default)]
pub struct RunOutput {
    pub bytes: Vec<u8>,
    pub warnings: Vec<String>,
}

/// Parses `args` (program name first), runs, writes the artifact and
/// returns the process exit code.
pub fn main_with_args(args: impl IntoIterator<Item = OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = run(&cli).and_then(|out| {
        for w in &out.warnings {
            eprintln!("warning: {w}");
        }
        match &cli.output {
            Some(path) => fs::write(path, &out.bytes)
                .map_err(|e| CliError::Data(format!("{}: {e}", path.display()))),
            None => std::io::stdout()
                .write_all(&out.bytes)
                .map_err(|e| CliError::Data(format!("stdout: {e}"))),
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command on a pool of `--jobs` threads.
pub fn run(cli: &Cli) -> Result<RunOutput, CliError> {
    match cli.jobs {
        Some(0) => Err(CliError::Usage("--jobs must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot start {n} workers: {e}")))?;
            pool.install(|| Session::new(cli).dispatch())
        }
        None => Session::new(cli).dispatch(),
    }
}

struct Session<'a> {
    cli: &'a Cli,
    table: Option<KnotTable>,
    columns: Option<ColumnMap>,
    warnings: Vec<String>,
}

impl<'a> Session<'a> {
    fn new(cli: &'a Cli) -> Self {
        Session { cli, table: None, columns: None, warnings: Vec::new() }
    }

    fn dispatch(mut self) -> Result<RunOutput, CliError> {
        let text = match &self.cli.command {
            Command::Tangles { crossings } => self.tangles(crossings)?,
            Command::Montesinos { crossings, knots_only: false } => self.montesinos(crossings)?,
            Command::Montesinos { crossings, knots_only: true } => self.montesinos_knots(crossings)?,
            Command::Identify { crossings } => self.identify(crossings)?,
            Command::Classify { crossings } => self.classify(crossings)?,
            Command::Report { tables } => self.report(*tables)?,
        };
        Ok(RunOutput { bytes: text.into_bytes(), warnings: self.warnings })
    }

    fn column_map(&mut self) -> Result<ColumnMap, CliError> {
        if let Some(map) = &self.columns {
            return Ok(map.clone());
        }
        let mut map = ColumnMap::default();
        if let Some(path) = &self.cli.columns_config {
            map.apply_config_file(path).map_err(|e| match e {
                KnotDbError::Config(m) => CliError::Usage(m),
                other => CliError::from(other),
            })?;
        }
        for c in &self.cli.columns {
            map.set(c).map_err(|e| CliError::Usage(e.to_string()))?;
        }
        self.columns = Some(map.clone());
        Ok(map)
    }

    fn table(&mut self) -> Result<&KnotTable, CliError> {
        if self.table.is_none() {
            let path = self.cli.knotinfo.clone().ok_or_else(|| {
                CliError::Usage("this command needs --knotinfo PATH (or KNOTCENSUS_KNOTINFO)".into())
            })?;
            let map = self.column_map()?;
            let table = load_knot_table(&path, &map)?;
            self.warnings.extend(table.warnings().iter().map(|w| {
                serde_json::to_string(w).expect("warnings serialize")
            }));
            self.table = Some(table);
        }
        Ok(self.table.as_ref().expect("loaded above"))
    }

    fn cached<T, F>(&self, kind: &str, key: &str, compute: F) -> Result<T, CliError>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T, CliError>,
    {
        let Some(dir) = &self.cli.cache_dir else {
            return compute();
        };
        let digest = hex::encode(Sha256::digest(format!("{CACHE_SCHEMA}\n{kind}\n{key}").as_bytes()));
        let path = dir.join(format!("{kind}-{}.json", &digest[..16]));
        if let Ok(bytes) = fs::read(&path) {
            if let Ok(value) = serde_json::from_slice::<Cached<T>>(&bytes) {
                if value.key == key {
                    return Ok(value.payload);
                }
            }
        }
        let payload = compute()?;
        let entry = Cached { key: key.to_string(), payload };
        write_atomically(dir, &path, &serde_json::to_vec(&entry).expect("cache payload serializes"))?;
        Ok(entry.payload)
    }

    fn enumerate(&self, n: u32) -> Result<Vec<MontesinosInfo>, CliError> {
        self.cached("enumerate", &format!("n={n}"), || Ok(enumerate_montesinos_knots(n)))
    }

    fn identified(&mut self, n: u32) -> Result<Vec<(MontesinosInfo, Identification)>, CliError> {
        let map = self.column_map()?;
        let checksum = self.table()?.checksum().to_string();
        let infos = self.enumerate(n)?;
        let table = self.table.as_ref().expect("loaded above");
        let key = format!("n={n}\nsnapshot={checksum}\n{}", map.fingerprint());
        self.cached("identify", &key, || {
            let ids = infos
                .par_iter()
                .map(|info| identify(info, table))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(infos.iter().cloned().zip(ids).collect())
        })
    }

    fn tangles(&self, crossings: &[u32]) -> Result<String, CliError> {
        #[derive(Serialize)]
        struct Entry {
            crossings: u32,
            count: usize,
            fractions: Vec<String>,
        }
        let entries: Vec<Entry> = crossings
            .iter()
            .map(|&l| {
                let set = enumerate_rational_tangles(l);
                Entry { crossings: l, count: set.len(), fractions: set.iter().map(ToString::to_string).collect() }
            })
            .collect();
        Ok(match self.cli.format {
            Format::Json => to_json(&entries),
            Format::Csv => csv_text(
                &["crossings", "fraction"],
                entries.iter().flat_map(|e| e.fractions.iter().map(|f| vec![e.crossings.to_string(), f.clone()])),
            ),
            Format::Text => {
                let mut out = String::new();
                for e in &entries {
                    let _ = writeln!(out, "RT({}): {} tangles", e.crossings, e.count);
                    for f in &e.fractions {
                        let _ = writeln!(out, "  {f}");
                    }
                }
                out
            }
        })
    }

    fn montesinos(&self, crossings: &[u32]) -> Result<String, CliError> {
        #[derive(Serialize)]
        struct Entry {
            crossings: u32,
            #[serde(flatten)]
            info: MontesinosInfo,
        }
        let mut entries = Vec::new();
        for &n in crossings {
            entries.extend(self.enumerate(n)?.into_iter().map(|info| Entry { crossings: n, info }));
        }
        Ok(match self.cli.format {
            Format::Json => to_json(&entries),
            Format::Csv => csv_text(
                &["crossings", "code", "diagram_code", "r", "alpha_gcd", "clasp", "lackenby_form"],
                entries.iter().map(|e| {
                    vec![
                        e.crossings.to_string(),
                        e.info.code.to_string(),
                        e.info.diagram_code.to_string(),
                        e.info.r.to_string(),
                        e.info.alpha_gcd.to_string(),
                        yn(e.info.is_clasp),
                        yn(e.info.lackenby_form),
                    ]
                }),
            ),
            Format::Text => {
                let mut out = String::new();
                for &n in crossings {
                    let here: Vec<&Entry> = entries.iter().filter(|e| e.crossings == n).collect();
                    let _ = writeln!(out, "{n} crossings: {} codes", here.len());
                    for e in here {
                        let _ = writeln!(out, "  {}", e.info.code);
                    }
                }
                out
            }
        })
    }

    fn montesinos_knots(&mut self, crossings: &[u32]) -> Result<String, CliError> {
        #[derive(Serialize)]
        struct Entry {
            crossings: u32,
            name: String,
            code: String,
            alternating: bool,
            bridge_index: u32,
        }
        let mut entries = Vec::new();
        for &n in crossings {
            let pairs = self.identified(n)?;
            let index = MontesinosIndex::from_identifications(pairs.iter().map(|(i, d)| (i, d)))?;
            let table = self.table()?;
            for (name, info) in index.iter() {
                let rec = table.get(name).expect("identified names come from the table");
                if rec.crossing_number == n {
                    entries.push(Entry {
                        crossings: n,
                        name: name.clone(),
                        code: info.code.to_string(),
                        alternating: rec.alternating,
                        bridge_index: rec.bridge_index,
                    });
                }
            }
            for id in index.ambiguous.iter().chain(&index.unmatched) {
                self.warnings.push(format!("{} crossings: {} is {}", n, id.code, match_text(&id.result)));
            }
        }
        Ok(match self.cli.format {
            Format::Json => to_json(&entries),
            Format::Csv => csv_text(
                &["crossings", "name", "code", "alternating", "bridge_index"],
                entries.iter().map(|e| {
                    vec![e.crossings.to_string(), e.name.clone(), e.code.clone(), yn(e.alternating), e.bridge_index.to_string()]
                }),
            ),
            Format::Text => {
                let mut out = String::new();
                for &n in crossings {
                    let here: Vec<&Entry> = entries.iter().filter(|e| e.crossings == n).collect();
                    let _ = writeln!(out, "{n} crossings: {} Montesinos knots", here.len());
                    for e in here {
                        let _ = writeln!(out, "  {:<9} {}", e.name, e.code);
                    }
                }
                out
            }
        })
    }

    fn identify(&mut self, crossings: &[u32]) -> Result<String, CliError> {
        #[derive(Serialize)]
        struct Entry {
            crossings: u32,
            diagram_code: String,
            #[serde(flatten)]
            id: Identification,
        }
        let mut entries = Vec::new();
        for &n in crossings {
            for (info, id) in self.identified(n)? {
                entries.push(Entry { crossings: n, diagram_code: info.diagram_code.to_string(), id });
            }
        }
        Ok(match self.cli.format {
            Format::Json => to_json(&entries),
            Format::Csv => csv_text(
                &[
                    "crossings",
                    "code",
                    "diagram_code",
                    "determinant",
                    "jones",
                    "match",
                    "names",
                    "crossing_number",
                    "reduced_crossing",
                ],
                entries.iter().map(|e| {
                    let (kind, names) = match &e.id.result {
                        MatchResult::Unique(n) => ("unique", n.clone()),
                        MatchResult::Ambiguous(v) => ("ambiguous", v.join(" ")),
                        MatchResult::None => ("none", String::new()),
                    };
                    vec![
                        e.crossings.to_string(),
                        e.id.code.to_string(),
                        e.diagram_code.clone(),
                        e.id.determinant.to_string(),
                        e.id.jones.to_string(),
                        kind.to_string(),
                        names,
                        e.id.crossing_number.map_or_else(|| "-".into(), |c| c.to_string()),
                        yn(e.id.reduced_crossing),
                    ]
                }),
            ),
            Format::Text => {
                let mut out = String::new();
                for e in &entries {
                    let note = if e.id.reduced_crossing { " (fewer crossings)" } else { "" };
                    let _ = writeln!(out, "{:<2} {:<40} {}{note}", e.crossings, e.id.code.to_string(), match_text(&e.id.result));
                }
                out
            }
        })
    }

    fn census(&mut self) -> Result<CensusReport, CliError> {
        self.table()?.check_completeness()?;
        let mut pairs = Vec::new();
        for n in [11, 12] {
            pairs.extend(self.identified(n)?);
        }
        let index = MontesinosIndex::from_identifications(pairs.iter().map(|(i, d)| (i, d)))?;
        for id in index.ambiguous.iter().chain(&index.unmatched) {
            self.warnings.push(format!("{} is {}", id.code, match_text(&id.result)));
        }
        Ok(census_report(self.table()?, &index)?)
    }

    fn classify(&mut self, crossings: &[u32]) -> Result<String, CliError> {
        if let Some(bad) = crossings.iter().find(|c| !matches!(c, 11 | 12)) {
            return Err(CliError::Usage(format!("classify covers 11 and 12 crossings, not {bad}")));
        }
        let mut report = self.census()?;
        report.rows.retain(|r| crossings.contains(&r.crossings));
        Ok(self.rows_output(&report))
    }

    fn report(&mut self, tables: bool) -> Result<String, CliError> {
        let report = self.census()?;
        if !tables {
            return Ok(self.rows_output(&report));
        }
        Ok(match self.cli.format {
            Format::Text => report.render_tables(),
            Format::Json => {
                #[derive(Serialize)]
                struct Tables<'r> {
                    snapshot_version: &'r str,
                    snapshot_sha256: &'r str,
                    knots: usize,
                    exact: usize,
                    cells: &'r [crate::classify::Cell],
                    verdict_totals: &'r [crate::classify::VerdictTotal],
                    montesinos_totals: &'r [crate::classify::MontesinosTotal],
                    even_alpha_clasp: &'r [String],
                }
                to_json(&Tables {
                    snapshot_version: &report.snapshot_version,
                    snapshot_sha256: &report.snapshot_sha256,
                    knots: report.knots,
                    exact: report.exact,
                    cells: &report.cells,
                    verdict_totals: &report.verdict_totals,
                    montesinos_totals: &report.montesinos_totals,
                    even_alpha_clasp: &report.even_alpha_clasp,
                })
            }
            Format::Csv => csv_text(
                &["alternating", "crossings", "bridge", "montesinos", "clasp", "alpha", "t_low", "t_high", "count"],
                report.cells.iter().map(|c| {
                    let k = &c.key;
                    vec![
                        yn(!k.non_alternating),
                        k.crossings.to_string(),
                        k.bridge.to_string(),
                        snake(&k.montesinos),
                        k.clasp.as_ref().map_or_else(|| "-".into(), snake),
                        k.alpha.as_ref().map_or_else(|| "-".into(), snake),
                        k.t_low.to_string(),
                        k.t_high.to_string(),
                        c.count.to_string(),
                    ]
                }),
            ),
        })
    }

    fn rows_output(&self, report: &CensusReport) -> String {
        match self.cli.format {
            Format::Csv => report.to_csv(),
            Format::Json => {
                #[derive(Serialize)]
                struct Rows<'r> {
                    snapshot_version: &'r str,
                    snapshot_sha256: &'r str,
                    rows: &'r [crate::classify::CensusRow],
                }
                to_json(&Rows {
                    snapshot_version: &report.snapshot_version,
                    snapshot_sha256: &report.snapshot_sha256,
                    rows: &report.rows,
                })
            }
            Format::Text => {
                let mut out = String::new();
                let _ = writeln!(out, "{:<9} {:>2} {:<3} {:>1} {:<40} t", "name", "c", "alt", "b", "montesinos");
                for r in &report.rows {
                    let code = r.montesinos.as_ref().map_or_else(|| "-".to_string(), ToString::to_string);
                    let t = if r.t_low == r.t_high {
                        r.t_low.to_string()
                    } else {
                        format!("[{},{}]", r.t_low, r.t_high)
                    };
                    let _ = writeln!(out, "{:<9} {:>2} {:<3} {:>1} {:<40} {t}", r.name, r.crossings, yn(r.alternating), r.bridge, code);
                }
                out
            }
        }
    }
}

#[derive(Serialize, serde::Deserialize)]
struct Cached<T> {
    key: String,
    payload: T,
}

fn write_atomically(dir: &Path, path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let fail = |e: std::io::Error| CliError::Data(format!("cache {}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(fail)?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, bytes).map_err(fail)?;
    fs::rename(&tmp, path).map_err(fail)
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("writing to memory");
    for row in rows {
        w.write_record(&row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 input")
}

fn yn(b: bool) -> String {
    if b { "Y" } else { "N" }.to_string()
}

fn snake<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

fn match_text(m: &MatchResult) -> String {
    match m {
        MatchResult::Unique(n) => n.clone(),
        MatchResult::Ambiguous(v) => format!("ambiguous: {}", v.join(", ")),
        MatchResult::None => "unmatched".into(),
    }
}
