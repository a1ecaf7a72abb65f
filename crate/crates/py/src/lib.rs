//! Python bindings for `knotcensus`.
//!
//! Fractions and Montesinos codes are exposed as immutable classes. Knot
//! tables are loaded once and shared by identification and the census.

use std::collections::HashMap;
use std::path::PathBuf;

use knotcensus::classify::{census_report, classify_knot, CensusReport, CensusRow, MontesinosIndex, TunnelVerdict};
use knotcensus::diagram::{count_components, montesinos_pd, PDCode};
use knotcensus::invariants;
use knotcensus::knotdb::{self, ColumnMap, Identification, KnotRecord, LoadWarning, MatchResult};
use knotcensus::montesinos::{enumerate_montesinos_knots, structural_flags, MontesinosInfo};
use knotcensus::ratfrac::{self, enumerate_rational_tangles};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use rayon::prelude::*;

create_exception!(knotcensus_py, KnotCensusError, PyException, "Data or classification failure.");

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn data_err(e: impl std::fmt::Display) -> PyErr {
    KnotCensusError::new_err(e.to_string())
}

#[pyclass(name = "Fraction", module = "knotcensus_py", frozen, eq, ord, hash, from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PyFraction(ratfrac::Fraction);

#[pymethods]
impl PyFraction {
    #[new]
    #[pyo3(signature = (num, den = 1))]
    fn new(num: i64, den: i64) -> PyResult<Self> {
        ratfrac::Fraction::new(num, den).map(PyFraction).map_err(value_err)
    }

    /// Parses `"p/q"`, an integer, or `"inf"`.
    #[staticmethod]
    fn parse(s: &str) -> PyResult<Self> {
        s.parse().map(PyFraction).map_err(value_err)
    }

    #[getter]
    fn num(&self) -> i64 {
        self.0.num()
    }

    #[getter]
    fn den(&self) -> i64 {
        self.0.den()
    }

    fn recip(&self) -> Self {
        PyFraction(self.0.recip())
    }

    fn __neg__(&self) -> Self {
        PyFraction(-self.0)
    }

    /// Minimal crossing number of the rational tangle.
    fn crossing_number(&self) -> PyResult<u64> {
        ratfrac::crossing_number(self.0).map_err(value_err)
    }

    /// Canonical continued fraction terms, the integer part first.
    fn continued_fraction(&self) -> PyResult<Vec<i64>> {
        ratfrac::cf_canonical(self.0).map(|cf| cf.full_terms()).map_err(value_err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Fraction('{}')", self.0)
    }
}

#[pyclass(name = "MontesinosCode", module = "knotcensus_py", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyMontesinosCode(knotcensus::montesinos::MontesinosCode);

impl PyMontesinosCode {
    fn info(&self) -> MontesinosInfo {
        structural_flags(&self.0)
    }

    fn knot_diagram(&self) -> PyResult<PDCode> {
        let pd = montesinos_pd(&self.info().diagram_code).map_err(value_err)?;
        let components = count_components(&pd).map_err(value_err)?;
        if components != 1 {
            return Err(PyValueError::new_err(format!("{} is a {components}-component link", self.0)));
        }
        Ok(pd)
    }
}

#[pymethods]
impl PyMontesinosCode {
    #[new]
    fn new(e: i64, tangles: Vec<PyFraction>) -> PyResult<Self> {
        knotcensus::montesinos::MontesinosCode::new(e, tangles.into_iter().map(|f| f.0).collect())
            .map(PyMontesinosCode)
            .map_err(value_err)
    }

    /// Parses `"M(e; b1/a1, ..., br/ar)"`.
    #[staticmethod]
    fn parse(s: &str) -> PyResult<Self> {
        s.parse().map(PyMontesinosCode).map_err(value_err)
    }

    #[getter]
    fn e(&self) -> i64 {
        self.0.e()
    }

    #[getter]
    fn tangles(&self) -> Vec<PyFraction> {
        self.0.tangles().iter().copied().map(PyFraction).collect()
    }

    #[getter]
    fn r(&self) -> usize {
        self.0.r()
    }

    fn canonicalize(&self) -> Self {
        PyMontesinosCode(self.0.canonicalize())
    }

    fn is_canonical(&self) -> bool {
        self.0.is_canonical()
    }

    fn mirror(&self) -> Self {
        PyMontesinosCode(self.0.mirror())
    }

    /// Crossing number of the reduced diagram.
    fn crossing_number(&self) -> u64 {
        self.0.crossing_number()
    }

    /// Structural flags of the canonical code as a dict.
    fn flags<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let info = self.info();
        let d = PyDict::new(py);
        d.set_item("code", info.code.to_string())?;
        d.set_item("r", info.r)?;
        d.set_item("alpha_gcd", info.alpha_gcd)?;
        d.set_item("is_clasp", info.is_clasp)?;
        d.set_item("lackenby_form", info.lackenby_form)?;
        d.set_item("diagram_crossings", info.diagram_crossings)?;
        Ok(d)
    }

    /// Planar diagram of the `e = 0` form, as `X(a,b,c,d);...`.
    fn pd(&self) -> PyResult<String> {
        montesinos_pd(&self.info().diagram_code).map(|pd| pd.to_string()).map_err(value_err)
    }

    fn components(&self) -> PyResult<usize> {
        let pd = montesinos_pd(&self.info().diagram_code).map_err(value_err)?;
        count_components(&pd).map_err(value_err)
    }

    /// Jones polynomial of the diagram in `t`.
    fn jones(&self, py: Python<'_>) -> PyResult<String> {
        let pd = self.knot_diagram()?;
        py.detach(|| invariants::jones(&pd)).map(|p| p.to_string()).map_err(value_err)
    }

    fn determinant(&self) -> PyResult<u64> {
        invariants::determinant(&self.knot_diagram()?).map_err(value_err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("MontesinosCode('{}')", self.0)
    }
}

/// A planar diagram given either as text or as a list of 4-tuples.
#[derive(FromPyObject)]
enum PdInput {
    Text(String),
    Lists(Vec<[u32; 4]>),
}

impl PdInput {
    fn parse(self) -> PyResult<PDCode> {
        match self {
            PdInput::Text(s) if s.trim_start().starts_with('[') => PDCode::from_nested_lists(&s).map_err(value_err),
            PdInput::Text(s) => s.parse().map_err(value_err),
            PdInput::Lists(xs) => PDCode::new(xs, 0).map_err(value_err),
        }
    }
}

/// Rational tangles with exactly `crossings` crossings, in increasing order.
#[pyfunction]
fn rational_tangles(crossings: u32) -> Vec<PyFraction> {
    enumerate_rational_tangles(crossings).iter().copied().map(PyFraction).collect()
}

/// Canonical Montesinos knot codes whose reduced diagrams have `crossings` crossings.
#[pyfunction]
fn montesinos_knots(py: Python<'_>, crossings: u32) -> Vec<PyMontesinosCode> {
    py.detach(|| enumerate_montesinos_knots(crossings)).into_iter().map(|i| PyMontesinosCode(i.code)).collect()
}

/// Jones polynomial in `t` of a knot diagram.
#[pyfunction]
fn jones(py: Python<'_>, pd: PdInput) -> PyResult<String> {
    let pd = pd.parse()?;
    py.detach(|| invariants::jones(&pd)).map(|p| p.to_string()).map_err(value_err)
}

/// Determinant of a knot or link diagram.
#[pyfunction]
fn determinant(py: Python<'_>, pd: PdInput) -> PyResult<u64> {
    let pd = pd.parse()?;
    py.detach(|| invariants::link_determinant(&pd)).map_err(value_err)
}

fn record_dict<'py>(py: Python<'py>, rec: &KnotRecord) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("name", &rec.name)?;
    d.set_item("crossing_number", rec.crossing_number)?;
    d.set_item("alternating", rec.alternating)?;
    d.set_item("bridge_index", rec.bridge_index)?;
    d.set_item("determinant", rec.determinant)?;
    d.set_item("jones", rec.jones.to_string())?;
    d.set_item("montesinos", rec.montesinos_code.as_ref().map(ToString::to_string))?;
    Ok(d)
}

fn identification_dict<'py>(py: Python<'py>, id: &Identification) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    let (kind, names) = match &id.result {
        MatchResult::Unique(n) => ("unique", vec![n.clone()]),
        MatchResult::Ambiguous(ns) => ("ambiguous", ns.clone()),
        MatchResult::None => ("none", Vec::new()),
    };
    d.set_item("code", id.code.to_string())?;
    d.set_item("kind", kind)?;
    d.set_item("names", names)?;
    d.set_item("determinant", id.determinant)?;
    d.set_item("jones", id.jones.to_string())?;
    d.set_item("crossing_number", id.crossing_number)?;
    d.set_item("reduced_crossing", id.reduced_crossing)?;
    Ok(d)
}

fn verdict_dict<'py>(py: Python<'py>, low: u32, high: u32, trace: String) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("t_low", low)?;
    d.set_item("t_high", high)?;
    d.set_item("exact", (low == high).then_some(low))?;
    d.set_item("trace", trace)?;
    Ok(d)
}

fn row_dict<'py>(py: Python<'py>, row: &CensusRow) -> PyResult<Bound<'py, PyDict>> {
    let trace = row.trace.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
    let d = verdict_dict(py, row.t_low, row.t_high, trace)?;
    d.set_item("name", &row.name)?;
    d.set_item("crossings", row.crossings)?;
    d.set_item("alternating", row.alternating)?;
    d.set_item("bridge", row.bridge)?;
    d.set_item("montesinos", row.montesinos.as_ref().map(ToString::to_string))?;
    d.set_item("clasp", row.clasp)?;
    d.set_item("alpha", row.alpha)?;
    Ok(d)
}

#[pyclass(name = "KnotTable", module = "knotcensus_py", frozen)]
struct PyKnotTable {
    table: knotdb::KnotTable,
    index: std::sync::OnceLock<MontesinosIndex>,
}

impl PyKnotTable {
    fn census_index(&self, py: Python<'_>) -> PyResult<&MontesinosIndex> {
        if let Some(index) = self.index.get() {
            return Ok(index);
        }
        let table = &self.table;
        let index = py.detach(|| -> Result<MontesinosIndex, String> {
            let mut pairs = Vec::new();
            for n in [11, 12] {
                let infos = enumerate_montesinos_knots(n);
                let ids = infos
                    .par_iter()
                    .map(|i| knotdb::identify(i, table))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| e.to_string())?;
                pairs.extend(infos.into_iter().zip(ids));
            }
            MontesinosIndex::from_identifications(pairs.iter().map(|(i, d)| (i, d))).map_err(|e| e.to_string())
        });
        let index = index.map_err(data_err)?;
        Ok(self.index.get_or_init(|| index))
    }

    fn report(&self, py: Python<'_>) -> PyResult<CensusReport> {
        self.table.check_completeness().map_err(data_err)?;
        let index = self.census_index(py)?;
        py.detach(|| census_report(&self.table, index)).map_err(data_err)
    }
}

#[pymethods]
impl PyKnotTable {
    /// Loads a CSV export. `columns` maps column keys to header names, and
    /// may also set `delimiter` and `skip_rows`.
    #[staticmethod]
    #[pyo3(signature = (path, columns = None))]
    fn load(path: PathBuf, columns: Option<HashMap<String, String>>) -> PyResult<Self> {
        let mut map = ColumnMap::default();
        let mut columns: Vec<_> = columns.unwrap_or_default().into_iter().collect();
        columns.sort();
        for (k, v) in columns {
            map.set(&format!("{k}={v}")).map_err(value_err)?;
        }
        let table = knotdb::load_knot_table(&path, &map).map_err(data_err)?;
        Ok(PyKnotTable { table, index: Default::default() })
    }

    fn __len__(&self) -> usize {
        self.table.len()
    }

    #[getter]
    fn checksum(&self) -> &str {
        self.table.checksum()
    }

    #[getter]
    fn version(&self) -> &str {
        self.table.version()
    }

    fn warnings(&self) -> Vec<String> {
        self.table
            .warnings()
            .iter()
            .map(|w| match w {
                LoadWarning::DeterminantMismatch { name, stored, from_jones } => {
                    format!("{name}: determinant {stored} but |V(-1)| = {from_jones}")
                }
                LoadWarning::BridgeOutOfRange { name, bridge_index } => {
                    format!("{name}: bridge index {bridge_index} out of range")
                }
            })
            .collect()
    }

    /// Record by name, accepting both `12a_554` and `12a0554`.
    fn get<'py>(&self, py: Python<'py>, name: &str) -> PyResult<Option<Bound<'py, PyDict>>> {
        self.table.get(name).map(|r| record_dict(py, r)).transpose()
    }

    /// Matches a Montesinos code against the table by its invariants.
    fn identify<'py>(&self, py: Python<'py>, code: PyMontesinosCode) -> PyResult<Bound<'py, PyDict>> {
        let info = structural_flags(&code.0);
        let id = py.detach(|| knotdb::identify(&info, &self.table)).map_err(data_err)?;
        identification_dict(py, &id)
    }

    /// Tunnel number bounds of one knot. Census knots use the identified
    /// Montesinos structure, others use `code` when given.
    #[pyo3(signature = (name, code = None))]
    fn classify<'py>(
        &self,
        py: Python<'py>,
        name: &str,
        code: Option<PyMontesinosCode>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let rec = self.table.get(name).ok_or_else(|| PyValueError::new_err(format!("no knot named {name}")))?;
        let info = match code {
            Some(c) => Some(structural_flags(&c.0)),
            None if rec.is_census() => self.census_index(py)?.get(&rec.name).cloned(),
            None => None,
        };
        let TunnelVerdict { low, high, trace } = classify_knot(rec, info.as_ref()).map_err(data_err)?;
        let trace = trace.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
        verdict_dict(py, low, high, trace)
    }

    /// Classified census rows for 11 and 12 crossings.
    fn census<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        self.report(py)?.rows.iter().map(|r| row_dict(py, r)).collect()
    }

    /// Census rows as CSV text.
    fn census_csv(&self, py: Python<'_>) -> PyResult<String> {
        Ok(self.report(py)?.to_csv())
    }

    /// Aggregated census tables as plain text.
    fn census_tables(&self, py: Python<'_>) -> PyResult<String> {
        Ok(self.report(py)?.render_tables())
    }
}

#[pymodule]
fn knotcensus_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFraction>()?;
    m.add_class::<PyMontesinosCode>()?;
    m.add_class::<PyKnotTable>()?;
    m.add("KnotCensusError", m.py().get_type::<KnotCensusError>())?;
    m.add_function(wrap_pyfunction!(rational_tangles, m)?)?;
    m.add_function(wrap_pyfunction!(montesinos_knots, m)?)?;
    m.add_function(wrap_pyfunction!(jones, m)?)?;
    m.add_function(wrap_pyfunction!(determinant, m)?)?;
    m.add("CENSUS_SIZE", knotdb::CENSUS_SIZE)?;
    m.add("PINNED_SNAPSHOT_SHA256", knotdb::PINNED_SNAPSHOT_SHA256)?;
    Ok(())
}
