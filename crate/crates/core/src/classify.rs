//! Tunnel-number verdicts for census knots by intersecting theorem bounds,
//! and the census report built from them.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::knotdb::{Identification, KnotRecord, KnotTable, MatchResult};
use crate::montesinos::{MontesinosCode, MontesinosInfo};

/// The bounds the engine knows about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RuleId {
    /// `t ≤ b − 1`, and `t ≥ 1` for any nontrivial knot.
    R0,
    /// Alternating knots have `t = 1` iff they are 2-bridge or
    /// `M(e; ±1/2, β₁/α₁, β₂/α₂)` with `α₁, α₂` odd.
    R1,
    /// Clasp Montesinos knots have `t ≤ r − 2`.
    R2,
    /// Montesinos knots with `gcd(α_i) ≠ 1` have `t = r − 1`.
    R3,
    /// Montesinos knots have bridge index `r`.
    R4,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One applied rule: the interval it contributes (`None` for an unbounded
/// side) and a one-line justification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleCitation {
    pub rule: RuleId,
    pub low: Option<u32>,
    pub high: Option<u32>,
    pub note: String,
}

impl fmt::Display for RuleCitation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.low.map_or("-".to_string(), |v| v.to_string());
        let hi = self.high.map_or("-".to_string(), |v| v.to_string());
        write!(f, "{}[{lo},{hi}] {}", self.rule, self.note)
    }
}

/// Tunnel number `t ∈ [low, high]` with the rules that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TunnelVerdict {
    pub low: u32,
    pub high: u32,
    pub trace: Vec<RuleCitation>,
}

impl TunnelVerdict {
    pub fn is_exact(&self) -> bool {
        self.low == self.high
    }

    pub fn exact(&self) -> Option<u32> {
        self.is_exact().then_some(self.low)
    }

    /// Citations joined with `; `.
    pub fn trace_string(&self) -> String {
        self.trace.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("{name}: {low_rule} forces t >= {low} but {high_rule} forces t <= {high}")]
    TheoremConflict { name: String, low_rule: RuleId, low: u32, high_rule: RuleId, high: u32 },
    #[error("{name}: bridge index {bridge_index} differs from the {r} tangles of {code}")]
    DataInconsistency { name: String, bridge_index: u32, r: usize, code: MontesinosCode },
    #[error("{name}: {reason}")]
    Index { name: String, reason: String },
}

/// Classifies one knot. `mont` is the Montesinos structure identified with
/// the record, if any.
pub fn classify_knot(rec: &KnotRecord, mont: Option<&MontesinosInfo>) -> Result<TunnelVerdict, ClassifyError> {
    let b = rec.bridge_index;
    let mut trace = vec![RuleCitation {
        rule: RuleId::R0,
        low: Some(1),
        high: Some(b.saturating_sub(1)),
        note: format!("t <= b - 1 with b = {b}"),
    }];

    if let Some(m) = mont {
        if b as usize != m.r {
            return Err(ClassifyError::DataInconsistency {
                name: rec.name.clone(),
                bridge_index: b,
                r: m.r,
                code: m.code.clone(),
            });
        }
        trace.push(RuleCitation {
            rule: RuleId::R4,
            low: None,
            high: None,
            note: format!("bridge index {b} equals r = {}", m.r),
        });
    }

    if rec.alternating {
        let lackenby = mont.is_some_and(|m| m.lackenby_form);
        trace.push(if b == 2 {
            RuleCitation { rule: RuleId::R1, low: Some(1), high: Some(1), note: "alternating 2-bridge".into() }
        } else if lackenby {
            RuleCitation {
                rule: RuleId::R1,
                low: Some(1),
                high: Some(1),
                note: "alternating M(e; ±1/2, odd, odd)".into(),
            }
        } else {
            RuleCitation {
                rule: RuleId::R1,
                low: Some(2),
                high: None,
                note: "alternating, neither 2-bridge nor M(e; ±1/2, odd, odd)".into(),
            }
        });
    }

    if let Some(m) = mont {
        let r = m.r as u32;
        if m.is_clasp {
            trace.push(RuleCitation {
                rule: RuleId::R2,
                low: None,
                high: Some(r.saturating_sub(2)),
                note: format!("clasp Montesinos with r = {r}"),
            });
        }
        if m.alpha_gcd != 1 {
            trace.push(RuleCitation {
                rule: RuleId::R3,
                low: Some(r - 1),
                high: Some(r - 1),
                note: format!("gcd of denominators is {}", m.alpha_gcd),
            });
        }
    }

    // (bound, rule) of the tightest side so far
    let mut low = (1u32, RuleId::R0);
    let mut high = (u32::MAX, RuleId::R0);
    for c in &trace {
        if let Some(l) = c.low {
            if l > low.0 {
                low = (l, c.rule);
            }
        }
        if let Some(h) = c.high {
            if h < high.0 {
                high = (h, c.rule);
            }
        }
    }
    if low.0 > high.0 {
        return Err(ClassifyError::TheoremConflict {
            name: rec.name.clone(),
            low_rule: low.1,
            low: low.0,
            high_rule: high.1,
            high: high.0,
        });
    }
    Ok(TunnelVerdict { low: low.0, high: high.0, trace })
}

/// Montesinos structure of table knots, keyed by knot name.
#[derive(Debug, Clone, Default)]
pub struct MontesinosIndex {
    by_name: BTreeMap<String, MontesinosInfo>,
    /// Codes whose invariants matched several knots.
    pub ambiguous: Vec<Identification>,
    /// Codes whose invariants matched nothing.
    pub unmatched: Vec<Identification>,
}

impl MontesinosIndex {
    /// Collects unique matches that are not reduced-crossing. A knot matched
    /// by two inequivalent codes is an error.
    pub fn from_identifications<'a>(
        pairs: impl IntoIterator<Item = (&'a MontesinosInfo, &'a Identification)>,
    ) -> Result<MontesinosIndex, ClassifyError> {
        let mut index = MontesinosIndex::default();
        for (info, id) in pairs {
            match &id.result {
                MatchResult::Unique(name) if !id.reduced_crossing => {
                    if let Some(prev) = index.by_name.get(name) {
                        if prev.code != info.code {
                            return Err(ClassifyError::Index {
                                name: name.clone(),
                                reason: format!("matched by both {} and {}", prev.code, info.code),
                            });
                        }
                    }
                    index.by_name.insert(name.clone(), info.clone());
                }
                MatchResult::Unique(_) => {}
                MatchResult::Ambiguous(_) => index.ambiguous.push(id.clone()),
                MatchResult::None => index.unmatched.push(id.clone()),
            }
        }
        Ok(index)
    }

    pub fn get(&self, name: &str) -> Option<&MontesinosInfo> {
        self.by_name.get(name)
    }

    pub fn len(&self) -> usize {
        self.by_name.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_name.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &MontesinosInfo)> {
        self.by_name.iter()
    }
}

/// One classified census knot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub name: String,
    pub crossings: u32,
    pub alternating: bool,
    pub bridge: u32,
    pub montesinos: Option<MontesinosCode>,
    pub clasp: Option<bool>,
    pub alpha: Option<u64>,
    pub t_low: u32,
    pub t_high: u32,
    pub trace: Vec<RuleCitation>,
    /// Non-alternating clasp knots with `r = 3` whose other two denominators
    /// are not both odd.
    pub even_alpha_clasp: bool,
}

/// Coarse structural class of a census knot, in table order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MontesinosClass {
    TwoBridge,
    Montesinos,
    NotMontesinos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaspClass {
    Clasp,
    NonClasp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaClass {
    AlphaOne,
    AlphaNotOne,
}

/// Table cell coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CellKey {
    /// Alternating knots sort first.
    pub non_alternating: bool,
    pub crossings: u32,
    pub bridge: u32,
    pub montesinos: MontesinosClass,
    pub clasp: Option<ClaspClass>,
    pub alpha: Option<AlphaClass>,
    pub t_low: u32,
    pub t_high: u32,
}

impl CellKey {
    fn of(row: &CensusRow, mont: Option<&MontesinosInfo>) -> CellKey {
        let montesinos = match (row.bridge, mont) {
            (2, _) => MontesinosClass::TwoBridge,
            (_, Some(_)) => MontesinosClass::Montesinos,
            (_, None) => MontesinosClass::NotMontesinos,
        };
        CellKey {
            non_alternating: !row.alternating,
            crossings: row.crossings,
            bridge: row.bridge,
            montesinos,
            clasp: mont.map(|m| if m.is_clasp { ClaspClass::Clasp } else { ClaspClass::NonClasp }),
            alpha: mont.map(|m| if m.alpha_gcd == 1 { AlphaClass::AlphaOne } else { AlphaClass::AlphaNotOne }),
            t_low: row.t_low,
            t_high: row.t_high,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    #[serde(flatten)]
    pub key: CellKey,
    pub count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct VerdictTotal {
    pub alternating: bool,
    pub crossings: u32,
    pub t_low: u32,
    pub t_high: u32,
    pub count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MontesinosTotal {
    pub crossings: u32,
    pub alternating: usize,
    pub non_alternating: usize,
}

impl MontesinosTotal {
    pub fn total(&self) -> usize {
        self.alternating + self.non_alternating
    }
}

type TableHeading = (u32, Option<MontesinosClass>, Option<Option<ClaspClass>>, Option<Option<AlphaClass>>);

/// Classified census with the aggregated table cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub snapshot_version: String,
    pub snapshot_sha256: String,
    pub knots: usize,
    pub exact: usize,
    pub cells: Vec<Cell>,
    pub verdict_totals: Vec<VerdictTotal>,
    pub montesinos_totals: Vec<MontesinosTotal>,
    /// Names of non-alternating clasp `r = 3` knots with an even denominator
    /// among the other two tangles.
    pub even_alpha_clasp: Vec<String>,
    pub rows: Vec<CensusRow>,
}

impl CensusReport {
    /// Sum of cell counts matching a predicate.
    pub fn count(&self, pred: impl Fn(&CellKey) -> bool) -> usize {
        self.cells.iter().filter(|c| pred(&c.key)).map(|c| c.count).sum()
    }

    /// Exact verdict totals `t = 1, 2, 3` for one crossing number and
    /// alternation class.
    pub fn exact_totals(&self, alternating: bool, crossings: Option<u32>) -> [usize; 3] {
        let mut out = [0; 3];
        for v in &self.verdict_totals {
            if v.alternating == alternating
                && crossings.is_none_or(|c| c == v.crossings)
                && v.t_low == v.t_high
                && (1..=3).contains(&v.t_low)
            {
                out[v.t_low as usize - 1] += v.count;
            }
        }
        out
    }

    pub fn montesinos_total(&self, crossings: u32) -> Option<MontesinosTotal> {
        self.montesinos_totals.iter().copied().find(|m| m.crossings == crossings)
    }

    /// Nested text rendering: alternation, crossings, bridge index,
    /// Montesinos class, clasp class, alpha class, then verdict counts.
    pub fn render_tables(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "snapshot: {} (sha256 {})", self.snapshot_version, self.snapshot_sha256);
        let _ = writeln!(out, "knots: {}  exact tunnel numbers: {}", self.knots, self.exact);
        for non_alt in [false, true] {
            let title = if non_alt { "Non-alternating knots" } else { "Alternating knots" };
            let _ = writeln!(out, "\n{title}");
            let mut crossings: Vec<u32> = self.cells.iter().map(|c| c.key.crossings).collect();
            crossings.sort_unstable();
            crossings.dedup();
            for n in crossings {
                let in_group = |k: &CellKey| k.non_alternating == non_alt && k.crossings == n;
                let total = self.count(in_group);
                if total == 0 {
                    continue;
                }
                let _ = writeln!(out, "  {n} crossings: {total}");
                // bridge, Montesinos class, clasp and alpha of the previous heading
                let mut last: TableHeading = (0, None, None, None);
                for cell in self.cells.iter().filter(|c| in_group(&c.key)) {
                    let k = cell.key;
                    if last.0 != k.bridge {
                        let n_b = self.count(|c| in_group(c) && c.bridge == k.bridge);
                        let _ = writeln!(out, "    {}-bridge: {n_b}", k.bridge);
                        last = (k.bridge, None, None, None);
                    }
                    if last.1 != Some(k.montesinos) && k.montesinos != MontesinosClass::TwoBridge {
                        let n_m = self.count(|c| in_group(c) && c.bridge == k.bridge && c.montesinos == k.montesinos);
                        let label = match k.montesinos {
                            MontesinosClass::Montesinos => "Montesinos",
                            _ => "Non-Montesinos",
                        };
                        let _ = writeln!(out, "      {label}: {n_m}");
                        last = (k.bridge, Some(k.montesinos), None, None);
                    }
                    if let Some(clasp) = k.clasp {
                        if last.2 != Some(k.clasp) {
                            let n_c = self.count(|c| {
                                in_group(c) && c.bridge == k.bridge && c.montesinos == k.montesinos && c.clasp == k.clasp
                            });
                            let label = if clasp == ClaspClass::Clasp { "Clasp" } else { "Non-clasp" };
                            let _ = writeln!(out, "        {label}: {n_c}");
                            last.2 = Some(k.clasp);
                            last.3 = None;
                        }
                    }
                    if let (Some(ClaspClass::NonClasp), Some(alpha)) = (k.clasp, k.alpha) {
                        if last.3 != Some(k.alpha) {
                            let n_a = self.count(|c| {
                                in_group(c)
                                    && c.bridge == k.bridge
                                    && c.montesinos == k.montesinos
                                    && c.clasp == k.clasp
                                    && c.alpha == k.alpha
                            });
                            let label = if alpha == AlphaClass::AlphaOne { "alpha = 1" } else { "alpha != 1" };
                            let _ = writeln!(out, "          {label}: {n_a}");
                            last.3 = Some(k.alpha);
                        }
                    }
                    let verdict = if k.t_low == k.t_high {
                        format!("t = {}", k.t_low)
                    } else {
                        format!("t in [{}, {}]", k.t_low, k.t_high)
                    };
                    let _ = writeln!(out, "            {verdict}: {}", cell.count);
                }
            }
        }
        let _ = writeln!(out, "\nVerdict totals");
        for v in &self.verdict_totals {
            let alt = if v.alternating { "alternating" } else { "non-alternating" };
            let verdict = if v.t_low == v.t_high {
                format!("t = {}", v.t_low)
            } else {
                format!("t in [{}, {}]", v.t_low, v.t_high)
            };
            let _ = writeln!(out, "  {alt} {} crossings, {verdict}: {}", v.crossings, v.count);
        }
        let _ = writeln!(out, "\nMontesinos knots");
        for m in &self.montesinos_totals {
            let _ = writeln!(
                out,
                "  {} crossings: {} ({} alternating, {} non-alternating)",
                m.crossings,
                m.total(),
                m.alternating,
                m.non_alternating
            );
        }
        if !self.even_alpha_clasp.is_empty() {
            let _ = writeln!(
                out,
                "\nNon-alternating clasp r = 3 knots with an even denominator: {}",
                self.even_alpha_clasp.join(", ")
            );
        }
        out
    }

    /// One row per knot: name, crossings, alternating, bridge, montesinos,
    /// clasp, alpha, t_low, t_high, trace.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        w.write_record(["name", "crossings", "alternating", "bridge", "montesinos", "clasp", "alpha", "t_low", "t_high", "trace"])
            .expect("writing to memory");
        for r in &self.rows {
            let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
            w.write_record([
                r.name.clone(),
                r.crossings.to_string(),
                if r.alternating { "Y" } else { "N" }.to_string(),
                r.bridge.to_string(),
                opt(r.montesinos.as_ref().map(ToString::to_string)),
                opt(r.clasp.map(|c| if c { "Y" } else { "N" }.to_string())),
                opt(r.alpha.map(|a| a.to_string())),
                r.t_low.to_string(),
                r.t_high.to_string(),
                r.trace.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "),
            ])
            .expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 input")
    }
}

/// Classifies every 11 and 12 crossing record of `table`.
pub fn census_report(table: &KnotTable, index: &MontesinosIndex) -> Result<CensusReport, ClassifyError> {
    let mut records: Vec<&KnotRecord> = table.census_records().collect();
    records.sort_by(|a, b| a.name.cmp(&b.name));
    let rows: Vec<(CensusRow, Option<&MontesinosInfo>)> = records
        .par_iter()
        .map(|rec| {
            let mont = index.get(&rec.name);
            let v = classify_knot(rec, mont)?;
            let even_alpha_clasp = !rec.alternating && mont.is_some_and(|m| m.is_clasp && m.r == 3 && !m.lackenby_form);
            Ok((
                CensusRow {
                    name: rec.name.clone(),
                    crossings: rec.crossing_number,
                    alternating: rec.alternating,
                    bridge: rec.bridge_index,
                    montesinos: mont.map(|m| m.code.clone()),
                    clasp: mont.map(|m| m.is_clasp),
                    alpha: mont.map(|m| m.alpha_gcd),
                    t_low: v.low,
                    t_high: v.high,
                    trace: v.trace,
                    even_alpha_clasp,
                },
                mont,
            ))
        })
        .collect::<Result<_, ClassifyError>>()?;

    let mut cells: BTreeMap<CellKey, usize> = BTreeMap::new();
    let mut totals: BTreeMap<(bool, u32, u32, u32), usize> = BTreeMap::new();
    let mut mont_totals: BTreeMap<u32, MontesinosTotal> = BTreeMap::new();
    for (row, mont) in &rows {
        *cells.entry(CellKey::of(row, *mont)).or_default() += 1;
        *totals.entry((!row.alternating, row.crossings, row.t_low, row.t_high)).or_default() += 1;
        let m = mont_totals
            .entry(row.crossings)
            .or_insert(MontesinosTotal { crossings: row.crossings, alternating: 0, non_alternating: 0 });
        if mont.is_some() {
            if row.alternating {
                m.alternating += 1;
            } else {
                m.non_alternating += 1;
            }
        }
    }
    let rows: Vec<CensusRow> = rows.into_iter().map(|(r, _)| r).collect();
    Ok(CensusReport {
        snapshot_version: table.version().to_string(),
        snapshot_sha256: table.checksum().to_string(),
        knots: rows.len(),
        exact: rows.iter().filter(|r| r.t_low == r.t_high).count(),
        cells: cells.into_iter().map(|(key, count)| Cell { key, count }).collect(),
        verdict_totals: totals
            .into_iter()
            .map(|((non_alt, crossings, t_low, t_high), count)| VerdictTotal {
                alternating: !non_alt,
                crossings,
                t_low,
                t_high,
                count,
            })
            .collect(),
        montesinos_totals: mont_totals.into_values().collect(),
        even_alpha_clasp: rows.iter().filter(|r| r.even_alpha_clasp).map(|r| r.name.clone()).collect(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{LaurentPolynomial, Variable};
    use crate::montesinos::structural_flags;

    fn record(name: &str, alternating: bool, bridge_index: u32) -> KnotRecord {
        KnotRecord {
            name: name.into(),
            crossing_number: 12,
            alternating,
            bridge_index,
            determinant: 1,
            jones: LaurentPolynomial::one(Variable::T),
            montesinos_notation: None,
            montesinos_code: None,
            pd: None,
        }
    }

    fn info(code: &str) -> MontesinosInfo {
        structural_flags(&code.parse().unwrap())
    }

    fn rules(v: &TunnelVerdict) -> Vec<RuleId> {
        v.trace.iter().map(|c| c.rule).collect()
    }

    #[test]
    fn alternating_non_montesinos_three_bridge() {
        let v = classify_knot(&record("x", true, 3), None).unwrap();
        assert_eq!((v.low, v.high), (2, 2));
        assert_eq!(rules(&v), [RuleId::R0, RuleId::R1]);
    }

    #[test]
    fn non_alternating_non_montesinos_three_bridge() {
        let v = classify_knot(&record("x", false, 3), None).unwrap();
        assert_eq!((v.low, v.high), (1, 2));
        assert!(!v.is_exact());
    }

    #[test]
    fn alpha_three_four_tangles() {
        let m = info("M(0; 2/3, 1/3, 1/3, 1/3)");
        let v = classify_knot(&record("12a0750", true, 4), Some(&m)).unwrap();
        assert_eq!(v.exact(), Some(3));
        assert!(rules(&v).contains(&RuleId::R3));
    }

    #[test]
    fn clasp_bounds() {
        let lack = info("M(0; 1/2, 1/3, 1/5)");
        let v = classify_knot(&record("a", true, 3), Some(&lack)).unwrap();
        assert_eq!(v.exact(), Some(1));
        let v = classify_knot(&record("b", false, 3), Some(&info("M(0; 1/2, 1/4, 1/3)"))).unwrap();
        assert_eq!(v.exact(), Some(1));
        let v = classify_knot(&record("c", false, 4), Some(&info("M(0; 1/2, 1/3, 1/3, 1/5)"))).unwrap();
        assert_eq!((v.low, v.high), (1, 2));
    }

    #[test]
    fn errors() {
        let m = info("M(0; 1/2, 1/3, 1/5)");
        assert!(matches!(
            classify_knot(&record("x", true, 4), Some(&m)),
            Err(ClassifyError::DataInconsistency { r: 3, bridge_index: 4, .. })
        ));
        // alternating clasp r = 3 with an even denominator
        let m = info("M(0; 1/2, 1/4, 1/3)");
        assert_eq!(
            classify_knot(&record("y", true, 3), Some(&m)),
            Err(ClassifyError::TheoremConflict {
                name: "y".into(),
                low_rule: RuleId::R1,
                low: 2,
                high_rule: RuleId::R2,
                high: 1,
            })
        );
    }

    #[test]
    fn montesinos_info_never_widens() {
        for (alt, b, code) in [
            (true, 3, "M(0; 1/2, 1/3, 1/5)"),
            (false, 3, "M(0; 1/2, 1/3, 1/3)"),
            (false, 4, "M(0; 2/3, 1/3, 1/3, 1/3)"),
            (false, 3, "M(0; 2/5, 1/3, 1/3)"),
        ] {
            let rec = record("k", alt, b);
            let bare = classify_knot(&rec, None).unwrap();
            let with = classify_knot(&rec, Some(&info(code))).unwrap();
            assert!(with.high - with.low <= bare.high - bare.low, "{code}");
        }
    }
}
