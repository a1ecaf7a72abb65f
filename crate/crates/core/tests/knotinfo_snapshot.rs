//! Cross-checks of the invariant code against the pinned KnotInfo snapshot.

use std::path::PathBuf;

use knotcensus::diagram::{montesinos_pd, PDCode};
use knotcensus::invariants::{determinant, jones, mirror_canonical, Variable};
use knotcensus::classify::classify_knot;
use knotcensus::knotdb::{identify, load_knot_table, parse_jones_string, ColumnMap, KnotTable, MatchResult, PINNED_SNAPSHOT_VERSION};
use knotcensus::montesinos::structural_flags;
use rayon::prelude::*;

fn snapshot() -> KnotTable {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/knotinfo_le12.csv");
    load_knot_table(&path, &ColumnMap::default()).expect("pinned snapshot loads")
}

#[test]
fn snapshot_is_pinned_and_complete() {
    let table = snapshot();
    assert_eq!(table.version(), PINNED_SNAPSHOT_VERSION);
    table.check_completeness().unwrap();
    assert!(table.warnings().is_empty(), "{:?}", table.warnings());
    let k = table.get("12a0554").unwrap();
    assert_eq!((k.crossing_number, k.alternating, k.bridge_index), (12, true, 4));
    assert_eq!(table.get("12a_554").unwrap().name, "12a0554");
}

/// The bracket and writhe conventions must reproduce KnotInfo's Jones
/// polynomial exactly, chirality included, from KnotInfo's own PD codes.
#[test]
fn pd_codes_reproduce_tabulated_jones() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/knotinfo_le12.csv");
    let mut reader = csv::Reader::from_path(path).unwrap();
    let rows: Vec<(String, String, String)> = reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[0].to_string(), r[5].to_string(), r[7].to_string())
        })
        .collect();
    assert_eq!(rows.len(), 2977);
    let failures: Vec<String> = rows
        .par_iter()
        .filter_map(|(name, poly, pd)| {
            let expected = parse_jones_string(poly, Variable::T).unwrap();
            let pd = PDCode::from_nested_lists(pd).unwrap();
            let got = jones(&pd).unwrap();
            (got != expected).then(|| format!("{name}: {got} vs {expected}"))
        })
        .collect();
    assert!(failures.is_empty(), "{} mismatches, first: {:?}", failures.len(), failures.first());
}

/// Reading `K(b1/a1;...;br/ar)` as `M(0; b1/a1, ..., br/ar)` gives a diagram
/// of the named knot.
#[test]
fn montesinos_notation_matches_invariants() {
    let table = snapshot();
    let coded: Vec<_> = table.records().iter().filter(|r| r.montesinos_code.is_some()).collect();
    assert_eq!(coded.len(), 721);
    let failures: Vec<String> = coded
        .par_iter()
        .filter_map(|rec| {
            let code = rec.montesinos_code.as_ref().unwrap().zero_e_form();
            let pd = montesinos_pd(&code).unwrap();
            let det = determinant(&pd).unwrap();
            let poly = mirror_canonical(&jones(&pd).unwrap());
            (det != rec.determinant || poly != rec.jones).then(|| format!("{}: {code}", rec.name))
        })
        .collect();
    assert!(failures.is_empty(), "{} mismatches, first: {:?}", failures.len(), &failures[..failures.len().min(5)]);
}

#[test]
fn named_four_tangle_knots() {
    let table = snapshot();
    for (code, name) in [("M(0; 2/3, 2/3, 2/3, 1/3)", "12a0554"), ("M(0; 2/3, 1/3, 1/3, 1/3)", "12a0750")] {
        let info = structural_flags(&code.parse().unwrap());
        assert_eq!((info.r, info.alpha_gcd, info.is_clasp), (4, 3, false));
        let id = identify(&info, &table).unwrap();
        assert_eq!(id.result, MatchResult::Unique(name.into()));
        assert!(!id.reduced_crossing);
        let rec = table.get(name).unwrap();
        assert_eq!(rec.montesinos_code.as_ref(), Some(&info.code));
        assert_eq!(classify_knot(rec, Some(&info)).unwrap().exact(), Some(3));
    }
}

#[test]
fn unknown_invariants_do_not_match() {
    let table = snapshot();
    // 13 crossings, beyond the snapshot
    let info = structural_flags(&"M(0; 1/3, 1/5, 1/5)".parse().unwrap());
    assert_eq!(identify(&info, &table).unwrap().result, MatchResult::None);
}
