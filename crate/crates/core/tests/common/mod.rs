//! Oracles and fixtures shared by the integration tests. Nothing here calls
//! into the continued-fraction or canonical-form code under test.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use knotcensus::classify::MontesinosIndex;
use knotcensus::diagram::PDCode;
use knotcensus::knotdb::{identify, load_knot_table, ColumnMap, Identification, KnotTable};
use knotcensus::montesinos::{enumerate_montesinos_knots, MontesinosInfo};
use rayon::prelude::*;

pub fn snapshot_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/knotinfo_le12.csv")
}

pub fn snapshot() -> KnotTable {
    load_knot_table(&snapshot_path(), &ColumnMap::default()).expect("pinned snapshot loads")
}

/// Reduced `(num, den)` with `den ≥ 0`; `(1, 0)` is ∞.
pub type Frac = (i64, i64);

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

pub fn reduce(n: i64, d: i64) -> Frac {
    assert!(n != 0 || d != 0);
    let g = gcd(n, d);
    let (n, d) = (n / g, d / g);
    if d < 0 || (d == 0 && n < 0) { (-n, -d) } else { (n, d) }
}

/// `a1 + 1/(a2 + 1/(... + 1/am))` on projective fractions.
pub fn eval_sequence(terms: &[i64]) -> Frac {
    let mut acc: Frac = (1, 0);
    for &a in terms.iter().rev() {
        // a + 1/acc = (a*p + q)/p
        let (p, q) = acc;
        acc = reduce(a * p + q, p);
    }
    acc
}

/// All sequences of nonzero integers whose absolute values sum to `total`,
/// each optionally preceded by a 0 term.
pub fn signed_sequences(total: u32) -> Vec<Vec<i64>> {
    fn rec(left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for part in 1..=left {
            for s in [part, -part] {
                cur.push(s);
                rec(left - part, cur, out);
                cur.pop();
            }
        }
    }
    let mut plain = Vec::new();
    rec(i64::from(total), &mut Vec::new(), &mut plain);
    let mut out = plain.clone();
    out.extend(plain.into_iter().map(|mut s| {
        s.insert(0, 0);
        s
    }));
    out
}

/// Values reachable with exactly `total` signed twists, closed under
/// reciprocal and negation.
pub fn reachable(total: u32) -> BTreeSet<Frac> {
    if total == 0 {
        return [(0, 1), (1, 0)].into();
    }
    let mut out = BTreeSet::new();
    for seq in signed_sequences(total) {
        let (n, d) = eval_sequence(&seq);
        for f in [(n, d), (-n, d), (d, n), (-d, n)] {
            if f.0 != 0 || f.1 != 0 {
                out.insert(reduce(f.0, f.1));
            }
        }
    }
    out
}

/// Brute-force `RT(ℓ)` for every `ℓ ≤ max`: values first reachable with
/// exactly `ℓ` twists.
pub fn rt_oracle(max: u32) -> Vec<BTreeSet<Frac>> {
    let mut seen = BTreeSet::new();
    (0..=max)
        .map(|l| {
            let fresh: BTreeSet<Frac> = reachable(l).difference(&seen).copied().collect();
            seen.extend(fresh.iter().copied());
            fresh
        })
        .collect()
}

/// Closure of a braid word on `strands` strands. Generator `i` (1-based)
/// crosses positions `i` and `i + 1`; a positive letter sends the strand
/// entering at position `i` under.
pub fn braid_closure(strands: usize, word: &[i32]) -> PDCode {
    let mut current: Vec<u32> = (1..=strands as u32).collect();
    let mut next = strands as u32 + 1;
    let mut crossings = Vec::new();
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        assert!(i + 1 < strands);
        let (a, b) = (current[i], current[i + 1]);
        let (c, d) = (next, next + 1);
        next += 2;
        // a: bottom-left, b: bottom-right, c: top-left, d: top-right
        crossings.push(if g > 0 { [a, b, d, c] } else { [b, d, c, a] });
        current[i] = c;
        current[i + 1] = d;
    }
    // identify each top edge with the bottom edge of its position
    let rename = |e: u32| -> u32 { current.iter().position(|&t| t == e).map_or(e, |p| p as u32 + 1) };
    let crossings: Vec<[u32; 4]> = crossings.iter().map(|x| x.map(rename)).collect();
    PDCode::new(crossings, 0).expect("braid closures are valid diagrams")
}

/// Enumerated and identified Montesinos codes for 11 and 12 crossings.
pub struct Census {
    pub table: KnotTable,
    pub identified: Vec<(u32, MontesinosInfo, Identification)>,
}

impl Census {
    pub fn build() -> Census {
        let table = snapshot();
        let mut identified = Vec::new();
        for n in [11, 12] {
            let infos = enumerate_montesinos_knots(n);
            let ids: Vec<Identification> =
                infos.par_iter().map(|i| identify(i, &table).expect("census diagrams are small")).collect();
            identified.extend(infos.into_iter().zip(ids).map(|(i, d)| (n, i, d)));
        }
        Census { table, identified }
    }

    pub fn index(&self) -> MontesinosIndex {
        MontesinosIndex::from_identifications(self.identified.iter().map(|(_, i, d)| (i, d)))
            .expect("no knot is matched by inequivalent codes")
    }
}
