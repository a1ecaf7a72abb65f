//! Montesinos codes `M(e; β₁/α₁, ..., β_r/α_r)`: canonical forms, structural
//! predicates and enumeration by crossing count.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::diagram::{count_components, montesinos_pd, DiagramError};
use crate::ratfrac::{compositions, crossing_number, enumerate_rational_tangles, Fraction, RatError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MontesinosError {
    #[error("a Montesinos code needs at least 3 tangles, got {0}")]
    TooFewTangles(usize),
    #[error("tangle {0} is an integer, zero or ∞ tangle")]
    MalformedCode(Fraction),
    #[error("cannot parse Montesinos code from {0:?}")]
    Parse(String),
    #[error(transparent)]
    Rat(#[from] RatError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// `M(e; β₁/α₁, ..., β_r/α_r)` with `r ≥ 3` non-integer tangles.
///
/// The derived order compares `e` first and then the tangle sequence by value;
/// the canonical form is the maximum of the equivalence class under it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MontesinosCode {
    e: i64,
    tangles: Vec<Fraction>,
}

impl MontesinosCode {
    pub fn new(e: i64, tangles: Vec<Fraction>) -> Result<Self, MontesinosError> {
        if tangles.len() < 3 {
            return Err(MontesinosError::TooFewTangles(tangles.len()));
        }
        if let Some(&bad) = tangles.iter().find(|f| f.is_degenerate() || f.is_integer()) {
            return Err(MontesinosError::MalformedCode(bad));
        }
        Ok(MontesinosCode { e, tangles })
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn tangles(&self) -> &[Fraction] {
        &self.tangles
    }

    /// Number of rational tangles, `r`.
    pub fn r(&self) -> usize {
        self.tangles.len()
    }

    /// Integer parts moved into `e`, leaving every tangle in `(0, 1)`.
    pub fn normalized(&self) -> MontesinosCode {
        let mut e = self.e;
        let tangles = self
            .tangles
            .iter()
            .map(|f| {
                let k = f.floor();
                e += k;
                f.add_integer(-k).expect("shifting a reduced fraction stays in range")
            })
            .collect();
        MontesinosCode { e, tangles }
    }

    /// Mirror image `M(-e; -β₁/α₁, ...)`.
    pub fn mirror(&self) -> MontesinosCode {
        MontesinosCode { e: -self.e, tangles: self.tangles.iter().map(|&f| -f).collect() }
    }

    pub fn rotated(&self, k: usize) -> MontesinosCode {
        let mut tangles = self.tangles.clone();
        let r = tangles.len();
        tangles.rotate_left(k % r);
        MontesinosCode { e: self.e, tangles }
    }

    pub fn reversed(&self) -> MontesinosCode {
        let mut tangles = self.tangles.clone();
        tangles.reverse();
        MontesinosCode { e: self.e, tangles }
    }

    /// Moves `k` half-twists from `e` into tangle `i` (or back, for negative `k`).
    pub fn shift_twist(&self, i: usize, k: i64) -> Result<MontesinosCode, MontesinosError> {
        let mut out = self.clone();
        out.tangles[i] = out.tangles[i].add_integer(k)?;
        out.e -= k;
        Ok(out)
    }

    /// Canonical representative of the class under integer shifts between
    /// `e` and the tangles, cyclic rotation, reversal and mirror image.
    ///
    /// Every tangle is brought into `(0, 1)`; among the normalized forms of
    /// the code and of its mirror, over all dihedral rearrangements, the one
    /// with the largest `e` wins, ties going to the lexicographically largest
    /// tangle sequence.
    pub fn canonicalize(&self) -> MontesinosCode {
        let mut best: Option<MontesinosCode> = None;
        for base in [self.normalized(), self.mirror().normalized()] {
            for seq in [base.clone(), base.reversed()] {
                for k in 0..seq.r() {
                    let cand = seq.rotated(k);
                    if best.as_ref().is_none_or(|b| cand > *b) {
                        best = Some(cand);
                    }
                }
            }
        }
        best.expect("r >= 3")
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonicalize()
    }

    /// Crossings of the side-by-side diagram, `Σ c(β_i/α_i) + |e|`.
    pub fn diagram_crossings(&self) -> u64 {
        self.tangles.iter().map(|&f| crossing_number(f).expect("non-degenerate")).sum::<u64>()
            + self.e.unsigned_abs()
    }

    /// Fewest crossings over the diagrams of this link reachable by moving
    /// twists between `e` and the tangles.
    ///
    /// With every tangle normalized into `(0, 1)`, a tangle shifted by `k ≥ 0`
    /// costs `k` extra crossings and one shifted by `k < 0` costs `|k| - 1`,
    /// so a positive `e` costs `e` and a negative one `max(|e| - r, 0)`.
    pub fn crossing_number(&self) -> u64 {
        let n = self.normalized();
        let base: u64 = n.tangles.iter().map(|&f| crossing_number(f).expect("non-degenerate")).sum();
        let extra = if n.e >= 0 {
            n.e as u64
        } else {
            n.e.unsigned_abs().saturating_sub(n.r() as u64)
        };
        base + extra
    }

    /// An `e = 0` code of the same link whose diagram has
    /// [`crossing_number`](Self::crossing_number) crossings.
    pub fn zero_e_form(&self) -> MontesinosCode {
        let mut n = self.normalized();
        let e = n.e;
        n.e = 0;
        if e >= 0 {
            n.tangles[0] = n.tangles[0].add_integer(e).expect("in range");
        } else {
            let k = e.unsigned_abs() as usize;
            let r = n.r();
            for f in n.tangles.iter_mut().take(k.min(r)) {
                *f = f.add_integer(-1).expect("in range");
            }
            if k > r {
                n.tangles[0] = n.tangles[0].add_integer(-((k - r) as i64)).expect("in range");
            }
        }
        n
    }
}

impl fmt::Display for MontesinosCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({};", self.e)?;
        for (i, t) in self.tangles.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{}/{}", t.num(), t.den())?;
        }
        f.write_str(")")
    }
}

impl FromStr for MontesinosCode {
    type Err = MontesinosError;

    /// Parses `M(e; b1/a1, ..., br/ar)`; `M(b1/a1, ...)` means `e = 0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MontesinosError::Parse(s.to_string());
        let inner = s
            .trim()
            .strip_prefix("M(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (e, list) = match inner.split_once(';') {
            Some((e, rest)) => (e.trim().parse::<i64>().map_err(|_| bad())?, rest),
            None => (0, inner),
        };
        let tangles = list
            .split(',')
            .map(|t| t.parse::<Fraction>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        MontesinosCode::new(e, tangles)
    }
}

impl Serialize for MontesinosCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MontesinosCode {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Structural data of a canonical Montesinos code.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MontesinosInfo {
    /// Canonical code.
    pub code: MontesinosCode,
    /// The `e = 0` code whose diagram is used for invariants.
    pub diagram_code: MontesinosCode,
    pub r: usize,
    /// `gcd(α₁, ..., α_r)`.
    pub alpha_gcd: u64,
    /// Exactly one tangle is `±1/2` (mod 1).
    pub is_clasp: bool,
    /// `M(e; ±1/2, β₁/α₁, β₂/α₂)` with `α₁`, `α₂` odd.
    pub lackenby_form: bool,
    pub diagram_crossings: u64,
}

/// Canonicalizes `code` and computes its structural flags. The diagram code
/// is the minimal `e = 0` form.
pub fn structural_flags(code: &MontesinosCode) -> MontesinosInfo {
    let canonical = code.canonicalize();
    let dens: Vec<u64> = canonical.tangles.iter().map(|f| f.den() as u64).collect();
    let alpha_gcd = dens.iter().fold(0u64, |g, &d| g.gcd(&d));
    let halves = dens.iter().filter(|&&d| d == 2).count();
    let is_clasp = halves == 1;
    let lackenby_form =
        is_clasp && dens.len() == 3 && dens.iter().filter(|&&d| d != 2).all(|d| d % 2 == 1);
    let diagram_code = canonical.zero_e_form();
    MontesinosInfo {
        r: canonical.r(),
        alpha_gcd,
        is_clasp,
        lackenby_form,
        diagram_crossings: diagram_code.diagram_crossings(),
        diagram_code,
        code: canonical,
    }
}

/// All Montesinos knots with an `n`-crossing `M(0; ...)` diagram, one entry
/// per canonical code, sorted by canonical code.
///
/// For each `r` in `3..=n/2` and each composition of `n` into `r` parts of at
/// least 2, every tuple of non-integer tangles from `RT(n_1) × ... × RT(n_r)`
/// is closed up; single-component closures are kept and deduplicated. The
/// smallest enumerated tuple of a class becomes its diagram code, so every
/// entry has `diagram_crossings == n`.
pub fn enumerate_montesinos_knots(n: u32) -> Vec<MontesinosInfo> {
    let tangle_sets: Vec<Vec<Fraction>> = (0..=n)
        .map(|l| {
            if l < 2 {
                Vec::new()
            } else {
                enumerate_rational_tangles(l).non_integer().collect()
            }
        })
        .collect();
    let work: Vec<Vec<u32>> = (3..=(n / 2) as usize)
        .flat_map(|r| compositions(n, 2, Some(r)))
        .collect();

    let found: BTreeMap<MontesinosCode, MontesinosCode> = work
        .par_iter()
        .map(|parts| {
            let mut local: BTreeMap<MontesinosCode, MontesinosCode> = BTreeMap::new();
            let choices: Vec<&[Fraction]> = parts.iter().map(|&p| tangle_sets[p as usize].as_slice()).collect();
            for_each_tuple(&choices, |tuple| {
                let code = MontesinosCode { e: 0, tangles: tuple.to_vec() };
                let pd = montesinos_pd(&code).expect("valid code");
                if count_components(&pd).expect("constructed diagrams are valid") == 1 {
                    let canonical = code.canonicalize();
                    match local.get_mut(&canonical) {
                        Some(rep) if *rep <= code => {}
                        Some(rep) => *rep = code,
                        None => {
                            local.insert(canonical, code);
                        }
                    }
                }
            });
            local
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                match a.get_mut(&k) {
                    Some(rep) if *rep <= v => {}
                    Some(rep) => *rep = v,
                    None => {
                        a.insert(k, v);
                    }
                }
            }
            a
        });

    found
        .into_values()
        .map(|rep| {
            let mut info = structural_flags(&rep);
            info.diagram_code = rep;
            info.diagram_crossings = n as u64;
            info
        })
        .collect()
}

fn for_each_tuple(choices: &[&[Fraction]], mut visit: impl FnMut(&[Fraction])) {
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; choices.len()];
    let mut tuple: Vec<Fraction> = choices.iter().map(|c| c[0]).collect();
    loop {
        visit(&tuple);
        let mut i = choices.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < choices[i].len() {
                tuple[i] = choices[i][idx[i]];
                break;
            }
            idx[i] = 0;
            tuple[i] = choices[i][0];
        }
    }
}
