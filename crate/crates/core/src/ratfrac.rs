//! Exact rational-tangle calculus.
//!
//! A rational tangle is classified by a reduced fraction `β/α` with `α > 0`.
//! This module evaluates and expands continued fractions, computes tangle
//! crossing numbers and enumerates every tangle fraction with a given number
//! of crossings.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatError {
    #[error("continued fraction is empty")]
    EmptyContinuedFraction,
    #[error("continued fraction {terms:?} divides by zero while nesting")]
    MalformedContinuedFraction { terms: Vec<i64> },
    #[error("fraction {0} is the 0 or ∞ tangle")]
    DegenerateTangle(Fraction),
    #[error("0/0 is not a fraction")]
    ZeroOverZero,
    #[error("arithmetic overflow in fraction {num}/{den}")]
    Overflow { num: i128, den: i128 },
    #[error("cannot parse fraction from {0:?}")]
    Parse(String),
}

/// Reduced fraction `num/den` with `den > 0`, or the ∞ tangle `1/0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: i64,
    den: i64,
}

impl Fraction {
    pub const ZERO: Fraction = Fraction { num: 0, den: 1 };
    pub const INFINITY: Fraction = Fraction { num: 1, den: 0 };

    /// Builds `num/den` in lowest terms. A zero denominator yields the ∞ tangle.
    pub fn new(num: i64, den: i64) -> Result<Self, RatError> {
        Self::from_i128(num as i128, den as i128)
    }

    pub fn integer(n: i64) -> Self {
        Fraction { num: n, den: 1 }
    }

    fn from_i128(num: i128, den: i128) -> Result<Self, RatError> {
        if den == 0 {
            return if num == 0 {
                Err(RatError::ZeroOverZero)
            } else {
                Ok(Self::INFINITY)
            };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(num), Ok(den)) => Ok(Fraction { num, den }),
            _ => Err(RatError::Overflow { num, den }),
        }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    /// Zero and ∞ are the two tangles without crossings.
    pub fn is_degenerate(&self) -> bool {
        self.is_zero() || self.is_infinite()
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn recip(&self) -> Fraction {
        if self.num < 0 {
            Fraction { num: -self.den, den: -self.num }
        } else {
            Fraction { num: self.den, den: self.num }
        }
    }

    pub fn abs(&self) -> Fraction {
        Fraction { num: self.num.abs(), den: self.den }
    }

    /// Largest integer `k` with `k <= self`. Undefined for ∞.
    pub fn floor(&self) -> i64 {
        debug_assert!(!self.is_infinite());
        Integer::div_floor(&self.num, &self.den)
    }

    /// `self + k`; ∞ absorbs integers.
    pub fn add_integer(&self, k: i64) -> Result<Fraction, RatError> {
        if self.is_infinite() {
            return Ok(*self);
        }
        Self::from_i128(self.num as i128 + k as i128 * self.den as i128, self.den as i128)
    }
}

impl std::ops::Neg for Fraction {
    type Output = Fraction;

    fn neg(self) -> Fraction {
        if self.is_infinite() {
            self
        } else {
            Fraction { num: -self.num, den: self.den }
        }
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (self.num as i128 * other.den as i128)
                .cmp(&(other.num as i128 * self.den as i128)),
        }
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Fraction {
    type Err = RatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RatError::Parse(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                Fraction::new(n, d)
            }
            None => t.parse().map(Fraction::integer).map_err(|_| bad()),
        }
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// All-positive continued fraction `[a_1, ..., a_m]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    terms: Vec<u64>,
}

impl ContinuedFraction {
    pub fn new(terms: Vec<u64>) -> Result<Self, RatError> {
        if terms.is_empty() {
            return Err(RatError::EmptyContinuedFraction);
        }
        if terms.contains(&0) {
            return Err(RatError::MalformedContinuedFraction {
                terms: terms.iter().map(|&t| t as i64).collect(),
            });
        }
        Ok(ContinuedFraction { terms })
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    /// Last term at least 2, unless there is a single term.
    pub fn is_canonical(&self) -> bool {
        self.terms.len() == 1 || self.terms.last().is_some_and(|&t| t >= 2)
    }

    /// Number of crossings in the twist-region diagram it describes.
    pub fn crossings(&self) -> u64 {
        self.terms.iter().sum()
    }

    pub fn value(&self) -> Result<Fraction, RatError> {
        let terms: Vec<i64> = self.terms.iter().map(|&t| t as i64).collect();
        cf_eval(&terms)
    }
}

/// Canonical expansion of `|f|`. When `|f| < 1` the expansion is of `1/|f|`
/// and `leading_zero` is set, so the full expansion reads `[0, a_1, ..., a_m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalExpansion {
    pub cf: ContinuedFraction,
    pub leading_zero: bool,
}

impl CanonicalExpansion {
    /// Terms with the leading zero re-inserted when flagged.
    pub fn full_terms(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.cf.terms.len() + 1);
        if self.leading_zero {
            out.push(0);
        }
        out.extend(self.cf.terms.iter().map(|&t| t as i64));
        out
    }
}

/// Evaluates `a_1 + 1/(a_2 + 1/(... + 1/a_m))` exactly.
pub fn cf_eval(terms: &[i64]) -> Result<Fraction, RatError> {
    let (&last, rest) = terms.split_last().ok_or(RatError::EmptyContinuedFraction)?;
    let (mut num, mut den) = (last as i128, 1i128);
    for &a in rest.iter().rev() {
        if num == 0 {
            return Err(RatError::MalformedContinuedFraction { terms: terms.to_vec() });
        }
        // a + den/num
        let next_num = a as i128 * num + den;
        den = num;
        num = next_num;
        if num.abs() > i64::MAX as i128 || den.abs() > i64::MAX as i128 {
            return Err(RatError::Overflow { num, den });
        }
    }
    Fraction::from_i128(num, den)
}

/// Euclidean expansion of `|f|`; see [`CanonicalExpansion`].
pub fn cf_canonical(f: Fraction) -> Result<CanonicalExpansion, RatError> {
    if f.is_degenerate() {
        return Err(RatError::DegenerateTangle(f));
    }
    let (p, q) = (f.num.unsigned_abs(), f.den as u64);
    let leading_zero = p < q;
    let (mut a, mut b) = if leading_zero { (q, p) } else { (p, q) };
    let mut terms = Vec::new();
    while b != 0 {
        terms.push(a / b);
        (a, b) = (b, a % b);
    }
    Ok(CanonicalExpansion {
        cf: ContinuedFraction { terms },
        leading_zero,
    })
}

/// Crossing number of the rational tangle with fraction `f`.
pub fn crossing_number(f: Fraction) -> Result<u64, RatError> {
    cf_canonical(f).map(|e| e.cf.crossings())
}

/// The set `RT(ℓ)` of tangle fractions with exactly `ℓ` crossings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TangleSet {
    pub crossings: u32,
    pub fractions: BTreeSet<Fraction>,
}

impl TangleSet {
    pub fn len(&self) -> usize {
        self.fractions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fractions.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Fraction> {
        self.fractions.iter()
    }

    /// Members that are not integer tangles.
    pub fn non_integer(&self) -> impl Iterator<Item = Fraction> + '_ {
        self.fractions.iter().copied().filter(|f| !f.is_integer())
    }
}

/// Ordered compositions of `total` into `parts` parts, each at least `min_part`.
/// `parts == None` yields compositions of every length.
pub fn compositions(total: u32, min_part: u32, parts: Option<usize>) -> Vec<Vec<u32>> {
    fn rec(
        remaining: u32,
        min_part: u32,
        parts: Option<usize>,
        prefix: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if remaining == 0 {
            if parts.is_none_or(|p| p == prefix.len()) {
                out.push(prefix.clone());
            }
            return;
        }
        if parts.is_some_and(|p| prefix.len() >= p) {
            return;
        }
        for first in min_part..=remaining {
            prefix.push(first);
            rec(remaining - first, min_part, parts, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if total > 0 && min_part > 0 {
        rec(total, min_part, parts, &mut Vec::new(), &mut out);
    }
    out
}

/// Enumerates `RT(ℓ)`: every composition of `ℓ` is evaluated as a continued
/// fraction, closed under reciprocal and negation, and filtered to crossing
/// number exactly `ℓ`.
pub fn enumerate_rational_tangles(crossings: u32) -> TangleSet {
    let mut fractions = BTreeSet::new();
    for comp in compositions(crossings, 1, None) {
        let terms: Vec<i64> = comp.iter().map(|&a| a as i64).collect();
        // all-positive terms never hit a zero denominator
        let v = cf_eval(&terms).expect("positive continued fraction");
        for g in [v, v.recip()] {
            for h in [g, -g] {
                if crossing_number(h).is_ok_and(|c| c == crossings as u64) {
                    fractions.insert(h);
                }
            }
        }
    }
    TangleSet { crossings, fractions }
}
