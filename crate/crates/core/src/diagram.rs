//! Planar diagram codes for rational tangles and Montesinos closures.
//!
//! A crossing is a quadruple `(e0, e1, e2, e3)` of edge labels listed
//! counterclockwise, with the strand `e0–e2` passing under the strand
//! `e1–e3`. Closed diagrams are renumbered so that every edge label is in
//! `1..=2n` in traversal order and `e0` is the incoming under-edge.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::montesinos::MontesinosCode;
use crate::ratfrac::{cf_canonical, Fraction, RatError};

pub type Edge = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("edge {edge} occurs {count} times (expected exactly 2)")]
    InvalidIncidence { edge: Edge, count: usize },
    #[error("diagram has {components} components; orientation is only defined for knots")]
    MultiComponent { components: usize },
    #[error("closed diagram requested for degenerate tangle {0}")]
    DegenerateTangle(Fraction),
    #[error("cannot parse PD code: {0}")]
    Parse(String),
    #[error(transparent)]
    Rat(#[from] RatError),
}

/// Union-find over dense edge indices; counts the closed curves produced by
/// pairing edge ends at each crossing.
#[derive(Debug, Clone)]
pub(crate) struct LoopCounter {
    parent: Vec<usize>,
}

impl LoopCounter {
    pub(crate) fn new(edges: usize) -> Self {
        LoopCounter { parent: (0..edges).collect() }
    }

    pub(crate) fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i;
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn join(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    pub(crate) fn loops(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}

/// A closed planar diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PDCode {
    crossings: Vec<[Edge; 4]>,
    free_loops: u32,
}

impl PDCode {
    /// Validates edge incidence; labels are kept as given.
    pub fn new(crossings: Vec<[Edge; 4]>, free_loops: u32) -> Result<Self, DiagramError> {
        let pd = PDCode { crossings, free_loops };
        pd.check_incidence()?;
        Ok(pd)
    }

    pub fn unknot() -> Self {
        PDCode { crossings: Vec::new(), free_loops: 1 }
    }

    pub fn crossings(&self) -> &[[Edge; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> u32 {
        self.free_loops
    }

    fn check_incidence(&self) -> Result<(), DiagramError> {
        let mut counts: HashMap<Edge, usize> = HashMap::new();
        for x in &self.crossings {
            for &e in x {
                *counts.entry(e).or_default() += 1;
            }
        }
        let mut bad: Vec<_> = counts.into_iter().filter(|&(_, c)| c != 2).collect();
        bad.sort_unstable();
        match bad.first() {
            Some(&(edge, count)) => Err(DiagramError::InvalidIncidence { edge, count }),
            None => Ok(()),
        }
    }

    /// Crossings with edges relabelled densely as `0..2n`, in first-seen order.
    pub(crate) fn dense(&self) -> (Vec<[usize; 4]>, usize) {
        let mut index: HashMap<Edge, usize> = HashMap::new();
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                x.map(|e| {
                    let next = index.len();
                    *index.entry(e).or_insert(next)
                })
            })
            .collect();
        (crossings, index.len())
    }

    /// Other slot holding the same edge as `(crossing, slot)`.
    fn partner_table(&self) -> Vec<[(usize, usize); 4]> {
        let mut seen: HashMap<Edge, (usize, usize)> = HashMap::new();
        let mut table = vec![[(usize::MAX, usize::MAX); 4]; self.crossings.len()];
        for (c, x) in self.crossings.iter().enumerate() {
            for (s, &e) in x.iter().enumerate() {
                if let Some((c2, s2)) = seen.remove(&e) {
                    table[c][s] = (c2, s2);
                    table[c2][s2] = (c, s);
                } else {
                    seen.insert(e, (c, s));
                }
            }
        }
        table
    }

    /// Walks every strand. Each component is started at the lowest unvisited
    /// (crossing, slot) and entered through that slot. Returns, per component,
    /// the sequence of `(crossing, entry slot)` passes.
    fn traverse(&self) -> Vec<Vec<(usize, usize)>> {
        let partner = self.partner_table();
        let mut used = vec![[false; 4]; self.crossings.len()];
        let mut components = Vec::new();
        for c0 in 0..self.crossings.len() {
            for s0 in 0..4 {
                if used[c0][s0] {
                    continue;
                }
                let mut passes = Vec::new();
                let (mut c, mut s) = (c0, s0);
                while !used[c][s] {
                    let out = (s + 2) % 4;
                    used[c][s] = true;
                    used[c][out] = true;
                    passes.push((c, s));
                    (c, s) = partner[c][out];
                }
                components.push(passes);
            }
        }
        components
    }

    /// Relabels edges `1..=2n` in traversal order and rotates each crossing so
    /// slot 0 is the incoming under-edge.
    pub fn renumbered(&self) -> PDCode {
        let mut labels: HashMap<(usize, usize), Edge> = HashMap::new();
        let partner = self.partner_table();
        let mut under_entry = vec![0usize; self.crossings.len()];
        let mut next: Edge = 1;
        for passes in self.traverse() {
            for &(c, s) in &passes {
                if s % 2 == 0 {
                    under_entry[c] = s;
                }
                for slot in [s, (s + 2) % 4] {
                    if let std::collections::hash_map::Entry::Vacant(v) = labels.entry((c, slot)) {
                        v.insert(next);
                        labels.insert(partner[c][slot], next);
                        next += 1;
                    }
                }
            }
        }
        let crossings = (0..self.crossings.len())
            .map(|c| {
                let x = [0, 1, 2, 3].map(|s| labels[&(c, s)]);
                if under_entry[c] == 2 {
                    [x[2], x[3], x[0], x[1]]
                } else {
                    x
                }
            })
            .collect();
        PDCode { crossings, free_loops: self.free_loops }
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> PDCode {
        PDCode {
            crossings: self.crossings.iter().map(|&[a, b, c, d]| [b, c, d, a]).collect(),
            free_loops: self.free_loops,
        }
    }

    /// True when every component alternates over and under.
    pub fn is_alternating(&self) -> bool {
        self.traverse().iter().all(|passes| {
            passes.len() % 2 == 0
                && passes
                    .iter()
                    .zip(passes.iter().cycle().skip(1))
                    .all(|(&(_, a), &(_, b))| a % 2 != b % 2)
        })
    }

    /// Parses KnotInfo-style nested lists, `[[1,5,2,4],[3,1,4,6],...]`.
    pub fn from_nested_lists(s: &str) -> Result<PDCode, DiagramError> {
        let nums: Vec<Edge> = s
            .split(|c: char| c == '[' || c == ']' || c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| DiagramError::Parse(format!("bad edge label {t:?}"))))
            .collect::<Result<_, _>>()?;
        if !nums.len().is_multiple_of(4) {
            return Err(DiagramError::Parse(format!("{} labels is not a multiple of 4", nums.len())));
        }
        let crossings = nums.chunks(4).map(|c| [c[0], c[1], c[2], c[3]]).collect();
        PDCode::new(crossings, 0)
    }
}

impl fmt::Display for PDCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for [a, b, c, d] in &self.crossings {
            if !first {
                f.write_str(";")?;
            }
            first = false;
            write!(f, "X({a},{b},{c},{d})")?;
        }
        for _ in 0..self.free_loops {
            if !first {
                f.write_str(";")?;
            }
            first = false;
            f.write_str("O")?;
        }
        Ok(())
    }
}

impl FromStr for PDCode {
    type Err = DiagramError;

    /// Inverse of `Display`: `X(a,b,c,d)` terms and `O` free loops joined by `;`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut crossings = Vec::new();
        let mut free_loops = 0;
        for term in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
            if term == "O" {
                free_loops += 1;
                continue;
            }
            let inner = term
                .strip_prefix("X(")
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| DiagramError::Parse(format!("bad term {term:?}")))?;
            let labels: Vec<Edge> = inner
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| DiagramError::Parse(format!("bad term {term:?}"))))
                .collect::<Result<_, _>>()?;
            let x: [Edge; 4] = labels
                .try_into()
                .map_err(|_| DiagramError::Parse(format!("crossing {term:?} needs 4 edges")))?;
            crossings.push(x);
        }
        PDCode::new(crossings, free_loops)
    }
}

/// Boundary ends of a 2-string tangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    NW,
    NE,
    SW,
    SE,
}

/// An open tangle diagram: crossings plus four dangling boundary edges.
/// An edge listed at two boundary ends and no crossing is a crossingless arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tangle4 {
    crossings: Vec<[Edge; 4]>,
    free_loops: u32,
    /// NW, NE, SW, SE
    boundary: [Edge; 4],
    next_edge: Edge,
}

impl Tangle4 {
    /// The `0` tangle: arcs NW–NE and SW–SE.
    pub fn zero() -> Self {
        Tangle4 { crossings: Vec::new(), free_loops: 0, boundary: [0, 0, 1, 1], next_edge: 2 }
    }

    /// The `∞` tangle: arcs NW–SW and NE–SE.
    pub fn infinity() -> Self {
        Tangle4 { crossings: Vec::new(), free_loops: 0, boundary: [0, 1, 0, 1], next_edge: 2 }
    }

    pub fn end(&self, end: End) -> Edge {
        self.boundary[end as usize]
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    fn fresh(&mut self) -> Edge {
        self.next_edge += 1;
        self.next_edge - 1
    }

    /// One crossing with ports at its left-top, left-bottom, right-top and
    /// right-bottom corners. A positive crossing puts the LB–RT strand under,
    /// so a positive horizontal twist and a positive vertical twist both give
    /// the tangle `[1]`.
    fn crossing(lt: Edge, lb: Edge, rt: Edge, rb: Edge, positive: bool) -> [Edge; 4] {
        if positive {
            [rt, lt, lb, rb]
        } else {
            [lt, lb, rb, rt]
        }
    }

    /// Twists the NE and SE ends: fraction `f ↦ f ± 1`.
    pub fn twist_horizontal(&mut self, positive: bool) {
        let (lt, lb) = (self.boundary[End::NE as usize], self.boundary[End::SE as usize]);
        let (rt, rb) = (self.fresh(), self.fresh());
        self.crossings.push(Self::crossing(lt, lb, rt, rb, positive));
        self.boundary[End::NE as usize] = rt;
        self.boundary[End::SE as usize] = rb;
    }

    /// Twists the SW and SE ends: fraction `f ↦ 1/(1/f ± 1)`.
    pub fn twist_vertical(&mut self, positive: bool) {
        let (lt, rt) = (self.boundary[End::SW as usize], self.boundary[End::SE as usize]);
        let (lb, rb) = (self.fresh(), self.fresh());
        self.crossings.push(Self::crossing(lt, lb, rt, rb, positive));
        self.boundary[End::SW as usize] = lb;
        self.boundary[End::SE as usize] = rb;
    }

    /// Joins two boundary edges into one; joining an arc to itself closes a loop.
    fn join(&mut self, keep: Edge, drop: Edge) {
        if keep == drop {
            self.free_loops += 1;
            return;
        }
        for x in self.crossings.iter_mut() {
            for e in x.iter_mut() {
                if *e == drop {
                    *e = keep;
                }
            }
        }
        for e in self.boundary.iter_mut() {
            if *e == drop {
                *e = keep;
            }
        }
    }

    /// Horizontal tangle sum: `self` on the left, `other` on the right.
    pub fn sum(mut self, other: &Tangle4) -> Tangle4 {
        let offset = self.next_edge;
        let shift = |e: Edge| e + offset;
        self.crossings.extend(other.crossings.iter().map(|x| x.map(shift)));
        self.free_loops += other.free_loops;
        self.next_edge += other.next_edge;
        let [o_nw, o_ne, o_sw, o_se] = other.boundary.map(shift);
        let (ne, se) = (self.boundary[End::NE as usize], self.boundary[End::SE as usize]);
        self.boundary[End::NE as usize] = o_ne;
        self.boundary[End::SE as usize] = o_se;
        self.join(ne, o_nw);
        // o_sw may be the same arc as o_nw, already renamed to ne
        let o_sw = if o_sw == o_nw { ne } else { o_sw };
        let se = if se == o_nw { ne } else { se };
        self.join(se, o_sw);
        self
    }

    /// Joins NW to NE and SW to SE.
    pub fn numerator_closure(mut self) -> PDCode {
        let [nw, ne, _, _] = self.boundary;
        self.join(nw, ne);
        let [_, _, sw, se] = self.boundary;
        self.join(sw, se);
        PDCode { crossings: self.crossings, free_loops: self.free_loops }.renumbered()
    }

    /// Joins NW to SW and NE to SE.
    pub fn denominator_closure(mut self) -> PDCode {
        let [nw, _, sw, _] = self.boundary;
        self.join(nw, sw);
        let [_, ne, _, se] = self.boundary;
        self.join(ne, se);
        PDCode { crossings: self.crossings, free_loops: self.free_loops }.renumbered()
    }
}

/// Alternating twist-region diagram of the rational tangle `f`.
///
/// The full canonical expansion `[a_1, ..., a_m]` (leading 0 included when
/// `|f| < 1`) is realized from the inside out: `a_j` becomes `a_j`
/// horizontal twists for odd `j` and vertical twists for even `j`, each in
/// a single block. The sign of `f` sets the crossing sense.
pub fn tangle_pd(f: Fraction) -> Result<Tangle4, DiagramError> {
    if f.is_zero() {
        return Ok(Tangle4::zero());
    }
    if f.is_infinite() {
        return Ok(Tangle4::infinity());
    }
    let terms = cf_canonical(f)?.full_terms();
    let positive = f.num() > 0;
    let mut t = if terms.len() % 2 == 1 { Tangle4::zero() } else { Tangle4::infinity() };
    for (j, &a) in terms.iter().enumerate().rev() {
        for _ in 0..a {
            if j % 2 == 0 {
                t.twist_horizontal(positive);
            } else {
                t.twist_vertical(positive);
            }
        }
    }
    Ok(t)
}

/// Numerator closure `N(f)` of a single rational tangle.
pub fn closure_pd(f: Fraction) -> Result<PDCode, DiagramError> {
    if f.is_degenerate() {
        return Err(DiagramError::DegenerateTangle(f));
    }
    Ok(tangle_pd(f)?.numerator_closure())
}

/// Side-by-side sum of the code's tangles, then `|e|` horizontal half-twists,
/// then the numerator closure.
pub fn montesinos_pd(code: &MontesinosCode) -> Result<PDCode, DiagramError> {
    let mut tangles = code.tangles().iter().map(|&f| tangle_pd(f));
    let first = tangles.next().unwrap_or_else(|| Ok(Tangle4::zero()))?;
    let mut sum = tangles.try_fold(first, |acc, t| t.map(|t| acc.sum(&t)))?;
    for _ in 0..code.e().unsigned_abs() {
        sum.twist_horizontal(code.e() > 0);
    }
    Ok(sum.numerator_closure())
}

/// Number of closed strands, following `e0 → e2` and `e1 → e3` through every
/// crossing, plus crossingless loops.
pub fn count_components(pd: &PDCode) -> Result<usize, DiagramError> {
    pd.check_incidence()?;
    let (xs, edges) = pd.dense();
    let mut uf = LoopCounter::new(edges);
    for x in &xs {
        uf.join(x[0], x[2]);
        uf.join(x[1], x[3]);
    }
    Ok(uf.loops() + pd.free_loops as usize)
}

/// Sum of crossing signs of a knot diagram, orientation taken from traversal.
/// A crossing is positive when the over-strand direction, rotated a quarter
/// turn counterclockwise, points along the under-strand.
pub fn writhe(pd: &PDCode) -> Result<i64, DiagramError> {
    let components = count_components(pd)?;
    if components > 1 {
        return Err(DiagramError::MultiComponent { components });
    }
    let mut under = vec![0usize; pd.crossing_count()];
    let mut over = vec![0usize; pd.crossing_count()];
    for passes in pd.traverse() {
        for (c, s) in passes {
            if s % 2 == 0 {
                under[c] = s;
            } else {
                over[c] = s;
            }
        }
    }
    Ok(under
        .iter()
        .zip(&over)
        .map(|(&u, &o)| if o == (u + 3) % 4 { 1 } else { -1 })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fr(n: i64, d: i64) -> Fraction {
        Fraction::new(n, d).unwrap()
    }

    fn code(e: i64, fs: &[(i64, i64)]) -> MontesinosCode {
        MontesinosCode::new(e, fs.iter().map(|&(n, d)| fr(n, d)).collect()).unwrap()
    }

    // right-handed trefoil as listed by KnotInfo
    const TREFOIL: &str = "X(1,5,2,4);X(3,1,4,6);X(5,3,6,2)";

    #[test]
    fn incidence_validation() {
        assert_eq!(
            PDCode::new(vec![[1, 2, 3, 4]], 0),
            Err(DiagramError::InvalidIncidence { edge: 1, count: 1 })
        );
        assert_eq!(
            count_components(&PDCode { crossings: vec![[1, 1, 1, 2]], free_loops: 0 }),
            Err(DiagramError::InvalidIncidence { edge: 1, count: 3 })
        );
        assert!(PDCode::new(vec![[1, 1, 2, 2]], 0).is_ok());
    }

    #[test]
    fn component_counts() {
        assert_eq!(count_components(&PDCode::unknot()).unwrap(), 1);
        let trefoil: PDCode = TREFOIL.parse().unwrap();
        assert_eq!(count_components(&trefoil).unwrap(), 1);
        let pretzel = montesinos_pd(&code(0, &[(1, 2), (1, 2), (1, 2)])).unwrap();
        assert_eq!(pretzel.crossing_count(), 6);
        assert_eq!(count_components(&pretzel).unwrap(), 3);
    }

    #[test]
    fn tangle_examples() {
        let clasp = tangle_pd(fr(1, 2)).unwrap();
        assert_eq!(clasp.crossing_count(), 2);
        // N(1/2) is a 2-crossing unknot diagram; its numerator is odd
        assert_eq!(count_components(&clasp.numerator_closure()).unwrap(), 1);
        let t = closure_pd(fr(3, 1)).unwrap();
        assert_eq!(t.crossing_count(), 3);
        assert_eq!(count_components(&t).unwrap(), 1);
        let t = closure_pd(fr(3, 2)).unwrap();
        assert_eq!(t.crossing_count(), 3);
        assert_eq!(count_components(&t).unwrap(), 1);
        assert_eq!(count_components(&closure_pd(fr(2, 1)).unwrap()).unwrap(), 2);
        assert_eq!(closure_pd(Fraction::ZERO), Err(DiagramError::DegenerateTangle(Fraction::ZERO)));
        assert_eq!(count_components(&Tangle4::zero().numerator_closure()).unwrap(), 2);
        assert_eq!(count_components(&Tangle4::infinity().numerator_closure()).unwrap(), 1);
    }

    #[test]
    fn montesinos_examples() {
        let pd = montesinos_pd(&code(0, &[(1, 2), (1, 3), (1, 5)])).unwrap();
        assert_eq!(pd.crossing_count(), 10);
        assert_eq!(count_components(&pd).unwrap(), 1);
        let pd = montesinos_pd(&code(0, &[(2, 3), (2, 3), (2, 3), (1, 3)])).unwrap();
        assert_eq!(pd.crossing_count(), 12);
        assert_eq!(count_components(&pd).unwrap(), 1);
        assert!(pd.is_alternating());
        let pd = montesinos_pd(&code(-2, &[(2, 3), (1, 3), (1, 5)])).unwrap();
        assert_eq!(pd.crossing_count(), 3 + 3 + 5 + 2);
    }

    #[test]
    fn writhe_examples() {
        let trefoil: PDCode = TREFOIL.parse().unwrap();
        assert_eq!(writhe(&trefoil).unwrap(), 3);
        assert_eq!(writhe(&trefoil.mirror()).unwrap(), -3);
        assert_eq!(writhe(&closure_pd(fr(3, 1)).unwrap()).unwrap().abs(), 3);
        let kink = PDCode::new(vec![[1, 1, 2, 2]], 0).unwrap();
        assert_eq!(writhe(&kink).unwrap(), 1);
        assert_eq!(writhe(&kink.mirror()).unwrap(), -1);
        // kink followed by the opposite kink
        let both = PDCode::new(vec![[1, 1, 2, 3], [4, 3, 2, 4]], 0).unwrap();
        assert_eq!(count_components(&both).unwrap(), 1);
        assert_eq!(writhe(&both).unwrap(), 0);
        let same = PDCode::new(vec![[1, 1, 2, 3], [4, 4, 3, 2]], 0).unwrap();
        assert_eq!(writhe(&same).unwrap(), 2);
        let hopf = closure_pd(fr(2, 1)).unwrap();
        assert_eq!(writhe(&hopf), Err(DiagramError::MultiComponent { components: 2 }));
    }

    #[test]
    fn renumbering_is_traversal_order() {
        let pd = closure_pd(fr(11, 4)).unwrap();
        let mut labels: Vec<Edge> = pd.crossings().iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        assert_eq!(labels, (1..=12).collect::<Vec<_>>());
        // incoming under edge k leaves as k+1 (mod 2n)
        for x in pd.crossings() {
            assert_eq!(x[2], x[0] % 12 + 1);
        }
        assert_eq!(pd.renumbered(), pd);
    }

    #[test]
    fn text_round_trip() {
        let pd = montesinos_pd(&code(0, &[(1, 2), (1, 3), (1, 5)])).unwrap();
        let text = pd.to_string();
        assert_eq!(text.parse::<PDCode>().unwrap(), pd);
        assert_eq!("O".parse::<PDCode>().unwrap(), PDCode::unknot());
        assert!("X(1,2,3)".parse::<PDCode>().is_err());
        assert!("Y(1,2,3,4)".parse::<PDCode>().is_err());
        let from_lists = PDCode::from_nested_lists("[[1,5,2,4],[3,1,4,6],[5,3,6,2]]").unwrap();
        assert_eq!(from_lists, TREFOIL.parse().unwrap());
    }

    #[test]
    fn positive_expansions_alternate() {
        for l in 1..=8 {
            for f in crate::ratfrac::enumerate_rational_tangles(l).iter() {
                assert!(closure_pd(*f).unwrap().is_alternating(), "{f}");
            }
        }
    }
}
