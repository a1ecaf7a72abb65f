//! Rational tangles, Montesinos knots, Jones-polynomial identification
//! against a knot table, and rule-based tunnel-number classification of the
//! 11 and 12 crossing knot census.

pub mod classify;
pub mod cli;
pub mod diagram;
pub mod invariants;
pub mod knotdb;
pub mod montesinos;
pub mod ratfrac;

pub use classify::{census_report, classify_knot, CensusReport, TunnelVerdict};
pub use diagram::{count_components, montesinos_pd, tangle_pd, writhe, PDCode, Tangle4};
pub use invariants::{determinant, jones, kauffman_bracket, mirror_canonical, LaurentPolynomial, Variable};
pub use knotdb::{identify, load_knot_table, parse_jones_string, KnotRecord, KnotTable, MatchResult};
pub use montesinos::{enumerate_montesinos_knots, structural_flags, MontesinosCode, MontesinosInfo};
pub use ratfrac::{cf_canonical, cf_eval, crossing_number, enumerate_rational_tangles, Fraction, TangleSet};
