//! Kauffman bracket, Jones polynomial and determinant of PD codes.

mod laurent;

pub use laurent::{LaurentPolynomial, Variable};

use thiserror::Error;

use crate::diagram::{count_components, writhe, DiagramError, LoopCounter, PDCode};

/// Largest diagram the `2^n` state sum accepts.
pub const MAX_BRACKET_CROSSINGS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("diagram has {crossings} crossings; the state sum is capped at {MAX_BRACKET_CROSSINGS}")]
    ComplexityLimit { crossings: usize },
    #[error("Jones polynomial requires a knot diagram, got {components} components")]
    NotAKnot { components: usize },
    #[error("normalized bracket has exponent A^{exponent}, not a multiple of 4")]
    NonIntegerExponent { exponent: i32 },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// State sum `Σ A^(a−b) δ^(loops−1)` with `δ = −A² − A⁻²`.
///
/// At `X(i,j,k,l)` the A-smoothing joins `i–j` and `k–l`; the B-smoothing
/// joins `i–l` and `j–k`.
pub fn kauffman_bracket(pd: &PDCode) -> Result<LaurentPolynomial, InvariantError> {
    let n = pd.crossing_count();
    if n > MAX_BRACKET_CROSSINGS {
        return Err(InvariantError::ComplexityLimit { crossings: n });
    }
    // validates incidence
    count_components(pd)?;
    let (xs, edges) = pd.dense();
    let free = pd.free_loops() as usize;
    let max_loops = edges + free + 1;
    // hist[a][loops]: number of states with `a` A-smoothings and `loops` circles
    let mut hist = vec![vec![0u64; max_loops + 1]; n + 1];
    let mut uf = LoopCounter::new(edges);
    for state in 0u32..(1u32 << n) {
        uf.reset();
        for (i, x) in xs.iter().enumerate() {
            if state >> i & 1 == 0 {
                uf.join(x[0], x[1]);
                uf.join(x[2], x[3]);
            } else {
                uf.join(x[0], x[3]);
                uf.join(x[1], x[2]);
            }
        }
        let a = n - state.count_ones() as usize;
        hist[a][uf.loops() + free] += 1;
    }

    let delta = LaurentPolynomial::from_terms(Variable::A, [(2, -1), (-2, -1)]);
    let mut delta_pows = vec![LaurentPolynomial::one(Variable::A)];
    for k in 1..max_loops {
        let next = &delta_pows[k - 1] * &delta;
        delta_pows.push(next);
    }
    let mut out = LaurentPolynomial::zero(Variable::A);
    for (a, row) in hist.iter().enumerate() {
        let shift = a as i32 - (n - a) as i32;
        for (loops, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let term = delta_pows[loops.saturating_sub(1)].shift(shift).scale(count as i64);
            out = &out + &term;
        }
    }
    Ok(out)
}

/// `V(t) = (−A³)^(−w) ⟨D⟩` with `t = A⁻⁴`.
pub fn jones(pd: &PDCode) -> Result<LaurentPolynomial, InvariantError> {
    let components = count_components(pd)?;
    if components != 1 {
        return Err(InvariantError::NotAKnot { components });
    }
    let w = writhe(pd)?;
    let bracket = kauffman_bracket(pd)?;
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    let normalized = bracket.shift((-3 * w) as i32).scale(sign);
    let mut out = LaurentPolynomial::zero(Variable::T);
    for (e, c) in normalized.terms() {
        if e % 4 != 0 {
            return Err(InvariantError::NonIntegerExponent { exponent: e });
        }
        out.add_term(c, -e / 4);
    }
    Ok(out)
}

/// `|V(−1)|`.
pub fn determinant(pd: &PDCode) -> Result<u64, InvariantError> {
    Ok(jones(pd)?.eval_minus_one().unsigned_abs())
}

/// `|⟨D⟩|` at `A = e^{iπ/4}`, the determinant of any link diagram (knots
/// included). At that value `δ = 0`, and the bracket's exponents are all
/// congruent mod 4, so the sum is a real integer up to a unit.
pub fn link_determinant(pd: &PDCode) -> Result<u64, InvariantError> {
    let bracket = kauffman_bracket(pd)?;
    let Some(k0) = bracket.min_exp() else {
        return Ok(0);
    };
    // A^(k - k0) = i^((k - k0) / 2) for even offsets
    let (mut re, mut im) = (0i64, 0i64);
    for (k, c) in bracket.terms() {
        let d = k - k0;
        if d % 2 != 0 {
            return Err(InvariantError::NonIntegerExponent { exponent: k });
        }
        match (d / 2).rem_euclid(4) {
            0 => re += c,
            1 => im += c,
            2 => re -= c,
            _ => im -= c,
        }
    }
    let sq = (re * re + im * im) as u64;
    let root = sq.isqrt();
    debug_assert_eq!(root * root, sq, "determinant of a diagram is an integer");
    Ok(root)
}

/// The smaller of `p(t)` and `p(t⁻¹)`, comparing ascending `(exponent,
/// coefficient)` sequences lexicographically.
pub fn mirror_canonical(p: &LaurentPolynomial) -> LaurentPolynomial {
    let q = p.invert();
    if q.terms().lt(p.terms()) {
        q
    } else {
        p.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{closure_pd, montesinos_pd};
    use crate::montesinos::MontesinosCode;
    use crate::ratfrac::Fraction;

    fn a(terms: &[(i32, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(Variable::A, terms.iter().copied())
    }

    fn t(terms: &[(i32, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(Variable::T, terms.iter().copied())
    }

    fn fr(n: i64, d: i64) -> Fraction {
        Fraction::new(n, d).unwrap()
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(kauffman_bracket(&PDCode::unknot()).unwrap(), a(&[(0, 1)]));
        let kink = PDCode::new(vec![[1, 1, 2, 2]], 0).unwrap();
        assert_eq!(kauffman_bracket(&kink).unwrap(), a(&[(3, -1)]));
        let hopf = closure_pd(fr(2, 1)).unwrap();
        assert_eq!(kauffman_bracket(&hopf).unwrap(), a(&[(4, -1), (-4, -1)]));
    }

    #[test]
    fn jones_examples() {
        assert_eq!(jones(&PDCode::unknot()).unwrap(), t(&[(0, 1)]));
        let trefoil = jones(&closure_pd(fr(3, 1)).unwrap()).unwrap();
        let left = t(&[(-4, -1), (-3, 1), (-1, 1)]);
        assert!(trefoil == left || trefoil == left.invert(), "{trefoil}");
        let fig8 = jones(&closure_pd(fr(5, 2)).unwrap()).unwrap();
        assert_eq!(fig8, t(&[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)]));
        assert_eq!(fig8, fig8.invert());
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&PDCode::unknot()).unwrap(), 1);
        assert_eq!(determinant(&closure_pd(fr(3, 1)).unwrap()).unwrap(), 3);
        assert_eq!(determinant(&closure_pd(fr(11, 4)).unwrap()).unwrap(), 11);
        assert_eq!(link_determinant(&closure_pd(fr(11, 4)).unwrap()).unwrap(), 11);
        assert_eq!(link_determinant(&closure_pd(fr(2, 1)).unwrap()).unwrap(), 2);
        assert_eq!(link_determinant(&closure_pd(fr(8, 3)).unwrap()).unwrap(), 8);
        assert_eq!(link_determinant(&PDCode::new(vec![], 2).unwrap()).unwrap(), 0);
    }

    #[test]
    fn mirror_canonical_examples() {
        let one = t(&[(0, 1)]);
        assert_eq!(mirror_canonical(&one), one);
        let left = t(&[(-4, -1), (-3, 1), (-1, 1)]);
        assert_eq!(mirror_canonical(&left), mirror_canonical(&left.invert()));
        let fig8 = t(&[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)]);
        assert_eq!(mirror_canonical(&fig8), fig8);
    }

    #[test]
    fn errors() {
        let hopf = closure_pd(fr(2, 1)).unwrap();
        assert_eq!(jones(&hopf), Err(InvariantError::NotAKnot { components: 2 }));
        let big = montesinos_pd(
            &MontesinosCode::new(0, vec![fr(8, 3), fr(7, 2), fr(11, 4), fr(-5, 2)]).unwrap(),
        )
        .unwrap();
        assert!(big.crossing_count() > MAX_BRACKET_CROSSINGS);
        assert!(matches!(kauffman_bracket(&big), Err(InvariantError::ComplexityLimit { .. })));
    }

    #[test]
    fn mirror_diagram_inverts_jones() {
        for f in [fr(3, 1), fr(7, 3), fr(13, 5), fr(-11, 4)] {
            let pd = closure_pd(f).unwrap();
            assert_eq!(jones(&pd.mirror()).unwrap(), jones(&pd).unwrap().invert());
        }
    }
}
