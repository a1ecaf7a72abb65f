use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

/// Indeterminate of a [`LaurentPolynomial`]: the bracket variable `A` or the
/// Jones variable `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    A,
    T,
}

impl Variable {
    pub fn symbol(self) -> char {
        match self {
            Variable::A => 'A',
            Variable::T => 't',
        }
    }
}

/// Sparse Laurent polynomial with integer coefficients. Zero coefficients are
/// never stored, so structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    var: Variable,
    coeffs: BTreeMap<i32, i64>,
}

impl LaurentPolynomial {
    pub fn zero(var: Variable) -> Self {
        LaurentPolynomial { var, coeffs: BTreeMap::new() }
    }

    pub fn one(var: Variable) -> Self {
        Self::monomial(var, 1, 0)
    }

    pub fn monomial(var: Variable, coeff: i64, exp: i32) -> Self {
        let mut p = Self::zero(var);
        p.add_term(coeff, exp);
        p
    }

    pub fn from_terms(var: Variable, terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            p.add_term(c, e);
        }
        p
    }

    pub fn add_term(&mut self, coeff: i64, exp: i32) {
        if coeff == 0 {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn variable(&self) -> Variable {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs by ascending exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Substitutes `x ↦ x⁻¹`.
    pub fn invert(&self) -> Self {
        Self::from_terms(self.var, self.terms().map(|(e, c)| (-e, c)))
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self::from_terms(self.var, self.terms().map(|(e, c)| (e + k, c)))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.var, self.terms().map(|(e, c)| (e, c * k)))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.var), |acc, _| &acc * self)
    }

    /// Value at `x = -1`.
    pub fn eval_minus_one(&self) -> i64 {
        self.terms().map(|(e, c)| if e.rem_euclid(2) == 0 { c } else { -c }).sum()
    }

    /// Value at `x = 1`.
    pub fn eval_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Same coefficients under another variable name.
    pub fn with_variable(&self, var: Variable) -> Self {
        LaurentPolynomial { var, coeffs: self.coeffs.clone() }
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        debug_assert_eq!(self.var, rhs.var);
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(c, e);
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        self.scale(-1)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        debug_assert_eq!(self.var, rhs.var);
        let mut out = LaurentPolynomial::zero(self.var);
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}

/// Ascending exponents; unit coefficients are omitted and other coefficients
/// are joined to the variable with `*`, e.g. `-t^-4+2*t^-3+t^-1+3`.
impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let x = self.var.symbol();
        for (i, (e, c)) in self.terms().enumerate() {
            if c < 0 {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let a = c.unsigned_abs();
            match (e, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => write!(f, "{x}")?,
                _ => write!(f, "{a}*{x}")?,
            }
            if e != 0 && e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(terms: &[(i32, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(Variable::T, terms.iter().copied())
    }

    #[test]
    fn arithmetic() {
        let p = t(&[(-1, 1), (1, 1)]);
        assert_eq!(&p * &p, t(&[(-2, 1), (0, 2), (2, 1)]));
        assert_eq!(&p - &p, LaurentPolynomial::zero(Variable::T));
        assert_eq!(p.pow(0), LaurentPolynomial::one(Variable::T));
        assert_eq!(p.pow(3).eval_one(), 8);
        assert_eq!(t(&[(3, 2), (-2, 5)]).invert(), t(&[(-3, 2), (2, 5)]));
        assert_eq!(t(&[(1, 1)]).shift(-4), t(&[(-3, 1)]));
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut p = t(&[(2, 3)]);
        p.add_term(-3, 2);
        assert!(p.is_zero());
        assert_eq!(p.min_exp(), None);
        assert_eq!(t(&[(1, 0)]), LaurentPolynomial::zero(Variable::T));
    }

    #[test]
    fn evaluation() {
        let trefoil = t(&[(-4, -1), (-3, 1), (-1, 1)]);
        assert_eq!(trefoil.eval_minus_one(), -3);
        assert_eq!(trefoil.eval_one(), 1);
    }

    #[test]
    fn formatting() {
        assert_eq!(t(&[(-4, -1), (-3, 1), (-1, 1)]).to_string(), "-t^-4+t^-3+t^-1");
        assert_eq!(t(&[(0, -12), (1, 17), (2, -20)]).to_string(), "-12+17*t-20*t^2");
        assert_eq!(LaurentPolynomial::zero(Variable::A).to_string(), "0");
        assert_eq!(LaurentPolynomial::monomial(Variable::A, -1, 3).to_string(), "-A^3");
    }
}
