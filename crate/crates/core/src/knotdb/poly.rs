use std::iter::Peekable;
use std::str::CharIndices;

use thiserror::Error;

use crate::invariants::{LaurentPolynomial, Variable};

/// Syntax error in a polynomial string. `offset` is a byte offset into the
/// input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at byte {offset}")]
pub struct PolyParseError {
    pub offset: usize,
    pub message: String,
}

/// Parses `[sign] term {(+|-) term}` where a term is an integer, or an
/// optional integer coefficient (with optional `*`) followed by the variable
/// and an optional `^exp` or `^(exp)`. Whitespace is ignored and the Unicode
/// minus sign is accepted alongside `-`.
///
/// The variable letter is `A` for [`Variable::A`] and `t` for
/// [`Variable::T`].
pub fn parse_jones_string(s: &str, var: Variable) -> Result<LaurentPolynomial, PolyParseError> {
    let mut p = Parser { src: s, it: s.char_indices().peekable(), var: var.symbol() };
    let mut out = LaurentPolynomial::zero(var);
    let mut first = true;
    loop {
        p.skip_ws();
        let sign = match p.peek() {
            None if first => return Err(p.error("empty polynomial")),
            None => break,
            Some('+') => {
                p.bump();
                1
            }
            Some('-' | '\u{2212}') => {
                p.bump();
                -1
            }
            Some(_) if first => 1,
            Some(c) => return Err(p.error(&format!("expected '+' or '-', found {c:?}"))),
        };
        first = false;
        let (coeff, exp) = p.term()?;
        let coeff = coeff.checked_mul(sign).ok_or_else(|| p.error("coefficient overflow"))?;
        out.add_term(coeff, exp);
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    it: Peekable<CharIndices<'a>>,
    var: char,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.it.peek().is_some_and(|(_, c)| c.is_whitespace()) {
            self.it.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.it.peek().map(|&(_, c)| c)
    }

    fn bump(&mut self) {
        self.it.next();
    }

    fn offset(&mut self) -> usize {
        self.skip_ws();
        self.it.peek().map_or(self.src.len(), |&(i, _)| i)
    }

    fn error(&mut self, message: &str) -> PolyParseError {
        PolyParseError { offset: self.offset(), message: message.to_string() }
    }

    fn digits(&mut self) -> Result<Option<i64>, PolyParseError> {
        let start = self.offset();
        let mut value: Option<i64> = None;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            let v = value.unwrap_or(0);
            value = Some(
                v.checked_mul(10)
                    .and_then(|v| v.checked_add(i64::from(d)))
                    .ok_or(PolyParseError { offset: start, message: "integer overflow".into() })?,
            );
            self.bump();
        }
        Ok(value)
    }

    fn signed_int(&mut self) -> Result<i32, PolyParseError> {
        let negative = match self.peek() {
            Some('-' | '\u{2212}') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        let start = self.offset();
        let v = self.digits()?.ok_or_else(|| self.error("expected integer exponent"))?;
        let v = i32::try_from(v)
            .map_err(|_| PolyParseError { offset: start, message: "exponent overflow".into() })?;
        Ok(if negative { -v } else { v })
    }

    fn term(&mut self) -> Result<(i64, i32), PolyParseError> {
        let coeff = self.digits()?;
        if coeff.is_some() && self.peek() == Some('*') {
            self.bump();
            if self.peek() != Some(self.var) {
                return Err(self.error(&format!("expected '{}' after '*'", self.var)));
            }
        }
        if self.peek() != Some(self.var) {
            return match coeff {
                Some(c) => Ok((c, 0)),
                None => Err(self.error(&format!("expected integer or '{}'", self.var))),
            };
        }
        self.bump();
        let mut exp = 1;
        if self.peek() == Some('^') {
            self.bump();
            if self.peek() == Some('(') {
                self.bump();
                exp = self.signed_int()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.bump();
            } else {
                exp = self.signed_int()?;
            }
        }
        Ok((coeff.unwrap_or(1), exp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(terms: &[(i32, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(Variable::T, terms.iter().copied())
    }

    fn parse(s: &str) -> Result<LaurentPolynomial, PolyParseError> {
        parse_jones_string(s, Variable::T)
    }

    #[test]
    fn accepted_forms() {
        assert_eq!(parse("1").unwrap(), t(&[(0, 1)]));
        assert_eq!(parse("-t^(-4)+ t^(-3)+ t^(-1)").unwrap(), t(&[(-4, -1), (-3, 1), (-1, 1)]));
        assert_eq!(parse("t^-2-t^-1+1-t+t^2").unwrap(), t(&[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)]));
        assert_eq!(parse("t+ t^3-t^4").unwrap(), t(&[(1, 1), (3, 1), (4, -1)]));
        assert_eq!(parse(" 2*t^(-2) - 4 t^( -1 ) + 7 ").unwrap(), t(&[(-2, 2), (-1, -4), (0, 7)]));
        assert_eq!(parse("\u{2212}t^\u{2212}4").unwrap(), t(&[(-4, -1)]));
        assert_eq!(parse("t - t").unwrap(), LaurentPolynomial::zero(Variable::T));
        assert_eq!(parse_jones_string("-A^3", Variable::A).unwrap().to_string(), "-A^3");
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(parse("").unwrap_err().offset, 0);
        assert_eq!(parse("   ").unwrap_err().offset, 3);
        assert_eq!(parse("t+").unwrap_err().offset, 2);
        assert_eq!(parse("t^").unwrap_err().offset, 2);
        assert_eq!(parse("t^(3").unwrap_err().offset, 4);
        assert_eq!(parse("2*").unwrap_err().offset, 2);
        assert_eq!(parse("t 2").unwrap_err().offset, 2);
        assert_eq!(parse("x").unwrap_err().offset, 0);
        assert_eq!(parse("t+q^2").unwrap_err().offset, 2);
        assert_eq!(parse_jones_string("t", Variable::A).unwrap_err().offset, 0);
    }

    proptest! {
        #[test]
        fn display_round_trips(terms in prop::collection::vec((-30i32..30, -50i64..50), 0..12)) {
            let p = t(&terms);
            prop_assert_eq!(parse(&p.to_string()).unwrap(), p);
        }
    }
}
