//! Text grammar for polynomials.
//!
//! Terms are joined by `+`/`-`. A term is an optional rational coefficient
//! (`29/24`, or a decimal like `0.5` converted exactly) and `*`-separated
//! variable powers such as `x^4`. Whitespace is ignored.

use super::{Monomial, Polynomial, Rational};
use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;

/// Parse failure with 1-based line/column of the offending character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    variables: &'a [&'a str],
}

pub(super) fn parse_polynomial(
    source: &str,
    variables: &[&str],
) -> Result<Polynomial, ParseError> {
    let mut parser = Parser {
        chars: source.chars().collect(),
        pos: 0,
        variables,
    };
    parser.parse_expression()
}

impl<'a> Parser<'a> {
    fn location(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut column = 1;
        for &c in self.chars.iter().take(pos) {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error(&self, pos: usize, message: impl Into<String>) -> ParseError {
        let (line, column) = self.location(pos);
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_whitespace(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_whitespace();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn parse_expression(&mut self) -> Result<Polynomial, ParseError> {
        let dimension = self.variables.len();
        let mut result = Polynomial::zero(dimension);
        let mut negative = match self.peek() {
            Some('+') => {
                self.bump();
                false
            }
            Some('-') => {
                self.bump();
                true
            }
            Some(_) => false,
            None => return Err(self.error(self.pos, "empty polynomial")),
        };
        loop {
            let term = self.parse_term()?;
            let signed = if negative { -term } else { term };
            result = result
                .checked_add(&signed)
                .expect("parser builds fixed dimension");
            match self.peek() {
                None => return Ok(result),
                Some('+') => {
                    self.bump();
                    negative = false;
                }
                Some('-') => {
                    self.bump();
                    negative = true;
                }
                Some(c) => {
                    return Err(self.error(self.pos, format!("expected '+' or '-', found '{c}'")))
                }
            }
        }
    }

    fn parse_term(&mut self) -> Result<Polynomial, ParseError> {
        let mut product = self.parse_factor()?;
        while self.peek() == Some('*') {
            self.bump();
            let factor = self.parse_factor()?;
            product = product
                .checked_mul(&factor)
                .expect("parser builds fixed dimension");
        }
        Ok(product)
    }

    fn parse_factor(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => self.parse_number(),
            Some(c) if c.is_alphabetic() || c == '_' => self.parse_variable_power(),
            Some(c) => Err(self.error(
                self.pos,
                format!("expected a coefficient or variable, found '{c}'"),
            )),
            None => Err(self.error(self.pos, "expected a coefficient or variable")),
        }
    }

    fn parse_digits(&mut self) -> Result<String, ParseError> {
        self.skip_whitespace();
        let start = self.pos;
        let mut digits = String::new();
        while let Some(&c) = self.chars.get(self.pos) {
            if c.is_ascii_digit() {
                digits.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        if digits.is_empty() {
            return Err(self.error(start, "expected digits"));
        }
        Ok(digits)
    }

    fn parse_number(&mut self) -> Result<Polynomial, ParseError> {
        let dimension = self.variables.len();
        let start = self.pos;
        let integer = self.parse_digits()?;
        // No whitespace allowed inside a literal like 29/24 or 0.5.
        match self.chars.get(self.pos) {
            Some('/') => {
                self.pos += 1;
                let denom_pos = self.pos;
                let denominator = self.parse_digits()?;
                let den: BigInt = denominator.parse().expect("digits");
                if den.is_zero() {
                    return Err(self.error(denom_pos, "zero denominator"));
                }
                let num: BigInt = integer.parse().expect("digits");
                Ok(Polynomial::constant(dimension, Rational::new(num, den)))
            }
            Some('.') => {
                self.pos += 1;
                let fraction = self.parse_digits()?;
                let scale = BigInt::from(10u32).pow(fraction.len() as u32);
                let num: BigInt =
                    format!("{integer}{fraction}").parse().expect("digits");
                Ok(Polynomial::constant(dimension, Rational::new(num, scale)))
            }
            _ => {
                let num: BigInt = integer
                    .parse()
                    .map_err(|_| self.error(start, "invalid integer"))?;
                Ok(Polynomial::constant(dimension, Rational::from_integer(num)))
            }
        }
    }

    fn parse_variable_power(&mut self) -> Result<Polynomial, ParseError> {
        self.skip_whitespace();
        let start = self.pos;
        let mut name = String::new();
        while let Some(&c) = self.chars.get(self.pos) {
            if c.is_alphanumeric() || c == '_' {
                name.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        let axis = self
            .variables
            .iter()
            .position(|v| *v == name)
            .ok_or_else(|| self.error(start, format!("unknown variable '{name}'")))?;
        let exponent = if self.peek() == Some('^') {
            self.bump();
            let exp_pos = self.pos;
            let digits = self.parse_digits()?;
            digits
                .parse::<u32>()
                .map_err(|_| self.error(exp_pos, "exponent too large"))?
        } else {
            1
        };
        let dimension = self.variables.len();
        let mut exponents = vec![0u32; dimension];
        exponents[axis] = exponent;
        Ok(Polynomial::from_terms(
            dimension,
            [(Monomial::new(exponents), Rational::from_integer(BigInt::from(1)))],
        )
        .expect("dimension consistent"))
    }
}

#[cfg(test)]
mod tests {
    use super::super::Polynomial;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn decimals_convert_exactly() {
        let p = Polynomial::parse("0.5*x", &["x", "y"]).unwrap();
        let expected = Polynomial::variable(2, 0).unwrap().scale(&rat(1, 2));
        assert_eq!(p, expected);
        let q = Polynomial::parse("0.1", &["x", "y"]).unwrap();
        assert_eq!(q.constant_term(), rat(1, 10));
    }

    #[test]
    fn whitespace_is_ignored() {
        let a = Polynomial::parse("  1/2 * x^2   +\n 3*y ", &["x", "y"]).unwrap();
        let b = Polynomial::parse("1/2*x^2+3*y", &["x", "y"]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn numbered_variables() {
        let p = Polynomial::parse("x1^2 - 2*x2*x3", &["x1", "x2", "x3"]).unwrap();
        assert_eq!(p.dimension(), 3);
        assert_eq!(p.terms().count(), 2);
    }

    #[test]
    fn leading_sign() {
        let p = Polynomial::parse("-x + y", &["x", "y"]).unwrap();
        let q = Polynomial::parse("y - x", &["x", "y"]).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn unknown_variable_reports_position() {
        let err = Polynomial::parse("x + 2*z", &["x", "y"]).unwrap_err();
        assert_eq!(err.line, 1);
        assert_eq!(err.column, 7);
        assert!(err.message.contains('z'));
    }

    #[test]
    fn error_position_spans_lines() {
        let err = Polynomial::parse("x +\n y +", &["x", "y"]).unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(Polynomial::parse("1/0", &["x", "y"]).is_err());
    }

    #[test]
    fn missing_operator_rejected() {
        assert!(Polynomial::parse("2 x", &["x", "y"]).is_err());
    }
}
