//! Text syntax for rationals, intervals, interval queues, and formulas.
//!
//! Endpoints are written as integers (`3`), fractions (`7/2`), or finite
//! decimals (`1.25`); decimals are converted exactly, no floating point is
//! involved. Intervals are `[a,b]`, `(a,b)`, `[a,b)`, `(a,b]` with `b`
//! possibly `inf`; queues are brace-wrapped comma-separated interval
//! literals, e.g. `{[0,1), (1,2]}`.
//!
//! Formula syntax: `true`, `false`, identifiers, `!`, `&`, `|`, `->`,
//! `U<interval>`, `F<interval>`, `G<interval>`; an omitted interval defaults
//! to `(0,inf)`. Precedence, tightest first: unary, `U`, `&`, `|`, `->`.
//! `U` is non-associative (chaining requires parentheses) and `->` associates
//! to the right.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::formula::Formula;
use crate::interval::{Endpoint, Interval};
use crate::queue::IntervalQueue;

/// A syntax error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> ParseError {
        ParseError { position, message: message.into() }
    }
}

/// Parses a non-negative rational literal: `3`, `7/2`, or `1.25`.
pub fn parse_rational(text: &str) -> Result<BigRational, ParseError> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let value = p.rational()?;
    p.expect_end()?;
    Ok(value)
}

/// Parses an interval literal such as `[0,1)` or `(2,inf)`.
pub fn parse_interval(text: &str) -> Result<Interval, ParseError> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let value = p.interval()?;
    p.expect_end()?;
    Ok(value)
}

/// Parses a queue literal such as `{[0,1), (1,2]}`. Overlapping or touching
/// items are accepted and normalized by construction, so the result is
/// always canonical.
pub fn parse_queue(text: &str) -> Result<IntervalQueue, ParseError> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let value = p.queue()?;
    p.expect_end()?;
    Ok(value)
}

/// Parses a formula. Timing intervals on `U`, `F`, `G` must be
/// non-degenerate.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let value = p.formula()?;
    p.expect_end()?;
    Ok(value)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        Parser { bytes: text.as_bytes(), pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<u8> {
        self.bytes.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, byte: u8, what: &str) -> Result<(), ParseError> {
        if self.eat(byte) {
            Ok(())
        } else {
            Err(ParseError::new(self.pos, format!("expected {}", what)))
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos == self.bytes.len() {
            Ok(())
        } else {
            Err(ParseError::new(self.pos, "unexpected trailing input"))
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ParseError::new(self.pos, "expected a digit"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("digits are ascii");
        Ok(text.parse().expect("digits parse as an integer"))
    }

    /// `3`, `7/2`, or `1.25`; always non-negative.
    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let whole = self.digits()?;
        match self.peek() {
            Some(b'/') => {
                self.pos += 1;
                let denom_pos = self.pos;
                let denom = self.digits()?;
                if denom.is_zero() {
                    return Err(ParseError::new(denom_pos, "zero denominator"));
                }
                Ok(BigRational::new(whole, denom))
            }
            Some(b'.') => {
                self.pos += 1;
                let frac_start = self.pos;
                let frac = self.digits()?;
                let places = self.pos - frac_start;
                let mut denom = BigInt::one();
                for _ in 0..places {
                    denom *= 10;
                }
                let numer = whole * &denom + frac;
                Ok(BigRational::new(numer, denom))
            }
            _ => Ok(BigRational::from_integer(whole)),
        }
    }

    /// `[a,b]` and friends; the body after the opening bracket is shared with
    /// the formula parser's timing intervals.
    fn interval(&mut self) -> Result<Interval, ParseError> {
        let open_pos = self.pos;
        let lo_closed = match self.bump() {
            Some(b'[') => true,
            Some(b'(') => false,
            _ => return Err(ParseError::new(open_pos, "expected '[' or '('")),
        };
        self.interval_body(lo_closed)
    }

    fn interval_body(&mut self, lo_closed: bool) -> Result<Interval, ParseError> {
        self.skip_ws();
        let lo_pos = self.pos;
        if self.bytes[self.pos..].starts_with(b"inf") {
            return Err(ParseError::new(lo_pos, "lower endpoint must be finite"));
        }
        let lo = self.rational()?;
        self.skip_ws();
        self.expect(b',', "','")?;
        self.skip_ws();
        let hi = if self.bytes[self.pos..].starts_with(b"inf") {
            self.pos += 3;
            Endpoint::PosInf
        } else {
            Endpoint::Finite(self.rational()?)
        };
        self.skip_ws();
        let close_pos = self.pos;
        let hi_closed = match self.bump() {
            Some(b']') => true,
            Some(b')') => false,
            _ => return Err(ParseError::new(close_pos, "expected ']' or ')'")),
        };
        if hi == Endpoint::PosInf && hi_closed {
            return Err(ParseError::new(close_pos, "an infinite endpoint must be open"));
        }
        Interval::new(lo, lo_closed, hi, hi_closed)
            .ok_or_else(|| ParseError::new(close_pos, "empty interval"))
    }

    fn queue(&mut self) -> Result<IntervalQueue, ParseError> {
        self.expect(b'{', "'{'")?;
        self.skip_ws();
        let mut items = Vec::new();
        if !self.eat(b'}') {
            loop {
                items.push(self.interval()?);
                self.skip_ws();
                if self.eat(b',') {
                    self.skip_ws();
                } else {
                    self.expect(b'}', "'}' or ','")?;
                    break;
                }
            }
        }
        Ok(IntervalQueue::construct(items))
    }

    // formula := implies
    fn formula(&mut self) -> Result<Formula, ParseError> {
        self.implies()
    }

    // implies := or ('->' implies)?   (right-associative)
    fn implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        self.skip_ws();
        if self.peek() == Some(b'-') && self.peek_at(1) == Some(b'>') {
            self.pos += 2;
            self.skip_ws();
            let rhs = self.implies()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    // or := and ('|' and)*
    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        loop {
            self.skip_ws();
            if self.eat(b'|') {
                self.skip_ws();
                let rhs = self.and()?;
                lhs = Formula::or(lhs, rhs);
            } else {
                return Ok(lhs);
            }
        }
    }

    // and := until ('&' until)*
    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.until()?;
        loop {
            self.skip_ws();
            if self.eat(b'&') {
                self.skip_ws();
                let rhs = self.until()?;
                lhs = Formula::and(lhs, rhs);
            } else {
                return Ok(lhs);
            }
        }
    }

    // until := unary ('U' timing? unary)?   (non-associative)
    fn until(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        self.skip_ws();
        if self.peek() == Some(b'U') {
            let op_pos = self.pos;
            self.pos += 1;
            let timing = self.timing()?;
            self.skip_ws();
            let rhs = self.unary()?;
            self.skip_ws();
            if self.peek() == Some(b'U') {
                return Err(ParseError::new(
                    self.pos,
                    "'U' is non-associative; parenthesize chained untils",
                ));
            }
            let f = Formula::until(lhs, rhs, timing)
                .map_err(|e| ParseError::new(op_pos, e.to_string()))?;
            Ok(f)
        } else {
            Ok(lhs)
        }
    }

    // unary := '!' unary | 'F' timing? unary | 'G' timing? unary | primary
    fn unary(&mut self) -> Result<Formula, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'!') => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(op @ (b'F' | b'G')) => {
                let op_pos = self.pos;
                self.pos += 1;
                let timing = self.timing()?;
                let child = self.unary()?;
                let f = if op == b'F' {
                    Formula::eventually(timing, child)
                } else {
                    Formula::always(timing, child)
                };
                f.map_err(|e| ParseError::new(op_pos, e.to_string()))
            }
            _ => self.primary(),
        }
    }

    // primary := 'true' | 'false' | ident | '(' formula ')'
    fn primary(&mut self) -> Result<Formula, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.formula()?;
                self.skip_ws();
                self.expect(b')', "')'")?;
                Ok(inner)
            }
            Some(b'a'..=b'z' | b'_') => {
                let name = self.ident();
                match name.as_str() {
                    "true" => Ok(Formula::True),
                    "false" => Ok(Formula::False),
                    _ => Ok(Formula::Atom(name)),
                }
            }
            _ => Err(ParseError::new(self.pos, "expected a formula")),
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(b'a'..=b'z' | b'A'..=b'Z' | b'0'..=b'9' | b'_')) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("identifier is ascii")
            .to_string()
    }

    /// A timing interval after `U`, `F`, or `G`. `[` opens one outright;
    /// `(` opens one only when followed by a digit, otherwise it is a
    /// parenthesized argument. Absent timing defaults to `(0,inf)`.
    fn timing(&mut self) -> Result<Interval, ParseError> {
        self.skip_ws();
        let explicit = match self.peek() {
            Some(b'[') => true,
            Some(b'(') => {
                let mut ahead = 1;
                while matches!(self.peek_at(ahead), Some(b' ' | b'\t' | b'\n' | b'\r')) {
                    ahead += 1;
                }
                matches!(self.peek_at(ahead), Some(b'0'..=b'9'))
            }
            _ => false,
        };
        if !explicit {
            return Ok(Interval::open_unbounded(BigRational::zero()));
        }
        let open_pos = self.pos;
        let timing = self.interval()?;
        if timing.is_degenerate() {
            return Err(ParseError::new(open_pos, "degenerate timing interval"));
        }
        Ok(timing)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_forms() {
        assert_eq!(parse_rational("3").unwrap(), BigRational::from_integer(3.into()));
        assert_eq!(parse_rational("7/2").unwrap(), BigRational::new(7.into(), 2.into()));
        assert_eq!(parse_rational("1.25").unwrap(), BigRational::new(5.into(), 4.into()));
        assert_eq!(parse_rational("0.50").unwrap(), BigRational::new(1.into(), 2.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("-1").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn interval_forms() {
        assert_eq!(parse_interval("[0,1)").unwrap().to_string(), "[0,1)");
        assert_eq!(parse_interval("( 1 , 2 ]").unwrap().to_string(), "(1,2]");
        assert_eq!(parse_interval("[3,3]").unwrap().to_string(), "[3,3]");
        assert_eq!(parse_interval("[0,inf)").unwrap().to_string(), "[0,inf)");
        assert_eq!(parse_interval("[1.5,7/2]").unwrap().to_string(), "[3/2,7/2]");
        assert!(parse_interval("(1,1)").is_err());
        assert!(parse_interval("[2,1]").is_err());
        assert!(parse_interval("[1,inf]").is_err());
        assert!(parse_interval("[inf,inf)").is_err());
    }

    #[test]
    fn queue_forms() {
        assert_eq!(parse_queue("{}").unwrap(), IntervalQueue::empty());
        assert_eq!(parse_queue("{[0,1), (1,2]}").unwrap().to_string(), "{[0,1), (1,2]}");
        // Unmerged input is normalized.
        assert_eq!(parse_queue("{[0,1), [1,2]}").unwrap().to_string(), "{[0,2]}");
        assert!(parse_queue("{[0,1)").is_err());
    }

    #[test]
    fn formula_examples() {
        let f = parse_formula("g1 U[1,2] g2").unwrap();
        assert_eq!(
            f,
            Formula::until(
                Formula::atom("g1"),
                Formula::atom("g2"),
                parse_interval("[1,2]").unwrap()
            )
            .unwrap()
        );

        let err = parse_formula("g1 U[1,1] g2").unwrap_err();
        assert!(err.message.contains("degenerate"), "{}", err);

        let f = parse_formula("F(0,1) g").unwrap();
        assert_eq!(
            f,
            Formula::eventually(parse_interval("(0,1)").unwrap(), Formula::atom("g")).unwrap()
        );
    }

    #[test]
    fn precedence_and_associativity() {
        // Unary binds tightest, then U, &, |, ->.
        let f = parse_formula("!a U[0,1] b & c | d -> e").unwrap();
        let expected = Formula::implies(
            Formula::or(
                Formula::and(
                    Formula::until(
                        Formula::not(Formula::atom("a")),
                        Formula::atom("b"),
                        parse_interval("[0,1]").unwrap(),
                    )
                    .unwrap(),
                    Formula::atom("c"),
                ),
                Formula::atom("d"),
            ),
            Formula::atom("e"),
        );
        assert_eq!(f, expected);

        assert_eq!(
            parse_formula("a -> b -> c").unwrap(),
            Formula::implies(
                Formula::atom("a"),
                Formula::implies(Formula::atom("b"), Formula::atom("c"))
            )
        );

        assert!(parse_formula("a U b U c").is_err());
        assert!(parse_formula("a U[0,1] (b U[0,1] c)").is_ok());
    }

    #[test]
    fn default_timing_is_unbounded() {
        let f = parse_formula("F g").unwrap();
        assert_eq!(
            f,
            Formula::eventually(parse_interval("(0,inf)").unwrap(), Formula::atom("g")).unwrap()
        );
        // 'F (g)' is application to a parenthesized formula, not an interval.
        let f = parse_formula("F (g)").unwrap();
        assert_eq!(
            f,
            Formula::eventually(parse_interval("(0,inf)").unwrap(), Formula::atom("g")).unwrap()
        );
    }

    #[test]
    fn error_positions_point_at_the_problem() {
        let err = parse_formula("g1 &").unwrap_err();
        assert_eq!(err.position, 4);
        let err = parse_formula("(g1").unwrap_err();
        assert_eq!(err.position, 3);
    }
}
