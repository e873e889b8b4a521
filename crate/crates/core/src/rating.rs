//! Text syntax for ratings: `7`, `I`, `2.5-0.5I`, `-3I+1`.
//!
//! ```text
//! value  := term ( ("+" | "-") term )*
//! term   := number | [number] "I"
//! number := decimal literal; the first term may carry a sign
//! ```
//!
//! Whitespace between tokens is ignored. Numeric terms add to the determinate
//! part, `I` terms add their coefficient (default 1) to the indeterminacy part.

use std::fmt;

use thiserror::Error;

use crate::value::NeutroValue;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct RatingParseError {
    /// Character offset into the input.
    pub position: usize,
    pub kind: RatingErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RatingErrorKind {
    Empty,
    MalformedNumber(String),
    TrailingOperator,
    ExpectedTerm,
    ExpectedOperator,
    UnexpectedSymbol(char),
    NonFinite,
}

impl fmt::Display for RatingErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatingErrorKind::Empty => f.write_str("empty rating"),
            RatingErrorKind::MalformedNumber(s) => write!(f, "malformed number {s:?}"),
            RatingErrorKind::TrailingOperator => f.write_str("trailing operator"),
            RatingErrorKind::ExpectedTerm => f.write_str("expected a number or I"),
            RatingErrorKind::ExpectedOperator => f.write_str("expected '+' or '-'"),
            RatingErrorKind::UnexpectedSymbol(c) => write!(f, "unexpected symbol {c:?}"),
            RatingErrorKind::NonFinite => f.write_str("value is not finite"),
        }
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser { chars: src.chars().enumerate().collect(), pos: 0 }
    }

    fn err(&self, kind: RatingErrorKind) -> RatingParseError {
        RatingParseError { position: self.offset(), kind }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.chars.len(), |&(i, _)| i)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    /// Digits with optional fraction and exponent. Returns `None` if no number starts here.
    fn number(&mut self) -> Result<Option<f64>, RatingParseError> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.peek().is_some_and(|c| c.is_ascii_digit()) {
                p.pos += 1;
            }
            p.pos - s
        };
        let int_digits = digits(self);
        let mut frac_digits = 0;
        if self.peek() == Some('.') {
            self.pos += 1;
            frac_digits = digits(self);
        }
        if int_digits == 0 && frac_digits == 0 {
            if self.pos > start {
                self.pos = start;
                return Err(self.err(RatingErrorKind::MalformedNumber(".".into())));
            }
            return Ok(None);
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some('+' | '-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                let text = self.slice(start, self.pos);
                self.pos = mark;
                return Err(self.err(RatingErrorKind::MalformedNumber(text)));
            }
        }
        let text = self.slice(start, self.pos);
        let value: f64 = text.parse().map_err(|_| RatingParseError {
            position: self.chars[start].0,
            kind: RatingErrorKind::MalformedNumber(text.clone()),
        })?;
        if !value.is_finite() {
            return Err(RatingParseError { position: self.chars[start].0, kind: RatingErrorKind::NonFinite });
        }
        Ok(Some(value))
    }

    fn slice(&self, from: usize, to: usize) -> String {
        self.chars[from..to].iter().map(|&(_, c)| c).collect()
    }

    /// One term with the given sign; returns `(det, ind)` contribution.
    fn term(&mut self, sign: f64) -> Result<(f64, f64), RatingParseError> {
        self.skip_ws();
        let number = self.number()?;
        if self.peek() == Some('I') {
            self.pos += 1;
            return Ok((0.0, sign * number.unwrap_or(1.0)));
        }
        match (number, self.peek()) {
            (Some(x), _) => Ok((sign * x, 0.0)),
            (None, None) => Err(self.err(RatingErrorKind::ExpectedTerm)),
            (None, Some(c)) if c == '+' || c == '-' => Err(self.err(RatingErrorKind::ExpectedTerm)),
            (None, Some(c)) => Err(self.err(RatingErrorKind::UnexpectedSymbol(c))),
        }
    }

    fn value(&mut self) -> Result<NeutroValue, RatingParseError> {
        if self.at_end() {
            return Err(self.err(RatingErrorKind::Empty));
        }
        let mut sign = 1.0;
        match self.peek() {
            Some('-') => {
                sign = -1.0;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let (mut det, mut ind) = self.term(sign)?;
        loop {
            if self.at_end() {
                break;
            }
            let op_at = self.pos;
            let sign = match self.peek() {
                Some('+') => 1.0,
                Some('-') => -1.0,
                Some(c) if c.is_ascii_digit() || c == '.' || c == 'I' => {
                    return Err(self.err(RatingErrorKind::ExpectedOperator))
                }
                Some(c) => return Err(self.err(RatingErrorKind::UnexpectedSymbol(c))),
                None => unreachable!(),
            };
            self.pos += 1;
            if self.at_end() {
                self.pos = op_at;
                return Err(self.err(RatingErrorKind::TrailingOperator));
            }
            let (d, i) = self.term(sign)?;
            det += d;
            ind += i;
        }
        NeutroValue::new(det, ind)
            .map_err(|_| RatingParseError { position: 0, kind: RatingErrorKind::NonFinite })
    }
}

pub fn parse_rating(token: &str) -> Result<NeutroValue, RatingParseError> {
    Parser::new(token).value()
}

/// Canonical text form; `parse_rating(&format_rating(v)) == v`.
pub fn format_rating(v: &NeutroValue) -> String {
    let (d, c) = (v.det(), v.ind());
    if c == 0.0 {
        return format!("{d}");
    }
    let coeff = |c: f64| if c == 1.0 { String::new() } else { format!("{c}") };
    if d == 0.0 {
        return if c == -1.0 { "-I".into() } else { format!("{}I", coeff(c)) };
    }
    if c < 0.0 {
        format!("{d}-{}I", coeff(-c))
    } else {
        format!("{d}+{}I", coeff(c))
    }
}
