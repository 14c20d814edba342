//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' unary)?          (right-associative)
//! atom  := number | 't' | 'pi' | 'e' | name '(' expr ')' | '(' expr ')'
//! ```

use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use super::{BinOp, Expr, Func};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    EmptyInput,
    UnexpectedChar(char),
    UnexpectedEnd,
    UnknownIdentifier(String),
    ExpectedOpenParen(String),
    ExpectedCloseParen,
    InvalidNumber,
    TrailingInput,
}

/// Syntax error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::EmptyInput => write!(f, "empty input"),
            ParseErrorKind::UnexpectedChar(c) => {
                write!(f, "unexpected character `{c}` at byte {}", self.offset)
            }
            ParseErrorKind::UnexpectedEnd => {
                write!(f, "unexpected end of input at byte {}", self.offset)
            }
            ParseErrorKind::UnknownIdentifier(name) => {
                write!(f, "unknown identifier `{name}` at byte {}", self.offset)
            }
            ParseErrorKind::ExpectedOpenParen(name) => {
                write!(f, "expected `(` after `{name}` at byte {}", self.offset)
            }
            ParseErrorKind::ExpectedCloseParen => {
                write!(f, "expected `)` at byte {}", self.offset)
            }
            ParseErrorKind::InvalidNumber => {
                write!(f, "invalid numeric literal at byte {}", self.offset)
            }
            ParseErrorKind::TrailingInput => {
                write!(f, "unexpected trailing input at byte {}", self.offset)
            }
        }
    }
}

impl core::error::Error for ParseError {}

pub fn parse_str(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error(0, ParseErrorKind::EmptyInput));
    }
    let expr = p.parse_expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(p.pos, ParseErrorKind::TrailingInput));
    }
    Ok(expr)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, offset: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { offset, kind }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\r' | b'\n')) {
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

    fn parse_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_term()?;
        loop {
            self.skip_ws();
            let op = match self.peek() {
                Some(b'+') => BinOp::Add,
                Some(b'-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.parse_term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn parse_term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_unary()?;
        loop {
            self.skip_ws();
            let op = match self.peek() {
                Some(b'*') => BinOp::Mul,
                Some(b'/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.parse_unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn parse_unary(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        if self.eat(b'-') {
            let inner = self.parse_unary()?;
            Ok(Expr::Neg(Box::new(inner)))
        } else {
            self.parse_power()
        }
    }

    fn parse_power(&mut self) -> Result<Expr, ParseError> {
        let base = self.parse_atom()?;
        self.skip_ws();
        if self.eat(b'^') {
            // right-associative; exponent may carry its own unary minus
            let expo = self.parse_unary()?;
            Ok(Expr::Binary(BinOp::Pow, Box::new(base), Box::new(expo)))
        } else {
            Ok(base)
        }
    }

    fn parse_atom(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.error(self.pos, ParseErrorKind::UnexpectedEnd)),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                self.skip_ws();
                if self.eat(b')') {
                    Ok(inner)
                } else if self.at_end() {
                    Err(self.error(self.pos, ParseErrorKind::UnexpectedEnd))
                } else {
                    Err(self.error(self.pos, ParseErrorKind::ExpectedCloseParen))
                }
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.parse_number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.parse_identifier(),
            Some(c) => Err(self.error(self.pos, ParseErrorKind::UnexpectedChar(c as char))),
        }
    }

    fn parse_number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.eat(b'.') {
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        // exponent part only if a digit actually follows, so `2*e` keeps
        // meaning the constant
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
            } else {
                self.pos = mark;
            }
        }
        let text = core::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii slice");
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Expr::Const(v)),
            _ => Err(self.error(start, ParseErrorKind::InvalidNumber)),
        }
    }

    fn parse_identifier(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        let name = core::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii slice");
        match name {
            "t" => Ok(Expr::Var),
            "pi" => Ok(Expr::Const(core::f64::consts::PI)),
            "e" => Ok(Expr::Const(core::f64::consts::E)),
            "sin" | "cos" | "exp" | "ln" | "abs" | "sqrt" => {
                let func = match name {
                    "sin" => Func::Sin,
                    "cos" => Func::Cos,
                    "exp" => Func::Exp,
                    "ln" => Func::Ln,
                    "abs" => Func::Abs,
                    _ => Func::Sqrt,
                };
                self.skip_ws();
                if !self.eat(b'(') {
                    return Err(self.error(
                        self.pos,
                        ParseErrorKind::ExpectedOpenParen(String::from(name)),
                    ));
                }
                let arg = self.parse_expr()?;
                self.skip_ws();
                if self.eat(b')') {
                    Ok(Expr::Call(func, Box::new(arg)))
                } else if self.at_end() {
                    Err(self.error(self.pos, ParseErrorKind::UnexpectedEnd))
                } else {
                    Err(self.error(self.pos, ParseErrorKind::ExpectedCloseParen))
                }
            }
            _ => Err(self.error(start, ParseErrorKind::UnknownIdentifier(String::from(name)))),
        }
    }
}
