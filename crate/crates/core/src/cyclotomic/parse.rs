//! Scalar literal syntax: integers, `p/q`, `zeta(N)`, `zeta(N)^k`, `+ - * /`,
//! parentheses. No floating-point literals.

use std::str::FromStr;

use num_bigint::BigInt;

use super::Cyclotomic;
use crate::error::Error;

struct Parser<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Literal {
            input: self.input.to_string(),
            message: format!("{} at offset {}", message.into(), self.pos),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), Error> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn integer(&mut self) -> Result<BigInt, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        if self.bytes.get(self.pos) == Some(&b'.') {
            return Err(self.err("floating-point literals are not accepted"));
        }
        Ok(self.input[start..self.pos].parse().expect("ascii digits"))
    }

    fn small_integer(&mut self) -> Result<i64, Error> {
        let neg = self.eat(b'-');
        let v: i64 = self
            .integer()?
            .try_into()
            .map_err(|_| self.err("integer too large"))?;
        Ok(if neg { -v } else { v })
    }

    fn expr(&mut self) -> Result<Cyclotomic, Error> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Cyclotomic, Error> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let d = self.unary()?;
                acc = acc
                    .checked_div(&d)
                    .map_err(|_| self.err("division by zero"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Cyclotomic, Error> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Cyclotomic, Error> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let exp = if self.eat(b'(') {
            let e = self.small_integer()?;
            self.expect(b')')?;
            e
        } else {
            self.small_integer()?
        };
        base.pow(exp)
            .map_err(|_| self.err("negative power of zero"))
    }

    fn atom(&mut self) -> Result<Cyclotomic, Error> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(Cyclotomic::from_rational(
                num_rational::BigRational::from_integer(self.integer()?),
            )),
            Some(_) if self.input[self.pos..].starts_with("zeta") => {
                self.pos += 4;
                self.expect(b'(')?;
                let n = self.small_integer()?;
                self.expect(b')')?;
                if n < 1 || n > u32::MAX as i64 {
                    return Err(self.err("zeta conductor must be positive"));
                }
                Ok(Cyclotomic::zeta(n as u32).expect("positive conductor"))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl FromStr for Cyclotomic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut p = Parser {
            input: s,
            bytes: s.as_bytes(),
            pos: 0,
        };
        let v = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}
