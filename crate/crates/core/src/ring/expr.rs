//! Text front end for polynomials.
//!
//! Accepted input: sums and differences of terms; a term is a product of
//! integer or `a/b` coefficients and variable powers `x^e`, written with `*`
//! or by juxtaposition (`2x y^2`, `3*x*y`). When every letter of an unknown
//! identifier is itself a one-letter variable, the identifier is read as a
//! product, so `xyz` means `x*y*z`.

use num::BigInt;

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};

pub fn parse(text: &str, vars: &[String], field: Field) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
        field,
    };
    p.expression()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
    field: Field,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn syntax(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn expression(&mut self) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.field, self.vars.len());
        self.skip_ws();
        let mut negative = false;
        match self.peek() {
            Some(b'-') => {
                negative = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            self.skip_ws();
            let (mono, mut c) = self.term()?;
            if negative {
                c = -&c;
            }
            out.add_term(mono, c);
            self.skip_ws();
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(c) => return Err(self.syntax(format!("unexpected character `{}`", c as char))),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(Monomial, Scalar)> {
        let mut exps = vec![0u32; self.vars.len()];
        let mut coeff = self.field.one();
        let mut factors = 0;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let c = self.coefficient()?;
                    coeff = &coeff * &c;
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.variable_power(&mut exps)?,
                _ => {
                    return Err(if factors == 0 {
                        self.syntax("expected a coefficient or a variable")
                    } else {
                        self.syntax("expected a factor after `*`")
                    });
                }
            }
            factors += 1;
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    self.skip_ws();
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'_' => {}
                _ => return Ok((Monomial::new(exps), coeff)),
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse as an integer"))
    }

    fn coefficient(&mut self) -> Result<Scalar> {
        let num = self.integer()?;
        if self.peek() != Some(b'/') {
            return Ok(self.field.from_bigint(&num));
        }
        self.pos += 1;
        let at = self.pos;
        let den = self.integer()?;
        self.field.from_ratio(&num, &den).ok_or(Error::Syntax {
            offset: at,
            message: format!("denominator {den} vanishes in {}", self.field),
        })
    }

    fn exponent(&mut self) -> Result<u32> {
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let e = self.integer()?;
        u32::try_from(e).map_err(|_| Error::Syntax {
            offset: at,
            message: "exponent too large".into(),
        })
    }

    fn variable_power(&mut self, exps: &mut [u32]) -> Result<()> {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
        let indices: Vec<usize> = match self.vars.iter().position(|v| v == name) {
            Some(i) => vec![i],
            None => name
                .chars()
                .map(|ch| {
                    self.vars
                        .iter()
                        .position(|v| v.len() == 1 && v.starts_with(ch))
                        .ok_or_else(|| Error::UnknownVariable {
                            name: name.to_string(),
                            offset: start,
                        })
                })
                .collect::<Result<_>>()?,
        };
        let e = self.exponent()?;
        // in `xy^2` the exponent binds to the last letter only
        let last = indices.len() - 1;
        for (k, i) in indices.into_iter().enumerate() {
            let add = if k == last { e } else { 1 };
            exps[i] = exps[i]
                .checked_add(add)
                .ok_or_else(|| self.syntax("exponent overflow"))?;
        }
        Ok(())
    }
}
