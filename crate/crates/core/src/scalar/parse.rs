//! Compact text grammar for scalars, e.g. `-1/2*hbar^2*rho^-2 + i*mu*rhodot`.
//!
//! ```text
//! expr   := ["-"] term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := int ["/" int] | "i" | symbol ["^" ["-"] int] | "(" expr ")"
//! ```

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{GaussianRational, ScalarExpr, Symbol};
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !f(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn int(&mut self) -> Result<BigInt> {
        let digits = self.take_while(|c| c.is_ascii_digit());
        digits.parse().map_err(|_| self.err("expected integer"))
    }

    fn expr(&mut self) -> Result<ScalarExpr> {
        let mut acc = ScalarExpr::zero();
        let mut sign = 1;
        if self.peek() == Some('-') {
            self.bump();
            sign = -1;
        }
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                _ => return Ok(acc),
            }
            self.bump();
        }
    }

    fn term(&mut self) -> Result<ScalarExpr> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ScalarExpr> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.bump();
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.int()?;
                let den = if self.peek() == Some('/') {
                    self.bump();
                    self.int()?
                } else {
                    BigInt::from(1)
                };
                if den == BigInt::from(0) {
                    return Err(self.err("zero denominator"));
                }
                Ok(ScalarExpr::rational(BigRational::new(num, den)))
            }
            Some(c) if c.is_alphabetic() => {
                let name = self.take_while(|c| c.is_alphanumeric() || c == '_');
                if name == "i" {
                    return Ok(ScalarExpr::constant(GaussianRational::i()));
                }
                let sym = Symbol::from_str(name)?;
                let mut e = 1i32;
                if self.peek() == Some('^') {
                    self.bump();
                    let neg = self.peek() == Some('-');
                    if neg {
                        self.bump();
                    }
                    let k: i32 = self.int()?.try_into().map_err(|_| self.err("exponent out of range"))?;
                    e = if neg { -k } else { k };
                }
                Ok(ScalarExpr::pow_sym(sym, e))
            }
            _ => Err(self.err("expected factor")),
        }
    }
}

impl FromStr for ScalarExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let e = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn compact_monomial() {
        let e: ScalarExpr = "3/2*hbar^2*rho^-1*i".parse().unwrap();
        let want = (&ScalarExpr::pow_sym(Symbol::Hbar, 2) * &ScalarExpr::pow_sym(Symbol::Rho, -1))
            .scale(&GaussianRational::new(rat(0, 1), rat(3, 2)));
        assert_eq!(e, want);
    }

    #[test]
    fn sums_and_groups() {
        let e: ScalarExpr = "-(rho - 1)*rho + rho^2".parse().unwrap();
        assert_eq!(e, ScalarExpr::sym(Symbol::Rho));
    }

    #[test]
    fn errors() {
        assert!(matches!("tau".parse::<ScalarExpr>(), Err(Error::UnknownSymbol(_))));
        assert!(matches!("1/0".parse::<ScalarExpr>(), Err(Error::Parse(_))));
        assert!(matches!("rho*".parse::<ScalarExpr>(), Err(Error::Parse(_))));
    }
}
