//! Text input for rank-1 elements.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := power (('*' | '/') power)*
//! power  := atom ['^' ['-'] digits]
//! atom   := 'E' | 'F' | 'K' | 'q' | digits | '(' expr ')'
//! ```
//!
//! Division is only by nonzero scalars; negative powers only of units.

use num_bigint::BigInt;

use super::{Gen, NCElement};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::torusring::QScalar;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(s.parse().expect("digits"))
    }

    fn expr(&mut self) -> Result<NCElement> {
        let mut acc = if self.eat(b'-') {
            -self.term()?
        } else {
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<NCElement> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = acc.concat(&self.power()?);
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.power()?.normalize();
                match d.as_scalar() {
                    Some(s) if !s.is_zero() => acc = acc.scale(&s.recip()?),
                    _ => {
                        return Err(Error::Parse {
                            offset: at,
                            message: "division by a non-scalar or by zero".into(),
                        })
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<NCElement> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        let at = self.pos;
        let e: i64 = match i64::try_from(self.digits()?) {
            Ok(e) => e,
            Err(_) => return self.err("exponent too large"),
        };
        let e = if neg { -e } else { e };
        if e < 0 {
            base.pow(e).map_err(|_| Error::Parse {
                offset: at,
                message: "negative power of a non-unit".into(),
            })
        } else {
            let mut out = NCElement::one();
            for _ in 0..e {
                out = out.concat(&base);
            }
            Ok(out)
        }
    }

    fn atom(&mut self) -> Result<NCElement> {
        match self.peek() {
            Some(b'E') => {
                self.pos += 1;
                Ok(NCElement::gen(Gen::E))
            }
            Some(b'F') => {
                self.pos += 1;
                Ok(NCElement::gen(Gen::F))
            }
            Some(b'K') => {
                self.pos += 1;
                Ok(NCElement::gen(Gen::K))
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(NCElement::scalar(QScalar::q()))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                Ok(NCElement::scalar(QScalar::from_rational(
                    Rational::from_integer(n),
                )))
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses and normalizes an element such as `2*F^2*K^-1*E + (1/(q-q^-1))*K`.
pub fn parse_element(src: &str) -> Result<NCElement> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e.normalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_normal_terms() {
        let e = parse_element("2*F^2*K^-1*E + (1/(q-q^-1))*K").unwrap();
        let c = (&QScalar::q() - &QScalar::q_pow(-1)).recip().unwrap();
        let want = NCElement::normal_term(QScalar::from_int(2), 2, -1, 1)
            + NCElement::normal_term(c, 0, 1, 0);
        assert_eq!(e, want);
    }

    #[test]
    fn normalizes_input() {
        assert_eq!(
            parse_element("E*F - F*E").unwrap(),
            parse_element("(K - K^-1)/(q - q^-1)").unwrap()
        );
        assert_eq!(
            parse_element("K*E").unwrap(),
            parse_element("q^2*E*K").unwrap()
        );
        assert_eq!(parse_element("-K + K").unwrap(), NCElement::zero());
        assert_eq!(
            parse_element(" 3 / 6 ").unwrap(),
            parse_element("1/2").unwrap()
        );
    }

    #[test]
    fn errors_carry_offsets() {
        assert!(matches!(
            parse_element("E^-1"),
            Err(Error::Parse { offset: 3, .. })
        ));
        assert!(matches!(
            parse_element("1/E"),
            Err(Error::Parse { offset: 2, .. })
        ));
        assert!(matches!(
            parse_element("E +"),
            Err(Error::Parse { offset: 3, .. })
        ));
        assert!(matches!(parse_element("(E"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_element("E x"),
            Err(Error::Parse { offset: 2, .. })
        ));
        assert!(matches!(parse_element("1/(q-q)"), Err(Error::Parse { .. })));
    }
}
