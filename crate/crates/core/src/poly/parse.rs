//! Recursive-descent parser for the polynomial grammar:
//!
//! ```text
//! expression  := sign? term (('+' | '-') term)*
//! term        := coefficient ('*' factor)* | factor ('*' factor)*
//! factor      := variable ('^' integer)?
//! variable    := 'x' integer
//! coefficient := integer | integer '/' integer
//! ```
//!
//! Whitespace is insignificant. The optional leading sign lets printed
//! polynomials with a negative leading coefficient parse back.

use num_bigint::BigInt;

use super::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

pub(crate) fn parse_poly(text: &str, nvars: usize, field: FieldSpec) -> Result<Polynomial> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars,
        field,
    };
    let poly = parser.expression()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
    field: FieldSpec,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
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

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expression(&mut self) -> Result<Polynomial> {
        let mut poly = Polynomial::zero(self.field, self.nvars);
        let mut negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let (m, c) = self.term()?;
            poly.add_term(m, if negate { -c } else { c });
            negate = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => break,
            };
            self.pos += 1;
        }
        Ok(poly)
    }

    fn term(&mut self) -> Result<(Monomial, Scalar)> {
        let mut exps = vec![0u32; self.nvars];
        let coeff = match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let c = self.coefficient()?;
                if !self.eat(b'*') {
                    return Ok((Monomial::new(exps), c));
                }
                c
            }
            Some(b'x') => self.field.one(),
            Some(_) => return Err(self.error("expected a coefficient or a variable")),
            None => return Err(self.error("unexpected end of input")),
        };
        loop {
            let (i, e) = self.factor()?;
            exps[i] = exps[i]
                .checked_add(e)
                .ok_or_else(|| self.error("exponent overflow"))?;
            if !self.eat(b'*') {
                break;
            }
        }
        Ok((Monomial::new(exps), coeff))
    }

    fn factor(&mut self) -> Result<(usize, u32)> {
        if !self.eat(b'x') {
            return Err(self.error("expected a variable"));
        }
        // No whitespace between `x` and its index.
        let start = self.pos;
        let index = self.digits()?;
        let index: usize = index.parse().map_err(|_| Error::Syntax {
            position: start,
            message: "variable index too large".into(),
        })?;
        if index >= self.nvars {
            return Err(Error::UnknownVariable {
                index,
                nvars: self.nvars,
                position: start,
            });
        }
        let mut exp = 1;
        if self.eat(b'^') {
            self.skip_ws();
            let at = self.pos;
            exp = self.digits()?.parse().map_err(|_| Error::Syntax {
                position: at,
                message: "exponent too large".into(),
            })?;
        }
        Ok((index, exp))
    }

    fn coefficient(&mut self) -> Result<Scalar> {
        self.skip_ws();
        let numer: BigInt = self.digits()?.parse().expect("digits parse");
        if !self.eat(b'/') {
            return Ok(self.field.from_bigint(&numer));
        }
        self.skip_ws();
        let at = self.pos;
        let denom: BigInt = self.digits()?.parse().expect("digits parse");
        self.field.ratio(&numer, &denom).map_err(|_| Error::Syntax {
            position: at,
            message: format!("denominator vanishes in {}", self.field),
        })
    }

    fn digits(&mut self) -> Result<&str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    #[test]
    fn parses_cubic_threefold() {
        let f = parse_poly("x0^3 + x1^3 + x0*x1^2 + x1*x2^2 + x3^3 + x2*x4^2", 5, q()).unwrap();
        assert_eq!(f.num_terms(), 6);
        assert_eq!(f.homogeneous_degree(), Some(3));
    }

    #[test]
    fn parses_zero_and_fractions() {
        assert!(parse_poly("0", 4, q()).unwrap().is_zero());
        let f = parse_poly("x0^2 - 1/2*x1*x2", 3, q()).unwrap();
        assert_eq!(f.num_terms(), 2);
        let m = Monomial::new(vec![0, 1, 1]);
        assert_eq!(
            f.coefficient(&m),
            q().ratio(&(-1).into(), &2.into()).unwrap()
        );
        assert_eq!(f.to_string(), "x0^2 - 1/2*x1*x2");
    }

    #[test]
    fn whitespace_and_repeated_factors() {
        let a = parse_poly("  3 * x0 *x0^ 2 -x1", 2, q()).unwrap();
        let b = parse_poly("3*x0^3-x1", 2, q()).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            parse_poly("-x0 + 2", 1, q()).unwrap().to_string(),
            "-x0 + 2"
        );
    }

    #[test]
    fn modular_coefficients() {
        let f7 = FieldSpec::new(7).unwrap();
        assert_eq!(
            parse_poly("1/2*x0 - x1", 2, f7).unwrap().to_string(),
            "4*x0 + 6*x1"
        );
        assert!(matches!(
            parse_poly("1/7*x0", 1, f7),
            Err(Error::Syntax { position: 2, .. })
        ));
        assert!(parse_poly("7*x0", 1, f7).unwrap().is_zero());
    }

    #[test]
    fn reports_positions() {
        assert_eq!(
            parse_poly("x0 + x5", 3, q()),
            Err(Error::UnknownVariable {
                index: 5,
                nvars: 3,
                position: 6
            })
        );
        assert!(matches!(
            parse_poly("x0 + ", 3, q()),
            Err(Error::Syntax { position: 5, .. })
        ));
        assert!(matches!(
            parse_poly("x0 x1", 3, q()),
            Err(Error::Syntax { position: 3, .. })
        ));
        assert!(matches!(
            parse_poly("2x0", 3, q()),
            Err(Error::Syntax { position: 1, .. })
        ));
        assert!(matches!(
            parse_poly("y0", 3, q()),
            Err(Error::Syntax { position: 0, .. })
        ));
        assert!(matches!(
            parse_poly("", 3, q()),
            Err(Error::Syntax { position: 0, .. })
        ));
        assert!(matches!(
            parse_poly("x 1", 3, q()),
            Err(Error::Syntax { position: 1, .. })
        ));
    }
}
