//! Expression parser for germ input.
//!
//! Grammar: sums and differences of products; products may omit `*` between
//! factors (`3x^2y`); `^` takes a nonnegative integer literal; literals are
//! integers or `p/q`. Variables are `x`, `y` or equivalently `u`, `v`
//! (mapped to `x`, `y`); the two naming schemes may not be mixed.

use num_bigint::BigInt;
use num_traits::Zero;

use super::bivariate::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Var(char),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = text[pos..].chars().next().unwrap();
        let start = pos;
        if c.is_whitespace() {
            pos += c.len_utf8();
            continue;
        }
        if c.is_ascii_digit() {
            let digits = |p: &mut usize| {
                let s = *p;
                while *p < bytes.len() && bytes[*p].is_ascii_digit() {
                    *p += 1;
                }
                text[s..*p].parse::<BigInt>().unwrap()
            };
            let num = digits(&mut pos);
            let value = if pos < bytes.len() && bytes[pos] == b'/' {
                pos += 1;
                if pos >= bytes.len() || !bytes[pos].is_ascii_digit() {
                    return Err(Error::Syntax {
                        position: pos,
                        message: "expected denominator".into(),
                    });
                }
                let den = digits(&mut pos);
                if den.is_zero() {
                    return Err(Error::Syntax {
                        position: start,
                        message: "zero denominator".into(),
                    });
                }
                Rational::new(num, den)
            } else {
                Rational::from_integer(num)
            };
            out.push((start, Tok::Num(value)));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_alphabetic() => Tok::Var(c),
            _ => {
                return Err(Error::Syntax {
                    position: start,
                    message: format!("unexpected character `{c}`"),
                })
            }
        };
        pos += c.len_utf8();
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    scheme: Option<bool>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.at += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) if n.is_integer() => {
                self.at += 1;
                let e: u32 = n.to_integer().try_into().map_err(|_| Error::Syntax {
                    position: pos,
                    message: "exponent too large".into(),
                })?;
                Ok(base.pow(e))
            }
            Some(Tok::Minus) => Err(Error::NegativeExponent { position: pos }),
            _ => Err(Error::Syntax {
                position: pos,
                message: "expected a nonnegative integer exponent".into(),
            }),
        }
    }

    fn primary(&mut self) -> Result<Poly> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(Poly::constant(n))
            }
            Some(Tok::Var(c)) => {
                self.at += 1;
                let (uv, is_x) = match c {
                    'x' => (false, true),
                    'y' => (false, false),
                    'u' => (true, true),
                    'v' => (true, false),
                    _ => {
                        return Err(Error::UnknownVariable {
                            name: c.to_string(),
                            position: pos,
                        })
                    }
                };
                match self.scheme {
                    Some(s) if s != uv => {
                        return Err(Error::Syntax {
                            position: pos,
                            message: "cannot mix x,y with u,v".into(),
                        })
                    }
                    _ => self.scheme = Some(uv),
                }
                Ok(if is_x { Poly::x() } else { Poly::y() })
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(Error::Syntax {
                        position: self.pos(),
                        message: "expected `)`".into(),
                    });
                }
                self.at += 1;
                Ok(inner)
            }
            Some(_) => Err(Error::Syntax {
                position: pos,
                message: "expected a literal, variable or `(`".into(),
            }),
            None => Err(Error::Syntax {
                position: pos,
                message: "unexpected end of input".into(),
            }),
        }
    }
}

pub fn parse_polynomial(text: &str) -> Result<Poly> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        at: 0,
        end: text.len(),
        scheme: None,
    };
    let p = parser.expr()?;
    if parser.at < parser.toks.len() {
        return Err(Error::Syntax {
            position: parser.pos(),
            message: "trailing input".into(),
        });
    }
    Ok(p)
}

impl std::str::FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Poly> {
        parse_polynomial(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    #[test]
    fn example_support() {
        let h = parse_polynomial("y^5+2*x*y^3-x^3*y^2+3*x^4*y").unwrap();
        let support: Vec<_> = h.support().collect();
        assert_eq!(support, vec![(0, 5), (1, 3), (3, 2), (4, 1)]);
        assert_eq!(h.coeff(3, 2), int(-1));
    }

    #[test]
    fn zero_and_square() {
        assert!(parse_polynomial("0").unwrap().is_zero());
        let sq = parse_polynomial("(y-x)^2").unwrap();
        let expect = Poly::from_terms([((0, 2), int(1)), ((1, 1), int(-2)), ((2, 0), int(1))]);
        assert_eq!(sq, expect);
    }

    #[test]
    fn implicit_products_and_rationals() {
        let p = parse_polynomial("3x^2y - 1/2 u").unwrap_err();
        assert!(matches!(p, Error::Syntax { .. }));
        let p = parse_polynomial("3x^2y - 1/2 x").unwrap();
        assert_eq!(p.coeff(2, 1), int(3));
        assert_eq!(p.coeff(1, 0), rat(-1, 2));
        let q = parse_polynomial("v^2 - u^3").unwrap();
        assert_eq!(q, parse_polynomial("y^2-x^3").unwrap());
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_polynomial("x^-1"),
            Err(Error::NegativeExponent { position: 2 })
        );
        assert_eq!(
            parse_polynomial("x^3-t"),
            Err(Error::UnknownVariable {
                name: "t".into(),
                position: 4
            })
        );
        assert!(matches!(
            parse_polynomial("x+"),
            Err(Error::Syntax { position: 2, .. })
        ));
        assert!(matches!(parse_polynomial("(x"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_polynomial("x ? y"),
            Err(Error::Syntax { position: 2, .. })
        ));
    }

    #[test]
    fn print_parse_round_trip() {
        for s in [
            "y^5+2*x*y^3-x^3*y^2+3*x^4*y",
            "7-1/2*x",
            "-x*y+x^2",
            "0",
            "1",
        ] {
            let p = parse_polynomial(s).unwrap();
            let again = parse_polynomial(&p.to_string()).unwrap();
            assert_eq!(p, again);
            assert_eq!(p.to_string(), again.to_string());
        }
    }
}
