//! Element literals: `*`-separated factors with `^` powers, `+`-separated
//! terms, integer (or `a/b` rational) coefficients; whitespace insignificant.
//! Example: `2*y2^3*x1 + y3`.

use crate::algebra::AlgebraSpec;
use crate::element::Element;
use crate::error::AlgebraError;
use crate::monomial::Monomial;
use crate::scalar::Scalar;

struct Lexer<'a> {
    text: &'a [u8],
    pos: usize,
}

#[derive(Debug, PartialEq)]
enum Token {
    Plus,
    Star,
    Caret,
    Slash,
    Minus,
    Int(i64),
    Name(String),
    End,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Lexer<'a> {
        Lexer {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, msg: impl Into<String>) -> AlgebraError {
        AlgebraError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn next(&mut self) -> Result<Token, AlgebraError> {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.text.len() {
            return Ok(Token::End);
        }
        let c = self.text[self.pos];
        self.pos += 1;
        match c {
            b'+' => Ok(Token::Plus),
            b'*' => Ok(Token::Star),
            b'^' => Ok(Token::Caret),
            b'/' => Ok(Token::Slash),
            b'-' => Ok(Token::Minus),
            b'0'..=b'9' => {
                let start = self.pos - 1;
                while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
                s.parse::<i64>()
                    .map(Token::Int)
                    .map_err(|_| self.error("integer overflow"))
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos - 1;
                loop {
                    if self.pos < self.text.len()
                        && (self.text[self.pos].is_ascii_alphanumeric()
                            || self.text[self.pos] == b'_')
                    {
                        self.pos += 1;
                    } else if self.pos + 1 < self.text.len()
                        && self.text[self.pos] == b'-'
                        && self.text[self.pos + 1].is_ascii_digit()
                    {
                        // negative-degree display names like `u-1`
                        self.pos += 2;
                    } else {
                        break;
                    }
                }
                Ok(Token::Name(
                    std::str::from_utf8(&self.text[start..self.pos])
                        .unwrap()
                        .to_string(),
                ))
            }
            c => Err(self.error(format!("unexpected character `{}`", c as char))),
        }
    }

    fn peek(&mut self) -> Result<Token, AlgebraError> {
        let save = self.pos;
        let tok = self.next();
        self.pos = save;
        tok
    }
}

/// Parse an element literal over the generators of `spec`.
pub fn parse_element(spec: &AlgebraSpec, text: &str) -> Result<Element, AlgebraError> {
    let mut lex = Lexer::new(text);
    let mut out = Element::zero();
    loop {
        let term = parse_term(spec, &mut lex)?;
        out = &out + &term;
        match lex.next()? {
            Token::Plus => continue,
            Token::End => break,
            t => return Err(lex.error(format!("expected `+` between terms, got {t:?}"))),
        }
    }
    Ok(out)
}

fn parse_term(spec: &AlgebraSpec, lex: &mut Lexer) -> Result<Element, AlgebraError> {
    let p = spec.prime();
    let mut coeff = Scalar::one(p);
    let mut acc = Element::one(p);
    let mut first = true;
    loop {
        match lex.next()? {
            Token::Minus if first => {
                coeff = -&coeff;
                continue;
            }
            Token::Int(n) => {
                let mut c = Scalar::from_int(p, n);
                if let Token::Slash = lex.peek()? {
                    lex.next()?;
                    match lex.next()? {
                        Token::Int(d) if d != 0 && p == 0 => {
                            c = &c * &Scalar::from_rational(1, d);
                        }
                        Token::Int(d) if d != 0 => {
                            c = &c * &Scalar::from_int(p, d).inv()?;
                        }
                        _ => return Err(lex.error("expected nonzero denominator")),
                    }
                }
                coeff = &coeff * &c;
            }
            Token::Name(name) => {
                let gen = lookup(spec, &name, lex)?;
                let exp = match lex.peek()? {
                    Token::Caret => {
                        lex.next()?;
                        match lex.next()? {
                            Token::Int(e) if e >= 0 => e as u32,
                            _ => return Err(lex.error("expected nonnegative exponent")),
                        }
                    }
                    _ => 1,
                };
                let factor = match gen {
                    GenRef::Poly(i) => Element::monomial(Monomial::poly_power(i, exp), p),
                    GenRef::Ext(i) => {
                        let x = Element::monomial(Monomial::ext_gen(i), p);
                        let mut out = Element::one(p);
                        for _ in 0..exp {
                            out = spec.multiply(&out, &x);
                        }
                        out
                    }
                };
                acc = spec.multiply(&acc, &factor);
            }
            t => return Err(lex.error(format!("unexpected token {t:?} in term"))),
        }
        first = false;
        match lex.peek()? {
            Token::Star => {
                lex.next()?;
            }
            _ => break,
        }
    }
    Ok(acc.scale(&coeff))
}

enum GenRef {
    Poly(usize),
    Ext(usize),
}

fn lookup(spec: &AlgebraSpec, name: &str, lex: &Lexer) -> Result<GenRef, AlgebraError> {
    if let Some(i) = spec.poly_gens().iter().position(|g| g.name == name) {
        return Ok(GenRef::Poly(i));
    }
    if let Some(i) = spec.ext_gens().iter().position(|g| g.name == name) {
        return Ok(GenRef::Ext(i));
    }
    let _ = lex;
    Err(AlgebraError::UnknownGenerator(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator;

    fn spec() -> AlgebraSpec {
        AlgebraSpec::new(
            2,
            vec![Generator::new("y2", 2), Generator::new("y3", 3)],
            vec![Generator::new("x1", 1)],
        )
        .unwrap()
    }

    #[test]
    fn parses_products_and_powers() {
        let s = spec();
        let e = parse_element(&s, "y2^2 * y3 + x1 * y2").unwrap();
        assert_eq!(s.element_string(&e), "y2^2*y3 + x1*y2");
    }

    #[test]
    fn whitespace_insignificant() {
        let s = spec();
        assert_eq!(
            parse_element(&s, "y2*y3").unwrap(),
            parse_element(&s, "  y2 * y3 ").unwrap()
        );
    }

    #[test]
    fn unknown_generator_is_an_error() {
        let s = spec();
        match parse_element(&s, "y2*y9") {
            Err(AlgebraError::UnknownGenerator(name)) => assert_eq!(name, "y9"),
            other => panic!("expected unknown generator error, got {other:?}"),
        }
    }

    #[test]
    fn coefficients_reduce_into_the_field() {
        let s = spec();
        // 2 = 0 mod 2
        assert!(parse_element(&s, "2*y2").unwrap().is_zero());
        let q = AlgebraSpec::new(0, vec![Generator::new("y", 2)], vec![]).unwrap();
        let e = parse_element(&q, "-3*y + 1/2*y").unwrap();
        assert_eq!(q.element_string(&e), "-5/2*y");
    }

    #[test]
    fn display_roundtrip() {
        let s = spec();
        let e = parse_element(&s, "y3 + x1*y2 + y2^3").unwrap();
        let text = s.element_string(&e);
        assert_eq!(parse_element(&s, &text).unwrap(), e);
    }
}
