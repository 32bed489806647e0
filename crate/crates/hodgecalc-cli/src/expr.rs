//! Parser for class expressions such as `10*lambda - delta0 - 2*delta1` or `6 h + 8 lambda`.
//!
//! Grammar:
//!   expr   := term (('+' | '-') term)*
//!   term   := factor ('*'? factor)*
//!   factor := ('-' | '+') factor | number ('/' number)? | ident | '(' expr ')'
//! Juxtaposition multiplies, so `2 delta1` means `2*delta1`. At most one factor of a
//! product may be non-constant.

use std::collections::BTreeMap;
use std::fmt;

use hodgecalc::{Generator, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A symbol of the expression language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Symbol {
    H,
    HDual,
    Base(Generator),
}

/// A linear combination of symbols plus a constant.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Linear {
    pub constant: Rational,
    pub terms: BTreeMap<Symbol, Rational>,
}

impl Linear {
    fn constant(r: Rational) -> Linear {
        Linear {
            constant: r,
            terms: BTreeMap::new(),
        }
    }

    fn symbol(s: Symbol) -> Linear {
        Linear {
            constant: Rational::zero(),
            terms: BTreeMap::from([(s, Rational::one())]),
        }
    }

    fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    fn scale(&self, r: &Rational) -> Linear {
        let mut terms = BTreeMap::new();
        for (s, c) in &self.terms {
            let v = c * r;
            if !v.is_zero() {
                terms.insert(*s, v);
            }
        }
        Linear {
            constant: &self.constant * r,
            terms,
        }
    }

    fn add(mut self, other: &Linear, sign: &Rational) -> Linear {
        self.constant += &(&other.constant * sign);
        for (s, c) in &other.terms {
            let e = self.terms.entry(*s).or_default();
            *e += &(c * sign);
            if e.is_zero() {
                self.terms.remove(s);
            }
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let cs: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let (pos, c) = cs[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push((pos, Tok::Plus));
                i += 1
            }
            '-' | '\u{2212}' => {
                out.push((pos, Tok::Minus));
                i += 1
            }
            '*' => {
                out.push((pos, Tok::Star));
                i += 1
            }
            '/' => {
                out.push((pos, Tok::Slash));
                i += 1
            }
            '(' => {
                out.push((pos, Tok::LParen));
                i += 1
            }
            ')' => {
                out.push((pos, Tok::RParen));
                i += 1
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < cs.len() && cs[i].1.is_ascii_digit() {
                    i += 1;
                }
                out.push((pos, Tok::Num(cs[start..i].iter().map(|x| x.1).collect())));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < cs.len() && (cs[i].1.is_ascii_alphanumeric() || cs[i].1 == '_') {
                    i += 1;
                }
                out.push((pos, Tok::Ident(cs[start..i].iter().map(|x| x.1).collect())));
            }
            other => {
                return Err(ParseError {
                    position: pos,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.pos(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Linear, ParseError> {
        let mut acc = self.term()?;
        loop {
            let sign = match self.peek() {
                Some(Tok::Plus) => Rational::one(),
                Some(Tok::Minus) => -Rational::one(),
                _ => return Ok(acc),
            };
            self.at += 1;
            let t = self.term()?;
            acc = acc.add(&t, &sign);
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen))
    }

    fn term(&mut self) -> Result<Linear, ParseError> {
        let mut acc = self.factor()?;
        loop {
            let start = self.pos();
            if self.peek() == Some(&Tok::Star) {
                self.at += 1;
            } else if !self.starts_factor() {
                return Ok(acc);
            }
            let f = self.factor()?;
            acc = if acc.is_constant() {
                f.scale(&acc.constant)
            } else if f.is_constant() {
                acc.scale(&f.constant)
            } else {
                return Err(ParseError {
                    position: start,
                    message: "product of two classes; only scalar multiplication is allowed".into(),
                });
            };
        }
    }

    fn factor(&mut self) -> Result<Linear, ParseError> {
        let pos = self.pos();
        let Some((_, tok)) = self.toks.get(self.at).cloned() else {
            return self.err("unexpected end of expression");
        };
        self.at += 1;
        match tok {
            Tok::Minus => Ok(self.factor()?.scale(&-Rational::one())),
            Tok::Plus => self.factor(),
            Tok::Num(n) => {
                let num: i64 = n.parse().map_err(|_| ParseError {
                    position: pos,
                    message: format!("number {n} is too large"),
                })?;
                if self.peek() == Some(&Tok::Slash) {
                    self.at += 1;
                    let dpos = self.pos();
                    match self.toks.get(self.at).cloned() {
                        Some((_, Tok::Num(d))) => {
                            self.at += 1;
                            let den: i64 = d.parse().unwrap_or(0);
                            if den == 0 {
                                return Err(ParseError {
                                    position: dpos,
                                    message: "zero or oversized denominator".into(),
                                });
                            }
                            Ok(Linear::constant(Rational::new(num, den)))
                        }
                        _ => Err(ParseError {
                            position: dpos,
                            message: "expected a denominator".into(),
                        }),
                    }
                } else {
                    Ok(Linear::constant(Rational::from_int(num)))
                }
            }
            Tok::Ident(id) => {
                let sym = match id.as_str() {
                    "h" => Symbol::H,
                    "hdual" => Symbol::HDual,
                    other => Symbol::Base(other.parse().map_err(|_| ParseError {
                        position: pos,
                        message: format!("unknown identifier {other:?}"),
                    })?),
                };
                Ok(Linear::symbol(sym))
            }
            Tok::LParen => {
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.at += 1;
                Ok(e)
            }
            Tok::RParen | Tok::Star | Tok::Slash => Err(ParseError {
                position: pos,
                message: "expected a number, identifier or '('".into(),
            }),
        }
    }
}

/// Parses a whole expression.
pub fn parse(s: &str) -> Result<Linear, ParseError> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(ParseError {
            position: 0,
            message: "empty expression".into(),
        });
    }
    let mut p = Parser {
        toks,
        at: 0,
        end: s.len(),
    };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("unexpected token");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn linear_combinations() {
        let e = parse("10*lambda - delta0 - 2*delta1").unwrap();
        assert_eq!(e.terms[&Symbol::Base(Generator::Lambda)], r(10, 1));
        assert_eq!(e.terms[&Symbol::Base(Generator::Delta(1))], r(-2, 1));
        let e = parse("6 h + 1/2 (Delta2p - Delta2m)").unwrap();
        assert_eq!(e.terms[&Symbol::H], r(6, 1));
        assert_eq!(e.terms[&Symbol::Base(Generator::plus(2))], r(1, 2));
        assert_eq!(e.terms[&Symbol::Base(Generator::minus(2))], r(-1, 2));
        assert!(parse("lambda - lambda").unwrap().terms.is_empty());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("lambda + foo").unwrap_err();
        assert_eq!(e.position, 9);
        let e = parse("lambda * delta0").unwrap_err();
        assert_eq!(e.position, 7);
        assert!(parse("").is_err());
        assert!(parse("3/0").is_err());
        assert!(parse("(lambda").is_err());
        assert!(parse("lambda $").is_err());
    }
}
