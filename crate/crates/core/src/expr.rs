//! The shared rational-function expression grammar: integer literals,
//! variable names, binary `+ - * /`, unary `-`, `^` with integer exponent,
//! parentheses. Whitespace is insignificant; multiplication is always
//! explicit (`2*t`, never `2t`).

use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&ch) = chars.peek() {
        match ch {
            c if c.is_whitespace() => {
                chars.next();
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                // "2t" must be rejected: a literal directly followed by a
                // letter means a missing explicit `*`
                if let Some(&c) = chars.peek() {
                    if c.is_ascii_alphabetic() || c == '_' {
                        return Err(Error::ParseError(format!(
                            "missing '*' between literal {} and '{}'",
                            s, c
                        )));
                    }
                }
                out.push(Token::Int(s));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Ident(s));
            }
            '+' => {
                chars.next();
                out.push(Token::Plus);
            }
            '-' => {
                chars.next();
                out.push(Token::Minus);
            }
            '*' => {
                chars.next();
                out.push(Token::Star);
            }
            '/' => {
                chars.next();
                out.push(Token::Slash);
            }
            '^' => {
                chars.next();
                out.push(Token::Caret);
            }
            '(' => {
                chars.next();
                out.push(Token::LParen);
            }
            ')' => {
                chars.next();
                out.push(Token::RParen);
            }
            other => {
                return Err(Error::ParseError(format!(
                    "unexpected character '{}'",
                    other
                )));
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor (('*' | '/') factor)*
    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.next();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Token::Slash) => {
                    self.next();
                    let d = self.factor()?;
                    acc = acc.mul(&d.try_inv().map_err(|_| {
                        Error::ParseError("division by zero".into())
                    })?);
                }
                _ => return Ok(acc),
            }
        }
    }

    // factor := '-' factor | power
    fn factor(&mut self) -> Result<RatFunc> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.next();
            return Ok(self.factor()?.neg());
        }
        self.power()
    }

    // power := atom ('^' exponent)?   with exponent := '-'? INT
    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.next();
            let negative = if matches!(self.peek(), Some(Token::Minus)) {
                self.next();
                true
            } else {
                false
            };
            match self.next() {
                Some(Token::Int(s)) => {
                    let e: i64 = s
                        .parse()
                        .map_err(|_| Error::ParseError(format!("bad exponent {}", s)))?;
                    let e = if negative { -e } else { e };
                    return base
                        .pow_i64(e)
                        .map_err(|_| Error::ParseError("zero to a negative power".into()));
                }
                t => {
                    return Err(Error::ParseError(format!(
                        "expected integer exponent, found {:?}",
                        t
                    )));
                }
            }
        }
        Ok(base)
    }

    // atom := INT | IDENT | '(' expr ')'
    fn atom(&mut self) -> Result<RatFunc> {
        match self.next() {
            Some(Token::Int(s)) => {
                let n: i64 = s
                    .parse()
                    .map_err(|_| Error::ParseError(format!("integer overflow in {}", s)))?;
                Ok(RatFunc::int(n))
            }
            Some(Token::Ident(name)) => Ok(RatFunc::var(&name)),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    t => Err(Error::ParseError(format!(
                        "expected ')', found {:?}",
                        t
                    ))),
                }
            }
            t => Err(Error::ParseError(format!(
                "expected literal, variable, or '(', found {:?}",
                t
            ))),
        }
    }
}

/// Parses an expression into its canonical rational-function value.
pub fn parse_expr(input: &str) -> Result<RatFunc> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(Error::ParseError("empty expression".into()));
    }
    let mut p = Parser { tokens, pos: 0 };
    let value = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::ParseError(format!(
            "trailing input at token {:?}",
            p.tokens[p.pos]
        )));
    }
    Ok(value)
}

/// Deterministic rendering; `parse_expr(render_expr(f)) == f` always.
pub fn render_expr(f: &RatFunc) -> String {
    f.to_string()
}
