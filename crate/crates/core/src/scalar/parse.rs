//! Infix text syntax for [`ScalarExpr`].
//!
//! Grammar: `+ - * / ^`, unary minus, parentheses, decimal and integer
//! literals (read exactly), symbols, `exp/sin/cos/sqrt(...)`, and named
//! functions of one coordinate written `h(t)`, `h'(t)`, `h''(t)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
#[cfg(test)]
use num_traits::Zero;

use super::expr::ScalarExpr;
use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Prime,
    Op(char),
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_digit() || chars[i].1 == '.') {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((pos, Tok::Num(parse_decimal(&text, pos)?)));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((pos, Tok::Ident(text)));
        } else {
            let tok = match c {
                '\'' | '′' => Tok::Prime,
                '″' => {
                    out.push((pos, Tok::Prime));
                    Tok::Prime
                }
                '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
                '−' => Tok::Op('-'),
                '·' => Tok::Op('*'),
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    return Err(ParseError::new(pos, format!("unexpected character '{c}'")));
                }
            };
            out.push((pos, tok));
            i += 1;
        }
    }
    Ok(out)
}

fn parse_decimal(text: &str, pos: usize) -> Result<BigRational, ParseError> {
    let bad = || ParseError::new(pos, format!("malformed number '{text}'"));
    let (int_part, frac_part) = match text.split_once('.') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    };
    if (int_part.is_empty() && frac_part.is_empty()) || frac_part.contains('.') {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    let d = num_traits::pow(BigInt::from(10), frac_part.len());
    Ok(BigRational::new(n, d))
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        let at = self.offset();
        match self.next() {
            Some(t) if t == want => Ok(()),
            _ => Err(ParseError::new(at, format!("expected {what}"))),
        }
    }

    fn expr(&mut self) -> Result<ScalarExpr, ParseError> {
        let mut lhs = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if c == '+' { lhs + rhs } else { lhs - rhs };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<ScalarExpr, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if c == '*' { lhs * rhs } else { lhs / rhs };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<ScalarExpr, ParseError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<ScalarExpr, ParseError> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Op('^')) {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.offset();
        let exponent = self.unary()?;
        let value = exponent
            .try_to_ratfunc()
            .and_then(|r| r.as_constant())
            .ok_or_else(|| ParseError::new(at, "exponent must be a rational constant"))?;
        if value.is_integer() {
            let k: i32 = value
                .numer()
                .try_into()
                .map_err(|_| ParseError::new(at, "exponent out of range"))?;
            Ok(base.pow(k))
        } else if value == BigRational::new(BigInt::one(), BigInt::from(2)) {
            Ok(base.sqrt())
        } else if value == BigRational::new(BigInt::from(-1), BigInt::from(2)) {
            Ok(ScalarExpr::one() / base.sqrt())
        } else {
            Err(ParseError::new(at, "only integer and half-integer exponents ±1/2 are supported"))
        }
    }

    fn primary(&mut self) -> Result<ScalarExpr, ParseError> {
        let at = self.offset();
        match self.next() {
            Some(Tok::Num(c)) => Ok(ScalarExpr::Num(c)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                let mut order = 0u32;
                while self.peek() == Some(&Tok::Prime) {
                    self.pos += 1;
                    order += 1;
                }
                if self.peek() != Some(&Tok::LParen) {
                    if order > 0 {
                        return Err(ParseError::new(at, "derivative marks need an argument, e.g. h'(t)"));
                    }
                    return Ok(ScalarExpr::sym(&name));
                }
                self.pos += 1;
                let elementary = match name.as_str() {
                    "exp" | "sin" | "cos" | "sqrt" if order == 0 => true,
                    _ => false,
                };
                if elementary {
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, "')'")?;
                    return Ok(match name.as_str() {
                        "exp" => arg.exp(),
                        "sin" => arg.sin(),
                        "cos" => arg.cos(),
                        _ => arg.sqrt(),
                    });
                }
                let arg_at = self.offset();
                let arg = match self.next() {
                    Some(Tok::Ident(a)) => a,
                    _ => {
                        return Err(ParseError::new(
                            arg_at,
                            "a named function takes a single coordinate argument",
                        ))
                    }
                };
                self.expect(Tok::RParen, "')'")?;
                Ok(ScalarExpr::func(&name, &arg, order))
            }
            Some(_) => Err(ParseError::new(at, "unexpected token")),
            None => Err(ParseError::new(at, "unexpected end of input")),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<ScalarExpr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
    };
    if p.peek().is_none() {
        return Err(ParseError::new(0, "empty expression"));
    }
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(ParseError::new(p.offset(), "trailing input"));
    }
    if e.try_to_ratfunc().is_none() {
        return Err(ParseError::new(0, "division by zero"));
    }
    Ok(e)
}

impl std::str::FromStr for ScalarExpr {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_expr(s)
    }
}
