use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{bail, ensure, Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1
            }
            '-' => {
                out.push(Token::Minus);
                i += 1
            }
            '*' => {
                out.push(Token::Star);
                i += 1
            }
            '^' => {
                out.push(Token::Caret);
                i += 1
            }
            '(' => {
                out.push(Token::LParen);
                i += 1
            }
            ')' => {
                out.push(Token::RParen);
                i += 1
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigInt = chars[start..i].iter().collect::<String>().parse().unwrap();
                // a slash directly after digits makes a rational literal
                if i < chars.len() && chars[i] == '/' {
                    i += 1;
                    let s = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    ensure!(i > s, Parse, "missing denominator in {text:?}");
                    let den: BigInt = chars[s..i].iter().collect::<String>().parse().unwrap();
                    ensure!(!den.is_zero(), Parse, "zero denominator in {text:?}");
                    out.push(Token::Num(BigRational::new(num, den)));
                } else {
                    out.push(Token::Num(BigRational::from_integer(num)));
                }
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphabetic() {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => bail!(Parse, "unexpected character {other:?} in {text:?}"),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    var: Option<&'a str>,
    text: &'a str,
}

type Poly = Vec<BigRational>;

fn poly_add(a: &Poly, b: &Poly, sign: i64) -> Poly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x + y * BigRational::from_integer(sign.into())
        })
        .collect()
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} in {:?}", self.text))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc: Poly = vec![];
        let mut sign = 1;
        if let Some(Token::Minus) = self.peek() {
            self.pos += 1;
            sign = -1;
        } else if let Some(Token::Plus) = self.peek() {
            self.pos += 1;
        }
        loop {
            let term = self.term()?;
            acc = poly_add(&acc, &term, sign);
            match self.peek() {
                Some(Token::Plus) => sign = 1,
                Some(Token::Minus) => sign = -1,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let rhs = self.power()?;
                    acc = poly_mul(&acc, &rhs);
                }
                // implicit multiplication: 2x, 3(x+1)
                Some(Token::Ident(_)) | Some(Token::LParen) | Some(Token::Num(_)) => {
                    let rhs = self.power()?;
                    acc = poly_mul(&acc, &rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            let exp = match self.tokens.get(self.pos) {
                Some(Token::Num(n)) if n.is_integer() => n.to_integer(),
                _ => return Err(self.err("expected integer exponent")),
            };
            self.pos += 1;
            let exp: u32 = exp.try_into().map_err(|_| self.err("exponent out of range"))?;
            let mut acc = vec![BigRational::one()];
            for _ in 0..exp {
                acc = poly_mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let tok = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Token::Num(n)) => Ok(vec![n]),
            Some(Token::Ident(name)) => match self.var {
                Some(v) if v == name => Ok(vec![BigRational::zero(), BigRational::one()]),
                _ => Err(self.err(&format!("unknown symbol {name:?}"))),
            },
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.tokens.get(self.pos) {
                    Some(Token::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.err("unbalanced parenthesis")),
                }
            }
            Some(Token::Minus) => {
                let inner = self.power()?;
                Ok(inner.into_iter().map(|c| -c).collect())
            }
            _ => Err(self.err("unexpected end of expression")),
        }
    }
}

/// Parses a univariate polynomial in `var` (or a constant when `var` is
/// `None`) with rational coefficients, returning coefficients from the
/// constant term upwards. Trailing zeros are removed; zero is `[0]`.
pub(crate) fn parse_polynomial(text: &str, var: Option<&str>) -> Result<Vec<BigRational>> {
    let tokens = tokenize(text)?;
    ensure!(!tokens.is_empty(), Parse, "empty expression");
    let mut parser = Parser { tokens, pos: 0, var, text };
    let mut poly = parser.expr()?;
    ensure!(parser.pos == parser.tokens.len(), Parse, "trailing input in {text:?}");
    while poly.len() > 1 && poly.last().unwrap().is_zero() {
        poly.pop();
    }
    if poly.is_empty() {
        poly.push(BigRational::zero());
    }
    Ok(poly)
}

/// Parses a polynomial in a single unnamed variable, e.g. `"x^2-2"`.
/// Returns the variable name (defaulting to `x` for constants) and the
/// coefficients from the constant term upwards.
pub fn parse_univariate(text: &str) -> Result<(String, Vec<BigRational>)> {
    let mut names: Vec<String> = tokenize(text)?
        .into_iter()
        .filter_map(|t| match t {
            Token::Ident(s) => Some(s),
            _ => None,
        })
        .collect();
    names.sort();
    names.dedup();
    ensure!(names.len() <= 1, Parse, "more than one variable in {text:?}");
    let var = names.pop().unwrap_or_else(|| "x".to_string());
    let coeffs = parse_polynomial(text, Some(&var))?;
    Ok((var, coeffs))
}

/// Parses cycle notation such as `"(1 2)(3 4)"` or `"()"` into the image
/// list of a permutation of `{0, .., d-1}` (input is 1-based).
pub fn parse_permutation(text: &str, d: usize) -> Result<Vec<usize>> {
    let mut perm: Vec<usize> = (0..d).collect();
    let mut seen = vec![false; d];
    let trimmed = text.trim();
    ensure!(
        trimmed.is_empty() || (trimmed.starts_with('(') && trimmed.ends_with(')')),
        Parse,
        "permutation must be in cycle notation, got {text:?}"
    );
    for cycle in trimmed.split(')').map(|c| c.trim()).filter(|c| !c.is_empty()) {
        let body = cycle
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("malformed cycle in {text:?}")))?;
        let pts: Vec<usize> = body
            .split([' ', ','])
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad point {s:?} in {text:?}"))))
            .collect::<Result<_>>()?;
        for &p in &pts {
            ensure!(p >= 1 && p <= d, Parse, "point {p} outside 1..={d}");
            ensure!(!seen[p - 1], Parse, "point {p} repeated in {text:?}");
            seen[p - 1] = true;
        }
        for (k, &p) in pts.iter().enumerate() {
            let next = pts[(k + 1) % pts.len()];
            perm[p - 1] = next - 1;
        }
    }
    Ok(perm)
}
