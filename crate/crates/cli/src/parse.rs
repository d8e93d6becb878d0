//! Recursive-descent parser shared by scalars, `p(C)` and algebra elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary  := '-' unary | power
//! power  := atom ('^' int)?                  int may carry a sign
//! atom   := integer | identifier | '(' expr ')'
//! ```

use std::fmt;

use qoscillator::pbw::{casimir_element, CenterPolynomial};
use qoscillator::rewrite::{FreeElement, Letter, Word};
use qoscillator::verma::Weight;
use qoscillator::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Zero-based character offset.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParseError at column {}: {}", self.pos + 1, self.msg)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = std::result::Result<T, ParseError>;

/// What the parser needs from a value type.
pub trait Ring: Sized + Clone {
    fn from_scalar(c: Scalar) -> Self;
    fn ident(name: char) -> Option<Self>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inverse(&self) -> std::result::Result<Self, String>;

    fn pow(&self, k: i64) -> std::result::Result<Self, String> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::from_scalar(Scalar::from_int(1));
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }
}

impl Ring for Scalar {
    fn from_scalar(c: Scalar) -> Self {
        c
    }
    fn ident(name: char) -> Option<Self> {
        (name == 'q').then(Scalar::q)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inverse(&self) -> std::result::Result<Self, String> {
        self.inv().map_err(|_| "division by zero".to_string())
    }
    fn pow(&self, k: i64) -> std::result::Result<Self, String> {
        Scalar::pow(self, k).map_err(|e| e.to_string())
    }
}

/// Polynomials in `C` with coefficients in `Q(q)`.
#[derive(Clone, Debug)]
pub struct CPoly(Vec<Scalar>);

impl CPoly {
    fn constant(&self) -> Option<&Scalar> {
        match self.0.iter().rposition(|c| !c.is_zero()) {
            None => Some(&self.0[0]),
            Some(0) => Some(&self.0[0]),
            Some(_) => None,
        }
    }
}

impl Ring for CPoly {
    fn from_scalar(c: Scalar) -> Self {
        CPoly(vec![c])
    }
    fn ident(name: char) -> Option<Self> {
        match name {
            'q' => Some(CPoly(vec![Scalar::q()])),
            'C' => Some(CPoly(vec![Scalar::from_int(0), Scalar::from_int(1)])),
            _ => None,
        }
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let zero = Scalar::from_int(0);
        CPoly(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) + o.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.mul(&CPoly(vec![Scalar::from_int(-1)])))
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = vec![Scalar::from_int(0); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        CPoly(out)
    }
    fn inverse(&self) -> std::result::Result<Self, String> {
        match self.constant() {
            Some(c) => Ok(CPoly(vec![c.inverse()?])),
            None => Err("cannot divide by a polynomial in C".to_string()),
        }
    }
}

/// Elements of the free algebra on `E, F, K, L, X, Y`; `C` stands for the
/// Casimir element and `K^-1` for `L`.
#[derive(Clone, Debug)]
pub struct Alg(pub FreeElement);

impl Ring for Alg {
    fn from_scalar(c: Scalar) -> Self {
        Alg(FreeElement::scalar(c))
    }
    fn ident(name: char) -> Option<Self> {
        if name == 'q' {
            return Some(Alg(FreeElement::scalar(Scalar::q())));
        }
        if name == 'C' {
            return Some(Alg(casimir_element().to_free()));
        }
        Letter::from_char(name).map(|l| Alg(FreeElement::from_letters(&[l])))
    }
    fn add(&self, o: &Self) -> Self {
        Alg(self.0.add(&o.0))
    }
    fn sub(&self, o: &Self) -> Self {
        Alg(self.0.sub(&o.0))
    }
    fn mul(&self, o: &Self) -> Self {
        Alg(self.0.mul(&o.0))
    }
    fn inverse(&self) -> std::result::Result<Self, String> {
        let terms: Vec<(&Word, &Scalar)> = self.0.terms().collect();
        let [(w, c)] = terms.as_slice() else {
            return Err("only scalars, K and L can be inverted".to_string());
        };
        let cinv = c.inverse()?;
        let inv_word = match w.letters() {
            [] => Word::empty(),
            [Letter::K] => Word::parse("L").expect("letter"),
            [Letter::L] => Word::parse("K").expect("letter"),
            _ => return Err("only scalars, K and L can be inverted".to_string()),
        };
        Ok(Alg(FreeElement::term(cinv, inv_word)))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u64),
    Ident(char),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> PResult<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            ' ' | '\t' | '\n' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                let mut v: u64 = 0;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(chars[i] as u64 - '0' as u64))
                        .ok_or(ParseError {
                            pos: start,
                            msg: "integer literal too large".into(),
                        })?;
                    i += 1;
                }
                out.push((start, Tok::Int(v)));
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_alphabetic() => Tok::Ident(c),
            c => {
                return Err(ParseError {
                    pos: i,
                    msg: format!("unexpected character '{c}'"),
                })
            }
        };
        out.push((i, tok));
        i += 1;
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
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            pos,
            msg: msg.into(),
        })
    }

    fn expr<R: Ring>(&mut self) -> PResult<R> {
        let mut acc = self.term::<R>()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<R: Ring>(&mut self) -> PResult<R> {
        let mut acc = self.unary::<R>()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    let pos = self.pos();
                    self.at += 1;
                    let d: R = self.unary()?;
                    match d.inverse() {
                        Ok(inv) => acc = acc.mul(&inv),
                        Err(m) => return self.err(pos, m),
                    }
                }
                Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary<R: Ring>(&mut self) -> PResult<R> {
        if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            let v: R = self.unary()?;
            return Ok(R::from_scalar(Scalar::from_int(0)).sub(&v));
        }
        self.power()
    }

    fn power<R: Ring>(&mut self) -> PResult<R> {
        let base: R = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        let pos = self.pos();
        let k = self.exponent()?;
        base.pow(k).or_else(|m| self.err(pos, m))
    }

    fn exponent(&mut self) -> PResult<i64> {
        let pos = self.pos();
        let paren = self.peek() == Some(&Tok::LParen);
        if paren {
            self.at += 1;
        }
        let sign = match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.at += 1;
                1
            }
            _ => 1,
        };
        let Some(Tok::Int(v)) = self.peek().cloned() else {
            return self.err(self.pos(), "expected an integer exponent");
        };
        self.at += 1;
        if paren {
            if self.peek() != Some(&Tok::RParen) {
                return self.err(self.pos(), "expected ')'");
            }
            self.at += 1;
        }
        match i64::try_from(v) {
            Ok(v) if v <= 10_000 => Ok(sign * v),
            _ => self.err(pos, "exponent too large"),
        }
    }

    fn atom<R: Ring>(&mut self) -> PResult<R> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.at += 1;
                let v = i64::try_from(v).or_else(|_| self.err(pos, "integer literal too large"))?;
                Ok(R::from_scalar(Scalar::from_int(v)))
            }
            Some(Tok::Ident(c)) => {
                self.at += 1;
                R::ident(c).map_or_else(|| self.err(pos, format!("unknown symbol '{c}'")), Ok)
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err(self.pos(), "expected ')'");
                }
                self.at += 1;
                Ok(v)
            }
            Some(_) => self.err(pos, "expected a number, symbol or '('"),
            None => self.err(pos, "unexpected end of input"),
        }
    }
}

fn parse_with<R: Ring>(text: &str) -> PResult<R> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.chars().count(),
    };
    let v = p.expr()?;
    if p.at != p.toks.len() {
        return p.err(p.pos(), "unexpected token");
    }
    Ok(v)
}

pub fn parse_scalar(text: &str) -> PResult<Scalar> {
    parse_with(text)
}

pub fn parse_weight(text: &str) -> PResult<Weight> {
    let s = parse_scalar(text)?;
    Weight::new(s).map_err(|_| ParseError {
        pos: 0,
        msg: "a weight must be nonzero".into(),
    })
}

pub fn parse_center_poly(text: &str) -> PResult<CenterPolynomial> {
    Ok(CenterPolynomial::new(parse_with::<CPoly>(text)?.0))
}

pub fn parse_element(text: &str) -> PResult<FreeElement> {
    Ok(parse_with::<Alg>(text)?.0)
}

/// Comma-separated list of nonnegative integers.
pub fn parse_bounds(text: &str) -> PResult<[u32; 5]> {
    let mut out = [0u32; 5];
    let mut count = 0;
    let mut offset = 0;
    for part in text.split(',') {
        if count == 5 {
            return Err(ParseError {
                pos: offset,
                msg: "expected exactly five bounds".into(),
            });
        }
        out[count] = part.trim().parse().map_err(|_| ParseError {
            pos: offset,
            msg: format!("'{}' is not a nonnegative integer", part.trim()),
        })?;
        count += 1;
        offset += part.chars().count() + 1;
    }
    if count != 5 {
        return Err(ParseError {
            pos: text.chars().count(),
            msg: "expected exactly five bounds".into(),
        });
    }
    Ok(out)
}
