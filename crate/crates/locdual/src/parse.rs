//! Text grammar for polynomials and sections.
//!
//! ```text
//! section := '[' expr (',' expr)* ']'
//! expr    := term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := '-' factor | atom ['^' integer]
//! atom    := integer ['/' integer] | 'i' | z<k> | zb<k> | '(' expr ')'
//! ```

use std::fmt;
use std::ops::Range;

use locdual_core::{GaussianRational, Monomial, Polynomial, Ring};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    /// 1-based.
    pub line: usize,
    /// 1-based, in characters.
    pub column: usize,
    /// Byte range into the source.
    pub span: Range<usize>,
}

impl ParseError {
    fn at(src: &str, span: Range<usize>, message: impl Into<String>) -> Self {
        let before = &src[..span.start];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |p| p + 1);
        let column = src[line_start..span.start].chars().count() + 1;
        ParseError {
            message: message.into(),
            line,
            column,
            span,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var { conj: bool, index: usize },
    I,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(v) => format!("number {}", v),
        Tok::Var { conj, index } => format!("variable {}{}", if *conj { "zb" } else { "z" }, index),
        Tok::I => "'i'".into(),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::LBracket => "'['".into(),
        Tok::RBracket => "']'".into(),
        Tok::Comma => "','".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Range<usize>)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut p = 0;
    while p < bytes.len() {
        let c = bytes[p];
        let start = p;
        if c.is_ascii_whitespace() {
            p += 1;
            continue;
        }
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            b',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, start..start + 1));
            p += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while p < bytes.len() && bytes[p].is_ascii_digit() {
                p += 1;
            }
            let v: BigInt = src[start..p].parse().expect("ascii digits");
            out.push((Tok::Int(v), start..p));
            continue;
        }
        if c.is_ascii_alphabetic() {
            while p < bytes.len() && bytes[p].is_ascii_alphanumeric() {
                p += 1;
            }
            let word = &src[start..p];
            let tok = if word == "i" {
                Tok::I
            } else if let Some(rest) = word.strip_prefix("zb").or_else(|| word.strip_prefix('z')) {
                let conj = word.starts_with("zb");
                match rest.parse::<usize>() {
                    Ok(index) if index >= 1 && !rest.starts_with('0') => Tok::Var { conj, index },
                    _ => return Err(ParseError::at(src, start..p, format!("unknown identifier '{}'", word))),
                }
            } else {
                return Err(ParseError::at(src, start..p, format!("unknown identifier '{}'", word)));
            };
            out.push((tok, start..p));
            continue;
        }
        let len = src[p..].chars().next().map_or(1, char::len_utf8);
        return Err(ParseError::at(src, start..start + len, format!("unexpected character '{}'", &src[p..p + len])));
    }
    out.push((Tok::End, src.len()..src.len()));
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, Range<usize>)>,
    pos: usize,
    ring: Ring,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, ring: Ring) -> Result<Self, ParseError> {
        Ok(Parser {
            src,
            toks: lex(src)?,
            pos: 0,
            ring,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Range<usize> {
        self.toks[self.pos].1.clone()
    }

    fn bump(&mut self) -> (Tok, Range<usize>) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::at(self.src, self.span(), message)
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.error(format!("expected {}, found {}", wanted, describe(self.peek())))
    }

    fn expect(&mut self, t: Tok, wanted: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let span = self.span();
        match self.bump().0 {
            Tok::Int(e) => {
                let e = u32::try_from(&e).map_err(|_| ParseError::at(self.src, span, "exponent too large"))?;
                Ok(base.pow(e))
            }
            _ => Err(ParseError::at(self.src, span, "expected a non-negative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Int(p) => {
                self.bump();
                let mut q = BigInt::from(1);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let dspan = self.span();
                    match self.bump().0 {
                        Tok::Int(d) if d != BigInt::from(0) => q = d,
                        Tok::Int(_) => return Err(ParseError::at(self.src, dspan, "division by zero")),
                        _ => return Err(ParseError::at(self.src, dspan, "expected an integer denominator")),
                    }
                }
                Ok(Polynomial::constant(self.ring, GaussianRational::from_real(BigRational::new(p, q))))
            }
            Tok::I => {
                self.bump();
                Ok(Polynomial::constant(self.ring, GaussianRational::i()))
            }
            Tok::Var { conj, index } => {
                self.bump();
                let n = self.ring.n;
                if index > n {
                    return Err(ParseError::at(self.src, span, format!("variable index {} exceeds --vars {}", index, n)));
                }
                if conj && !self.ring.conjugates {
                    return Err(ParseError::at(self.src, span, "conjugate variables are not allowed here"));
                }
                let idx = if conj { n + index - 1 } else { index - 1 };
                Ok(Polynomial::term(self.ring, Monomial::var(self.ring.nvars(), idx, 1), GaussianRational::one()))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, variable, 'i' or '('")),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.unexpected("an operator or end of input"))
        }
    }
}

/// Parses one polynomial in `ring`.
pub fn parse_polynomial(src: &str, ring: Ring) -> Result<Polynomial, ParseError> {
    let mut p = Parser::new(src, ring)?;
    let out = p.expr()?;
    p.finish()?;
    Ok(out)
}

/// Parses `[f1, ..., fk]`; the caller checks the length against `n`.
pub fn parse_section(src: &str, ring: Ring) -> Result<Vec<Polynomial>, ParseError> {
    let mut p = Parser::new(src, ring)?;
    p.expect(Tok::LBracket, "'['")?;
    let mut out = vec![p.expr()?];
    while *p.peek() == Tok::Comma {
        p.bump();
        out.push(p.expr()?);
    }
    p.expect(Tok::RBracket, "',' or ']'")?;
    p.finish()?;
    Ok(out)
}

/// Parses a comma-separated list of positive integers, as in `--weights 2,3`.
pub fn parse_list<T: std::str::FromStr>(src: &str) -> Result<Vec<T>, String> {
    src.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| format!("invalid list entry '{}'", x.trim())))
        .collect()
}
