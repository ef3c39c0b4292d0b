//! Text syntax for 1-forms: sums of `coeff * monomial * (dx|dy)` terms with
//! rational coefficients, `^` powers and parenthesized polynomials.
//!
//! ```text
//! form    := ['+'|'-'] term (('+'|'-') term)*
//! term    := product? ('*')? ('dx' | 'dy')
//! product := factor ('*'? factor | '/' integer)*
//! factor  := integer | ('x' | 'y') ['^' n] | '(' poly ')' ['^' n]
//! poly    := ['+'|'-'] product (('+'|'-') product)*
//! ```

use foliate_core::algebra::rational::Rational;
use foliate_core::{DiffForm, NumberField, Poly2};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at token {token} (column {column}): {message}")]
    Syntax { token: usize, column: usize, message: String },
    #[error("non-rational coefficient at column {column}: {text}")]
    NonRational { column: usize, text: String },
    #[error("the form is zero")]
    ZeroForm,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(num_bigint::BigInt),
    X,
    Y,
    Dx,
    Dy,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => n.to_string(),
            Tok::X => "x".into(),
            Tok::Y => "y".into(),
            Tok::Dx => "dx".into(),
            Tok::Dy => "dy".into(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Slash => "/".into(),
            Tok::Caret => "^".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<(usize, char)> = text.chars().enumerate().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let syntax = |out: &Vec<(Tok, usize)>, column: usize, message: String| ParseError::Syntax {
        token: out.len() + 1,
        column: column + 1,
        message,
    };
    while i < chars.len() {
        let (col, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '0'..='9' | '.' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_ascii_digit() || chars[i].1 == '.' || chars[i].1 == 'e') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|c| c.1).collect();
                if s.contains('.') || s.contains('e') {
                    return Err(ParseError::NonRational { column: col + 1, text: s });
                }
                out.push((Tok::Num(s.parse().expect("digits")), col));
                continue;
            }
            'x' => Tok::X,
            'y' => Tok::Y,
            'd' => {
                let mut j = i + 1;
                while j < chars.len() && chars[j].1.is_whitespace() {
                    j += 1;
                }
                let t = match chars.get(j).map(|c| c.1) {
                    Some('x') => Tok::Dx,
                    Some('y') => Tok::Dy,
                    _ => return Err(syntax(&out, col, "expected dx or dy".into())),
                };
                i = j;
                t
            }
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' | '\u{b7}' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].1.is_alphanumeric() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|c| c.1).collect();
                return Err(ParseError::NonRational { column: col + 1, text: s });
            }
            c => return Err(syntax(&out, col, format!("unexpected character '{c}'"))),
        };
        out.push((tok, col));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let column = self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end_column);
        ParseError::Syntax { token: self.pos + 1, column: column + 1, message: message.into() }
    }

    fn unexpected(&self, what: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.error(format!("expected {what}, found '{}'", t.describe())),
            None => self.error(format!("expected {what}, found end of input")),
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_) | Tok::X | Tok::Y | Tok::LParen))
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(1);
        }
        self.bump();
        match self.bump() {
            Some(Tok::Num(n)) => u32::try_from(n).map_err(|_| {
                self.pos -= 1;
                self.error("exponent too large")
            }),
            _ => {
                self.pos -= 1;
                Err(self.unexpected("an exponent"))
            }
        }
    }

    fn factor(&mut self) -> Result<Poly2, ParseError> {
        let k = NumberField::rationals();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Poly2::constant(k.from_rational(Rational::from_integer(n)))),
            Some(Tok::X) => Ok(Poly2::x(&k).pow(self.exponent()?)),
            Some(Tok::Y) => Ok(Poly2::y(&k).pow(self.exponent()?)),
            Some(Tok::LParen) => {
                let p = self.poly()?;
                if self.bump() != Some(Tok::RParen) {
                    self.pos -= 1;
                    return Err(self.unexpected("')'"));
                }
                Ok(p.pow(self.exponent()?))
            }
            _ => {
                self.pos -= 1;
                Err(self.unexpected("a number, x, y or '('"))
            }
        }
    }

    fn divisor(&mut self) -> Result<Rational, ParseError> {
        self.bump();
        match self.bump() {
            Some(Tok::Num(d)) if !d.is_zero() => Ok(Rational::from_integer(d)),
            Some(Tok::Num(_)) => {
                self.pos -= 1;
                Err(self.error("zero denominator"))
            }
            _ => {
                self.pos -= 1;
                Err(self.unexpected("an integer denominator"))
            }
        }
    }

    fn product(&mut self) -> Result<Poly2, ParseError> {
        let mut acc = self.factor()?;
        loop {
            while self.peek() == Some(&Tok::Slash) {
                let d = self.divisor()?;
                acc = acc.scale_rational(&d.recip());
            }
            if self.peek() == Some(&Tok::Star) && matches!(self.toks.get(self.pos + 1).map(|t| &t.0), Some(Tok::Num(_) | Tok::X | Tok::Y | Tok::LParen)) {
                self.bump();
            }
            if !self.starts_factor() {
                return Ok(acc);
            }
            acc = &acc * &self.factor()?;
        }
    }

    fn sign(&mut self) -> bool {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        }
    }

    fn poly(&mut self) -> Result<Poly2, ParseError> {
        let neg = self.sign();
        let first = self.product()?;
        let mut acc = if neg { -&first } else { first };
        while matches!(self.peek(), Some(Tok::Plus | Tok::Minus)) {
            let neg = self.sign();
            let p = self.product()?;
            acc = if neg { &acc - &p } else { &acc + &p };
        }
        Ok(acc)
    }

    fn term(&mut self, a: &mut Poly2, b: &mut Poly2, neg: bool) -> Result<(), ParseError> {
        let k = NumberField::rationals();
        let coeff = if self.starts_factor() { self.product()? } else { Poly2::one(&k) };
        if self.peek() == Some(&Tok::Star) {
            self.bump();
        }
        let coeff = if neg { -&coeff } else { coeff };
        match self.bump() {
            Some(Tok::Dx) => *a = &*a + &coeff,
            Some(Tok::Dy) => *b = &*b + &coeff,
            _ => {
                self.pos -= 1;
                return Err(self.unexpected("dx or dy"));
            }
        }
        Ok(())
    }

    fn form(&mut self) -> Result<(Poly2, Poly2), ParseError> {
        let k = NumberField::rationals();
        let (mut a, mut b) = (Poly2::zero(&k), Poly2::zero(&k));
        let neg = self.sign();
        self.term(&mut a, &mut b, neg)?;
        while self.pos < self.toks.len() {
            if !matches!(self.peek(), Some(Tok::Plus | Tok::Minus)) {
                return Err(self.unexpected("'+' or '-'"));
            }
            let neg = self.sign();
            self.term(&mut a, &mut b, neg)?;
        }
        Ok((a, b))
    }
}

/// Parse `A dx + B dy`; signs are kept as written.
pub fn parse_form(text: &str) -> Result<DiffForm, ParseError> {
    let (a, b) = parser(text)?.form()?;
    DiffForm::new(a, b).map_err(|_| ParseError::ZeroForm)
}

/// Parse a polynomial in `x, y` with rational coefficients.
pub fn parse_poly(text: &str) -> Result<Poly2, ParseError> {
    let mut p = parser(text)?;
    let poly = p.poly()?;
    if p.pos < p.toks.len() {
        return Err(p.unexpected("'+', '-' or end of input"));
    }
    Ok(poly)
}

fn parser(text: &str) -> Result<Parser, ParseError> {
    Ok(Parser { toks: tokenize(text)?, pos: 0, end_column: text.chars().count() })
}

fn render_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Polynomial with rational coefficients, highest degree first; `None` for
/// coefficients in a proper extension.
pub fn render_poly(p: &Poly2) -> Option<String> {
    if p.is_zero() {
        return Some("0".into());
    }
    let mut terms: Vec<((u32, u32), Rational)> = Vec::new();
    for (&(i, j), c) in p.terms() {
        terms.push(((i, j), c.as_rational()?));
    }
    terms.sort_by(|a, b| (b.0 .0 + b.0 .1, b.0 .0).cmp(&(a.0 .0 + a.0 .1, a.0 .0)));
    let mut out = String::new();
    for (n, ((i, j), c)) in terms.iter().enumerate() {
        let mono: Vec<String> = [(i, "x"), (j, "y")]
            .iter()
            .filter(|(e, _)| **e > 0)
            .map(|(e, v)| if **e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        let mag = c.abs();
        let body = match (mono.is_empty(), mag.is_one()) {
            (true, _) => render_rational(&mag),
            (false, true) => mono.join(" "),
            (false, false) => format!("{} {}", render_rational(&mag), mono.join(" ")),
        };
        match (n, c.is_negative()) {
            (0, true) => out.push_str(&format!("-{body}")),
            (0, false) => out.push_str(&body),
            (_, true) => out.push_str(&format!(" - {body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
        }
    }
    Some(out)
}

/// `(A) dx + (B) dy`, omitting a zero part; `None` over a proper extension.
pub fn render(w: &DiffForm) -> Option<String> {
    let mut parts = Vec::new();
    if !w.a().is_zero() {
        parts.push(format!("({}) dx", render_poly(w.a())?));
    }
    if !w.b().is_zero() {
        parts.push(format!("({}) dy", render_poly(w.b())?));
    }
    Some(parts.join(" + "))
}
