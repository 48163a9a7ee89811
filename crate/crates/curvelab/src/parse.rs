//! Text grammar shared by the library and the CLI.
//!
//! Polynomials: integer and `a/b` literals, identifiers, `+ - * ^`,
//! parentheses; exponents are nonnegative integers. Field specifications:
//! `Q`, `Fp:<p>`, `Fq:<p>:<k>:<monic modulus in g>`. Points: two scalar
//! expressions joined by a comma. Scalars use the polynomial grammar and may
//! mention the extension generator `g`.

use num::BigInt;

use crate::error::{Error, Result};
use crate::field::{ExtensionModulus, FieldDesc, FieldValue};
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn describe(token: Option<&Token>) -> String {
    match token {
        None => "end of input".to_string(),
        Some(Token::Int(n)) => format!("number {n}"),
        Some(Token::Ident(name)) => format!("identifier {name:?}"),
        Some(Token::Plus) => "'+'".to_string(),
        Some(Token::Minus) => "'-'".to_string(),
        Some(Token::Star) => "'*'".to_string(),
        Some(Token::Caret) => "'^'".to_string(),
        Some(Token::Slash) => "'/'".to_string(),
        Some(Token::LParen) => "'('".to_string(),
        Some(Token::RParen) => "')'".to_string(),
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let n = digits
                    .parse::<BigInt>()
                    .map_err(|e| Error::Parse(format!("bad integer {digits}: {e}")))?;
                out.push(Token::Int(n));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => {
                return Err(Error::Parse(format!("unexpected character '{other}'")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    field: &'a FieldDesc,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while let Some(Token::Star) = self.peek() {
            self.bump();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.bump();
            match self.bump() {
                Some(Token::Int(n)) => {
                    let e: usize = n
                        .try_into()
                        .map_err(|_| Error::Parse("exponent must be a small nonnegative integer".into()))?;
                    Ok(base.pow(e))
                }
                other => Err(Error::Parse(format!(
                    "expected integer exponent after ^, got {other:?}"
                ))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.bump() {
            Some(Token::Int(n)) => {
                // Rational literal a/b when a slash follows immediately.
                if let Some(Token::Slash) = self.peek() {
                    self.bump();
                    match self.bump() {
                        Some(Token::Int(d)) => {
                            let numer = self.field.from_bigint(&n);
                            let denom = self.field.from_bigint(&d);
                            let v = numer.div(&denom).map_err(|_| {
                                Error::Parse(format!("literal {n}/{d} is not invertible here"))
                            })?;
                            Ok(Poly::constant(v))
                        }
                        other => Err(Error::Parse(format!(
                            "expected denominator after /, got {}",
                            describe(other.as_ref())
                        ))),
                    }
                } else {
                    Ok(Poly::constant(self.field.from_bigint(&n)))
                }
            }
            Some(Token::Ident(name)) => Ok(Poly::var(self.field, &name)),
            Some(Token::Minus) => Ok(self.factor()?.neg()),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(Error::Parse("unbalanced parenthesis".into())),
                }
            }
            other => Err(Error::Parse(format!(
                "unexpected token {}",
                describe(other.as_ref())
            ))),
        }
    }
}

/// Parse a polynomial over the given field.
pub fn parse_poly(field: &FieldDesc, text: &str) -> Result<Poly> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        field,
    };
    let poly = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!(
            "trailing input after position {}",
            p.pos
        )));
    }
    Ok(poly)
}

/// Parse a scalar: a constant expression, optionally mentioning the extension
/// generator `g` when the field is an extension.
pub fn parse_scalar(field: &FieldDesc, text: &str) -> Result<FieldValue> {
    let poly = parse_poly(field, text)?;
    if poly.is_constant() {
        return Ok(poly.constant_value());
    }
    if poly.variables() == ["g".to_string()] {
        if let FieldDesc::Extension(_) = field {
            let gen = field.generator()?;
            return Ok(poly.eval(&[("g", gen)]));
        }
    }
    Err(Error::Parse(format!(
        "expected a scalar, found variables {:?}",
        poly.variables()
    )))
}

/// Parse a point literal `x0,y0`.
pub fn parse_point(field: &FieldDesc, text: &str) -> Result<(FieldValue, FieldValue)> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!(
            "point must be two comma-separated scalars, got {text:?}"
        )));
    }
    Ok((
        parse_scalar(field, parts[0])?,
        parse_scalar(field, parts[1])?,
    ))
}

/// Parse a field specification: `Q`, `Fp:<p>`, or `Fq:<p>:<k>:<modulus>`.
pub fn parse_field(text: &str) -> Result<FieldDesc> {
    let text = text.trim();
    if text == "Q" {
        return Ok(FieldDesc::Rational);
    }
    if let Some(rest) = text.strip_prefix("Fp:") {
        let p: u64 = rest
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad prime in field spec {text:?}")))?;
        return FieldDesc::prime(p);
    }
    if let Some(rest) = text.strip_prefix("Fq:") {
        let parts: Vec<&str> = rest.splitn(3, ':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(
                "extension field spec is Fq:<p>:<k>:<modulus>".into(),
            ));
        }
        let p: u64 = parts[0]
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad prime {:?}", parts[0])))?;
        let k: usize = parts[1]
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree {:?}", parts[1])))?;
        let base = FieldDesc::prime(p)?;
        let modulus_poly = parse_poly(&base, parts[2])?;
        if modulus_poly.variables().len() != 1 {
            return Err(Error::Parse(
                "modulus must be univariate in the generator".into(),
            ));
        }
        let var = modulus_poly.variables()[0].clone();
        let coeffs: Vec<u64> = modulus_poly
            .univariate_in(&var)
            .iter()
            .map(|c| match c.constant_value() {
                FieldValue::Prime { r, .. } => r,
                _ => unreachable!("prime field coefficients"),
            })
            .collect();
        if coeffs.len() != k + 1 {
            return Err(Error::Parse(format!(
                "modulus degree {} does not match declared degree {k}",
                coeffs.len().saturating_sub(1)
            )));
        }
        let m = ExtensionModulus::new(p, coeffs)?;
        return Ok(FieldDesc::Extension(m));
    }
    Err(Error::Parse(format!("unrecognized field spec {text:?}")))
}
