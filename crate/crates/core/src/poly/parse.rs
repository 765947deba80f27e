//! Text grammar for polynomials: `+`/`-` separated terms, each a `*`-product
//! of an optional coefficient and variable powers `X0..X9` with `^` exponents,
//! e.g. `-3*X0^3*X2 + X1^4`. Rational coefficients may be written `n/d`;
//! extension-field coefficients as coordinate vectors `[c0,c1,...]`.

use super::{Form, Mono, MultiPoly, PolyError};
use crate::field::{FieldDesc, FieldElement};
use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {at}: {msg}")]
pub struct ParseError {
    pub at: usize,
    pub msg: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: FieldDesc,
}

type PTerm = (Vec<(usize, u32)>, FieldElement);

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { at: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn parse_uint(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn parse_int(&mut self) -> Result<BigInt, ParseError> {
        let neg = self.peek() == Some(b'-');
        if neg || self.peek() == Some(b'+') {
            self.pos += 1;
        }
        let n = self.parse_uint()?;
        Ok(if neg { -n } else { n })
    }

    /// coefficient := int [ '/' uint ] | '[' int (',' int)* ']'
    fn parse_coefficient(&mut self) -> Result<FieldElement, ParseError> {
        if self.peek() == Some(b'[') {
            self.bump();
            let mut coords: Vec<BigInt> = vec![];
            loop {
                self.skip_ws();
                coords.push(self.parse_int()?);
                self.skip_ws();
                match self.bump() {
                    Some(b',') => continue,
                    Some(b']') => break,
                    _ => return self.err("expected `,` or `]` in coefficient vector"),
                }
            }
            let (p, k) = match &self.field {
                FieldDesc::Finite { p, k, .. } => (*p, *k),
                FieldDesc::Rationals => {
                    return self.err("coordinate-vector coefficients need a finite field")
                }
            };
            if coords.len() > k {
                return self.err(format!("coefficient vector longer than degree {k}"));
            }
            let pb = BigInt::from(p);
            let reduced: Vec<u64> = coords
                .iter()
                .map(|c| u64::try_from(((c % &pb) + &pb) % &pb).unwrap())
                .collect();
            Ok(self.field.from_coords(&reduced))
        } else {
            let num = self.parse_uint()?;
            if self.peek() == Some(b'/') {
                self.bump();
                let den = self.parse_uint()?;
                if den.sign() == num_bigint::Sign::NoSign {
                    return self.err("zero denominator");
                }
                Ok(self.field.from_rational(BigRational::new(num, den)))
            } else {
                Ok(self.field.from_bigint(&num))
            }
        }
    }

    /// factor := coefficient | [Xx] digit [ '^' uint ]
    fn parse_factor(&mut self) -> Result<(Option<(usize, u32)>, Option<FieldElement>), ParseError> {
        match self.peek() {
            Some(b'X') | Some(b'x') => {
                self.bump();
                let Some(d) = self.peek().filter(|b| b.is_ascii_digit()) else {
                    return self.err("expected a variable index digit after `X`");
                };
                self.bump();
                let idx = (d - b'0') as usize;
                let exp = if self.peek() == Some(b'^') {
                    self.bump();
                    let e = self.parse_uint()?;
                    u32::try_from(&e).map_err(|_| ParseError {
                        at: self.pos,
                        msg: "exponent too large".to_string(),
                    })?
                } else {
                    1
                };
                Ok((Some((idx, exp)), None))
            }
            Some(b) if b.is_ascii_digit() || b == b'[' => {
                Ok((None, Some(self.parse_coefficient()?)))
            }
            _ => self.err("expected a coefficient or a variable"),
        }
    }

    /// term := factor ('*' factor)*
    fn parse_term(&mut self) -> Result<PTerm, ParseError> {
        let mut coeff = self.field.one();
        let mut vars: Vec<(usize, u32)> = vec![];
        loop {
            self.skip_ws();
            let (var, c) = self.parse_factor()?;
            if let Some(v) = var {
                vars.push(v);
            }
            if let Some(c) = c {
                coeff = coeff.mul(&c);
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.bump();
            } else {
                break;
            }
        }
        Ok((vars, coeff))
    }

    fn parse_terms(&mut self) -> Result<Vec<PTerm>, ParseError> {
        let mut out = vec![];
        self.skip_ws();
        let mut sign_neg = match self.peek() {
            Some(b'-') => {
                self.bump();
                true
            }
            Some(b'+') => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let (vars, coeff) = self.parse_term()?;
            let coeff = if sign_neg { coeff.neg() } else { coeff };
            out.push((vars, coeff));
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.bump();
                    sign_neg = false;
                }
                Some(b'-') => {
                    self.bump();
                    sign_neg = true;
                }
                _ => return self.err("expected `+`, `-`, or end of input"),
            }
        }
        Ok(out)
    }
}

fn build(
    terms: Vec<PTerm>,
    field: &FieldDesc,
    nvars: usize,
) -> MultiPoly {
    let mut poly = MultiPoly::zero(field, nvars);
    for (vars, coeff) in terms {
        let mut exps = vec![0u32; nvars];
        for (idx, e) in vars {
            exps[idx] += e;
        }
        poly.add_term(Mono(exps), coeff);
    }
    poly
}

/// Parse a polynomial, inferring the variable count as one past the highest
/// variable index mentioned (at least 1).
pub fn parse_multipoly(text: &str, field: &FieldDesc) -> Result<MultiPoly, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, field: field.clone() };
    let terms = p.parse_terms()?;
    let nvars = terms
        .iter()
        .flat_map(|(vars, _)| vars.iter().map(|(idx, _)| idx + 1))
        .max()
        .unwrap_or(0)
        .max(1);
    Ok(build(terms, field, nvars))
}

/// Parse a polynomial in a fixed number of variables.
pub fn parse_multipoly_with_nvars(
    text: &str,
    field: &FieldDesc,
    nvars: usize,
) -> Result<MultiPoly, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, field: field.clone() };
    let terms = p.parse_terms()?;
    for (vars, _) in &terms {
        if let Some(&(idx, _)) = vars.iter().find(|(idx, _)| *idx >= nvars) {
            return Err(ParseError {
                at: 0,
                msg: format!("variable X{idx} out of range (nvars = {nvars})"),
            });
        }
    }
    Ok(build(terms, field, nvars))
}

/// Parse a homogeneous form (inferred variable count).
pub fn parse_form(text: &str, field: &FieldDesc) -> Result<Form, ParseError> {
    let poly = parse_multipoly(text, field)?;
    Form::new(poly).map_err(|e| ParseError {
        at: 0,
        msg: match e {
            PolyError::NonHomogeneous => "polynomial is not homogeneous".to_string(),
            other => other.to_string(),
        },
    })
}

/// Parse a homogeneous form in a fixed number of variables.
pub fn parse_form_with_nvars(
    text: &str,
    field: &FieldDesc,
    nvars: usize,
) -> Result<Form, ParseError> {
    let poly = parse_multipoly_with_nvars(text, field, nvars)?;
    Form::new(poly).map_err(|e| ParseError {
        at: 0,
        msg: match e {
            PolyError::NonHomogeneous => "polynomial is not homogeneous".to_string(),
            other => other.to_string(),
        },
    })
}
