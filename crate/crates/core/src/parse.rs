//! Parsers for the textual inputs of the command line: symmetric
//! polynomial expressions and comma-separated coefficient lists.
//!
//! Expressions are sums of products of integers and the symbols `e_k`,
//! `p_k`, `h_k` (written `e3`, `e_3` or `e_{3}`), each optionally raised to
//! a power with `^`:
//!
//! ```text
//! 2*e1^2 - e2 + p3*e1
//! ```

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ring::{Coeff, RingSpec};
use crate::sym_basis::{h_to_e, p_to_e_table, EExpansion};

/// Largest symbol index accepted in an expression.
pub const MAX_INDEX: usize = 32;
/// Largest exponent accepted in an expression.
pub const MAX_EXPONENT: u32 = 32;
/// Largest total degree of a single product.
pub const MAX_DEGREE: usize = 32;

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected a number"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::parse(start, "number too large"))
    }

    fn index(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        let braced = self.text.get(self.pos) == Some(&b'_');
        if braced {
            self.pos += 1;
        }
        let v = if braced && self.eat(b'{') {
            let v = self.number()?;
            if !self.eat(b'}') {
                return Err(Error::parse(self.pos, "expected '}'"));
            }
            v
        } else {
            self.number()?
        };
        if v == 0 || v as usize > MAX_INDEX {
            return Err(Error::parse(start, format!("index must be in 1..={MAX_INDEX}")));
        }
        Ok(v as usize)
    }
}

#[derive(Clone, Copy)]
enum Family {
    E,
    P,
    H,
}

/// Sign, integer coefficient and `(family, index, exponent)` factors.
type Term = (bool, u64, Vec<(Family, usize, u32)>);

/// Parses an expression into the e-basis of `n` variables over `spec`.
pub fn parse_target(text: &str, n: usize, spec: RingSpec) -> Result<EExpansion> {
    if n == 0 || n > MAX_INDEX {
        return Err(Error::InvalidRange(format!("n must be in 1..={MAX_INDEX}")));
    }
    // collect the products first so the power-sum table is built once
    let mut cur = Cursor { text: text.as_bytes(), pos: 0 };
    let mut terms: Vec<Term> = Vec::new();
    let mut first = true;
    while cur.peek().is_some() || first {
        let negative = if cur.eat(b'-') {
            true
        } else if cur.eat(b'+') || first {
            false
        } else {
            return Err(Error::parse(cur.pos, "expected '+' or '-'"));
        };
        first = false;
        let mut coeff = 1u64;
        let mut factors = Vec::new();
        let mut degree = 0usize;
        loop {
            match cur.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let start = cur.pos;
                    let v = cur.number()?;
                    coeff = coeff.checked_mul(v).ok_or_else(|| Error::parse(start, "coefficient too large"))?;
                }
                Some(c @ (b'e' | b'p' | b'h')) => {
                    cur.pos += 1;
                    let family = match c {
                        b'e' => Family::E,
                        b'p' => Family::P,
                        _ => Family::H,
                    };
                    let idx = cur.index()?;
                    let mut exp = 1u32;
                    if cur.eat(b'^') {
                        let start = cur.pos;
                        let v = cur.number()?;
                        if v == 0 || v > u64::from(MAX_EXPONENT) {
                            return Err(Error::parse(start, format!("exponent must be in 1..={MAX_EXPONENT}")));
                        }
                        exp = v as u32;
                    }
                    degree += idx * exp as usize;
                    if degree > MAX_DEGREE {
                        return Err(Error::parse(cur.pos, format!("term degree exceeds {MAX_DEGREE}")));
                    }
                    factors.push((family, idx, exp));
                }
                Some(_) => return Err(Error::parse(cur.pos, "expected a number or e/p/h symbol")),
                None => return Err(Error::parse(cur.pos, "unexpected end of input")),
            }
            if !cur.eat(b'*') {
                break;
            }
        }
        terms.push((negative, coeff, factors));
    }
    let max_p = terms
        .iter()
        .flat_map(|(_, _, f)| f.iter())
        .filter(|(fam, _, _)| matches!(fam, Family::P))
        .map(|(_, i, _)| *i)
        .max()
        .unwrap_or(0);
    let table = p_to_e_table(max_p, n, spec);
    let mut h_cache: HashMap<usize, EExpansion> = HashMap::new();
    let mut out = EExpansion::zero(n, spec);
    for (negative, coeff, factors) in terms {
        let c = spec.from_bigint(&coeff.into());
        let mut term = EExpansion::constant(n, if negative { -&c } else { c });
        for (family, idx, exp) in factors {
            let base = match family {
                Family::E => EExpansion::e(idx, n, spec),
                Family::P => table[idx].clone(),
                Family::H => h_cache.entry(idx).or_insert_with(|| h_to_e(idx, n, spec)).clone(),
            };
            term = &term * &base.pow(exp);
        }
        out = &out + &term;
    }
    Ok(out)
}

/// Parses `a,b,c` into coefficients of `spec`; whitespace is ignored.
pub fn parse_coeff_list(text: &str, spec: RingSpec) -> Result<Vec<Coeff>> {
    let mut out = Vec::new();
    let mut offset = 0;
    if text.trim().is_empty() {
        return Ok(out);
    }
    for piece in text.split(',') {
        let trimmed = piece.trim();
        let lead = piece.len() - piece.trim_start().len();
        let c = spec
            .parse_coeff(trimmed)
            .map_err(|e| Error::parse(offset + lead, e.to_string()))?;
        out.push(c);
        offset += piece.len() + 1;
    }
    Ok(out)
}
