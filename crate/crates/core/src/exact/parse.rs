//! Text syntax for polynomials: `x1*x2 + 3/2*x1^2 - (x2 - 1)^3`.
//!
//! Variables are `x1 … xn` (1-based). Division is allowed only by nonzero
//! constants. Sizes are capped so hostile input cannot blow up memory.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::MPoly;
use super::rat::Rat;
use crate::error::{Error, Result};

/// Largest total degree of any intermediate result.
pub const MAX_DEGREE: usize = 64;
/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = MAX_DEGREE as u32;
/// Largest number of terms of any intermediate result.
pub const MAX_TERMS: usize = 20_000;
const MAX_DEPTH: usize = 64;
const MAX_DIGITS: usize = 200;
/// Numerators and denominators stay below `2^664 < 10^200`, so printed
/// results parse again.
const MAX_COEFF_BITS: u64 = 664;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str, nvars: usize) -> Result<Vec<Tok>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                out.push(Tok::Plus);
                i += 1
            }
            b'-' => {
                out.push(Tok::Minus);
                i += 1
            }
            b'*' => {
                out.push(Tok::Star);
                i += 1
            }
            b'/' => {
                out.push(Tok::Slash);
                i += 1
            }
            b'^' => {
                out.push(Tok::Caret);
                i += 1
            }
            b'(' => {
                out.push(Tok::LParen);
                i += 1
            }
            b')' => {
                out.push(Tok::RParen);
                i += 1
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i - start > MAX_DIGITS {
                    return Err(Error::Parse("numeric literal too long".into()));
                }
                let n: BigInt = src[start..i].parse().expect("ascii digits");
                out.push(Tok::Num(n));
            }
            b'x' => {
                i += 1;
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i || i - start > 9 {
                    return Err(Error::Parse(format!("bad variable name at byte {}", start - 1)));
                }
                let k: usize = src[start..i].parse().expect("ascii digits");
                if k == 0 || k > nvars {
                    return Err(Error::Parse(format!(
                        "variable x{k} out of range (have x1..x{nvars})"
                    )));
                }
                out.push(Tok::Var(k - 1));
            }
            _ => {
                return Err(Error::Parse(format!(
                    "unexpected character {:?} at byte {i}",
                    src[i..].chars().next().unwrap_or('?')
                )))
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    nvars: usize,
    depth: usize,
}

fn check_size(p: &MPoly) -> Result<()> {
    if p.len() > MAX_TERMS {
        return Err(Error::Parse("polynomial too large".into()));
    }
    if p.degree() > MAX_DEGREE {
        return Err(Error::Parse("polynomial degree too large".into()));
    }
    if p.terms().any(|(_, c)| c.numer().bits() > MAX_COEFF_BITS || c.denom().bits() > MAX_COEFF_BITS) {
        return Err(Error::Parse("coefficient too large".into()));
    }
    Ok(())
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(Error::Parse("expression nested too deeply".into()));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<MPoly> {
        self.enter()?;
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = &acc + &rhs;
                }
                Tok::Minus => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = &acc - &rhs;
                }
                _ => break,
            }
            check_size(&acc)?;
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Star => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    if acc.len().saturating_mul(rhs.len()) > MAX_TERMS * 50
                        || acc.degree() + rhs.degree() > MAX_DEGREE
                    {
                        return Err(Error::Parse("product too large".into()));
                    }
                    acc = &acc * &rhs;
                }
                Tok::Slash => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    if rhs.degree() > 0 || rhs.is_zero() {
                        return Err(Error::Parse(
                            "division only by nonzero constants".into(),
                        ));
                    }
                    let c = Rat::one() / rhs.constant_term();
                    acc = acc.scale(&c);
                }
                _ => break,
            }
            check_size(&acc)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                self.enter()?;
                let p = self.unary()?;
                self.depth -= 1;
                Ok(-&p)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.enter()?;
                let p = self.unary()?;
                self.depth -= 1;
                Ok(p)
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let e = match self.next() {
            Some(Tok::Num(n)) => n,
            _ => return Err(Error::Parse("exponent must be a nonnegative integer".into())),
        };
        let e: u32 = u32::try_from(&e)
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| Error::Parse(format!("exponent exceeds {MAX_EXPONENT}")))?;
        if base.degree() * e as usize > MAX_DEGREE {
            return Err(Error::Parse("polynomial degree too large".into()));
        }
        let mut acc = MPoly::one(self.nvars);
        for _ in 0..e {
            if acc.len().saturating_mul(base.len()) > MAX_TERMS * 50 {
                return Err(Error::Parse("power too large".into()));
            }
            acc = &acc * &base;
            check_size(&acc)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<MPoly> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(MPoly::constant(self.nvars, Rat::from_integer(n))),
            Some(Tok::Var(i)) => Ok(MPoly::var(self.nvars, i)),
            Some(Tok::LParen) => {
                let p = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(p),
                    _ => Err(Error::Parse("missing ')'".into())),
                }
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

/// Parses a polynomial in the variables `x1 … x{nvars}`.
pub fn parse_poly(src: &str, nvars: usize) -> Result<MPoly> {
    let toks = lex(src, nvars)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        nvars,
        depth: 0,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    if out.terms().any(|(_, c)| c.is_zero()) {
        return Err(Error::Internal("zero coefficient stored".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::{rat, rat_frac};

    fn x(n: usize, i: usize) -> MPoly {
        MPoly::var(n, i)
    }

    #[test]
    fn parses_basic_terms() {
        let p = parse_poly("x1*x2 + 3/2*x1^2", 2).unwrap();
        let expected = &(&x(2, 0) * &x(2, 1)) + &x(2, 0).pow(2).scale(&rat_frac(3, 2));
        assert_eq!(p, expected);
    }

    #[test]
    fn parentheses_and_unary_minus() {
        let p = parse_poly("-(x1 - 1)^2", 1).unwrap();
        let expected = &(&(-&x(1, 0).pow(2)) + &x(1, 0).scale(&rat(2))) - &MPoly::one(1);
        assert_eq!(p, expected);
    }

    #[test]
    fn round_trips_display() {
        let p = parse_poly("2*x1^3*x2 - x2^2 + 5/7", 2).unwrap();
        let again = parse_poly(&p.to_string(), 2).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_poly("", 2).is_err());
        assert!(parse_poly("x3", 2).is_err());
        assert!(parse_poly("x0", 2).is_err());
        assert!(parse_poly("x1 / x2", 2).is_err());
        assert!(parse_poly("1/0", 2).is_err());
        assert!(parse_poly("(x1", 2).is_err());
        assert!(parse_poly("x1 x2", 2).is_err());
        assert!(parse_poly("x1^99", 2).is_err());
        assert!(parse_poly("y", 2).is_err());
    }

    #[test]
    fn caps_blowup() {
        assert!(parse_poly("(x1+x2+x3+x4+x5+x6+x7+x8+1)^32", 8).is_err());
        assert!(parse_poly("99999999999^64", 1).is_err());
    }

    #[test]
    fn printed_powers_parse_again() {
        // the expansion has exponents above any single literal exponent
        let p = parse_poly("(x1 + x2^6)^6", 2).unwrap();
        assert_eq!(parse_poly(&p.to_string(), 2).unwrap(), p);
        let q = parse_poly("(123456789/7*x1 - 1)^20", 1).unwrap();
        assert_eq!(parse_poly(&q.to_string(), 1).unwrap(), q);
    }
}
