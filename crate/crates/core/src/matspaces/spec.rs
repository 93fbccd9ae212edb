//! Matrix-space specs.
//!
//! ```text
//! B_I  C_II  A_I  A_II  A_III  C_IV  A_IV
//! doubled-sym:<spec>   doubled-skew:<spec>
//! split:r,m            graded:m,k
//! lin:d:[[l11, l12, ...], [l21, ...], ...]
//! ```
//!
//! `lin` gives a matrix of linear forms in `x1 … xd`; the space is spanned by
//! the coefficient matrices of the variables.

use num_traits::Zero;

use super::{doubled, exemplar, graded_algebra_space, split_type, MatrixSpace, Symmetry, EXEMPLARS};
use crate::catalog::spec::{exactly, parse_args};
use crate::error::{Error, Result};
use crate::exact::{monomial_degree, parse_poly, MatRat, Rat, Sampler};

const MAX_NESTING: usize = 4;
const MAX_SIZE: usize = 32;
const MAX_PARAMS: usize = 16;
const MAX_SPLIT: usize = 16;
const MAX_GRADED: usize = 8;

/// Parses a matrix-space spec; `s` drives the random `split` construction.
pub fn parse_matspace_spec(spec: &str, s: &mut Sampler) -> Result<MatrixSpace> {
    parse_nested(spec.trim(), s, 0)
}

fn as_parse(e: Error) -> Error {
    match e {
        Error::Parse(_) => e,
        other => Error::Parse(other.to_string()),
    }
}

fn parse_nested(spec: &str, s: &mut Sampler, depth: usize) -> Result<MatrixSpace> {
    if depth > MAX_NESTING {
        return Err(Error::Parse("matrix-space spec nested too deeply".into()));
    }
    if EXEMPLARS.contains(&spec) {
        return exemplar(spec);
    }
    let (head, rest) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("unknown matrix space {spec:?}")))?;
    match head.trim() {
        "doubled-sym" | "doubled-skew" => {
            let inner = parse_nested(rest.trim(), s, depth + 1)?;
            if inner.rows() + inner.cols() > MAX_SIZE {
                return Err(Error::Parse("doubled space too large".into()));
            }
            let kind = if head.trim() == "doubled-sym" { Symmetry::Symmetric } else { Symmetry::Skew };
            doubled(&inner, kind).map_err(as_parse)
        }
        "split" => {
            let [r, m] = exactly(parse_args(rest, head)?, head)?;
            if m > MAX_SPLIT {
                return Err(Error::Parse("split arguments too large".into()));
            }
            split_type(r, m, s).map_err(as_parse)
        }
        "graded" => {
            let [m, k] = exactly(parse_args(rest, head)?, head)?;
            if m > MAX_GRADED {
                return Err(Error::Parse("graded arguments too large".into()));
            }
            graded_algebra_space(m, k).map_err(as_parse)
        }
        "lin" => parse_linear(rest),
        other => Err(Error::Parse(format!("unknown matrix-space kind {other:?}"))),
    }
}

/// Splits `[a, b], [c, d]`-style text at top-level commas.
fn split_top(s: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse("unbalanced brackets".into()))?;
            }
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse("unbalanced brackets".into()));
    }
    out.push(&s[start..]);
    Ok(out)
}

fn strip_brackets(s: &str) -> Result<&str> {
    let s = s.trim();
    s.strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected a bracketed list, got {s:?}")))
}

fn parse_linear(rest: &str) -> Result<MatrixSpace> {
    let (d, body) = rest
        .split_once(':')
        .ok_or_else(|| Error::Parse("lin: expected `lin:d:[[...]]`".into()))?;
    let [d] = exactly(parse_args(d, "lin")?, "lin")?;
    if d == 0 || d > MAX_PARAMS {
        return Err(Error::Parse(format!("lin: parameter count must be in 1..={MAX_PARAMS}")));
    }
    let rows_src = split_top(strip_brackets(body)?)?;
    if rows_src.len() > MAX_SIZE {
        return Err(Error::Parse("lin: too many rows".into()));
    }
    let mut entries: Vec<Vec<Vec<Rat>>> = Vec::new();
    for row in rows_src {
        let cells = split_top(strip_brackets(row)?)?;
        if cells.len() > MAX_SIZE {
            return Err(Error::Parse("lin: too many columns".into()));
        }
        let mut parsed = Vec::new();
        for cell in cells {
            let p = parse_poly(cell, d).map_err(as_parse)?;
            if p.terms().any(|(m, _)| monomial_degree(m) != 1) {
                return Err(Error::Parse(format!("lin: entry {:?} is not a linear form", cell.trim())));
            }
            let coeffs = (0..d)
                .map(|v| {
                    let mut m = vec![0u32; d];
                    m[v] = 1;
                    p.coeff(&m)
                })
                .collect();
            parsed.push(coeffs);
        }
        entries.push(parsed);
    }
    let cols = entries[0].len();
    if entries.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse("lin: ragged matrix".into()));
    }
    let basis: Vec<MatRat> = (0..d)
        .map(|v| MatRat::from_fn(entries.len(), cols, |i, j| entries[i][j][v].clone()))
        .collect();
    if basis.iter().any(|b| b.row_vecs().iter().flatten().all(Zero::is_zero)) {
        return Err(Error::Parse("lin: a parameter does not occur".into()));
    }
    MatrixSpace::detect("lin", basis).map_err(as_parse)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<MatrixSpace> {
        parse_matspace_spec(s, &mut Sampler::new(1))
    }

    #[test]
    fn parses_named_and_constructed_spaces() {
        assert_eq!(parse("C_II").unwrap().rows(), 3);
        let d = parse("doubled-sym:B_I").unwrap();
        assert_eq!(d.basis(), exemplar("A_I").unwrap().basis());
        assert_eq!(parse("graded:5,2").unwrap().symmetry(), Symmetry::Symmetric);
        assert_eq!(parse("split:2,3").unwrap().dim(), 2);
    }

    #[test]
    fn linear_literal_matches_exemplar() {
        let b = parse("lin:3:[[x1, 0], [x2, x1], [x3, x2], [0, x3]]").unwrap();
        assert_eq!(b.basis(), exemplar("B_I").unwrap().basis());
        let c = parse("lin:3:[[0,x1,x2],[-x1,0,x3],[-x2,-x3,0]]").unwrap();
        assert_eq!(c.symmetry(), Symmetry::Skew);
    }

    #[test]
    fn rejects_malformed_specs() {
        for bad in [
            "", "B_III", "split:3,5", "split:2", "graded:9,2", "graded:3,3",
            "doubled-sym:", "doubled-up:B_I", "lin:2:[[x1,x2],[x1]]", "lin:2:[[x1*x2]]",
            "lin:2:[[x1, 1]]", "lin:0:[[0]]", "lin:2:[[x1,x2]", "lin:2:[[x1,x1]]",
            "doubled-sym:doubled-sym:doubled-sym:doubled-sym:doubled-sym:doubled-sym:B_I",
        ] {
            assert!(matches!(parse(bad), Err(Error::Parse(_))), "{bad:?}");
        }
    }
}
