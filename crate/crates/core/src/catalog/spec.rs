//! Variety-spec mini-language and graph files.
//!
//! ```text
//! veronese:n,d   segre:d1,d2,...   grassmannian:k,m   spinor:m   severi:d
//! graph:<file>   tandev:<spec>     cone:<spec>
//! ```
//!
//! A graph file holds a header line `n = <dim>` followed by one polynomial
//! per line in `x1 … xn`; `#` starts a comment.

use crate::error::{Error, Result};
use crate::exact::{parse_poly, MPoly};

use super::{cone_over, graph_variety, grassmannian, segre, severi, spinor, tangent_developable,
            veronese, ParamVariety};

/// Bounds keeping spec-driven constructions at desk scale.
const MAX_VERONESE_VARS: usize = 8;
const MAX_VERONESE_DEGREE: usize = 8;
const MAX_SEGRE_AMBIENT: usize = 512;
const MAX_GRASS_M: usize = 10;
const MAX_NESTING: usize = 4;
const MAX_GRAPH_DIM: usize = 16;
const MAX_GRAPH_POLYS: usize = 64;

pub(crate) fn parse_args(s: &str, what: &str) -> Result<Vec<usize>> {
    if s.is_empty() {
        return Err(Error::Parse(format!("{what}: missing arguments")));
    }
    s.split(',')
        .map(|t| {
            let t = t.trim();
            if t.is_empty() || t.len() > 6 || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse(format!("{what}: bad integer {t:?}")));
            }
            Ok(t.parse::<usize>().expect("digits"))
        })
        .collect()
}

pub(crate) fn exactly<const K: usize>(v: Vec<usize>, what: &str) -> Result<[usize; K]> {
    let len = v.len();
    v.try_into()
        .map_err(|_| Error::Parse(format!("{what}: expected {K} argument(s), got {len}")))
}

/// Parses a graph file into its source dimension and polynomials.
pub fn parse_graph_file(src: &str) -> Result<(usize, Vec<MPoly>)> {
    let mut n: Option<usize> = None;
    let mut polys = Vec::new();
    for (lineno, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match n {
            None => {
                let (k, v) = line.split_once('=').ok_or_else(|| {
                    Error::Parse(format!("line {}: expected header `n = <dim>`", lineno + 1))
                })?;
                if k.trim() != "n" {
                    return Err(Error::Parse(format!(
                        "line {}: expected header `n = <dim>`",
                        lineno + 1
                    )));
                }
                let d = exactly::<1>(parse_args(v.trim(), "graph header")?, "graph header")?[0];
                if d == 0 || d > MAX_GRAPH_DIM {
                    return Err(Error::Parse(format!(
                        "graph dimension must be in 1..={MAX_GRAPH_DIM}"
                    )));
                }
                n = Some(d);
            }
            Some(d) => {
                if polys.len() == MAX_GRAPH_POLYS {
                    return Err(Error::Parse("too many graph polynomials".into()));
                }
                let p = parse_poly(line, d)
                    .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
                polys.push(p);
            }
        }
    }
    let n = n.ok_or_else(|| Error::Parse("graph file has no header".into()))?;
    Ok((n, polys))
}

/// Parses a variety spec. `read_file` resolves `graph:<file>` references.
pub fn parse_variety_spec(
    spec: &str,
    read_file: &dyn Fn(&str) -> Result<String>,
) -> Result<ParamVariety> {
    parse_nested(spec.trim(), read_file, 0)
}

fn parse_nested(
    spec: &str,
    read_file: &dyn Fn(&str) -> Result<String>,
    depth: usize,
) -> Result<ParamVariety> {
    if depth > MAX_NESTING {
        return Err(Error::Parse("variety spec nested too deeply".into()));
    }
    let (head, rest) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("expected `<kind>:<args>`, got {spec:?}")))?;
    let invalid = |e: Error| match e {
        Error::Parse(_) => e,
        other => Error::Parse(other.to_string()),
    };
    match head.trim() {
        "veronese" => {
            let [n, d] = exactly(parse_args(rest, head)?, head)?;
            if n > MAX_VERONESE_VARS || d > MAX_VERONESE_DEGREE {
                return Err(Error::Parse("veronese arguments too large".into()));
            }
            veronese(n, d).map_err(invalid)
        }
        "segre" => {
            let dims = parse_args(rest, head)?;
            let mut total: usize = 1;
            for &d in &dims {
                total = total.saturating_mul(d + 1);
            }
            if total > MAX_SEGRE_AMBIENT {
                return Err(Error::Parse("segre arguments too large".into()));
            }
            segre(&dims).map_err(invalid)
        }
        "grassmannian" => {
            let [k, m] = exactly(parse_args(rest, head)?, head)?;
            if m > MAX_GRASS_M {
                return Err(Error::Parse("grassmannian arguments too large".into()));
            }
            grassmannian(k, m).map_err(invalid)
        }
        "spinor" => {
            let [m] = exactly(parse_args(rest, head)?, head)?;
            if m > 8 {
                return Err(Error::Parse("spinor argument too large".into()));
            }
            spinor(m).map_err(invalid)
        }
        "severi" => {
            let [d] = exactly(parse_args(rest, head)?, head)?;
            severi(d).map_err(invalid)
        }
        "graph" => {
            let text = read_file(rest.trim())?;
            let (n, polys) = parse_graph_file(&text)?;
            graph_variety(n, polys).map_err(invalid)
        }
        "tandev" => {
            let inner = parse_nested(rest.trim(), read_file, depth + 1)?;
            tangent_developable(&inner).map_err(invalid)
        }
        "cone" => {
            let inner = parse_nested(rest.trim(), read_file, depth + 1)?;
            if inner.dim() > 32 {
                return Err(Error::Parse("cone base too large".into()));
            }
            cone_over(&inner).map_err(invalid)
        }
        other => Err(Error::Parse(format!("unknown variety kind {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_files(_: &str) -> Result<String> {
        Err(Error::Parse("no files".into()))
    }

    fn parse(s: &str) -> Result<ParamVariety> {
        parse_variety_spec(s, &no_files)
    }

    #[test]
    fn parses_catalog_specs() {
        let x = parse("segre:2,2").unwrap();
        assert_eq!((x.dim(), x.ambient_dim()), (4, 8));
        let x = parse("spinor:5").unwrap();
        assert_eq!((x.dim(), x.ambient_dim()), (10, 15));
        let x = parse("cone:veronese:1,2").unwrap();
        assert_eq!((x.dim(), x.ambient_dim()), (2, 3));
        let x = parse("tandev:veronese:1,3").unwrap();
        assert_eq!(x.name(), "tandev:veronese:1,3");
    }

    #[test]
    fn rejects_malformed_specs() {
        for bad in [
            "", "veronese", "veronese:", "veronese:2", "veronese:2,x", "segre:0,1",
            "grassmannian:3,3", "spinor:2", "severi:3", "plane:2", "tandev:segre:1,1",
            "cone:cone:cone:cone:cone:cone:veronese:1,2", "veronese:99999999,2",
        ] {
            assert!(matches!(parse(bad), Err(Error::Parse(_))), "{bad:?}");
        }
    }

    #[test]
    fn graph_files() {
        let read = |name: &str| -> Result<String> {
            assert_eq!(name, "q.txt");
            Ok("# a quadric\nn = 2\n\nx1*x2  # hyperbola\n".into())
        };
        let x = parse_variety_spec("graph:q.txt", &read).unwrap();
        assert_eq!((x.dim(), x.ambient_dim()), (2, 3));
        assert!(parse_graph_file("x1*x2").is_err());
        assert!(parse_graph_file("n = 0").is_err());
        assert!(parse_graph_file("n = 2\nx3").is_err());
        let (n, polys) = parse_graph_file("n=3\nx1^2 - x2*x3\n1/2*x3^3").unwrap();
        assert_eq!((n, polys.len()), (3, 2));
    }
}
