//! Polynomial parametrizations of the homogeneous and test varieties, and
//! Cayley–Dickson composition algebras.

mod algebra;
pub mod spec;
mod variety;

use std::collections::HashMap;

use itertools::Itertools;
use num_traits::Zero;

pub use algebra::CompAlgebra;
pub use spec::{parse_graph_file, parse_variety_spec};
pub use variety::{ParamVariety, RANK_CHECK_POINTS};

use crate::error::{Error, Result};
use crate::exact::{monomials_of_degree, poly_det, rat, MPoly, Rat, Sampler};

/// Seed used by constructors that must verify their own output.
const CHECK_SEED: u64 = 0x5eed;

pub fn comp_algebra(d: usize) -> Result<CompAlgebra> {
    CompAlgebra::new(d)
}

/// Dehomogenized Veronese map: all nonconstant monomials of degree ≤ `d`.
pub fn veronese(n: usize, d: usize) -> Result<ParamVariety> {
    if n == 0 || d == 0 {
        return Err(Error::Invalid("veronese needs n ≥ 1 and d ≥ 1".into()));
    }
    let chart = (1..=d)
        .flat_map(|k| monomials_of_degree(n, k))
        .map(|m| MPoly::term(m, rat(1)))
        .collect();
    ParamVariety::from_chart(format!("veronese:{n},{d}"), n, chart, true, true)
}

/// Segre product of projective spaces of the given dimensions.
pub fn segre(dims: &[usize]) -> Result<ParamVariety> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::Invalid("segre factors must have dimension ≥ 1".into()));
    }
    let n: usize = dims.iter().sum();
    let offsets: Vec<usize> = dims
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let chart = dims
        .iter()
        .map(|&d| 0..=d)
        .multi_cartesian_product()
        .filter(|t| t.iter().any(|&j| j != 0))
        .map(|t| {
            let mut m = vec![0u32; n];
            for (f, &j) in t.iter().enumerate() {
                if j > 0 {
                    m[offsets[f] + j - 1] = 1;
                }
            }
            MPoly::term(m, rat(1))
        })
        .collect();
    let name = format!("segre:{}", dims.iter().join(","));
    ParamVariety::from_chart(name, n, chart, true, true)
}

/// Plücker chart of `G(k, m)`: `A ↦` the `k×k` minors of `[I | A]`.
pub fn grassmannian(k: usize, m: usize) -> Result<ParamVariety> {
    if k == 0 || k >= m {
        return Err(Error::Invalid("grassmannian needs 1 ≤ k < m".into()));
    }
    let c = m - k;
    let n = k * c;
    let entry = |i: usize, col: usize| -> MPoly {
        if col < k {
            if i == col {
                MPoly::one(n)
            } else {
                MPoly::zero(n)
            }
        } else {
            MPoly::var(n, i * c + (col - k))
        }
    };
    let chart = (0..m)
        .combinations(k)
        .filter(|s| s.iter().enumerate().any(|(i, &j)| i != j))
        .map(|s| {
            let mat: Vec<Vec<MPoly>> = (0..k)
                .map(|i| s.iter().map(|&col| entry(i, col)).collect())
                .collect();
            poly_det(&mat, n)
        })
        .collect();
    ParamVariety::from_chart(format!("grassmannian:{k},{m}"), n, chart, true, true)
}

/// Pfaffians of the principal submatrices indexed by bitmask subsets.
struct Pfaffians<'a> {
    entry: &'a dyn Fn(usize, usize) -> MPoly,
    nvars: usize,
    memo: HashMap<u64, MPoly>,
}

impl Pfaffians<'_> {
    fn get(&mut self, mask: u64) -> MPoly {
        if mask == 0 {
            return MPoly::one(self.nvars);
        }
        if mask.count_ones() % 2 == 1 {
            return MPoly::zero(self.nvars);
        }
        if let Some(p) = self.memo.get(&mask) {
            return p.clone();
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut out = MPoly::zero(self.nvars);
        let mut sign = rat(1);
        for j in 0..64 {
            if rest & (1 << j) == 0 {
                continue;
            }
            let sub = self.get(rest & !(1 << j));
            let term = &(self.entry)(i, j) * &sub;
            out.add_scaled(&term, &sign);
            sign = -sign;
        }
        self.memo.insert(mask, out.clone());
        out
    }
}

/// Pfaffian of a skew matrix of polynomials.
pub fn pfaffian(m: &[Vec<MPoly>], nvars: usize) -> MPoly {
    let size = m.len();
    if size >= 64 {
        panic!("pfaffian size too large");
    }
    let entry = |i: usize, j: usize| m[i][j].clone();
    let mut pf = Pfaffians {
        entry: &entry,
        nvars,
        memo: HashMap::new(),
    };
    pf.get((1u64 << size) - 1)
}

/// Spinor variety: a skew `m×m` matrix maps to its sub-Pfaffians indexed by
/// nonempty even subsets of `{1..m}`, ordered by size then lexicographically.
pub fn spinor(m: usize) -> Result<ParamVariety> {
    if !(3..=12).contains(&m) {
        return Err(Error::Invalid("spinor needs 3 ≤ m ≤ 12".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..m).tuple_combinations().collect();
    let n = pairs.len();
    let index: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let entry = |i: usize, j: usize| -> MPoly {
        if i == j {
            MPoly::zero(n)
        } else if i < j {
            MPoly::var(n, index[&(i, j)])
        } else {
            -&MPoly::var(n, index[&(j, i)])
        }
    };
    let mut pf = Pfaffians {
        entry: &entry,
        nvars: n,
        memo: HashMap::new(),
    };
    let mut chart = Vec::new();
    for size in (2..=m).step_by(2) {
        for s in (0..m).combinations(size) {
            let mask = s.iter().fold(0u64, |acc, &i| acc | (1 << i));
            chart.push(pf.get(mask));
        }
    }
    ParamVariety::from_chart(format!("spinor:{m}"), n, chart, true, true)
}

/// Severi variety over the composition algebra of dimension `d`:
/// `(u₁, u₂) ↦ (u₁, u₂, ū₂u₁, u₁ū₁, u₂ū₂)`.
pub fn severi(d: usize) -> Result<ParamVariety> {
    let alg = CompAlgebra::new(d)?;
    let n = 2 * d;
    let u1: Vec<MPoly> = (0..d).map(|i| MPoly::var(n, i)).collect();
    let u2: Vec<MPoly> = (d..2 * d).map(|i| MPoly::var(n, i)).collect();
    let u3 = alg.mul_poly(&alg.conj_poly(&u2), &u1);
    let r2 = alg.mul_poly(&u1, &alg.conj_poly(&u1)).swap_remove(0);
    let r3 = alg.mul_poly(&u2, &alg.conj_poly(&u2)).swap_remove(0);
    let mut chart = u1;
    chart.extend(u2);
    chart.extend(u3);
    chart.push(r2);
    chart.push(r3);
    ParamVariety::from_chart(format!("severi:{d}"), n, chart, true, true)
}

/// Graph `x ↦ (x, f(x))` of polynomials without constant or linear terms.
pub fn graph_variety(n: usize, polys: Vec<MPoly>) -> Result<ParamVariety> {
    if n == 0 {
        return Err(Error::Invalid("graph needs n ≥ 1".into()));
    }
    for p in &polys {
        if p.nvars() != n {
            return Err(Error::Invalid(format!(
                "graph polynomial in {} variables, expected {n}",
                p.nvars()
            )));
        }
        if !p.constant_term().is_zero() || !p.homogeneous_part(1).is_zero() {
            return Err(Error::Invalid(
                "graph polynomials must have no constant or linear terms".into(),
            ));
        }
    }
    let quadric_cut = polys.iter().all(|p| p.degree() <= 2);
    let name = format!("graph:{n}[{}]", polys.iter().join("; "));
    let mut chart: Vec<MPoly> = (0..n).map(|i| MPoly::var(n, i)).collect();
    chart.extend(polys);
    ParamVariety::from_chart(name, n, chart, true, quadric_cut)
}

/// Tangent developable of a curve: `(t, s) ↦ φ(t) + s φ′(t)`.
pub fn tangent_developable(curve: &ParamVariety) -> Result<ParamVariety> {
    if curve.dim() != 1 {
        return Err(Error::Invalid("tangent developable needs a curve".into()));
    }
    let t = MPoly::var(2, 0);
    let s = MPoly::var(2, 1);
    let chart: Vec<MPoly> = curve
        .chart()
        .iter()
        .zip(curve.partials(0))
        .map(|(f, df)| {
            let f2 = f.compose(std::slice::from_ref(&t));
            let df2 = df.compose(std::slice::from_ref(&t));
            &f2 + &(&s * &df2)
        })
        .collect();
    let name = format!("tandev:{}", curve.name());
    let x = ParamVariety::from_chart(name, 2, chart, false, false)?;
    x.check_rank(&mut Sampler::new(CHECK_SEED))?;
    Ok(x)
}

/// Cone over `X` with a new vertex coordinate: chart `(x, s) ↦ (φ(x), s)`.
pub fn cone_over(x: &ParamVariety) -> Result<ParamVariety> {
    let n = x.dim() + 1;
    let mut chart: Vec<MPoly> = x.chart().iter().map(|p| p.embed(n, 0)).collect();
    chart.push(MPoly::var(n, n - 1));
    ParamVariety::from_chart(format!("cone:{}", x.name()), n, chart, false, x.quadric_cut())
}

/// Affine-linear variety `x ↦ b + M x` given by its constant vector and
/// columns.
pub fn linear_variety(name: &str, base: &[Rat], dirs: &[Vec<Rat>]) -> Result<ParamVariety> {
    let n = dirs.len();
    let chart = base
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let mut p = MPoly::constant(n, b.clone());
            for (a, d) in dirs.iter().enumerate() {
                if d.len() != base.len() {
                    return Err(Error::Invalid("direction length mismatch".into()));
                }
                p.add_scaled(&MPoly::var(n, a), &d[i]);
            }
            Ok(p)
        })
        .collect::<Result<Vec<_>>>()?;
    let x = ParamVariety::from_chart(name, n, chart, true, true)?;
    x.check_rank(&mut Sampler::new(CHECK_SEED))?;
    Ok(x)
}

/// The catalog entries exercised by the test suites, smallest first.
pub fn standard_catalog() -> Vec<ParamVariety> {
    let specs = [
        "veronese:1,2",
        "veronese:1,3",
        "veronese:2,2",
        "veronese:2,3",
        "veronese:3,2",
        "segre:1,1",
        "segre:1,2",
        "segre:1,3",
        "segre:2,2",
        "segre:1,1,1",
        "grassmannian:2,4",
        "grassmannian:2,5",
        "grassmannian:2,6",
        "grassmannian:3,6",
        "spinor:4",
        "spinor:5",
        "severi:1",
        "severi:2",
        "severi:4",
    ];
    specs
        .iter()
        .map(|s| parse_variety_spec(s, &|_| Err(Error::Invalid("no files".into()))))
        .collect::<Result<Vec<_>>>()
        .expect("catalog specs parse")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::binomial;

    fn dims(x: &ParamVariety) -> (usize, usize) {
        (x.dim(), x.ambient_dim())
    }

    #[test]
    fn dimension_counts() {
        assert_eq!(dims(&veronese(2, 2).unwrap()), (2, 5));
        assert_eq!(dims(&veronese(1, 3).unwrap()), (1, 3));
        assert_eq!(dims(&veronese(3, 2).unwrap()), (3, 9));
        assert_eq!(dims(&segre(&[2, 2]).unwrap()), (4, 8));
        assert_eq!(dims(&segre(&[1, 1]).unwrap()), (2, 3));
        assert_eq!(dims(&segre(&[1, 2]).unwrap()), (3, 5));
        assert_eq!(dims(&grassmannian(2, 6).unwrap()), (8, 14));
        assert_eq!(dims(&grassmannian(2, 5).unwrap()), (6, 9));
        assert_eq!(dims(&grassmannian(2, 4).unwrap()), (4, 5));
        assert_eq!(dims(&spinor(5).unwrap()), (10, 15));
        assert_eq!(dims(&spinor(4).unwrap()), (6, 7));
        assert_eq!(dims(&severi(8).unwrap()), (16, 26));
        assert_eq!(dims(&severi(1).unwrap()), (2, 5));
        assert_eq!(dims(&severi(4).unwrap()), (8, 14));
        for m in 3..=6 {
            assert_eq!(spinor(m).unwrap().dim(), binomial(m, 2));
        }
    }

    #[test]
    fn twisted_cubic_chart() {
        let x = veronese(1, 3).unwrap();
        let t = MPoly::var(1, 0);
        assert_eq!(x.chart(), &[t.clone(), t.pow(2), t.pow(3)]);
    }

    #[test]
    fn quadric_surface_chart() {
        let x = segre(&[1, 1]).unwrap();
        // (x, y, xy) in some order
        assert!(x.chart().iter().any(|p| p.degree() == 2));
        assert_eq!(x.max_degree(), 2);
    }

    #[test]
    fn plucker_quadric_relation() {
        // p12 p34 - p13 p24 + p14 p23 = 0 with p12 = 1
        let x = grassmannian(2, 4).unwrap();
        let c = x.chart();
        // subsets in order: 02 03 12 13 23 (01 dropped)
        let rel = &(&c[4] - &(&c[0] * &c[3])) + &(&c[1] * &c[2]);
        assert!(rel.is_zero(), "{rel}");
    }

    #[test]
    fn catalog_charts_are_immersive() {
        let mut s = Sampler::new(3);
        for x in standard_catalog() {
            assert_eq!(x.generic_jacobian_rank(&mut s), x.dim(), "{}", x.name());
        }
        assert!(severi(8).unwrap().check_rank(&mut s).is_ok());
        assert!(spinor(6).unwrap().check_rank(&mut s).is_ok());
    }

    #[test]
    fn spinor_origin_is_base_point() {
        for m in 3..=6 {
            let x = spinor(m).unwrap();
            let lift = x.lift_at(&vec![rat(0); x.dim()]);
            assert_eq!(lift[0], rat(1));
            assert!(lift[1..].iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn pfaffian_squares_to_determinant() {
        let x = spinor(4).unwrap();
        let n = x.dim();
        let pairs: Vec<(usize, usize)> = (0..4).tuple_combinations().collect();
        let mat: Vec<Vec<MPoly>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        if i == j {
                            MPoly::zero(n)
                        } else if i < j {
                            MPoly::var(n, pairs.iter().position(|&p| p == (i, j)).unwrap())
                        } else {
                            -&MPoly::var(n, pairs.iter().position(|&p| p == (j, i)).unwrap())
                        }
                    })
                    .collect()
            })
            .collect();
        let pf = pfaffian(&mat, n);
        assert_eq!(&pf * &pf, poly_det(&mat, n));
        assert_eq!(x.chart().last().unwrap(), &pf);
    }

    #[test]
    fn norm_is_multiplicative_symbolically() {
        for d in [1, 2, 4, 8] {
            let a = CompAlgebra::new(d).unwrap();
            let nv = 2 * d;
            let u: Vec<MPoly> = (0..d).map(|i| MPoly::var(nv, i)).collect();
            let v: Vec<MPoly> = (d..nv).map(|i| MPoly::var(nv, i)).collect();
            let norm = |w: &[MPoly]| a.mul_poly(w, &a.conj_poly(w)).swap_remove(0);
            let lhs = norm(&a.mul_poly(&u, &v));
            let rhs = &norm(&u) * &norm(&v);
            assert_eq!(lhs, rhs, "d = {d}");
        }
    }

    #[test]
    fn severi_rank_one_relations() {
        // |u3|² = r2 r3 and the norm coordinates are the norms of u1, u2
        for d in [1, 2, 4, 8] {
            let x = severi(d).unwrap();
            let a = CompAlgebra::new(d).unwrap();
            let c = x.chart();
            let u1 = &c[0..d];
            let u2 = &c[d..2 * d];
            let u3 = &c[2 * d..3 * d];
            let norm = |w: &[MPoly]| a.mul_poly(w, &a.conj_poly(w)).swap_remove(0);
            assert!((&c[3 * d] - &norm(u1)).is_zero());
            assert!((&c[3 * d + 1] - &norm(u2)).is_zero());
            assert_eq!(norm(u3), &c[3 * d] * &c[3 * d + 1]);
        }
    }

    #[test]
    fn graph_rejects_linear_terms() {
        let p = MPoly::var(2, 0);
        assert!(graph_variety(2, vec![p]).is_err());
        let q = &MPoly::var(2, 0) * &MPoly::var(2, 1);
        let x = graph_variety(2, vec![q]).unwrap();
        assert_eq!(dims(&x), (2, 3));
        assert!(x.quadric_cut());
    }

    #[test]
    fn derived_constructions() {
        let cubic = veronese(1, 3).unwrap();
        let td = tangent_developable(&cubic).unwrap();
        assert_eq!(dims(&td), (2, 3));
        let line = linear_variety("line", &[rat(0), rat(0)], &[vec![rat(1), rat(2)]]).unwrap();
        assert!(matches!(
            tangent_developable(&line),
            Err(Error::ImageDimensionDeficient)
        ));
        let cone = cone_over(&veronese(1, 2).unwrap()).unwrap();
        assert_eq!(dims(&cone), (2, 3));
        assert!(!cone.expected_smooth());
    }
}
