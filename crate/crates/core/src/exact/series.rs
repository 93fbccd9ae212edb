use num_traits::Zero;

use super::matrix::MatRat;
use super::poly::{MPoly, PowerCache};
use super::rat::Rat;
use crate::error::{Error, Result};

/// Multivariate power series truncated at total degree `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    poly: MPoly,
    order: usize,
}

impl TruncSeries {
    pub fn new(poly: MPoly, order: usize) -> Self {
        TruncSeries {
            poly: poly.truncate(order),
            order,
        }
    }

    pub fn zero(nvars: usize, order: usize) -> Self {
        TruncSeries::new(MPoly::zero(nvars), order)
    }

    pub fn var(nvars: usize, i: usize, order: usize) -> Self {
        TruncSeries::new(MPoly::var(nvars, i), order)
    }

    pub fn poly(&self) -> &MPoly {
        &self.poly
    }

    pub fn into_poly(self) -> MPoly {
        self.poly
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn component(&self, d: usize) -> MPoly {
        self.poly.homogeneous_part(d)
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        let order = self.order.min(other.order);
        TruncSeries::new(&self.poly + &other.poly, order)
    }

    pub fn sub(&self, other: &TruncSeries) -> TruncSeries {
        let order = self.order.min(other.order);
        TruncSeries::new(&self.poly - &other.poly, order)
    }

    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        let order = self.order.min(other.order);
        TruncSeries {
            poly: self.poly.mul_truncated(&other.poly, order),
            order,
        }
    }

    pub fn scale(&self, c: &Rat) -> TruncSeries {
        TruncSeries {
            poly: self.poly.scale(c),
            order: self.order,
        }
    }

    /// Coefficient matrix of the linear part of a tuple of series:
    /// row `i` holds the linear coefficients of `f[i]`.
    pub fn linear_part(f: &[TruncSeries]) -> MatRat {
        let n = f.first().map_or(0, |s| s.nvars());
        MatRat::from_fn(f.len(), n, |i, j| {
            let mut m = vec![0; n];
            m[j] = 1;
            f[i].poly.coeff(&m)
        })
    }

    /// `f ∘ g` for several outer series sharing the inner tuple `g`, which
    /// must have zero constant terms.
    pub fn compose_many(outer: &[TruncSeries], inner: &[TruncSeries]) -> Vec<TruncSeries> {
        let order = inner
            .iter()
            .map(|s| s.order)
            .chain(outer.iter().map(|s| s.order))
            .min()
            .unwrap_or(0);
        debug_assert!(inner.iter().all(|s| s.poly.constant_term().is_zero()));
        let target = inner.first().map_or(0, |s| s.nvars());
        let subs: Vec<MPoly> = inner.iter().map(|s| s.poly.clone()).collect();
        let mut cache = PowerCache::new(&subs, order);
        outer
            .iter()
            .map(|f| {
                let mut out = MPoly::zero(target);
                for (m, c) in f.poly.terms() {
                    if super::poly::monomial_degree(m) > order {
                        continue;
                    }
                    out.add_scaled(&cache.monomial(m), c);
                }
                TruncSeries { poly: out, order }
            })
            .collect()
    }

    pub fn compose(&self, inner: &[TruncSeries]) -> TruncSeries {
        Self::compose_many(std::slice::from_ref(self), inner).remove(0)
    }
}

/// Inverse of a map germ with zero constant term and invertible linear part:
/// returns `g` with `f ∘ g = id` through total degree `order`.
pub fn series_invert_map(f: &[TruncSeries], order: usize) -> Result<Vec<TruncSeries>> {
    let n = f.len();
    if f.iter().any(|s| s.nvars() != n) {
        return Err(Error::Invalid("series map must be square".into()));
    }
    if f.iter().any(|s| !s.poly.constant_term().is_zero()) {
        return Err(Error::Invalid("series map has a nonzero constant term".into()));
    }
    let lin = TruncSeries::linear_part(f);
    let inv = lin.inverse().ok_or(Error::NonInvertibleJet)?;
    // f = L x + h(x);  g = L^{-1} (y - h(g))
    let h: Vec<TruncSeries> = f
        .iter()
        .map(|s| {
            let mut p = s.poly.clone();
            for d in [0usize, 1] {
                let part = p.homogeneous_part(d);
                p = &p - &part;
            }
            TruncSeries::new(p, order)
        })
        .collect();
    let apply_inv = |v: &[TruncSeries]| -> Vec<TruncSeries> {
        (0..n)
            .map(|i| {
                let mut acc = MPoly::zero(n);
                for (j, s) in v.iter().enumerate() {
                    acc.add_scaled(s.poly(), &inv[(i, j)]);
                }
                TruncSeries::new(acc, order)
            })
            .collect()
    };
    let ids: Vec<TruncSeries> = (0..n).map(|i| TruncSeries::var(n, i, order)).collect();
    let mut g = apply_inv(&ids);
    // each pass fixes one more degree
    for _ in 1..order {
        let hg = TruncSeries::compose_many(&h, &g);
        let rhs: Vec<TruncSeries> = ids.iter().zip(&hg).map(|(y, t)| y.sub(t)).collect();
        g = apply_inv(&rhs);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    fn x(n: usize, i: usize) -> MPoly {
        MPoly::var(n, i)
    }

    #[test]
    fn identity_inverts_to_identity() {
        let f = vec![TruncSeries::var(1, 0, 4)];
        let g = series_invert_map(&f, 4).unwrap();
        assert_eq!(g[0].poly(), &x(1, 0));
    }

    #[test]
    fn quadratic_perturbation() {
        // x + x^2 inverts to y - y^2 + 2 y^3 through order 3
        let f = vec![TruncSeries::new(&x(1, 0) + &x(1, 0).pow(2), 3)];
        let g = series_invert_map(&f, 3).unwrap();
        let expected = &(&x(1, 0) - &x(1, 0).pow(2)) + &x(1, 0).pow(3).scale(&rat(2));
        assert_eq!(g[0].poly(), &expected);
    }

    #[test]
    fn linear_map_inverse() {
        // (x + y, y) inverts to (x - y, y)
        let f = vec![
            TruncSeries::new(&x(2, 0) + &x(2, 1), 2),
            TruncSeries::new(x(2, 1), 2),
        ];
        let g = series_invert_map(&f, 2).unwrap();
        assert_eq!(g[0].poly(), &(&x(2, 0) - &x(2, 1)));
        assert_eq!(g[1].poly(), &x(2, 1));
    }

    #[test]
    fn singular_linear_part_is_rejected() {
        let f = vec![
            TruncSeries::new(&x(2, 0) + &x(2, 1), 2),
            TruncSeries::new(&x(2, 0) + &x(2, 1), 2),
        ];
        assert!(matches!(series_invert_map(&f, 2), Err(Error::NonInvertibleJet)));
    }
}
