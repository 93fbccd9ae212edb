//! Exact arithmetic substrate: rationals, dense matrices, sparse
//! multivariate polynomials and truncated power series.

pub mod matrix;
pub mod parse;
pub mod poly;
pub mod polymat;
pub mod rat;
pub mod sample;
pub mod series;

pub use matrix::{complement, dot, in_span, primitive, rank_of, MatRat};
pub use parse::parse_poly;
pub use poly::{monomial_degree, poly_det, MPoly, Monomial};
pub use polymat::{cramer_kernel_vectors, cramer_vector};
pub use rat::{fmt_rat, fmt_rat_vec, parse_rat, rat, rat_frac, Rat};
pub use sample::{Sampler, DEFAULT_HEIGHT, DEFAULT_RETRIES};
pub use series::{series_invert_map, TruncSeries};

/// Rank over the rationals.
pub fn rank_exact(m: &MatRat) -> usize {
    m.rank()
}

/// Basis of the right kernel.
pub fn kernel_basis(m: &MatRat) -> Vec<Vec<Rat>> {
    m.kernel_basis()
}

/// All exponent vectors in `nvars` variables of total degree exactly `d`,
/// in lexicographically decreasing order.
pub fn monomials_of_degree(nvars: usize, d: usize) -> Vec<Monomial> {
    fn rec(nvars: usize, d: usize, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(d as u32);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e as u32);
            rec(nvars, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(nvars, d, &mut Vec::with_capacity(nvars), &mut out);
    out
}

/// Binomial coefficient as `usize`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(1, 4), vec![vec![4]]);
        assert_eq!(monomials_of_degree(0, 0).len(), 1);
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(3, 5), 0);
    }
}
