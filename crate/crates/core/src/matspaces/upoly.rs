//! Dense univariate polynomials over ℚ, coefficients low to high.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::Rat;

pub(crate) fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Degree, with `None` for the zero polynomial.
pub(crate) fn degree(p: &[Rat]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

#[cfg(test)]
fn eval(p: &[Rat], t: &Rat) -> Rat {
    p.iter().rev().fold(Rat::zero(), |acc, c| acc * t + c)
}

fn monic(p: Vec<Rat>) -> Vec<Rat> {
    let p = trim(p);
    match p.last() {
        Some(lead) => {
            let inv = lead.recip();
            p.into_iter().map(|c| c * &inv).collect()
        }
        None => p,
    }
}

/// Primitive integer polynomial proportional to `p` (zero stays empty).
fn primitive(p: &[Rat]) -> Vec<BigInt> {
    let p = trim(p.to_vec());
    let den = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
    primitive_int(ints)
}

fn primitive_int(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    let g = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in &mut p {
            *c /= &g;
        }
    }
    p
}

/// Primitive pseudo-remainder of `a` by `b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in &mut r {
            *c *= lb;
        }
        for (i, c) in b.iter().enumerate() {
            r[dr - db + i] -= &lr * c;
        }
        r = primitive_int(r);
    }
    r
}

/// Monic gcd; the gcd of two zero polynomials is zero. Runs a primitive
/// remainder sequence over ℤ to keep coefficients small.
pub(crate) fn gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut a = primitive(a);
    let mut b = primitive(b);
    while !b.is_empty() {
        let r = prem(&a, &b);
        a = b;
        b = r;
    }
    monic(a.into_iter().map(Rat::from_integer).collect())
}

/// Interpolating polynomial through `(xs[i], ys[i])`, by divided differences.
pub(crate) fn interpolate(xs: &[Rat], ys: &[Rat]) -> Vec<Rat> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    // Horner expansion of the Newton form
    let mut p = vec![Rat::zero(); n];
    for i in (0..n).rev() {
        // p = p * (t - xs[i]) + dd[i]
        let mut next = vec![Rat::zero(); n];
        for k in 0..n {
            if p[k].is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] += &p[k];
            }
            next[k] -= &p[k] * &xs[i];
        }
        next[0] += &dd[i];
        p = next;
    }
    trim(p)
}

pub(crate) fn is_constant(p: &[Rat]) -> bool {
    degree(p) == Some(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn p(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&c| rat(c)).collect()
    }

    #[test]
    fn gcd_of_products() {
        // (t - 1)(t + 2) and (t - 1)(t - 3)
        let g = gcd(&p(&[-2, 1, 1]), &p(&[3, -4, 1]));
        assert_eq!(g, p(&[-1, 1]));
        assert!(is_constant(&gcd(&p(&[1, 1]), &p(&[2, 1]))));
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let f = p(&[5, 0, -3, 2]);
        let xs: Vec<Rat> = (0..4).map(rat).collect();
        let ys: Vec<Rat> = xs.iter().map(|x| eval(&f, x)).collect();
        assert_eq!(interpolate(&xs, &ys), f);
    }
}
