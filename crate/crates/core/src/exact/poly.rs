use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rat::{fmt_rat, is_negative, Rat};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// Sparse multivariate polynomial with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

pub fn monomial_degree(m: &[u32]) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    /// The variable `x_i` (0-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::term(m, Rat::one())
    }

    pub fn term(m: Monomial, c: Rat) -> Self {
        let mut p = Self::zero(m.len());
        p.add_term(m, c);
        p
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear(coeffs: &[Rat]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut m = vec![0; n];
            m[i] = 1;
            p.add_term(m, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u32]) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total degree; zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| monomial_degree(m)).max().unwrap_or(0)
    }

    /// Lowest total degree among the terms.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().map(|m| monomial_degree(m)).min()
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        debug_assert_eq!(m.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &MPoly, c: &Rat) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    /// Product keeping only terms of total degree at most `max_deg`.
    pub fn mul_truncated(&self, other: &MPoly, max_deg: usize) -> MPoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = MPoly::zero(self.nvars);
        let rhs: Vec<(&Monomial, &Rat, usize)> = other
            .terms
            .iter()
            .map(|(m, c)| (m, c, monomial_degree(m)))
            .collect();
        for (m1, c1) in &self.terms {
            let d1 = monomial_degree(m1);
            if d1 > max_deg {
                continue;
            }
            for &(m2, c2, d2) in &rhs {
                if d1 + d2 > max_deg {
                    continue;
                }
                let m: Monomial = m1.iter().zip(m2.iter()).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong length");
        let mut s = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.iter()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            s += t;
        }
        s
    }

    pub fn partial(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[i] -= 1;
            out.add_term(m2, c * Rat::from_integer(m[i].into()));
        }
        out
    }

    pub fn homogeneous_part(&self, d: usize) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| monomial_degree(m) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn truncate(&self, max_deg: usize) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| monomial_degree(m) <= max_deg)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitutes polynomials (all in a common ring) for the variables.
    pub fn compose(&self, subs: &[MPoly]) -> MPoly {
        assert_eq!(subs.len(), self.nvars, "substitution length mismatch");
        let target = subs.first().map_or(0, |s| s.nvars);
        let mut cache = PowerCache::new(subs, usize::MAX);
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let p = cache.monomial(m);
            out.add_scaled(&p, c);
        }
        out
    }

    /// `f(p + y)` as a polynomial in `y`.
    pub fn shift(&self, p: &[Rat]) -> MPoly {
        let n = self.nvars;
        let subs: Vec<MPoly> = (0..n)
            .map(|i| {
                let mut s = MPoly::var(n, i);
                s.add_term(vec![0; n], p[i].clone());
                s
            })
            .collect();
        self.compose(&subs)
    }

    /// Embeds into a ring with more variables, placing this ring's variables
    /// at `offset..offset + nvars`.
    pub fn embed(&self, nvars: usize, offset: usize) -> MPoly {
        assert!(offset + self.nvars <= nvars);
        MPoly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m2 = vec![0; nvars];
                    m2[offset..offset + self.nvars].copy_from_slice(m);
                    (m2, c.clone())
                })
                .collect(),
        }
    }

    /// Renders with variable names `names[i]`.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        // highest degree first reads more naturally
        let mut terms: Vec<(&Monomial, &Rat)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            monomial_degree(b.0)
                .cmp(&monomial_degree(a.0))
                .then_with(|| b.0.cmp(a.0))
        });
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], e)
                    }
                })
                .collect();
            if vars.is_empty() {
                out.push_str(&fmt_rat(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&fmt_rat(&abs));
                    out.push('*');
                }
                out.push_str(&vars.join("*"));
            }
        }
        out
    }
}

/// Caches products of powers of substituted polynomials, optionally
/// truncated at a total degree.
pub(crate) struct PowerCache<'a> {
    subs: &'a [MPoly],
    max_deg: usize,
    cache: HashMap<Monomial, MPoly>,
}

impl<'a> PowerCache<'a> {
    pub(crate) fn new(subs: &'a [MPoly], max_deg: usize) -> Self {
        PowerCache {
            subs,
            max_deg,
            cache: HashMap::new(),
        }
    }

    fn target_vars(&self) -> usize {
        self.subs.first().map_or(0, |s| s.nvars)
    }

    pub(crate) fn monomial(&mut self, m: &[u32]) -> MPoly {
        if let Some(p) = self.cache.get(m) {
            return p.clone();
        }
        let Some(i) = m.iter().rposition(|&e| e > 0) else {
            return MPoly::one(self.target_vars());
        };
        let mut rest = m.to_vec();
        rest[i] -= 1;
        let base = self.monomial(&rest);
        let p = if self.max_deg == usize::MAX {
            &base * &self.subs[i]
        } else {
            base.mul_truncated(&self.subs[i], self.max_deg)
        };
        self.cache.insert(m.to_vec(), p.clone());
        p
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.to_string_with(&names))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({})", self.nvars, self)
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rat::one());
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rat::one());
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rat::one())
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.mul_truncated(rhs, usize::MAX)
    }
}

/// Determinant of a square matrix of polynomials by cofactor expansion with
/// memoized minors along the leading rows.
pub fn poly_det(m: &[Vec<MPoly>], nvars: usize) -> MPoly {
    let n = m.len();
    if n == 0 {
        return MPoly::one(nvars);
    }
    // minors[mask] = det of rows 0..popcount(mask) and the columns in mask
    let mut minors: HashMap<u64, MPoly> = HashMap::new();
    minors.insert(0, MPoly::one(nvars));
    let mut layer: Vec<u64> = vec![0];
    for row in m {
        let mut next: Vec<u64> = Vec::new();
        let mut next_vals: HashMap<u64, MPoly> = HashMap::new();
        for &mask in &layer {
            let base = &minors[&mask];
            if base.is_zero() {
                continue;
            }
            for c in 0..n {
                if mask & (1 << c) != 0 || row[c].is_zero() {
                    continue;
                }
                let new_mask = mask | (1 << c);
                // sign: number of chosen columns greater than c
                let above = (mask >> (c + 1)).count_ones();
                let term = &row[c] * base;
                let entry = next_vals.entry(new_mask).or_insert_with(|| {
                    next.push(new_mask);
                    MPoly::zero(nvars)
                });
                if above % 2 == 0 {
                    entry.add_scaled(&term, &Rat::one());
                } else {
                    entry.add_scaled(&term, &-Rat::one());
                }
            }
        }
        minors = next_vals;
        layer = next;
    }
    minors.remove(&((1u64 << n) - 1)).unwrap_or_else(|| MPoly::zero(nvars))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    fn x(n: usize, i: usize) -> MPoly {
        MPoly::var(n, i)
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let a = &x(2, 0) + &x(2, 1);
        let b = &x(2, 0) - &x(2, 1);
        let p = &a * &b;
        let expected = &(&x(2, 0) * &x(2, 0)) - &(&x(2, 1) * &x(2, 1));
        assert_eq!(p, expected);
        assert!((&p - &expected).is_zero());
        assert_eq!(p.degree(), 2);
    }

    #[test]
    fn partial_and_eval() {
        let p = (&x(2, 0) * &x(2, 0)).scale(&rat(3));
        let p = &p * &x(2, 1);
        assert_eq!(p.partial(0).eval(&[rat(2), rat(5)]), rat(60));
        assert_eq!(p.eval(&[rat(2), rat(5)]), rat(60));
    }

    #[test]
    fn shift_matches_eval() {
        let p = &(&x(2, 0) * &x(2, 1)) + &x(2, 0).pow(3);
        let s = p.shift(&[rat(2), rat(-1)]);
        for y in [[rat(0), rat(0)], [rat(1), rat(3)], [rat(-2), rat(4)]] {
            let shifted: Vec<Rat> = vec![&y[0] + rat(2), &y[1] - rat(1)];
            assert_eq!(s.eval(&y), p.eval(&shifted));
        }
    }

    #[test]
    fn display() {
        let p = &x(2, 0).pow(2).scale(&rat(-2)) + &MPoly::constant(2, rat(1));
        assert_eq!(p.to_string(), "-2*x1^2 + 1");
    }

    #[test]
    fn determinant_by_expansion() {
        let n = 4;
        let m: Vec<Vec<MPoly>> = vec![
            vec![x(n, 0), x(n, 1)],
            vec![x(n, 2), x(n, 3)],
        ];
        let d = poly_det(&m, n);
        let expected = &(&x(n, 0) * &x(n, 3)) - &(&x(n, 1) * &x(n, 2));
        assert_eq!(d, expected);
        let c = |v: i64| MPoly::constant(1, rat(v));
        let m3 = vec![
            vec![c(2), c(1), c(0)],
            vec![c(1), c(3), c(1)],
            vec![c(0), c(1), c(4)],
        ];
        assert_eq!(poly_det(&m3, 1), c(18));
    }
}
