//! Clifford algebras realized on the exterior algebra, the spin action of a
//! maximal null subspace, and the Clifford module carried by a quadric
//! system with critical tangential defect.

mod module;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{fmt_rat, MatRat, Rat, Sampler};

pub use module::{clifford_module_from_ii, CliffordModuleData, CliffordModuleReport};

/// Largest supported `dim V`.
pub const MAX_DIM: usize = 16;

/// Element of `Λ•V` with `dim V = m`; subsets of the basis are bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordElem {
    m: usize,
    terms: BTreeMap<u32, Rat>,
}

fn sign_before(mask: u32, i: usize) -> bool {
    (mask & ((1u32 << i) - 1)).count_ones() % 2 == 1
}

impl CliffordElem {
    pub fn zero(m: usize) -> Self {
        CliffordElem { m, terms: BTreeMap::new() }
    }

    pub fn scalar(m: usize, c: Rat) -> Self {
        let mut e = Self::zero(m);
        e.add_term(0, c);
        e
    }

    pub fn one(m: usize) -> Self {
        Self::scalar(m, Rat::one())
    }

    /// `e_{i}` (0-based).
    pub fn basis_vector(m: usize, i: usize) -> Self {
        Self::blade(m, 1 << i, Rat::one())
    }

    /// `c · e_{i1} ∧ … ∧ e_{ik}` with `i1 < … < ik` read off `mask`.
    pub fn blade(m: usize, mask: u32, c: Rat) -> Self {
        let mut e = Self::zero(m);
        e.add_term(mask, c);
        e
    }

    pub fn vector(v: &[Rat]) -> Self {
        let mut e = Self::zero(v.len());
        for (i, c) in v.iter().enumerate() {
            e.add_term(1 << i, c.clone());
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rat)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, mask: u32) -> Rat {
        self.terms.get(&mask).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mask: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mask).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn add(&self, other: &CliffordElem) -> CliffordElem {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CliffordElem) -> CliffordElem {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> CliffordElem {
        let mut out = Self::zero(self.m);
        for (&k, v) in &self.terms {
            out.add_term(k, v * c);
        }
        out
    }

    /// Part of degree `k`.
    pub fn grade(&self, k: usize) -> CliffordElem {
        self.filter(|mask| mask.count_ones() as usize == k)
    }

    fn filter(&self, keep: impl Fn(u32) -> bool) -> CliffordElem {
        CliffordElem {
            m: self.m,
            terms: self.terms.iter().filter(|(&k, _)| keep(k)).map(|(&k, c)| (k, c.clone())).collect(),
        }
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|k| k.count_ones() % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|k| k.count_ones() % 2 == 1)
    }

    /// Coordinates when the element lies in `V`.
    pub fn as_vector(&self) -> Option<Vec<Rat>> {
        if self.terms.keys().any(|k| k.count_ones() != 1) {
            return None;
        }
        Some((0..self.m).map(|i| self.coeff(1 << i)).collect())
    }

    pub fn wedge(&self, other: &CliffordElem) -> CliffordElem {
        let mut out = Self::zero(self.m);
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                // sign of moving b's indices past the larger ones of a
                let swaps: u32 = (0..self.m)
                    .filter(|&i| b & (1 << i) != 0)
                    .map(|i| (a >> (i + 1)).count_ones())
                    .sum();
                let c = ca * cb;
                out.add_term(a | b, if swaps % 2 == 1 { -c } else { c });
            }
        }
        out
    }

    /// `(−1)^{k(k−1)/2}` on degree `k`.
    pub fn reverse(&self) -> CliffordElem {
        self.graded_sign(|k| (k * k.saturating_sub(1) / 2) % 2 == 1)
    }

    /// `(−1)^k` on degree `k`.
    pub fn involute(&self) -> CliffordElem {
        self.graded_sign(|k| k % 2 == 1)
    }

    /// Reversal composed with the grade involution; `ã` for products of vectors.
    pub fn conjugate(&self) -> CliffordElem {
        self.graded_sign(|k| ((k * k.saturating_sub(1) / 2) + k) % 2 == 1)
    }

    fn graded_sign(&self, negate: impl Fn(usize) -> bool) -> CliffordElem {
        CliffordElem {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k, if negate(k.count_ones() as usize) { -c } else { c.clone() }))
                .collect(),
        }
    }
}

impl fmt::Display for CliffordElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&k, c)| {
                if k == 0 {
                    return fmt_rat(c);
                }
                let idx: Vec<String> = (0..self.m).filter(|i| k & (1 << i) != 0).map(|i| (i + 1).to_string()).collect();
                format!("{}*e{}", fmt_rat(c), idx.join("^e"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Cl(V, Q)` as `(Λ•V, ∘)` with `x ∘ α = x ∧ α + ι_x α`, so that
/// `x ∘ y + y ∘ x = 2 Q(x, y)`.
#[derive(Clone, Debug)]
pub struct CliffordAlgebra {
    q: MatRat,
}

impl CliffordAlgebra {
    pub fn new(q: MatRat) -> Result<Self> {
        if !q.is_square() || !q.is_symmetric() {
            return Err(Error::Invalid("Q must be a symmetric matrix".into()));
        }
        if q.rows() == 0 || q.rows() > MAX_DIM {
            return Err(Error::Invalid(format!("dim V must be in 1..={MAX_DIM}")));
        }
        if q.det().is_zero() {
            return Err(Error::Invalid("Q is degenerate".into()));
        }
        Ok(CliffordAlgebra { q })
    }

    /// `[[0, I], [I, 0]]`, with a trailing `1` when `m` is odd.
    pub fn hyperbolic(m: usize) -> Result<Self> {
        let k = m / 2;
        let q = MatRat::from_fn(m, m, |i, j| {
            let hit = (i < k && j == i + k) || (j < k && i == j + k) || (m % 2 == 1 && i == m - 1 && j == m - 1);
            if hit {
                Rat::one()
            } else {
                Rat::zero()
            }
        });
        Self::new(q)
    }

    pub fn dim(&self) -> usize {
        self.q.rows()
    }

    pub fn form(&self) -> &MatRat {
        &self.q
    }

    fn check(&self, a: &CliffordElem) -> Result<()> {
        if a.m != self.dim() {
            return Err(Error::Invalid(format!("element of Λ•ℂ^{} in Cl of dimension {}", a.m, self.dim())));
        }
        Ok(())
    }

    /// `ι_{e_i} α`, the antiderivation extending `e_j ↦ Q(e_i, e_j)`.
    fn contract_basis(&self, i: usize, a: &CliffordElem) -> CliffordElem {
        let mut out = CliffordElem::zero(a.m);
        for (&k, c) in &a.terms {
            for j in 0..a.m {
                if k & (1 << j) == 0 || self.q[(i, j)].is_zero() {
                    continue;
                }
                let v = c * &self.q[(i, j)];
                out.add_term(k & !(1 << j), if sign_before(k, j) { -v } else { v });
            }
        }
        out
    }

    /// `e_i ∘ α`.
    fn left_basis(&self, i: usize, a: &CliffordElem) -> CliffordElem {
        let mut out = self.contract_basis(i, a);
        for (&k, c) in &a.terms {
            if k & (1 << i) == 0 {
                out.add_term(k | (1 << i), if sign_before(k, i) { -c } else { c.clone() });
            }
        }
        out
    }

    /// `ι_v α`.
    pub fn contract(&self, v: &[Rat], a: &CliffordElem) -> CliffordElem {
        let mut out = CliffordElem::zero(a.m);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.contract_basis(i, a).scale(c));
            }
        }
        out
    }

    /// `a ∘ b`. Each blade is unfolded by `e_i ∧ β = e_i ∘ β − ι_{e_i} β`.
    pub fn mul(&self, a: &CliffordElem, b: &CliffordElem) -> Result<CliffordElem> {
        self.check(a)?;
        self.check(b)?;
        let mut memo: HashMap<u32, CliffordElem> = HashMap::new();
        let mut out = CliffordElem::zero(a.m);
        for (&k, c) in &a.terms {
            out = out.add(&self.blade_times(k, b, &mut memo).scale(c));
        }
        Ok(out)
    }

    fn blade_times(&self, mask: u32, b: &CliffordElem, memo: &mut HashMap<u32, CliffordElem>) -> CliffordElem {
        if mask == 0 {
            return b.clone();
        }
        if let Some(r) = memo.get(&mask) {
            return r.clone();
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut out = self.left_basis(i, &self.blade_times(rest, b, memo));
        // ι_{e_i} of the remaining blade, a combination of smaller blades
        let tail = self.contract_basis(i, &CliffordElem::blade(b.m, rest, Rat::one()));
        for (&k, c) in &tail.terms {
            out = out.sub(&self.blade_times(k, b, memo).scale(c));
        }
        memo.insert(mask, out.clone());
        out
    }

    /// Product of vectors `u_1 ∘ … ∘ u_r`.
    pub fn product_of_vectors(&self, vs: &[Vec<Rat>]) -> Result<CliffordElem> {
        let mut g = CliffordElem::one(self.dim());
        for v in vs {
            g = self.mul(&g, &CliffordElem::vector(v))?;
        }
        Ok(g)
    }

    /// `ρ(g) v = g ∘ v ∘ g̃`.
    pub fn rho(&self, g: &CliffordElem, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.dim() {
            return Err(Error::Invalid("vector of the wrong dimension".into()));
        }
        let w = self.mul(&self.mul(g, &CliffordElem::vector(v))?, &g.conjugate())?;
        w.as_vector().ok_or(Error::NotInPin)
    }

    /// Matrix of `ρ(g)`, columns the images of the basis.
    pub fn rho_matrix(&self, g: &CliffordElem) -> Result<MatRat> {
        let m = self.dim();
        let cols: Vec<Vec<Rat>> = (0..m)
            .map(|i| self.rho(g, &unit(m, i)))
            .collect::<Result<_>>()?;
        Ok(MatRat::from_fn(m, m, |i, j| cols[j][i].clone()))
    }

    /// `proj_{Λ^odd U}(v ∘ α)` for `α` even over `U = span{e_i : i ∈ u}`.
    pub fn spin_action(&self, v: &[Rat], alpha: &CliffordElem, u: &[usize]) -> Result<CliffordElem> {
        self.check(alpha)?;
        if v.len() != self.dim() {
            return Err(Error::Invalid("vector of the wrong dimension".into()));
        }
        if u.iter().any(|&i| i >= self.dim()) {
            return Err(Error::Invalid("index of U out of range".into()));
        }
        if u.iter().any(|&i| u.iter().any(|&j| !self.q[(i, j)].is_zero())) {
            return Err(Error::NotNull);
        }
        let umask: u32 = u.iter().map(|&i| 1u32 << i).sum();
        if alpha.terms.keys().any(|k| k & !umask != 0) || !alpha.is_even() {
            return Err(Error::Invalid("α must be an even element of Λ•U".into()));
        }
        let p = self.mul(&CliffordElem::vector(v), alpha)?;
        Ok(p.filter(|k| k & !umask == 0 && k.count_ones() % 2 == 1))
    }

    /// Pairs `(i, j)` where `e_i ∘ e_j + e_j ∘ e_i ≠ 2 Q_ij`.
    pub fn relation_failures(&self) -> Vec<(usize, usize)> {
        let m = self.dim();
        let mut bad = Vec::new();
        for i in 0..m {
            for j in i..m {
                let ei = CliffordElem::basis_vector(m, i);
                let ej = CliffordElem::basis_vector(m, j);
                let lhs = self.mul(&ei, &ej).unwrap().add(&self.mul(&ej, &ei).unwrap());
                let rhs = CliffordElem::scalar(m, &self.q[(i, j)] * Rat::from_integer(2.into()));
                if lhs != rhs {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    /// Vector `u` with `Q(u, u) = 1`, or `None` when the draw degenerates.
    pub fn random_unit_vector(&self, s: &mut Sampler) -> Option<Vec<Rat>> {
        let m = self.dim();
        for _ in 0..s.retries().max(1) {
            let u = s.vec(m);
            let n = self.q.bilinear(&u, &u);
            if n.is_zero() {
                continue;
            }
            if let Some(r) = rat_sqrt(&n) {
                return Some(u.iter().map(|c| c / &r).collect());
            }
            // Q(u + t e_k) = 1 is linear in t when e_k is null
            for k in 0..m {
                if !self.q[(k, k)].is_zero() {
                    continue;
                }
                let lin = Rat::from_integer(2.into()) * self.q.bilinear(&u, &unit(m, k));
                if lin.is_zero() {
                    continue;
                }
                let t = (Rat::one() - &n) / lin;
                let mut w = u.clone();
                w[k] += t;
                return Some(w);
            }
        }
        None
    }

    /// Products of `len` unit vectors.
    pub fn random_pin(&self, len: usize, s: &mut Sampler) -> Result<CliffordElem> {
        let vs: Vec<Vec<Rat>> = (0..len)
            .map(|_| {
                self.random_unit_vector(s)
                    .ok_or_else(|| Error::GenericityFailure("no unit vector found".into()))
            })
            .collect::<Result<_>>()?;
        self.product_of_vectors(&vs)
    }
}

fn unit(m: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); m];
    v[i] = Rat::one();
    v
}

fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r < &Rat::zero() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rat::new(n, d))
}

/// `x ∘ y` under `Q`.
pub fn clifford_mul(a: &CliffordElem, b: &CliffordElem, q: &MatRat) -> Result<CliffordElem> {
    CliffordAlgebra::new(q.clone())?.mul(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn random_elem(m: usize, terms: usize, s: &mut Sampler) -> CliffordElem {
        let mut e = CliffordElem::zero(m);
        for _ in 0..terms {
            e.add_term(s.index(1 << m) as u32, s.rat());
        }
        e
    }

    #[test]
    fn fundamental_relation_for_small_dims() {
        for m in [2, 4, 6, 8] {
            let cl = CliffordAlgebra::hyperbolic(m).unwrap();
            assert!(cl.relation_failures().is_empty(), "m = {m}");
        }
        let diag = CliffordAlgebra::new(MatRat::diag(&[rat(1), rat(-2), rat(3)])).unwrap();
        assert!(diag.relation_failures().is_empty());
    }

    #[test]
    fn unit_and_orthogonal_anticommute() {
        let cl = CliffordAlgebra::new(MatRat::diag(&[rat(1), rat(5)])).unwrap();
        let e1 = CliffordElem::basis_vector(2, 0);
        let e2 = CliffordElem::basis_vector(2, 1);
        let a = e1.add(&e2.scale(&rat(3)));
        assert_eq!(cl.mul(&CliffordElem::one(2), &a).unwrap(), a);
        assert_eq!(cl.mul(&e1, &e1).unwrap(), CliffordElem::one(2));
        let ab = cl.mul(&e1, &e2).unwrap();
        assert_eq!(ab, cl.mul(&e2, &e1).unwrap().scale(&rat(-1)));
        assert_eq!(ab, e1.wedge(&e2));
    }

    #[test]
    fn associativity_on_random_triples() {
        let mut s = Sampler::new(7);
        let cl = CliffordAlgebra::hyperbolic(6).unwrap();
        for _ in 0..100 {
            let (a, b, c) = (random_elem(6, 4, &mut s), random_elem(6, 4, &mut s), random_elem(6, 4, &mut s));
            let left = cl.mul(&cl.mul(&a, &b).unwrap(), &c).unwrap();
            let right = cl.mul(&a, &cl.mul(&b, &c).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn parity_is_respected() {
        let mut s = Sampler::new(3);
        let cl = CliffordAlgebra::hyperbolic(4).unwrap();
        for _ in 0..20 {
            let a = random_elem(4, 5, &mut s).filter(|k| k.count_ones() % 2 == 0);
            let b = random_elem(4, 5, &mut s).filter(|k| k.count_ones() % 2 == 0);
            assert!(cl.mul(&a, &b).unwrap().is_even());
        }
    }

    #[test]
    fn reflection_in_a_unit_vector() {
        let cl = CliffordAlgebra::new(MatRat::identity(3)).unwrap();
        let e1 = CliffordElem::basis_vector(3, 0);
        let r = cl.rho_matrix(&e1).unwrap();
        assert_eq!(r, MatRat::diag(&[rat(-1), rat(1), rat(1)]));
        assert_eq!(cl.rho_matrix(&CliffordElem::one(3)).unwrap(), MatRat::identity(3));
    }

    #[test]
    fn even_products_preserve_q() {
        let mut s = Sampler::new(11);
        let cl = CliffordAlgebra::hyperbolic(4).unwrap();
        for _ in 0..50 {
            let g = cl.random_pin(2, &mut s).unwrap();
            let r = cl.rho_matrix(&g).unwrap();
            assert_eq!(r.transpose().mul(cl.form()).mul(&r), *cl.form());
        }
    }

    #[test]
    fn non_pin_elements_are_rejected() {
        let cl = CliffordAlgebra::hyperbolic(2).unwrap();
        let g = CliffordElem::one(2).add(&CliffordElem::basis_vector(2, 0));
        assert_eq!(cl.rho(&g, &[rat(0), rat(1)]), Err(Error::NotInPin));
    }

    #[test]
    fn spin_action_on_the_vacuum() {
        let cl = CliffordAlgebra::hyperbolic(6).unwrap();
        let u = [0, 1, 2];
        let one = CliffordElem::one(6);
        let mut v = vec![rat(0); 6];
        v[4] = rat(3);
        assert!(cl.spin_action(&v, &one, &u).unwrap().is_zero());
        let mut w = vec![rat(0); 6];
        w[1] = rat(2);
        assert_eq!(cl.spin_action(&w, &one, &u).unwrap(), CliffordElem::vector(&w));
        let mut s = Sampler::new(5);
        let alpha = random_elem(6, 6, &mut s).filter(|k| k & !0b111 == 0 && k.count_ones() % 2 == 0);
        assert!(cl.spin_action(&s.vec(6), &alpha, &u).unwrap().is_odd());
        assert_eq!(cl.spin_action(&v, &one, &[0, 3]), Err(Error::NotNull));
    }
}
