use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{MPoly, Rat};

/// Composition algebra of dimension 1, 2, 4 or 8 over the rationals, built by
/// Cayley–Dickson doubling from the base field.
///
/// Elements are coordinate vectors in the basis `ε_0 = 1, ε_1, …, ε_{d-1}`.
#[derive(Clone, Debug)]
pub struct CompAlgebra {
    dim: usize,
    /// `table[i][j]` is the product `ε_i ε_j`, always `±ε_k` for a single `k`.
    table: Vec<Vec<(usize, i8)>>,
}

/// Doubling product `(a,b)(c,d) = (ac − d̄b, da + bc̄)` on coordinate vectors.
fn cd_mul(x: &[i64], y: &[i64]) -> Vec<i64> {
    let n = x.len();
    if n == 1 {
        return vec![x[0] * y[0]];
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cd_mul(a, c);
    let db = cd_mul(&cd_conj(d), b);
    let da = cd_mul(d, a);
    let bc = cd_mul(b, &cd_conj(c));
    let mut out: Vec<i64> = ac.iter().zip(&db).map(|(p, q)| p - q).collect();
    out.extend(da.iter().zip(&bc).map(|(p, q)| p + q));
    out
}

fn cd_conj(x: &[i64]) -> Vec<i64> {
    x.iter()
        .enumerate()
        .map(|(i, &v)| if i == 0 { v } else { -v })
        .collect()
}

impl CompAlgebra {
    pub fn new(dim: usize) -> Result<Self> {
        if !matches!(dim, 1 | 2 | 4 | 8) {
            return Err(Error::Invalid(format!(
                "composition algebra dimension must be 1, 2, 4 or 8, got {dim}"
            )));
        }
        let unit = |i: usize| {
            let mut v = vec![0i64; dim];
            v[i] = 1;
            v
        };
        let table = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        let p = cd_mul(&unit(i), &unit(j));
                        let k = p.iter().position(|&x| x != 0).expect("basis product is nonzero");
                        (k, p[k] as i8)
                    })
                    .collect()
            })
            .collect();
        Ok(CompAlgebra { dim, table })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Product of basis elements as `(index, sign)`.
    pub fn basis_product(&self, i: usize, j: usize) -> (usize, i8) {
        self.table[i][j]
    }

    pub fn mul(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (k, s) = self.table[i][j];
                let p = a * b;
                if s > 0 {
                    out[k] += p;
                } else {
                    out[k] -= p;
                }
            }
        }
        out
    }

    pub fn conj(&self, u: &[Rat]) -> Vec<Rat> {
        u.iter()
            .enumerate()
            .map(|(i, x)| if i == 0 { x.clone() } else { -x.clone() })
            .collect()
    }

    /// Norm form `u ū` (a scalar).
    pub fn norm(&self, u: &[Rat]) -> Rat {
        self.mul(u, &self.conj(u))[0].clone()
    }

    /// Product of elements whose coordinates are polynomials.
    pub fn mul_poly(&self, u: &[MPoly], v: &[MPoly]) -> Vec<MPoly> {
        let nvars = u[0].nvars();
        let mut out = vec![MPoly::zero(nvars); self.dim];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (k, s) = self.table[i][j];
                let p = a * b;
                let c = if s > 0 { Rat::one() } else { -Rat::one() };
                out[k].add_scaled(&p, &c);
            }
        }
        out
    }

    pub fn conj_poly(&self, u: &[MPoly]) -> Vec<MPoly> {
        u.iter()
            .enumerate()
            .map(|(i, x)| if i == 0 { x.clone() } else { -x })
            .collect()
    }

    /// Associator `(uv)w − u(vw)`.
    pub fn associator(&self, u: &[Rat], v: &[Rat], w: &[Rat]) -> Vec<Rat> {
        let l = self.mul(&self.mul(u, v), w);
        let r = self.mul(u, &self.mul(v, w));
        l.iter().zip(&r).map(|(a, b)| a - b).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn unit(d: usize, i: usize) -> Vec<Rat> {
        let mut v = vec![rat(0); d];
        v[i] = rat(1);
        v
    }

    #[test]
    fn reals_are_trivial() {
        let a = CompAlgebra::new(1).unwrap();
        assert_eq!(a.mul(&[rat(3)], &[rat(-2)]), vec![rat(-6)]);
        assert_eq!(a.conj(&[rat(5)]), vec![rat(5)]);
    }

    #[test]
    fn quaternion_units() {
        let a = CompAlgebra::new(4).unwrap();
        for i in 1..4 {
            let sq = a.mul(&unit(4, i), &unit(4, i));
            assert_eq!(sq, unit(4, 0).iter().map(|x| -x).collect::<Vec<_>>());
        }
        let (k, s) = a.basis_product(1, 2);
        assert_eq!(k, 3);
        assert_eq!(s.abs(), 1);
        // associative
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    assert!(a
                        .associator(&unit(4, i), &unit(4, j), &unit(4, k))
                        .iter()
                        .all(Zero::is_zero));
                }
            }
        }
    }

    #[test]
    fn octonions_are_not_associative() {
        let a = CompAlgebra::new(8).unwrap();
        let assoc = a.associator(&unit(8, 1), &unit(8, 2), &unit(8, 4));
        assert!(assoc.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn conjugation_is_involution() {
        let a = CompAlgebra::new(8).unwrap();
        let u: Vec<Rat> = (0..8).map(|i| rat(i as i64 - 3)).collect();
        assert_eq!(a.conj(&a.conj(&u)), u);
    }

    #[test]
    fn norm_is_multiplicative_and_octonions_alternative() {
        let mut s = crate::exact::Sampler::new(5);
        for d in [1, 2, 4, 8] {
            let a = CompAlgebra::new(d).unwrap();
            let u = s.vec(d);
            let v = s.vec(d);
            assert_eq!(a.norm(&a.mul(&u, &v)), a.norm(&u) * a.norm(&v));
            assert!(a.associator(&u, &u, &v).iter().all(Zero::is_zero));
            assert!(a.associator(&u, &v, &v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn rejects_bad_dimension() {
        assert!(CompAlgebra::new(3).is_err());
        assert!(CompAlgebra::new(16).is_err());
    }
}
