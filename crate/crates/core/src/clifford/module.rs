//! The canonical Clifford module of a quadric system with critical
//! tangential defect.
//!
//! For an II-generic `v` with `Ann(v) = ⟨P⟩` one-dimensional, take a frame
//! `e_1 = v`, `e_ε` spanning `ker II_v`, `e_j` spanning a complement of
//! `P_sing`, and normal vectors `e_{n+1} = II(v, v)`, `e_{n+j} = II(v, e_j)`,
//! completed by one more vector. With `q^{n+μ}` the dual quadrics the maps
//! `M_ε : e_j ↦ Σ_k q^{n+k}(e_ε, e_j) e_k` on `T / P_sing` satisfy
//!
//! ```text
//! M_ε M_δ + M_δ M_ε = −2 q^{n+1}(e_ε, e_δ) Id,
//! ```
//!
//! so they generate a representation of `Cl(ker II_v, Q_v)` with
//! `Q_v = −q^{n+1}|ker II_v`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{complement, fmt_rat_vec, in_span, rank_of, rat, MatRat, Rat, Sampler};
use crate::jets::{QuadricSystem, GENERIC_VECTOR_TRIALS};

#[derive(Clone, Debug)]
pub struct CliffordModuleData {
    pub v: Vec<Rat>,
    /// `Ann(v)` as combinations of the independent members of the system.
    pub ann: Vec<Vec<Rat>>,
    pub p: MatRat,
    pub p_sing: Vec<Vec<Rat>>,
    pub ker_ii_v: Vec<Vec<Rat>>,
    /// `singloc Ann(v)`; equal to `P_sing` since `Ann(v)` is a single quadric.
    pub sa: Vec<Vec<Rat>>,
    /// Complement of `P_sing` in `T` indexing the module.
    pub module_basis: Vec<Vec<Rat>>,
    /// `Q_v` in the basis `ker_ii_v`.
    pub q_v: MatRat,
    /// One endomorphism of `T / P_sing` per vector of `ker_ii_v`.
    pub maps: Vec<MatRat>,
}

impl CliffordModuleData {
    /// Index pairs `(ε, δ)` where the Clifford relation fails.
    pub fn relation_failures(&self) -> Vec<(usize, usize)> {
        let d = self.module_basis.len();
        let mut bad = Vec::new();
        for e in 0..self.maps.len() {
            for f in e..self.maps.len() {
                let lhs = self.maps[e].mul(&self.maps[f]).add(&self.maps[f].mul(&self.maps[e]));
                let rhs = MatRat::identity(d).scale(&(rat(2) * &self.q_v[(e, f)]));
                if lhs != rhs {
                    bad.push((e, f));
                }
            }
        }
        bad
    }

    pub fn to_report(&self) -> CliffordModuleReport {
        let vecs = |vs: &[Vec<Rat>]| vs.iter().map(|v| fmt_rat_vec(v)).collect();
        let mat = |m: &MatRat| m.row_vecs().iter().map(|r| fmt_rat_vec(r)).collect();
        CliffordModuleReport {
            v: fmt_rat_vec(&self.v),
            ann: vecs(&self.ann),
            p_rank: self.p.rank(),
            p_sing: vecs(&self.p_sing),
            ker_ii_v: vecs(&self.ker_ii_v),
            ker_dim: self.ker_ii_v.len(),
            module_dim: self.module_basis.len(),
            q_v: mat(&self.q_v),
            q_v_rank: self.q_v.rank(),
            maps: self.maps.iter().map(mat).collect(),
            relation_holds: self.relation_failures().is_empty(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CliffordModuleReport {
    pub v: Vec<String>,
    pub ann: Vec<Vec<String>>,
    pub p_rank: usize,
    pub p_sing: Vec<Vec<String>>,
    pub ker_ii_v: Vec<Vec<String>>,
    pub ker_dim: usize,
    pub module_dim: usize,
    pub q_v: Vec<Vec<String>>,
    pub q_v_rank: usize,
    pub maps: Vec<Vec<Vec<String>>>,
    pub relation_holds: bool,
}

fn hypotheses(msg: impl Into<String>) -> Error {
    Error::CliffordHypotheses(msg.into())
}

/// Builds the Clifford module at an II-generic vector drawn from `s`.
pub fn clifford_module_from_ii(a: &QuadricSystem, s: &mut Sampler) -> Result<CliffordModuleData> {
    let a = a.independent();
    let n = a.dim();
    let (v, _) = a.generic_vector(s, GENERIC_VECTOR_TRIALS);
    let ann = a.annihilator(&v);
    if ann.len() != 1 {
        return Err(Error::NoCriticalDefect);
    }
    let p = a.combination(&ann[0]);
    let p_sing = p.kernel_basis();
    let sa = a.subsystem(&ann).singloc();
    let ker_ii_v = a.contract(&v).kernel_basis();
    if let Some(i) = ker_ii_v.iter().position(|w| !in_span(&p_sing, w)) {
        return Err(hypotheses(format!("ker II_v ⊄ singloc Ann(v) (vector {i})")));
    }
    let mut flag = vec![v.clone()];
    flag.extend(ker_ii_v.iter().cloned());
    if rank_of(&flag, n) != p_sing.len() {
        return Err(hypotheses("{v, ker II_v} ≠ singloc Ann(v)"));
    }

    // normal frame
    let module_basis = complement(&p_sing, n);
    let mut frame = vec![a.eval(&v, &v)];
    frame.extend(module_basis.iter().map(|e| a.eval(&v, e)));
    if rank_of(&frame, a.len()) != frame.len() {
        return Err(Error::QvNotSingleValued);
    }
    if frame.len() + 1 != a.len() {
        return Err(hypotheses(format!(
            "II_v has rank {} in a system of {} quadrics",
            frame.len(),
            a.len()
        )));
    }
    frame.extend(complement(&frame, a.len()));
    let f = MatRat::from_fn(a.len(), a.len(), |i, j| frame[j][i].clone());
    let dual = f.inverse().ok_or_else(|| Error::Internal("normal frame is singular".into()))?;
    let q: Vec<MatRat> = dual.row_vecs().iter().map(|c| a.combination(c)).collect();

    // every dual quadric but q^{n+1} vanishes on P_sing
    for (mu, qm) in q.iter().enumerate().skip(1) {
        if p_sing.iter().any(|x| p_sing.iter().any(|y| !qm.bilinear(x, y).is_zero())) {
            return Err(hypotheses(format!("P_sing ⊄ Base of dual quadric {mu}")));
        }
    }

    let q1 = &q[0];
    let k = ker_ii_v.len();
    let q_v = MatRat::from_fn(k, k, |e, d| -q1.bilinear(&ker_ii_v[e], &ker_ii_v[d]));
    let d = module_basis.len();
    let maps: Vec<MatRat> = ker_ii_v
        .iter()
        .map(|w| MatRat::from_fn(d, d, |r, c| q[1 + r].bilinear(w, &module_basis[c])))
        .collect();
    let data = CliffordModuleData { v, ann, p, p_sing, ker_ii_v, sa, module_basis, q_v, maps };
    if let Some((e, d)) = data.relation_failures().first() {
        return Err(hypotheses(format!("relation fails at (ε, δ) = ({}, {})", e + 1, d + 1)));
    }
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{segre, severi};
    use crate::jets::second_ff_random;

    fn module_of(x: crate::catalog::ParamVariety, seed: u64) -> Result<CliffordModuleData> {
        let mut s = Sampler::new(seed);
        let a = second_ff_random(&x, &mut s)?;
        clifford_module_from_ii(&a, &mut s)
    }

    #[test]
    fn severi_grassmannian_module() {
        let m = module_of(severi(4).unwrap(), 1).unwrap();
        assert_eq!(m.ker_ii_v.len(), 3);
        assert_eq!(m.module_basis.len(), 4);
        assert_eq!(m.q_v.rank(), 3);
        assert_eq!(m.sa.len(), m.p_sing.len());
    }

    #[test]
    fn severi_cayley_plane_module() {
        let m = module_of(severi(8).unwrap(), 2).unwrap();
        assert_eq!(m.ker_ii_v.len(), 7);
        assert_eq!(m.module_basis.len(), 8);
        assert_eq!(m.q_v.rank(), 7);
    }

    #[test]
    fn segre_plane_module_is_one_dimensional() {
        let m = module_of(segre(&[2, 2]).unwrap(), 3).unwrap();
        assert_eq!(m.ker_ii_v.len(), 1);
        assert_eq!(m.module_basis.len(), 2);
    }

    #[test]
    fn generic_system_has_no_critical_defect() {
        let mut s = Sampler::new(4);
        let mats = (0..3)
            .map(|_| {
                let b = MatRat::from_fn(4, 4, |_, _| s.rat());
                b.add(&b.transpose())
            })
            .collect();
        let a = QuadricSystem::new(4, mats).unwrap();
        assert_eq!(clifford_module_from_ii(&a, &mut s).unwrap_err(), Error::NoCriticalDefect);
    }
}
