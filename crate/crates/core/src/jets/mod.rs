//! Graph-frame Taylor towers at general points: fundamental forms, the
//! osculating filtration, singular loci and the refined cubic form.

mod quadric;
mod tower;

use num_traits::Zero;
use serde::Serialize;

pub use quadric::{
    form_coordinates, form_from_coordinates, hessian, independent_forms, quadratic_form,
    QuadricReport, QuadricSystem, DEFAULT_RANK_TRIALS,
};
pub use tower::{jet_tower, jet_tower_in_frame, JetTower, MAX_ORDER};

use crate::catalog::ParamVariety;
use crate::error::{Error, Result};
use crate::exact::{dot, fmt_rat_vec, in_span, monomials_of_degree, MPoly, MatRat, Rat, Sampler};

/// Tangent vectors sampled when looking for an II-generic direction.
pub const GENERIC_VECTOR_TRIALS: usize = 20;

/// `|II|` at `p`.
pub fn second_ff(x: &ParamVariety, p: &[Rat]) -> Result<QuadricSystem> {
    Ok(jet_tower(x, p, 2)?.second_ff())
}

/// `|II|` at a random general point.
pub fn second_ff_random(x: &ParamVariety, s: &mut Sampler) -> Result<QuadricSystem> {
    let p = x.random_general_point(s)?;
    second_ff(x, &p)
}

pub fn singloc(a: &QuadricSystem) -> Vec<Vec<Rat>> {
    a.singloc()
}

pub fn generic_quadric_rank(a: &QuadricSystem, s: &mut Sampler) -> usize {
    a.generic_rank(s, DEFAULT_RANK_TRIALS)
}

/// Matrix of the linear conditions cutting out the prolongation
/// `A^{(1)} = {c ∈ S³T* : ∂_α c ∈ A for all α}`.
///
/// Unknowns are the cubic's coordinates followed by `λ_{α,i}` expressing
/// `∂_α c = Σ_i λ_{α,i} q_i` over an independent basis of `A`.
fn prolongation_system(a: &QuadricSystem) -> (MatRat, usize) {
    let n = a.dim();
    let basis = a.independent().forms();
    let cubics = monomials_of_degree(n, 3);
    let quads = monomials_of_degree(n, 2);
    let quad_index = |m: &[u32]| quads.iter().position(|q| q.as_slice() == m).expect("monomial");
    let nc = cubics.len();
    let cols = nc + n * basis.len();
    let mut m = MatRat::zeros(n * quads.len(), cols);
    for alpha in 0..n {
        let row0 = alpha * quads.len();
        for (j, cm) in cubics.iter().enumerate() {
            if cm[alpha] == 0 {
                continue;
            }
            let mut d = cm.clone();
            d[alpha] -= 1;
            m[(row0 + quad_index(&d), j)] = Rat::from_integer(cm[alpha].into());
        }
        for (i, q) in basis.iter().enumerate() {
            let col = nc + alpha * basis.len() + i;
            for (qm, c) in q.terms() {
                m[(row0 + quad_index(qm), col)] = -c.clone();
            }
        }
    }
    (m, nc)
}

/// `dim A^{(1)}`.
pub fn prolongation_dim(a: &QuadricSystem) -> usize {
    let (m, _) = prolongation_system(a);
    m.cols() - m.rank()
}

/// Basis of `A^{(1)}` as cubic forms.
pub fn prolongation(a: &QuadricSystem) -> Vec<MPoly> {
    let (m, nc) = prolongation_system(a);
    let n = a.dim();
    let forms: Vec<MPoly> = m
        .kernel_basis()
        .iter()
        .map(|v| form_from_coordinates(n, 3, &v[..nc]))
        .collect();
    independent_forms(&forms, n, 3)
}

/// Whether `∂_α c ∈ A` for every `α`.
pub fn in_prolongation(a: &QuadricSystem, c: &MPoly) -> bool {
    let n = a.dim();
    let basis: Vec<Vec<Rat>> = a
        .independent()
        .forms()
        .iter()
        .map(|q| form_coordinates(q, 2))
        .collect();
    (0..n).all(|alpha| in_span(&basis, &form_coordinates(&c.partial(alpha), 2)))
}

/// Output of [`refined_cubic`].
#[derive(Clone, Debug)]
pub struct RefinedCubic {
    pub v: Vec<Rat>,
    /// `Ann(v)` as covectors on the normal space.
    pub ann: Vec<Vec<Rat>>,
    pub ker_ii_v: Vec<Vec<Rat>>,
    /// `singloc(Ann(v))`.
    pub sa: Vec<Vec<Rat>>,
    /// `III^v(v,v,v)` paired with the basis of `Ann(v)`, which identifies
    /// `N / II_v(T)` with the dual of `Ann(v)`.
    pub value: Vec<Rat>,
}

impl RefinedCubic {
    pub fn is_zero(&self) -> bool {
        self.value.iter().all(Zero::is_zero)
    }

    pub fn to_report(&self) -> RefinedCubicReport {
        RefinedCubicReport {
            v: fmt_rat_vec(&self.v),
            ann_dim: self.ann.len(),
            ker_ii_v_dim: self.ker_ii_v.len(),
            sa_dim: self.sa.len(),
            value: fmt_rat_vec(&self.value),
            zero: self.is_zero(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RefinedCubicReport {
    pub v: Vec<String>,
    pub ann_dim: usize,
    pub ker_ii_v_dim: usize,
    pub sa_dim: usize,
    pub value: Vec<String>,
    pub zero: bool,
}

/// The refined third fundamental form at `v`, computed from a jet tower.
/// `v` is in graph coordinates; `None` samples an II-generic vector.
pub fn refined_cubic(tower: &JetTower, v: Option<&[Rat]>, s: &mut Sampler) -> Result<RefinedCubic> {
    if tower.order() < 3 {
        return Err(Error::Invalid("refined cubic needs jets of order 3".into()));
    }
    let ii = tower.second_ff();
    let (best_v, best_rank) = ii.generic_vector(s, GENERIC_VECTOR_TRIALS);
    let v = match v {
        Some(v) => {
            if v.len() != tower.dim() {
                return Err(Error::Invalid("tangent vector has the wrong length".into()));
            }
            if ii.contract(v).rank() < best_rank {
                return Err(Error::VectorNotGeneric);
            }
            v.to_vec()
        }
        None => best_v,
    };
    let ann = ii.annihilator(&v);
    let ker_ii_v = ii.contract(&v).kernel_basis();
    let sa = ii.subsystem(&ann).singloc();
    if !in_span(&sa, &v) {
        return Err(Error::Internal("v is not in singloc(Ann(v))".into()));
    }
    let f3: Vec<Rat> = tower.component(3).iter().map(|c| c.eval(&v)).collect();
    let value = ann.iter().map(|l| dot(l, &f3)).collect();
    Ok(RefinedCubic {
        v,
        ann,
        ker_ii_v,
        sa,
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cone_over, segre, tangent_developable, veronese};
    use crate::exact::rat;

    #[test]
    fn segre_11_single_rank_two_quadric() {
        let x = segre(&[1, 1]).unwrap();
        let ii = second_ff_random(&x, &mut Sampler::new(1)).unwrap();
        assert_eq!(ii.len(), 1);
        assert_eq!(generic_quadric_rank(&ii, &mut Sampler::new(2)), 2);
    }

    #[test]
    fn singular_loci_of_degenerate_constructions() {
        let mut s = Sampler::new(5);
        let cone = cone_over(&veronese(1, 2).unwrap()).unwrap();
        assert_eq!(singloc(&second_ff_random(&cone, &mut s).unwrap()).len(), 1);
        let td = tangent_developable(&veronese(1, 3).unwrap()).unwrap();
        assert_eq!(singloc(&second_ff_random(&td, &mut s).unwrap()).len(), 1);
        let seg = segre(&[2, 2]).unwrap();
        assert_eq!(singloc(&second_ff_random(&seg, &mut s).unwrap()).len(), 0);
    }

    #[test]
    fn prolongation_of_full_quadrics_is_all_cubics() {
        let x = veronese(2, 3).unwrap();
        let p = x.random_general_point(&mut Sampler::new(6)).unwrap();
        let t = jet_tower(&x, &p, 3).unwrap();
        let ii = t.second_ff();
        assert_eq!(prolongation_dim(&ii), 4);
        assert_eq!(prolongation(&ii).len(), 4);
        for c in t.ff(3) {
            assert!(in_prolongation(&ii, c));
        }
    }

    #[test]
    fn prolongation_of_single_quadric() {
        // x1 x2 on C²: only cubics with both partials multiples of x1 x2 are 0
        let q = QuadricSystem::from_forms(2, &[&MPoly::var(2, 0) * &MPoly::var(2, 1)]).unwrap();
        assert_eq!(prolongation_dim(&q), 0);
        let c = MPoly::var(2, 0).pow(3);
        assert!(!in_prolongation(&q, &c));
    }

    #[test]
    fn twisted_cubic_torsion() {
        let x = veronese(1, 3).unwrap();
        let t = jet_tower(&x, &[rat(2)], 3).unwrap();
        let r = refined_cubic(&t, Some(&[rat(1)]), &mut Sampler::new(1)).unwrap();
        assert_eq!(r.ann.len(), 1);
        assert!(!r.is_zero());
    }

    #[test]
    fn non_generic_vector_is_rejected() {
        // the vertex direction of a cone is in the singular locus of |II|
        let x = cone_over(&veronese(1, 2).unwrap()).unwrap();
        let t = jet_tower(&x, &[rat(0), rat(0)], 3).unwrap();
        let r = refined_cubic(&t, Some(&[rat(0), rat(1)]), &mut Sampler::new(1));
        assert!(matches!(r, Err(Error::VectorNotGeneric)));
    }
}
