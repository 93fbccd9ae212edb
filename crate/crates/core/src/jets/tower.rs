use num_traits::Zero;

use super::quadric::{hessian, independent_forms, QuadricSystem};
use crate::catalog::ParamVariety;
use crate::error::{Error, Result};
use crate::exact::{
    monomial_degree, monomials_of_degree, series_invert_map, MPoly, MatRat, Rat, TruncSeries,
};

/// Largest jet order accepted.
pub const MAX_ORDER: usize = 6;

/// Taylor data of `X` at a point in graph coordinates: `X` is locally
/// `z^μ = f^μ(t)` with `f` vanishing to second order.
#[derive(Clone, Debug)]
pub struct JetTower {
    point: Vec<Rat>,
    order: usize,
    n: usize,
    /// graph functions, truncated at `order`
    f: Vec<MPoly>,
    /// `d t / d y` at the point: source tangent vectors to graph coordinates
    source_to_tangent: MatRat,
    /// `a_1, a_2, …` for FF², FF³, …
    increments: Vec<usize>,
    /// basis of `|FF^k|` for `k = 2..=order`
    ff: Vec<Vec<MPoly>>,
}

/// Jets at `p` in the canonical graph frame.
pub fn jet_tower(x: &ParamVariety, p: &[Rat], order: usize) -> Result<JetTower> {
    jet_tower_in_frame(x, p, order, None)
}

/// Jets at `p` after applying the ambient linear change `frame` (an
/// invertible `N×N` matrix acting on affine chart coordinates).
pub fn jet_tower_in_frame(
    x: &ParamVariety,
    p: &[Rat],
    order: usize,
    frame: Option<&MatRat>,
) -> Result<JetTower> {
    let n = x.dim();
    let big_n = x.ambient_dim();
    if !(2..=MAX_ORDER).contains(&order) {
        return Err(Error::Invalid(format!("jet order must be in 2..={MAX_ORDER}")));
    }
    if p.len() != n {
        return Err(Error::Invalid("point has the wrong number of coordinates".into()));
    }
    let mut g: Vec<MPoly> = x
        .chart()
        .iter()
        .map(|phi| {
            let mut s = phi.shift(p).truncate(order);
            let c = s.constant_term();
            s.add_term(vec![0; n], -c);
            s
        })
        .collect();
    if let Some(a) = frame {
        if a.rows() != big_n || a.cols() != big_n || a.rank() != big_n {
            return Err(Error::Invalid("frame must be an invertible N×N matrix".into()));
        }
        g = (0..big_n)
            .map(|i| {
                let mut acc = MPoly::zero(n);
                for (j, gj) in g.iter().enumerate() {
                    if !a[(i, j)].is_zero() {
                        acc.add_scaled(gj, &a[(i, j)]);
                    }
                }
                acc
            })
            .collect();
    }
    let series: Vec<TruncSeries> = g.iter().map(|q| TruncSeries::new(q.clone(), order)).collect();
    let jac = TruncSeries::linear_part(&series);
    if jac.rank() < n {
        return Err(Error::PointNotGeneral);
    }
    let piv = jac.independent_rows();
    let rest: Vec<usize> = (0..big_n).filter(|i| !piv.contains(i)).collect();
    let jp = jac.select_rows(&piv);
    let jp_inv = jp.inverse().ok_or(Error::PointNotGeneral)?;
    let c = jac.select_rows(&rest).mul(&jp_inv);
    let tangent: Vec<TruncSeries> = piv.iter().map(|&i| series[i].clone()).collect();
    let normal: Vec<TruncSeries> = rest
        .iter()
        .enumerate()
        .map(|(mu, &i)| {
            let mut w = g[i].clone();
            for (j, &pj) in piv.iter().enumerate() {
                if !c[(mu, j)].is_zero() {
                    w.add_scaled(&g[pj], &-c[(mu, j)].clone());
                }
            }
            TruncSeries::new(w, order)
        })
        .collect();
    let y_of_t = series_invert_map(&tangent, order)?;
    let f: Vec<MPoly> = TruncSeries::compose_many(&normal, &y_of_t)
        .into_iter()
        .map(TruncSeries::into_poly)
        .collect();
    for fm in &f {
        if fm.terms().any(|(m, _)| monomial_degree(m) < 2) {
            return Err(Error::Internal("graph function has a linear part".into()));
        }
    }
    let (increments, ff) = filtration(n, &f, order);
    Ok(JetTower {
        point: p.to_vec(),
        order,
        n,
        f,
        source_to_tangent: jp,
        increments,
        ff,
    })
}

/// Incremental ranks of the osculating filtration and the `|FF^k|` bases.
fn filtration(n: usize, f: &[MPoly], order: usize) -> (Vec<usize>, Vec<Vec<MPoly>>) {
    let a = f.len();
    let mut lower: Vec<Vec<Rat>> = Vec::new();
    let mut increments = Vec::new();
    let mut ff = Vec::new();
    for k in 2..=order {
        let parts: Vec<MPoly> = f.iter().map(|q| q.homogeneous_part(k)).collect();
        // covectors on N killing the lower osculating spaces
        let ann: Vec<Vec<Rat>> = if lower.is_empty() {
            MatRat::identity(a).row_vecs()
        } else {
            MatRat::from_rows(a, lower.clone()).kernel_basis()
        };
        let forms: Vec<MPoly> = ann
            .iter()
            .map(|l| {
                let mut acc = MPoly::zero(n);
                for (lm, pm) in l.iter().zip(&parts) {
                    if !lm.is_zero() {
                        acc.add_scaled(pm, lm);
                    }
                }
                acc
            })
            .collect();
        let basis = independent_forms(&forms, n, k);
        increments.push(basis.len());
        ff.push(basis);
        for m in monomials_of_degree(n, k) {
            lower.push(parts.iter().map(|q| q.coeff(&m)).collect());
        }
        let reduced = MatRat::from_rows(a, std::mem::take(&mut lower)).row_space_basis();
        lower = reduced;
    }
    (increments, ff)
}

impl JetTower {
    pub fn point(&self) -> &[Rat] {
        &self.point
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn codim(&self) -> usize {
        self.f.len()
    }

    /// Graph functions `f^μ(t)`.
    pub fn graph(&self) -> &[MPoly] {
        &self.f
    }

    /// Degree-`k` parts `F_k^μ` of the graph functions.
    pub fn component(&self, k: usize) -> Vec<MPoly> {
        self.f.iter().map(|q| q.homogeneous_part(k)).collect()
    }

    /// `(n, a_1, a_2, …)`.
    pub fn filtration(&self) -> Vec<usize> {
        std::iter::once(self.n).chain(self.increments.iter().copied()).collect()
    }

    /// Basis of `|FF^k|` as homogeneous forms of degree `k`.
    pub fn ff(&self, k: usize) -> &[MPoly] {
        assert!((2..=self.order).contains(&k), "fundamental form order out of range");
        &self.ff[k - 2]
    }

    /// `|II|`: Hessians of the quadratic parts of the graph functions, one per
    /// normal coordinate.
    pub fn second_ff(&self) -> QuadricSystem {
        let labels = (0..self.f.len()).map(|m| format!("n{}", m + 1)).collect();
        QuadricSystem::with_labels(
            self.n,
            self.component(2).iter().map(hessian).collect(),
            labels,
        )
        .expect("Hessians are symmetric")
    }

    /// `∂^k f^μ / ∂t_{i_1} … ∂t_{i_k}` at the point.
    pub fn coefficient(&self, mu: usize, idx: &[usize]) -> Rat {
        let mut m = vec![0u32; self.n];
        for &i in idx {
            m[i] += 1;
        }
        let mut c = self.f[mu].coeff(&m);
        for &e in &m {
            for j in 2..=e {
                c *= Rat::from_integer(j.into());
            }
        }
        c
    }

    /// Converts a source tangent vector to graph coordinates.
    pub fn tangent_from_source(&self, v: &[Rat]) -> Vec<Rat> {
        self.source_to_tangent.mul_vec(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{grassmannian, segre, spinor, veronese};
    use crate::exact::{rat, Sampler};

    #[test]
    fn veronese_filtration() {
        let x = veronese(2, 2).unwrap();
        let p = x.random_general_point(&mut Sampler::new(1)).unwrap();
        let t = jet_tower(&x, &p, 3).unwrap();
        assert_eq!(t.filtration(), vec![2, 3, 0]);
    }

    #[test]
    fn hyperbola_graph_at_origin() {
        let x = segre(&[1, 1]).unwrap();
        let t = jet_tower(&x, &[rat(0), rat(0)], 3).unwrap();
        let ii = t.second_ff();
        assert_eq!(ii.len(), 1);
        assert_eq!(ii.mats()[0].rank(), 2);
        assert!(t.component(3)[0].is_zero());
    }

    #[test]
    fn grassmannian_36_filtration() {
        let x = grassmannian(3, 6).unwrap();
        let p = x.random_general_point(&mut Sampler::new(2)).unwrap();
        let t = jet_tower(&x, &p, 4).unwrap();
        assert_eq!(t.filtration(), vec![9, 9, 1, 0]);
    }

    #[test]
    fn spinor_5_filtration() {
        let x = spinor(5).unwrap();
        let p = x.random_general_point(&mut Sampler::new(3)).unwrap();
        let t = jet_tower(&x, &p, 3).unwrap();
        assert_eq!(t.filtration(), vec![10, 5, 0]);
    }

    #[test]
    fn coefficients_are_symmetric() {
        let x = veronese(2, 3).unwrap();
        let p = x.random_general_point(&mut Sampler::new(4)).unwrap();
        let t = jet_tower(&x, &p, 3).unwrap();
        for mu in 0..t.codim() {
            let c = t.coefficient(mu, &[0, 1, 1]);
            assert_eq!(c, t.coefficient(mu, &[1, 0, 1]));
            assert_eq!(c, t.coefficient(mu, &[1, 1, 0]));
        }
    }

    #[test]
    fn non_general_point_is_rejected() {
        // the tangent developable is singular along the curve (s = 0)
        let td = crate::catalog::tangent_developable(&veronese(1, 3).unwrap()).unwrap();
        assert!(matches!(
            jet_tower(&td, &[rat(1), rat(0)], 3),
            Err(Error::PointNotGeneral)
        ));
    }
}
