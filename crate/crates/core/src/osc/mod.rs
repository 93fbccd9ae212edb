//! Osculating hypersurfaces, the generalized Monge system for quadrics,
//! linear syzygies of quadric systems and osculating linear spaces.

mod lines;
mod monge;
mod syzygy;

use std::collections::HashMap;

use serde::Serialize;

use crate::catalog::ParamVariety;
use crate::error::{Error, Result};
use crate::exact::{binomial, monomial_degree, monomials_of_degree, MPoly, MatRat, Monomial, Rat};
use crate::jets::form_from_coordinates;

pub use lines::{
    line_contained, line_osculation_order, maximal_rank_report, Containment, LevelRank,
    MaximalRankReport,
};
pub use monge::{monge_check, MongeSolution, MongeVerdict, MONGE_SAMPLE_POINTS};
pub use syzygy::{linear_syzygies, SyzygyReport, SyzygyWitness};

/// Largest osculation order accepted by [`osculating_space`].
pub const MAX_OSC_ORDER: usize = 12;
/// Largest number of degree-`d` monomials accepted by [`osculating_space`].
pub const MAX_OSC_MONOMIALS: usize = 5000;

/// Degree-`d` forms on the ambient space osculating to order `p` at a point.
#[derive(Clone, Debug)]
pub struct OscReport {
    pub variety: String,
    pub degree: usize,
    pub order: usize,
    /// Affine dimension of the space of osculating forms.
    pub dim: usize,
    pub basis: Vec<MPoly>,
}

impl OscReport {
    /// `C(n+a+d, d) − C(n+p, p)`, valid for `p ≤ d`.
    pub fn expected_dim(n: usize, big_n: usize, d: usize, p: usize) -> Option<usize> {
        (p <= d).then(|| binomial(big_n + d, d) - binomial(n + p, p))
    }

    pub fn projective_dim(&self) -> i64 {
        self.dim as i64 - 1
    }

    pub fn to_json(&self) -> OscJson {
        let names: Vec<String> = (0..self.basis.first().map_or(0, MPoly::nvars)).map(|i| format!("z{i}")).collect();
        OscJson {
            variety: self.variety.clone(),
            degree: self.degree,
            order: self.order,
            dim: self.dim,
            projective_dim: self.projective_dim(),
            basis: self.basis.iter().map(|p| p.to_string_with(&names)).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OscJson {
    pub variety: String,
    pub degree: usize,
    pub order: usize,
    pub dim: usize,
    pub projective_dim: i64,
    pub basis: Vec<String>,
}

/// Taylor expansions at `p`, truncated at `order`, of all degree-`d`
/// monomials in the homogeneous lift, keyed by exponent vector.
fn lifted_monomials(x: &ParamVariety, p: &[Rat], d: usize, order: usize) -> Vec<(Monomial, MPoly)> {
    let lift: Vec<MPoly> = x.lift_polys().iter().map(|f| f.shift(p).truncate(order)).collect();
    let vars = lift.len();
    let mut memo: HashMap<Monomial, MPoly> = HashMap::new();
    memo.insert(vec![0; vars], MPoly::one(x.dim()));
    for e in 1..=d {
        for m in monomials_of_degree(vars, e) {
            let i = m.iter().position(|&k| k > 0).expect("positive degree");
            let mut prev = m.clone();
            prev[i] -= 1;
            let prod = memo[&prev].mul_truncated(&lift[i], order);
            memo.insert(m, prod);
        }
    }
    monomials_of_degree(vars, d)
        .into_iter()
        .map(|m| {
            let v = memo.remove(&m).expect("built above");
            (m, v)
        })
        .collect()
}

/// Forms `P` of degree `d` with `P ∘ φ̂` vanishing through order `p_ord` at
/// the chart point `p`.
pub fn osculating_space(x: &ParamVariety, p: &[Rat], d: usize, p_ord: usize) -> Result<OscReport> {
    if d == 0 {
        return Err(Error::Invalid("osculating degree must be at least 1".into()));
    }
    if p_ord > MAX_OSC_ORDER {
        return Err(Error::Invalid(format!("osculation order must be at most {MAX_OSC_ORDER}")));
    }
    let vars = x.ambient_dim() + 1;
    if binomial(vars + d - 1, d) > MAX_OSC_MONOMIALS {
        return Err(Error::Invalid("too many monomials for an osculation computation".into()));
    }
    if p.len() != x.dim() {
        return Err(Error::Invalid("point has the wrong number of coordinates".into()));
    }
    if !x.is_general_point(p) {
        return Err(Error::PointNotGeneral);
    }
    let n = x.dim();
    let cols = lifted_monomials(x, p, d, p_ord);
    let rows: Vec<Monomial> = (0..=p_ord).flat_map(|k| monomials_of_degree(n, k)).collect();
    let m = MatRat::from_fn(rows.len(), cols.len(), |i, j| cols[j].1.coeff(&rows[i]));
    let basis: Vec<MPoly> = m
        .kernel_basis()
        .iter()
        .map(|c| form_from_coordinates(vars, d, c))
        .collect();
    debug_assert!(basis.iter().all(|b| b.terms().all(|(m, _)| monomial_degree(m) == d)));
    Ok(OscReport {
        variety: x.name().to_string(),
        degree: d,
        order: p_ord,
        dim: basis.len(),
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{segre, standard_catalog, veronese};
    use crate::exact::Sampler;

    fn osc_dim(x: &ParamVariety, d: usize, p: usize, seed: u64) -> usize {
        let pt = x.random_general_point(&mut Sampler::new(seed)).unwrap();
        osculating_space(x, &pt, d, p).unwrap().dim
    }

    #[test]
    fn twisted_cubic_conics() {
        let x = veronese(1, 3).unwrap();
        assert_eq!(osc_dim(&x, 2, 2, 1), 7);
        // three quadrics contain the twisted cubic
        assert_eq!(osc_dim(&x, 2, 7, 1), 3);
    }

    #[test]
    fn count_formula_at_low_order() {
        for (x, d) in [(veronese(2, 2).unwrap(), 2), (segre(&[1, 2]).unwrap(), 3), (veronese(1, 3).unwrap(), 2)] {
            for p in 0..=d {
                let want = OscReport::expected_dim(x.dim(), x.ambient_dim(), d, p).unwrap();
                assert_eq!(osc_dim(&x, d, p, 2), want, "{} p = {p}", x.name());
            }
        }
    }

    #[test]
    fn tangent_hyperplanes() {
        for x in standard_catalog().iter().take(6) {
            assert_eq!(osc_dim(x, 1, 1, 3), x.codim(), "{}", x.name());
        }
    }

    #[test]
    fn dims_decrease_with_order() {
        let x = segre(&[1, 2]).unwrap();
        let dims: Vec<usize> = (0..=6).map(|p| osc_dim(&x, 2, p, 4)).collect();
        assert!(dims.windows(2).all(|w| w[0] >= w[1]), "{dims:?}");
        // the ideal of P¹×P² in P⁵ has three quadrics
        assert_eq!(dims[6], 3);
    }
}
