//! Secant, join, tangential, dual and Gauss dimensions, each as a generic
//! Jacobian rank at random rational points, plus the inversion formula for
//! the second fundamental form of the dual.

mod dual;

use serde::Serialize;

pub use dual::{
    dual_dim, dual_dim_conormal_method, dual_dim_rank_method, dual_second_ff,
    dual_second_ff_from_tower, rank_range, DualDim, DualSecondFF,
};

use crate::catalog::ParamVariety;
use crate::error::{Error, Result};
use crate::exact::{MatRat, Rat, Sampler};
use crate::jets::{jet_tower, GENERIC_VECTOR_TRIALS};

/// Projective dimension of the span of the embedded tangent spaces at
/// `k` random points: `dim σ_k(X)` by Terracini's lemma.
pub fn secant_dim(x: &ParamVariety, k: usize, s: &mut Sampler) -> Result<usize> {
    if k == 0 {
        return Err(Error::Invalid("secant order must be ≥ 1".into()));
    }
    let cap = (k * (x.dim() + 1) - 1).min(x.ambient_dim());
    let mut best = 0;
    for _ in 0..s.retries() {
        let frames: Vec<MatRat> = (0..k).map(|_| x.tangent_frame(&s.vec(x.dim()))).collect();
        let refs: Vec<&MatRat> = frames.iter().collect();
        best = best.max(MatRat::vstack(&refs).rank().saturating_sub(1));
        if best == cap {
            break;
        }
    }
    Ok(best)
}

/// Projective dimension of the join of `Y` and `Z`.
pub fn join_dim(y: &ParamVariety, z: &ParamVariety, s: &mut Sampler) -> Result<usize> {
    if y.ambient_dim() != z.ambient_dim() {
        return Err(Error::Invalid("join of varieties in different spaces".into()));
    }
    let cap = (y.dim() + z.dim() + 1).min(y.ambient_dim());
    let mut best = 0;
    for _ in 0..s.retries() {
        let fy = y.tangent_frame(&s.vec(y.dim()));
        let fz = z.tangent_frame(&s.vec(z.dim()));
        best = best.max(MatRat::vstack(&[&fy, &fz]).rank().saturating_sub(1));
        if best == cap {
            break;
        }
    }
    Ok(best)
}

/// Dimension of the tangential variety by both methods.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangentialDim {
    pub dim: usize,
    /// `n + dim II_v(T)` for II-generic `v`
    pub method_a: usize,
    /// Jacobian rank of `(x, u, s) ↦ s φ̂ + Σ u_α ∂_α φ̂`, minus one
    pub method_b: usize,
}

pub fn tangential_dim_ii_method(x: &ParamVariety, s: &mut Sampler) -> Result<usize> {
    let n = x.dim();
    let mut best = 0;
    for _ in 0..s.retries() {
        let p = x.random_general_point(s)?;
        let ii = jet_tower(x, &p, 2)?.second_ff();
        let (_, r) = ii.generic_vector(s, GENERIC_VECTOR_TRIALS);
        best = best.max(n + r);
        if best == x.ambient_dim() {
            break;
        }
    }
    Ok(best)
}

pub fn tangential_dim_jacobian_method(x: &ParamVariety, s: &mut Sampler) -> Result<usize> {
    let n = x.dim();
    let cols = x.ambient_dim() + 1;
    let mut best = 0;
    for _ in 0..s.retries() {
        let pt = s.vec(n);
        let u = s.vec(n);
        let t = s.nonzero_rat();
        let lift = x.lift_at(&pt);
        let first = x.lift_partials_at(&pt);
        let second = x.lift_second_partials_at(&pt);
        let mut jac: Vec<Vec<Rat>> = Vec::with_capacity(2 * n + 1);
        for beta in 0..n {
            let mut c: Vec<Rat> = first[beta].iter().map(|v| v * &t).collect();
            for (alpha, ua) in u.iter().enumerate() {
                for (ci, h) in c.iter_mut().zip(&second[alpha][beta]) {
                    *ci += ua * h;
                }
            }
            jac.push(c);
        }
        jac.extend(first.iter().cloned());
        jac.push(lift);
        best = best.max(MatRat::from_rows(cols, jac).rank().saturating_sub(1));
        if best == x.ambient_dim() {
            break;
        }
    }
    Ok(best)
}

pub fn tangential_dim(x: &ParamVariety, s: &mut Sampler) -> Result<TangentialDim> {
    let a = tangential_dim_ii_method(x, &mut s.fork())?;
    let b = tangential_dim_jacobian_method(x, &mut s.fork())?;
    if a != b {
        return Err(Error::GenericityFailure(format!(
            "tangential dimension of {}: methods give {a} and {b}",
            x.name()
        )));
    }
    Ok(TangentialDim {
        dim: a,
        method_a: a,
        method_b: b,
    })
}

/// Gauss fiber dimension by both methods.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaussDefect {
    pub defect: usize,
    /// `dim singloc |II|`
    pub method_a: usize,
    /// `n −` rank of the Plücker Gauss map
    pub method_b: usize,
}

pub fn gauss_defect_singloc_method(x: &ParamVariety, s: &mut Sampler) -> Result<usize> {
    let mut best = usize::MAX;
    for _ in 0..s.retries() {
        let p = x.random_general_point(s)?;
        let ii = jet_tower(x, &p, 2)?.second_ff();
        best = best.min(ii.singloc().len());
        if best == 0 {
            break;
        }
    }
    Ok(best)
}

/// Rank of the Gauss map in the affine Plücker chart `x ↦ M_P⁻¹ M_R` of the
/// tangent frame `M = [φ̂; ∂φ̂]`.
pub fn gauss_defect_plucker_method(x: &ParamVariety, s: &mut Sampler) -> Result<usize> {
    let n = x.dim();
    let mut best: Option<usize> = None;
    for _ in 0..s.retries() * 2 {
        let pt = s.vec(n);
        let fj = dual::frame_jet(x, &pt);
        let piv = fj.m.pivot_columns();
        if piv.len() < n + 1 {
            continue;
        }
        let rest: Vec<usize> = (0..fj.m.cols()).filter(|c| !piv.contains(c)).collect();
        let inv = fj.m.select_cols(&piv).inverse().expect("pivot block is invertible");
        let g = inv.mul(&fj.m.select_cols(&rest));
        let rows: Vec<Vec<Rat>> = fj
            .dm
            .iter()
            .map(|d| {
                let dg = inv
                    .mul(&d.select_cols(&rest))
                    .sub(&inv.mul(&d.select_cols(&piv)).mul(&g));
                (0..dg.rows())
                    .flat_map(|i| dg.row(i).to_vec())
                    .collect()
            })
            .collect();
        let width = (n + 1) * rest.len();
        let r = if width == 0 { 0 } else { MatRat::from_rows(width, rows).rank() };
        best = Some(best.map_or(r, |b: usize| b.max(r)));
        if r == n {
            break;
        }
    }
    let r = best.ok_or_else(|| Error::GenericityFailure("no general point found".into()))?;
    Ok(n - r)
}

pub fn gauss_defect(x: &ParamVariety, s: &mut Sampler) -> Result<GaussDefect> {
    let a = gauss_defect_singloc_method(x, &mut s.fork())?;
    let b = gauss_defect_plucker_method(x, &mut s.fork())?;
    if a != b {
        return Err(Error::MethodDisagreement(format!(
            "Gauss defect of {}: singular locus {a}, Plücker rank {b}",
            x.name()
        )));
    }
    Ok(GaussDefect {
        defect: a,
        method_a: a,
        method_b: b,
    })
}

/// Outcome of an inequality check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Pass,
    Fail,
    /// hypotheses (smoothness) not known to hold
    Skipped,
}

impl Check {
    fn of(ok: bool, applies: bool) -> Check {
        match (applies, ok) {
            (false, _) => Check::Skipped,
            (true, true) => Check::Pass,
            (true, false) => Check::Fail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Checks {
    /// `a < n/2 + 2 ⇒ σ(X) = P^N`
    pub zak: Check,
    /// `δ* ≤ a − 1`
    pub dual_bound: Check,
    /// `δ* = 0` or `n − δ*` even
    pub landman: Check,
    /// `dim σ_k ≤ n + (k − 1)(n + 1 − δ_σ)`
    pub superadditivity: Check,
    /// `dim τ ≤ dim σ ≤ dim τ + 1`
    pub tau_sigma: Check,
}

impl Checks {
    pub fn all_pass(&self) -> bool {
        [
            self.zak,
            self.dual_bound,
            self.landman,
            self.superadditivity,
            self.tau_sigma,
        ]
        .iter()
        .all(|c| *c != Check::Fail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SecantPart {
    pub k: usize,
    /// `defect = k(n + 1) − 1 − dim`
    pub dim: usize,
    pub defect: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangentialPart {
    pub dim: usize,
    pub defect: usize,
    pub method_a: usize,
    pub method_b: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectReport {
    pub variety: String,
    pub n: usize,
    #[serde(rename = "N")]
    pub ambient: usize,
    pub secant: SecantPart,
    pub tangential: TangentialPart,
    pub dual: DualDim,
    pub gauss: GaussDefect,
    pub checks: Checks,
    pub seed: u64,
}

/// Evaluates the classical inequalities on computed values.
pub fn checks(
    x: &ParamVariety,
    sigma2: usize,
    sigma_k: (usize, usize),
    tau: usize,
    dual_defect: usize,
) -> Checks {
    let n = x.dim();
    let a = x.codim();
    let smooth = x.expected_smooth();
    let big_n = x.ambient_dim();
    let delta_sigma = (2 * n + 1).saturating_sub(sigma2);
    let (k, dim_k) = sigma_k;
    let bound = n + (k.saturating_sub(1)) * (n + 1).saturating_sub(delta_sigma);
    Checks {
        zak: Check::of(2 * a >= n + 4 || sigma2 == big_n, smooth),
        dual_bound: Check::of(a == 0 || dual_defect < a, smooth),
        landman: Check::of(dual_defect == 0 || (n - dual_defect.min(n)).is_multiple_of(2), smooth),
        superadditivity: Check::of(dim_k <= bound, smooth),
        tau_sigma: Check::of(tau <= sigma2 && sigma2 <= tau + 1, true),
    }
}

/// All defect computations for `X`, each from its own forked stream.
pub fn defect_report(x: &ParamVariety, k: usize, s: &mut Sampler, seed: u64) -> Result<DefectReport> {
    let n = x.dim();
    let big_n = x.ambient_dim();
    let sigma2 = secant_dim(x, 2, &mut s.fork())?;
    let sigma_k = if k == 2 { sigma2 } else { secant_dim(x, k, &mut s.fork())? };
    let tau = tangential_dim(x, &mut s.fork())?;
    let dual = dual_dim(x, &mut s.fork())?;
    let gauss = gauss_defect(x, &mut s.fork())?;
    let expected_k = k * (n + 1) - 1;
    let checks = checks(x, sigma2, (k, sigma_k), tau.dim, dual.defect);
    Ok(DefectReport {
        variety: x.name().to_string(),
        n,
        ambient: big_n,
        secant: SecantPart {
            k,
            dim: sigma_k,
            defect: expected_k - sigma_k.min(expected_k),
        },
        tangential: TangentialPart {
            dim: tau.dim,
            defect: 2 * n - tau.dim.min(2 * n),
            method_a: tau.method_a,
            method_b: tau.method_b,
        },
        dual,
        gauss,
        checks,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cone_over, linear_variety, segre, tangent_developable, veronese};
    use crate::exact::rat;

    #[test]
    fn secant_of_segre_22() {
        let x = segre(&[2, 2]).unwrap();
        assert_eq!(secant_dim(&x, 2, &mut Sampler::new(1)).unwrap(), 7);
        assert_eq!(secant_dim(&x, 1, &mut Sampler::new(1)).unwrap(), 4);
        assert_eq!(secant_dim(&x, 3, &mut Sampler::new(1)).unwrap(), 8);
    }

    #[test]
    fn veronese_surface_defects() {
        let x = veronese(2, 2).unwrap();
        let mut s = Sampler::new(2);
        assert_eq!(secant_dim(&x, 2, &mut s).unwrap(), 4);
        assert_eq!(tangential_dim(&x, &mut s).unwrap().dim, 4);
    }

    #[test]
    fn tangential_small_cases() {
        let mut s = Sampler::new(3);
        assert_eq!(tangential_dim(&segre(&[1, 1]).unwrap(), &mut s).unwrap().dim, 3);
        assert_eq!(tangential_dim(&veronese(1, 3).unwrap(), &mut s).unwrap().dim, 2);
    }

    #[test]
    fn joins() {
        let mut s = Sampler::new(4);
        let l1 = linear_variety("l1", &[rat(0), rat(0), rat(0)], &[vec![rat(1), rat(0), rat(0)]])
            .unwrap();
        let l2 = linear_variety("l2", &[rat(0), rat(1), rat(0)], &[vec![rat(0), rat(-1), rat(1)]])
            .unwrap();
        assert_eq!(join_dim(&l1, &l2, &mut s).unwrap(), 3);
        let conic = veronese(1, 2).unwrap();
        let pt = linear_variety("pt", &[rat(7), rat(-3)], &[]).unwrap();
        assert_eq!(join_dim(&pt, &conic, &mut s).unwrap(), 2);
        let x = segre(&[1, 2]).unwrap();
        assert_eq!(
            join_dim(&x, &x, &mut Sampler::new(5)).unwrap(),
            secant_dim(&x, 2, &mut Sampler::new(5)).unwrap()
        );
    }

    #[test]
    fn gauss_defects() {
        let mut s = Sampler::new(6);
        let td = tangent_developable(&veronese(1, 3).unwrap()).unwrap();
        assert_eq!(gauss_defect(&td, &mut s).unwrap().defect, 1);
        let cone = cone_over(&veronese(1, 2).unwrap()).unwrap();
        assert_eq!(gauss_defect(&cone, &mut s).unwrap().defect, 1);
        assert_eq!(gauss_defect(&segre(&[2, 2]).unwrap(), &mut s).unwrap().defect, 0);
    }

    #[test]
    fn dual_defects() {
        let mut s = Sampler::new(7);
        assert_eq!(dual_dim(&segre(&[1, 2]).unwrap(), &mut s).unwrap().dim, 3);
        let d = dual_dim(&segre(&[1, 3]).unwrap(), &mut s).unwrap();
        assert_eq!(d.defect, 2);
        let cone = cone_over(&veronese(1, 2).unwrap()).unwrap();
        assert_eq!(dual_dim(&cone, &mut s).unwrap().dim, 1);
    }

    #[test]
    fn report_for_segre_22() {
        let x = segre(&[2, 2]).unwrap();
        let r = defect_report(&x, 2, &mut Sampler::new(8), 8).unwrap();
        assert_eq!(r.secant.dim, 7);
        assert_eq!(r.secant.defect, 2);
        assert!(r.checks.all_pass(), "{r:?}");
    }
}
