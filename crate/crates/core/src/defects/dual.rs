use num_traits::Zero;
use serde::Serialize;

use crate::catalog::ParamVariety;
use crate::error::{Error, Result};
use crate::exact::{complement, dot, MPoly, MatRat, Rat, Sampler};
use crate::jets::{jet_tower, JetTower, QuadricSystem, DEFAULT_RANK_TRIALS};

/// Dimension of `X*` by both methods.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualDim {
    pub dim: usize,
    /// `δ* = N − 1 − dim X*`
    pub defect: usize,
    /// via the generic rank of `|II|`
    pub method_a: usize,
    /// via the conormal parametrization
    pub method_b: usize,
}

/// Value and first derivatives of the tangent frame `[φ̂; ∂φ̂]` at a point.
pub(crate) struct FrameJet {
    pub m: MatRat,
    /// `∂_α m`
    pub dm: Vec<MatRat>,
}

pub(crate) fn frame_jet(x: &ParamVariety, pt: &[Rat]) -> FrameJet {
    let n = x.dim();
    let cols = x.ambient_dim() + 1;
    let m = x.tangent_frame(pt);
    let first = x.lift_partials_at(pt);
    let second = x.lift_second_partials_at(pt);
    let dm = (0..n)
        .map(|a| {
            let mut rows = vec![first[a].clone()];
            rows.extend(second[a].iter().cloned());
            MatRat::from_rows(cols, rows)
        })
        .collect();
    FrameJet { m, dm }
}

/// Cramer kernel vectors of the tangent frame for the pivot columns `piv`
/// and every other column `j`, with their first derivatives.
///
/// `v_j[j] = det M_P` and `v_j[P] = −det M_P · M_P⁻¹ M_j`; derivatives use
/// `d det = det · tr(M_P⁻¹ dM_P)` and `d(M_P⁻¹) = −M_P⁻¹ dM_P M_P⁻¹`.
pub(crate) fn conormal_frame(
    fj: &FrameJet,
    piv: &[usize],
) -> Option<(Vec<Vec<Rat>>, Vec<Vec<Vec<Rat>>>)> {
    let cols = fj.m.cols();
    let others: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    let mp = fj.m.select_cols(piv);
    let det = mp.det();
    if det.is_zero() {
        return None;
    }
    let inv = mp.inverse()?;
    let dets: Vec<Rat> = fj
        .dm
        .iter()
        .map(|d| {
            let prod = inv.mul(&d.select_cols(piv));
            let tr = (0..prod.rows()).fold(Rat::zero(), |acc, i| acc + &prod[(i, i)]);
            &det * tr
        })
        .collect();
    let mut vals = Vec::with_capacity(others.len());
    let mut ders = Vec::with_capacity(others.len());
    for &j in &others {
        let mj = fj.m.column(j);
        let w = inv.mul_vec(&mj);
        let mut v = vec![Rat::zero(); cols];
        v[j] = det.clone();
        for (k, &p) in piv.iter().enumerate() {
            v[p] = -(&det * &w[k]);
        }
        vals.push(v);
        let dv: Vec<Vec<Rat>> = fj
            .dm
            .iter()
            .zip(&dets)
            .map(|(d, dd)| {
                let dmp = d.select_cols(piv);
                // d(M_P⁻¹ M_j) = −M_P⁻¹ dM_P w + M_P⁻¹ dM_j
                let a = inv.mul_vec(&dmp.mul_vec(&w));
                let b = inv.mul_vec(&d.column(j));
                let dw: Vec<Rat> = a.iter().zip(&b).map(|(x, y)| y - x).collect();
                let mut out = vec![Rat::zero(); cols];
                out[j] = dd.clone();
                for (k, &p) in piv.iter().enumerate() {
                    out[p] = -(dd * &w[k] + &det * &dw[k]);
                }
                out
            })
            .collect();
        ders.push(dv);
    }
    Some((vals, ders))
}

/// `dim X*` from the generic rank of `|II|`.
pub fn dual_dim_rank_method(x: &ParamVariety, s: &mut Sampler) -> Result<usize> {
    let n = x.dim();
    let mut best = 0;
    for _ in 0..s.retries() {
        let p = x.random_general_point(s)?;
        let ii = jet_tower(x, &p, 2)?.second_ff();
        best = best.max(ii.generic_rank(s, DEFAULT_RANK_TRIALS));
        if best == n {
            break;
        }
    }
    let delta = n - best;
    Ok((x.ambient_dim() - 1).saturating_sub(delta))
}

/// `dim X*` from the generic Jacobian rank of `(x, λ) ↦ Σ λ_j v_j(x)`.
pub fn dual_dim_conormal_method(x: &ParamVariety, s: &mut Sampler) -> Result<usize> {
    let n = x.dim();
    let cols = x.ambient_dim() + 1;
    let mut best: Option<usize> = None;
    for _ in 0..s.retries() * 2 {
        let pt = s.vec(n);
        let fj = frame_jet(x, &pt);
        let piv = fj.m.pivot_columns();
        if piv.len() < n + 1 {
            continue;
        }
        let Some((vals, ders)) = conormal_frame(&fj, &piv) else {
            continue;
        };
        let lambda = s.vec(vals.len());
        let mut jac_cols = vals.clone();
        for alpha in 0..n {
            let mut c = vec![Rat::zero(); cols];
            for (l, dv) in lambda.iter().zip(&ders) {
                for (ci, di) in c.iter_mut().zip(&dv[alpha]) {
                    *ci += l * di;
                }
            }
            jac_cols.push(c);
        }
        let r = MatRat::from_rows(cols, jac_cols).rank();
        best = Some(best.map_or(r, |b: usize| b.max(r)));
    }
    let r = best.ok_or_else(|| Error::GenericityFailure("no general point found".into()))?;
    Ok(r.saturating_sub(1))
}

pub fn dual_dim(x: &ParamVariety, s: &mut Sampler) -> Result<DualDim> {
    let a = dual_dim_rank_method(x, &mut s.fork())?;
    let b = dual_dim_conormal_method(x, &mut s.fork())?;
    if a != b {
        return Err(Error::MethodDisagreement(format!(
            "dual of {}: rank method {a}, conormal method {b}",
            x.name()
        )));
    }
    Ok(DualDim {
        dim: a,
        defect: x.ambient_dim() - 1 - a,
        method_a: a,
        method_b: b,
    })
}

/// Second fundamental form of `X*` at a general tangent hyperplane.
#[derive(Clone, Debug)]
pub struct DualSecondFF {
    pub system: QuadricSystem,
    /// `δ*`
    pub defect: usize,
    /// generic rank `r = n − δ*` of `|II|`
    pub rank: usize,
    /// block sizes `(a − 1, r)` of the tangent space of `X*`
    pub blocks: (usize, usize),
    /// the hyperplane, as a covector on the normal space
    pub hyperplane: Vec<Rat>,
}

/// Full polarization `T(u, v, w)` of a cubic form.
fn polarize3(c: &MPoly, u: &[Rat], v: &[Rat], w: &[Rat]) -> Rat {
    let zero = vec![Rat::zero(); u.len()];
    let d = |p: &MPoly, dir: &[Rat]| {
        let mut acc = MPoly::zero(p.nvars());
        for (i, x) in dir.iter().enumerate() {
            if !x.is_zero() {
                acc.add_scaled(&p.partial(i), x);
            }
        }
        acc
    };
    d(&d(&d(c, u), v), w).eval(&zero)
}

/// Inversion formula: blocked quadrics `Q₀, Q_s` on `T_H X*` built from the
/// second and third order jets of `X` in a frame adapted to `H`.
pub fn dual_second_ff_from_tower(tower: &JetTower, s: &mut Sampler) -> Result<DualSecondFF> {
    if tower.order() < 3 {
        return Err(Error::Invalid("inversion formula needs jets of order 3".into()));
    }
    let n = tower.dim();
    let a = tower.codim();
    if a == 0 {
        return Err(Error::Invalid("X fills its ambient space".into()));
    }
    let ii = tower.second_ff();
    let generic = ii.generic_rank(s, DEFAULT_RANK_TRIALS);
    let mut found = None;
    for _ in 0..s.retries() * 4 {
        let h = s.nonzero_vec(a);
        if ii.combination(&h).rank() == generic {
            found = Some(h);
            break;
        }
    }
    let h = found.ok_or_else(|| Error::GenericityFailure("no generic tangent hyperplane".into()))?;
    let qh = ii.combination(&h);
    let sing = qh.kernel_basis();
    let rest = complement(&sing, n);
    let r = rest.len();
    // normal frame: ker H, then a vector with H = 1; dual covectors from the inverse
    let ker_h = MatRat::from_rows(a, vec![h.clone()]).kernel_basis();
    let mut last = complement(&ker_h, a).remove(0);
    let scale = dot(&h, &last);
    last.iter_mut().for_each(|x| *x /= &scale);
    let mut frame_cols = ker_h.clone();
    frame_cols.push(last);
    let dual = MatRat::from_rows(a, frame_cols)
        .transpose()
        .inverse()
        .ok_or_else(|| Error::Internal("normal frame is singular".into()))?;
    if dual.row(a - 1) != h.as_slice() {
        return Err(Error::Internal("hyperplane covector mismatch".into()));
    }
    let ell: Vec<Vec<Rat>> = (0..a - 1).map(|l| dual.row(l).to_vec()).collect();
    let q_lambda: Vec<MatRat> = ell.iter().map(|l| ii.combination(l)).collect();
    let cubic = {
        let parts = tower.component(3);
        let mut acc = MPoly::zero(n);
        for (hm, pm) in h.iter().zip(&parts) {
            if !hm.is_zero() {
                acc.add_scaled(pm, hm);
            }
        }
        acc
    };
    let m = (a - 1) + r;
    let off = a - 1;
    let q0 = MatRat::from_fn(m, m, |i, j| {
        if i >= off && j >= off {
            qh.bilinear(&rest[i - off], &rest[j - off])
        } else {
            Rat::zero()
        }
    });
    let mut mats = vec![q0];
    let mut labels = vec!["q0".to_string()];
    for (si, es) in sing.iter().enumerate() {
        let qs = MatRat::from_fn(m, m, |i, j| match (i < off, j < off) {
            (true, true) => Rat::zero(),
            (true, false) => q_lambda[i].bilinear(es, &rest[j - off]),
            (false, true) => q_lambda[j].bilinear(es, &rest[i - off]),
            (false, false) => polarize3(&cubic, es, &rest[i - off], &rest[j - off]),
        });
        mats.push(qs);
        labels.push(format!("s{}", si + 1));
    }
    Ok(DualSecondFF {
        system: QuadricSystem::with_labels(m, mats, labels)?,
        defect: sing.len(),
        rank: r,
        blocks: (a - 1, r),
        hyperplane: h,
    })
}

pub fn dual_second_ff(x: &ParamVariety, p: &[Rat], s: &mut Sampler) -> Result<DualSecondFF> {
    let tower = jet_tower(x, p, 3)?;
    dual_second_ff_from_tower(&tower, s)
}

/// Ranks of `samples` random nonzero combinations: `(min, max)`.
pub fn rank_range(sys: &QuadricSystem, s: &mut Sampler, samples: usize) -> (usize, usize) {
    let mut lo = usize::MAX;
    let mut hi = 0;
    for _ in 0..samples {
        let r = sys.combination(&s.nonzero_vec(sys.len())).rank();
        lo = lo.min(r);
        hi = hi.max(r);
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{grassmannian, segre};
    use crate::exact::{cramer_vector, rat};

    #[test]
    fn conormal_vectors_match_symbolic_cramer_vectors() {
        let x = segre(&[1, 2]).unwrap();
        let n = x.dim();
        let lift = x.lift_polys();
        let mut rows = vec![lift.clone()];
        for a in 0..n {
            rows.push(lift.iter().map(|p| p.partial(a)).collect());
        }
        let pt = vec![rat(2), rat(-3), rat(5)];
        let fj = frame_jet(&x, &pt);
        let piv = fj.m.pivot_columns();
        let (vals, ders) = conormal_frame(&fj, &piv).unwrap();
        let others: Vec<usize> = (0..fj.m.cols()).filter(|c| !piv.contains(c)).collect();
        for (k, &j) in others.iter().enumerate() {
            let mut subset = piv.clone();
            subset.push(j);
            subset.sort();
            let sym = cramer_vector(&rows, &subset);
            let at: Vec<Rat> = sym.iter().map(|p| p.eval(&pt)).collect();
            let sign = if at[j] == vals[k][j] { rat(1) } else { rat(-1) };
            let scaled: Vec<Rat> = at.iter().map(|v| v * &sign).collect();
            assert_eq!(scaled, vals[k]);
            for alpha in 0..n {
                let d: Vec<Rat> = sym.iter().map(|p| p.partial(alpha).eval(&pt) * &sign).collect();
                assert_eq!(d, ders[k][alpha]);
            }
        }
    }

    #[test]
    fn quadric_surface_is_self_dual() {
        let x = segre(&[1, 1]).unwrap();
        let d = dual_dim(&x, &mut Sampler::new(1)).unwrap();
        assert_eq!(d.dim, 2);
    }

    #[test]
    fn dual_ff_of_quadric_surface() {
        let x = segre(&[1, 1]).unwrap();
        let mut s = Sampler::new(2);
        let p = x.random_general_point(&mut s).unwrap();
        let d = dual_second_ff(&x, &p, &mut s).unwrap();
        assert_eq!(d.system.len(), 1);
        assert_eq!(d.system.mats()[0].rank(), 2);
    }

    #[test]
    fn dual_ff_of_g25_has_constant_rank_four() {
        let x = grassmannian(2, 5).unwrap();
        let mut s = Sampler::new(3);
        let p = x.random_general_point(&mut s).unwrap();
        let d = dual_second_ff(&x, &p, &mut s).unwrap();
        assert_eq!(d.system.len(), 3);
        assert_eq!(d.system.span_dim(), 3);
        assert_eq!(rank_range(&d.system, &mut s, 30), (4, 4));
    }
}
