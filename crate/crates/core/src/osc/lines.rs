use num_traits::Zero;
use serde::Serialize;

use super::{osculating_space, MAX_OSC_ORDER};
use crate::catalog::ParamVariety;
use crate::error::{Error, Result};
use crate::exact::{binomial, complement, monomials_of_degree, rank_of, MPoly, Monomial, Rat};
use crate::jets::{jet_tower, MAX_ORDER};

fn check_order(maxk: usize) -> Result<()> {
    if !(2..=MAX_ORDER).contains(&maxk) {
        return Err(Error::Invalid(format!("order must be in 2..={MAX_ORDER}")));
    }
    Ok(())
}

/// Largest `k ≤ maxk` with `F_j(v, …, v) = 0` for `2 ≤ j ≤ k`; `1` when
/// `II(v, v) ≠ 0`. `v` is a source (chart) vector.
pub fn line_osculation_order(x: &ParamVariety, p: &[Rat], v: &[Rat], maxk: usize) -> Result<usize> {
    check_order(maxk)?;
    if v.len() != x.dim() || v.iter().all(Zero::is_zero) {
        return Err(Error::Invalid("direction must be a nonzero vector of the chart".into()));
    }
    let tower = jet_tower(x, p, maxk)?;
    let w = tower.tangent_from_source(v);
    for k in 2..=maxk {
        if tower.component(k).iter().any(|f| !f.eval(&w).is_zero()) {
            return Ok(k - 1);
        }
    }
    Ok(maxk)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Containment {
    Contained,
    NotContained,
    Undecidable,
}

/// Whether the tangent line through `φ̂(p)` in direction `dφ(v)` lies in
/// `X`, tested against every quadric containing `X`. Only varieties known to
/// be cut out by quadrics get a verdict.
pub fn line_contained(x: &ParamVariety, p: &[Rat], v: &[Rat]) -> Result<Containment> {
    if v.len() != x.dim() || v.iter().all(Zero::is_zero) {
        return Err(Error::Invalid("direction must be a nonzero vector of the chart".into()));
    }
    let order = 2 * x.max_degree() + 1;
    if !x.quadric_cut() || order > MAX_OSC_ORDER {
        return Ok(Containment::Undecidable);
    }
    let quadrics = osculating_space(x, p, 2, order)?.basis;
    let base = x.lift_at(p);
    let partials = x.lift_partials_at(p);
    let dir: Vec<Rat> = (0..base.len())
        .map(|i| v.iter().zip(&partials).map(|(c, d)| c * &d[i]).sum())
        .collect();
    // a quadric restricted to the line is determined by three values
    let contained = (0..3i64).all(|t| {
        let t = Rat::from_integer(t.into());
        let pt: Vec<Rat> = base.iter().zip(&dir).map(|(b, d)| b + &t * d).collect();
        quadrics.iter().all(|q| q.eval(&pt).is_zero())
    });
    Ok(if contained { Containment::Contained } else { Containment::NotContained })
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelRank {
    pub level: usize,
    pub rows: usize,
    pub rank_increment: usize,
    pub maximal: bool,
}

/// Evaluation of the maximal rank condition for a candidate tangent
/// `k`-plane `L`.
#[derive(Clone, Debug, Serialize)]
pub struct MaximalRankReport {
    pub n: usize,
    pub a: usize,
    pub k: usize,
    pub m: usize,
    /// Largest `j ≤ m` with `F_i|S^i T_L = 0` for all `i ≤ j`.
    pub osculation_order: usize,
    pub levels: Vec<LevelRank>,
    pub maximal_through: bool,
    /// `k (n − k)`.
    pub target_dim: usize,
    pub filled_dim: usize,
    /// `a [C(k+m−1, m−1) − k − 1] ≥ k (n − k)`.
    pub inequality_holds: bool,
}

/// `∂^{|I|} g / ∂s_I` from the monomial coefficients of `g`.
fn derivative(g: &MPoly, idx: &[usize], nvars: usize) -> Rat {
    let mut m: Monomial = vec![0; nvars];
    for &i in idx {
        m[i] += 1;
    }
    let mut c = g.coeff(&m);
    for &e in &m {
        for j in 2..=e {
            c *= Rat::from_integer(j.into());
        }
    }
    c
}

/// Ranks of the maps `R_j`, `2 ≤ j ≤ m − 1`, for `L` spanned by the source
/// vectors `l`.
pub fn maximal_rank_report(x: &ParamVariety, p: &[Rat], l: &[Vec<Rat>], m: usize) -> Result<MaximalRankReport> {
    check_order(m)?;
    let n = x.dim();
    let a = x.codim();
    if l.is_empty() || l.iter().any(|v| v.len() != n) {
        return Err(Error::Invalid("L needs at least one chart vector".into()));
    }
    let tower = jet_tower(x, p, m)?;
    let lw: Vec<Vec<Rat>> = l.iter().map(|v| tower.tangent_from_source(v)).collect();
    let k = lw.len();
    if rank_of(&lw, n) != k {
        return Err(Error::Invalid("vectors spanning L are dependent".into()));
    }
    // adapted basis: L first, then a complement
    let mut basis = lw.clone();
    basis.extend(complement(&lw, n));
    let subs: Vec<MPoly> = (0..n)
        .map(|i| MPoly::linear(&basis.iter().map(|b| b[i].clone()).collect::<Vec<_>>()))
        .collect();
    let g: Vec<MPoly> = tower.graph().iter().map(|f| f.compose(&subs)).collect();

    let mut osculation_order = m;
    for j in 2..=m {
        let vanish = monomials_of_degree(k, j).iter().all(|mk| {
            let mut full = mk.clone();
            full.resize(n, 0);
            g.iter().all(|f| f.coeff(&full).is_zero())
        });
        if !vanish {
            osculation_order = j - 1;
            break;
        }
    }

    let target_dim = k * (n - k);
    let mut stacked: Vec<Vec<Rat>> = Vec::new();
    let mut prev = 0;
    let mut levels = Vec::new();
    for j in 2..m {
        let multisets = multisets(k, j);
        let mut rows = Vec::new();
        for f in &g {
            for ms in &multisets {
                let mut row = Vec::with_capacity(target_dim);
                for sigma in k..n {
                    for eta in 0..k {
                        let mult = ms.iter().filter(|&&x| x == eta).count();
                        if mult == 0 {
                            row.push(Rat::zero());
                            continue;
                        }
                        let mut idx = ms.clone();
                        let pos = idx.iter().position(|&x| x == eta).expect("η occurs");
                        idx[pos] = sigma;
                        row.push(Rat::from_integer(mult.into()) * derivative(f, &idx, n));
                    }
                }
                rows.push(row);
            }
        }
        let count = rows.len();
        stacked.extend(rows);
        let rank = if target_dim == 0 { 0 } else { rank_of(&stacked, target_dim) };
        let inc = rank - prev;
        levels.push(LevelRank {
            level: j,
            rows: count,
            rank_increment: inc,
            maximal: inc == count.min(target_dim - prev),
        });
        prev = rank;
    }
    let lhs = a as i64 * (binomial(k + m - 1, m - 1) as i64 - k as i64 - 1);
    Ok(MaximalRankReport {
        n,
        a,
        k,
        m,
        osculation_order,
        maximal_through: levels.iter().all(|l| l.maximal),
        levels,
        target_dim,
        filled_dim: prev,
        inequality_holds: lhs >= target_dim as i64,
    })
}

/// Nondecreasing index sequences of length `j` from `0..k`.
fn multisets(k: usize, j: usize) -> Vec<Vec<usize>> {
    monomials_of_degree(k, j)
        .into_iter()
        .map(|m| m.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{graph_variety, segre, veronese};
    use crate::exact::{rat, Sampler};

    fn ruling_setup() -> (ParamVariety, Vec<Rat>, Vec<Rat>) {
        // segre(1,1) chart (x, y) ↦ (x, y, xy): lines x = const are rulings
        (segre(&[1, 1]).unwrap(), vec![rat(2), rat(3)], vec![rat(0), rat(1)])
    }

    #[test]
    fn ruling_of_the_quadric_surface() {
        let (x, p, v) = ruling_setup();
        assert_eq!(line_contained(&x, &p, &v).unwrap(), Containment::Contained);
        assert_eq!(line_osculation_order(&x, &p, &v, 6).unwrap(), 6);
        let r = maximal_rank_report(&x, &p, &[v], 3).unwrap();
        assert!(r.inequality_holds);
        assert!(r.maximal_through);
        assert_eq!(r.osculation_order, 3);
    }

    #[test]
    fn generic_direction_on_the_veronese_surface() {
        let x = veronese(2, 2).unwrap();
        let mut s = Sampler::new(1);
        let p = x.random_general_point(&mut s).unwrap();
        let v = s.nonzero_vec(2);
        assert_eq!(line_osculation_order(&x, &p, &v, 4).unwrap(), 1);
        assert_eq!(line_contained(&x, &p, &v).unwrap(), Containment::NotContained);
    }

    #[test]
    fn asymptotic_directions_of_a_surface() {
        // z = x² − y² + x³: at the origin the asymptotic directions are x = ±y
        let f = crate::exact::parse_poly("x1^2 - x2^2 + x1^3", 2).unwrap();
        let x = graph_variety(2, vec![f]).unwrap();
        let p = vec![rat(0), rat(0)];
        assert!(line_osculation_order(&x, &p, &[rat(1), rat(1)], 4).unwrap() >= 2);
        assert_eq!(line_contained(&x, &p, &[rat(1), rat(1)]).unwrap(), Containment::Undecidable);
    }

    #[test]
    fn contained_line_on_segre_p1_p2() {
        let x = segre(&[1, 2]).unwrap();
        let mut s = Sampler::new(2);
        let p = x.random_general_point(&mut s).unwrap();
        // moving only the P² factor keeps the P¹ point fixed: a contained plane
        let line = vec![rat(0), rat(1), rat(0)];
        assert_eq!(line_contained(&x, &p, &line).unwrap(), Containment::Contained);
        let r = maximal_rank_report(&x, &p, &[line], 4).unwrap();
        assert_eq!(r.osculation_order, 4);
        assert_eq!(r.levels.len(), 2);
    }
}
