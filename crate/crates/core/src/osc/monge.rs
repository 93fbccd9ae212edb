//! In graph coordinates `w^μ = f^μ(t)`, a quadric with differential `dw^μ`
//! osculating to order five exists exactly when there are linear forms
//! `L^μ_ν` and constants `β^μ_{ντ}` (`ν ≤ τ`) with
//!
//! ```text
//! F₃^μ + L^μ_ν F₂^ν                                   = 0
//! F₄^μ + L^μ_ν F₃^ν + β^μ_{ντ} F₂^ν F₂^τ              = 0
//! F₅^μ + L^μ_ν F₄^ν + β^μ_{ντ} (F₂^ν F₃^τ + F₃^ν F₂^τ) = 0
//! ```
//!
//! which is the generalized Monge system with `L = −3 a ω` and
//! `β = −3 b` (doubled off the diagonal).

use serde::Serialize;

use super::{linear_syzygies, osculating_space};
use crate::catalog::ParamVariety;
use crate::error::Result;
use crate::exact::{binomial, fmt_rat_vec, monomials_of_degree, MPoly, MatRat, Rat, Sampler};
use crate::jets::jet_tower;

/// Points of `X` on which recovered quadrics are checked to vanish.
pub const MONGE_SAMPLE_POINTS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MongeVerdict {
    Holds,
    FailsAtOrder(usize),
    PreconditionFailed(String),
}

impl MongeVerdict {
    pub fn label(&self) -> String {
        match self {
            MongeVerdict::Holds => "holds".into(),
            MongeVerdict::FailsAtOrder(k) => format!("fails-at-order-{k}"),
            MongeVerdict::PreconditionFailed(_) => "precondition-failed".into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MongeSolution {
    pub variety: String,
    pub n: usize,
    pub a: usize,
    /// `a₂`, the dimension of `|III|`.
    pub third_ff_dim: usize,
    pub syzygy_dim: usize,
    /// Joint solvability through orders 3, 4 and 5.
    pub solvable: [bool; 3],
    /// `L^μ_ν` as coefficient vectors, indexed `[μ][ν]`, from the deepest
    /// solvable system.
    pub linear: Option<Vec<Vec<Vec<String>>>>,
    /// `b^μ_{ντ}`, symmetric in `ν, τ`.
    pub b: Option<Vec<Vec<Vec<String>>>>,
    /// Affine dimensions of quadrics osculating to orders 3, 4, 5.
    pub osc_dims: [usize; 3],
    /// `a + C(a+1, 2)` and `a`: the affine bounds at orders 3 and 4.
    pub bounds: [usize; 2],
    /// Whether equality in each bound matches solvability of the system.
    pub consistent: [bool; 2],
    /// Whether the order-5 osculating quadrics vanish at sampled points of
    /// `X`; only evaluated when the verdict holds.
    pub vanish_on_samples: Option<bool>,
    pub verdict: MongeVerdict,
}

impl MongeSolution {
    /// Projective dimension of quadrics osculating to order four.
    pub fn order4_projective_dim(&self) -> i64 {
        self.osc_dims[1] as i64 - 1
    }
}

/// Columns of the system up to `order`, one polynomial per unknown per
/// order, followed by the right-hand sides `−F_k^μ`.
fn build_system(f: &[Vec<MPoly>], n: usize, a: usize, order: usize) -> (MatRat, MatRat) {
    let pairs: Vec<(usize, usize)> = (0..a).flat_map(|v| (v..a).map(move |t| (v, t))).collect();
    let unknowns = a * n + pairs.len();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Vec<Rat>> = Vec::new();
    for k in 3..=order {
        let mut cols: Vec<MPoly> = Vec::with_capacity(unknowns);
        for nu in 0..a {
            for i in 0..n {
                cols.push(&MPoly::var(n, i) * &f[k - 1][nu]);
            }
        }
        for &(nu, tau) in &pairs {
            cols.push(match k {
                3 => MPoly::zero(n),
                4 => &f[2][nu] * &f[2][tau],
                _ => &(&f[2][nu] * &f[3][tau]) + &(&f[3][nu] * &f[2][tau]),
            });
        }
        for m in monomials_of_degree(n, k) {
            rows.push(cols.iter().map(|c| c.coeff(&m)).collect());
            rhs.push((0..a).map(|mu| -f[k][mu].coeff(&m)).collect());
        }
    }
    (MatRat::from_rows(unknowns, rows), MatRat::from_rows(a, rhs))
}

/// Evaluates the generalized Monge system for quadrics at `p`.
pub fn monge_check(x: &ParamVariety, p: &[Rat], s: &mut Sampler) -> Result<MongeSolution> {
    let tower = jet_tower(x, p, 5)?;
    let n = x.dim();
    let a = x.codim();
    let third_ff_dim = tower.filtration().get(2).copied().unwrap_or(0);
    let syzygy_dim = linear_syzygies(&tower.second_ff()).syzygy_dim;
    // f[k][μ] = F_k^μ
    let f: Vec<Vec<MPoly>> = (0..=5).map(|k| tower.component(k)).collect();

    let mut solvable = [false; 3];
    let mut solution: Option<MatRat> = None;
    for (idx, order) in (3..=5).enumerate() {
        let (m, rhs) = build_system(&f, n, a, order);
        if let Some(sol) = m.solve_matrix(&rhs) {
            solvable[idx] = true;
            solution = Some(sol);
        } else {
            break;
        }
    }

    let mut osc_dims = [0; 3];
    for (slot, k) in osc_dims.iter_mut().zip(3..) {
        *slot = osculating_space(x, p, 2, k)?.dim;
    }
    let bounds = [a + binomial(a + 1, 2), a];
    let consistent = [
        (osc_dims[0] == bounds[0]) == solvable[0],
        (osc_dims[1] == bounds[1]) == (solvable[0] && solvable[1]),
    ];

    let verdict = if third_ff_dim != 0 {
        MongeVerdict::PreconditionFailed(format!("III ≠ 0 (dim {third_ff_dim})"))
    } else if syzygy_dim != 0 {
        MongeVerdict::PreconditionFailed(format!("|II| has {syzygy_dim} linear syzygies"))
    } else if let Some(k) = solvable.iter().position(|&ok| !ok) {
        MongeVerdict::FailsAtOrder(k + 3)
    } else {
        MongeVerdict::Holds
    };

    let vanish_on_samples = if verdict == MongeVerdict::Holds {
        let forms = osculating_space(x, p, 2, 5)?.basis;
        let ok = (0..MONGE_SAMPLE_POINTS).all(|_| {
            let pt = x.lift_at(&s.vec(n));
            forms.iter().all(|q| q.eval(&pt) == Rat::from_integer(0.into()))
        });
        Some(ok)
    } else {
        None
    };

    let (linear, b) = match &solution {
        Some(sol) => split_solution(sol, n, a),
        None => (None, None),
    };
    Ok(MongeSolution {
        variety: x.name().to_string(),
        n,
        a,
        third_ff_dim,
        syzygy_dim,
        solvable,
        linear,
        b,
        osc_dims,
        bounds,
        consistent,
        vanish_on_samples,
        verdict,
    })
}

type Tensor3 = Vec<Vec<Vec<String>>>;

fn split_solution(sol: &MatRat, n: usize, a: usize) -> (Option<Tensor3>, Option<Tensor3>) {
    let linear = (0..a)
        .map(|mu| {
            (0..a)
                .map(|nu| fmt_rat_vec(&(0..n).map(|i| sol[(nu * n + i, mu)].clone()).collect::<Vec<_>>()))
                .collect()
        })
        .collect();
    let mut index = a * n;
    let mut b = vec![vec![vec![Rat::from_integer(0.into()); a]; a]; a];
    for nu in 0..a {
        for tau in nu..a {
            for (mu, bm) in b.iter_mut().enumerate() {
                let beta = sol[(index, mu)].clone();
                let v = if nu == tau { beta } else { beta / Rat::from_integer(2.into()) };
                bm[nu][tau] = v.clone();
                bm[tau][nu] = v;
            }
            index += 1;
        }
    }
    let b = b.iter().map(|bm| bm.iter().map(|r| fmt_rat_vec(r)).collect()).collect();
    (Some(linear), Some(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{graph_variety, veronese};

    fn random_form(n: usize, d: usize, s: &mut Sampler) -> MPoly {
        let mut p = MPoly::zero(n);
        for m in monomials_of_degree(n, d) {
            p.add_term(m, s.rat());
        }
        p
    }

    fn check(x: &ParamVariety, seed: u64) -> MongeSolution {
        let mut s = Sampler::new(seed);
        let p = x.random_general_point(&mut s).unwrap();
        monge_check(x, &p, &mut s).unwrap()
    }

    #[test]
    fn graphs_of_quadrics_satisfy_monge() {
        let mut s = Sampler::new(1);
        let x = graph_variety(4, (0..2).map(|_| random_form(4, 2, &mut s)).collect()).unwrap();
        let m = check(&x, 2);
        assert_eq!(m.verdict, MongeVerdict::Holds);
        assert_eq!(m.order4_projective_dim(), 1);
        assert_eq!(m.vanish_on_samples, Some(true));
        assert_eq!(m.consistent, [true, true]);
    }

    #[test]
    fn conic_satisfies_monge() {
        let m = check(&veronese(1, 2).unwrap(), 3);
        assert_eq!(m.verdict, MongeVerdict::Holds);
        assert_eq!(m.osc_dims[1], 1);
    }

    #[test]
    fn cubic_hypersurface_fails() {
        let mut s = Sampler::new(4);
        let x = graph_variety(3, vec![random_form(3, 3, &mut s)]).unwrap();
        let m = check(&x, 5);
        assert_eq!(m.verdict, MongeVerdict::FailsAtOrder(3));
        assert_eq!(m.osc_dims[1], 0);
        assert_eq!(m.consistent, [true, true]);
    }
}
