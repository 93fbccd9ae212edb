use serde::Serialize;

use crate::exact::{monomials_of_degree, rank_of, MPoly, MatRat, Rat, Sampler};
use crate::jets::{quadratic_form, QuadricSystem, DEFAULT_RANK_TRIALS};

/// Seed of the random combinations probing ranks in a witness subsystem.
const WITNESS_RANK_SEED: u64 = 0x5157;

/// A relation `Σ l_k Q_k = 0` with independent `l_k` and independent `Q_k`.
#[derive(Clone, Debug)]
pub struct SyzygyWitness {
    pub linear: Vec<MPoly>,
    pub quadrics: Vec<MPoly>,
    /// `2(p − 1)` for `p` pairs.
    pub rank_bound: usize,
    /// Largest rank seen among the `Q_k` and random combinations of them.
    pub max_rank: usize,
}

impl SyzygyWitness {
    pub fn pairs(&self) -> usize {
        self.linear.len()
    }

    pub fn bound_holds(&self) -> bool {
        self.max_rank <= self.rank_bound
    }
}

#[derive(Clone, Debug)]
pub struct SyzygyReport {
    pub n: usize,
    /// Dimension of the span of the system.
    pub system_dim: usize,
    /// `dim A^{[1]}`.
    pub syzygy_dim: usize,
    pub witness: Option<SyzygyWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SyzygyJson {
    pub n: usize,
    pub system_dim: usize,
    pub syzygy_dim: usize,
    pub witness: Option<WitnessJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessJson {
    pub pairs: Vec<(String, String)>,
    pub rank_bound: usize,
    pub max_rank: usize,
    pub bound_holds: bool,
}

impl SyzygyReport {
    pub fn to_json(&self) -> SyzygyJson {
        SyzygyJson {
            n: self.n,
            system_dim: self.system_dim,
            syzygy_dim: self.syzygy_dim,
            witness: self.witness.as_ref().map(|w| WitnessJson {
                pairs: w.linear.iter().zip(&w.quadrics).map(|(l, q)| (l.to_string(), q.to_string())).collect(),
                rank_bound: w.rank_bound,
                max_rank: w.max_rank,
                bound_holds: w.bound_holds(),
            }),
        }
    }
}

/// Kernel of the symmetrization `T* ⊗ A → S³T*`, `l ⊗ Q ↦ l·Q`.
pub fn linear_syzygies(a: &QuadricSystem) -> SyzygyReport {
    let a = a.independent();
    let n = a.dim();
    let p = a.len();
    let forms = a.forms();
    let cubics = monomials_of_degree(n, 3);
    // column (j, i) holds x_i · Q_j
    let products: Vec<MPoly> = forms
        .iter()
        .flat_map(|q| (0..n).map(move |i| q * &MPoly::var(n, i)))
        .collect();
    let m = MatRat::from_fn(cubics.len(), products.len(), |r, c| products[c].coeff(&cubics[r]));
    let kernel = m.kernel_basis();
    let witness = kernel.first().map(|k| normalize_witness(&a, k));
    SyzygyReport { n, system_dim: p, syzygy_dim: kernel.len(), witness }
}

/// Rewrites `Σ_j l_j q_j` over a basis `λ_k` of the span of the `l_j`.
fn normalize_witness(a: &QuadricSystem, k: &[Rat]) -> SyzygyWitness {
    let n = a.dim();
    let p = a.len();
    let ls: Vec<Vec<Rat>> = (0..p).map(|j| k[j * n..(j + 1) * n].to_vec()).collect();
    // λ = a basis of span(l_j); l_j = Σ_k c_{jk} λ_k
    let lambdas = MatRat::from_rows(n, ls.clone()).row_space_basis();
    let lam_t = MatRat::from_fn(n, lambdas.len(), |i, c| lambdas[c][i].clone());
    let coeffs: Vec<Vec<Rat>> = ls
        .iter()
        .map(|l| lam_t.solve(l).expect("l_j lies in the span of the basis"))
        .collect();
    let quads: Vec<MatRat> = (0..lambdas.len())
        .map(|c| {
            let cs: Vec<Rat> = (0..p).map(|j| coeffs[j][c].clone()).collect();
            a.combination(&cs)
        })
        .collect();
    debug_assert_eq!(
        rank_of(&quads.iter().map(|q| q.row_vecs().concat()).collect::<Vec<_>>(), n * n),
        quads.len()
    );
    let sub = QuadricSystem::new(n, quads.clone()).expect("combinations are symmetric");
    let mut s = Sampler::new(WITNESS_RANK_SEED);
    let max_rank = quads
        .iter()
        .map(MatRat::rank)
        .chain(std::iter::once(sub.generic_rank(&mut s, DEFAULT_RANK_TRIALS)))
        .max()
        .unwrap_or(0);
    SyzygyWitness {
        linear: lambdas.iter().map(|l| MPoly::linear(l)).collect(),
        quadrics: quads.iter().map(quadratic_form).collect(),
        rank_bound: 2 * (lambdas.len().saturating_sub(1)),
        max_rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::segre;
    use crate::jets::second_ff_random;

    #[test]
    fn segre_has_a_syzygy_obeying_the_rank_bound() {
        let x = segre(&[2, 2]).unwrap();
        let a = second_ff_random(&x, &mut Sampler::new(1)).unwrap();
        let r = linear_syzygies(&a);
        assert!(r.syzygy_dim > 0);
        let w = r.witness.unwrap();
        assert!(w.bound_holds(), "{} > {}", w.max_rank, w.rank_bound);
        let sum = w.linear.iter().zip(&w.quadrics).fold(MPoly::zero(4), |acc, (l, q)| &acc + &(l * q));
        assert!(sum.is_zero());
    }

    #[test]
    fn generic_pencils_and_single_quadrics_have_none() {
        let mut s = Sampler::new(2);
        for _ in 0..10 {
            let mats = (0..2)
                .map(|_| {
                    let b = MatRat::from_fn(5, 5, |_, _| s.rat());
                    b.add(&b.transpose())
                })
                .collect();
            assert_eq!(linear_syzygies(&QuadricSystem::new(5, mats).unwrap()).syzygy_dim, 0);
        }
        let one = QuadricSystem::new(3, vec![MatRat::identity(3)]).unwrap();
        assert_eq!(linear_syzygies(&one).syzygy_dim, 0);
    }
}
