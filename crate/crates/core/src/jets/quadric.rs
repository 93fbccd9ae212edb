use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{monomials_of_degree, rat, MPoly, MatRat, Rat, Sampler};

/// Random combinations tried by [`QuadricSystem::generic_rank`].
pub const DEFAULT_RANK_TRIALS: usize = 20;

/// Ordered list of symmetric bilinear forms on an `n`-dimensional space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricSystem {
    n: usize,
    mats: Vec<MatRat>,
    labels: Vec<String>,
}

/// Hessian matrix of a homogeneous quadratic polynomial.
pub fn hessian(q: &MPoly) -> MatRat {
    let n = q.nvars();
    MatRat::from_fn(n, n, |i, j| {
        let mut m = vec![0u32; n];
        m[i] += 1;
        m[j] += 1;
        let c = q.coeff(&m);
        if i == j {
            c * rat(2)
        } else {
            c
        }
    })
}

/// Quadratic polynomial `½ xᵀ H x`, inverse to [`hessian`].
pub fn quadratic_form(h: &MatRat) -> MPoly {
    let n = h.rows();
    let mut p = MPoly::zero(n);
    for i in 0..n {
        for j in i..n {
            let mut m = vec![0u32; n];
            m[i] += 1;
            m[j] += 1;
            let c = if i == j {
                &h[(i, i)] / rat(2)
            } else {
                h[(i, j)].clone()
            };
            p.add_term(m, c);
        }
    }
    p
}

/// Coordinates of a homogeneous polynomial of degree `d` in the monomial
/// basis of [`monomials_of_degree`].
pub fn form_coordinates(p: &MPoly, d: usize) -> Vec<Rat> {
    monomials_of_degree(p.nvars(), d)
        .iter()
        .map(|m| p.coeff(m))
        .collect()
}

/// Polynomial with the given coordinates in the degree-`d` monomial basis.
pub fn form_from_coordinates(nvars: usize, d: usize, coords: &[Rat]) -> MPoly {
    let mut p = MPoly::zero(nvars);
    for (m, c) in monomials_of_degree(nvars, d).into_iter().zip(coords) {
        p.add_term(m, c.clone());
    }
    p
}

/// A basis of the span of homogeneous forms of degree `d`.
pub fn independent_forms(forms: &[MPoly], nvars: usize, d: usize) -> Vec<MPoly> {
    if forms.is_empty() {
        return Vec::new();
    }
    let cols = monomials_of_degree(nvars, d).len();
    let m = MatRat::from_rows(cols, forms.iter().map(|f| form_coordinates(f, d)).collect());
    m.row_space_basis()
        .iter()
        .map(|c| form_from_coordinates(nvars, d, c))
        .collect()
}

impl QuadricSystem {
    pub fn new(n: usize, mats: Vec<MatRat>) -> Result<Self> {
        let labels = (0..mats.len()).map(|i| format!("q{}", i + 1)).collect();
        Self::with_labels(n, mats, labels)
    }

    pub fn with_labels(n: usize, mats: Vec<MatRat>, labels: Vec<String>) -> Result<Self> {
        if labels.len() != mats.len() {
            return Err(Error::Invalid("label count mismatch".into()));
        }
        for m in &mats {
            if m.rows() != n || m.cols() != n {
                return Err(Error::Invalid(format!(
                    "quadric of shape {}×{} in a system on dimension {n}",
                    m.rows(),
                    m.cols()
                )));
            }
            if !m.is_symmetric() {
                return Err(Error::Invalid("quadric matrix is not symmetric".into()));
            }
        }
        Ok(QuadricSystem { n, mats, labels })
    }

    /// System of Hessians of quadratic forms.
    pub fn from_forms(n: usize, forms: &[MPoly]) -> Result<Self> {
        Self::new(n, forms.iter().map(hessian).collect())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn mats(&self) -> &[MatRat] {
        &self.mats
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn forms(&self) -> Vec<MPoly> {
        self.mats.iter().map(quadratic_form).collect()
    }

    /// Dimension of the linear span of the system.
    pub fn span_dim(&self) -> usize {
        self.flattened().rank()
    }

    fn flattened(&self) -> MatRat {
        let nn = self.n * self.n;
        MatRat::from_rows(
            nn,
            self.mats
                .iter()
                .map(|m| (0..nn).map(|k| m[(k / self.n, k % self.n)].clone()).collect())
                .collect(),
        )
    }

    /// Subsystem of linearly independent members spanning the same space.
    pub fn independent(&self) -> QuadricSystem {
        let idx = self.flattened().independent_rows();
        QuadricSystem {
            n: self.n,
            mats: idx.iter().map(|&i| self.mats[i].clone()).collect(),
            labels: idx.iter().map(|&i| self.labels[i].clone()).collect(),
        }
    }

    pub fn combination(&self, coeffs: &[Rat]) -> MatRat {
        if self.mats.is_empty() {
            return MatRat::zeros(self.n, self.n);
        }
        MatRat::combination(coeffs, &self.mats)
    }

    /// `{v : q(v, ·) = 0 for every q}`.
    pub fn singloc(&self) -> Vec<Vec<Rat>> {
        if self.mats.is_empty() {
            return MatRat::identity(self.n).row_vecs();
        }
        let refs: Vec<&MatRat> = self.mats.iter().collect();
        MatRat::vstack(&refs).kernel_basis()
    }

    /// Maximum rank of a random combination over `trials` draws.
    pub fn generic_rank(&self, s: &mut Sampler, trials: usize) -> usize {
        if self.mats.is_empty() {
            return 0;
        }
        (0..trials.max(1))
            .map(|_| self.combination(&s.vec(self.len())).rank())
            .max()
            .unwrap_or(0)
    }

    /// `(q_μ(v, w))_μ`.
    pub fn eval(&self, v: &[Rat], w: &[Rat]) -> Vec<Rat> {
        self.mats.iter().map(|m| m.bilinear(v, w)).collect()
    }

    /// Matrix of `w ↦ (q_μ(v, w))_μ`; its image is `II_v(T)`.
    pub fn contract(&self, v: &[Rat]) -> MatRat {
        let rows: Vec<Vec<Rat>> = self.mats.iter().map(|m| m.vec_mul(v)).collect();
        MatRat::from_rows(self.n, rows)
    }

    /// Combinations `c` with `Σ c_μ q_μ(v, ·) = 0`, as coefficient vectors.
    pub fn annihilator(&self, v: &[Rat]) -> Vec<Vec<Rat>> {
        self.contract(v).transpose().kernel_basis()
    }

    /// System spanned by the given combinations of members.
    pub fn subsystem(&self, combos: &[Vec<Rat>]) -> QuadricSystem {
        QuadricSystem {
            n: self.n,
            mats: combos.iter().map(|c| self.combination(c)).collect(),
            labels: (0..combos.len()).map(|i| format!("c{}", i + 1)).collect(),
        }
    }

    /// Restriction to the subspace spanned by `basis` (as rows).
    pub fn restrict(&self, basis: &[Vec<Rat>]) -> QuadricSystem {
        let k = basis.len();
        let mats = self
            .mats
            .iter()
            .map(|m| MatRat::from_fn(k, k, |i, j| m.bilinear(&basis[i], &basis[j])))
            .collect();
        QuadricSystem {
            n: k,
            mats,
            labels: self.labels.clone(),
        }
    }

    /// Random vector maximizing `dim II_v(T)` over `trials` draws; ties go
    /// to the first draw. Returns the vector and that dimension.
    pub fn generic_vector(&self, s: &mut Sampler, trials: usize) -> (Vec<Rat>, usize) {
        let mut best: Option<(Vec<Rat>, usize)> = None;
        for _ in 0..trials.max(1) {
            let v = s.nonzero_vec(self.n);
            let r = self.contract(&v).rank();
            if best.as_ref().is_none_or(|(_, b)| r > *b) {
                best = Some((v, r));
            }
        }
        best.expect("at least one trial")
    }

    pub fn to_report(&self) -> QuadricReport {
        QuadricReport {
            n: self.n,
            quadrics: self
                .mats
                .iter()
                .zip(&self.labels)
                .map(|(m, l)| (l.clone(), quadratic_form(m).to_string()))
                .collect(),
        }
    }

    /// Whether every member vanishes.
    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(MatRat::is_zero)
    }
}

/// Serializable rendering of a quadric system.
#[derive(Clone, Debug, Serialize)]
pub struct QuadricReport {
    pub n: usize,
    pub quadrics: Vec<(String, String)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hessian_round_trip() {
        let q = &(&MPoly::var(2, 0) * &MPoly::var(2, 1)) + &MPoly::var(2, 0).pow(2);
        let h = hessian(&q);
        assert_eq!(h, MatRat::from_i64(&[&[2, 1], &[1, 0]]));
        assert_eq!(quadratic_form(&h), q);
    }

    #[test]
    fn singloc_of_rank_two_quadric() {
        let s = QuadricSystem::new(3, vec![MatRat::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]])])
            .unwrap();
        assert_eq!(s.singloc().len(), 1);
        assert_eq!(s.generic_rank(&mut Sampler::new(1), 5), 2);
    }

    #[test]
    fn rejects_nonsymmetric() {
        assert!(QuadricSystem::new(2, vec![MatRat::from_i64(&[&[0, 1], &[0, 0]])]).is_err());
    }

    #[test]
    fn annihilator_and_contract() {
        // x², y² on C²: II_v(T) is everything for general v
        let s = QuadricSystem::new(
            2,
            vec![
                MatRat::from_i64(&[&[1, 0], &[0, 0]]),
                MatRat::from_i64(&[&[0, 0], &[0, 1]]),
            ],
        )
        .unwrap();
        let v = vec![rat(1), rat(0)];
        assert_eq!(s.contract(&v).rank(), 1);
        assert_eq!(s.annihilator(&v), vec![vec![rat(0), rat(1)]]);
        let (_, r) = s.generic_vector(&mut Sampler::new(2), 10);
        assert_eq!(r, 2);
    }
}
