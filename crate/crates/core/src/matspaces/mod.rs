//! Linear spaces of matrices of bounded and constant rank: the coordinate
//! exemplars, doubled / split / graded-algebra constructions, and exact
//! certification of constant rank.

mod certify;
mod search;
mod spec;
mod upoly;

use itertools::Itertools;
use num_traits::Zero;
use serde::Serialize;

pub use certify::{
    certify_constant_rank, line_rank_drop, odd_rank_obstruction, rank_census, CertMode,
    Certification, CertifyOptions, OddRankReport, RankCertificate, Refutation,
};
pub use search::{
    doubling_structure, signed_equivalence, support_equivalence, transport, DoublingStructure,
    Equivalence,
};
pub use spec::parse_matspace_spec;

use crate::error::{Error, Result};
use crate::exact::{rank_of, MPoly, MatRat, Rat, Sampler};

/// Names accepted by [`exemplar`].
pub const EXEMPLARS: [&str; 7] = ["B_I", "C_II", "A_I", "A_II", "A_III", "C_IV", "A_IV"];

/// Retries when a random construction fails its certification.
pub const SPLIT_RETRIES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    General,
    Symmetric,
    Skew,
}

/// `A = ⟨B_0, …, B_δ⟩ ⊂ ℂʳ⊗ℂᶜ`; a parameter point `e` gives `Σ e_i B_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixSpace {
    name: String,
    rows: usize,
    cols: usize,
    symmetry: Symmetry,
    basis: Vec<MatRat>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixSpaceReport {
    pub name: String,
    pub rows: usize,
    pub cols: usize,
    pub symmetry: Symmetry,
    pub dim: usize,
    /// entries as linear forms in `e0, e1, …`
    pub matrix: Vec<Vec<String>>,
}

impl MatrixSpace {
    pub fn new(name: impl Into<String>, symmetry: Symmetry, basis: Vec<MatRat>) -> Result<Self> {
        let first = basis
            .first()
            .ok_or_else(|| Error::Invalid("matrix space needs a basis".into()))?;
        let (rows, cols) = (first.rows(), first.cols());
        if rows == 0 || cols == 0 {
            return Err(Error::Invalid("empty matrices".into()));
        }
        for b in &basis {
            if b.rows() != rows || b.cols() != cols {
                return Err(Error::Invalid("basis matrices differ in shape".into()));
            }
            let ok = match symmetry {
                Symmetry::General => true,
                Symmetry::Symmetric => b.is_symmetric(),
                Symmetry::Skew => b.is_skew(),
            };
            if !ok {
                return Err(Error::Invalid(format!(
                    "basis matrix is not {symmetry:?}"
                )));
            }
        }
        let flat: Vec<Vec<Rat>> = basis.iter().map(|b| b.row_vecs().concat()).collect();
        if rank_of(&flat, rows * cols) != basis.len() {
            return Err(Error::Invalid("basis matrices are linearly dependent".into()));
        }
        Ok(MatrixSpace {
            name: name.into(),
            rows,
            cols,
            symmetry,
            basis,
        })
    }

    /// Builds a space whose symmetry tag is read off the basis.
    pub fn detect(name: impl Into<String>, basis: Vec<MatRat>) -> Result<Self> {
        let symmetry = if basis.iter().all(MatRat::is_skew) {
            Symmetry::Skew
        } else if basis.iter().all(MatRat::is_symmetric) {
            Symmetry::Symmetric
        } else {
            Symmetry::General
        };
        Self::new(name, symmetry, basis)
    }

    /// Space from a sign/parameter pattern: `k > 0` is `+e_{k-1}`, `k < 0`
    /// is `-e_{-k-1}`, `0` is zero.
    fn from_pattern(name: &str, symmetry: Symmetry, pattern: &[&[i8]]) -> Self {
        let rows = pattern.len();
        let cols = pattern[0].len();
        let params = pattern
            .iter()
            .flat_map(|r| r.iter())
            .map(|k| k.unsigned_abs() as usize)
            .max()
            .unwrap_or(0);
        let basis = (0..params)
            .map(|p| {
                MatRat::from_fn(rows, cols, |i, j| {
                    let k = pattern[i][j];
                    if k.unsigned_abs() as usize == p + 1 {
                        Rat::from_integer(k.signum().into())
                    } else {
                        Rat::zero()
                    }
                })
            })
            .collect();
        MatrixSpace::new(name, symmetry, basis).expect("exemplar pattern is well formed")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn basis(&self) -> &[MatRat] {
        &self.basis
    }

    /// Dimension of the space (number of parameters).
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `Σ e_i B_i`.
    pub fn at(&self, e: &[Rat]) -> MatRat {
        MatRat::combination(e, &self.basis)
    }

    pub fn rank_at(&self, e: &[Rat]) -> usize {
        self.at(e).rank()
    }

    /// Largest rank over `trials` random parameter points.
    pub fn generic_rank(&self, s: &mut Sampler, trials: usize) -> usize {
        (0..trials.max(1))
            .map(|_| self.rank_at(&s.vec(self.dim())))
            .max()
            .unwrap_or(0)
    }

    /// Entries as linear polynomials in the parameters.
    pub fn linear_entries(&self) -> Vec<Vec<MPoly>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let c: Vec<Rat> = self.basis.iter().map(|b| b[(i, j)].clone()).collect();
                        MPoly::linear(&c)
                    })
                    .collect()
            })
            .collect()
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn to_report(&self) -> MatrixSpaceReport {
        let names: Vec<String> = (0..self.dim()).map(|i| format!("e{i}")).collect();
        MatrixSpaceReport {
            name: self.name.clone(),
            rows: self.rows,
            cols: self.cols,
            symmetry: self.symmetry,
            dim: self.dim(),
            matrix: self
                .linear_entries()
                .iter()
                .map(|row| row.iter().map(|p| p.to_string_with(&names)).collect())
                .collect(),
        }
    }
}

const B_I: &[&[i8]] = &[&[1, 0], &[2, 1], &[3, 2], &[0, 3]];

const C_II: &[&[i8]] = &[&[0, 1, 2], &[-1, 0, 3], &[-2, -3, 0]];

const A_I: &[&[i8]] = &[
    &[0, 0, 0, 0, 1, 0],
    &[0, 0, 0, 0, 2, 1],
    &[0, 0, 0, 0, 3, 2],
    &[0, 0, 0, 0, 0, 3],
    &[1, 2, 3, 0, 0, 0],
    &[0, 1, 2, 3, 0, 0],
];

const A_II: &[&[i8]] = &[
    &[0, 0, 0, 0, 1, 2],
    &[0, 0, 0, -1, 0, 3],
    &[0, 0, 0, -2, -3, 0],
    &[0, -1, -2, 0, 0, 0],
    &[1, 0, -3, 0, 0, 0],
    &[2, 3, 0, 0, 0, 0],
];

const A_III: &[&[i8]] = &[
    &[0, 0, 0, 0, 0, 0, 0, 1, 2, 3],
    &[0, 0, 0, 0, 0, -1, -2, 0, 0, 4],
    &[0, 0, 0, 0, -1, 0, -3, 0, -4, 0],
    &[0, 0, 0, 0, -2, -3, 0, -4, 0, 0],
    &[0, 0, -1, -2, 0, 0, 0, 0, 0, 5],
    &[0, -1, 0, -3, 0, 0, 0, 0, -5, 0],
    &[0, -2, -3, 0, 0, 0, 0, -5, 0, 0],
    &[1, 0, 0, -4, 0, 0, -5, 0, 0, 0],
    &[2, 0, -4, 0, 0, -5, 0, 0, 0, 0],
    &[3, 4, 0, 0, 5, 0, 0, 0, 0, 0],
];

const C_IV: &[&[i8]] = &[
    &[0, 0, 0, 0, 0, 0, 0, 1, 2, 0],
    &[0, 0, 0, 0, 0, 0, 1, 2, 0, 3],
    &[0, 0, 0, 0, 0, -1, 2, 0, 3, 4],
    &[0, 0, 0, 0, 1, 2, 0, 3, 4, 0],
    &[0, 0, 0, -1, 0, 0, 3, -4, 0, 0],
    &[0, 0, 1, -2, 0, 0, 4, 0, 0, 0],
    &[0, -1, -2, 0, -3, -4, 0, 0, 0, 0],
    &[-1, -2, 0, -3, 4, 0, 0, 0, 0, 0],
    &[-2, 0, -3, -4, 0, 0, 0, 0, 0, 0],
    &[0, -3, -4, 0, 0, 0, 0, 0, 0, 0],
];

/// The coordinate examples of bounded and constant rank: `A` symmetric,
/// `B` general, `C` skew.
pub fn exemplar(name: &str) -> Result<MatrixSpace> {
    Ok(match name {
        "B_I" => MatrixSpace::from_pattern(name, Symmetry::General, B_I),
        "C_II" => MatrixSpace::from_pattern(name, Symmetry::Skew, C_II),
        "A_I" => MatrixSpace::from_pattern(name, Symmetry::Symmetric, A_I),
        "A_II" => MatrixSpace::from_pattern(name, Symmetry::Symmetric, A_II),
        "A_III" => MatrixSpace::from_pattern(name, Symmetry::Symmetric, A_III),
        "C_IV" => MatrixSpace::from_pattern(name, Symmetry::Skew, C_IV),
        "A_IV" => {
            let c = MatrixSpace::from_pattern("C_IV", Symmetry::Skew, C_IV);
            let mut d = doubled_raw(&c, Symmetry::Symmetric);
            d.name = name.into();
            d
        }
        _ => return Err(Error::UnknownSpace(name.into())),
    })
}

fn doubled_raw(b: &MatrixSpace, kind: Symmetry) -> MatrixSpace {
    let (k, l) = (b.rows, b.cols);
    let basis = b
        .basis
        .iter()
        .map(|m| {
            MatRat::from_fn(k + l, k + l, |i, j| match (i < k, j < k) {
                (true, false) => m[(i, j - k)].clone(),
                (false, true) if kind == Symmetry::Skew => -m[(j, i - k)].clone(),
                (false, true) => m[(j, i - k)].clone(),
                _ => Rat::zero(),
            })
        })
        .collect();
    MatrixSpace {
        name: String::new(),
        rows: k + l,
        cols: k + l,
        symmetry: kind,
        basis,
    }
}

/// `[[0, B], [±ᵗB, 0]]`. The basis of `B` is used as general matrices
/// whatever its own symmetry tag.
pub fn doubled(b: &MatrixSpace, kind: Symmetry) -> Result<MatrixSpace> {
    let tag = match kind {
        Symmetry::Symmetric => "sym",
        Symmetry::Skew => "skew",
        Symmetry::General => {
            return Err(Error::Invalid("doubling is symmetric or skew".into()));
        }
    };
    let mut d = doubled_raw(b, kind);
    d.name = format!("doubled-{tag}:{}", b.name);
    Ok(d)
}

/// Symmetric doubling of a random `(m−r+1)`-dimensional space of
/// `(r/2)×(m−r/2)` matrices, re-sampled until it certifies at constant
/// rank `r`.
pub fn split_type(r: usize, m: usize, s: &mut Sampler) -> Result<MatrixSpace> {
    if r == 0 || r % 2 == 1 || r > m {
        return Err(Error::Invalid(format!(
            "split type needs an even rank 0 < r <= m, got r = {r}, m = {m}"
        )));
    }
    let (k, l) = (r / 2, m - r / 2);
    let dim = m - r + 1;
    let opts = CertifyOptions::default();
    for _ in 0..SPLIT_RETRIES {
        let basis: Vec<MatRat> = (0..dim)
            .map(|_| MatRat::from_fn(k, l, |_, _| s.rat()))
            .collect();
        let Ok(b) = MatrixSpace::new("B", Symmetry::General, basis) else {
            continue;
        };
        let d = doubled_raw(&b, Symmetry::Symmetric).renamed(format!("split:{r},{m}"));
        if let Certification::Certified(_) = certify_constant_rank(&d, r, &opts, &mut s.fork())? {
            return Ok(d);
        }
    }
    Err(Error::GenericityFailure(format!(
        "no split-type space of rank {r} in size {m} after {SPLIT_RETRIES} tries"
    )))
}

/// Sign of the permutation sorting `seq` (which must have distinct entries).
fn sort_sign(seq: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `v ↦ (E ↦ v∧E)` from `Λᵏ V` to `Λᵏ⁺¹ V`, one matrix per coordinate
/// vector of `V`; rows index `Λᵏ V` and columns `Λᵏ⁺¹ V`, both in lex
/// order. When `dim V = 2k+1` the target is identified with `(Λᵏ V)*`
/// through the volume form, which makes the matrices square, symmetric for
/// even `k` and skew for odd `k`.
pub fn graded_algebra_space(m: usize, k: usize) -> Result<MatrixSpace> {
    if k == 0 || k >= m || m > 12 {
        return Err(Error::Invalid(format!(
            "graded algebra space needs 1 <= k < m <= 12, got m = {m}, k = {k}"
        )));
    }
    let src: Vec<Vec<usize>> = (0..m).combinations(k).collect();
    let name = format!("graded:{m},{k}");
    if m == 2 * k + 1 {
        let basis = (0..m)
            .map(|v| {
                MatRat::from_fn(src.len(), src.len(), |i, j| {
                    let seq: Vec<usize> = std::iter::once(v)
                        .chain(src[i].iter().copied())
                        .chain(src[j].iter().copied())
                        .collect();
                    if seq.iter().all_unique() {
                        Rat::from_integer(sort_sign(&seq).into())
                    } else {
                        Rat::zero()
                    }
                })
            })
            .collect();
        let sym = if k.is_multiple_of(2) { Symmetry::Symmetric } else { Symmetry::Skew };
        return MatrixSpace::new(name, sym, basis);
    }
    let dst: Vec<Vec<usize>> = (0..m).combinations(k + 1).collect();
    let basis = (0..m)
        .map(|v| {
            MatRat::from_fn(src.len(), dst.len(), |i, j| {
                if src[i].contains(&v) || !dst[j].contains(&v) {
                    return Rat::zero();
                }
                let rest: Vec<usize> = dst[j].iter().copied().filter(|&x| x != v).collect();
                if rest != src[i] {
                    return Rat::zero();
                }
                let seq: Vec<usize> = std::iter::once(v).chain(src[i].iter().copied()).collect();
                Rat::from_integer(sort_sign(&seq).into())
            })
        })
        .collect();
    MatrixSpace::new(name, Symmetry::General, basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn exemplar_shapes() {
        let dims = |n: &str| {
            let e = exemplar(n).unwrap();
            (e.rows(), e.cols(), e.dim(), e.symmetry())
        };
        assert_eq!(dims("B_I"), (4, 2, 3, Symmetry::General));
        assert_eq!(dims("C_II"), (3, 3, 3, Symmetry::Skew));
        assert_eq!(dims("A_I"), (6, 6, 3, Symmetry::Symmetric));
        assert_eq!(dims("A_II"), (6, 6, 3, Symmetry::Symmetric));
        assert_eq!(dims("A_III"), (10, 10, 5, Symmetry::Symmetric));
        assert_eq!(dims("C_IV"), (10, 10, 4, Symmetry::Skew));
        assert_eq!(dims("A_IV"), (20, 20, 4, Symmetry::Symmetric));
        assert!(matches!(exemplar("B_II"), Err(Error::UnknownSpace(_))));
    }

    #[test]
    fn a_one_is_literally_doubled_b_one() {
        let d = doubled(&exemplar("B_I").unwrap(), Symmetry::Symmetric).unwrap();
        assert_eq!(d.basis(), exemplar("A_I").unwrap().basis());
    }

    #[test]
    fn doubling_doubles_rank() {
        let b = exemplar("B_I").unwrap();
        let mut s = Sampler::new(3);
        for kind in [Symmetry::Symmetric, Symmetry::Skew] {
            let d = doubled(&b, kind).unwrap();
            for _ in 0..50 {
                let e = s.vec(3);
                assert_eq!(d.rank_at(&e), 2 * b.rank_at(&e));
            }
        }
        let one = MatrixSpace::new("one", Symmetry::General, vec![MatRat::identity(1)]).unwrap();
        let d = doubled(&one, Symmetry::Symmetric).unwrap();
        assert_eq!((d.rows(), d.rank_at(&[rat(3)])), (2, 2));
    }

    #[test]
    fn graded_parity_and_ranks() {
        let g = graded_algebra_space(3, 1).unwrap();
        assert_eq!((g.rows(), g.symmetry()), (3, Symmetry::Skew));
        assert_eq!(g.generic_rank(&mut Sampler::new(1), 5), 2);
        let g = graded_algebra_space(5, 2).unwrap();
        assert_eq!((g.rows(), g.dim(), g.symmetry()), (10, 5, Symmetry::Symmetric));
        assert_eq!(g.generic_rank(&mut Sampler::new(1), 5), 6);
        let g = graded_algebra_space(4, 1).unwrap();
        assert_eq!((g.rows(), g.cols()), (4, 6));
        assert_eq!(g.generic_rank(&mut Sampler::new(1), 5), 3);
        assert_eq!(graded_algebra_space(7, 3).unwrap().symmetry(), Symmetry::Skew);
    }

    #[test]
    fn split_type_dimensions() {
        let mut s = Sampler::new(11);
        let x = split_type(4, 7, &mut s).unwrap();
        assert_eq!((x.dim(), x.rows()), (4, 7));
        assert_eq!(split_type(2, 3, &mut s).unwrap().dim(), 2);
        assert!(split_type(3, 7, &mut s).is_err());
    }

    #[test]
    fn dependent_basis_is_rejected() {
        let m = MatRat::identity(2);
        assert!(MatrixSpace::new("x", Symmetry::General, vec![m.clone(), m]).is_err());
    }
}
