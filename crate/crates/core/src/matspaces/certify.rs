use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::Zero;
use serde::Serialize;

use super::upoly;
use super::{MatrixSpace, Symmetry};
use crate::error::{Error, Result};
use crate::exact::{binomial, fmt_rat_vec, poly_det, rat, MPoly, MatRat, Rat, Sampler};

/// `log2` of the per-trial sample range divided by the minor degree.
const RANGE_BITS: u32 = 41;

/// Random `r×r` minor combinations tried on a line before exhaustive search.
const LINE_COMBINATIONS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CertMode {
    Randomized,
    Symbolic,
}

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub mode: CertMode,
    /// random parameter points
    pub trials: usize,
    /// random lines checked for a rank drop
    pub pencils: usize,
    /// largest number of minors expanded symbolically
    pub minor_budget: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            mode: CertMode::Randomized,
            trials: 20,
            pencils: 3,
            minor_budget: 100_000,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RankCertificate {
    pub space: String,
    pub claimed_rank: usize,
    pub mode: CertMode,
    /// parameter point of rank exactly `claimed_rank`
    pub witness: Vec<String>,
    pub trials: usize,
    /// samples are integers in `[-sample_bound, sample_bound]`
    pub sample_bound: String,
    /// `log2` of an upper bound on the probability that some
    /// `(r+1)`-minor is nonzero although every trial had rank `r`; absent
    /// in symbolic mode, where the minors are expanded
    pub failure_bound_log2: Option<i64>,
    pub minors_expanded: usize,
    /// random lines on which the gcd of the `r×r` minors is constant
    pub lines_without_drop: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Refutation {
    /// a parameter point whose rank differs from the claim
    Point { point: Vec<String>, rank: usize },
    /// the rank drops on `base + t·direction` at the roots of
    /// `drop_polynomial` (coefficients low to high; empty means the whole
    /// line drops)
    Line {
        base: Vec<String>,
        direction: Vec<String>,
        drop_polynomial: Vec<String>,
    },
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Certification {
    Certified(RankCertificate),
    Refuted(Refutation),
}

impl Certification {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certification::Certified(_))
    }
}

fn big_vec(s: &mut Sampler, n: usize, bound: i64) -> Vec<Rat> {
    loop {
        let v: Vec<i64> = (0..n).map(|_| s.int_in(-bound, bound)).collect();
        if v.iter().any(|&x| x != 0) {
            return v.into_iter().map(rat).collect();
        }
    }
}

/// `det(A0 + t A1)` as a polynomial in `t`.
fn pencil_det(a0: &MatRat, a1: &MatRat) -> Vec<Rat> {
    let n = a0.rows();
    let xs: Vec<Rat> = (0..=n as i64).map(rat).collect();
    let ys: Vec<Rat> = xs.iter().map(|t| a0.add(&a1.scale(t)).det()).collect();
    upoly::interpolate(&xs, &ys)
}

fn minor_count(rows: usize, cols: usize, k: usize) -> usize {
    binomial(rows, k).saturating_mul(binomial(cols, k))
}

/// Gcd of all `r×r` minors of `M(base + t·direction)`, or `None` when it is
/// a nonzero constant (no rank drop below `r` on the affine line).
///
/// Random combinations of minors are tried first; their gcd is a multiple
/// of the true one, so a constant answer is exact. A nonconstant answer is
/// confirmed over all minors when their number is within `budget`.
pub fn line_rank_drop(
    space: &MatrixSpace,
    base: &[Rat],
    direction: &[Rat],
    r: usize,
    budget: usize,
    s: &mut Sampler,
) -> Option<Vec<Rat>> {
    let m0 = space.at(base);
    let m1 = space.at(direction);
    if r == 0 {
        return None;
    }
    if r > space.rows().min(space.cols()) {
        return Some(Vec::new());
    }
    let mut g: Vec<Rat> = Vec::new();
    for _ in 0..LINE_COMBINATIONS {
        let u = MatRat::from_fn(r, space.rows(), |_, _| s.rat());
        let v = MatRat::from_fn(space.cols(), r, |_, _| s.rat());
        let d = pencil_det(&u.mul(&m0).mul(&v), &u.mul(&m1).mul(&v));
        g = upoly::gcd(&g, &d);
        if upoly::is_constant(&g) {
            return None;
        }
    }
    if minor_count(space.rows(), space.cols(), r) > budget {
        return Some(g);
    }
    let mut g: Vec<Rat> = Vec::new();
    for rows in (0..space.rows()).combinations(r) {
        for cols in (0..space.cols()).combinations(r) {
            let d = pencil_det(&m0.submatrix(&rows, &cols), &m1.submatrix(&rows, &cols));
            g = upoly::gcd(&g, &d);
            if upoly::is_constant(&g) {
                return None;
            }
        }
    }
    Some(g)
}

/// Certifies that every nonzero element of `space` has rank `r`, or returns
/// a refutation.
///
/// Both modes produce a witness of rank `r` and check `opts.pencils` random
/// lines for a drop below `r`. The upper bound `rank ≤ r` is established by
/// random evaluation (randomized) or by expanding every `(r+1)`-minor
/// (symbolic).
pub fn certify_constant_rank(
    space: &MatrixSpace,
    r: usize,
    opts: &CertifyOptions,
    s: &mut Sampler,
) -> Result<Certification> {
    let dim = space.dim();
    let bound: i64 = (1i64 << (RANGE_BITS - 1)) * (r as i64 + 1);
    let refute_at = |e: &[Rat], rank: usize| {
        Ok(Certification::Refuted(Refutation::Point {
            point: fmt_rat_vec(e),
            rank,
        }))
    };
    let mut witness = None;
    let mut minors_expanded = 0;
    match opts.mode {
        CertMode::Randomized => {
            for _ in 0..opts.trials.max(1) {
                let e = big_vec(s, dim, bound);
                let k = space.rank_at(&e);
                if k != r {
                    return refute_at(&e, k);
                }
                witness.get_or_insert(e);
            }
        }
        CertMode::Symbolic => {
            let k = r + 1;
            let count = if k > space.rows().min(space.cols()) {
                0
            } else {
                minor_count(space.rows(), space.cols(), k)
            };
            if count > opts.minor_budget {
                return Err(Error::BudgetExceeded(format!(
                    "{count} minors of size {k} exceed the budget of {}",
                    opts.minor_budget
                )));
            }
            if count > 0 {
                let entries = space.linear_entries();
                for rows in (0..space.rows()).combinations(k) {
                    for cols in (0..space.cols()).combinations(k) {
                        let sub: Vec<Vec<MPoly>> = rows
                            .iter()
                            .map(|&i| cols.iter().map(|&j| entries[i][j].clone()).collect())
                            .collect();
                        let minor = poly_det(&sub, dim);
                        minors_expanded += 1;
                        if !minor.is_zero() {
                            let e = loop {
                                let e = s.nonzero_vec(dim);
                                if !minor.eval(&e).is_zero() {
                                    break e;
                                }
                            };
                            let k = space.rank_at(&e);
                            return refute_at(&e, k);
                        }
                    }
                }
            }
            for _ in 0..opts.trials.max(1) {
                let e = s.nonzero_vec(dim);
                let k = space.rank_at(&e);
                if k == r {
                    witness = Some(e);
                    break;
                }
                if k > r {
                    return refute_at(&e, k);
                }
            }
            if witness.is_none() {
                let e = s.nonzero_vec(dim);
                let k = space.rank_at(&e);
                return refute_at(&e, k);
            }
        }
    }
    let mut lines = 0;
    if dim >= 2 {
        for _ in 0..opts.pencils {
            let p = s.nonzero_vec(dim);
            let q = s.nonzero_vec(dim);
            let kq = space.rank_at(&q);
            if kq != r {
                return refute_at(&q, kq);
            }
            if let Some(g) = line_rank_drop(space, &p, &q, r, opts.minor_budget, s) {
                return Ok(Certification::Refuted(Refutation::Line {
                    base: fmt_rat_vec(&p),
                    direction: fmt_rat_vec(&q),
                    drop_polynomial: fmt_rat_vec(&g),
                }));
            }
            lines += 1;
        }
    }
    let randomized = opts.mode == CertMode::Randomized;
    let trials = opts.trials.max(1);
    Ok(Certification::Certified(RankCertificate {
        space: space.name().to_string(),
        claimed_rank: r,
        mode: opts.mode,
        witness: fmt_rat_vec(&witness.expect("witness found")),
        trials,
        sample_bound: if randomized { bound.to_string() } else { s.height().to_string() },
        failure_bound_log2: randomized.then(|| -(RANGE_BITS as i64) * trials as i64),
        minors_expanded,
        lines_without_drop: lines,
    }))
}

/// Ranks observed at `points` random parameter points.
pub fn rank_census(space: &MatrixSpace, points: usize, s: &mut Sampler) -> BTreeMap<usize, usize> {
    let mut census = BTreeMap::new();
    for _ in 0..points {
        let e = s.nonzero_vec(space.dim());
        *census.entry(space.rank_at(&e)).or_insert(0) += 1;
    }
    census
}

#[derive(Clone, Debug, Serialize)]
pub struct OddRankReport {
    pub m: usize,
    pub r: usize,
    pub trials: usize,
    /// pencils exhibiting a rank drop below `r`
    pub refuted: usize,
    /// refutations with a drop at a rational parameter point
    pub rational_witnesses: usize,
    /// degrees of the drop polynomials, one per refuted pencil
    pub drop_degrees: Vec<usize>,
}

impl OddRankReport {
    pub fn all_refuted(&self) -> bool {
        self.refuted == self.trials
    }
}

fn random_invertible(n: usize, s: &mut Sampler) -> MatRat {
    loop {
        let p = MatRat::from_fn(n, n, |_, _| s.rat());
        if p.rank() == n {
            return p;
        }
    }
}

fn random_symmetric(n: usize, s: &mut Sampler) -> MatRat {
    let mut m = MatRat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = s.rat();
            m[(i, j)] = v.clone();
            m[(j, i)] = v;
        }
    }
    m
}

/// A random pencil of `m×m` symmetric matrices of bounded rank `r`: either
/// `Q S(e) ᵗQ` with `S` an `r×r` pencil, or `[[0, ᵗb(e)], [b(e), C(e)]]`
/// with `C` of rank `r − 2`; both conjugated by a random invertible matrix.
fn bounded_rank_pencil(m: usize, r: usize, s: &mut Sampler) -> MatrixSpace {
    let compressed = r < 3 || s.index(2) == 0;
    let mats: Vec<MatRat> = if compressed {
        let q = MatRat::from_fn(m, r, |_, _| s.rat());
        (0..2)
            .map(|_| q.mul(&random_symmetric(r, s)).mul(&q.transpose()))
            .collect()
    } else {
        let w = m - 1;
        let q = MatRat::from_fn(w, r - 2, |_, _| s.rat());
        (0..2)
            .map(|_| {
                let c = q.mul(&random_symmetric(r - 2, s)).mul(&q.transpose());
                let b = s.vec(w);
                MatRat::from_fn(m, m, |i, j| match (i, j) {
                    (0, 0) => Rat::zero(),
                    (0, j) => b[j - 1].clone(),
                    (i, 0) => b[i - 1].clone(),
                    (i, j) => c[(i - 1, j - 1)].clone(),
                })
            })
            .collect()
    };
    let p = random_invertible(m, s);
    let basis = mats.iter().map(|a| p.mul(a).mul(&p.transpose())).collect();
    MatrixSpace {
        name: format!("pencil:{m},{r}"),
        rows: m,
        cols: m,
        symmetry: Symmetry::Symmetric,
        basis,
    }
}

/// Samples `trials` two-dimensional spaces of symmetric `m×m` matrices of
/// generic rank `r` (odd) and shows that each one contains a nonzero
/// element of smaller rank.
pub fn odd_rank_obstruction(m: usize, r: usize, trials: usize, s: &mut Sampler) -> Result<OddRankReport> {
    if r.is_multiple_of(2) || r > m || m > 12 {
        return Err(Error::Invalid(format!(
            "odd rank obstruction needs odd r <= m <= 12, got r = {r}, m = {m}"
        )));
    }
    let mut report = OddRankReport {
        m,
        r,
        trials,
        refuted: 0,
        rational_witnesses: 0,
        drop_degrees: Vec::new(),
    };
    let base = [rat(1), rat(0)];
    let dir = [rat(0), rat(1)];
    for _ in 0..trials {
        let space = loop {
            let sp = bounded_rank_pencil(m, r, s);
            let independent = MatrixSpace::new("pencil", Symmetry::Symmetric, sp.basis.clone()).is_ok();
            if independent && sp.generic_rank(s, 3) == r {
                break sp;
            }
        };
        // the point at infinity of the line e = (1, t)
        if space.rank_at(&dir) < r {
            report.refuted += 1;
            report.rational_witnesses += 1;
            report.drop_degrees.push(0);
            continue;
        }
        if let Some(g) = line_rank_drop(&space, &base, &dir, r, usize::MAX, s) {
            report.refuted += 1;
            let deg = upoly::degree(&g).unwrap_or(0);
            if deg == 1 {
                report.rational_witnesses += 1;
            }
            report.drop_degrees.push(deg);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matspaces::{exemplar, split_type};

    #[test]
    fn skew_three_by_three_certifies() {
        let c = exemplar("C_II").unwrap();
        let mut s = Sampler::new(1);
        for mode in [CertMode::Randomized, CertMode::Symbolic] {
            let opts = CertifyOptions { mode, ..Default::default() };
            let cert = certify_constant_rank(&c, 2, &opts, &mut s).unwrap();
            let Certification::Certified(cert) = cert else {
                panic!("C_II should certify");
            };
            assert!(cert.failure_bound_log2.is_none_or(|b| b < -40));
        }
    }

    #[test]
    fn b_one_symbolic_has_no_minors() {
        let b = exemplar("B_I").unwrap();
        let opts = CertifyOptions { mode: CertMode::Symbolic, ..Default::default() };
        let Certification::Certified(cert) =
            certify_constant_rank(&b, 2, &opts, &mut Sampler::new(2)).unwrap()
        else {
            panic!("B_I should certify");
        };
        assert_eq!(cert.minors_expanded, 0);
    }

    #[test]
    fn wrong_rank_is_refuted() {
        let c = exemplar("C_II").unwrap();
        let opts = CertifyOptions::default();
        let cert = certify_constant_rank(&c, 3, &opts, &mut Sampler::new(3)).unwrap();
        assert!(matches!(cert, Certification::Refuted(Refutation::Point { rank: 2, .. })));
        let opts = CertifyOptions { mode: CertMode::Symbolic, ..Default::default() };
        let cert = certify_constant_rank(&c, 1, &opts, &mut Sampler::new(3)).unwrap();
        assert!(matches!(cert, Certification::Refuted(Refutation::Point { rank: 2, .. })));
    }

    #[test]
    fn generic_symmetric_pencil_drops() {
        // ⟨I, diag(1, 2, 3)⟩ drops rank at e = (−1, 1), (−2, 1), (−3, 1)
        let sp = MatrixSpace::new(
            "p",
            Symmetry::Symmetric,
            vec![MatRat::identity(3), MatRat::diag(&[rat(1), rat(2), rat(3)])],
        )
        .unwrap();
        let cert = certify_constant_rank(&sp, 3, &CertifyOptions::default(), &mut Sampler::new(4)).unwrap();
        assert!(!cert.is_certified());
        let g = line_rank_drop(&sp, &[rat(0), rat(1)], &[rat(1), rat(0)], 3, 1000, &mut Sampler::new(5));
        assert_eq!(g.map(|g| upoly::degree(&g)), Some(Some(3)));
    }

    #[test]
    fn symbolic_budget_is_enforced() {
        let a = exemplar("A_III").unwrap();
        let opts = CertifyOptions { mode: CertMode::Symbolic, minor_budget: 10, ..Default::default() };
        assert!(matches!(
            certify_constant_rank(&a, 6, &opts, &mut Sampler::new(1)),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn odd_rank_pencils_all_drop() {
        let mut s = Sampler::new(6);
        let rep = odd_rank_obstruction(5, 3, 20, &mut s).unwrap();
        assert!(rep.all_refuted());
        let rep = odd_rank_obstruction(3, 3, 10, &mut s).unwrap();
        assert!(rep.all_refuted());
        assert!(odd_rank_obstruction(5, 2, 1, &mut s).is_err());
    }

    #[test]
    fn even_split_pencils_do_not_drop() {
        let mut s = Sampler::new(7);
        let x = split_type(2, 4, &mut s).unwrap();
        for _ in 0..10 {
            let p = s.nonzero_vec(x.dim());
            let q = s.nonzero_vec(x.dim());
            assert!(line_rank_drop(&x, &p, &q, 2, usize::MAX, &mut s).is_none());
        }
    }
}
