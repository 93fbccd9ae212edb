use itertools::Itertools;

use super::poly::{poly_det, MPoly};
use crate::error::{Error, Result};

/// Signed maximal-minor kernel vectors of a polynomial matrix with more
/// columns than rows.
///
/// For every choice `S` of `rows + 1` columns the returned vector has entry
/// `(-1)^i det(m[:, S \ S_i])` at column `S_i` and zero elsewhere. Each vector
/// annihilates `m` identically (expand `det` of `m` with a repeated row).
pub fn cramer_kernel_vectors(m: &[Vec<MPoly>]) -> Result<Vec<Vec<MPoly>>> {
    let rows = m.len();
    let Some(cols) = m.first().map(Vec::len) else {
        return Err(Error::Invalid("empty matrix".into()));
    };
    if cols <= rows {
        return Err(Error::Invalid("need more columns than rows".into()));
    }
    let subsets: Vec<Vec<usize>> = (0..cols).combinations(rows + 1).collect();
    Ok(subsets.iter().map(|s| cramer_vector(m, s)).collect())
}

/// Kernel vector attached to one column subset of size `rows + 1`.
pub fn cramer_vector(m: &[Vec<MPoly>], subset: &[usize]) -> Vec<MPoly> {
    let rows = m.len();
    let cols = m[0].len();
    let nvars = m[0][0].nvars();
    assert_eq!(subset.len(), rows + 1, "subset must have rows + 1 columns");
    let mut v = vec![MPoly::zero(nvars); cols];
    for (i, &c) in subset.iter().enumerate() {
        let keep: Vec<usize> = subset.iter().copied().filter(|&x| x != c).collect();
        let sub: Vec<Vec<MPoly>> = m
            .iter()
            .map(|row| keep.iter().map(|&k| row[k].clone()).collect())
            .collect();
        let d = poly_det(&sub, nvars);
        v[c] = if i % 2 == 0 { d } else { -&d };
    }
    v
}

/// `m · v` as polynomials.
pub fn poly_mat_vec(m: &[Vec<MPoly>], v: &[MPoly]) -> Vec<MPoly> {
    m.iter()
        .map(|row| {
            let nvars = row[0].nvars();
            row.iter()
                .zip(v)
                .fold(MPoly::zero(nvars), |acc, (a, b)| &acc + &(a * b))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;
    use crate::exact::sample::Sampler;

    #[test]
    fn two_dimensional_cross() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let v = cramer_kernel_vectors(&[vec![x.clone(), y.clone()]]).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0], vec![y, -&x]);
    }

    #[test]
    fn coordinate_kernel() {
        let c = |a: i64| MPoly::constant(1, rat(a));
        let m = vec![vec![c(1), c(0), c(0)], vec![c(0), c(1), c(0)]];
        let v = cramer_kernel_vectors(&m).unwrap();
        assert_eq!(v[0], vec![c(0), c(0), c(1)]);
    }

    #[test]
    fn random_linear_entries_annihilate() {
        let mut s = Sampler::new(11);
        let nvars = 3;
        let m: Vec<Vec<MPoly>> = (0..2)
            .map(|_| {
                (0..4)
                    .map(|_| {
                        let mut p = MPoly::linear(&s.vec(nvars));
                        p.add_term(vec![0; nvars], s.rat());
                        p
                    })
                    .collect()
            })
            .collect();
        let vs = cramer_kernel_vectors(&m).unwrap();
        assert_eq!(vs.len(), 4);
        for v in &vs {
            assert!(poly_mat_vec(&m, v).iter().all(MPoly::is_zero));
            assert!(v.iter().any(|p| !p.is_zero()));
        }
    }

    #[test]
    fn rejects_square_input() {
        let c = MPoly::constant(1, rat(1));
        assert!(cramer_kernel_vectors(&[vec![c]]).is_err());
    }
}
