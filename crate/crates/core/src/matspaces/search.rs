use std::collections::VecDeque;

use itertools::Itertools;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{MatrixSpace, Symmetry};
use crate::error::Result;
use crate::exact::{MatRat, Rat};

/// Entry of a space whose entries each involve a single parameter.
type Label = Option<(usize, Rat)>;

fn pattern(space: &MatrixSpace) -> Option<Vec<Vec<Label>>> {
    let mut out = vec![vec![None; space.cols()]; space.rows()];
    for (k, b) in space.basis().iter().enumerate() {
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let c = &b[(i, j)];
                if c.is_zero() {
                    continue;
                }
                if slot.is_some() {
                    return None;
                }
                *slot = Some((k, c.clone()));
            }
        }
    }
    Some(out)
}

/// `B_{σ(k)}[π(i)][τ(j)] · s_k = r_i c_j · A_k[i][j]` for all `i, j, k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub row_perm: Vec<usize>,
    pub row_signs: Vec<i8>,
    pub col_perm: Vec<usize>,
    pub col_signs: Vec<i8>,
    pub param_perm: Vec<usize>,
    pub param_signs: Vec<i8>,
}

struct Search<'a> {
    a: &'a [Vec<Label>],
    b: &'a [Vec<Label>],
    sigma: Vec<usize>,
    pi: Vec<Option<usize>>,
    tau: Vec<Option<usize>>,
    row_used: Vec<bool>,
    col_used: Vec<bool>,
    ignore_signs: bool,
}

impl Search<'_> {
    fn matches(&self, la: &Label, lb: &Label) -> bool {
        match (la, lb) {
            (None, None) => true,
            (Some((k, c)), Some((k2, c2))) => self.sigma[*k] == *k2 && c.abs() == c2.abs(),
            _ => false,
        }
    }

    fn row_ok(&self, i: usize, i2: usize) -> bool {
        self.tau
            .iter()
            .enumerate()
            .all(|(j, t)| t.is_none_or(|j2| self.matches(&self.a[i][j], &self.b[i2][j2])))
    }

    fn col_ok(&self, j: usize, j2: usize) -> bool {
        self.pi
            .iter()
            .enumerate()
            .all(|(i, p)| p.is_none_or(|i2| self.matches(&self.a[i][j], &self.b[i2][j2])))
    }

    /// Next slot to fill: `(is_row, index, candidates)`.
    fn next_choice(&self) -> Option<(bool, usize, Vec<usize>)> {
        let rows = self.a.len();
        let cols = self.a[0].len();
        let mut best: Option<(bool, usize, Vec<usize>)> = None;
        let mut consider = |cand: (bool, usize, Vec<usize>)| {
            if best.as_ref().is_none_or(|b| cand.2.len() < b.2.len()) {
                best = Some(cand);
            }
        };
        for j in (0..cols).filter(|&j| self.tau[j].is_none()) {
            if (0..rows).any(|i| self.pi[i].is_some() && self.a[i][j].is_some()) {
                let c = (0..cols)
                    .filter(|&j2| !self.col_used[j2] && self.col_ok(j, j2))
                    .collect();
                consider((false, j, c));
            }
        }
        for i in (0..rows).filter(|&i| self.pi[i].is_none()) {
            if (0..cols).any(|j| self.tau[j].is_some() && self.a[i][j].is_some()) {
                let c = (0..rows)
                    .filter(|&i2| !self.row_used[i2] && self.row_ok(i, i2))
                    .collect();
                consider((true, i, c));
            }
        }
        if best.is_some() {
            return best;
        }
        if let Some(i) = (0..rows).find(|&i| self.pi[i].is_none()) {
            let c = (0..rows)
                .filter(|&i2| !self.row_used[i2] && self.row_ok(i, i2))
                .collect();
            return Some((true, i, c));
        }
        (0..cols).find(|&j| self.tau[j].is_none()).map(|j| {
            let c = (0..cols)
                .filter(|&j2| !self.col_used[j2] && self.col_ok(j, j2))
                .collect();
            (false, j, c)
        })
    }

    fn run(&mut self) -> Option<Equivalence> {
        let Some((is_row, idx, cands)) = self.next_choice() else {
            return self.signs();
        };
        for c in cands {
            if is_row {
                self.pi[idx] = Some(c);
                self.row_used[c] = true;
            } else {
                self.tau[idx] = Some(c);
                self.col_used[c] = true;
            }
            if let Some(eq) = self.run() {
                return Some(eq);
            }
            if is_row {
                self.pi[idx] = None;
                self.row_used[c] = false;
            } else {
                self.tau[idx] = None;
                self.col_used[c] = false;
            }
        }
        None
    }

    /// Solves the sign equations `r_i + c_j + s_k = [sign flip]` over ℤ/2.
    fn signs(&self) -> Option<Equivalence> {
        let rows = self.a.len();
        let cols = self.a[0].len();
        let params = self.sigma.len();
        let n = rows + cols + params;
        let mut eqs = Vec::new();
        for i in 0..rows {
            for j in 0..cols {
                if let Some((k, c)) = &self.a[i][j] {
                    let (_, c2) = self.b[self.pi[i]?][self.tau[j]?].as_ref()?;
                    let mut e = vec![false; n + 1];
                    e[i] = true;
                    e[rows + j] = true;
                    e[rows + cols + k] = true;
                    e[n] = c != c2;
                    eqs.push(e);
                }
            }
        }
        let val = if self.ignore_signs { vec![false; n] } else { solve_gf2(eqs, n)? };
        let sign = |v: bool| if v { -1 } else { 1 };
        Some(Equivalence {
            row_perm: self.pi.iter().map(|p| p.expect("assigned")).collect(),
            row_signs: (0..rows).map(|i| sign(val[i])).collect(),
            col_perm: self.tau.iter().map(|t| t.expect("assigned")).collect(),
            col_signs: (0..cols).map(|j| sign(val[rows + j])).collect(),
            param_perm: self.sigma.clone(),
            param_signs: (0..params).map(|k| sign(val[rows + cols + k])).collect(),
        })
    }
}

/// Solves a linear system over ℤ/2 given as augmented rows; free variables
/// are set to zero.
fn solve_gf2(mut eqs: Vec<Vec<bool>>, n: usize) -> Option<Vec<bool>> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..eqs.len()).find(|&r| eqs[r][col]) else {
            continue;
        };
        eqs.swap(row, p);
        let pivot = eqs[row].clone();
        for (r, e) in eqs.iter_mut().enumerate() {
            if r != row && e[col] {
                for (x, y) in e.iter_mut().zip(&pivot) {
                    *x ^= *y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if eqs[row..].iter().any(|e| e[n]) {
        return None;
    }
    let mut val = vec![false; n];
    for (r, &col) in pivots.iter().enumerate() {
        val[col] = eqs[r][n];
    }
    Some(val)
}

/// Searches for signed permutations of rows, columns and parameters taking
/// `a` to `b`. Only spaces in which every entry involves a single parameter
/// are handled; `None` means no such equivalence exists or the spaces are
/// not of that form.
pub fn signed_equivalence(a: &MatrixSpace, b: &MatrixSpace) -> Option<Equivalence> {
    let eq = find_equivalence(a, b, false)?;
    debug_assert!(verify(a, b, &eq));
    Some(eq)
}

/// Like [`signed_equivalence`] but matching only which parameter sits in
/// each entry, not the signs. The returned signs are all `+1`.
pub fn support_equivalence(a: &MatrixSpace, b: &MatrixSpace) -> Option<Equivalence> {
    find_equivalence(a, b, true)
}

/// `b` pulled back along `eq` to the indexing of `a`: the `k`-th basis
/// matrix has entries `s_k r_i c_j B_{σ(k)}[π(i)][τ(j)]`.
pub fn transport(b: &MatrixSpace, eq: &Equivalence, name: &str) -> Result<MatrixSpace> {
    let sign = |x: i8| Rat::from_integer(x.into());
    let basis = (0..b.dim())
        .map(|k| {
            let bk = &b.basis()[eq.param_perm[k]];
            MatRat::from_fn(eq.row_perm.len(), eq.col_perm.len(), |i, j| {
                &bk[(eq.row_perm[i], eq.col_perm[j])]
                    * sign(eq.param_signs[k] * eq.row_signs[i] * eq.col_signs[j])
            })
        })
        .collect();
    MatrixSpace::detect(name, basis)
}

fn find_equivalence(a: &MatrixSpace, b: &MatrixSpace, ignore_signs: bool) -> Option<Equivalence> {
    if a.rows() != b.rows() || a.cols() != b.cols() || a.dim() != b.dim() {
        return None;
    }
    let pa = pattern(a)?;
    let pb = pattern(b)?;
    for sigma in (0..a.dim()).permutations(a.dim()) {
        let mut search = Search {
            a: &pa,
            b: &pb,
            sigma,
            pi: vec![None; a.rows()],
            tau: vec![None; a.cols()],
            row_used: vec![false; a.rows()],
            col_used: vec![false; a.cols()],
            ignore_signs,
        };
        if let Some(eq) = search.run() {
            return Some(eq);
        }
    }
    None
}

/// Checks an [`Equivalence`] entry by entry.
pub(crate) fn verify(a: &MatrixSpace, b: &MatrixSpace, eq: &Equivalence) -> bool {
    a.basis().iter().enumerate().all(|(k, ak)| {
        let bk = &b.basis()[eq.param_perm[k]];
        (0..a.rows()).all(|i| {
            (0..a.cols()).all(|j| {
                let lhs = &bk[(eq.row_perm[i], eq.col_perm[j])] * Rat::from_integer(eq.param_signs[k].into());
                let rhs = &ak[(i, j)] * Rat::from_integer((eq.row_signs[i] * eq.col_signs[j]).into());
                lhs == rhs
            })
        })
    })
}

/// A splitting of the index set with `A = [[0, B], [±ᵗB, 0]]` in the
/// order `u ++ w`.
#[derive(Clone, Debug)]
pub struct DoublingStructure {
    pub u: Vec<usize>,
    pub w: Vec<usize>,
    pub kind: Symmetry,
    pub block: MatrixSpace,
}

/// Looks for a doubling structure by two-colouring the support graph of a
/// square space. `None` means the structure was not found.
pub fn doubling_structure(space: &MatrixSpace) -> Option<DoublingStructure> {
    let n = space.rows();
    if space.cols() != n {
        return None;
    }
    let support = |i: usize, j: usize| space.basis().iter().any(|b| !b[(i, j)].is_zero());
    if (0..n).any(|i| support(i, i)) {
        return None;
    }
    let mut colour: Vec<Option<bool>> = vec![None; n];
    for start in 0..n {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let ci = colour[i].expect("coloured");
            for j in 0..n {
                if !(support(i, j) || support(j, i)) {
                    continue;
                }
                match colour[j] {
                    None => {
                        colour[j] = Some(!ci);
                        queue.push_back(j);
                    }
                    Some(cj) if cj == ci => return None,
                    _ => {}
                }
            }
        }
    }
    let u: Vec<usize> = (0..n).filter(|&i| colour[i] == Some(false)).collect();
    let w: Vec<usize> = (0..n).filter(|&i| colour[i] == Some(true)).collect();
    if u.is_empty() || w.is_empty() {
        return None;
    }
    let blocks: Vec<MatRat> = space.basis().iter().map(|b| b.submatrix(&u, &w)).collect();
    let lower: Vec<MatRat> = space.basis().iter().map(|b| b.submatrix(&w, &u)).collect();
    let kind = if blocks.iter().zip(&lower).all(|(b, l)| *l == b.transpose()) {
        Symmetry::Symmetric
    } else if blocks
        .iter()
        .zip(&lower)
        .all(|(b, l)| *l == b.transpose().scale(&-Rat::from_integer(1.into())))
    {
        Symmetry::Skew
    } else {
        return None;
    };
    let block = MatrixSpace::new(format!("block:{}", space.name()), Symmetry::General, blocks).ok()?;
    Some(DoublingStructure { u, w, kind, block })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matspaces::{doubled, exemplar, graded_algebra_space};

    #[test]
    fn graded_five_two_shares_the_support_of_a_three() {
        let g = graded_algebra_space(5, 2).unwrap();
        let a = exemplar("A_III").unwrap();
        // the printed signs of A_III differ from every signed relabelling
        assert!(signed_equivalence(&g, &a).is_none());
        let eq = support_equivalence(&a, &g).expect("same support");
        let repaired = transport(&g, &eq, "A_III*").unwrap();
        assert!(signed_equivalence(&repaired, &g).is_some());
        let nonzero = |m: &MatrixSpace, i, j| m.basis().iter().position(|b| !b[(i, j)].is_zero());
        for i in 0..10 {
            for j in 0..10 {
                assert_eq!(nonzero(&repaired, i, j), nonzero(&a, i, j));
            }
        }
    }

    #[test]
    fn transport_inverts_a_signed_equivalence() {
        let b = exemplar("B_I").unwrap();
        let flipped = MatrixSpace::new(
            "flip",
            Symmetry::General,
            b.basis().iter().rev().map(|m| m.scale(&-Rat::from_integer(1.into()))).collect(),
        )
        .unwrap();
        let eq = signed_equivalence(&b, &flipped).unwrap();
        assert!(verify(&b, &flipped, &eq));
        assert_eq!(transport(&flipped, &eq, "B_I").unwrap().basis(), b.basis());
    }

    #[test]
    fn doubled_exemplars_have_structure() {
        let d = doubling_structure(&exemplar("A_I").unwrap()).unwrap();
        assert_eq!((d.u.len(), d.w.len(), d.kind), (4, 2, Symmetry::Symmetric));
        let b = exemplar("B_I").unwrap();
        assert!(signed_equivalence(&d.block, &b).is_some());
        let d = doubling_structure(&exemplar("A_II").unwrap()).unwrap();
        assert_eq!((d.u.len(), d.w.len()), (3, 3));
        assert!(doubling_structure(&exemplar("A_IV").unwrap()).is_some());
        assert!(doubling_structure(&exemplar("A_III").unwrap()).is_none());
    }

    #[test]
    fn a_one_matches_doubled_b_one() {
        let d = doubled(&exemplar("B_I").unwrap(), Symmetry::Symmetric).unwrap();
        let a = exemplar("A_I").unwrap();
        assert!(signed_equivalence(&d, &a).is_some());
        assert!(signed_equivalence(&d, &exemplar("A_II").unwrap()).is_none());
    }
}
