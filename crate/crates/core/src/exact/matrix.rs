use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{fmt_rat, rat, Rat};

/// Dense matrix over the rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatRat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

/// Integer row echelon form produced by fraction-free elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl MatRat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatRat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        MatRat { rows, cols, data }
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rat>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        MatRat {
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn diag(entries: &[Rat]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..=i).all(|j| self[(i, j)] == -self[(j, i)].clone()))
    }

    pub fn transpose(&self) -> MatRat {
        MatRat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &MatRat) -> MatRat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = MatRat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.rows, v.len(), "dimension mismatch in product");
        let mut out = vec![Rat::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    *o += vi * a;
                }
            }
        }
        out
    }

    /// Bilinear form `u^T M v`.
    pub fn bilinear(&self, u: &[Rat], v: &[Rat]) -> Rat {
        dot(u, &self.mul_vec(v))
    }

    pub fn add(&self, other: &MatRat) -> MatRat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        MatRat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &MatRat) -> MatRat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        MatRat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> MatRat {
        MatRat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// `Σ c_i M_i`; all matrices must share a shape.
    pub fn combination(coeffs: &[Rat], mats: &[MatRat]) -> MatRat {
        assert_eq!(coeffs.len(), mats.len());
        assert!(!mats.is_empty(), "empty combination");
        let mut out = MatRat::zeros(mats[0].rows, mats[0].cols);
        for (c, m) in coeffs.iter().zip(mats) {
            if c.is_zero() {
                continue;
            }
            for (o, a) in out.data.iter_mut().zip(&m.data) {
                if !a.is_zero() {
                    *o += c * a;
                }
            }
        }
        out
    }

    pub fn vstack(blocks: &[&MatRat]) -> MatRat {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        MatRat { rows, cols, data }
    }

    pub fn hstack(blocks: &[&MatRat]) -> MatRat {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = MatRat::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                for j in 0..b.cols {
                    out[(i, off + j)] = b[(i, j)].clone();
                }
            }
            off += b.cols;
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> MatRat {
        MatRat::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> MatRat {
        MatRat::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> MatRat {
        MatRat::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| integer_row(self.row(i)))
            .collect()
    }

    fn echelon(&self) -> Echelon {
        bareiss_echelon(self.integer_rows(), self.cols)
    }

    /// Rank over the rationals by fraction-free elimination.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.echelon().pivots.len()
    }

    /// Column indices of the pivots in row echelon form; these columns form a
    /// basis of the column space.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.echelon().pivots
    }

    /// Indices of a maximal linearly independent set of rows, chosen greedily
    /// from the top.
    pub fn independent_rows(&self) -> Vec<usize> {
        self.transpose().pivot_columns()
    }

    /// Basis of the right kernel; one vector per free column, with that
    /// column's entry equal to 1.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let ech = self.echelon();
        let rank = ech.pivots.len();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &ech.pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::with_capacity(self.cols - rank);
        for free in (0..self.cols).filter(|&c| !pivot_set[c]) {
            let mut x = vec![Rat::zero(); self.cols];
            x[free] = Rat::one();
            back_substitute(&ech, rank, &mut x);
            basis.push(x);
        }
        basis
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (MatRat, Vec<usize>) {
        let ech = self.echelon();
        let rank = ech.pivots.len();
        let mut rows: Vec<Vec<Rat>> = ech.rows[..rank]
            .iter()
            .zip(&ech.pivots)
            .map(|(r, &p)| {
                let piv = Rat::from_integer(r[p].clone());
                r.iter()
                    .map(|x| Rat::from_integer(x.clone()) / &piv)
                    .collect()
            })
            .collect();
        for k in (0..rank).rev() {
            let p = ech.pivots[k];
            for i in 0..k {
                let f = rows[i][p].clone();
                if f.is_zero() {
                    continue;
                }
                let (upper, lower) = rows.split_at_mut(k);
                for (a, b) in upper[i].iter_mut().zip(&lower[0]) {
                    if !b.is_zero() {
                        *a -= &f * b;
                    }
                }
            }
        }
        rows.resize(self.rows, vec![Rat::zero(); self.cols]);
        (MatRat::from_rows(self.cols, rows), ech.pivots)
    }

    /// Basis of the row space (nonzero rows of the reduced echelon form).
    pub fn row_space_basis(&self) -> Vec<Vec<Rat>> {
        let (r, piv) = self.rref();
        (0..piv.len()).map(|i| r.row(i).to_vec()).collect()
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Rat {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rat::one();
        }
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let (row, d) = integer_row_with_scale(self.row(i));
                scale *= d;
                row
            })
            .collect();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Rat::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let d = Rat::new(a[n - 1][n - 1].clone(), scale);
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    pub fn inverse(&self) -> Option<MatRat> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        self.solve_matrix(&MatRat::identity(self.rows))
    }

    /// Some solution `x` of `self · x = b`, free variables set to zero.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        let bm = MatRat::from_rows(1, b.iter().map(|x| vec![x.clone()]).collect());
        self.solve_matrix(&bm).map(|x| x.column(0))
    }

    /// Some solution `X` of `self · X = B`, free variables set to zero.
    pub fn solve_matrix(&self, b: &MatRat) -> Option<MatRat> {
        assert_eq!(self.rows, b.rows, "solve: row mismatch");
        let aug = MatRat::hstack(&[self, b]);
        let (r, piv) = aug.rref();
        if piv.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = MatRat::zeros(self.cols, b.cols);
        for (i, &p) in piv.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = r[(i, self.cols + j)].clone();
            }
        }
        Some(x)
    }
}

impl Index<(usize, usize)> for MatRat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for MatRat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for MatRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatRat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(fmt_rat).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn dot(u: &[Rat], v: &[Rat]) -> Rat {
    let mut s = Rat::zero();
    for (a, b) in u.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            s += a * b;
        }
    }
    s
}

/// Rank of a list of vectors of common length `dim`.
pub fn rank_of(vectors: &[Vec<Rat>], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    MatRat::from_rows(dim, vectors.to_vec()).rank()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Rat>], v: &[Rat]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let r0 = rank_of(basis, v.len());
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    rank_of(&ext, v.len()) == r0
}

/// Coordinate vectors completing `basis` (independent, length `dim`) to a
/// basis of the whole space, chosen greedily in index order.
pub fn complement(basis: &[Vec<Rat>], dim: usize) -> Vec<Vec<Rat>> {
    let mut all = basis.to_vec();
    let mut out = Vec::new();
    let mut r = rank_of(&all, dim);
    for i in 0..dim {
        if r == dim {
            break;
        }
        let mut e = vec![Rat::zero(); dim];
        e[i] = Rat::one();
        all.push(e.clone());
        let r2 = rank_of(&all, dim);
        if r2 > r {
            r = r2;
            out.push(e);
        } else {
            all.pop();
        }
    }
    out
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
pub fn primitive(v: &[Rat]) -> Vec<Rat> {
    let (ints, _) = integer_row_with_scale(v);
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let neg = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    ints.into_iter()
        .map(|x| {
            let q = x / &g;
            Rat::from_integer(if neg { -q } else { q })
        })
        .collect()
}

fn integer_row(row: &[Rat]) -> Vec<BigInt> {
    integer_row_with_scale(row).0
}

/// Multiplies a row by the lcm of its denominators; returns the integer row
/// and the multiplier.
fn integer_row_with_scale(row: &[Rat]) -> (Vec<BigInt>, BigInt) {
    let l = row
        .iter()
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let out = row
        .iter()
        .map(|x| x.numer() * (&l / x.denom()))
        .collect();
    (out, l)
}

fn bareiss_echelon(mut a: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == nrows {
            break;
        }
        // smallest nonzero pivot keeps intermediate entries short
        let Some(p) = (r..nrows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].bits())
        else {
            continue;
        };
        a.swap(p, r);
        let (top, bottom) = a.split_at_mut(r + 1);
        let prow = &top[r];
        for row in bottom.iter_mut() {
            if row[c].is_zero() {
                for x in row[c + 1..].iter_mut() {
                    if !x.is_zero() {
                        *x = &*x * &prow[c] / &prev;
                    }
                }
                continue;
            }
            for j in c + 1..cols {
                let v = &prow[c] * &row[j] - &row[c] * &prow[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Echelon { rows: a, pivots }
}

fn back_substitute(ech: &Echelon, rank: usize, x: &mut [Rat]) {
    for i in (0..rank).rev() {
        let p = ech.pivots[i];
        let row = &ech.rows[i];
        let mut s = Rat::zero();
        for j in p + 1..row.len() {
            if !row[j].is_zero() && !x[j].is_zero() {
                s += Rat::from_integer(row[j].clone()) * &x[j];
            }
        }
        x[p] = -s / Rat::from_integer(row[p].clone());
    }
}
