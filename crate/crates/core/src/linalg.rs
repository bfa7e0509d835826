//! Dense linear algebra over a finite field, plus a division-free
//! characteristic polynomial over any commutative ring.

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    ncols: usize,
    rows: Vec<Vec<Elem>>,
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, nrows: usize, ncols: usize) -> Matrix {
        Matrix { field, ncols, rows: vec![vec![Elem::zero(field); ncols]; nrows] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.rows[i][i] = Elem::one(field);
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Elem>>) -> Matrix {
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        Matrix { field, ncols, rows }
    }

    /// Empty matrix with a fixed column count.
    pub fn with_cols(field: Field, ncols: usize) -> Matrix {
        Matrix { field, ncols, rows: vec![] }
    }

    pub fn push_row(&mut self, row: Vec<Elem>) {
        assert_eq!(row.len(), self.ncols);
        self.rows.push(row);
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.rows[i][j]
    }

    pub fn transpose(&self) -> Matrix {
        let rows = (0..self.ncols).map(|j| self.rows.iter().map(|r| r[j].clone()).collect()).collect();
        Matrix { field: self.field, ncols: self.rows.len(), rows }
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.ncols, o.nrows());
        let mut out = Matrix::zeros(self.field, self.nrows(), o.ncols);
        for i in 0..self.nrows() {
            for k in 0..self.ncols {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.ncols {
                    out.rows[i][j] = &out.rows[i][j] + &(a * &o.rows[k][j]);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).fold(Elem::zero(self.field), |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }

    /// Gauss-Jordan elimination; pivots are the first nonzero column of each row.
    pub fn rref(&self) -> Rref {
        let mut m = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == m.len() {
                break;
            }
            let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, pr);
            let inv = m[r][c].inv().unwrap();
            for e in m[r].iter_mut() {
                *e = &*e * &inv;
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (e, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                        *e = &*e - &(&f * pv);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        Rref { matrix: Matrix { field: self.field, ncols: self.ncols, rows: m }, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel, one vector per free column, in RREF form
    /// (each vector has a 1 at its free column and 0 at the other free columns).
    pub fn kernel(&self) -> Vec<Vec<Elem>> {
        let rref = self.rref();
        let n = self.ncols;
        let free: Vec<usize> = (0..n).filter(|c| !rref.pivots.contains(c)).collect();
        let mut basis: Vec<Vec<Elem>> = free
            .iter()
            .map(|&fc| {
                let mut v = vec![Elem::zero(self.field); n];
                v[fc] = Elem::one(self.field);
                for (row, &pc) in rref.matrix.rows.iter().zip(&rref.pivots) {
                    v[pc] = row[fc].neg();
                }
                v
            })
            .collect();
        // normalize into reduced echelon form with respect to reversed column order,
        // which makes the basis canonical for the kernel as a subspace
        basis = canonical_basis(self.field, n, basis);
        basis
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.nrows();
        if n != self.ncols {
            return Err(Error::PreconditionViolated("inverse of a non-square matrix".into()));
        }
        let mut aug = self.clone();
        aug.ncols = 2 * n;
        for (i, row) in aug.rows.iter_mut().enumerate() {
            for j in 0..n {
                row.push(if i == j { Elem::one(self.field) } else { Elem::zero(self.field) });
            }
        }
        let r = aug.rref();
        if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
            return Err(Error::SingularSystem);
        }
        let rows = r.matrix.rows.into_iter().map(|row| row[n..].to_vec()).collect();
        Ok(Matrix { field: self.field, ncols: n, rows })
    }

    /// One solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[Elem]) -> Option<Vec<Elem>> {
        let mut aug = self.clone();
        aug.ncols += 1;
        for (row, v) in aug.rows.iter_mut().zip(b) {
            row.push(v.clone());
        }
        let r = aug.rref();
        if r.pivots.last() == Some(&self.ncols) {
            return None;
        }
        let mut x = vec![Elem::zero(self.field); self.ncols];
        for (row, &pc) in r.matrix.rows.iter().zip(&r.pivots) {
            x[pc] = row[self.ncols].clone();
        }
        Some(x)
    }

    pub fn determinant(&self) -> Elem {
        let n = self.nrows();
        assert_eq!(n, self.ncols);
        let mut m = self.rows.clone();
        let mut det = Elem::one(self.field);
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return Elem::zero(self.field);
            };
            if pr != c {
                m.swap(pr, c);
                det = det.neg();
            }
            det = &det * &m[c][c];
            let inv = m[c][c].inv().unwrap();
            for i in c + 1..n {
                if m[i][c].is_zero() {
                    continue;
                }
                let f = &m[i][c] * &inv;
                for j in c..n {
                    let t = &f * &m[c][j];
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        det
    }
}

/// Canonical basis of the span of `vs`: reduced echelon form with pivots
/// taken at the first nonzero coordinate.
pub fn canonical_basis(field: Field, n: usize, vs: Vec<Vec<Elem>>) -> Vec<Vec<Elem>> {
    if vs.is_empty() {
        return vs;
    }
    let m = Matrix { field, ncols: n, rows: vs };
    m.rref().matrix.rows
}

/// Commutative ring operations needed by the division-free algorithms.
pub trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Ring for Elem {
    fn zero_like(&self) -> Self {
        Elem::zero(self.field())
    }
    fn one_like(&self) -> Self {
        Elem::one(self.field())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn is_zero(&self) -> bool {
        Elem::is_zero(self)
    }
}

/// Characteristic polynomial `det(x I - A)` by Berkowitz's algorithm,
/// coefficients from the leading one (always 1) down to the constant term.
/// `one` supplies the ring's identity for the empty matrix.
pub fn berkowitz<R: Ring>(a: &[Vec<R>], one: &R) -> Vec<R> {
    let n = a.len();
    let zero = one.zero_like();
    let mut v: Vec<R> = vec![one.clone()];
    for r in 0..n {
        // leading (r+1)x(r+1) block: Asub = a[0..r][0..r], R = a[r][0..r], C = a[0..r][r]
        let arr = &a[r][r];
        // t = [1, -a_rr, -R C, -R Asub C, ..., -R Asub^(r-1) C]
        let mut t = Vec::with_capacity(r + 2);
        t.push(one.clone());
        t.push(zero.sub(arr));
        let mut col: Vec<R> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let rc = (0..r).fold(zero.clone(), |acc, j| acc.add(&a[r][j].mul(&col[j])));
            t.push(zero.sub(&rc));
            col = (0..r)
                .map(|i| (0..r).fold(zero.clone(), |acc, j| acc.add(&a[i][j].mul(&col[j]))))
                .collect();
        }
        // v' = T v with T the (r+2)x(r+1) lower Toeplitz matrix of t
        let mut nv = vec![zero.clone(); r + 2];
        for (i, slot) in nv.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                if i >= j && !vj.is_zero() {
                    *slot = slot.add(&t[i - j].mul(vj));
                }
            }
        }
        v = nv;
    }
    v
}

/// Division-free determinant.
pub fn det_division_free<R: Ring>(a: &[Vec<R>], one: &R) -> R {
    let n = a.len();
    let cp = berkowitz(a, one);
    let c = cp[n].clone();
    if n % 2 == 0 {
        c
    } else {
        one.zero_like().sub(&c)
    }
}
