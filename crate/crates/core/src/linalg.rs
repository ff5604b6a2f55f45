//! Dense linear algebra over a prime field `F_p`.
//!
//! Matrices are row-major and act on row vectors from the right, matching
//! the right-module convention used throughout the crate. Elimination is
//! deterministic: the pivot in each column is the first nonzero entry at or
//! below the current row.

use std::fmt;

use crate::error::{Error, Result};

/// Default characteristic.
pub const DEFAULT_PRIME: u32 = 32003;

/// Prime field `F_p`, `5 <= p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if !(5..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::BadModulus(p));
        }
        Ok(Fp { p })
    }

    pub fn default_field() -> Self {
        Fp { p: DEFAULT_PRIME }
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.p - b % self.p)
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    /// Reduce a signed integer into `[0, p)`.
    pub fn from_i64(self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for readable output.
    pub fn to_signed(self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Row-major dense matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} mod {}", self.rows, self.cols, self.field.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Result of row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rank: usize,
    /// Reduced matrix with the zero rows dropped.
    pub reduced: Mat,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zero(field: Fp, rows: usize, cols: usize) -> Self {
        Mat { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Build from raw entries already reduced into `[0, p)`.
    pub fn from_vec(field: Fp, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {}x{} matrix", data.len(), rows, cols)));
        }
        if let Some(&bad) = data.iter().find(|&&x| x >= field.p) {
            return Err(Error::Malformed(format!("entry {} not reduced mod {}", bad, field.p)));
        }
        Ok(Mat { field, rows, cols, data })
    }

    /// Build from signed integer rows (reduced mod p). All rows must share a length.
    pub fn from_rows_i64(field: Fp, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Mat::zero(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = field.from_i64(x);
            }
        }
        m
    }

    /// Stack row vectors into a matrix with `cols` columns.
    pub fn from_row_vecs(field: Fp, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Mat { field, rows: rows.len(), cols, data }
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }
    pub fn add_at(&mut self, r: usize, c: usize, v: u32) {
        let i = r * self.cols + c;
        self.data[i] = self.field.add(self.data[i], v);
    }
    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = self.field;
        let p = f.p as u64;
        let mut out = Mat::zero(f, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for (c, &v) in acc.iter().enumerate() {
                out.data[r * other.cols + c] = v as u32;
            }
        }
        out
    }

    /// `v · self` for a row vector `v`.
    pub fn apply_row(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows);
        let p = self.field.p as u64;
        let mut acc = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (slot, &b) in acc.iter_mut().zip(self.row(k)) {
                *slot = (*slot + a as u64 * b as u64) % p;
            }
        }
        acc.into_iter().map(|x| x as u32).collect()
    }

    /// `self · x` for a column vector `x`.
    pub fn apply_col(&self, x: &[u32]) -> Vec<u32> {
        assert_eq!(x.len(), self.cols);
        let p = self.field.p as u64;
        (0..self.rows)
            .map(|r| {
                let mut s = 0u64;
                for (&a, &b) in self.row(r).iter().zip(x) {
                    s = (s + a as u64 * b as u64) % p;
                }
                s as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: u32) -> Mat {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: u32, other: &Mat) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(s, b));
        }
    }

    /// Vertical concatenation. All inputs must have `cols` columns.
    pub fn vstack(field: Fp, cols: usize, parts: &[&Mat]) -> Mat {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&m.data);
        }
        Mat { field, rows, cols, data }
    }

    /// Horizontal concatenation. All inputs must have `rows` rows.
    pub fn hstack(field: Fp, rows: usize, parts: &[&Mat]) -> Mat {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zero(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            for r in 0..rows {
                out.data[r * cols + off..r * cols + off + m.cols].copy_from_slice(m.row(r));
            }
            off += m.cols;
        }
        out
    }

    /// Block-diagonal sum.
    pub fn block_diag(field: Fp, parts: &[&Mat]) -> Mat {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zero(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            for r in 0..m.rows {
                out.data[(r0 + r) * cols + c0..(r0 + r) * cols + c0 + m.cols].copy_from_slice(m.row(r));
            }
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    /// Submatrix keeping the listed columns, in order.
    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        let mut out = Mat::zero(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.data[r * self.cols + c];
            }
        }
        out
    }

    /// Submatrix keeping the listed rows, in order.
    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Mat { field: self.field, rows: rows.len(), cols: self.cols, data }
    }

    /// Reduced row-echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        m.data.truncate(rank * m.cols);
        m.rows = rank;
        Rref { rank, reduced: m, pivots }
    }

    /// Row-reduce in place; returns pivot columns. Nonzero rows end up first.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let p = f.p as u64;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for k in c..cols {
                    self.data.swap(pr * cols + k, r * cols + k);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            if inv != 1 {
                for k in c..cols {
                    let x = &mut self.data[r * cols + k];
                    *x = f.mul(*x, inv);
                }
            }
            let (head, tail) = self.data.split_at_mut(r * cols);
            let (prow, rest) = tail.split_at_mut(cols);
            let eliminate = |row: &mut [u32]| {
                let factor = row[c];
                if factor == 0 {
                    return;
                }
                let neg = p - factor as u64;
                for k in c..cols {
                    row[k] = ((row[k] as u64 + neg * prow[k] as u64) % p) as u32;
                }
            };
            for row in head.chunks_mut(cols) {
                eliminate(row);
            }
            for row in rest.chunks_mut(cols) {
                eliminate(row);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Right kernel `{v : self · vᵀ = 0}` as a subspace of `F_p^cols`.
    pub fn kernel(&self) -> Subspace {
        let rr = self.rref();
        let f = self.field;
        let free: Vec<usize> = non_pivots(&rr.pivots, self.cols);
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0u32; self.cols];
            v[fc] = 1;
            for (k, &pc) in rr.pivots.iter().enumerate() {
                v[pc] = f.neg(rr.reduced.get(k, fc));
            }
            basis.push(v);
        }
        Subspace::span(f, self.cols, &basis)
    }

    /// Left kernel `{y : y · self = 0}` as a subspace of `F_p^rows`.
    pub fn left_kernel(&self) -> Subspace {
        self.transpose().kernel()
    }

    /// Row space as a subspace of `F_p^cols`.
    pub fn row_space(&self) -> Subspace {
        Subspace::from_rref(self.cols, self.rref())
    }

    /// Some `x` with `self · x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let f = self.field;
        let mut aug = Mat::zero(f, self.rows, self.cols + 1);
        for (r, &br) in b.iter().enumerate() {
            aug.data[r * (self.cols + 1)..r * (self.cols + 1) + self.cols].copy_from_slice(self.row(r));
            aug.data[r * (self.cols + 1) + self.cols] = br % f.p;
        }
        let rr = aug.rref();
        if rr.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (k, &pc) in rr.pivots.iter().enumerate() {
            x[pc] = rr.reduced.get(k, self.cols);
        }
        Ok(Some(x))
    }

    /// Solve `y · self = target` for a row vector `y`.
    pub fn solve_left(&self, target: &[u32]) -> Result<Option<Vec<u32>>> {
        self.transpose().solve(target)
    }

    /// Inverse of a square matrix, if invertible.
    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Mat::hstack(self.field, n, &[self, &Mat::identity(self.field, n)]);
        let rr = aug.rref();
        if rr.rank < n || rr.pivots[n - 1] != n - 1 {
            return None;
        }
        let idx: Vec<usize> = (n..2 * n).collect();
        Some(rr.reduced.select_cols(&idx))
    }

    pub fn trace(&self) -> u32 {
        let f = self.field;
        (0..self.rows.min(self.cols)).fold(0, |acc, i| f.add(acc, self.get(i, i)))
    }
}

/// Column indices in `0..cols` that are not pivots.
pub fn non_pivots(pivots: &[usize], cols: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(cols - pivots.len());
    let mut it = pivots.iter().peekable();
    for c in 0..cols {
        if it.peek() == Some(&&c) {
            it.next();
        } else {
            out.push(c);
        }
    }
    out
}

/// A linear subspace of `F_p^ambient`, stored as a basis in reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Fp, ambient: usize) -> Self {
        Subspace { ambient, basis: Mat::zero(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: Fp, ambient: usize) -> Self {
        Subspace { ambient, basis: Mat::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    fn from_rref(ambient: usize, rr: Rref) -> Self {
        Subspace { ambient, basis: rr.reduced, pivots: rr.pivots }
    }

    /// Span of the given vectors.
    pub fn span(field: Fp, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        Mat::from_row_vecs(field, ambient, vectors).row_space()
    }

    pub fn field(&self) -> Fp {
        self.basis.field()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn basis(&self) -> &Mat {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    /// Indices of coordinates not used as pivots; unit vectors at these
    /// positions span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        non_pivots(&self.pivots, self.ambient)
    }

    /// Residue of `v` modulo this subspace, normalized to vanish on pivots.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field();
        let p = f.p() as u64;
        let mut w = v.to_vec();
        for (k, &pc) in self.pivots.iter().enumerate() {
            let c = w[pc];
            if c == 0 {
                continue;
            }
            let neg = p - c as u64;
            for (x, &b) in w.iter_mut().zip(self.basis.row(k)) {
                *x = ((*x as u64 + neg * b as u64) % p) as u32;
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the echelon basis; `None` if `v` is not in the span.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    /// Coordinates without the membership check.
    pub fn coords_unchecked(&self, v: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&pc| v[pc]).collect()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && (0..self.dim()).all(|k| other.contains(self.basis.row(k)))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let f = self.field();
        Ok(Mat::vstack(f, self.ambient, &[&self.basis, &other.basis]).row_space())
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let f = self.field();
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(f, self.ambient));
        }
        let stacked = Mat::vstack(f, self.ambient, &[&self.basis, &other.basis]);
        let relations = stacked.left_kernel();
        let k = self.dim();
        let mut vecs = Vec::with_capacity(relations.dim());
        for r in 0..relations.dim() {
            let a = &relations.basis.row(r)[..k];
            vecs.push(self.basis.apply_row(a));
        }
        Ok(Subspace::span(f, self.ambient, &vecs))
    }

    /// Image of this subspace under `v ↦ v · m`.
    pub fn image(&self, m: &Mat) -> Subspace {
        assert_eq!(m.rows(), self.ambient);
        self.basis.mul(m).row_space()
    }
}

/// Sum and intersection in one call.
pub fn subspace_ops(u: &Subspace, w: &Subspace) -> Result<(Subspace, Subspace)> {
    Ok((u.sum(w)?, u.intersection(w)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> Fp {
        Fp::default_field()
    }

    #[test]
    fn rref_examples() {
        let f = fp();
        let rr = Mat::identity(f, 2).rref();
        assert_eq!(rr.rank, 2);
        assert_eq!(rr.reduced, Mat::identity(f, 2));
        assert_eq!(rr.pivots, vec![0, 1]);

        assert_eq!(Mat::zero(f, 3, 4).rref().rank, 0);

        let rr = Mat::from_rows_i64(f, &[vec![1, 2], vec![2, 4]]).rref();
        assert_eq!(rr.rank, 1);
        assert_eq!(rr.pivots, vec![0]);
        assert_eq!(rr.reduced.row(0), &[1, 2]);
    }

    #[test]
    fn kernel_examples() {
        let f = fp();
        assert_eq!(Mat::identity(f, 4).kernel().dim(), 0);
        assert_eq!(Mat::zero(f, 2, 5).kernel().dim(), 5);
        let k = Mat::from_rows_i64(f, &[vec![1, 1, 0]]).kernel();
        assert_eq!(k.dim(), 2);
        assert!(k.contains(&[1, f.from_i64(-1), 0]));
        assert!(k.contains(&[0, 0, 1]));
        assert!(!k.contains(&[1, 0, 0]));
    }

    #[test]
    fn solve_examples() {
        let f = fp();
        let b = vec![5, 7, 11];
        assert_eq!(Mat::identity(f, 3).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(Mat::zero(f, 3, 3).solve(&b).unwrap(), None);
        let a = Mat::from_rows_i64(f, &[vec![1, 1], vec![0, 1]]);
        assert_eq!(a.solve(&[3, 1]).unwrap(), Some(vec![2, 1]));
        assert!(matches!(a.solve(&[1]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn subspace_examples() {
        let f = fp();
        let u = Subspace::span(f, 3, &[vec![1, 2, 3], vec![0, 1, 1]]);
        let (s, i) = subspace_ops(&u, &u).unwrap();
        assert_eq!(s, u);
        assert_eq!(i, u);

        let a = Subspace::span(f, 2, &[vec![1, 0]]);
        let b = Subspace::span(f, 2, &[vec![0, 1]]);
        let (s, i) = subspace_ops(&a, &b).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(i.dim(), 0);

        let l1 = Subspace::span(f, 3, &[vec![1, 1, 0]]);
        let l2 = Subspace::span(f, 3, &[vec![1, 0, 1]]);
        let (s, i) = subspace_ops(&l1, &l2).unwrap();
        assert_eq!((s.dim(), i.dim()), (2, 0));

        let z = Subspace::zero(f, 2);
        assert!(matches!(z.sum(&u), Err(Error::AmbientMismatch(2, 3))));
    }

    #[test]
    fn inverse_and_field() {
        let f = fp();
        let a = Mat::from_rows_i64(f, &[vec![2, 1], vec![1, 1]]);
        let ai = a.inverse().unwrap();
        assert_eq!(a.mul(&ai), Mat::identity(f, 2));
        assert!(Mat::from_rows_i64(f, &[vec![1, 2], vec![2, 4]]).inverse().is_none());
        assert_eq!(f.mul(f.inv(12345), 12345), 1);
        assert!(Fp::new(4).is_err());
        assert!(Fp::new(3).is_err());
        assert!(Fp::new(7).is_ok());
    }
}
