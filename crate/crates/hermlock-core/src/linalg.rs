//! Exact dense matrices over a ring from [`crate::ring`].
//!
//! Entries do not commute in the skew family, so row operations multiply on
//! the left and scalar action on columns multiplies on the right throughout.
//! Inversion exploits locality: whenever the residue matrix over A/𝔯 is
//! invertible, elimination finds a unit pivot at every step.

use crate::error::{Error, Result};
use crate::ring::{Element, Ring};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Element>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "Mat {}x{} over {}", self.rows, self.cols, self.ring)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(out, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn new(ring: Ring, rows: usize, cols: usize, entries: Vec<Element>) -> Result<Mat> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        for el in &entries {
            if el.spec() != ring.spec() {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Mat { ring, rows, cols, entries })
    }

    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> Mat {
        let entries = vec![ring.zero(); rows * cols];
        Mat { ring: ring.clone(), rows, cols, entries }
    }

    pub fn identity(ring: &Ring, n: usize) -> Mat {
        let mut m = Mat::zero(ring, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = ring.one();
        }
        m
    }

    pub fn from_fn(ring: &Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Element) -> Mat {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Mat { ring: ring.clone(), rows, cols, entries }
    }

    /// Test helper: build a matrix from integer entries.
    pub fn from_i64(ring: &Ring, rows: &[&[i64]]) -> Mat {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        Mat::from_fn(ring, r, c, |i, j| ring.from_i64(rows[i][j]))
    }

    pub fn diag(ring: &Ring, entries: &[Element]) -> Mat {
        let n = entries.len();
        let mut m = Mat::zero(ring, n, n);
        for (i, e) in entries.iter().enumerate() {
            *m.at_mut(i, i) = e.clone();
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Element {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Element {
        &mut self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Element) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero(e))
    }

    fn same_ring(&self, other: &Mat) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.same_ring(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "add: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| self.ring.add(a, b)).collect();
        Mat::new(self.ring.clone(), self.rows, self.cols, entries)
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Mat {
        let entries = self.entries.iter().map(|a| self.ring.neg(a)).collect();
        Mat { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn matmul(&self, other: &Mat) -> Result<Mat> {
        self.same_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "matmul: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ring = &self.ring;
        let mut out = Mat::zero(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if ring.is_zero(b) {
                        continue;
                    }
                    let cur = out.at(i, j).clone();
                    *out.at_mut(i, j) = ring.add(&cur, &ring.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose X ↦ (X*)′. Anti-homomorphism for `matmul`.
    pub fn conj_transpose(&self) -> Mat {
        Mat::from_fn(&self.ring, self.cols, self.rows, |i, j| self.ring.conj(self.at(j, i)))
    }

    /// Right action of a scalar on one column: col_j ← col_j · a.
    pub fn scale_col_right(&mut self, j: usize, a: &Element) {
        for i in 0..self.rows {
            let v = self.ring.mul(self.at(i, j), a);
            self.set(i, j, v);
        }
    }

    /// Left scalar product a·X (a central in all intended uses).
    pub fn scale_left(&self, a: &Element) -> Mat {
        Mat::from_fn(&self.ring, self.rows, self.cols, |i, j| self.ring.mul(a, self.at(i, j)))
    }

    pub fn col(&self, j: usize) -> Mat {
        Mat::from_fn(&self.ring, self.rows, 1, |i, _| self.at(i, j).clone())
    }

    pub fn hcat(&self, other: &Mat) -> Result<Mat> {
        self.same_ring(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hcat: row counts differ".into()));
        }
        Ok(Mat::from_fn(&self.ring, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        }))
    }

    /// Columns `sel` extracted in order.
    pub fn select_cols(&self, sel: &[usize]) -> Mat {
        Mat::from_fn(&self.ring, self.rows, sel.len(), |i, j| self.at(i, sel[j]).clone())
    }

    /// Exact two-sided inverse by elimination with unit pivots.
    pub fn invert(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("invert: matrix not square".into()));
        }
        let ring = &self.ring;
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = Mat::identity(ring, n);
        for col in 0..n {
            // a unit pivot exists below whenever the residue matrix is invertible
            let pivot_row = (col..n).find(|&i| ring.is_unit(work.at(i, col))).ok_or(Error::NotInvertible)?;
            if pivot_row != col {
                for j in 0..n {
                    work.entries.swap(pivot_row * n + j, col * n + j);
                    inv.entries.swap(pivot_row * n + j, col * n + j);
                }
            }
            let pinv = ring.inv(work.at(col, col))?;
            for j in 0..n {
                *work.at_mut(col, j) = ring.mul(&pinv, work.at(col, j));
                *inv.at_mut(col, j) = ring.mul(&pinv, inv.at(col, j));
            }
            for i in 0..n {
                if i == col || ring.is_zero(work.at(i, col)) {
                    continue;
                }
                let factor = work.at(i, col).clone();
                for j in 0..n {
                    let w = ring.sub(work.at(i, j), &ring.mul(&factor, work.at(col, j)));
                    work.set(i, j, w);
                    let v = ring.sub(inv.at(i, j), &ring.mul(&factor, inv.at(col, j)));
                    inv.set(i, j, v);
                }
            }
        }
        debug_assert!(self.matmul(&inv).unwrap() == Mat::identity(ring, n));
        debug_assert!(inv.matmul(self).unwrap() == Mat::identity(ring, n));
        Ok(inv)
    }

    /// Determinant over a commutative ring: elimination with unit pivots,
    /// falling back to cofactor expansion when a column has no unit pivot.
    pub fn det(&self) -> Result<Element> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("det: matrix not square".into()));
        }
        if !self.ring.is_commutative() {
            return Err(Error::NonCommutativeRing);
        }
        Ok(det_rec(&self.ring, self))
    }

    /// Entry-wise projection into A/𝔯^k (the quotient ring `target`).
    pub fn reduced(&self, target: &Ring) -> Mat {
        Mat::from_fn(target, self.rows, self.cols, |i, j| self.ring.reduce_element(self.at(i, j), target))
    }

    /// Entry-wise canonical lift into the bigger ring `target`.
    pub fn lifted(&self, target: &Ring) -> Mat {
        Mat::from_fn(target, self.rows, self.cols, |i, j| target.lift_element(self.at(i, j), &self.ring))
    }

    /// Indices of columns whose residues are linearly independent, found by
    /// elimination over A/𝔯 (unit pivots only).
    pub fn residue_pivot_cols(&self) -> Vec<usize> {
        let ring = &self.ring;
        let mut work = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&i| ring.is_unit(work.at(i, col))) else {
                continue;
            };
            if pr != row {
                for j in 0..self.cols {
                    work.entries.swap(pr * self.cols + j, row * self.cols + j);
                }
            }
            let pinv = ring.inv(work.at(row, col)).expect("unit pivot");
            for j in 0..self.cols {
                *work.at_mut(row, j) = ring.mul(&pinv, work.at(row, j));
            }
            for i in 0..self.rows {
                if i == row {
                    continue;
                }
                let factor = work.at(i, col).clone();
                if ring.is_zero(&factor) {
                    continue;
                }
                for j in 0..self.cols {
                    let v = ring.sub(work.at(i, j), &ring.mul(&factor, work.at(row, j)));
                    work.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }
}

fn det_rec(ring: &Ring, m: &Mat) -> Element {
    let n = m.rows();
    if n == 0 {
        return ring.one();
    }
    if n == 1 {
        return m.at(0, 0).clone();
    }
    // elimination step if the first column has a unit, else cofactors
    if let Some(pr) = (0..n).find(|&i| ring.is_unit(m.at(i, 0))) {
        let mut work = m.clone();
        let mut sign_flip = false;
        if pr != 0 {
            for j in 0..n {
                work.entries.swap(pr * n + j, j);
            }
            sign_flip = true;
        }
        let pivot = work.at(0, 0).clone();
        let pinv = ring.inv(&pivot).expect("unit pivot");
        let mut minor = Mat::zero(ring, n - 1, n - 1);
        for i in 1..n {
            let factor = ring.mul(work.at(i, 0), &pinv);
            for j in 1..n {
                let v = ring.sub(work.at(i, j), &ring.mul(&factor, work.at(0, j)));
                minor.set(i - 1, j - 1, v);
            }
        }
        let mut d = ring.mul(&pivot, &det_rec(ring, &minor));
        if sign_flip {
            d = ring.neg(&d);
        }
        d
    } else {
        // cofactor expansion along the first column
        let mut acc = ring.zero();
        for i in 0..n {
            if ring.is_zero(m.at(i, 0)) {
                continue;
            }
            let minor = Mat::from_fn(ring, n - 1, n - 1, |r, c| {
                let rr = if r < i { r } else { r + 1 };
                m.at(rr, c + 1).clone()
            });
            let term = ring.mul(m.at(i, 0), &det_rec(ring, &minor));
            acc = if i % 2 == 0 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
        }
        acc
    }
}
