//! Dense matrices over Q(zeta_n) with exact elimination.
//!
//! Rank and echelon forms use fraction-free (Bareiss) elimination: every
//! division is by the previous pivot and is exact in the field, which keeps
//! intermediate coefficients determinant-sized instead of letting naive
//! rational elimination blow them up. Kernel extraction back-substitutes
//! from the echelon form.

use std::fmt;

use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    order: usize,
    rows: usize,
    cols: usize,
    entries: Vec<CycloNum>,
}

impl Matrix {
    pub fn zero(order: usize, rows: usize, cols: usize) -> Self {
        Matrix {
            order,
            rows,
            cols,
            entries: vec![CycloNum::zero(order); rows * cols],
        }
    }

    pub fn identity(order: usize, dim: usize) -> Self {
        let mut m = Self::zero(order, dim, dim);
        for i in 0..dim {
            m.set(i, i, CycloNum::one(order));
        }
        m
    }

    pub fn from_fn(
        order: usize,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> CycloNum,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let e = f(r, c);
                assert_eq!(e.order(), order, "entry order mismatch");
                entries.push(e);
            }
        }
        Matrix {
            order,
            rows,
            cols,
            entries,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &CycloNum {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycloNum) {
        assert_eq!(v.order(), self.order, "entry order mismatch");
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CycloNum::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.at(r, c).is_one()
                    } else {
                        self.at(r, c).is_zero()
                    }
                })
            })
    }

    fn same_order(&self, rhs: &Self) -> Result<()> {
        if self.order == rhs.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.order,
                right: rhs.order,
            })
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.same_order(rhs)?;
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::InvalidArgument(format!(
                "shape mismatch: {}x{} + {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Matrix {
            order: self.order,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.scale(&CycloNum::from_int(rhs.order, -1)))
    }

    pub fn scale(&self, s: &CycloNum) -> Self {
        assert_eq!(s.order(), self.order, "scalar order mismatch");
        Matrix {
            order: self.order,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    /// Matrix product, skipping zero entries of the left factor. The
    /// matrices here (diagonal g, near-subdiagonal h, projectors) are
    /// sparse, so the skip matters.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.same_order(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::InvalidArgument(format!(
                "shape mismatch: {}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zero(self.order, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(r, c) + &(a * b);
                    out.set(r, c, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument("pow of non-square matrix".into()));
        }
        let mut acc = Self::identity(self.order, self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Kronecker product: entry ((i*rB+k), (j*cB+l)) = A[i,j] * B[k,l].
    pub fn kron(&self, rhs: &Self) -> Result<Self> {
        self.same_order(rhs)?;
        let mut out = Self::zero(self.order, self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = rhs.at(k, l);
                        if !b.is_zero() {
                            out.set(i * rhs.rows + k, j * rhs.cols + l, a * b);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn block_diag(&self, rhs: &Self) -> Result<Self> {
        self.same_order(rhs)?;
        let mut out = Self::zero(self.order, self.rows + rhs.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.at(r, c).clone());
            }
        }
        for r in 0..rhs.rows {
            for c in 0..rhs.cols {
                out.set(self.rows + r, self.cols + c, rhs.at(r, c).clone());
            }
        }
        Ok(out)
    }

    /// Horizontal concatenation [self | rhs].
    pub fn hstack(&self, rhs: &Self) -> Result<Self> {
        self.same_order(rhs)?;
        if self.rows != rhs.rows {
            return Err(Error::InvalidArgument("hstack row mismatch".into()));
        }
        let mut out = Self::zero(self.order, self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.at(r, c).clone());
            }
            for c in 0..rhs.cols {
                out.set(r, self.cols + c, rhs.at(r, c).clone());
            }
        }
        Ok(out)
    }

    pub fn column(&self, c: usize) -> Vec<CycloNum> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn from_columns(order: usize, rows: usize, cols: Vec<Vec<CycloNum>>) -> Self {
        let n = cols.len();
        Matrix::from_fn(order, rows, n, |r, c| cols[c][r].clone())
    }

    /// Fraction-free row echelon form; returns the echelon matrix and the
    /// pivot columns. Divisions are by the previous pivot only (Bareiss).
    pub fn echelon(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prev_pivot = CycloNum::one(self.order);
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    let a = m.at(row, c).clone();
                    let b = m.at(pr, c).clone();
                    m.set(row, c, b);
                    m.set(pr, c, a);
                }
            }
            let pivot = m.at(row, col).clone();
            let prev_inv = prev_pivot.inv().expect("previous pivot is nonzero");
            for r in row + 1..m.rows {
                let factor = m.at(r, col).clone();
                if factor.is_zero() {
                    // Still rescale by pivot/prev_pivot to keep the Bareiss
                    // invariant for later steps.
                    for c in col..m.cols {
                        if !m.at(r, c).is_zero() {
                            let v = &(&pivot * m.at(r, c)) * &prev_inv;
                            m.set(r, c, v);
                        }
                    }
                    continue;
                }
                for c in col..m.cols {
                    // Bareiss step: (pivot*a[r][c] - factor*a[row][c]) / prev_pivot
                    let num = &(&pivot * m.at(r, c)) - &(&factor * m.at(row, c));
                    m.set(r, c, &num * &prev_inv);
                }
            }
            pivots.push(col);
            prev_pivot = pivot;
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Basis of the right null space, as matrix columns (possibly 0 columns).
    pub fn kernel_basis(&self) -> Matrix {
        let (ech, pivots) = self.echelon();
        let rank = pivots.len();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![CycloNum::zero(self.order); self.cols];
            v[fc] = CycloNum::one(self.order);
            // Back-substitute through the echelon rows, bottom-up.
            for i in (0..rank).rev() {
                let pc = pivots[i];
                if pc >= fc {
                    continue;
                }
                let mut s = CycloNum::zero(self.order);
                for (c, vc) in v.iter().enumerate().skip(pc + 1) {
                    if !vc.is_zero() && !ech.at(i, c).is_zero() {
                        s = &s + &(ech.at(i, c) * vc);
                    }
                }
                let pivot_inv = ech.at(i, pc).inv().expect("pivot is nonzero");
                v[pc] = &(-&s) * &pivot_inv;
            }
            basis.push(v);
        }
        Matrix::from_columns(self.order, self.cols, basis)
    }

    /// Basis of the column space: the pivot columns of the matrix itself.
    pub fn column_space_basis(&self) -> Matrix {
        let (_, pivots) = self.echelon();
        let cols = pivots.iter().map(|&c| self.column(c)).collect();
        Matrix::from_columns(self.order, self.rows, cols)
    }

    /// Solves self * X = rhs exactly; `None` if inconsistent. When the
    /// solution is not unique an arbitrary representative is returned.
    pub fn solve(&self, rhs: &Self) -> Result<Option<Matrix>> {
        self.same_order(rhs)?;
        if self.rows != rhs.rows {
            return Err(Error::InvalidArgument("solve row mismatch".into()));
        }
        let (ech, pivots) = self.hstack(rhs)?.echelon();
        // Any pivot in the rhs block means the system is inconsistent.
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let rank = pivots.len();
        let mut sol = Matrix::zero(self.order, self.cols, rhs.cols);
        for out_col in 0..rhs.cols {
            for i in (0..rank).rev() {
                let pc = pivots[i];
                let mut s = ech.at(i, self.cols + out_col).clone();
                for c in pc + 1..self.cols {
                    if !ech.at(i, c).is_zero() && !sol.at(c, out_col).is_zero() {
                        s = &s - &(ech.at(i, c) * sol.at(c, out_col));
                    }
                }
                let pivot_inv = ech.at(i, pc).inv().expect("pivot is nonzero");
                sol.set(pc, out_col, &s * &pivot_inv);
            }
        }
        Ok(Some(sol))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::primitive_root;

    fn m_from_ints(order: usize, rows: usize, cols: usize, vals: &[i64]) -> Matrix {
        Matrix::from_fn(order, rows, cols, |r, c| {
            CycloNum::from_int(order, vals[r * cols + c])
        })
    }

    #[test]
    fn rank_of_integer_matrices() {
        let a = m_from_ints(3, 3, 3, &[1, 2, 3, 2, 4, 6, 1, 0, 1]);
        assert_eq!(a.rank(), 2);
        assert_eq!(Matrix::identity(3, 4).rank(), 4);
        assert_eq!(Matrix::zero(3, 2, 5).rank(), 0);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = m_from_ints(4, 2, 4, &[1, 2, 3, 4, 2, 4, 6, 8]);
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 3);
        assert!(a.mul(&k).unwrap().is_zero());
        assert_eq!(a.rank() + k.cols(), a.cols());
    }

    #[test]
    fn kernel_over_cyclotomic_entries() {
        // Rows (1, q, q^2) and (1, q^2, q) over Q(zeta_3): rank 2, kernel dim 1.
        let q = primitive_root(3).unwrap();
        let a = Matrix::from_fn(3, 2, 3, |r, c| q.pow(((r + 1) * c % 3) as i64).unwrap());
        assert_eq!(a.rank(), 2);
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn column_space_has_rank_many_columns() {
        let a = m_from_ints(5, 3, 4, &[1, 0, 1, 2, 0, 1, 1, 3, 1, 1, 2, 5]);
        let b = a.column_space_basis();
        assert_eq!(b.cols(), a.rank());
        assert_eq!(b.rank(), b.cols());
        // The basis is drawn from the original columns, so appending it
        // cannot grow the span.
        assert_eq!(a.hstack(&b).unwrap().rank(), a.rank());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m_from_ints(3, 3, 2, &[1, 0, 0, 1, 1, 1]);
        let b = m_from_ints(3, 3, 1, &[2, 5, 7]);
        let x = a.solve(&b).unwrap().expect("consistent");
        assert_eq!(a.mul(&x).unwrap(), b);
        let bad = m_from_ints(3, 3, 1, &[2, 5, 8]);
        assert!(a.solve(&bad).unwrap().is_none());
    }

    #[test]
    fn kron_acts_blockwise() {
        let a = m_from_ints(2, 2, 2, &[1, 1, 0, 1]);
        let b = m_from_ints(2, 2, 2, &[2, 0, 0, 3]);
        let k = a.kron(&b).unwrap();
        assert_eq!(k.rows(), 4);
        assert_eq!(*k.at(0, 0), CycloNum::from_int(2, 2));
        assert_eq!(*k.at(1, 3), CycloNum::from_int(2, 3));
        assert_eq!(*k.at(0, 2), CycloNum::from_int(2, 2));
    }

    #[test]
    fn order_mismatch_is_rejected() {
        let a = Matrix::identity(2, 2);
        let b = Matrix::identity(3, 2);
        assert!(matches!(a.mul(&b), Err(Error::OrderMismatch { .. })));
        assert!(matches!(a.add(&b), Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn zero_dimensional_matrices_work() {
        let e = Matrix::zero(3, 0, 0);
        assert_eq!(e.rank(), 0);
        assert!(e.mul(&e).unwrap().is_zero());
        let a = Matrix::identity(3, 2);
        let s = a.block_diag(&e).unwrap();
        assert_eq!(s.rows(), 2);
        assert_eq!(s, a);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]
            #[test]
            fn rank_kernel_dimension_formula(
                vals in proptest::collection::vec(-4i64..=4, 20),
                rows in 1usize..=5,
            ) {
                let cols = 20 / rows;
                let a = m_from_ints(4, rows, cols, &vals[..rows * cols]);
                let k = a.kernel_basis();
                prop_assert_eq!(a.rank() + k.cols(), cols);
                if k.cols() > 0 {
                    prop_assert!(a.mul(&k).unwrap().is_zero());
                    // kernel basis columns are independent
                    prop_assert_eq!(k.rank(), k.cols());
                }
            }
        }
    }
}
