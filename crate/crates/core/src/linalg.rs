//! Exact linear algebra over the Gaussian rationals: dense matrices with
//! reduced row echelon form, kernels and solving, an incremental span
//! tracker that can rewrite vectors in terms of the originally inserted
//! basis, and sparse column-major operators for representation matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense row-major matrix with exact scalar entries.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Matrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<Scalar>,
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            n_rows: usize,
            n_cols: usize,
            data: Vec<Scalar>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.data.len() != raw.n_rows * raw.n_cols {
            return Err(serde::de::Error::custom(format!(
                "matrix data has {} entries, shape {}x{} needs {}",
                raw.data.len(),
                raw.n_rows,
                raw.n_cols,
                raw.n_rows * raw.n_cols
            )));
        }
        Ok(Matrix {
            n_rows: raw.n_rows,
            n_cols: raw.n_cols,
            data: raw.data,
        })
    }
}

impl Matrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Matrix {
            n_rows,
            n_cols,
            data: vec![Scalar::zero(); n_rows * n_cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        for r in &rows {
            if r.len() != n_cols {
                return Err(Error::DimensionMismatch {
                    expected: n_cols,
                    found: r.len(),
                });
            }
        }
        Ok(Matrix {
            n_rows,
            n_cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n_cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.n_cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn matmul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.n_cols != rhs.n_rows {
            return Err(Error::DimensionMismatch {
                expected: self.n_cols,
                found: rhs.n_rows,
            });
        }
        let mut out = Matrix::zeros(self.n_rows, rhs.n_cols);
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.n_cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let acc = out.get(i, j) + &(a * b);
                        out.set(i, j, acc);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.n_cols {
            return Err(Error::DimensionMismatch {
                expected: self.n_cols,
                found: v.len(),
            });
        }
        let mut out = vec![Scalar::zero(); self.n_rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += &(a * x);
                }
            }
        }
        Ok(out)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.n_cols != other.n_cols {
            return Err(Error::DimensionMismatch {
                expected: self.n_cols,
                found: other.n_cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            n_rows: self.n_rows + other.n_rows,
            n_cols: self.n_cols,
            data,
        })
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.n_cols {
            if r == self.n_rows {
                break;
            }
            let pivot_row = (r..self.n_rows).find(|&i| !self.get(i, c).is_zero());
            let Some(p) = pivot_row else { continue };
            self.swap_rows(r, p);
            let inv = self.get(r, c).inv().expect("pivot is nonzero");
            for j in c..self.n_cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.n_rows {
                if i != r && !self.get(i, c).is_zero() {
                    let f = self.get(i, c).clone();
                    for j in c..self.n_cols {
                        let v = self.get(i, j) - &(&f * self.get(r, j));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.n_cols {
            self.data
                .swap(a * self.n_cols + j, b * self.n_cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Basis of the null space, one vector per free column, in column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.n_cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut out = Vec::new();
        for free in 0..self.n_cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![Scalar::zero(); self.n_cols];
            vec[free] = Scalar::one();
            for (col, row) in pivot_set.iter().enumerate() {
                if let Some(r) = row {
                    vec[col] = -m.get(*r, free).clone();
                }
            }
            out.push(vec);
        }
        out
    }

    /// Exact solution of `self * x = rhs`, or None when inconsistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if rhs.len() != self.n_rows {
            return Err(Error::DimensionMismatch {
                expected: self.n_rows,
                found: rhs.len(),
            });
        }
        let mut aug = Matrix::zeros(self.n_rows, self.n_cols + 1);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.n_cols, rhs[i].clone());
        }
        let pivots = aug.rref_in_place();
        if pivots.contains(&self.n_cols) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(); self.n_cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = aug.get(row, self.n_cols).clone();
        }
        Ok(Some(x))
    }
}

/// Incrementally built subspace of Q(i)^n.
///
/// Tracks, alongside the echelonized rows, how each echelon row decomposes
/// over the raw vectors that were accepted, so any member of the span can
/// be rewritten exactly in the inserted basis.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    n_cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    // combos[i] expresses rows[i] over the accepted raw vectors.
    combos: Vec<Vec<Scalar>>,
    raw_count: usize,
}

impl SpanBuilder {
    pub fn new(n_cols: usize) -> Self {
        SpanBuilder {
            n_cols,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
            raw_count: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    fn reduce_tracking(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let mut residual = v.to_vec();
        let mut combo = vec![Scalar::zero(); self.raw_count];
        for (row_idx, &p) in self.pivots.iter().enumerate() {
            if residual[p].is_zero() {
                continue;
            }
            let f = residual[p].clone();
            for (j, r) in self.rows[row_idx].iter().enumerate() {
                if !r.is_zero() {
                    residual[j] = &residual[j] - &(&f * r);
                }
            }
            for (j, c) in self.combos[row_idx].iter().enumerate() {
                if !c.is_zero() {
                    combo[j] += &(&f * c);
                }
            }
        }
        (residual, combo)
    }

    /// Inserts a vector; returns true when it enlarged the span (the raw
    /// vector is then remembered as basis member `rank-1`).
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.n_cols);
        let (mut residual, combo) = self.reduce_tracking(v);
        let Some(pivot) = residual.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        // New raw basis vector: residual = v - combo . raw, so the combo of
        // the new echelon row over raw gets a 1 in the new slot.
        let mut new_combo = combo.iter().map(|c| -c).collect::<Vec<_>>();
        new_combo.push(Scalar::one());
        let inv = residual[pivot].inv().expect("pivot nonzero");
        for x in residual.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for c in new_combo.iter_mut() {
            if !c.is_zero() {
                *c *= &inv;
            }
        }
        // Back-eliminate the new pivot from existing rows.
        for row_idx in 0..self.rows.len() {
            if self.rows[row_idx][pivot].is_zero() {
                continue;
            }
            let f = self.rows[row_idx][pivot].clone();
            for j in 0..self.n_cols {
                if !residual[j].is_zero() {
                    self.rows[row_idx][j] = &self.rows[row_idx][j] - &(&f * &residual[j]);
                }
            }
            self.combos[row_idx].resize(self.raw_count + 1, Scalar::zero());
            for j in 0..=self.raw_count {
                if !new_combo[j].is_zero() {
                    self.combos[row_idx][j] =
                        &self.combos[row_idx][j] - &(&f * &new_combo[j]);
                }
            }
        }
        for c in self.combos.iter_mut() {
            c.resize(self.raw_count + 1, Scalar::zero());
        }
        // Keep rows ordered by pivot column.
        let at = self
            .pivots
            .iter()
            .position(|&p| p > pivot)
            .unwrap_or(self.pivots.len());
        self.rows.insert(at, residual);
        self.pivots.insert(at, pivot);
        self.combos.insert(at, new_combo);
        self.raw_count += 1;
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let (residual, _) = self.reduce_tracking(v);
        residual.iter().all(Scalar::is_zero)
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns carrying no pivot, in increasing order. They index a
    /// complement of the span: the quotient by the span reads off exactly
    /// these coordinates of `residual`.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.n_cols)
            .filter(|j| !self.pivots.contains(j))
            .collect()
    }

    /// The canonical coset representative of `v`: the remainder after
    /// eliminating every pivot coordinate. Zero exactly when `v` lies in
    /// the span.
    pub fn residual(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.reduce_tracking(v).0
    }

    /// Expresses `v` over the accepted raw basis, or None when outside the
    /// span. Coordinate `k` multiplies the `k`-th accepted vector.
    pub fn coords_in_raw(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let (residual, combo) = self.reduce_tracking(v);
        if residual.iter().all(Scalar::is_zero) {
            Some(combo)
        } else {
            None
        }
    }
}

/// Sparse column-major linear operator with exact entries. Column `j`
/// lists the nonzero `(row, value)` pairs of the image of basis vector `j`,
/// sorted by row.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SparseOp {
    n_rows: usize,
    cols: Vec<Vec<(usize, Scalar)>>,
}

impl SparseOp {
    pub fn zero(n_rows: usize, n_cols: usize) -> Self {
        SparseOp {
            n_rows,
            cols: vec![Vec::new(); n_cols],
        }
    }

    pub fn from_columns(n_rows: usize, cols: Vec<Vec<(usize, Scalar)>>) -> Self {
        for col in &cols {
            debug_assert!(col.windows(2).all(|w| w[0].0 < w[1].0));
            debug_assert!(col.iter().all(|(r, v)| *r < n_rows && !v.is_zero()));
        }
        SparseOp { n_rows, cols }
    }

    pub fn diagonal(entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        let cols = entries
            .into_iter()
            .enumerate()
            .map(|(j, v)| if v.is_zero() { Vec::new() } else { vec![(j, v)] })
            .collect();
        SparseOp { n_rows: n, cols }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, Scalar)] {
        &self.cols[j]
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn apply_dense(&self, v: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(v.len(), self.n_cols());
        let mut out = vec![Scalar::zero(); self.n_rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, a) in &self.cols[j] {
                out[*i] += &(a * x);
            }
        }
        out
    }

    /// Composition `self . rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &SparseOp) -> SparseOp {
        debug_assert_eq!(self.n_cols(), rhs.n_rows);
        let mut cols = Vec::with_capacity(rhs.n_cols());
        for j in 0..rhs.n_cols() {
            let mut acc: Vec<Scalar> = vec![Scalar::zero(); self.n_rows];
            for (k, b) in rhs.column(j) {
                for (i, a) in &self.cols[*k] {
                    acc[*i] += &(a * b);
                }
            }
            cols.push(compress(&acc));
        }
        SparseOp {
            n_rows: self.n_rows,
            cols,
        }
    }

    pub fn sub(&self, rhs: &SparseOp) -> SparseOp {
        debug_assert_eq!(self.n_rows, rhs.n_rows);
        debug_assert_eq!(self.n_cols(), rhs.n_cols());
        let mut cols = Vec::with_capacity(self.n_cols());
        for j in 0..self.n_cols() {
            let mut acc: Vec<Scalar> = vec![Scalar::zero(); self.n_rows];
            for (i, a) in &self.cols[j] {
                acc[*i] += a;
            }
            for (i, a) in rhs.column(j) {
                acc[*i] -= a;
            }
            cols.push(compress(&acc));
        }
        SparseOp {
            n_rows: self.n_rows,
            cols,
        }
    }

    pub fn scale(&self, k: &Scalar) -> SparseOp {
        if k.is_zero() {
            return SparseOp::zero(self.n_rows, self.n_cols());
        }
        SparseOp {
            n_rows: self.n_rows,
            cols: self
                .cols
                .iter()
                .map(|col| col.iter().map(|(i, v)| (*i, v * k)).collect())
                .collect(),
        }
    }

    pub fn add(&self, rhs: &SparseOp) -> SparseOp {
        self.sub(&rhs.scale(&Scalar::from_int(-1)))
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.n_rows, self.n_cols());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                m.set(*i, j, v.clone());
            }
        }
        m
    }
}

fn compress(dense: &[Scalar]) -> Vec<(usize, Scalar)> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}
