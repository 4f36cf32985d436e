//! Integer lattice vectors (degrees in the Z^n grading) and small exact
//! integer matrices (coordinate changes, triangular decompositions).

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of Z^n. Ordering is lexicographic, which fixes one canonical
/// iteration order for every map keyed by degrees.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn zero(n: usize) -> Self {
        LatticeVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn dot(&self, other: &Self) -> i64 {
        debug_assert_eq!(self.n(), other.n());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, k: i64) -> Self {
        LatticeVector(self.0.iter().map(|c| c * k).collect())
    }

    /// True when every coordinate is at least `k`.
    pub fn all_at_least(&self, k: i64) -> bool {
        self.0.iter().all(|&c| c >= k)
    }

    /// True when every coordinate lies in `[-w, w]`.
    pub fn in_window(&self, w: i64) -> bool {
        self.0.iter().all(|&c| c.abs() <= w)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

impl Add<&LatticeVector> for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.n(), rhs.n());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&LatticeVector> for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.n(), rhs.n());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| -c).collect())
    }
}

/// All points of `[-w, w]^n` in lexicographic order.
pub fn window_points(n: usize, w: i64) -> Vec<LatticeVector> {
    assert!(w >= 0);
    let mut out = Vec::new();
    let mut cur = vec![-w; n];
    loop {
        out.push(LatticeVector(cur.clone()));
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < w {
                cur[k] += 1;
                for c in cur.iter_mut().skip(k + 1) {
                    *c = -w;
                }
                break;
            }
        }
    }
}

/// A small dense integer matrix, row-major. Used for coordinate changes
/// (unimodular substitutions) and triangular-decomposition bases.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        IntMatrix {
            n_rows,
            n_cols,
            data: vec![0; n_rows * n_cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        for r in rows {
            if r.len() != n_cols {
                return Err(Error::DimensionMismatch {
                    expected: n_cols,
                    found: r.len(),
                });
            }
        }
        Ok(IntMatrix {
            n_rows,
            n_cols,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[LatticeVector]) -> Result<Self> {
        let n_rows = cols.first().map_or(0, |c| c.n());
        let mut m = IntMatrix::zeros(n_rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.n() != n_rows {
                return Err(Error::DimensionMismatch {
                    expected: n_rows,
                    found: c.n(),
                });
            }
            for i in 0..n_rows {
                m.set(i, j, c.coords()[i]);
            }
        }
        Ok(m)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n_cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n_cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<i64> {
        (0..self.n_cols).map(|j| self.get(i, j)).collect()
    }

    pub fn column(&self, j: usize) -> LatticeVector {
        LatticeVector((0..self.n_rows).map(|i| self.get(i, j)).collect())
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.n_cols, self.n_rows);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.n_cols != rhs.n_rows {
            return Err(Error::DimensionMismatch {
                expected: self.n_cols,
                found: rhs.n_rows,
            });
        }
        let mut out = IntMatrix::zeros(self.n_rows, rhs.n_cols);
        for i in 0..self.n_rows {
            for j in 0..rhs.n_cols {
                let mut acc: i64 = 0;
                for k in 0..self.n_cols {
                    acc += self.get(i, k) * rhs.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        if self.n_cols != v.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n_cols,
                found: v.n(),
            });
        }
        let mut out = vec![0i64; self.n_rows];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..self.n_cols).map(|j| self.get(i, j) * v.coords()[j]).sum();
        }
        Ok(LatticeVector(out))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination over BigInt.
    pub fn det(&self) -> Result<BigInt> {
        if self.n_rows != self.n_cols {
            return Err(Error::DimensionMismatch {
                expected: self.n_rows,
                found: self.n_cols,
            });
        }
        let n = self.n_rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(self.get(i, j))).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let swap = (k + 1..n).find(|&i| !a[i][k].is_zero());
                match swap {
                    None => return Ok(BigInt::zero()),
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(sign * a[n - 1][n - 1].clone())
    }

    pub fn is_unimodular(&self) -> bool {
        self.n_rows == self.n_cols
            && self
                .det()
                .map(|d| d == BigInt::one() || d == -BigInt::one())
                .unwrap_or(false)
    }

    /// Exact inverse of a unimodular matrix; the inverse is again integral.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        let det = self.det()?;
        if !det.is_one() && det != -BigInt::one() {
            return Err(Error::NotUnimodular { det: det.to_string() });
        }
        let n = self.n_rows;
        // Adjugate via cofactors; n stays small (coordinate dimension).
        let mut inv = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j)?;
                let mut c = minor.det()?;
                if (i + j) % 2 == 1 {
                    c = -c;
                }
                let val = if det.is_one() { c } else { -c };
                let as_i64 = i64::try_from(&val)
                    .map_err(|_| Error::Internal("inverse entry exceeds i64".into()))?;
                inv.set(j, i, as_i64);
            }
        }
        Ok(inv)
    }

    fn minor(&self, drop_row: usize, drop_col: usize) -> Result<IntMatrix> {
        let rows: Vec<Vec<i64>> = (0..self.n_rows)
            .filter(|&i| i != drop_row)
            .map(|i| {
                (0..self.n_cols)
                    .filter(|&j| j != drop_col)
                    .map(|j| self.get(i, j))
                    .collect()
            })
            .collect();
        IntMatrix::from_rows(&rows)
    }
}

/// Extended gcd: returns `(g, x, y)` with `g = gcd(a, b) >= 0` and
/// `a*x + b*y = g`.
pub fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            return (-a, -1, 0);
        }
        return (a, 1, 0);
    }
    let (g, x1, y1) = extended_gcd(b, a.rem_euclid(b));
    (g, y1, x1 - (a.div_euclid(b)) * y1)
}

/// Finds a unimodular `U` with `k * U = (g, 0, ..., 0)` where `g > 0`
/// generates the image lattice `(k | Z^n)`. Column 0 of `U` maps onto the
/// generator; the remaining columns span the orthogonal sublattice
/// `{m : (k|m) = 0}`.
pub fn column_reduce_to_gcd(k: &[i64]) -> Result<IntMatrix> {
    let n = k.len();
    if n == 0 || k.iter().all(|&c| c == 0) {
        return Err(Error::ZeroVector("orthogonality vector must be nonzero".into()));
    }
    let mut u = IntMatrix::identity(n);
    let mut head = k[0];
    for j in 1..n {
        let kj = k[j];
        if kj == 0 {
            continue;
        }
        let (g, x, y) = extended_gcd(head, kj);
        debug_assert!(g > 0);
        let (p, q) = (head / g, kj / g);
        // The 2x2 block [[x, -q], [y, p]] has determinant xp + yq = 1.
        for i in 0..n {
            let c0 = u.get(i, 0);
            let cj = u.get(i, j);
            u.set(i, 0, x * c0 + y * cj);
            u.set(i, j, -q * c0 + p * cj);
        }
        head = g;
    }
    if head < 0 {
        for i in 0..n {
            let c0 = u.get(i, 0);
            u.set(i, 0, -c0);
        }
        head = -head;
    }
    debug_assert!(head > 0);
    debug_assert!(u.is_unimodular());
    Ok(u)
}
