//! Finite-dimensional irreducible `gl_n` modules with exact matrices.
//!
//! A dominant integral weight is given by its marks `(a_1, ..., a_{n-1})`
//! on the fundamental weights. The module is realized concretely: the
//! `k`-th fundamental is the `k`-th exterior power of the natural module,
//! and the general case is carved out of a tensor product of fundamentals
//! as the cyclic span of the top weight vector under the simple lowering
//! operators, one tensor factor at a time. The central element `I` of
//! `gl_n` is made to act by a prescribed scalar `c` by shifting the
//! diagonal operators by `(c - |lambda|)/n`, where `|lambda|` is the box
//! count of the realization, so `sum_i E_ii = c` holds on the nose.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::linalg::{SparseOp, SpanBuilder};
use crate::scalar::{CoeffVec, Scalar};

/// Weyl dimension of the irreducible `sl_n` module with the given marks.
///
/// With the partition `mu_i = a_i + ... + a_{n-1}` (and `mu_n = 0`) the
/// dimension is the exact product over `i < j` of
/// `(mu_i - mu_j + j - i) / (j - i)`.
pub fn weyl_dim(n: usize, marks: &[u64]) -> Result<BigUint> {
    if n == 0 || marks.len() + 1 != n {
        return Err(Error::InvalidWeight(format!(
            "expected {} marks for n={}, found {}",
            n.saturating_sub(1),
            n,
            marks.len()
        )));
    }
    let mut mu = vec![0u64; n];
    for i in (0..n - 1).rev() {
        mu[i] = mu[i + 1] + marks[i];
    }
    let mut numer = BigUint::one();
    let mut denom = BigUint::one();
    for i in 0..n {
        for j in i + 1..n {
            numer *= BigUint::from(mu[i] - mu[j] + (j - i) as u64);
            denom *= BigUint::from((j - i) as u64);
        }
    }
    debug_assert!((&numer % &denom).is_zero());
    Ok(numer / denom)
}

/// Number of boxes in the realization: `|lambda| = sum_k k * a_k`. This is
/// the trace weight of the tensor model, used for the central shift.
pub fn box_count(marks: &[u64]) -> u64 {
    marks
        .iter()
        .enumerate()
        .map(|(k, a)| (k as u64 + 1) * a)
        .sum()
}

/// An irreducible `gl_n` module with exact operator matrices. `ops[i*n+j]`
/// is `E_ij`; diagonals already include the central shift so that
/// `sum_i E_ii = c` identically.
#[derive(Clone, Debug)]
pub struct Irrep {
    n: usize,
    marks: Vec<u64>,
    central: Scalar,
    dim: usize,
    weights: Vec<LatticeVector>,
    ops: Vec<SparseOp>,
    hw_index: usize,
}

/// Intermediate representation during the tensor construction: natural
/// (unshifted) diagonal, integral weights.
struct BuildRep {
    n: usize,
    dim: usize,
    weights: Vec<LatticeVector>,
    ops: Vec<SparseOp>,
}

impl BuildRep {
    fn trivial(n: usize) -> Self {
        BuildRep {
            n,
            dim: 1,
            weights: vec![LatticeVector::zero(n)],
            ops: vec![SparseOp::zero(1, 1); n * n],
        }
    }
}

/// The `k`-th exterior power of the natural module, on the lexicographic
/// basis of `k`-subsets of `{0, ..., n-1}`.
fn fundamental(n: usize, k: usize) -> Result<BuildRep> {
    if k == 0 || k >= n {
        return Err(Error::InvalidWeight(format!(
            "fundamental index {k} outside 1..={}",
            n - 1
        )));
    }
    let subsets = k_subsets(n, k);
    let index: HashMap<Vec<usize>, usize> = subsets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    let dim = subsets.len();
    let weights: Vec<LatticeVector> = subsets
        .iter()
        .map(|s| {
            let mut w = vec![0i64; n];
            for &x in s {
                w[x] = 1;
            }
            LatticeVector(w)
        })
        .collect();
    let mut ops = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                let diag = weights
                    .iter()
                    .map(|w| Scalar::from_int(w.coords()[i]))
                    .collect();
                ops.push(SparseOp::diagonal(diag));
                continue;
            }
            let mut cols = Vec::with_capacity(dim);
            for s in &subsets {
                if !s.contains(&j) || s.contains(&i) {
                    cols.push(Vec::new());
                    continue;
                }
                let mut target: Vec<usize> =
                    s.iter().copied().filter(|&x| x != j).collect();
                target.push(i);
                target.sort_unstable();
                let (lo, hi) = (i.min(j), i.max(j));
                let between = s.iter().filter(|&&x| lo < x && x < hi).count();
                let sign = if between % 2 == 0 { 1 } else { -1 };
                cols.push(vec![(index[&target], Scalar::from_int(sign))]);
            }
            ops.push(SparseOp::from_columns(dim, cols));
        }
    }
    Ok(BuildRep {
        n,
        dim,
        weights,
        ops,
    })
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(n, k, x + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// Per-weight-class bookkeeping inside one tensor step. Vectors stay inside
/// a single class because every `E_ij` is weight-homogeneous.
struct ClassState {
    members: Vec<usize>,
    member_pos: HashMap<usize, usize>,
    span: SpanBuilder,
    raw_globals: Vec<usize>,
}

/// Cyclic span of `v_hw (x) w_hw` inside `cur (x) fund`, extracted by
/// breadth-first closure under the simple lowerings `E_{j+1, j}`.
fn extend(cur: &BuildRep, fund: &BuildRep) -> Result<BuildRep> {
    let n = cur.n;
    let fd = fund.dim;
    let ambient = cur.dim * fd;

    let ambient_weight = |idx: usize| -> LatticeVector {
        &cur.weights[idx / fd] + &fund.weights[idx % fd]
    };
    let mut classes: BTreeMap<LatticeVector, ClassState> = BTreeMap::new();
    for idx in 0..ambient {
        let w = ambient_weight(idx);
        let entry = classes.entry(w).or_insert_with(|| ClassState {
            members: Vec::new(),
            member_pos: HashMap::new(),
            span: SpanBuilder::new(0),
            raw_globals: Vec::new(),
        });
        entry.member_pos.insert(idx, entry.members.len());
        entry.members.push(idx);
    }
    for state in classes.values_mut() {
        state.span = SpanBuilder::new(state.members.len());
    }

    // Applies ambient E_ij to a single-class vector; the image again lives
    // in one class (weight shifted by e_i - e_j).
    let apply = |classes: &BTreeMap<LatticeVector, ClassState>,
                 i: usize,
                 j: usize,
                 class_key: &LatticeVector,
                 coords: &[Scalar]|
     -> Option<(LatticeVector, Vec<Scalar>)> {
        let mut target_key = class_key.clone();
        target_key.0[i] += 1;
        target_key.0[j] -= 1;
        let target = classes.get(&target_key)?;
        let source = &classes[class_key];
        let op_cur = &cur.ops[i * n + j];
        let op_fund = &fund.ops[i * n + j];
        let mut acc = vec![Scalar::zero(); target.members.len()];
        let mut any = false;
        for (pos, x) in coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let idx = source.members[pos];
            let (a, b) = (idx / fd, idx % fd);
            for (a2, v) in op_cur.column(a) {
                let tpos = target.member_pos[&(a2 * fd + b)];
                acc[tpos] += &(v * x);
                any = true;
            }
            for (b2, v) in op_fund.column(b) {
                let tpos = target.member_pos[&(a * fd + b2)];
                acc[tpos] += &(v * x);
                any = true;
            }
        }
        if !any || acc.iter().all(Scalar::is_zero) {
            return None;
        }
        Some((target_key, acc))
    };

    // Seed: both factors keep their top vector at index 0.
    let hw_key = ambient_weight(0);
    let mut extracted: Vec<(LatticeVector, Vec<Scalar>)> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    {
        let state = classes.get_mut(&hw_key).unwrap();
        let mut coords = vec![Scalar::zero(); state.members.len()];
        coords[state.member_pos[&0]] = Scalar::one();
        let fresh = state.span.insert(&coords);
        debug_assert!(fresh);
        state.raw_globals.push(0);
        extracted.push((hw_key, coords));
        queue.push_back(0);
    }
    while let Some(g) = queue.pop_front() {
        for j in 0..n - 1 {
            let (class_key, coords) = extracted[g].clone();
            let Some((tkey, tcoords)) = apply(&classes, j + 1, j, &class_key, &coords) else {
                continue;
            };
            let state = classes.get_mut(&tkey).unwrap();
            if state.span.insert(&tcoords) {
                let gid = extracted.len();
                state.raw_globals.push(gid);
                extracted.push((tkey, tcoords));
                queue.push_back(gid);
            }
        }
    }

    let dim = extracted.len();
    let weights: Vec<LatticeVector> = extracted.iter().map(|(k, _)| k.clone()).collect();
    let mut ops = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                let diag = weights
                    .iter()
                    .map(|w| Scalar::from_int(w.coords()[i]))
                    .collect();
                ops.push(SparseOp::diagonal(diag));
                continue;
            }
            let mut cols = Vec::with_capacity(dim);
            for (class_key, coords) in &extracted {
                match apply(&classes, i, j, class_key, coords) {
                    None => cols.push(Vec::new()),
                    Some((tkey, tcoords)) => {
                        let state = &classes[&tkey];
                        let raw = state.span.coords_in_raw(&tcoords).ok_or_else(|| {
                            Error::Internal(
                                "cyclic span not closed under a raising operator".into(),
                            )
                        })?;
                        let mut col: Vec<(usize, Scalar)> = raw
                            .into_iter()
                            .enumerate()
                            .filter(|(_, v)| !v.is_zero())
                            .map(|(pos, v)| (state.raw_globals[pos], v))
                            .collect();
                        col.sort_by_key(|(row, _)| *row);
                        cols.push(col);
                    }
                }
            }
            ops.push(SparseOp::from_columns(dim, cols));
        }
    }
    Ok(BuildRep {
        n,
        dim,
        weights,
        ops,
    })
}

/// Builds the irreducible with the given marks and central scalar `c`.
/// `dim_cap` bounds the Weyl dimension before any matrix work happens.
pub fn build_irrep(n: usize, marks: &[u64], c: Scalar, dim_cap: usize) -> Result<Irrep> {
    let expected = weyl_dim(n, marks)?;
    match expected.to_usize() {
        Some(d) if d <= dim_cap => {}
        _ => {
            return Err(Error::DimensionCap {
                dim: expected.to_string(),
                cap: dim_cap,
            })
        }
    }
    let mut rep = BuildRep::trivial(n);
    for (k, &count) in marks.iter().enumerate() {
        for _ in 0..count {
            let f = fundamental(n, k + 1)?;
            rep = extend(&rep, &f)?;
        }
    }
    if BigUint::from(rep.dim) != expected {
        return Err(Error::Internal(format!(
            "constructed dimension {} differs from Weyl dimension {}",
            rep.dim, expected
        )));
    }
    // Central shift: make sum_i E_ii act by c exactly.
    let boxes = Scalar::from_int(box_count(marks) as i64);
    let shift = (&(&c - &boxes) * &Scalar::from_fraction(1, n as i64)?).clone();
    let mut ops = rep.ops;
    if !shift.is_zero() {
        for i in 0..n {
            let idx = i * n + i;
            let shifted = ops[idx].add(&SparseOp::diagonal(vec![shift.clone(); rep.dim]));
            ops[idx] = shifted;
        }
    }
    Ok(Irrep {
        n,
        marks: marks.to_vec(),
        central: c,
        dim: rep.dim,
        weights: rep.weights,
        ops,
        hw_index: 0,
    })
}

impl Irrep {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn marks(&self) -> &[u64] {
        &self.marks
    }

    pub fn central(&self) -> &Scalar {
        &self.central
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hw_index(&self) -> usize {
        self.hw_index
    }

    /// Natural integral weights of the tensor realization; `E_ii` acts on
    /// basis vector `b` by `weights[b][i] + (c - |lambda|)/n`.
    pub fn weights(&self) -> &[LatticeVector] {
        &self.weights
    }

    pub fn e(&self, i: usize, j: usize) -> &SparseOp {
        &self.ops[i * self.n + j]
    }

    /// The operator `sum_{i,j} r_i u_j E_ij`, the image of the rank-one
    /// matrix `r u^T` under the representation (central part included).
    pub fn matrix_of_rank_one(&self, r: &LatticeVector, u: &CoeffVec) -> Result<SparseOp> {
        if r.n() != self.n || u.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: r.n().max(u.len()),
            });
        }
        let mut acc: Vec<Vec<Scalar>> = vec![vec![Scalar::zero(); self.dim]; self.dim];
        for i in 0..self.n {
            let ri = r.coords()[i];
            if ri == 0 {
                continue;
            }
            for j in 0..self.n {
                if u[j].is_zero() {
                    continue;
                }
                let f = u[j].scale_int(ri);
                let op = self.e(i, j);
                for b in 0..self.dim {
                    for (row, v) in op.column(b) {
                        acc[b][*row] += &(v * &f);
                    }
                }
            }
        }
        let cols = acc
            .into_iter()
            .map(|dense| {
                dense
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        Ok(SparseOp::from_columns(self.dim, cols))
    }

    /// Applies `E_ij` to the single basis vector `b`.
    pub fn apply_e(&self, i: usize, j: usize, b: usize) -> &[(usize, Scalar)] {
        self.e(i, j).column(b)
    }

    /// Exhaustive structural checks: the commutation relations
    /// `[E_ij, E_kl] = d_jk E_il - d_li E_kj`, the central identity
    /// `sum_i E_ii = c`, the diagonal/weight consistency, and annihilation
    /// of the top vector by every raising operator.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        let shift = self.central_shift();
        for b in 0..self.dim {
            for i in 0..n {
                let expect = Scalar::from_int(self.weights[b].coords()[i]) + &shift;
                let col = self.e(i, i).column(b);
                let ok = match (col.len(), expect.is_zero()) {
                    (0, true) => true,
                    (1, false) => col[0].0 == b && col[0].1 == expect,
                    _ => false,
                };
                if !ok {
                    return Err(Error::Internal(format!(
                        "diagonal action of E_{}{} disagrees with weight of basis {}",
                        i + 1,
                        i + 1,
                        b
                    )));
                }
            }
        }
        let mut central = SparseOp::zero(self.dim, self.dim);
        for i in 0..n {
            central = central.add(self.e(i, i));
        }
        let expect_central =
            SparseOp::diagonal(vec![self.central.clone(); self.dim]);
        if central != expect_central {
            return Err(Error::Internal("central element acts incorrectly".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if i < j && !self.e(i, j).column(self.hw_index).is_empty() {
                    return Err(Error::Internal(format!(
                        "raising operator E_{}{} does not kill the top vector",
                        i + 1,
                        j + 1
                    )));
                }
                for k in 0..n {
                    for l in 0..n {
                        let lhs = self
                            .e(i, j)
                            .compose(self.e(k, l))
                            .sub(&self.e(k, l).compose(self.e(i, j)));
                        let mut rhs = SparseOp::zero(self.dim, self.dim);
                        if j == k {
                            rhs = rhs.add(self.e(i, l));
                        }
                        if l == i {
                            rhs = rhs.sub(self.e(k, j));
                        }
                        if lhs != rhs {
                            return Err(Error::Internal(format!(
                                "[E_{}{}, E_{}{}] violates the gl_n relations",
                                i + 1,
                                j + 1,
                                k + 1,
                                l + 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The diagonal shift `(c - |lambda|)/n`.
    pub fn central_shift(&self) -> Scalar {
        let boxes = Scalar::from_int(box_count(&self.marks) as i64);
        &(&self.central - &boxes) * &Scalar::from_fraction(1, self.n as i64).expect("n > 0")
    }
}
