//! The Lie algebras this crate is about.
//!
//! Elements live in the semidirect product of vector fields on the torus
//! with the Laurent polynomial abelian ideal. A vector-field summand is a
//! finite sum of terms `D(u, r) = sum_k u_k t^r d_k` indexed by the degree
//! `r` of the Laurent monomial; the abelian summand is a finite sum of
//! monomials `t^r`. Four nested algebras share this data type:
//!
//! * `Witt`: all vector fields, no abelian part,
//! * `ExtendedWitt`: all vector fields plus the abelian ideal,
//! * `DivergenceZero`: fields with `(u|r) = 0` in every term,
//! * `ExtendedDivergenceZero`: divergence-zero fields plus the ideal.
//!
//! Everything is graded by Z^n, with `deg D(u, r) = deg t^r = r`, and all
//! structure constants are computed exactly.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{IntMatrix, LatticeVector};
use crate::linalg::SpanBuilder;
use crate::scalar::{coeff_dot_int, coeff_is_zero, CoeffVec, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraKind {
    Witt,
    ExtendedWitt,
    DivergenceZero,
    ExtendedDivergenceZero,
}

impl AlgebraKind {
    pub fn has_abelian_part(self) -> bool {
        matches!(self, AlgebraKind::ExtendedWitt | AlgebraKind::ExtendedDivergenceZero)
    }

    pub fn divergence_constrained(self) -> bool {
        matches!(
            self,
            AlgebraKind::DivergenceZero | AlgebraKind::ExtendedDivergenceZero
        )
    }
}

/// An element of the extended Witt algebra (and thereby, when the
/// divergence constraint holds, of the smaller algebras).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    n: usize,
    d_terms: BTreeMap<LatticeVector, CoeffVec>,
    t_terms: BTreeMap<LatticeVector, Scalar>,
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        AlgebraElement {
            n,
            d_terms: BTreeMap::new(),
            t_terms: BTreeMap::new(),
        }
    }

    /// The single vector-field term `D(u, r)`.
    pub fn d_term(u: CoeffVec, r: LatticeVector) -> Result<Self> {
        if u.len() != r.n() {
            return Err(Error::DimensionMismatch {
                expected: r.n(),
                found: u.len(),
            });
        }
        let mut el = AlgebraElement::zero(r.n());
        el.add_d(r, u);
        Ok(el)
    }

    /// The abelian monomial `coeff * t^r`.
    pub fn t_term(coeff: Scalar, r: LatticeVector) -> Self {
        let mut el = AlgebraElement::zero(r.n());
        el.add_t(r, coeff);
        el
    }

    /// The degree-zero derivation `d_i = t^0 d_i`.
    pub fn d_unit(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::IndexOutOfRange(format!("d index {i} for n={n}")));
        }
        let mut u = vec![Scalar::zero(); n];
        u[i] = Scalar::one();
        AlgebraElement::d_term(u, LatticeVector::zero(n))
    }

    /// The divergence-zero generator `D_ij(r) = r_j t^r d_i - r_i t^r d_j`.
    /// Antisymmetric in `(i, j)`; zero when `i = j` is rejected, zero value
    /// results for `r_i = r_j = 0` are allowed.
    pub fn d_ij(i: usize, j: usize, r: &LatticeVector) -> Result<Self> {
        let n = r.n();
        if i >= n || j >= n {
            return Err(Error::IndexOutOfRange(format!("D indices ({i},{j}) for n={n}")));
        }
        if i == j {
            return Err(Error::IndexOutOfRange("D_ij needs i != j".into()));
        }
        let mut u = vec![Scalar::zero(); n];
        u[i] = Scalar::from_int(r.coords()[j]);
        u[j] = Scalar::from_int(-r.coords()[i]);
        AlgebraElement::d_term(u, r.clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d_terms(&self) -> &BTreeMap<LatticeVector, CoeffVec> {
        &self.d_terms
    }

    pub fn t_terms(&self) -> &BTreeMap<LatticeVector, Scalar> {
        &self.t_terms
    }

    pub fn is_zero(&self) -> bool {
        self.d_terms.is_empty() && self.t_terms.is_empty()
    }

    pub fn add_d(&mut self, r: LatticeVector, u: CoeffVec) {
        debug_assert_eq!(u.len(), self.n);
        debug_assert_eq!(r.n(), self.n);
        let entry = self
            .d_terms
            .entry(r)
            .or_insert_with(|| vec![Scalar::zero(); self.n]);
        for (slot, add) in entry.iter_mut().zip(u) {
            *slot += &add;
        }
        self.prune();
    }

    pub fn add_t(&mut self, r: LatticeVector, coeff: Scalar) {
        debug_assert_eq!(r.n(), self.n);
        *self.t_terms.entry(r).or_insert_with(Scalar::zero) += &coeff;
        self.prune();
    }

    fn prune(&mut self) {
        self.d_terms.retain(|_, u| !coeff_is_zero(u));
        self.t_terms.retain(|_, c| !c.is_zero());
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut out = self.clone();
        for (r, u) in &other.d_terms {
            out.add_d(r.clone(), u.clone());
        }
        for (r, c) in &other.t_terms {
            out.add_t(r.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        if k.is_zero() {
            return AlgebraElement::zero(self.n);
        }
        AlgebraElement {
            n: self.n,
            d_terms: self
                .d_terms
                .iter()
                .map(|(r, u)| (r.clone(), u.iter().map(|x| x * k).collect()))
                .collect(),
            t_terms: self
                .t_terms
                .iter()
                .map(|(r, c)| (r.clone(), c * k))
                .collect(),
        }
    }

    pub fn negate(&self) -> Self {
        self.scale(&Scalar::from_int(-1))
    }

    fn check_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// The Lie bracket. On vector-field terms
    /// `[D(p, m), D(q, k)] = D((p|k) q - (q|m) p, m + k)`,
    /// a field acts on the ideal by `[D(p, m), t^k] = (p|k) t^{m+k}`,
    /// and the ideal is abelian.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut out = AlgebraElement::zero(self.n);
        for (m, p) in &self.d_terms {
            for (k, q) in &other.d_terms {
                let pk = coeff_dot_int(p, k.coords());
                let qm = coeff_dot_int(q, m.coords());
                let mut w = vec![Scalar::zero(); self.n];
                let mut nonzero = false;
                for idx in 0..self.n {
                    let val = &(&pk * &q[idx]) - &(&qm * &p[idx]);
                    nonzero |= !val.is_zero();
                    w[idx] = val;
                }
                if nonzero {
                    out.add_d(m + k, w);
                }
            }
            for (k, c) in &other.t_terms {
                let pk = coeff_dot_int(p, k.coords());
                if !pk.is_zero() {
                    out.add_t(m + k, &pk * c);
                }
            }
        }
        for (k, c) in &self.t_terms {
            for (m, p) in &other.d_terms {
                let pk = coeff_dot_int(p, k.coords());
                if !pk.is_zero() {
                    out.add_t(m + k, -(&pk * c));
                }
            }
        }
        Ok(out)
    }

    /// The divergence of the vector-field part, as `(degree, coefficient)`
    /// pairs of the resulting Laurent polynomial: `div D(u, r) = (u|r) t^r`.
    pub fn divergence(&self) -> Vec<(LatticeVector, Scalar)> {
        self.d_terms
            .iter()
            .filter_map(|(r, u)| {
                let c = coeff_dot_int(u, r.coords());
                if c.is_zero() {
                    None
                } else {
                    Some((r.clone(), c))
                }
            })
            .collect()
    }

    pub fn is_divergence_zero(&self) -> bool {
        self.divergence().is_empty()
    }

    /// True when the element belongs to the given algebra.
    pub fn lies_in(&self, kind: AlgebraKind) -> bool {
        (!kind.divergence_constrained() || self.is_divergence_zero())
            && (kind.has_abelian_part() || self.t_terms.is_empty())
    }

    /// The degree when the element is homogeneous (all terms share one
    /// degree), None otherwise or for zero.
    pub fn homogeneous_degree(&self) -> Option<LatticeVector> {
        let mut degrees = self.d_terms.keys().chain(self.t_terms.keys());
        let first = degrees.next()?.clone();
        if degrees.all(|r| *r == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Image under the change of coordinates attached to a unimodular `A`:
    /// degrees map by `r -> A r` and coefficient vectors by `u -> B u` with
    /// `B = (A^T)^{-1}`, so `(Bu | Ar) = (u | r)` and brackets, divergence
    /// and the grading are carried along exactly.
    pub fn change_coordinates(&self, a: &IntMatrix) -> Result<Self> {
        if a.n_rows() != self.n || a.n_cols() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: a.n_rows(),
            });
        }
        let b = a.transpose().inverse_unimodular()?;
        let mut out = AlgebraElement::zero(self.n);
        for (r, u) in &self.d_terms {
            let new_u: CoeffVec = (0..self.n)
                .map(|i| {
                    let mut acc = Scalar::zero();
                    for (j, x) in u.iter().enumerate() {
                        let bij = b.get(i, j);
                        if bij != 0 && !x.is_zero() {
                            acc += &x.scale_int(bij);
                        }
                    }
                    acc
                })
                .collect();
            out.add_d(a.apply(r)?, new_u);
        }
        for (r, c) in &self.t_terms {
            out.add_t(a.apply(r)?, c.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (r, u) in &self.d_terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "D((")?;
            for (k, x) in u.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x)?;
            }
            write!(f, "),{})", r)?;
        }
        for (r, c) in &self.t_terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "t^{}", r)?;
            } else {
                write!(f, "({})t^{}", c, r)?;
            }
        }
        Ok(())
    }
}

/// One homogeneous piece of an algebra, with a deterministic exact basis.
///
/// For the divergence-zero algebras and `m != 0` the vector-field part is
/// the rank `n-1` span of the `D_ij(m)`; the basis keeps the first `n-1`
/// independent ones in lexicographic `(i, j)` order. At `m = 0` it is
/// spanned by `d_1, ..., d_n`. Extended kinds append the monomial `t^m`.
#[derive(Clone, Debug)]
pub struct GradedComponent {
    pub kind: AlgebraKind,
    pub degree: LatticeVector,
    pub basis: Vec<AlgebraElement>,
    d_span: SpanBuilder,
    d_count: usize,
    has_t: bool,
}

impl GradedComponent {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn d_dim(&self) -> usize {
        self.d_count
    }

    pub fn has_abelian_generator(&self) -> bool {
        self.has_t
    }

    /// Exact coordinates of a homogeneous element of this component over
    /// `basis`. Errors when the element has the wrong degree or does not
    /// lie in the component (for example a nonzero divergence).
    pub fn coords_of(&self, el: &AlgebraElement) -> Result<Vec<Scalar>> {
        let n = self.degree.n();
        if el.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: el.n(),
            });
        }
        let mut coords = vec![Scalar::zero(); self.basis.len()];
        if el.is_zero() {
            return Ok(coords);
        }
        for (r, _) in el.d_terms() {
            if *r != self.degree {
                return Err(Error::InvalidDescriptor(format!(
                    "term of degree {r} in component of degree {}",
                    self.degree
                )));
            }
        }
        for (r, _) in el.t_terms() {
            if *r != self.degree {
                return Err(Error::InvalidDescriptor(format!(
                    "term of degree {r} in component of degree {}",
                    self.degree
                )));
            }
        }
        if let Some(u) = el.d_terms().get(&self.degree) {
            let in_span = self.d_span.coords_in_raw(u).ok_or_else(|| {
                Error::InvalidDescriptor(format!(
                    "vector-field part lies outside the degree-{} component",
                    self.degree
                ))
            })?;
            coords[..self.d_count].clone_from_slice(&in_span);
        }
        if let Some(c) = el.t_terms().get(&self.degree) {
            if !self.has_t {
                return Err(Error::InvalidDescriptor(
                    "abelian term in a kind without the abelian part".into(),
                ));
            }
            coords[self.d_count] = c.clone();
        }
        Ok(coords)
    }
}

/// Builds the homogeneous component of degree `m`.
pub fn graded_component(kind: AlgebraKind, n: usize, m: &LatticeVector) -> Result<GradedComponent> {
    if m.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.n(),
        });
    }
    let mut basis = Vec::new();
    let mut d_span = SpanBuilder::new(n);
    if kind.divergence_constrained() {
        if m.is_zero() {
            for i in 0..n {
                let el = AlgebraElement::d_unit(n, i)?;
                let accepted = d_span.insert(&el.d_terms()[m]);
                debug_assert!(accepted);
                basis.push(el);
            }
        } else {
            for i in 0..n {
                for j in i + 1..n {
                    let el = AlgebraElement::d_ij(i, j, m)?;
                    if el.is_zero() {
                        continue;
                    }
                    if d_span.insert(&el.d_terms()[m]) {
                        basis.push(el);
                    }
                }
            }
            debug_assert_eq!(basis.len(), n - 1);
        }
    } else {
        for i in 0..n {
            let mut u = vec![Scalar::zero(); n];
            u[i] = Scalar::one();
            let el = AlgebraElement::d_term(u, m.clone())?;
            let accepted = d_span.insert(&el.d_terms()[m]);
            debug_assert!(accepted);
            basis.push(el);
        }
    }
    let d_count = basis.len();
    let has_t = kind.has_abelian_part();
    if has_t {
        basis.push(AlgebraElement::t_term(Scalar::one(), m.clone()));
    }
    Ok(GradedComponent {
        kind,
        degree: m.clone(),
        basis,
        d_span,
        d_count,
        has_t,
    })
}

/// All homogeneous basis elements with degree in `[-w, w]^n`, tagged by
/// degree, in lexicographic degree order.
pub fn window_basis(
    kind: AlgebraKind,
    n: usize,
    w: i64,
) -> Result<Vec<(LatticeVector, AlgebraElement)>> {
    let mut out = Vec::new();
    for m in crate::lattice::window_points(n, w) {
        let comp = graded_component(kind, n, &m)?;
        for el in comp.basis {
            out.push((m.clone(), el));
        }
    }
    Ok(out)
}

/// Given `r` not collinear with `s`, returns an integer vector `u` with
/// `(u|s) != 0` and `(u|r+s) = 0`: for the first index pair `(i, j)` with
/// a nonvanishing 2x2 minor, `u = (r_i + s_i) e_j - (r_j + s_j) e_i`.
pub fn find_orthogonal(r: &LatticeVector, s: &LatticeVector) -> Result<LatticeVector> {
    if r.n() != s.n() {
        return Err(Error::DimensionMismatch {
            expected: r.n(),
            found: s.n(),
        });
    }
    let n = r.n();
    for i in 0..n {
        for j in i + 1..n {
            let minor = r.coords()[i] * s.coords()[j] - r.coords()[j] * s.coords()[i];
            if minor != 0 {
                let mut u = vec![0i64; n];
                u[j] = r.coords()[i] + s.coords()[i];
                u[i] = -(r.coords()[j] + s.coords()[j]);
                let u = LatticeVector(u);
                debug_assert_eq!(u.dot(&(r + s)), 0);
                debug_assert_eq!(u.dot(s), minor);
                return Ok(u);
            }
        }
    }
    Err(Error::CollinearInput)
}
