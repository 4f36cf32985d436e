//! Truncated induced modules over a level decomposition of `Z^n`.
//!
//! A triangular decomposition `Z^n = M + Z beta` splits the algebra into
//! negative, zero, and positive level parts. From a module `X` over the
//! level-zero part (with positive levels acting by zero) the induced
//! module has, by the Poincare-Birkhoff-Witt theorem, the basis
//!
//! ```text
//!     g_1 g_2 ... g_k (x) x,    g_1 <= g_2 <= ... <= g_k
//! ```
//!
//! where the `g_i` run over an ordered basis of the negative part and `x`
//! over a basis of `X`. This module stores the finite slice with monomial
//! depth at most `depth`, lattice coordinates of every monomial inside
//! `[-m_window, m_window]`, and `X`-offsets inside `x_window`, and
//! tabulates the generator actions on it by exact straightening. Every
//! term that a computation drops at the boundary is recorded in a leak
//! ledger, so downstream conclusions can tell certified facts from
//! window artifacts.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{graded_component, AlgebraElement, AlgebraKind, GradedComponent};
use crate::error::{Error, Result};
use crate::jet::{JetModule, JetVector};
use crate::lattice::{column_reduce_to_gcd, window_points, IntMatrix, LatticeVector};
use crate::linalg::{Matrix, SpanBuilder};
use crate::scalar::{CoeffVec, Scalar};
use crate::windowed::{
    ActionOutcome, ActionWindow, Flags, LeakEntry, MaterializedWindow, StoredAction,
    WindowGenerator,
};

/// A unimodular splitting `Z^n = M + Z beta`. Column vectors `m_1, ...,
/// m_{n-1}, beta` form the change of basis; the `beta` coordinate of a
/// lattice point is its level.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TriangularData {
    m_basis: Vec<LatticeVector>,
    beta: LatticeVector,
    to_std: IntMatrix,
    from_std: IntMatrix,
}

impl TriangularData {
    pub fn new(m_basis: Vec<LatticeVector>, beta: LatticeVector) -> Result<Self> {
        let n = beta.n();
        if m_basis.len() + 1 != n {
            return Err(Error::DimensionMismatch {
                expected: n.saturating_sub(1),
                found: m_basis.len(),
            });
        }
        let mut cols = m_basis.clone();
        cols.push(beta.clone());
        let to_std = IntMatrix::from_columns(&cols)?;
        let from_std = to_std.inverse_unimodular()?;
        Ok(TriangularData {
            m_basis,
            beta,
            to_std,
            from_std,
        })
    }

    /// Builds the splitting orthogonal to a nonzero functional `k`: the
    /// sublattice `M = {m : (k|m) = 0}` together with a `beta` on which
    /// `k` is positive and generates the image of `k`.
    pub fn from_functional(k: &LatticeVector) -> Result<Self> {
        let u = column_reduce_to_gcd(k.coords())?;
        let n = k.n();
        let beta = u.column(0);
        let m_basis = (1..n).map(|j| u.column(j)).collect();
        TriangularData::new(m_basis, beta)
    }

    pub fn n(&self) -> usize {
        self.beta.n()
    }

    pub fn beta(&self) -> &LatticeVector {
        &self.beta
    }

    pub fn m_basis(&self) -> &[LatticeVector] {
        &self.m_basis
    }

    /// Coordinates `(m, level)` of `r` with `r = sum m_i * basis_i +
    /// level * beta`.
    pub fn decompose(&self, r: &LatticeVector) -> Result<(Vec<i64>, i64)> {
        let c = self.from_std.apply(r)?;
        let n = self.n();
        Ok((c.coords()[..n - 1].to_vec(), c.coords()[n - 1]))
    }

    pub fn level_of(&self, r: &LatticeVector) -> Result<i64> {
        Ok(self.decompose(r)?.1)
    }

    pub fn m_coords_of(&self, r: &LatticeVector) -> Result<Vec<i64>> {
        Ok(self.decompose(r)?.0)
    }

    pub fn compose(&self, m: &[i64], level: i64) -> Result<LatticeVector> {
        let mut c = m.to_vec();
        c.push(level);
        self.to_std.apply(&LatticeVector(c))
    }
}

/// The level-zero module an induced module starts from.
///
/// `Character` is the one-dimensional module where `d_i` acts by
/// `lambda0[i]`, the degree-zero monomial acts by `c0`, and every
/// level-zero element of nonzero degree acts by zero. `JetRestriction`
/// is the slice of a jet module over the level-zero weight offsets, with
/// offsets stored inside `[-x_window, x_window]^{n-1}`.
#[derive(Clone, Debug)]
pub enum InducingModule {
    Character { lambda0: CoeffVec, c0: Scalar },
    JetRestriction { module: JetModule, x_window: i64 },
}

impl InducingModule {
    pub fn n(&self) -> usize {
        match self {
            InducingModule::Character { lambda0, .. } => lambda0.len(),
            InducingModule::JetRestriction { module, .. } => module.n(),
        }
    }

    pub fn fiber_dim(&self) -> usize {
        match self {
            InducingModule::Character { .. } => 1,
            InducingModule::JetRestriction { module, .. } => module.dim_fiber(),
        }
    }

    pub fn base_weight(&self) -> CoeffVec {
        match self {
            InducingModule::Character { lambda0, .. } => lambda0.clone(),
            InducingModule::JetRestriction { module, .. } => module.alpha().clone(),
        }
    }
}

/// One ordered generator of the negative part. The ordering key is
/// `(depth, m, slot)` with depth `= -level`; enumeration order equals
/// index order, so monomials sort by plain index comparison.
#[derive(Clone, Debug)]
pub struct NegGen {
    pub degree: LatticeVector,
    pub m: Vec<i64>,
    pub level: i64,
    pub slot: usize,
    pub element: AlgebraElement,
}

/// Truncation parameters of the induced module.
#[derive(Clone, Debug)]
pub struct VermaParams {
    pub kind: AlgebraKind,
    /// Largest stored monomial depth (sum of `-level` over the factors).
    pub depth: usize,
    /// Lattice window for generator and monomial `M`-coordinates.
    pub m_window: i64,
    /// Hard cap on the stored basis size.
    pub basis_cap: usize,
}

/// The `X`-side tag of a basis element: level-zero offset in
/// `M`-coordinates and a fiber index. A character has the single tag
/// `(0, 0)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct XKey {
    pub s: Vec<i64>,
    pub fiber: usize,
}

/// One stored basis element: a nondecreasing word in the negative
/// generators tensored with an `X` basis vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct BasisKey {
    pub mono: Vec<usize>,
    pub x: XKey,
}

/// A materialized induced module window together with the basis
/// bookkeeping that gives its coordinates meaning. Basis vectors at each
/// weight are sorted by `BasisKey`.
#[derive(Clone, Debug)]
pub struct TruncatedModule {
    pub window: MaterializedWindow,
    pub neg_gens: Vec<NegGen>,
    pub basis: BTreeMap<LatticeVector, Vec<BasisKey>>,
}

fn within(coords: &[i64], w: i64) -> bool {
    coords.iter().all(|&c| c.abs() <= w)
}

/// Enumerates the ordered basis of the negative part with depth at most
/// `depth` and `M`-coordinates inside the window.
pub fn negative_generators(
    kind: AlgebraKind,
    tri: &TriangularData,
    depth: usize,
    m_window: i64,
) -> Result<Vec<NegGen>> {
    let n = tri.n();
    let mut out = Vec::new();
    for d in 1..=depth {
        let level = -(d as i64);
        for m in window_points(n - 1, m_window) {
            let degree = tri.compose(m.coords(), level)?;
            let comp = graded_component(kind, n, &degree)?;
            for (slot, el) in comp.basis.iter().enumerate() {
                out.push(NegGen {
                    degree: degree.clone(),
                    m: m.coords().to_vec(),
                    level,
                    slot,
                    element: el.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// All homogeneous basis elements with level in `[-depth, depth]` and
/// `M`-coordinates inside the window, in `(level, m, slot)` order. These
/// are the generators a truncated module tabulates.
pub fn acting_generators(
    kind: AlgebraKind,
    tri: &TriangularData,
    depth: usize,
    m_window: i64,
) -> Result<Vec<WindowGenerator>> {
    Ok(acting_prims(kind, tri, depth, m_window)?
        .into_iter()
        .map(|p| WindowGenerator {
            degree: p.degree,
            element: p.element,
        })
        .collect())
}

/// A single homogeneous basis element tagged with its triangular
/// coordinates, the unit of straightening.
#[derive(Clone, Debug)]
struct BasisGen {
    degree: LatticeVector,
    m: Vec<i64>,
    level: i64,
    slot: usize,
    element: AlgebraElement,
}

impl BasisGen {
    fn of(gen: &NegGen) -> Self {
        BasisGen {
            degree: gen.degree.clone(),
            m: gen.m.clone(),
            level: gen.level,
            slot: gen.slot,
            element: gen.element.clone(),
        }
    }
}

fn acting_prims(
    kind: AlgebraKind,
    tri: &TriangularData,
    depth: usize,
    m_window: i64,
) -> Result<Vec<BasisGen>> {
    let n = tri.n();
    let mut out = Vec::new();
    for level in -(depth as i64)..=(depth as i64) {
        for m in window_points(n - 1, m_window) {
            let degree = tri.compose(m.coords(), level)?;
            let comp = graded_component(kind, n, &degree)?;
            for (slot, el) in comp.basis.iter().enumerate() {
                out.push(BasisGen {
                    degree: degree.clone(),
                    m: m.coords().to_vec(),
                    level,
                    slot,
                    element: el.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Accumulator for straightening results: exact coefficients on stored
/// basis elements plus the leak records for everything dropped.
#[derive(Default)]
struct Sink {
    terms: BTreeMap<(Vec<usize>, XKey), Scalar>,
    leaks: Vec<LeakEntry>,
}

impl Sink {
    fn add_term(&mut self, mono: Vec<usize>, x: XKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((mono, x)) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += &c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn leak(&mut self, context: &str, degree: LatticeVector, detail: String) {
        self.leaks.push(LeakEntry {
            context: context.to_string(),
            degree,
            detail,
        });
    }
}

struct Builder<'a> {
    kind: AlgebraKind,
    tri: &'a TriangularData,
    inducing: &'a InducingModule,
    depth: usize,
    m_window: i64,
    neg: &'a [NegGen],
    gen_index: BTreeMap<(LatticeVector, usize), usize>,
    components: BTreeMap<LatticeVector, GradedComponent>,
    steps: u64,
}

const STRAIGHTENING_BUDGET: u64 = 50_000_000;

impl<'a> Builder<'a> {
    fn new(
        kind: AlgebraKind,
        tri: &'a TriangularData,
        inducing: &'a InducingModule,
        depth: usize,
        m_window: i64,
        neg: &'a [NegGen],
    ) -> Self {
        let gen_index = neg
            .iter()
            .enumerate()
            .map(|(i, g)| ((g.degree.clone(), g.slot), i))
            .collect();
        Builder {
            kind,
            tri,
            inducing,
            depth,
            m_window,
            neg,
            gen_index,
            components: BTreeMap::new(),
            steps: 0,
        }
    }

    fn ensure_component(&mut self, deg: &LatticeVector) -> Result<()> {
        if !self.components.contains_key(deg) {
            let comp = graded_component(self.kind, self.tri.n(), deg)?;
            self.components.insert(deg.clone(), comp);
        }
        Ok(())
    }

    fn basis_gen_at(&mut self, deg: &LatticeVector, slot: usize) -> Result<BasisGen> {
        self.ensure_component(deg)?;
        let element = self.components[deg].basis[slot].clone();
        let (m, level) = self.tri.decompose(deg)?;
        Ok(BasisGen {
            degree: deg.clone(),
            m,
            level,
            slot,
            element,
        })
    }

    fn mono_depth(&self, mono: &[usize]) -> usize {
        mono.iter().map(|&g| (-self.neg[g].level) as usize).sum()
    }

    fn mono_m(&self, mono: &[usize]) -> Vec<i64> {
        let mut m = vec![0i64; self.tri.n() - 1];
        for &g in mono {
            for (a, b) in m.iter_mut().zip(&self.neg[g].m) {
                *a += b;
            }
        }
        m
    }

    /// Prepends generator `idx` to the sorted word `mono`, or records a
    /// leak when the result leaves the stored basis.
    fn store(
        &mut self,
        idx: usize,
        mono: &[usize],
        x: &XKey,
        coeff: &Scalar,
        sink: &mut Sink,
    ) -> Result<()> {
        let mut word = Vec::with_capacity(mono.len() + 1);
        word.push(idx);
        word.extend_from_slice(mono);
        debug_assert!(word.windows(2).all(|p| p[0] <= p[1]));
        if self.mono_depth(&word) > self.depth {
            let deg = self.word_degree(&word);
            sink.leak(
                "depth budget",
                deg,
                format!("monomial of depth {} exceeds {}", self.mono_depth(&word), self.depth),
            );
            return Ok(());
        }
        let m = self.mono_m(&word);
        if !within(&m, self.m_window) {
            let deg = self.word_degree(&word);
            sink.leak(
                "coordinate window",
                deg,
                format!("monomial coordinates {m:?} leave [-{0}, {0}]", self.m_window),
            );
            return Ok(());
        }
        sink.add_term(word, x.clone(), coeff.clone());
        Ok(())
    }

    fn word_degree(&self, word: &[usize]) -> LatticeVector {
        let mut d = LatticeVector::zero(self.tri.n());
        for &g in word {
            d = &d + &self.neg[g].degree;
        }
        d
    }

    /// Applies a level-zero generator directly to an `X` basis vector.
    fn act_x(&mut self, p: &BasisGen, x: &XKey, coeff: &Scalar, sink: &mut Sink) -> Result<()> {
        match self.inducing {
            InducingModule::Character { lambda0, c0 } => {
                if !p.degree.is_zero() {
                    // A one-dimensional module kills every element of
                    // nonzero degree exactly.
                    return Ok(());
                }
                let n = self.tri.n();
                let scalar = if p.slot < n {
                    lambda0[p.slot].clone()
                } else {
                    c0.clone()
                };
                sink.add_term(Vec::new(), x.clone(), coeff * &scalar);
                Ok(())
            }
            InducingModule::JetRestriction { module, x_window } => {
                let sigma = self.tri.compose(&x.s, 0)?;
                let image = module.act(&p.element, &JetVector::basis(sigma, x.fiber))?;
                for ((deg, row), c) in image.terms() {
                    let (s2, level) = self.tri.decompose(deg)?;
                    debug_assert_eq!(level, 0);
                    if within(&s2, *x_window) {
                        sink.add_term(
                            Vec::new(),
                            XKey {
                                s: s2,
                                fiber: *row,
                            },
                            coeff * c,
                        );
                    } else {
                        sink.leak(
                            "fiber offset window",
                            deg.clone(),
                            format!("level-zero offset {s2:?} leaves [-{0}, {0}]", x_window),
                        );
                    }
                }
                Ok(())
            }
        }
    }

    /// Applies `p` to the bare vector `x`: positive levels act by zero,
    /// level zero through `X`, negative levels start a new monomial.
    fn act_base(&mut self, p: &BasisGen, x: &XKey, coeff: &Scalar, sink: &mut Sink) -> Result<()> {
        match p.level.cmp(&0) {
            std::cmp::Ordering::Greater => Ok(()),
            std::cmp::Ordering::Equal => self.act_x(p, x, coeff, sink),
            std::cmp::Ordering::Less => {
                match self.gen_index.get(&(p.degree.clone(), p.slot)).copied() {
                    Some(idx) => self.store(idx, &[], x, coeff, sink),
                    None => {
                        sink.leak(
                            "generator window",
                            p.degree.clone(),
                            format!(
                                "negative generator at coordinates {:?} is outside the stored set",
                                p.m
                            ),
                        );
                        Ok(())
                    }
                }
            }
        }
    }

    /// Straightens `p * (mono (x) x)` into stored basis coordinates.
    ///
    /// The word is rewritten with `p g = g p + [p, g]`; the rewriting
    /// terminates because each commute step either shortens the word or
    /// reduces its inversion count, and brackets are re-expanded over the
    /// exact graded component basis.
    fn mult_prim(
        &mut self,
        p: &BasisGen,
        mono: &[usize],
        x: &XKey,
        coeff: &Scalar,
        sink: &mut Sink,
    ) -> Result<()> {
        self.steps += 1;
        if self.steps > STRAIGHTENING_BUDGET {
            return Err(Error::Internal(
                "straightening exceeded its step budget".into(),
            ));
        }
        if coeff.is_zero() {
            return Ok(());
        }
        let Some((&g1, rest)) = mono.split_first() else {
            return self.act_base(p, x, coeff, sink);
        };
        if p.level < 0 {
            if let Some(idx) = self.gen_index.get(&(p.degree.clone(), p.slot)).copied() {
                if idx <= g1 {
                    return self.store(idx, mono, x, coeff, sink);
                }
            }
        }
        let head = BasisGen::of(&self.neg[g1]);
        let mut inner = Sink::default();
        self.mult_prim(p, rest, x, coeff, &mut inner)?;
        sink.leaks.append(&mut inner.leaks);
        for ((m2, x2), c2) in inner.terms {
            self.mult_prim(&head, &m2, &x2, &c2, sink)?;
        }
        let bracket = p.element.bracket(&head.element)?;
        if !bracket.is_zero() {
            let deg = &p.degree + &head.degree;
            self.ensure_component(&deg)?;
            let coords = self.components[&deg].coords_of(&bracket)?;
            for (slot, c) in coords.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let gen = self.basis_gen_at(&deg, slot)?;
                self.mult_prim(&gen, rest, x, &(coeff * &c), sink)?;
            }
        }
        Ok(())
    }
}

impl InducingModule {
    fn x_keys(&self, n: usize) -> Vec<XKey> {
        match self {
            InducingModule::Character { .. } => vec![XKey {
                s: vec![0; n - 1],
                fiber: 0,
            }],
            InducingModule::JetRestriction { module, x_window } => {
                let mut out = Vec::new();
                for s in window_points(n - 1, *x_window) {
                    for fiber in 0..module.dim_fiber() {
                        out.push(XKey {
                            s: s.coords().to_vec(),
                            fiber,
                        });
                    }
                }
                out
            }
        }
    }
}

fn enumerate_monomials(
    neg: &[NegGen],
    depth: usize,
    m_window: i64,
    n_m: usize,
) -> Vec<Vec<usize>> {
    // Depth pruning is monotone, so the search tree is cut there; the
    // coordinate window is checked only on emission because a partial sum
    // may leave the window and come back.
    fn recurse(
        neg: &[NegGen],
        start: usize,
        depth_left: usize,
        cur: &mut Vec<usize>,
        m: &mut [i64],
        m_window: i64,
        out: &mut Vec<Vec<usize>>,
    ) {
        if within(m, m_window) {
            out.push(cur.clone());
        }
        for idx in start..neg.len() {
            let d = (-neg[idx].level) as usize;
            if d > depth_left {
                continue;
            }
            cur.push(idx);
            for (a, b) in m.iter_mut().zip(&neg[idx].m) {
                *a += b;
            }
            recurse(neg, idx, depth_left - d, cur, m, m_window, out);
            cur.pop();
            for (a, b) in m.iter_mut().zip(&neg[idx].m) {
                *a -= b;
            }
        }
    }
    let mut out = Vec::new();
    let mut m = vec![0i64; n_m];
    recurse(neg, 0, depth, &mut Vec::new(), &mut m, m_window, &mut out);
    out
}

/// Builds the truncated induced module and tabulates every generator
/// action on it.
pub fn build_truncated(
    tri: &TriangularData,
    inducing: &InducingModule,
    params: &VermaParams,
) -> Result<TruncatedModule> {
    let n = tri.n();
    if inducing.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: inducing.n(),
        });
    }
    if params.depth == 0 {
        return Err(Error::WindowTooSmall(
            "monomial depth must be at least 1".into(),
        ));
    }
    let neg = negative_generators(params.kind, tri, params.depth, params.m_window)?;
    let prims = acting_prims(params.kind, tri, params.depth, params.m_window)?;
    let monos = enumerate_monomials(&neg, params.depth, params.m_window, n - 1);
    let xs = inducing.x_keys(n);
    let total = monos.len().saturating_mul(xs.len());
    if total > params.basis_cap {
        return Err(Error::DimensionCap {
            dim: total.to_string(),
            cap: params.basis_cap,
        });
    }

    let mut builder = Builder::new(
        params.kind,
        tri,
        inducing,
        params.depth,
        params.m_window,
        &neg,
    );

    let mut basis: BTreeMap<LatticeVector, Vec<BasisKey>> = BTreeMap::new();
    for mono in &monos {
        let mono_degree = builder.word_degree(mono);
        for x in &xs {
            let weight = &mono_degree + &tri.compose(&x.s, 0)?;
            basis.entry(weight).or_default().push(BasisKey {
                mono: mono.clone(),
                x: x.clone(),
            });
        }
    }
    for keys in basis.values_mut() {
        keys.sort();
    }
    let mut index: BTreeMap<(Vec<usize>, XKey), (LatticeVector, usize)> = BTreeMap::new();
    for (w, keys) in &basis {
        for (pos, key) in keys.iter().enumerate() {
            index.insert((key.mono.clone(), key.x.clone()), (w.clone(), pos));
        }
    }

    let mut actions: BTreeMap<(usize, LatticeVector), StoredAction> = BTreeMap::new();
    let mut ledger: Vec<LeakEntry> = Vec::new();
    for (gi, p) in prims.iter().enumerate() {
        for (w, keys) in &basis {
            let target = w + &p.degree;
            if let Some(tkeys) = basis.get(&target) {
                let mut matrix = Matrix::zeros(tkeys.len(), keys.len());
                let mut exact = true;
                for (col, key) in keys.iter().enumerate() {
                    let mut sink = Sink::default();
                    builder.mult_prim(p, &key.mono, &key.x, &Scalar::one(), &mut sink)?;
                    for ((m2, x2), c) in sink.terms {
                        let (tw, pos) = index.get(&(m2, x2)).ok_or_else(|| {
                            Error::Internal("straightening emitted a non-basis term".into())
                        })?;
                        debug_assert_eq!(tw, &target);
                        matrix.set(*pos, col, c);
                    }
                    exact &= sink.leaks.is_empty();
                    ledger.extend(sink.leaks);
                }
                actions.insert((gi, w.clone()), StoredAction::Mapped { target, matrix, exact });
            } else {
                let level = tri.level_of(&target)?;
                let known_zero = level > 0
                    || (level == 0 && matches!(inducing, InducingModule::Character { .. }));
                if known_zero {
                    actions.insert((gi, w.clone()), StoredAction::KnownZero);
                }
            }
        }
    }

    let mut flags = Flags::default();
    flags.window_unreliable = !ledger.is_empty();
    flags.notes.push(format!(
        "stored: monomial depth <= {}, coordinates within [-{1}, {1}]",
        params.depth, params.m_window
    ));
    let dims = basis.iter().map(|(w, k)| (w.clone(), k.len())).collect();
    let gens = prims
        .iter()
        .map(|p| WindowGenerator {
            degree: p.degree.clone(),
            element: p.element.clone(),
        })
        .collect();
    Ok(TruncatedModule {
        window: MaterializedWindow {
            n,
            base: inducing.base_weight(),
            tri: Some(tri.clone()),
            dims,
            gens,
            actions,
            flags,
            ledger,
        },
        neg_gens: neg,
        basis,
    })
}

/// A vector all checked raising operators kill. `fully_checked` is false
/// when some raiser's image left the window, so the vector is singular
/// only with respect to the raisers that could be tabulated.
#[derive(Clone, Debug)]
pub struct SingularVector {
    pub weight: LatticeVector,
    pub coords: Vec<Scalar>,
    pub fully_checked: bool,
}

#[derive(Clone, Debug)]
pub struct SingularReport {
    pub level: i64,
    pub raiser_count: usize,
    pub vectors: Vec<SingularVector>,
    pub flags: Flags,
}

/// Finds the joint kernel of every positive-level generator on each
/// stored weight space at the given negative level.
pub fn find_singular_vectors(win: &impl ActionWindow, level: i64) -> Result<SingularReport> {
    if level >= 0 {
        return Err(Error::InvalidDescriptor(
            "singular vectors live at negative levels".into(),
        ));
    }
    let tri = win
        .triangular()
        .ok_or_else(|| {
            Error::InvalidDescriptor("window carries no level decomposition".into())
        })?
        .clone();
    let raisers: Vec<usize> = win
        .generators()
        .iter()
        .enumerate()
        .filter_map(|(i, g)| {
            (tri.level_of(&g.degree).ok()? > 0).then_some(i)
        })
        .collect();
    if raisers.is_empty() {
        return Err(Error::WindowTooSmall(
            "no positive-level generator in the window".into(),
        ));
    }
    // Report flags are deltas on top of the window's own flags.
    let mut flags = Flags::default();
    let mut vectors = Vec::new();
    for (w, dim) in win.weights() {
        if dim == 0 || tri.level_of(&w)? != level {
            continue;
        }
        let mut stacked: Option<Matrix> = None;
        let mut fully_checked = true;
        for &ri in &raisers {
            match win.act(ri, &w) {
                ActionOutcome::Mapped { matrix, exact, .. } => {
                    // An inexact matrix is the projection of the true
                    // raising map, so stacking it can only enlarge the
                    // kernel; the certificate is withheld.
                    if !exact {
                        fully_checked = false;
                        flags.window_limited = true;
                    }
                    stacked = Some(match stacked {
                        None => matrix,
                        Some(prev) => prev.vstack(&matrix)?,
                    });
                }
                ActionOutcome::KnownZero => {}
                ActionOutcome::OutOfWindow => {
                    fully_checked = false;
                    flags.window_limited = true;
                }
            }
        }
        let kernel = match &stacked {
            Some(m) => m.kernel_basis(),
            None => (0..dim)
                .map(|i| {
                    let mut v = vec![Scalar::zero(); dim];
                    v[i] = Scalar::one();
                    v
                })
                .collect(),
        };
        for coords in kernel {
            vectors.push(SingularVector {
                weight: w.clone(),
                coords,
                fully_checked,
            });
        }
    }
    Ok(SingularReport {
        level,
        raiser_count: raisers.len(),
        vectors,
        flags,
    })
}

/// Quotients a truncated module by the submodule the fully checked
/// singular vectors generate.
///
/// Kernel vectors some raiser could not certify are left untouched and
/// recorded in the ledger, so the computed submodule is a lower bound
/// for the maximal one and every quotient multiplicity an upper bound
/// for the irreducible quotient. Weight spaces the submodule swallows
/// entirely are removed; actions into them become `KnownZero`. Closure
/// images that leave the window are likewise recorded and flagged.
pub fn irreducible_quotient(win: &MaterializedWindow) -> Result<MaterializedWindow> {
    let tri = win
        .tri
        .clone()
        .ok_or_else(|| Error::InvalidDescriptor("window carries no level decomposition".into()))?;
    let mut flags = win.flags.clone();
    let mut ledger = win.ledger.clone();

    let mut spans: BTreeMap<LatticeVector, SpanBuilder> = win
        .dims
        .iter()
        .map(|(w, d)| (w.clone(), SpanBuilder::new(*d)))
        .collect();
    let mut queue: Vec<(LatticeVector, Vec<Scalar>)> = Vec::new();
    let levels: BTreeSet<i64> = win
        .dims
        .keys()
        .map(|w| tri.level_of(w))
        .collect::<Result<BTreeSet<i64>>>()?
        .into_iter()
        .filter(|&l| l < 0)
        .collect();
    let mut unverified: BTreeMap<LatticeVector, usize> = BTreeMap::new();
    for level in levels {
        let report = find_singular_vectors(win, level)?;
        flags.merge(&report.flags);
        for sv in report.vectors {
            // A vector that survived only because some raisers could not
            // be tabulated is not known to be singular; seeding it would
            // make the quotient smaller than the irreducible one.
            if !sv.fully_checked {
                *unverified.entry(sv.weight).or_insert(0) += 1;
                continue;
            }
            if spans.get_mut(&sv.weight).unwrap().insert(&sv.coords) {
                queue.push((sv.weight, sv.coords));
            }
        }
    }
    for (degree, count) in unverified {
        flags.window_limited = true;
        ledger.push(LeakEntry {
            context: "submodule seed".into(),
            degree,
            detail: format!("{count} kernel vector(s) not certified by every raiser; left in the quotient"),
        });
    }

    let mut crossed: BTreeSet<LatticeVector> = BTreeSet::new();
    while let Some((w, v)) = queue.pop() {
        for (gi, gen) in win.gens.iter().enumerate() {
            match win.actions.get(&(gi, w.clone())) {
                Some(StoredAction::Mapped {
                    target,
                    matrix,
                    exact: true,
                }) => {
                    let image = matrix.apply(&v)?;
                    if image.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    if spans.get_mut(target).unwrap().insert(&image) {
                        queue.push((target.clone(), image));
                    }
                }
                Some(StoredAction::KnownZero) => {}
                // Following an inexact matrix would insert vectors that
                // are not in the submodule, so it is treated like an
                // image beyond the window.
                Some(StoredAction::Mapped { .. }) | None => {
                    crossed.insert(&w + &gen.degree);
                }
            }
        }
    }
    for degree in crossed {
        flags.window_limited = true;
        ledger.push(LeakEntry {
            context: "submodule closure".into(),
            degree,
            detail: "image beyond the stored window was not followed".into(),
        });
    }

    let mut dims = BTreeMap::new();
    for (w, d) in &win.dims {
        let q = d - spans[w].rank();
        if q > 0 {
            dims.insert(w.clone(), q);
        }
    }
    let mut actions = BTreeMap::new();
    for ((gi, w), action) in &win.actions {
        if !dims.contains_key(w) {
            continue;
        }
        match action {
            StoredAction::KnownZero => {
                actions.insert((*gi, w.clone()), StoredAction::KnownZero);
            }
            StoredAction::Mapped { target, matrix, exact } => {
                if let Some(&qdim) = dims.get(target) {
                    let src_free = spans[w].free_columns();
                    let tgt_span = &spans[target];
                    let tgt_free = tgt_span.free_columns();
                    let mut qm = Matrix::zeros(qdim, src_free.len());
                    for (qcol, &j) in src_free.iter().enumerate() {
                        let col: Vec<Scalar> =
                            (0..matrix.n_rows()).map(|i| matrix.get(i, j).clone()).collect();
                        let residual = tgt_span.residual(&col);
                        for (qrow, &i) in tgt_free.iter().enumerate() {
                            qm.set(qrow, qcol, residual[i].clone());
                        }
                    }
                    actions.insert(
                        (*gi, w.clone()),
                        StoredAction::Mapped {
                            target: target.clone(),
                            matrix: qm,
                            exact: *exact,
                        },
                    );
                } else {
                    // The whole target weight space lies in the
                    // submodule, so the induced map is zero.
                    actions.insert((*gi, w.clone()), StoredAction::KnownZero);
                }
            }
        }
    }
    flags
        .notes
        .push("quotient by the submodule generated by fully checked singular vectors".into());
    Ok(MaterializedWindow {
        n: win.n,
        base: win.base.clone(),
        tri: Some(tri),
        dims,
        gens: win.gens.clone(),
        actions,
        flags,
        ledger,
    })
}

/// The rank-two companion vector `(b_2, -b_1)`, orthogonal complement in
/// the divergence pairing: `(bar(b) | b) = 0`.
pub fn rank2_bar(b: &LatticeVector) -> Result<LatticeVector> {
    if b.n() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: b.n(),
        });
    }
    Ok(LatticeVector(vec![b.coords()[1], -b.coords()[0]]))
}

/// The canonical rank-two divergence-zero field `D(bar(b), b)`; for
/// `b != 0` it equals the elementary field `D_12(b)`.
pub fn rank2_d(b: &LatticeVector) -> Result<AlgebraElement> {
    let bar = rank2_bar(b)?;
    let u: CoeffVec = bar.coords().iter().map(|&v| Scalar::from_int(v)).collect();
    AlgebraElement::d_term(u, b.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::irrep::build_irrep;
    use crate::windowed::{classify_truncated, ClassVerdict};

    fn std_tri() -> TriangularData {
        TriangularData::new(
            vec![LatticeVector(vec![1, 0])],
            LatticeVector(vec![0, 1]),
        )
        .unwrap()
    }

    #[test]
    fn triangular_decomposition_roundtrips() {
        let tri = std_tri();
        let r = LatticeVector(vec![3, -2]);
        let (m, level) = tri.decompose(&r).unwrap();
        assert_eq!((m.as_slice(), level), ([3].as_slice(), -2));
        assert_eq!(tri.compose(&[3], -2).unwrap(), r);
        assert_eq!(tri.level_of(tri.beta()).unwrap(), 1);

        let skew = TriangularData::new(
            vec![LatticeVector(vec![1, 1])],
            LatticeVector(vec![2, 3]),
        )
        .unwrap();
        let r = LatticeVector(vec![-4, 7]);
        let (m, level) = skew.decompose(&r).unwrap();
        assert_eq!(skew.compose(&m, level).unwrap(), r);
    }

    #[test]
    fn non_unimodular_basis_is_rejected() {
        let err = TriangularData::new(
            vec![LatticeVector(vec![2, 0])],
            LatticeVector(vec![0, 2]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotUnimodular { .. }), "{err}");
    }

    #[test]
    fn functional_splitting_is_orthogonal_and_positive() {
        let k = LatticeVector(vec![4, 6]);
        let tri = TriangularData::from_functional(&k).unwrap();
        for m in tri.m_basis() {
            assert_eq!(k.dot(m), 0);
        }
        assert!(k.dot(tri.beta()) > 0);
        assert_eq!(tri.level_of(tri.beta()).unwrap(), 1);
    }

    #[test]
    fn rank_two_fields_close_under_bracket() {
        // [D(bar(a), a), D(bar(b), b)] = (bar(a) | b) D(bar(a+b), a+b).
        let cases = [
            ([1, 0], [0, 1]),
            ([2, -1], [1, 1]),
            ([1, -3], [-2, 1]),
            ([1, 1], [2, 2]),
        ];
        for (a, b) in cases {
            let a = LatticeVector(a.to_vec());
            let b = LatticeVector(b.to_vec());
            let lhs = rank2_d(&a).unwrap().bracket(&rank2_d(&b).unwrap()).unwrap();
            let factor = Scalar::from_int(rank2_bar(&a).unwrap().dot(&b));
            let rhs = rank2_d(&(&a + &b)).unwrap().scale(&factor);
            assert_eq!(lhs, rhs, "a = {a}, b = {b}");
        }
        let b = LatticeVector(vec![2, -5]);
        assert_eq!(
            rank2_d(&b).unwrap(),
            AlgebraElement::d_ij(0, 1, &b).unwrap()
        );
    }

    fn character_module() -> TruncatedModule {
        let tri = std_tri();
        let inducing = InducingModule::Character {
            lambda0: vec![Scalar::from_fraction(1, 2).unwrap(), Scalar::from_int(1)],
            c0: Scalar::from_int(1),
        };
        let params = VermaParams {
            kind: AlgebraKind::ExtendedDivergenceZero,
            depth: 2,
            m_window: 2,
            basis_cap: 10_000,
        };
        build_truncated(&tri, &inducing, &params).unwrap()
    }

    #[test]
    fn character_multiplicities_match_hand_enumeration() {
        let module = character_module();
        let dims = &module.window.dims;
        // Level -1 holds one vector-field and one monomial generator per
        // stored degree.
        for a in -2..=2i64 {
            assert_eq!(dims[&LatticeVector(vec![a, -1])], 2, "a = {a}");
        }
        // Level -2 at coordinate 0: pairs of opposite level -1 degrees
        // (8), repeated-degree pairs (3), and depth-2 generators (2).
        let w = LatticeVector(vec![0, -2]);
        assert_eq!(dims[&w], 13);
        let keys = &module.basis[&w];
        let singles = keys.iter().filter(|k| k.mono.len() == 1).count();
        let doubles: Vec<_> = keys.iter().filter(|k| k.mono.len() == 2).collect();
        let repeated = doubles
            .iter()
            .filter(|k| {
                module.neg_gens[k.mono[0]].degree == module.neg_gens[k.mono[1]].degree
            })
            .count();
        assert_eq!(singles, 2);
        assert_eq!(doubles.len(), 11);
        assert_eq!(repeated, 3);
        // Coordinates beyond the window are not stored.
        assert!(!dims.contains_key(&LatticeVector(vec![4, -2])));
        // The top weight is the inducing line itself.
        assert_eq!(dims[&LatticeVector(vec![0, 0])], 1);
    }

    #[test]
    fn character_action_semantics_follow_the_support() {
        let module = character_module();
        let win = &module.window;
        let top = LatticeVector(vec![0, 0]);
        for (gi, gen) in win.gens.iter().enumerate() {
            let tri = win.tri.as_ref().unwrap();
            let level = tri.level_of(&gen.degree).unwrap();
            let out = win.act(gi, &top);
            if level > 0 || (level == 0 && !gen.degree.is_zero()) {
                assert!(
                    matches!(out, ActionOutcome::KnownZero),
                    "degree {}",
                    gen.degree
                );
            } else {
                assert!(matches!(out, ActionOutcome::Mapped { .. }));
            }
        }
        // Degree-zero generators act on the top weight by the character.
        let d1 = win
            .gens
            .iter()
            .position(|g| g.degree.is_zero() && !g.element.d_terms().is_empty())
            .unwrap();
        match win.act(d1, &top) {
            ActionOutcome::Mapped { target, matrix, exact } => {
                assert_eq!(target, top);
                assert_eq!(matrix.get(0, 0), &Scalar::from_fraction(1, 2).unwrap());
                assert!(exact);
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn every_level_one_vector_is_singular() {
        let module = character_module();
        let report = find_singular_vectors(&module.window, -1).unwrap();
        assert_eq!(report.vectors.len(), 10);
        assert!(report.vectors.iter().all(|v| v.fully_checked));
    }

    #[test]
    fn character_quotient_collapses_to_the_inducing_line() {
        let module = character_module();
        let quotient = irreducible_quotient(&module.window).unwrap();
        assert_eq!(quotient.dims.len(), 1);
        assert_eq!(quotient.dims[&LatticeVector(vec![0, 0])], 1);
        let classification = classify_truncated(&quotient, 1, 1);
        assert_eq!(
            classification.verdict,
            ClassVerdict::GeneralizedHighestWeight
        );
    }

    #[test]
    fn window_actions_respect_brackets() {
        // [a, b] v = a (b v) - b (a v) wherever every stored action allows
        // both routes; checks the straightening end to end.
        let module = character_module();
        let win = &module.window;
        let tri = win.tri.as_ref().unwrap();
        let kind = AlgebraKind::ExtendedDivergenceZero;
        #[derive(Clone, PartialEq, Debug)]
        enum Img {
            Zero,
            Vec(Vec<Scalar>),
            Unknown,
        }
        let apply = |gi: usize, w: &LatticeVector, v: &[Scalar]| -> Img {
            match win.act(gi, w) {
                ActionOutcome::Mapped { matrix, .. } => {
                    let r = matrix.apply(v).unwrap();
                    if r.iter().all(Scalar::is_zero) {
                        Img::Zero
                    } else {
                        Img::Vec(r)
                    }
                }
                ActionOutcome::KnownZero => Img::Zero,
                ActionOutcome::OutOfWindow => Img::Unknown,
            }
        };
        let compose = |gi: usize, at: &LatticeVector, img: &Img| -> Img {
            match img {
                Img::Zero => Img::Zero,
                Img::Unknown => Img::Unknown,
                Img::Vec(v) => apply(gi, at, v),
            }
        };
        let mut checked = 0usize;
        for (ai, a) in win.gens.iter().enumerate() {
            for (bi, b) in win.gens.iter().enumerate() {
                let deg = &a.degree + &b.degree;
                let bracket = a.element.bracket(&b.element).unwrap();
                // Resolve the bracket over acting generators; pairs whose
                // bracket leaves the acting set are skipped.
                let mut parts: Vec<(usize, Scalar)> = Vec::new();
                let mut resolved = true;
                if !bracket.is_zero() {
                    let comp = graded_component(kind, 2, &deg).unwrap();
                    for (slot, c) in comp.coords_of(&bracket).unwrap().into_iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        match win
                            .gens
                            .iter()
                            .position(|g| g.degree == deg && g.element == comp.basis[slot])
                        {
                            Some(gci) => parts.push((gci, c)),
                            None => {
                                resolved = false;
                                break;
                            }
                        }
                    }
                }
                if !resolved {
                    continue;
                }
                for (w, dim) in win.weights() {
                    if tri.level_of(&w).unwrap() < -1 {
                        continue;
                    }
                    'col: for col in 0..dim {
                        let mut v = vec![Scalar::zero(); dim];
                        v[col] = Scalar::one();
                        let tdim = win.dims.get(&(&w + &deg)).copied().unwrap_or(0);
                        let ab = compose(ai, &(&w + &b.degree), &apply(bi, &w, &v));
                        let ba = compose(bi, &(&w + &a.degree), &apply(ai, &w, &v));
                        let mut rhs = vec![Scalar::zero(); tdim];
                        match (&ab, &ba) {
                            (Img::Unknown, _) | (_, Img::Unknown) => continue 'col,
                            _ => {
                                if let Img::Vec(x) = &ab {
                                    for (r, t) in rhs.iter_mut().zip(x) {
                                        *r += t;
                                    }
                                }
                                if let Img::Vec(x) = &ba {
                                    for (r, t) in rhs.iter_mut().zip(x) {
                                        *r -= t;
                                    }
                                }
                            }
                        }
                        let mut lhs = vec![Scalar::zero(); tdim];
                        for (gci, c) in &parts {
                            match apply(*gci, &w, &v) {
                                Img::Vec(x) => {
                                    for (l, t) in lhs.iter_mut().zip(&x) {
                                        *l += &(c * t);
                                    }
                                }
                                Img::Zero => {}
                                Img::Unknown => continue 'col,
                            }
                        }
                        assert_eq!(lhs, rhs, "a = {}, b = {}, w = {w}", a.degree, b.degree);
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 500, "only {checked} bracket cases were checkable");
    }

    #[test]
    fn jet_restriction_slice_has_fiber_multiplicities() {
        let tri = std_tri();
        let irrep = build_irrep(2, &[0], Scalar::zero(), 10).unwrap();
        let module = JetModule::new(
            irrep,
            vec![Scalar::from_fraction(1, 3).unwrap(), Scalar::zero()],
            Scalar::from_int(1),
        )
        .unwrap();
        let inducing = InducingModule::JetRestriction {
            module,
            x_window: 1,
        };
        let params = VermaParams {
            kind: AlgebraKind::ExtendedDivergenceZero,
            depth: 1,
            m_window: 1,
            basis_cap: 10_000,
        };
        let built = build_truncated(&tri, &inducing, &params).unwrap();
        let win = &built.window;
        // Level-zero slice: one fiber copy per stored offset.
        for s in -1..=1i64 {
            assert_eq!(win.dims[&LatticeVector(vec![s, 0])], 1);
        }
        // Level -1 at coordinate 0: three offset splittings times two
        // generator slots.
        assert_eq!(win.dims[&LatticeVector(vec![0, -1])], 6);
        // Degree-zero generators act diagonally by base + offset.
        let d1 = win
            .gens
            .iter()
            .position(|g| g.degree.is_zero() && !g.element.d_terms().is_empty())
            .unwrap();
        match win.act(d1, &LatticeVector(vec![1, 0])) {
            ActionOutcome::Mapped { matrix, .. } => {
                assert_eq!(matrix.get(0, 0), &Scalar::from_fraction(4, 3).unwrap());
            }
            other => panic!("unexpected outcome {other:?}"),
        }
        // The slice keeps full support on level zero, so unstored offsets
        // stay out-of-window rather than known-zero.
        let t1 = win
            .gens
            .iter()
            .position(|g| {
                g.degree == LatticeVector(vec![1, 0]) && g.element.d_terms().is_empty()
            })
            .unwrap();
        assert!(matches!(
            win.act(t1, &LatticeVector(vec![1, 0])),
            ActionOutcome::OutOfWindow
        ));
    }
}
