//! Window views of weight modules.
//!
//! A window view exposes finitely many weight spaces of a `Z^n`-graded
//! module together with the action matrices of finitely many homogeneous
//! generators. Three outcomes are distinguished when a generator is
//! applied to a weight space, and the distinction carries all the honesty
//! of the truncated computations:
//!
//! * `Mapped`: the image lies in a stored weight space; `exact` records
//!   whether the matrix is the full action or dropped terms the window
//!   does not store (an inexact matrix is the stored-basis projection of
//!   the true action, so kernels computed from it are upper bounds),
//! * `KnownZero`: the image vanishes in the full module, certified by the
//!   module structure (not by truncation),
//! * `OutOfWindow`: the image lives outside the stored window; nothing is
//!   claimed about it.
//!
//! Over this interface the crate detects generalized highest-weight
//! vectors, computes windowed cyclic spans, and classifies a module
//! window as `GeneralizedHighestWeight` / `CuspidalConsistent` /
//! `Inconclusive`.

use std::collections::BTreeMap;

use crate::algebra::{window_basis, AlgebraElement, AlgebraKind};
use crate::error::{Error, Result};
use crate::jet::{JetModule, JetVector};
use crate::lattice::{window_points, LatticeVector};
use crate::linalg::{Matrix, SpanBuilder};
use crate::scalar::{CoeffVec, Scalar};
use crate::verma::TriangularData;

/// A homogeneous generator used by a window view.
#[derive(Clone, Debug)]
pub struct WindowGenerator {
    pub degree: LatticeVector,
    pub element: AlgebraElement,
}

/// Result of applying one generator to one stored weight space.
#[derive(Clone, Debug)]
pub enum ActionOutcome {
    Mapped {
        target: LatticeVector,
        matrix: Matrix,
        /// False when the stored matrix lost terms to a window cap, so it
        /// is only the projection of the true action.
        exact: bool,
    },
    KnownZero,
    OutOfWindow,
}

/// Truncation bookkeeping attached to window views and everything
/// computed from them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    /// Some question could not be asked inside the window (for example a
    /// cone generator whose image leaves the stored weights).
    pub window_limited: bool,
    /// Some stored answer is incomplete: a computation dropped terms that
    /// left the window, so affected matrices are lower bounds.
    pub window_unreliable: bool,
    pub notes: Vec<String>,
}

impl Flags {
    pub fn merge(&mut self, other: &Flags) {
        self.window_limited |= other.window_limited;
        self.window_unreliable |= other.window_unreliable;
        self.notes.extend(other.notes.iter().cloned());
    }
}

/// One dropped term: a computation produced something at `degree` that the
/// window does not store.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeakEntry {
    pub context: String,
    pub degree: LatticeVector,
    pub detail: String,
}

/// Common interface of window views.
pub trait ActionWindow {
    fn n(&self) -> usize;
    /// The weight of the stored lattice offsets: actual weights are
    /// `base_weight + offset`.
    fn base_weight(&self) -> &CoeffVec;
    /// Stored offsets with their exact multiplicities, sorted.
    fn weights(&self) -> Vec<(LatticeVector, usize)>;
    fn dim_at(&self, w: &LatticeVector) -> usize;
    fn generators(&self) -> &[WindowGenerator];
    fn act(&self, gen: usize, w: &LatticeVector) -> ActionOutcome;
    fn flags(&self) -> Flags {
        Flags::default()
    }
    /// Triangular data when the window tracks a level decomposition.
    fn triangular(&self) -> Option<&TriangularData> {
        None
    }
}

/// A fully materialized window: every action tabulated. This is the dump
/// and interchange format for truncated modules; absent action entries
/// mean `OutOfWindow`.
#[derive(Clone, Debug)]
pub struct MaterializedWindow {
    pub n: usize,
    pub base: CoeffVec,
    pub tri: Option<TriangularData>,
    pub dims: BTreeMap<LatticeVector, usize>,
    pub gens: Vec<WindowGenerator>,
    pub actions: BTreeMap<(usize, LatticeVector), StoredAction>,
    pub flags: Flags,
    pub ledger: Vec<LeakEntry>,
}

#[derive(Clone, Debug)]
pub enum StoredAction {
    Mapped {
        target: LatticeVector,
        matrix: Matrix,
        /// Mirrors `ActionOutcome::Mapped::exact`.
        exact: bool,
    },
    KnownZero,
}

impl ActionWindow for MaterializedWindow {
    fn n(&self) -> usize {
        self.n
    }

    fn base_weight(&self) -> &CoeffVec {
        &self.base
    }

    fn weights(&self) -> Vec<(LatticeVector, usize)> {
        self.dims.iter().map(|(w, d)| (w.clone(), *d)).collect()
    }

    fn dim_at(&self, w: &LatticeVector) -> usize {
        self.dims.get(w).copied().unwrap_or(0)
    }

    fn generators(&self) -> &[WindowGenerator] {
        &self.gens
    }

    fn act(&self, gen: usize, w: &LatticeVector) -> ActionOutcome {
        match self.actions.get(&(gen, w.clone())) {
            Some(StoredAction::Mapped { target, matrix, exact }) => ActionOutcome::Mapped {
                target: target.clone(),
                matrix: matrix.clone(),
                exact: *exact,
            },
            Some(StoredAction::KnownZero) => ActionOutcome::KnownZero,
            None => ActionOutcome::OutOfWindow,
        }
    }

    fn flags(&self) -> Flags {
        self.flags.clone()
    }

    fn triangular(&self) -> Option<&TriangularData> {
        self.tri.as_ref()
    }
}

/// Window view of a jet module over `[-w, w]^n`: every weight space is a
/// copy of the fiber, generators are the homogeneous basis elements of the
/// chosen algebra with degrees in the same window.
pub struct JetWindow<'a> {
    module: &'a JetModule,
    window: i64,
    gens: Vec<WindowGenerator>,
    degrees: Vec<LatticeVector>,
}

impl<'a> JetWindow<'a> {
    pub fn new(module: &'a JetModule, kind: AlgebraKind, window: i64) -> Result<Self> {
        let gens = window_basis(kind, module.n(), window)?
            .into_iter()
            .map(|(degree, element)| WindowGenerator { degree, element })
            .collect();
        Ok(JetWindow {
            module,
            window,
            gens,
            degrees: window_points(module.n(), window),
        })
    }

    pub fn materialize(&self) -> MaterializedWindow {
        let mut dims = BTreeMap::new();
        for w in &self.degrees {
            dims.insert(w.clone(), self.module.dim_fiber());
        }
        let mut actions = BTreeMap::new();
        for (g, _) in self.gens.iter().enumerate() {
            for w in &self.degrees {
                if let ActionOutcome::Mapped { target, matrix, exact } = self.act(g, w) {
                    actions.insert((g, w.clone()), StoredAction::Mapped { target, matrix, exact });
                }
            }
        }
        MaterializedWindow {
            n: self.module.n(),
            base: self.module.alpha().clone(),
            tri: None,
            dims,
            gens: self.gens.clone(),
            actions,
            flags: Flags::default(),
            ledger: Vec::new(),
        }
    }
}

impl ActionWindow for JetWindow<'_> {
    fn n(&self) -> usize {
        self.module.n()
    }

    fn base_weight(&self) -> &CoeffVec {
        self.module.alpha()
    }

    fn weights(&self) -> Vec<(LatticeVector, usize)> {
        self.degrees
            .iter()
            .map(|w| (w.clone(), self.module.dim_fiber()))
            .collect()
    }

    fn dim_at(&self, w: &LatticeVector) -> usize {
        if w.in_window(self.window) {
            self.module.dim_fiber()
        } else {
            0
        }
    }

    fn generators(&self) -> &[WindowGenerator] {
        &self.gens
    }

    fn act(&self, gen: usize, w: &LatticeVector) -> ActionOutcome {
        let g = &self.gens[gen];
        let target = &g.degree + w;
        if !target.in_window(self.window) {
            return ActionOutcome::OutOfWindow;
        }
        let fiber = self.module.dim_fiber();
        let mut matrix = Matrix::zeros(fiber, fiber);
        for b in 0..fiber {
            let image = self
                .module
                .act(&g.element, &JetVector::basis(w.clone(), b))
                .expect("element and module share n");
            for ((deg, row), c) in image.terms() {
                debug_assert_eq!(*deg, target);
                matrix.set(*row, b, c.clone());
            }
        }
        // The jet action is degree-homogeneous with a single stored
        // target, so nothing can be dropped.
        ActionOutcome::Mapped {
            target,
            matrix,
            exact: true,
        }
    }
}

/// Vectors of one stored weight space annihilated by the entire cone of
/// generators of degree `>= (k, ..., k)` that could be checked.
#[derive(Clone, Debug)]
pub struct GhwHit {
    pub weight: LatticeVector,
    /// Kernel basis in the weight space coordinates.
    pub vectors: Vec<Vec<Scalar>>,
    /// How many cone generators contributed a matrix constraint. Inexact
    /// matrices are included — their kernels only overestimate — and are
    /// flagged on the report.
    pub constrained_by: usize,
    /// How many cone generators were certified zero by module structure.
    pub certified_zero: usize,
}

#[derive(Clone, Debug)]
pub struct GhwReport {
    pub cone_floor: i64,
    pub hits: Vec<GhwHit>,
    /// Weights where no cone generator was checkable inside the window.
    pub skipped: Vec<LatticeVector>,
    pub flags: Flags,
}

/// Scans every stored weight space for vectors killed by all generators in
/// the cone `degree >= (k, ..., k)` componentwise. A weight with no
/// checkable cone generator is skipped (window-limited) rather than
/// reported vacuously.
pub fn detect_ghw_vectors(win: &impl ActionWindow, cone_floor: i64) -> Result<GhwReport> {
    let cone: Vec<usize> = win
        .generators()
        .iter()
        .enumerate()
        .filter(|(_, g)| g.degree.all_at_least(cone_floor))
        .map(|(i, _)| i)
        .collect();
    if cone.is_empty() {
        return Err(Error::WindowTooSmall(format!(
            "no generator of degree >= ({cone_floor}, ...) in the window"
        )));
    }
    // Report flags are deltas on top of the window's own flags.
    let mut flags = Flags::default();
    let mut hits = Vec::new();
    let mut skipped = Vec::new();
    for (w, dim) in win.weights() {
        if dim == 0 {
            continue;
        }
        let mut stacked: Option<Matrix> = None;
        let mut constrained = 0;
        let mut certified = 0;
        for &g in &cone {
            match win.act(g, &w) {
                ActionOutcome::Mapped { matrix, exact, .. } => {
                    constrained += 1;
                    flags.window_unreliable |= !exact;
                    stacked = Some(match stacked {
                        None => matrix,
                        Some(prev) => prev.vstack(&matrix)?,
                    });
                }
                ActionOutcome::KnownZero => certified += 1,
                ActionOutcome::OutOfWindow => {}
            }
        }
        if constrained == 0 && certified == 0 {
            skipped.push(w.clone());
            flags.window_limited = true;
            continue;
        }
        let vectors = match &stacked {
            Some(m) => m.kernel_basis(),
            // Every checkable cone generator is certified zero: the whole
            // space is annihilated.
            None => (0..dim)
                .map(|i| {
                    let mut v = vec![Scalar::zero(); dim];
                    v[i] = Scalar::one();
                    v
                })
                .collect(),
        };
        if !vectors.is_empty() {
            hits.push(GhwHit {
                weight: w.clone(),
                vectors,
                constrained_by: constrained,
                certified_zero: certified,
            });
        }
    }
    Ok(GhwReport {
        cone_floor,
        hits,
        skipped,
        flags,
    })
}

/// Windowed cyclic span: closure of a seed vector under all stored
/// generator actions. Boundary crossings are counted, not followed.
#[derive(Clone, Debug)]
pub struct SpanReport {
    /// Per weight: (reached dimension, stored dimension).
    pub reached: BTreeMap<LatticeVector, (usize, usize)>,
    pub boundary_crossings: usize,
    /// True when the reached dimensions exhaust every stored weight space.
    pub fills_window: bool,
}

pub fn cyclic_span_window(
    win: &impl ActionWindow,
    seed_weight: &LatticeVector,
    seed: &[Scalar],
) -> Result<SpanReport> {
    let dim = win.dim_at(seed_weight);
    if dim == 0 {
        return Err(Error::InvalidDescriptor(format!(
            "seed weight {seed_weight} is not stored"
        )));
    }
    if seed.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: seed.len(),
        });
    }
    let mut spans: BTreeMap<LatticeVector, SpanBuilder> = BTreeMap::new();
    for (w, d) in win.weights() {
        spans.insert(w, SpanBuilder::new(d));
    }
    let mut queue: Vec<(LatticeVector, Vec<Scalar>)> = Vec::new();
    let mut boundary = 0usize;
    if spans.get_mut(seed_weight).unwrap().insert(seed) {
        queue.push((seed_weight.clone(), seed.to_vec()));
    }
    while let Some((w, v)) = queue.pop() {
        for g in 0..win.generators().len() {
            match win.act(g, &w) {
                ActionOutcome::Mapped {
                    target,
                    matrix,
                    exact: true,
                } => {
                    let image = matrix.apply(&v)?;
                    if image.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    if spans.get_mut(&target).unwrap().insert(&image) {
                        queue.push((target, image));
                    }
                }
                ActionOutcome::KnownZero => {}
                // An inexact image is not a vector of the module, so it is
                // treated like a boundary crossing rather than followed.
                ActionOutcome::Mapped { .. } | ActionOutcome::OutOfWindow => boundary += 1,
            }
        }
    }
    let mut reached = BTreeMap::new();
    let mut fills = true;
    for (w, d) in win.weights() {
        let got = spans[&w].rank();
        fills &= got == d;
        reached.insert(w, (got, d));
    }
    Ok(SpanReport {
        reached,
        boundary_crossings: boundary,
        fills_window: fills,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClassVerdict {
    GeneralizedHighestWeight,
    CuspidalConsistent,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub verdict: ClassVerdict,
    pub detail: String,
    pub max_multiplicity: usize,
    pub bound: usize,
    pub ghw: Option<GhwReport>,
    pub flags: Flags,
}

/// Classifies a window by the dichotomy evidence: generalized
/// highest-weight vectors first, otherwise multiplicities uniformly below
/// the bound, otherwise inconclusive.
pub fn classify_truncated(
    win: &impl ActionWindow,
    bound: usize,
    cone_floor: i64,
) -> Classification {
    let mut flags = win.flags();
    let max_mult = win.weights().iter().map(|(_, d)| *d).max().unwrap_or(0);
    match detect_ghw_vectors(win, cone_floor) {
        Ok(report) => {
            flags.merge(&report.flags);
            if !report.hits.is_empty() {
                let detail = format!(
                    "{} weight space(s) carry vectors annihilated by the degree cone >= ({cone_floor}, ...)",
                    report.hits.len()
                );
                return Classification {
                    verdict: ClassVerdict::GeneralizedHighestWeight,
                    detail,
                    max_multiplicity: max_mult,
                    bound,
                    ghw: Some(report),
                    flags,
                };
            }
            if max_mult <= bound {
                return Classification {
                    verdict: ClassVerdict::CuspidalConsistent,
                    detail: format!(
                        "no cone-annihilated vectors; multiplicities bounded by {max_mult} <= {bound}"
                    ),
                    max_multiplicity: max_mult,
                    bound,
                    ghw: Some(report),
                    flags,
                };
            }
            Classification {
                verdict: ClassVerdict::Inconclusive,
                detail: format!(
                    "no cone-annihilated vectors but multiplicity {max_mult} exceeds bound {bound}"
                ),
                max_multiplicity: max_mult,
                bound,
                ghw: Some(report),
                flags,
            }
        }
        Err(e) => Classification {
            verdict: ClassVerdict::Inconclusive,
            detail: format!("cone scan impossible: {e}"),
            max_multiplicity: max_mult,
            bound,
            ghw: None,
            flags,
        },
    }
}
