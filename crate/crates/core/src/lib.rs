//! Exact computer algebra for the extended divergence-zero vector-field
//! Lie algebra on the `n`-torus, its jet (tensor) weight modules, and
//! window-truncated generalized highest-weight constructions.
//!
//! All arithmetic is over the Gaussian rationals with arbitrary precision;
//! nothing in this crate rounds. The main layers are:
//!
//! * [`scalar`], [`lattice`], [`linalg`]: exact scalars, `Z^n` degrees and
//!   exact linear algebra,
//! * [`algebra`]: elements, brackets, the `Z^n` grading, coordinate
//!   changes,
//! * [`irrep`]: finite-dimensional `gl_n` irreducibles built as cyclic
//!   subspaces of tensor powers of exterior powers,
//! * [`jet`]: the weight modules `V(lambda, alpha, e)` carried by an
//!   irreducible times Laurent monomials, with exhaustive exact axiom
//!   checks on degree windows,
//! * [`windowed`]: window views of weight modules and the generalized
//!   highest-weight / cuspidal classification evidence,
//! * [`verma`]: triangular decompositions of `Z^n`, window-truncated
//!   induced modules, singular vectors and irreducible quotients,
//! * [`halfplane`]: the exact half-plane order on `Z^2` cut out by an
//!   irrational slope,
//! * [`descriptor`]: versioned JSON descriptors for every object above,
//! * [`report`]: pass/fail check reports shared with the CLI.

pub mod algebra;
pub mod descriptor;
pub mod error;
pub mod halfplane;
pub mod irrep;
pub mod jet;
pub mod lattice;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod verma;
pub mod windowed;

pub use algebra::{
    find_orthogonal, graded_component, window_basis, AlgebraElement, AlgebraKind, GradedComponent,
};
pub use error::{Error, Result};
pub use halfplane::{HalfPlanePartition, QuadraticIrrational};
pub use irrep::{box_count, build_irrep, weyl_dim, Irrep};
pub use jet::{f_criterion, JetModule, JetVector, Verdict, WeightSupport};
pub use lattice::{window_points, IntMatrix, LatticeVector};
pub use linalg::{Matrix, SparseOp, SpanBuilder};
pub use report::{Check, Report, Status};
pub use scalar::{CoeffVec, Scalar};
pub use verma::{
    acting_generators, build_truncated, find_singular_vectors, irreducible_quotient,
    negative_generators, rank2_bar, rank2_d, InducingModule, SingularReport, SingularVector,
    TriangularData, TruncatedModule, VermaParams,
};
pub use windowed::{
    classify_truncated, cyclic_span_window, detect_ghw_vectors, ActionOutcome, ActionWindow,
    ClassVerdict, Classification, Flags, GhwHit, GhwReport, JetWindow, LeakEntry,
    MaterializedWindow, SpanReport, StoredAction, WindowGenerator,
};
