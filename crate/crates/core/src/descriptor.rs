//! Versioned JSON descriptors for everything the tools read and write.
//!
//! Every document carries a `schema_version`; parsing rejects any other
//! version so stale files fail loudly instead of deserializing into
//! nonsense. Unknown fields are rejected for the same reason. `describe`
//! turns a runtime value into its descriptor and `build` validates a
//! descriptor and reconstructs the runtime value.
//!
//! Window descriptors list only tabulated actions: an absent
//! `(gen, source)` pair means the image left the window, exactly as in
//! [`MaterializedWindow`].

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, AlgebraKind};
use crate::error::{Error, Result};
use crate::halfplane::QuadraticIrrational;
use crate::irrep::{build_irrep, Irrep};
use crate::jet::{JetModule, WeightSupport};
use crate::lattice::LatticeVector;
use crate::linalg::Matrix;
use crate::report::{Check, Report};
use crate::scalar::{CoeffVec, Scalar};
use crate::verma::{
    build_truncated, InducingModule, SingularReport, TriangularData, TruncatedModule, VermaParams,
};
use crate::windowed::{
    ClassVerdict, Classification, Flags, GhwReport, LeakEntry, MaterializedWindow, StoredAction,
    WindowGenerator,
};

pub const SCHEMA_VERSION: u32 = 1;

fn expect_version(found: u32) -> Result<()> {
    if found == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(Error::SchemaVersion {
            expected: SCHEMA_VERSION,
            found,
        })
    }
}

/// Documents that carry their own schema version.
pub trait Versioned {
    fn schema_version(&self) -> u32;
}

/// Parses a JSON document and checks its schema version.
pub fn parse_versioned<T>(text: &str) -> Result<T>
where
    T: Versioned + DeserializeOwned,
{
    let value: T = serde_json::from_str(text)?;
    expect_version(value.schema_version())?;
    Ok(value)
}

macro_rules! versioned {
    ($($ty:ty),* $(,)?) => {$(
        impl Versioned for $ty {
            fn schema_version(&self) -> u32 {
                self.schema_version
            }
        }
    )*};
}

versioned! {
    ElementJson,
    IrrepJson,
    JetJson,
    TriangularJson,
    VermaRecipeJson,
    WindowJson,
    SingularJson,
    ClassificationJson,
    AlphaJson,
    SupportJson,
    ReportJson,
}

/// One vector-field term `sum_k u[k] t^degree d_k`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DTermJson {
    pub degree: LatticeVector,
    pub u: CoeffVec,
}

/// One abelian term `coeff t^degree`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TTermJson {
    pub degree: LatticeVector,
    pub coeff: Scalar,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub schema_version: u32,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub d_terms: Vec<DTermJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub t_terms: Vec<TTermJson>,
}

impl ElementJson {
    pub fn describe(el: &AlgebraElement) -> Self {
        ElementJson {
            schema_version: SCHEMA_VERSION,
            n: el.n(),
            d_terms: el
                .d_terms()
                .iter()
                .map(|(r, u)| DTermJson {
                    degree: r.clone(),
                    u: u.clone(),
                })
                .collect(),
            t_terms: el
                .t_terms()
                .iter()
                .map(|(r, c)| TTermJson {
                    degree: r.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
    }

    pub fn build(&self) -> Result<AlgebraElement> {
        expect_version(self.schema_version)?;
        let mut el = AlgebraElement::zero(self.n);
        for term in &self.d_terms {
            if term.degree.coords().len() != self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    found: term.degree.coords().len(),
                });
            }
            if term.u.len() != self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    found: term.u.len(),
                });
            }
            el.add_d(term.degree.clone(), term.u.clone());
        }
        for term in &self.t_terms {
            if term.degree.coords().len() != self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    found: term.degree.coords().len(),
                });
            }
            el.add_t(term.degree.clone(), term.coeff.clone());
        }
        Ok(el)
    }
}

/// One operator `E_ij` as a dense matrix, indices zero-based.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpJson {
    pub i: usize,
    pub j: usize,
    pub matrix: Matrix,
}

/// Output descriptor of a built `gl_n` module. Irreps are reconstructed
/// from `(n, lambda, c)`, so there is no `build` counterpart.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrrepJson {
    pub schema_version: u32,
    pub n: usize,
    /// Marks of the highest weight in the fundamental-weight basis.
    pub lambda: Vec<u64>,
    /// Scalar by which the identity matrix acts.
    pub c: Scalar,
    pub dim: usize,
    pub highest_weight_index: usize,
    /// Integral weights before the central shift, one per basis vector.
    pub weights: Vec<LatticeVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ops: Option<Vec<OpJson>>,
}

impl IrrepJson {
    pub fn describe(irrep: &Irrep, include_ops: bool) -> Self {
        let n = irrep.n();
        let ops = include_ops.then(|| {
            let mut out = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    out.push(OpJson {
                        i,
                        j,
                        matrix: irrep.e(i, j).to_dense(),
                    });
                }
            }
            out
        });
        IrrepJson {
            schema_version: SCHEMA_VERSION,
            n,
            lambda: irrep.marks().to_vec(),
            c: irrep.central().clone(),
            dim: irrep.dim(),
            highest_weight_index: irrep.hw_index(),
            weights: irrep.weights().to_vec(),
            ops,
        }
    }
}

/// Discriminator of jet-module descriptor files.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JetTag {
    Jet,
}

/// Recipe of a jet module: the fiber is the irrep of `(lambda, c)`,
/// `alpha` shifts the weight lattice and `e` is the abelian action.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetJson {
    pub schema_version: u32,
    pub kind: JetTag,
    pub n: usize,
    pub lambda: Vec<u64>,
    pub c: Scalar,
    pub alpha: CoeffVec,
    pub e: Scalar,
}

impl JetJson {
    pub fn describe(module: &JetModule) -> Self {
        JetJson {
            schema_version: SCHEMA_VERSION,
            kind: JetTag::Jet,
            n: module.n(),
            lambda: module.irrep().marks().to_vec(),
            c: module.irrep().central().clone(),
            alpha: module.alpha().clone(),
            e: module.e().clone(),
        }
    }

    pub fn build(&self, dim_cap: usize) -> Result<JetModule> {
        expect_version(self.schema_version)?;
        let irrep = build_irrep(self.n, &self.lambda, self.c.clone(), dim_cap)?;
        JetModule::new(irrep, self.alpha.clone(), self.e.clone())
    }
}

/// A level decomposition: `m_basis` spans the level-zero sublattice and
/// `beta` the transversal line. The combined matrix must be unimodular.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangularJson {
    pub schema_version: u32,
    pub m_basis: Vec<LatticeVector>,
    pub beta: LatticeVector,
}

impl TriangularJson {
    pub fn describe(tri: &TriangularData) -> Self {
        TriangularJson {
            schema_version: SCHEMA_VERSION,
            m_basis: tri.m_basis().to_vec(),
            beta: tri.beta().clone(),
        }
    }

    pub fn build(&self) -> Result<TriangularData> {
        expect_version(self.schema_version)?;
        TriangularData::new(self.m_basis.clone(), self.beta.clone())
    }
}

/// The level-zero module an induced module starts from.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum XJson {
    Character { lambda0: CoeffVec, c0: Scalar },
    JetRestriction { jet: JetJson, x_window: i64 },
}

impl XJson {
    pub fn describe(x: &InducingModule) -> Self {
        match x {
            InducingModule::Character { lambda0, c0 } => XJson::Character {
                lambda0: lambda0.clone(),
                c0: c0.clone(),
            },
            InducingModule::JetRestriction { module, x_window } => XJson::JetRestriction {
                jet: JetJson::describe(module),
                x_window: *x_window,
            },
        }
    }

    pub fn build(&self, dim_cap: usize) -> Result<InducingModule> {
        match self {
            XJson::Character { lambda0, c0 } => {
                if lambda0.is_empty() {
                    return Err(Error::InvalidDescriptor(
                        "character weight must have positive length".into(),
                    ));
                }
                Ok(InducingModule::Character {
                    lambda0: lambda0.clone(),
                    c0: c0.clone(),
                })
            }
            XJson::JetRestriction { jet, x_window } => {
                if *x_window < 0 {
                    return Err(Error::InvalidDescriptor(
                        "x_window must be nonnegative".into(),
                    ));
                }
                Ok(InducingModule::JetRestriction {
                    module: jet.build(dim_cap)?,
                    x_window: *x_window,
                })
            }
        }
    }
}

fn default_basis_cap() -> usize {
    100_000
}

fn default_dim_cap() -> usize {
    10_000
}

/// Everything needed to build a truncated induced module.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VermaRecipeJson {
    pub schema_version: u32,
    pub algebra: AlgebraKind,
    pub triangular: TriangularJson,
    pub inducing: XJson,
    pub depth: usize,
    pub m_window: i64,
    #[serde(default = "default_basis_cap")]
    pub basis_cap: usize,
    #[serde(default = "default_dim_cap")]
    pub dim_cap: usize,
}

impl VermaRecipeJson {
    pub fn build(&self) -> Result<TruncatedModule> {
        expect_version(self.schema_version)?;
        let tri = self.triangular.build()?;
        let inducing = self.inducing.build(self.dim_cap)?;
        let params = VermaParams {
            kind: self.algebra,
            depth: self.depth,
            m_window: self.m_window,
            basis_cap: self.basis_cap,
        };
        build_truncated(&tri, &inducing, &params)
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightDimJson {
    pub degree: LatticeVector,
    pub dim: usize,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenJson {
    pub degree: LatticeVector,
    pub element: ElementJson,
}

fn default_exact() -> bool {
    true
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum OutcomeJson {
    Mapped {
        target: LatticeVector,
        matrix: Matrix,
        #[serde(default = "default_exact")]
        exact: bool,
    },
    KnownZero,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionJson {
    pub gen: usize,
    pub source: LatticeVector,
    pub action: OutcomeJson,
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagsJson {
    #[serde(default)]
    pub window_limited: bool,
    #[serde(default)]
    pub window_unreliable: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl FlagsJson {
    pub fn describe(flags: &Flags) -> Self {
        FlagsJson {
            window_limited: flags.window_limited,
            window_unreliable: flags.window_unreliable,
            notes: flags.notes.clone(),
        }
    }

    pub fn build(&self) -> Flags {
        Flags {
            window_limited: self.window_limited,
            window_unreliable: self.window_unreliable,
            notes: self.notes.clone(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeakJson {
    pub context: String,
    pub degree: LatticeVector,
    pub detail: String,
}

/// Dump of a materialized window. `label` records how the window was
/// produced ("induced", "quotient", "jet"); it does not affect `build`.
/// The optional `singular` report is derived data carried along for
/// inspection; reconstruction ignores it.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowJson {
    pub schema_version: u32,
    pub label: String,
    pub n: usize,
    pub base_weight: CoeffVec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangular: Option<TriangularJson>,
    pub weights: Vec<WeightDimJson>,
    pub generators: Vec<GenJson>,
    pub actions: Vec<ActionJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub singular: Option<SingularJson>,
    #[serde(default)]
    pub flags: FlagsJson,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ledger: Vec<LeakJson>,
}

impl WindowJson {
    pub fn describe(win: &MaterializedWindow, label: impl Into<String>) -> Self {
        WindowJson {
            schema_version: SCHEMA_VERSION,
            label: label.into(),
            n: win.n,
            base_weight: win.base.clone(),
            triangular: win.tri.as_ref().map(TriangularJson::describe),
            weights: win
                .dims
                .iter()
                .map(|(w, d)| WeightDimJson {
                    degree: w.clone(),
                    dim: *d,
                })
                .collect(),
            generators: win
                .gens
                .iter()
                .map(|g| GenJson {
                    degree: g.degree.clone(),
                    element: ElementJson::describe(&g.element),
                })
                .collect(),
            actions: win
                .actions
                .iter()
                .map(|((gen, source), stored)| ActionJson {
                    gen: *gen,
                    source: source.clone(),
                    action: match stored {
                        StoredAction::Mapped { target, matrix, exact } => OutcomeJson::Mapped {
                            target: target.clone(),
                            matrix: matrix.clone(),
                            exact: *exact,
                        },
                        StoredAction::KnownZero => OutcomeJson::KnownZero,
                    },
                })
                .collect(),
            singular: None,
            flags: FlagsJson::describe(&win.flags),
            ledger: win
                .ledger
                .iter()
                .map(|l| LeakJson {
                    context: l.context.clone(),
                    degree: l.degree.clone(),
                    detail: l.detail.clone(),
                })
                .collect(),
        }
    }

    pub fn build(&self) -> Result<MaterializedWindow> {
        expect_version(self.schema_version)?;
        let n = self.n;
        if self.base_weight.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.base_weight.len(),
            });
        }
        let tri = match &self.triangular {
            Some(t) => {
                let tri = t.build()?;
                if tri.n() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: tri.n(),
                    });
                }
                Some(tri)
            }
            None => None,
        };
        let mut dims = BTreeMap::new();
        for w in &self.weights {
            if w.degree.coords().len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: w.degree.coords().len(),
                });
            }
            if w.dim == 0 {
                return Err(Error::InvalidDescriptor(format!(
                    "weight {} stored with dimension zero",
                    w.degree
                )));
            }
            if dims.insert(w.degree.clone(), w.dim).is_some() {
                return Err(Error::InvalidDescriptor(format!(
                    "weight {} listed twice",
                    w.degree
                )));
            }
        }
        let mut gens = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let element = g.element.build()?;
            if element.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: element.n(),
                });
            }
            if element.homogeneous_degree().as_ref() != Some(&g.degree) {
                return Err(Error::InvalidDescriptor(format!(
                    "generator listed at degree {} is not homogeneous of that degree",
                    g.degree
                )));
            }
            gens.push(WindowGenerator {
                degree: g.degree.clone(),
                element,
            });
        }
        let mut actions = BTreeMap::new();
        for a in &self.actions {
            if a.gen >= gens.len() {
                return Err(Error::IndexOutOfRange(format!(
                    "action generator index {}",
                    a.gen
                )));
            }
            let src_dim = dims.get(&a.source).copied().ok_or_else(|| {
                Error::InvalidDescriptor(format!(
                    "action source {} is not a stored weight",
                    a.source
                ))
            })?;
            let stored = match &a.action {
                OutcomeJson::Mapped { target, matrix, exact } => {
                    let tgt_dim = dims.get(target).copied().ok_or_else(|| {
                        Error::InvalidDescriptor(format!(
                            "action target {} is not a stored weight",
                            target
                        ))
                    })?;
                    if matrix.n_cols() != src_dim {
                        return Err(Error::DimensionMismatch {
                            expected: src_dim,
                            found: matrix.n_cols(),
                        });
                    }
                    if matrix.n_rows() != tgt_dim {
                        return Err(Error::DimensionMismatch {
                            expected: tgt_dim,
                            found: matrix.n_rows(),
                        });
                    }
                    StoredAction::Mapped {
                        target: target.clone(),
                        matrix: matrix.clone(),
                        exact: *exact,
                    }
                }
                OutcomeJson::KnownZero => StoredAction::KnownZero,
            };
            if actions.insert((a.gen, a.source.clone()), stored).is_some() {
                return Err(Error::InvalidDescriptor(format!(
                    "action ({}, {}) listed twice",
                    a.gen, a.source
                )));
            }
        }
        Ok(MaterializedWindow {
            n,
            base: self.base_weight.clone(),
            tri,
            dims,
            gens,
            actions,
            flags: self.flags.build(),
            ledger: self
                .ledger
                .iter()
                .map(|l| LeakEntry {
                    context: l.context.clone(),
                    degree: l.degree.clone(),
                    detail: l.detail.clone(),
                })
                .collect(),
        })
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingularVectorJson {
    pub weight: LatticeVector,
    pub coords: Vec<Scalar>,
    pub fully_checked: bool,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingularJson {
    pub schema_version: u32,
    pub level: i64,
    pub raiser_count: usize,
    pub vectors: Vec<SingularVectorJson>,
    pub flags: FlagsJson,
}

impl SingularJson {
    pub fn describe(report: &SingularReport) -> Self {
        SingularJson {
            schema_version: SCHEMA_VERSION,
            level: report.level,
            raiser_count: report.raiser_count,
            vectors: report
                .vectors
                .iter()
                .map(|v| SingularVectorJson {
                    weight: v.weight.clone(),
                    coords: v.coords.clone(),
                    fully_checked: v.fully_checked,
                })
                .collect(),
            flags: FlagsJson::describe(&report.flags),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictLabel {
    GeneralizedHighestWeight,
    CuspidalConsistent,
    Inconclusive,
}

impl From<ClassVerdict> for VerdictLabel {
    fn from(v: ClassVerdict) -> Self {
        match v {
            ClassVerdict::GeneralizedHighestWeight => VerdictLabel::GeneralizedHighestWeight,
            ClassVerdict::CuspidalConsistent => VerdictLabel::CuspidalConsistent,
            ClassVerdict::Inconclusive => VerdictLabel::Inconclusive,
        }
    }
}

impl From<VerdictLabel> for ClassVerdict {
    fn from(v: VerdictLabel) -> Self {
        match v {
            VerdictLabel::GeneralizedHighestWeight => ClassVerdict::GeneralizedHighestWeight,
            VerdictLabel::CuspidalConsistent => ClassVerdict::CuspidalConsistent,
            VerdictLabel::Inconclusive => ClassVerdict::Inconclusive,
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GhwHitJson {
    pub weight: LatticeVector,
    pub vectors: Vec<Vec<Scalar>>,
    pub constrained_by: usize,
    pub certified_zero: usize,
}

/// Cone-annihilation evidence. Flag deltas of the scan are already merged
/// into the surrounding classification, so no flags appear here.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GhwJson {
    pub cone_floor: i64,
    pub hits: Vec<GhwHitJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<LatticeVector>,
}

impl GhwJson {
    pub fn describe(report: &GhwReport) -> Self {
        GhwJson {
            cone_floor: report.cone_floor,
            hits: report
                .hits
                .iter()
                .map(|h| GhwHitJson {
                    weight: h.weight.clone(),
                    vectors: h.vectors.clone(),
                    constrained_by: h.constrained_by,
                    certified_zero: h.certified_zero,
                })
                .collect(),
            skipped: report.skipped.clone(),
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationJson {
    pub schema_version: u32,
    pub verdict: VerdictLabel,
    pub detail: String,
    pub max_multiplicity: usize,
    pub bound: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ghw: Option<GhwJson>,
    pub flags: FlagsJson,
}

impl ClassificationJson {
    pub fn describe(c: &Classification) -> Self {
        ClassificationJson {
            schema_version: SCHEMA_VERSION,
            verdict: c.verdict.into(),
            detail: c.detail.clone(),
            max_multiplicity: c.max_multiplicity,
            bound: c.bound,
            ghw: c.ghw.as_ref().map(GhwJson::describe),
            flags: FlagsJson::describe(&c.flags),
        }
    }
}

/// A real quadratic irrational `(a + b sqrt(d)) / q`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaJson {
    pub schema_version: u32,
    pub a: i64,
    pub b: i64,
    pub d: i64,
    pub q: i64,
}

impl AlphaJson {
    pub fn describe(alpha: &QuadraticIrrational) -> Self {
        let (a, b, d, q) = alpha.parts();
        AlphaJson {
            schema_version: SCHEMA_VERSION,
            a,
            b,
            d,
            q,
        }
    }

    pub fn build(&self) -> Result<QuadraticIrrational> {
        expect_version(self.schema_version)?;
        QuadraticIrrational::new(self.a, self.b, self.d, self.q)
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupportJson {
    pub schema_version: u32,
    pub alpha: CoeffVec,
    pub entries: Vec<(LatticeVector, usize)>,
}

impl SupportJson {
    pub fn describe(support: &WeightSupport) -> Self {
        SupportJson {
            schema_version: SCHEMA_VERSION,
            alpha: support.alpha.clone(),
            entries: support.entries.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportJson {
    pub schema_version: u32,
    pub all_passed: bool,
    pub checks: Vec<Check>,
}

impl ReportJson {
    pub fn describe(report: &Report) -> Self {
        ReportJson {
            schema_version: SCHEMA_VERSION,
            all_passed: report.all_passed(),
            checks: report.checks.clone(),
        }
    }
}
