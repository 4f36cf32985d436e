//! Subcommand implementations. Every command produces an [`Outcome`]:
//! a canonical JSON payload (identical across runs unless `--timing`
//! is requested), a plain-text table view, and a flag recording whether
//! any invariant failed. Exit-code policy lives in `main`.

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Subcommand, ValueEnum};
use serde::Serialize;

use divzero::descriptor::{
    parse_versioned, AlphaJson, ClassificationJson, ElementJson, IrrepJson, JetJson, SingularJson,
    SupportJson, VermaRecipeJson, WindowJson, SCHEMA_VERSION,
};
use divzero::report::{Check, Report};
use divzero::{
    box_count, build_irrep, classify_truncated, find_singular_vectors, graded_component,
    irreducible_quotient, ActionWindow, AlgebraKind, ClassVerdict, Error, JetWindow,
    LatticeVector, QuadraticIrrational, Result, Scalar, Verdict,
};

use crate::render;

/// What a finished command hands back to `main`.
pub struct Outcome {
    /// Pretty-printed JSON document, no trailing newline.
    pub payload: String,
    /// Aligned plain-text view of the same result.
    pub table: String,
    /// True when an invariant check failed or an expectation was missed.
    pub failed: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum KindArg {
    Witt,
    ExtendedWitt,
    DivergenceZero,
    ExtendedDivergenceZero,
}

impl From<KindArg> for AlgebraKind {
    fn from(k: KindArg) -> AlgebraKind {
        match k {
            KindArg::Witt => AlgebraKind::Witt,
            KindArg::ExtendedWitt => AlgebraKind::ExtendedWitt,
            KindArg::DivergenceZero => AlgebraKind::DivergenceZero,
            KindArg::ExtendedDivergenceZero => AlgebraKind::ExtendedDivergenceZero,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum VerdictArg {
    GeneralizedHighestWeight,
    CuspidalConsistent,
    Inconclusive,
}

impl From<VerdictArg> for ClassVerdict {
    fn from(v: VerdictArg) -> ClassVerdict {
        match v {
            VerdictArg::GeneralizedHighestWeight => ClassVerdict::GeneralizedHighestWeight,
            VerdictArg::CuspidalConsistent => ClassVerdict::CuspidalConsistent,
            VerdictArg::Inconclusive => ClassVerdict::Inconclusive,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Bracket two algebra elements given as element descriptor files.
    Bracket {
        /// Left operand, an element descriptor file.
        lhs: PathBuf,
        /// Right operand, an element descriptor file.
        rhs: PathBuf,
    },
    /// Dimensions and bases of graded components.
    Grading {
        /// Which algebra the components live in.
        #[arg(long, value_enum, default_value = "extended-divergence-zero")]
        kind: KindArg,
        /// Rank of the degree lattice.
        #[arg(long)]
        n: usize,
        /// A single degree, comma-separated (e.g. `-1,2`).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        degree: Option<Vec<i64>>,
        /// Sweep every degree with coordinates in `[-W, W]` instead.
        #[arg(long)]
        window: Option<i64>,
    },
    /// Build a finite-dimensional irreducible weight module.
    Irrep {
        /// Rank of the algebra (the module is over gl_n).
        #[arg(long)]
        n: usize,
        /// Dominant integral marks, comma-separated, length `n - 1`.
        #[arg(long, value_delimiter = ',')]
        lambda: Vec<u64>,
        /// Central scalar, `a/b` or `re,im`; defaults to the box count.
        #[arg(long)]
        c: Option<String>,
        /// Refuse to build modules larger than this.
        #[arg(long, default_value_t = 5000)]
        dim_cap: usize,
        /// Omit the operator matrices from the descriptor.
        #[arg(long)]
        no_ops: bool,
        /// Re-check the commutator and weight structure, reporting pass/fail.
        #[arg(long)]
        validate: bool,
    },
    /// Check the module axiom and action associativity of a jet module.
    JetCheck {
        /// Jet module descriptor file.
        module: PathBuf,
        /// Degree window `[-W, W]^n` to sweep.
        #[arg(long, default_value_t = 1)]
        window: i64,
        /// Which algebra acts.
        #[arg(long, value_enum, default_value = "extended-divergence-zero")]
        kind: KindArg,
        /// Cap on the fiber dimension when rebuilding the module.
        #[arg(long, default_value_t = 5000)]
        dim_cap: usize,
    },
    /// Weight support of a jet module over a degree window.
    JetSupport {
        /// Jet module descriptor file.
        module: PathBuf,
        /// Degree window `[-W, W]^n`.
        #[arg(long, default_value_t = 1)]
        window: i64,
        /// Which algebra acts when materializing the dump.
        #[arg(long, value_enum, default_value = "extended-divergence-zero")]
        kind: KindArg,
        /// Also write a full action-window dump to this path.
        #[arg(long)]
        dump: Option<PathBuf>,
        /// Cap on the fiber dimension when rebuilding the module.
        #[arg(long, default_value_t = 5000)]
        dim_cap: usize,
    },
    /// Build a truncated induced module from a recipe file.
    VermaBuild {
        /// Recipe descriptor file.
        recipe: PathBuf,
        /// Level to scan for singular vectors (negative).
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        singular_level: i64,
    },
    /// Scan a window dump for singular vectors at one level.
    Singular {
        /// Window dump file.
        dump: PathBuf,
        /// Level to scan (negative).
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        level: i64,
    },
    /// Quotient a window dump by the submodule its singular vectors generate.
    Quotient {
        /// Window dump file.
        dump: PathBuf,
    },
    /// Classify a window dump as highest-weight-like or cuspidal-consistent.
    Classify {
        /// Window dump file.
        dump: PathBuf,
        /// Uniform multiplicity bound to test against.
        #[arg(long)]
        bound: usize,
        /// Generators with all degree coordinates `>= floor` count as raising.
        #[arg(long, default_value_t = 1)]
        cone_floor: i64,
        /// Fail (exit 1) unless the verdict matches.
        #[arg(long, value_enum)]
        expect: Option<VerdictArg>,
    },
    /// Sign partition of the plane cut by an irrational linear form.
    Halfplane {
        /// Quadratic irrational descriptor file.
        #[arg(long, conflicts_with = "sqrt")]
        alpha: Option<PathBuf>,
        /// Shorthand for `sqrt(d)`: the form `(r1, r2) -> r1 + sqrt(d) r2`.
        #[arg(long)]
        sqrt: Option<i64>,
        /// Window `[-W, W]^2` to partition.
        #[arg(long, default_value_t = 4)]
        window: i64,
        /// Check trichotomy, antisymmetry, and additive closure instead.
        #[arg(long)]
        check: bool,
        /// Find a lattice point strictly between two values of the form:
        /// four integers `r1,r2,s1,s2`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        between: Option<Vec<i64>>,
        /// Search budget for the density witness.
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
}

/// Envelope for pass/fail commands: the checks plus enough context to
/// replay them. `timing_ms` appears only under `--timing` so that the
/// default payload is byte-identical across runs.
#[derive(Serialize)]
struct CliReportJson {
    schema_version: u32,
    tool_version: &'static str,
    inputs: Vec<serde_json::Value>,
    all_passed: bool,
    checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u128>,
}

impl CliReportJson {
    fn new(inputs: Vec<serde_json::Value>, report: &Report, started: Option<Instant>) -> Self {
        CliReportJson {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION"),
            inputs,
            all_passed: report.all_passed(),
            checks: report.checks.clone(),
            verdict: None,
            timing_ms: started.map(|t| t.elapsed().as_millis()),
        }
    }
}

#[derive(Serialize)]
struct BracketJson {
    schema_version: u32,
    lhs: ElementJson,
    rhs: ElementJson,
    bracket: ElementJson,
}

#[derive(Serialize)]
struct GradingJson {
    schema_version: u32,
    algebra: AlgebraKind,
    n: usize,
    degree: LatticeVector,
    dim: usize,
    d_dim: usize,
    basis: Vec<ElementJson>,
}

#[derive(Serialize)]
struct GradingComponentJson {
    degree: LatticeVector,
    dim: usize,
    d_dim: usize,
}

#[derive(Serialize)]
struct GradingWindowJson {
    schema_version: u32,
    algebra: AlgebraKind,
    n: usize,
    window: i64,
    components: Vec<GradingComponentJson>,
}

#[derive(Serialize)]
struct PartitionJson {
    schema_version: u32,
    alpha: AlphaJson,
    window: i64,
    positive: Vec<LatticeVector>,
    negative: Vec<LatticeVector>,
}

#[derive(Serialize)]
struct DensityJson {
    schema_version: u32,
    alpha: AlphaJson,
    from: LatticeVector,
    to: LatticeVector,
    witness: LatticeVector,
}

fn read_text(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidDescriptor(format!("cannot read {}: {e}", path.display())))
}

fn echo(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap_or(serde_json::Value::Null)
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializing an owned value cannot fail")
}

/// Accepts `a/b` (real rational) or `re,im` with both parts rational.
fn parse_scalar(text: &str) -> Result<Scalar> {
    match text.split_once(',') {
        Some((re, im)) => Scalar::from_parts_str(re.trim(), im.trim()),
        None => Scalar::from_parts_str(text.trim(), "0"),
    }
}

pub fn run(cmd: Command, started: Option<Instant>) -> Result<Outcome> {
    match cmd {
        Command::Bracket { lhs, rhs } => bracket(&lhs, &rhs),
        Command::Grading {
            kind,
            n,
            degree,
            window,
        } => grading(kind.into(), n, degree, window),
        Command::Irrep {
            n,
            lambda,
            c,
            dim_cap,
            no_ops,
            validate,
        } => irrep(n, &lambda, c.as_deref(), dim_cap, no_ops, validate, started),
        Command::JetCheck {
            module,
            window,
            kind,
            dim_cap,
        } => jet_check(&module, window, kind.into(), dim_cap, started),
        Command::JetSupport {
            module,
            window,
            kind,
            dump,
            dim_cap,
        } => jet_support(&module, window, kind.into(), dump.as_ref(), dim_cap),
        Command::VermaBuild {
            recipe,
            singular_level,
        } => verma_build(&recipe, singular_level),
        Command::Singular { dump, level } => singular(&dump, level),
        Command::Quotient { dump } => quotient(&dump),
        Command::Classify {
            dump,
            bound,
            cone_floor,
            expect,
        } => classify(&dump, bound, cone_floor, expect.map(Into::into)),
        Command::Halfplane {
            alpha,
            sqrt,
            window,
            check,
            between,
            budget,
        } => halfplane(alpha.as_ref(), sqrt, window, check, between, budget, started),
    }
}

fn bracket(lhs_path: &PathBuf, rhs_path: &PathBuf) -> Result<Outcome> {
    let lhs_json: ElementJson = parse_versioned(&read_text(lhs_path)?)?;
    let rhs_json: ElementJson = parse_versioned(&read_text(rhs_path)?)?;
    let lhs = lhs_json.build()?;
    let rhs = rhs_json.build()?;
    let result = lhs.bracket(&rhs)?;
    let payload = BracketJson {
        schema_version: SCHEMA_VERSION,
        lhs: lhs_json,
        rhs: rhs_json,
        bracket: ElementJson::describe(&result),
    };
    let mut table = render::kv(&[
        ("lhs", lhs.to_string()),
        ("rhs", rhs.to_string()),
        ("bracket", result.to_string()),
    ]);
    if let Some(d) = result.homogeneous_degree() {
        table.push_str(&format!("degree  {d}\n"));
    }
    Ok(Outcome {
        payload: pretty(&payload),
        table,
        failed: false,
    })
}

fn grading(
    kind: AlgebraKind,
    n: usize,
    degree: Option<Vec<i64>>,
    window: Option<i64>,
) -> Result<Outcome> {
    match (degree, window) {
        (Some(coords), None) => {
            let m = LatticeVector(coords);
            let comp = graded_component(kind, n, &m)?;
            let payload = GradingJson {
                schema_version: SCHEMA_VERSION,
                algebra: kind,
                n,
                degree: m.clone(),
                dim: comp.dim(),
                d_dim: comp.d_dim(),
                basis: comp.basis.iter().map(ElementJson::describe).collect(),
            };
            let mut table = render::kv(&[
                ("degree", m.to_string()),
                ("dim", comp.dim().to_string()),
                ("d_dim", comp.d_dim().to_string()),
            ]);
            for el in &comp.basis {
                table.push_str(&render::element(el));
            }
            Ok(Outcome {
                payload: pretty(&payload),
                table,
                failed: false,
            })
        }
        (None, Some(w)) => {
            let mut components = Vec::new();
            let mut dims = Vec::new();
            for m in divzero::lattice::window_points(n, w) {
                let comp = graded_component(kind, n, &m)?;
                dims.push((m.clone(), comp.dim()));
                components.push(GradingComponentJson {
                    degree: m,
                    dim: comp.dim(),
                    d_dim: comp.d_dim(),
                });
            }
            let payload = GradingWindowJson {
                schema_version: SCHEMA_VERSION,
                algebra: kind,
                n,
                window: w,
                components,
            };
            Ok(Outcome {
                payload: pretty(&payload),
                table: render::dims(&dims),
                failed: false,
            })
        }
        _ => Err(Error::InvalidDescriptor(
            "pass exactly one of --degree or --window".into(),
        )),
    }
}

fn irrep(
    n: usize,
    lambda: &[u64],
    c: Option<&str>,
    dim_cap: usize,
    no_ops: bool,
    validate: bool,
    started: Option<Instant>,
) -> Result<Outcome> {
    let c = match c {
        Some(text) => parse_scalar(text)?,
        None => Scalar::from_int(box_count(lambda) as i64),
    };
    let module = build_irrep(n, lambda, c, dim_cap)?;
    if validate {
        let mut report = Report::new();
        // All n^4 commutators, one weight check per basis/operator pair,
        // and the central-sum identity.
        let cases = n * n * n * n + module.dim() * n + 1;
        match module.validate() {
            Ok(()) => report.push(Check::pass("irrep-structure", cases)),
            Err(e) => report.push(Check::fail("irrep-structure", cases, e.to_string())),
        }
        let payload = CliReportJson::new(Vec::new(), &report, started);
        let failed = !report.all_passed();
        return Ok(Outcome {
            payload: pretty(&payload),
            table: render::checks(&report.checks),
            failed,
        });
    }
    let payload = IrrepJson::describe(&module, !no_ops);
    let (re, im) = module.central().to_parts_string();
    let table = render::kv(&[
        ("n", n.to_string()),
        (
            "lambda",
            lambda
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(","),
        ),
        ("c", format!("{re},{im}")),
        ("dim", module.dim().to_string()),
    ]);
    Ok(Outcome {
        payload: pretty(&payload),
        table,
        failed: false,
    })
}

fn jet_check(
    path: &PathBuf,
    window: i64,
    kind: AlgebraKind,
    dim_cap: usize,
    started: Option<Instant>,
) -> Result<Outcome> {
    let text = read_text(path)?;
    let descriptor: JetJson = parse_versioned(&text)?;
    let module = descriptor.build(dim_cap)?;
    let (axiom, assoc) = rayon::join(
        || module.check_module_axiom(kind, window),
        || module.check_associativity(window),
    );
    let mut report = axiom?;
    report.merge(assoc?);
    let verdict = if kind.divergence_constrained() {
        module.is_irreducible()
    } else {
        module.is_irreducible_witt()
    };
    let mut payload = CliReportJson::new(vec![echo(&text)], &report, started);
    payload.verdict = Some(verdict.clone());
    let failed = !report.all_passed();
    let mut table = render::checks(&report.checks);
    table.push_str(&format!("verdict: {verdict:?}\n"));
    Ok(Outcome {
        payload: pretty(&payload),
        table,
        failed,
    })
}

fn jet_support(
    path: &PathBuf,
    window: i64,
    kind: AlgebraKind,
    dump: Option<&PathBuf>,
    dim_cap: usize,
) -> Result<Outcome> {
    let descriptor: JetJson = parse_versioned(&read_text(path)?)?;
    let module = descriptor.build(dim_cap)?;
    let support = module.weight_support(window);
    if let Some(dump_path) = dump {
        let win = JetWindow::new(&module, kind, window)?.materialize();
        let doc = WindowJson::describe(&win, "jet");
        fs::write(dump_path, pretty(&doc) + "\n").map_err(|e| {
            Error::InvalidDescriptor(format!("cannot write {}: {e}", dump_path.display()))
        })?;
    }
    let payload = SupportJson::describe(&support);
    Ok(Outcome {
        payload: pretty(&payload),
        table: render::dims(&support.entries),
        failed: false,
    })
}

fn verma_build(recipe_path: &PathBuf, singular_level: i64) -> Result<Outcome> {
    let recipe: VermaRecipeJson = parse_versioned(&read_text(recipe_path)?)?;
    let module = recipe.build()?;
    let report = find_singular_vectors(&module.window, singular_level)?;
    let mut doc = WindowJson::describe(&module.window, "induced");
    doc.singular = Some(SingularJson::describe(&report));
    let dims: Vec<_> = module.window.weights();
    let mut table = render::kv(&[
        ("weights", dims.len().to_string()),
        (
            "basis",
            dims.iter().map(|(_, d)| d).sum::<usize>().to_string(),
        ),
        ("singular", report.vectors.len().to_string()),
        ("leaks", module.window.ledger.len().to_string()),
    ]);
    table.push_str(&render::dims(&dims));
    Ok(Outcome {
        payload: pretty(&doc),
        table,
        failed: false,
    })
}

fn singular(dump_path: &PathBuf, level: i64) -> Result<Outcome> {
    let doc: WindowJson = parse_versioned(&read_text(dump_path)?)?;
    let win = doc.build()?;
    let report = find_singular_vectors(&win, level)?;
    let payload = SingularJson::describe(&report);
    let mut rows = vec![
        ("level", level.to_string()),
        ("raisers", report.raiser_count.to_string()),
        ("vectors", report.vectors.len().to_string()),
    ];
    let partial = report.vectors.iter().filter(|v| !v.fully_checked).count();
    if partial > 0 {
        rows.push(("window-limited", partial.to_string()));
    }
    Ok(Outcome {
        payload: pretty(&payload),
        table: render::kv(&rows),
        failed: false,
    })
}

fn quotient(dump_path: &PathBuf) -> Result<Outcome> {
    let doc: WindowJson = parse_versioned(&read_text(dump_path)?)?;
    let win = doc.build()?;
    let q = irreducible_quotient(&win)?;
    let dims = q.weights();
    let payload = WindowJson::describe(&q, "quotient");
    Ok(Outcome {
        payload: pretty(&payload),
        table: render::dims(&dims),
        failed: false,
    })
}

fn classify(
    dump_path: &PathBuf,
    bound: usize,
    cone_floor: i64,
    expect: Option<ClassVerdict>,
) -> Result<Outcome> {
    let doc: WindowJson = parse_versioned(&read_text(dump_path)?)?;
    let win = doc.build()?;
    let classification = classify_truncated(&win, bound, cone_floor);
    let failed = expect
        .as_ref()
        .map(|e| *e != classification.verdict)
        .unwrap_or(false);
    let payload = ClassificationJson::describe(&classification);
    let mut rows = vec![
        ("verdict", format!("{:?}", classification.verdict)),
        ("detail", classification.detail.clone()),
        ("max-multiplicity", classification.max_multiplicity.to_string()),
        ("bound", bound.to_string()),
    ];
    if let Some(e) = expect {
        rows.push(("expected", format!("{e:?}")));
    }
    Ok(Outcome {
        payload: pretty(&payload),
        table: render::kv(&rows),
        failed,
    })
}

fn halfplane(
    alpha_path: Option<&PathBuf>,
    sqrt: Option<i64>,
    window: i64,
    check: bool,
    between: Option<Vec<i64>>,
    budget: usize,
    started: Option<Instant>,
) -> Result<Outcome> {
    let alpha = match (alpha_path, sqrt) {
        (Some(path), None) => parse_versioned::<AlphaJson>(&read_text(path)?)?.build()?,
        (None, Some(d)) => QuadraticIrrational::sqrt(d)?,
        _ => {
            return Err(Error::InvalidDescriptor(
                "pass exactly one of --alpha or --sqrt".into(),
            ))
        }
    };
    if let Some(coords) = between {
        if coords.len() != 4 {
            return Err(Error::InvalidDescriptor(format!(
                "--between needs four integers r1,r2,s1,s2, got {}",
                coords.len()
            )));
        }
        let r = LatticeVector(vec![coords[0], coords[1]]);
        let s = LatticeVector(vec![coords[2], coords[3]]);
        let witness = alpha.density_between(&r, &s, budget)?;
        let payload = DensityJson {
            schema_version: SCHEMA_VERSION,
            alpha: AlphaJson::describe(&alpha),
            from: r.clone(),
            to: s.clone(),
            witness: witness.clone(),
        };
        let table = render::kv(&[
            ("from", r.to_string()),
            ("to", s.to_string()),
            ("witness", witness.to_string()),
        ]);
        return Ok(Outcome {
            payload: pretty(&payload),
            table,
            failed: false,
        });
    }
    if check {
        let report = alpha.check_partition(window)?;
        let payload = CliReportJson::new(
            vec![serde_json::to_value(AlphaJson::describe(&alpha)).expect("owned value")],
            &report,
            started,
        );
        let failed = !report.all_passed();
        return Ok(Outcome {
            payload: pretty(&payload),
            table: render::checks(&report.checks),
            failed,
        });
    }
    let partition = alpha.partition_window(window)?;
    let payload = PartitionJson {
        schema_version: SCHEMA_VERSION,
        alpha: AlphaJson::describe(&alpha),
        window,
        positive: partition.positive.clone(),
        negative: partition.negative.clone(),
    };
    let table = render::kv(&[
        ("positive", partition.positive.len().to_string()),
        ("negative", partition.negative.len().to_string()),
    ]);
    Ok(Outcome {
        payload: pretty(&payload),
        table,
        failed: false,
    })
}
