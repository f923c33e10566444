//! Command implementations. Each returns a JSON document and a text table.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde_json::{json, Value};

use cohomlab::alg::{face_incidence_algebra, face_restriction, incidence_algebra, restriction_morphism, FiniteAlgebra};
use cohomlab::bw::{bw_cohomology, e2_vs_bw, hh_functor, hh_natural_system, roos_cohomology, selfduality_check};
use cohomlab::exactla::{Field, FieldSpec, Fp, Rationals};
use cohomlab::gs::{gs_cohomology, gs_double_complex_with, ss_consistency, ss_pages, AlgebraPresheaf, BimodulePresheaf, GsOptions};
use cohomlab::hochschild::{certify_hom_epi, hh};
use cohomlab::simp::colimit;
use cohomlab::Error;

use crate::io::{self, AlgebraDoc, ComplexDoc, DiagramDoc, FiltrationDoc, InputError, MorphismDoc, PosetDoc};
use crate::verify;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Compute(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("{failed} of {total} checks failed")]
    Verify { failed: usize, total: usize },
}

impl CliError {
    /// 2 for malformed input, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Usage(_) => 2,
            CliError::Compute(e) => match e {
                Error::InvalidField(_)
                | Error::Parse(_)
                | Error::Shape(_)
                | Error::InvalidPoset(_)
                | Error::InvalidCategory(_)
                | Error::NotLoopFree(_)
                | Error::InvalidComplex(_)
                | Error::InvalidDiagram(_)
                | Error::NonInjectiveMap(_)
                | Error::NotLowerIdeal(_)
                | Error::InvalidAlgebra(_)
                | Error::InvalidMorphism(_)
                | Error::InvalidBimodule(_)
                | Error::FunctorialityViolation(_)
                | Error::InsufficientQRange { .. }
                | Error::InsufficientPRange { .. } => 2,
                _ => 1,
            },
            CliError::Verify { .. } => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// A command's output. `failed` marks a completed run whose checks did not
/// all pass.
pub struct Report {
    pub json: Value,
    pub table: String,
    pub failed: Option<(usize, usize)>,
}

impl Report {
    fn new(command: &str, json: Value, table: String) -> Self {
        Report { json: io::envelope(command, json), table, failed: None }
    }
}

/// Resolves the field from the flag and an optional field named by a
/// document. The two must agree when both are present.
pub fn resolve_field(flag: Option<&str>, doc: Option<&str>) -> CliResult<FieldSpec> {
    let flag = flag.map(FieldSpec::parse).transpose()?;
    let doc = doc.map(parse_field_name).transpose()?;
    match (flag, doc) {
        (Some(a), Some(b)) if a != b => Err(CliError::Usage(format!("--field {a} conflicts with the input's field {b}"))),
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => Ok(FieldSpec::Prime { p: 32003 }),
    }
}

/// Accepts `GF(p)` besides the forms of `FieldSpec::parse`.
fn parse_field_name(s: &str) -> cohomlab::Result<FieldSpec> {
    let t = s.trim();
    match t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
        Some(p) => FieldSpec::parse(p),
        None => FieldSpec::parse(t),
    }
}

macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            FieldSpec::Prime { p } => {
                let $f = Fp::new(p)?;
                $body
            }
            FieldSpec::Rational => {
                let $f = Rationals;
                $body
            }
        }
    };
}

fn dims_table(title: &str, label: &str, dims: &[usize]) -> String {
    let mut out = format!("{title}\n{:>4}  {label}\n", "n");
    for (n, d) in dims.iter().enumerate() {
        out.push_str(&format!("{n:>4}  {d}\n"));
    }
    out
}

pub enum AlgebraInput {
    Algebra(PathBuf),
    Poset(PathBuf),
    Complex(PathBuf),
}

pub fn cmd_hh(input: &AlgebraInput, field: Option<&str>, q_max: usize, normalized: bool) -> CliResult<Report> {
    let (spec, source) = match input {
        AlgebraInput::Algebra(p) => {
            let doc: AlgebraDoc = io::read_doc(p)?;
            (resolve_field(field, doc.field.as_deref())?, Source::Algebra(doc))
        }
        AlgebraInput::Poset(p) => (resolve_field(field, None)?, Source::Poset(io::read_doc(p)?)),
        AlgebraInput::Complex(p) => (resolve_field(field, None)?, Source::Complex(io::read_doc(p)?)),
    };
    let dims = with_field!(spec, f => {
        let a = source.algebra(&f)?;
        hh(&a, &cohomlab::alg::diagonal_bimodule(&a), q_max, normalized)?
    });
    let json = json!({
        "field": spec.to_string(),
        "q_max": q_max,
        "normalized": normalized,
        "dims": dims,
    });
    let title = format!(
        "HH^n(A, A) over {spec}, n <= {q_max}, {} cochains",
        if normalized { "normalized" } else { "unnormalized" }
    );
    Ok(Report::new("hh", json, dims_table(&title, "dim", &dims)))
}

enum Source {
    Algebra(AlgebraDoc),
    Poset(PosetDoc),
    Complex(ComplexDoc),
}

impl Source {
    fn algebra<F: Field>(&self, f: &F) -> cohomlab::Result<FiniteAlgebra<F>> {
        match self {
            Source::Algebra(d) => d.build(f),
            Source::Poset(d) => Ok(incidence_algebra(&d.build()?, f)),
            Source::Complex(d) => Ok(face_incidence_algebra(&d.build()?, f)),
        }
    }
}

pub enum DiagramInput {
    Filtration(PathBuf),
    Diagram(PathBuf),
}

fn load_presheaf<F: Field>(input: &DiagramInput, f: &F) -> CliResult<AlgebraPresheaf<F>> {
    Ok(match input {
        DiagramInput::Filtration(p) => {
            let doc: FiltrationDoc = io::read_doc(p)?;
            AlgebraPresheaf::from_filtration(&doc.build()?, f)?
        }
        DiagramInput::Diagram(p) => {
            let doc: DiagramDoc = io::read_doc(p)?;
            AlgebraPresheaf::from_diagram(&doc.build()?, f)?
        }
    })
}

#[derive(Clone, Copy, Debug)]
pub struct Bounds {
    pub p_max: Option<usize>,
    pub q_max: usize,
    pub n_max: usize,
    pub normalized: bool,
}

impl Bounds {
    /// `p_max` defaults to the longest chain, and to at least `n_max + 1`
    /// when the nerve keeps identities.
    fn p_max(&self, longest: usize) -> usize {
        match self.p_max {
            Some(p) => p,
            None if self.normalized => longest,
            None => self.n_max + 1,
        }
    }

    fn options(&self) -> GsOptions {
        GsOptions { normalized_nerve: self.normalized, normalized_cochains: true }
    }
}

pub fn cmd_gs(input: &DiagramInput, field: Option<&str>, b: Bounds, pages_only: bool) -> CliResult<Report> {
    let spec = resolve_field(field, None)?;
    with_field!(spec, f => {
        let a = load_presheaf(input, &f)?;
        let p_max = b.p_max(a.base().longest_chain()?);
        let d = gs_double_complex_with(&a, &BimodulePresheaf::diagonal(&a), p_max, b.q_max, b.options())?;
        let (e0, e1, e2) = ss_pages(&d)?;
        let bounds = json!({"field": spec.to_string(), "p_max": p_max, "q_max": b.q_max, "normalized_nerve": b.normalized});
        if pages_only {
            let mut json = bounds;
            json["pages"] = json!([e0.to_json(), e1.to_json(), e2.to_json()]);
            let table = format!(
                "spectral sequence over {spec}, p <= {p_max}, q <= {}\n{}\n{}\n{}",
                b.q_max,
                e0.to_table(),
                e1.to_table(),
                e2.to_table()
            );
            return Ok(Report::new("ss", json, table));
        }
        let dims = gs_cohomology(&d, b.n_max)?;
        let consistency = ss_consistency(&e2, &dims)?;
        let mut json = bounds;
        json["n_max"] = b.n_max.into();
        json["dims"] = json!(dims);
        json["e1"] = e1.to_json();
        json["e2"] = e2.to_json();
        json["consistency"] = serde_json::to_value(&consistency).expect("serializable");
        let title = format!("HH^n_GS over {spec}, n <= {}, p <= {p_max}, q <= {}", b.n_max, b.q_max);
        let verdict = if consistency.equality {
            "consistency: E2 sums equal the total dimensions"
        } else {
            "consistency: E2 sums bound the total dimensions; higher differentials possible"
        };
        let table = format!("{}\n{}\n{}\n{verdict}\n", dims_table(&title, "dim", &dims), e1.to_table(), e2.to_table());
        Ok(Report::new("gs", json, table))
    })
}

fn comparison_table(title: &str, rows: &BTreeMap<usize, Vec<usize>>, report: &cohomlab::bw::ComparisonReport) -> String {
    let mut out = format!("{title}\n{:>4}  dims by p\n", "q");
    for (q, dims) in rows {
        out.push_str(&format!("{q:>4}  {dims:?}\n"));
    }
    out.push_str(&format!("{}: {}\n", report.claim, if report.ok { "ok" } else { "MISMATCH" }));
    out
}

pub fn cmd_bw(input: &DiagramInput, field: Option<&str>, p_max: usize, q_max: usize) -> CliResult<Report> {
    let spec = resolve_field(field, None)?;
    with_field!(spec, f => {
        let a = load_presheaf(input, &f)?;
        let mut rows = BTreeMap::new();
        for q in 0..=q_max {
            rows.insert(q, bw_cohomology(&hh_natural_system(&a, q)?, p_max)?);
        }
        let report = e2_vs_bw(&a, p_max, q_max)?;
        let json = json!({
            "field": spec.to_string(), "p_max": p_max, "q_max": q_max,
            "bw": rows.iter().map(|(q, d)| (q.to_string(), json!(d))).collect::<serde_json::Map<_, _>>(),
            "comparison": report.to_json(),
        });
        let title = format!("H^p_BW(C, HH^q) over {spec}, p <= {p_max}");
        Ok(Report::new("bw", json, comparison_table(&title, &rows, &report)))
    })
}

pub fn cmd_roos(input: &DiagramInput, field: Option<&str>, p_max: usize, q_max: usize) -> CliResult<Report> {
    let spec = resolve_field(field, None)?;
    with_field!(spec, f => {
        let a = load_presheaf(input, &f)?;
        let mut rows = BTreeMap::new();
        for q in 0..=q_max {
            rows.insert(q, roos_cohomology(&hh_functor(&a, q)?, p_max)?);
        }
        let report = selfduality_check(&a, p_max, q_max)?;
        let json = json!({
            "field": spec.to_string(), "p_max": p_max, "q_max": q_max,
            "roos": rows.iter().map(|(q, d)| (q.to_string(), json!(d))).collect::<serde_json::Map<_, _>>(),
            "comparison": report.to_json(),
        });
        let title = format!("lim^p HH^q(A(-), A(-)) over {spec}, p <= {p_max}");
        Ok(Report::new("roos", json, comparison_table(&title, &rows, &report)))
    })
}

pub enum HomEpiInput {
    Morphism(PathBuf),
    Posets { poset: PathBuf, ideal: PathBuf },
    Complexes { complex: PathBuf, sub: PathBuf },
}

pub fn cmd_homepi(input: &HomEpiInput, field: Option<&str>, n_max: usize) -> CliResult<Report> {
    let (spec, cert) = match input {
        HomEpiInput::Morphism(p) => {
            let doc: MorphismDoc = io::read_doc(p)?;
            let named = doc.source.field.as_deref().or(doc.target.field.as_deref());
            let spec = resolve_field(field, named)?;
            (spec, with_field!(spec, f => certify_hom_epi(&doc.build(&f)?, n_max).to_json()))
        }
        HomEpiInput::Posets { poset, ideal } => {
            let p = io::read_doc::<PosetDoc>(poset)?.build()?;
            let q = io::read_doc::<PosetDoc>(ideal)?.build()?;
            let spec = resolve_field(field, None)?;
            (spec, with_field!(spec, f => certify_hom_epi(&restriction_morphism(&p, &q, &f)?, n_max).to_json()))
        }
        HomEpiInput::Complexes { complex, sub } => {
            let k = io::read_doc::<ComplexDoc>(complex)?.build()?;
            let l = io::read_doc::<ComplexDoc>(sub)?.build()?;
            let incl = l
                .inclusion_into(&k)
                .ok_or_else(|| Error::NotLowerIdeal("the second complex is not a subcomplex of the first".into()))?;
            let spec = resolve_field(field, None)?;
            (spec, with_field!(spec, f => certify_hom_epi(&face_restriction(&l, &k, &incl, &f)?, n_max).to_json()))
        }
    };
    let mut table = format!("homological epimorphism certificate over {spec}, Tor checked to degree {n_max}\n");
    for key in ["status", "surjective", "epi_ok", "tor_dims", "idempotent_kernel", "projective_kernel"] {
        let value = match &cert[key] {
            Value::String(s) => s.clone(),
            v => v.to_string(),
        };
        table.push_str(&format!("{key:>18}  {value}\n"));
    }
    let mut json = cert;
    json["field"] = spec.to_string().into();
    Ok(Report::new("homepi", json, table))
}

pub fn cmd_colimit(diagram: &PathBuf) -> CliResult<Report> {
    let d = io::read_doc::<DiagramDoc>(diagram)?.build()?;
    let k = colimit(&d)?;
    let names = k.complex.vertices();
    let inclusions: serde_json::Map<String, Value> = d
        .index()
        .elements()
        .iter()
        .enumerate()
        .map(|(p, e)| {
            let m: serde_json::Map<String, Value> = d
                .complex(p)
                .vertices()
                .iter()
                .zip(&k.inclusions[p])
                .map(|(v, &w)| (v.clone(), Value::from(names[w].clone())))
                .collect();
            (e.clone(), Value::Object(m))
        })
        .collect();
    let doc = ComplexDoc::from_complex(&k.complex);
    let json = json!({ "complex": { "maximal_faces": doc.maximal_faces }, "inclusions": inclusions });
    let mut table = String::from("colimit maximal faces\n");
    for f in &doc.maximal_faces {
        table.push_str(&format!("  {}\n", f.join(" ")));
    }
    Ok(Report::new("colimit", json, table))
}

pub fn cmd_limit(diagram: &PathBuf, field: Option<&str>) -> CliResult<Report> {
    let d = io::read_doc::<DiagramDoc>(diagram)?.build()?;
    let spec = resolve_field(field, None)?;
    with_field!(spec, f => {
        let k = colimit(&d)?;
        let (theta, limit) = cohomlab::alg::theta_map(&d, &k, &f)?;
        let json = json!({
            "field": spec.to_string(),
            "colimit_algebra_dim": theta.source().dim(),
            "limit_dim": limit.algebra.dim(),
            "theta_iso": true,
            "limit": serde_json::to_value(AlgebraDoc::from_algebra(&limit.algebra)).expect("serializable"),
        });
        let table = format!(
            "limit of incidence algebras over {spec}\n  dim I(F(colim)) = {}\n  dim lim = {}\n  theta is a unital isomorphism\n",
            theta.source().dim(),
            limit.algebra.dim()
        );
        Ok(Report::new("limit", json, table))
    })
}

pub fn cmd_verify(suite: &str) -> CliResult<Report> {
    let names: Vec<&str> = if suite == "all" { verify::SUITES.to_vec() } else { vec![suite] };
    let mut table = String::new();
    let mut suites = serde_json::Map::new();
    let (mut failed, mut total) = (0, 0);
    for name in names {
        let checks = verify::run_suite(name).ok_or_else(|| {
            CliError::Usage(format!("unknown suite `{name}`; expected one of {} or all", verify::SUITES.join(", ")))
        })?;
        table.push_str(&format!("{name}\n"));
        for c in &checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            table.push_str(&format!("  {mark}  {}: expected {}, computed {}\n", c.name, c.expected, c.computed));
        }
        failed += checks.iter().filter(|c| !c.pass).count();
        total += checks.len();
        suites.insert(name.into(), serde_json::to_value(&checks).expect("serializable"));
    }
    table.push_str(&format!("{} of {total} checks passed\n", total - failed));
    let json = json!({ "suites": suites, "passed": total - failed, "total": total });
    let mut r = Report::new("verify", json, table);
    if failed > 0 {
        r.failed = Some((failed, total));
    }
    Ok(r)
}
