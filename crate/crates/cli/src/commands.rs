use std::fmt;
use std::path::Path;

use serde_json::{json, Value};

use lieshadow::catalog;
use lieshadow::format::{emit_document, parse_document, Document};
use lieshadow::grading::siebert::{check_grading, format_witness, siebert_grading, standard_dilation, Dilation, Grading, GradingError, LayerSpace};
use lieshadow::grading::self_similar_admissible;
use lieshadow::growth::finite::{all_isometries, busemann_distance, busemann_gauge};
use lieshadow::growth::gauge::{ball_volume, doubling_ratio, growth_bound_check, standard_gauge, standard_node, GaugeCurve};
use lieshadow::lie::algebra::LieAlgebra;
use lieshadow::lie::fingerprint::fingerprint;
use lieshadow::lie::killing::{killing_form, killing_signature, nilradical, radical};
use lieshadow::lie::series::{is_nilpotent, is_solvable, lower_central_series};
use lieshadow::lie::typer::{is_type_r, Confidence};
use lieshadow::linalg::matrix::Matrix;
use lieshadow::linalg::rational::{parse_rational, rat, Rational};
use lieshadow::linalg::spectrum::{SpectrumConfig, SpectrumError};
use lieshadow::linalg::subspace::Subspace;
use lieshadow::modification::{
    check_all, graph_algebra, kernel_is_nilradical, lemma_upgrade, shadow_roundtrip, sigma_identities, Check, ModError,
    ModMap, Witness,
};
use lieshadow::nilshadow::{canonical_modification, nilshadow, NilshadowError};

use crate::report::{OutputFormat, Report};
use crate::{CatalogCommand, Cli, Command, GrowthCommand};

/// Samples for the type (R) test of non-solvable algebras.
const TYPE_R_SAMPLES: usize = 64;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Precondition(String),
    Undecided(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::Undecided(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) | CliError::Precondition(m) | CliError::Undecided(m) => f.write_str(m),
        }
    }
}

impl From<NilshadowError> for CliError {
    fn from(e: NilshadowError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<ModError> for CliError {
    fn from(e: ModError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<GradingError> for CliError {
    fn from(e: GradingError) -> Self {
        match e {
            GradingError::Spectrum(SpectrumError::Undecided { .. }) => CliError::Undecided(e.to_string()),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn load(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn q(s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|_| CliError::Parse(format!("not a rational number: {s:?}")))
}

fn name_of(doc: &Document) -> Value {
    doc.name.clone().map(Value::from).unwrap_or(Value::Null)
}

fn vectors(g: &LieAlgebra, s: &Subspace) -> Value {
    Value::from(s.basis().iter().map(|v| g.format_vector(v)).collect::<Vec<_>>())
}

fn matrix_json(m: &Matrix) -> Value {
    Value::from(
        m.to_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    )
}

fn brackets_json(g: &LieAlgebra) -> Value {
    let mut out = Vec::new();
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            let b = g.structure(i, j);
            if b.iter().any(|c| *c != rat(0)) {
                out.push(format!("[{}, {}] = {}", g.label(i), g.label(j), g.format_vector(b)));
            }
        }
    }
    Value::from(out)
}

fn document_json(doc: &Document) -> Value {
    serde_json::from_str(&emit_document(doc)).expect("emitted documents are valid JSON")
}

fn fingerprint_json(g: &LieAlgebra) -> Value {
    serde_json::to_value(fingerprint(g)).expect("serializable")
}

fn witness_json(g: &LieAlgebra, w: &Option<Witness>) -> Value {
    match w {
        None => Value::Null,
        Some(Witness::Pair(i, j)) => json!([g.label(*i), g.label(*j)]),
        Some(Witness::Triple(i, j, k)) => json!([g.label(*i), g.label(*j), g.label(*k)]),
        Some(Witness::Element(v)) => Value::from(g.format_vector(v)),
    }
}

fn check_json(g: &LieAlgebra, c: &Check) -> Value {
    json!({ "ok": c.ok, "witness": witness_json(g, &c.witness) })
}

pub fn run(cli: &Cli) -> Result<String> {
    let seed = cli.seed;
    let fmt = cli.format;
    match &cli.command {
        Command::Analyze { file } => analyze(&load(file)?, seed, fmt),
        Command::Nilshadow { file, emit } => shadow(&load(file)?, seed, *emit, fmt),
        Command::Modcheck { file, sigma } => modcheck(&load(file)?, sigma, seed, fmt),
        Command::Graph { file, sigma } => graph(&load(file)?, sigma, seed),
        Command::Grade { file, auto, normalize } => grade(&load(file)?, auto, *normalize, seed, fmt),
        Command::Dilate { file, auto, lambda } => dilate(&load(file)?, auto, &q(lambda)?, seed, fmt),
        Command::Admissible { file, auto, scale } => admissible(&load(file)?, auto, &q(scale)?, seed, fmt),
        Command::Growth { which } => match which {
            GrowthCommand::Std { n } => growth_std(*n, seed, fmt),
            GrowthCommand::Finite { file, busemann } => growth_finite(&load(file)?, busemann, seed, fmt),
            GrowthCommand::Curve { file } => growth_curve(&load(file)?, seed, fmt),
        },
        Command::Reformat { file } => Ok(emit_document(&load(file)?)),
        Command::Catalog { which } => match which {
            CatalogCommand::List => catalog_list(seed, fmt),
            CatalogCommand::Emit { name } => {
                let e = catalog::build(name).map_err(|e| CliError::Parse(e.to_string()))?;
                Ok(emit_document(&Document::from(&e)))
            }
        },
    }
}

fn analyze(doc: &Document, seed: u64, fmt: OutputFormat) -> Result<String> {
    let g = &doc.algebra;
    let tr = is_type_r(g, seed, TYPE_R_SAMPLES);
    let confidence = match tr.confidence {
        Confidence::Exact => json!("exact"),
        Confidence::Sampled { samples, seed } => json!({ "sampled": samples, "seed": seed }),
    };
    let sig = killing_signature(g);
    let b = killing_form(g);
    let mut r = Report::new("analyze", seed);
    r.set("name", name_of(doc))
        .set("dim", g.dim())
        .set("basis", g.labels().to_vec())
        .set("solvable", is_solvable(g))
        .set("nilpotent", is_nilpotent(g))
        .set(
            "type_r",
            json!({
                "holds": tr.holds,
                "confidence": confidence,
                "witness": tr.witness.map(|w| g.format_vector(&w)),
            }),
        )
        .set("fingerprint", fingerprint_json(g))
        .set("center", vectors(g, &g.center()))
        .set("radical", vectors(g, &radical(g)))
        .set("nilradical", vectors(g, &nilradical(g)))
        .set("killing_zero", b.is_zero())
        .set("killing_signature", json!({ "positive": sig.0, "negative": sig.1, "zero": sig.2 }))
        .set("killing_form", matrix_json(&b));
    Ok(r.render(fmt))
}

fn shadow_name(doc: &Document, suffix: &str) -> String {
    format!("{}-{suffix}", doc.name.as_deref().unwrap_or("algebra"))
}

fn shadow(doc: &Document, seed: u64, emit: bool, fmt: OutputFormat) -> Result<String> {
    let g = &doc.algebra;
    let sd = nilshadow(g, seed)?;
    let out = Document::new(sd.shadow.clone()).named(shadow_name(doc, "shadow"));
    if emit {
        return Ok(emit_document(&out));
    }
    let s = &sd.shadow;
    let step = lower_central_series(s).len().saturating_sub(1);
    let abelian = (0..s.dim()).all(|i| (0..s.dim()).all(|j| s.structure(i, j).iter().all(|c| *c == rat(0))));
    let summary = if abelian {
        "nilpotent: true (abelian)".to_string()
    } else {
        format!("nilpotent: true (step {step})")
    };
    let table: Vec<Value> = sd
        .v
        .basis()
        .iter()
        .zip(&sd.ad_s_table)
        .map(|(v, m)| json!({ "v": g.format_vector(v), "ad_s": matrix_json(m) }))
        .collect();
    let mut r = Report::new("nilshadow", seed);
    r.set("name", name_of(doc))
        .set("summary", summary)
        .set("nilpotent", is_nilpotent(s))
        .set("abelian", abelian)
        .set("nilradical", vectors(g, &sd.nilradical))
        .set("v", vectors(g, &sd.v))
        .set("ad_s_table", table)
        .set("shadow_brackets", brackets_json(s))
        .set("shadow_fingerprint", fingerprint_json(s))
        .set("shadow", document_json(&out));
    Ok(r.render(fmt))
}

fn resolve_sigma(doc: &Document, name: &str, seed: u64) -> Result<ModMap> {
    if let Some(images) = doc.modmaps.get(name) {
        if !is_nilpotent(&doc.algebra) {
            return Err(CliError::Precondition("base algebra of a modification map must be nilpotent".into()));
        }
        return Ok(ModMap::new(doc.algebra.clone(), images.clone())?);
    }
    if name == "canonical" {
        let sd = nilshadow(&doc.algebra, seed)?;
        return Ok(canonical_modification(&sd)?);
    }
    Err(CliError::Parse(format!("no modification map named {name:?}")))
}

fn modcheck(doc: &Document, name: &str, seed: u64, fmt: OutputFormat) -> Result<String> {
    let s = resolve_sigma(doc, name, seed)?;
    let base = s.base();
    let rep = check_all(&s);
    let mut r = Report::new("modcheck", seed);
    r.set("name", name_of(doc))
        .set("sigma", name)
        .set("base_brackets", brackets_json(base))
        .set("m1", check_json(base, &rep.m1))
        .set("m2", check_json(base, &rep.m2))
        .set("m3", check_json(base, &rep.m3))
        .set("abelian_image", rep.abelian_image)
        .set("all_ok", rep.all_ok());
    let lemma = match lemma_upgrade(&s) {
        Ok(l) => match l.theorem_violation {
            Some(v) => format!("theorem violation: {v}"),
            None => "pass".to_string(),
        },
        Err(e) => e.to_string(),
    };
    r.set("lemma_upgrade", lemma);
    if rep.all_ok() {
        let gr = graph_algebra(&s)?;
        r.set("kernel", vectors(base, &s.kernel()))
            .set("kernel_is_nilradical", kernel_is_nilradical(&s)?)
            .set("shadow_roundtrip", shadow_roundtrip(&s, seed)?)
            .set("sigma_identities", check_json(base, &sigma_identities(&s)))
            .set("graph_brackets", brackets_json(&gr))
            .set("graph_fingerprint", fingerprint_json(&gr));
    }
    Ok(r.render(fmt))
}

fn graph(doc: &Document, name: &str, seed: u64) -> Result<String> {
    let s = resolve_sigma(doc, name, seed)?;
    let g = graph_algebra(&s)?;
    Ok(emit_document(&Document::new(g).named(shadow_name(doc, &format!("graph-{name}")))))
}

fn automorphism<'a>(doc: &'a Document, name: &str) -> Result<&'a Matrix> {
    doc.matrices
        .get(name)
        .ok_or_else(|| CliError::Parse(format!("no matrix named {name:?}")))
}

fn grading_of(doc: &Document, auto: &str) -> Result<Grading> {
    Ok(siebert_grading(&doc.algebra, automorphism(doc, auto)?, &SpectrumConfig::default())?)
}

fn grade(doc: &Document, auto: &str, normalize: bool, seed: u64, fmt: OutputFormat) -> Result<String> {
    let gr = grading_of(doc, auto)?;
    let g = &doc.algebra;
    let layers: Vec<Value> = gr
        .layers
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let weight = if normalize {
                gr.exact_weight(i).map(|w| Value::from(w.to_string())).unwrap_or_else(|| Value::from(gr.weight(i)))
            } else {
                Value::from(l.raw_weight)
            };
            let space = match &l.space {
                LayerSpace::Exact(s) => json!({ "exact": true, "basis": vectors(g, s) }),
                LayerSpace::Approximate { basis, error } => json!({
                    "exact": false,
                    "basis": (0..basis.ncols())
                        .map(|j| basis.column(j).iter().copied().collect::<Vec<f64>>())
                        .collect::<Vec<_>>(),
                    "error": error,
                }),
            };
            json!({
                "weight": weight,
                "weight_error": if normalize && gr.exact_weight(i).is_some() { 0.0 } else { l.raw_error },
                "dim": l.space.dim(),
                "space": space,
            })
        })
        .collect();
    let check = check_grading(&gr);
    let mut r = Report::new("grade", seed);
    r.set("name", name_of(doc))
        .set("automorphism", auto)
        .set("weights", if normalize { "normalized" } else { "raw" })
        .set("normalization", gr.normalization())
        .set("dims", gr.dims())
        .set("layers", layers)
        .set(
            "check_grading",
            json!({
                "ok": check.ok,
                "exact": check.exact,
                "witness": check.witness.as_ref().map(|w| format_witness(&gr, w)),
            }),
        );
    Ok(r.render(fmt))
}

fn dilate(doc: &Document, auto: &str, lambda: &Rational, seed: u64, fmt: OutputFormat) -> Result<String> {
    let gr = grading_of(doc, auto)?;
    let d = standard_dilation(&gr, lambda)?;
    let mut r = Report::new("dilate", seed);
    r.set("name", name_of(doc)).set("automorphism", auto).set("lambda", lambda.to_string());
    match d {
        Dilation::Exact(m) => {
            r.set("exact", true).set("matrix", matrix_json(&m)).set("error", 0.0);
        }
        Dilation::Numeric { matrix, error } => {
            let rows: Vec<Vec<f64>> = (0..matrix.nrows()).map(|i| matrix.row(i).iter().copied().collect()).collect();
            r.set("exact", false).set("matrix", rows).set("error", error);
        }
    }
    r.set("verified_automorphism", true);
    Ok(r.render(fmt))
}

fn admissible(doc: &Document, auto: &str, scale: &Rational, seed: u64, fmt: OutputFormat) -> Result<String> {
    if *scale <= rat(0) {
        return Err(CliError::Parse("scale must be positive".into()));
    }
    let gr = grading_of(doc, auto)?.rescaled(scale);
    let weights: Vec<Value> = (0..gr.layers.len())
        .map(|i| gr.exact_weight(i).map(|w| Value::from(w.to_string())).unwrap_or_else(|| Value::from(gr.weight(i))))
        .collect();
    let mut r = Report::new("admissible", seed);
    r.set("name", name_of(doc))
        .set("automorphism", auto)
        .set("weights", weights)
        .set("min_weight", gr.scale.to_string())
        .set("admissible", self_similar_admissible(&gr));
    Ok(r.render(fmt))
}

fn volume_rows(c: &GaugeCurve, radii: &[Rational]) -> Result<Vec<Value>> {
    radii
        .iter()
        .map(|y| {
            let vol = ball_volume(c, y).map_err(|e| CliError::Precondition(e.to_string()))?;
            let ratio = doubling_ratio(c, y).map_err(|e| CliError::Precondition(e.to_string()))?;
            Ok(json!([y.to_string(), vol.to_string(), ratio.to_string()]))
        })
        .collect()
}

fn growth_std(n: u32, seed: u64, fmt: OutputFormat) -> Result<String> {
    if n == 0 {
        return Err(CliError::Parse("--n must be at least 1".into()));
    }
    // doubling at y_n reads the segment ending at (x_{n+1}, y_{n+1})
    let c = standard_gauge(n + 1);
    let mut rows = Vec::new();
    let mut all_match = true;
    for k in 1..=n {
        let y = standard_node(k);
        let vol = ball_volume(&c, &y).expect("nonnegative");
        let ratio = doubling_ratio(&c, &y).expect("nonnegative");
        let expect = &y + rat(2);
        all_match &= ratio == expect;
        rows.push(json!([k, y.to_string(), vol.to_string(), ratio.to_string(), expect.to_string()]));
    }
    let samples = standard_gauge(n).sample_ordinates();
    let bound = growth_bound_check(&c, &samples).expect("nonnegative");
    let mut r = Report::new("growth std", seed);
    r.set("columns", json!(["n", "r", "ball_volume", "doubling_ratio", "y_n+2"]))
        .set("rows", rows)
        .set("doubling_identity", all_match)
        .set("growth_bound_samples", samples.len())
        .set("growth_bound", bound);
    Ok(r.render(fmt))
}

fn growth_curve(doc: &Document, seed: u64, fmt: OutputFormat) -> Result<String> {
    let c = doc
        .gauge
        .as_ref()
        .ok_or_else(|| CliError::Parse("file has no gauge section".into()))?;
    let radii: Vec<Rational> = c.nodes().iter().skip(1).map(|(_, y)| y.clone()).collect();
    let samples = c.sample_ordinates();
    let mut r = Report::new("growth curve", seed);
    r.set("nodes", c.nodes().iter().map(|(x, y)| json!([x.to_string(), y.to_string()])).collect::<Vec<_>>())
        .set("slopes", c.slopes().iter().map(|s| s.to_string()).collect::<Vec<_>>())
        .set("columns", json!(["r", "ball_volume", "doubling_ratio"]))
        .set("rows", volume_rows(c, &radii)?)
        .set("growth_bound", growth_bound_check(c, &samples).expect("nonnegative"));
    Ok(r.render(fmt))
}

fn growth_finite(doc: &Document, args: &[String], seed: u64, fmt: OutputFormat) -> Result<String> {
    let m = doc
        .metric
        .as_ref()
        .ok_or_else(|| CliError::Parse("file has no metric section".into()))?;
    let [o, ell, eps] = args else {
        return Err(CliError::Parse("--busemann takes O L EPS".into()));
    };
    let o: usize = o.parse().map_err(|_| CliError::Parse(format!("bad base point {o:?}")))?;
    if o >= m.metric.len() {
        return Err(CliError::Parse(format!("base point {o} out of range")));
    }
    let (ell, eps) = (q(ell)?, q(eps)?);
    let fm = &m.metric;
    let rho = busemann_gauge(fm, o, &ell).map_err(|e| CliError::Precondition(e.to_string()))?;
    let group = m.isometries.clone().unwrap_or_else(|| all_isometries(fm));
    let d = busemann_distance(&group, fm, &rho, &eps).map_err(|e| CliError::Precondition(e.to_string()))?;
    let failures = d.quasi_isometry_failures(fm, o);
    let mut r = Report::new("growth finite", seed);
    r.set("points", fm.len())
        .set("base_point", o)
        .set("scale", ell.to_string())
        .set("epsilon", eps.to_string())
        .set("gauge", rho.iter().map(|x| x.to_string()).collect::<Vec<_>>())
        .set("group", group.iter().map(|g| g.perm().to_vec()).collect::<Vec<_>>())
        .set("distances", d.values.clone())
        .set("left_invariant", d.left_invariance_failure().is_none())
        .set("metric_axioms", d.metric_axioms_hold())
        .set("quasi_isometry_constant", 2.0 * lieshadow::linalg::rational::to_f64(&eps) / std::f64::consts::E)
        .set("quasi_isometry_failures", failures.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>());
    Ok(r.render(fmt))
}

fn catalog_list(seed: u64, fmt: OutputFormat) -> Result<String> {
    let rows: Vec<Value> = catalog::NAMES
        .iter()
        .map(|n| {
            let e = catalog::build(n).expect("catalog entries load");
            let g = &e.algebra;
            json!([n, g.dim(), is_solvable(g), is_nilpotent(g), e.expected.nilradical])
        })
        .collect();
    let mut r = Report::new("catalog list", seed);
    r.set("columns", json!(["name", "dim", "solvable", "nilpotent", "nilradical"]))
        .set("rows", rows);
    Ok(r.render(fmt))
}
