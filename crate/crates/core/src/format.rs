//! On-disk JSON interchange format for algebras and attached data.
//!
//! Rationals are strings (`"3"`, `"-1/2"`); brackets are stored for `i < j`
//! only and omitted brackets are zero. Emission is canonical: parsing and
//! re-emitting a document reproduces it byte for byte.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catalog::CatalogEntry;
use crate::growth::finite::{FiniteIsometry, FiniteMetric, MetricError};
use crate::growth::gauge::{GaugeCurve, GaugeError};
use crate::lie::algebra::{LieAlgebra, LieError};
use crate::linalg::matrix::Matrix;
use crate::linalg::rational::{format_rational, parse_rational, rat, Rational};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    Version(u64),
    #[error("invalid file: {0}")]
    Invalid(String),
    #[error("Jacobi identity fails on ({0}, {1}, {2})")]
    Jacobi(String, String, String),
    #[error(transparent)]
    Lie(LieError),
    #[error(transparent)]
    Gauge(#[from] GaugeError),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct BracketRecord {
    i: usize,
    j: usize,
    coeffs: BTreeMap<usize, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct GaugeSection {
    nodes: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct MetricSection {
    distances: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    isometries: Option<Vec<Vec<usize>>>,
}

type RawMatrix = Vec<Vec<String>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    format_version: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default)]
    dim: usize,
    #[serde(default)]
    basis: Vec<String>,
    #[serde(default)]
    brackets: Vec<BracketRecord>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    matrices: BTreeMap<String, RawMatrix>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    modmaps: BTreeMap<String, Vec<RawMatrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gauge: Option<GaugeSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metric: Option<MetricSection>,
}

/// Finite metric with an optional explicit isometry group.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricData {
    pub metric: FiniteMetric,
    pub isometries: Option<Vec<FiniteIsometry>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub name: Option<String>,
    pub algebra: LieAlgebra,
    pub matrices: BTreeMap<String, Matrix>,
    pub modmaps: BTreeMap<String, Vec<Matrix>>,
    pub gauge: Option<GaugeCurve>,
    pub metric: Option<MetricData>,
}

impl Document {
    pub fn new(algebra: LieAlgebra) -> Self {
        Document {
            name: None,
            algebra,
            matrices: BTreeMap::new(),
            modmaps: BTreeMap::new(),
            gauge: None,
            metric: None,
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }
}

impl From<&CatalogEntry> for Document {
    fn from(e: &CatalogEntry) -> Self {
        let mut d = Document::new(e.algebra.clone()).named(e.name.clone());
        for (k, m) in e.automorphisms.iter().chain(&e.derivations) {
            d.matrices.insert(k.clone(), m.clone());
        }
        for (k, ms) in &e.modmaps {
            d.modmaps.insert(k.clone(), ms.clone());
        }
        d
    }
}

fn parse_q(s: &str, ctx: &str) -> Result<Rational, FormatError> {
    parse_rational(s).map_err(|_| FormatError::Invalid(format!("{ctx}: bad rational {s:?}")))
}

fn parse_matrix(raw: &RawMatrix, dim: usize, ctx: &str) -> Result<Matrix, FormatError> {
    if raw.len() != dim || raw.iter().any(|r| r.len() != dim) {
        return Err(FormatError::Invalid(format!("{ctx}: expected a {dim}x{dim} matrix")));
    }
    let rows = raw
        .iter()
        .map(|r| r.iter().map(|s| parse_q(s, ctx)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(if dim == 0 { Matrix::zeros(0, 0) } else { Matrix::from_rows(rows) })
}

fn emit_matrix(m: &Matrix) -> RawMatrix {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(format_rational).collect())
        .collect()
}

pub fn parse_document(text: &str) -> Result<Document, FormatError> {
    let version = serde_json::from_str::<serde_json::Value>(text)
        .map_err(|e| FormatError::Json(e.to_string()))?
        .get("format_version")
        .and_then(serde_json::Value::as_u64)
        .ok_or_else(|| FormatError::Invalid("missing format_version".into()))?;
    if version != FORMAT_VERSION {
        return Err(FormatError::Version(version));
    }
    let f: AlgebraFile = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    let n = f.dim;
    if f.basis.len() != n {
        return Err(FormatError::Invalid(format!("dim is {n} but {} basis names given", f.basis.len())));
    }
    let mut st = vec![vec![vec![rat(0); n]; n]; n];
    let mut seen = std::collections::BTreeSet::new();
    for b in &f.brackets {
        if b.i >= b.j || b.j >= n {
            return Err(FormatError::Invalid(format!("bracket ({}, {}) must have i < j < dim", b.i, b.j)));
        }
        if !seen.insert((b.i, b.j)) {
            return Err(FormatError::Invalid(format!("bracket ({}, {}) repeated", b.i, b.j)));
        }
        for (&k, c) in &b.coeffs {
            if k >= n {
                return Err(FormatError::Invalid(format!("coefficient index {k} out of range")));
            }
            let q = parse_q(c, "bracket")?;
            st[b.j][b.i][k] = -q.clone();
            st[b.i][b.j][k] = q;
        }
    }
    let algebra = LieAlgebra::new(f.basis.clone(), st).map_err(|e| match e {
        LieError::Jacobi(i, j, k) => {
            FormatError::Jacobi(f.basis[i].clone(), f.basis[j].clone(), f.basis[k].clone())
        }
        other => FormatError::Lie(other),
    })?;
    let mut matrices = BTreeMap::new();
    for (k, m) in &f.matrices {
        matrices.insert(k.clone(), parse_matrix(m, n, &format!("matrix {k}"))?);
    }
    let mut modmaps = BTreeMap::new();
    for (k, ms) in &f.modmaps {
        if ms.len() != n {
            return Err(FormatError::Invalid(format!("modmap {k}: expected {n} images")));
        }
        let imgs = ms
            .iter()
            .map(|m| parse_matrix(m, n, &format!("modmap {k}")))
            .collect::<Result<Vec<_>, _>>()?;
        modmaps.insert(k.clone(), imgs);
    }
    let gauge = match &f.gauge {
        None => None,
        Some(g) => {
            let nodes = g
                .nodes
                .iter()
                .map(|[x, y]| Ok((parse_q(x, "gauge")?, parse_q(y, "gauge")?)))
                .collect::<Result<Vec<_>, FormatError>>()?;
            Some(GaugeCurve::new(nodes)?)
        }
    };
    let metric = match &f.metric {
        None => None,
        Some(m) => {
            let d = m
                .distances
                .iter()
                .map(|r| r.iter().map(|s| parse_q(s, "metric")).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            let metric = FiniteMetric::new(d)?;
            let isometries = match &m.isometries {
                None => None,
                Some(ps) => Some(
                    ps.iter()
                        .map(|p| FiniteIsometry::new(&metric, p.clone()))
                        .collect::<Result<Vec<_>, _>>()?,
                ),
            };
            Some(MetricData { metric, isometries })
        }
    };
    Ok(Document {
        name: f.name,
        algebra,
        matrices,
        modmaps,
        gauge,
        metric,
    })
}

pub fn emit_document(d: &Document) -> String {
    let g = &d.algebra;
    let n = g.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let coeffs: BTreeMap<usize, String> = g
                .structure(i, j)
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != rat(0))
                .map(|(k, c)| (k, format_rational(c)))
                .collect();
            if !coeffs.is_empty() {
                brackets.push(BracketRecord { i, j, coeffs });
            }
        }
    }
    let f = AlgebraFile {
        format_version: FORMAT_VERSION,
        name: d.name.clone(),
        dim: n,
        basis: g.labels().to_vec(),
        brackets,
        matrices: d.matrices.iter().map(|(k, m)| (k.clone(), emit_matrix(m))).collect(),
        modmaps: d
            .modmaps
            .iter()
            .map(|(k, ms)| (k.clone(), ms.iter().map(emit_matrix).collect()))
            .collect(),
        gauge: d.gauge.as_ref().map(|c| GaugeSection {
            nodes: c
                .nodes()
                .iter()
                .map(|(x, y)| [format_rational(x), format_rational(y)])
                .collect(),
        }),
        metric: d.metric.as_ref().map(|m| MetricSection {
            distances: m
                .metric
                .rows()
                .iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect(),
            isometries: m
                .isometries
                .as_ref()
                .map(|v| v.iter().map(|p| p.perm().to_vec()).collect()),
        }),
    };
    let mut s = serde_json::to_string_pretty(&f).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn roundtrip_catalog() {
        for name in catalog::NAMES {
            let doc = Document::from(&catalog::build(name).unwrap());
            let text = emit_document(&doc);
            let back = parse_document(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(emit_document(&back), text);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let jacobi = r#"{"format_version":1,"dim":3,"basis":["a","b","c"],
            "brackets":[{"i":0,"j":1,"coeffs":{"1":"1"}},{"i":0,"j":2,"coeffs":{"0":"1"}},{"i":1,"j":2,"coeffs":{"2":"1"}}]}"#;
        assert!(matches!(parse_document(jacobi), Err(FormatError::Jacobi(..))));
        let version = r#"{"format_version":2,"dim":0,"basis":[]}"#;
        assert_eq!(parse_document(version), Err(FormatError::Version(2)));
        let order = r#"{"format_version":1,"dim":2,"basis":["a","b"],"brackets":[{"i":1,"j":0,"coeffs":{}}]}"#;
        assert!(matches!(parse_document(order), Err(FormatError::Invalid(_))));
        let rational = r#"{"format_version":1,"dim":2,"basis":["a","b"],"brackets":[{"i":0,"j":1,"coeffs":{"0":"x"}}]}"#;
        assert!(matches!(parse_document(rational), Err(FormatError::Invalid(_))));
        assert!(matches!(parse_document("{"), Err(FormatError::Json(_))));
    }

    #[test]
    fn metric_and_gauge_sections() {
        let text = r#"{"format_version":1,"gauge":{"nodes":[["0","0"],["1","1"],["16","4"]]},
            "metric":{"distances":[["0","1"],["1","0"]],"isometries":[[0,1],[1,0]]}}"#;
        let d = parse_document(text).unwrap();
        assert_eq!(d.algebra.dim(), 0);
        assert_eq!(d.gauge.as_ref().unwrap().nodes().len(), 3);
        assert_eq!(d.metric.as_ref().unwrap().isometries.as_ref().unwrap().len(), 2);
        let again = emit_document(&d);
        assert_eq!(emit_document(&parse_document(&again).unwrap()), again);
    }
}
