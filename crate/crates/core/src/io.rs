//! JSON input files and canonical output documents.
//!
//! Rationals cross the boundary as strings (`"-3/7"`, `"2"`), never floats.
//! Output documents are plain serde structs, so key order is the field order
//! below and identical inputs serialize to identical bytes.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::algebra::{Algebra, Element};
use crate::bidual::{BidualElement, DualBasisCertificate, ReflexivityReport};
use crate::derivations::{Derivation, VModule};
use crate::duality::{Covector, CovectorSpace};
use crate::error::{Error, Result};
use crate::linalg::{parse_rational, Matrix, Rational};

pub const REPORT_FORMAT_VERSION: u32 = 1;

fn rational_at(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|m| Error::parse(path, m)),
        Value::Number(n) if n.is_i64() => Ok(crate::linalg::rat(n.as_i64().expect("checked"))),
        _ => Err(Error::parse(
            path,
            "expected a rational string such as \"3/4\" or an integer",
        )),
    }
}

fn array_at<'a>(v: &'a Value, path: &str, len: Option<usize>) -> Result<&'a Vec<Value>> {
    let a = v.as_array().ok_or_else(|| Error::parse(path, "expected an array"))?;
    if let Some(n) = len {
        if a.len() != n {
            return Err(Error::parse(path, format!("expected {n} entries, found {}", a.len())));
        }
    }
    Ok(a)
}

fn rational_vec_at(v: &Value, path: &str, len: usize) -> Result<Vec<Rational>> {
    array_at(v, path, Some(len))?
        .iter()
        .enumerate()
        .map(|(i, x)| rational_at(x, &format!("{path}[{i}]")))
        .collect()
}

fn matrix_at(v: &Value, path: &str, rows: usize, cols: usize) -> Result<Matrix> {
    let rs = array_at(v, path, Some(rows))?
        .iter()
        .enumerate()
        .map(|(i, r)| rational_vec_at(r, &format!("{path}[{i}]"), cols))
        .collect::<Result<Vec<_>>>()?;
    if rows == 0 {
        return Ok(Matrix::zeros(0, cols));
    }
    Matrix::from_rows(&rs)
}

/// Parses an algebra document:
///
/// ```json
/// {"dim": 2, "basis": ["1", "x"],
///  "table": [[["1","0"],["0","1"]], [["0","1"],["0","0"]]],
///  "unit": ["1","0"]}
/// ```
///
/// `table[i][j]` is the coefficient vector of `e_i·e_j`. `basis` is optional
/// and defaults to `e0, e1, ..`. Structural problems are reported as
/// [`Error::Parse`] with a JSON path; algebraic ones (associativity, unit)
/// come back as the corresponding validation error.
pub fn parse_algebra_json(text: &str) -> Result<Algebra> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::parse("$", e.to_string()))?;
    let obj = doc.as_object().ok_or_else(|| Error::parse("$", "expected an object"))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::parse("$.dim", "expected a non-negative integer"))? as usize;
    if dim == 0 {
        return Err(Error::parse("$.dim", "dimension must be at least 1"));
    }
    let labels = match obj.get("basis") {
        None => (0..dim).map(|i| format!("e{i}")).collect(),
        Some(b) => array_at(b, "$.basis", Some(dim))?
            .iter()
            .enumerate()
            .map(|(i, l)| {
                l.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Error::parse(format!("$.basis[{i}]"), "expected a string"))
            })
            .collect::<Result<Vec<_>>>()?,
    };
    let table_v = obj.get("table").ok_or_else(|| Error::parse("$.table", "missing"))?;
    let table = array_at(table_v, "$.table", Some(dim))?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            array_at(row, &format!("$.table[{i}]"), Some(dim))?
                .iter()
                .enumerate()
                .map(|(j, prod)| rational_vec_at(prod, &format!("$.table[{i}][{j}]"), dim))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let unit_v = obj.get("unit").ok_or_else(|| Error::parse("$.unit", "missing"))?;
    let unit = rational_vec_at(unit_v, "$.unit", dim)?;
    Algebra::new(table, unit, labels)
}

pub fn read_algebra_file(path: &std::path::Path) -> Result<Algebra> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_algebra_json(&text)
}

/// Parses a JSON list of `n×n` rational matrices (derivations in the column
/// convention) used as generators of a submodule.
pub fn parse_submodule_json(text: &str, n: usize) -> Result<Vec<Matrix>> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::parse("$", e.to_string()))?;
    array_at(&doc, "$", None)?
        .iter()
        .enumerate()
        .map(|(g, m)| matrix_at(m, &format!("$[{g}]"), n, n))
        .collect()
}

pub fn read_submodule_file(path: &std::path::Path, n: usize) -> Result<Vec<Matrix>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_submodule_json(&text, n)
}

/// The canonical algebra document for `alg`.
pub fn algebra_document(alg: &Algebra) -> AlgebraDoc {
    AlgebraDoc {
        dim: alg.dim(),
        basis: alg.labels().to_vec(),
        table: alg
            .table()
            .iter()
            .map(|row| row.iter().map(|p| strings(p)).collect())
            .collect(),
        unit: strings(alg.one().coeffs()),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraDoc {
    pub dim: usize,
    pub basis: Vec<String>,
    pub table: Vec<Vec<Vec<String>>>,
    pub unit: Vec<String>,
}

/// SHA-256 over the canonical algebra document and the submodule generators.
pub fn input_digest(alg: &Algebra, generators: Option<&[Matrix]>) -> String {
    let mut h = Sha256::new();
    h.update(serde_json::to_vec(&algebra_document(alg)).expect("serializable"));
    if let Some(gs) = generators {
        let gs: Vec<Vec<Vec<String>>> = gs.iter().map(Matrix::to_strings).collect();
        h.update(b"\nsubmodule\n");
        h.update(serde_json::to_vec(&gs).expect("serializable"));
    }
    format!("{:x}", h.finalize())
}

pub fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub type MatrixDoc = Vec<Vec<String>>;

fn element_doc(e: &Element) -> Vec<String> {
    strings(e.coeffs())
}

fn derivation_doc(d: &Derivation) -> MatrixDoc {
    d.matrix().to_strings()
}

fn covector_doc(c: &Covector) -> MatrixDoc {
    c.values().to_strings()
}

fn bidual_doc(w: &BidualElement) -> MatrixDoc {
    w.values().to_strings()
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraSummary {
    pub dim: usize,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDoc {
    pub source: String,
    pub digest: String,
    /// `"derivations"` for the full `Der(A)`, `"submodule"` for a Z-closure.
    pub module: String,
}

impl InputDoc {
    pub fn new(alg: &Algebra, source: impl Into<String>, generators: Option<&[Matrix]>) -> Self {
        InputDoc {
            source: source.into(),
            digest: input_digest(alg, generators),
            module: if generators.is_some() {
                "submodule"
            } else {
                "derivations"
            }
            .into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Dims {
    pub algebra: usize,
    pub center: usize,
    pub module: usize,
    pub star_dual: usize,
    pub dual: usize,
    pub bidual: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateDoc {
    pub generators: Vec<MatrixDoc>,
    pub cogenerators: Vec<MatrixDoc>,
}

impl From<&DualBasisCertificate> for CertificateDoc {
    fn from(c: &DualBasisCertificate) -> Self {
        CertificateDoc {
            generators: c.generators.iter().map(derivation_doc).collect(),
            cogenerators: c.cogenerators.iter().map(covector_doc).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GhostsDoc {
    pub covector_dim: usize,
    pub bidual_dim: usize,
    pub covector_representatives: Vec<MatrixDoc>,
    pub bidual_representatives: Vec<MatrixDoc>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChecksDoc {
    pub module_z_closed: bool,
    pub dual_bimodule_closed: bool,
    pub differential_leibniz: bool,
    pub bidual_z_closed: bool,
    pub covector_expansion: Option<bool>,
    pub lift_round_trip: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasesDoc {
    pub center: Vec<Vec<String>>,
    pub module: Vec<MatrixDoc>,
    pub star_dual: Vec<MatrixDoc>,
    pub dual: Vec<MatrixDoc>,
    pub bidual: Vec<MatrixDoc>,
}

pub const PROJECTIVITY_NOTE: &str = "generators are the canonical basis of V; by the dual basis lemma a \
certificate exists iff V is finitely generated projective over Z";

/// The `report` output.
#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub format_version: u32,
    pub input: InputDoc,
    pub algebra: AlgebraSummary,
    pub dims: Dims,
    pub embedding_rank: usize,
    pub injective: bool,
    pub reflexive: bool,
    pub nondegenerate: bool,
    pub projective: bool,
    pub projectivity_note: String,
    pub certificate: Option<CertificateDoc>,
    pub ghosts: GhostsDoc,
    pub checks: ChecksDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bases: Option<BasesDoc>,
}

impl ReportDocument {
    /// Canonical serialization: pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("serializable");
        out.push('\n');
        out
    }

    pub fn new(alg: &Algebra, rep: &ReflexivityReport, input: InputDoc, with_bases: bool) -> Self {
        ReportDocument {
            tool: "ncvec".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            format_version: REPORT_FORMAT_VERSION,
            input,
            algebra: AlgebraSummary {
                dim: alg.dim(),
                basis: alg.labels().to_vec(),
            },
            dims: Dims {
                algebra: rep.algebra_dim,
                center: rep.center_dim,
                module: rep.module_dim,
                star_dual: rep.star_dual_dim,
                dual: rep.dual_dim,
                bidual: rep.bidual_dim,
            },
            embedding_rank: rep.embedding_rank,
            injective: rep.injective,
            reflexive: rep.reflexive,
            nondegenerate: rep.nondegenerate,
            projective: rep.certificate.is_some(),
            projectivity_note: PROJECTIVITY_NOTE.into(),
            certificate: rep.certificate.as_ref().map(CertificateDoc::from),
            ghosts: GhostsDoc {
                covector_dim: rep.ghost_covector_dim,
                bidual_dim: rep.ghost_bidual_dim,
                covector_representatives: rep.ghost_covectors.iter().map(covector_doc).collect(),
                bidual_representatives: rep.ghost_bidual.iter().map(bidual_doc).collect(),
            },
            checks: ChecksDoc {
                module_z_closed: rep.checks.module_z_closed,
                dual_bimodule_closed: rep.checks.dual_bimodule_closed,
                differential_leibniz: rep.checks.differential_leibniz,
                bidual_z_closed: rep.checks.bidual_z_closed,
                covector_expansion: rep.checks.covector_expansion,
                lift_round_trip: rep.checks.lift_round_trip,
            },
            bases: with_bases.then(|| BasesDoc {
                center: rep.center.basis().iter().map(element_doc).collect(),
                module: module_basis(&rep.module),
                star_dual: covector_basis(&rep.star_dual),
                dual: covector_basis(&rep.dual),
                bidual: rep.bidual.basis().iter().map(bidual_doc).collect(),
            }),
        }
    }
}

pub fn module_basis(v: &VModule) -> Vec<MatrixDoc> {
    v.basis().iter().map(derivation_doc).collect()
}

pub fn covector_basis(c: &CovectorSpace) -> Vec<MatrixDoc> {
    c.basis().iter().map(covector_doc).collect()
}

pub fn bidual_basis(b: &crate::bidual::BidualSpace) -> Vec<MatrixDoc> {
    b.basis().iter().map(bidual_doc).collect()
}

pub fn center_basis(alg: &Algebra) -> Vec<Vec<String>> {
    alg.center().basis().iter().map(element_doc).collect()
}

/// Error payload written on failure.
#[derive(Clone, Debug, Serialize)]
pub struct ErrorDoc {
    pub error: ErrorBody,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub location: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub indices: Option<Vec<usize>>,
}

impl From<&Error> for ErrorDoc {
    fn from(e: &Error) -> Self {
        let (kind, location, indices) = match e {
            Error::ShapeMismatch(_) => ("ShapeMismatch", None, None),
            Error::DimensionMismatch { .. } => ("DimensionMismatch", None, None),
            Error::NotAssociative { i, j, k } => ("NotAssociative", None, Some(vec![*i, *j, *k])),
            Error::BadUnit { index } => ("BadUnit", None, Some(vec![*index])),
            Error::AlgebraMismatch { .. } => ("AlgebraMismatch", None, None),
            Error::UnknownPreset(_) => ("UnknownPreset", None, None),
            Error::BadParams(_) => ("BadParams", None, None),
            Error::NotCentral { index } => ("NotCentral", None, Some(vec![*index])),
            Error::NotADerivation { generator, i, j } => {
                ("NotADerivation", Some(format!("$[{generator}]")), Some(vec![*i, *j]))
            }
            Error::NotInModule => ("NotInModule", None, None),
            Error::CoefficientNotCentral { index } => ("CoefficientNotCentral", None, Some(vec![*index])),
            Error::LiftMismatch => ("LiftMismatch", None, None),
            Error::Inconsistent(_) => ("Inconsistent", None, None),
            Error::Parse { location, .. } => ("ParseError", Some(location.clone()), None),
            Error::Io(_) => ("Io", None, None),
        };
        ErrorDoc {
            error: ErrorBody {
                kind: kind.into(),
                message: e.to_string(),
                location,
                indices,
            },
        }
    }
}
