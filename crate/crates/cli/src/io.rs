//! JSON documents read and written by the command line.
//!
//! Every document may carry `"schema": "gs-cohomlab/1"`; output documents
//! always do.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use cohomlab::alg::{AlgebraMorphism, FiniteAlgebra};
use cohomlab::exactla::{Field, SparseMatrix};
use cohomlab::fincat::FinPoset;
use cohomlab::simp::{ComplexDiagram, Filtration, SimplicialComplex};
use cohomlab::Error;

pub const SCHEMA: &str = "gs-cohomlab/1";

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{path}: line {line}, column {column}: {message}")]
    Syntax { path: String, line: usize, column: usize, message: String },
    #[error("{path}: {field}: {message}")]
    Field { path: String, field: String, message: String },
}

/// A scalar given either as a JSON integer or as a string such as `"-3/4"`.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn to_elem<F: Field>(&self, field: &F) -> cohomlab::Result<F::Elem> {
        match self {
            Scalar::Int(v) => Ok(field.from_i64(*v)),
            Scalar::Text(s) => field.parse(s),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub maximal_faces: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FiltrationDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub steps: Vec<ComplexDoc>,
}

/// Vertex map along a cover `x < y`. Vertices missing from `vertices` map to
/// the vertex of the same name.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CoverMapDoc {
    pub cover: (String, String),
    #[serde(default)]
    pub vertices: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub poset: PosetDoc,
    pub complexes: BTreeMap<String, ComplexDoc>,
    #[serde(default)]
    pub maps: Vec<CoverMapDoc>,
}

/// `mult` lists `[i, j, k, c]`: the product `e_i e_j` has coefficient `c`
/// on `e_k`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub unit: Vec<(usize, Scalar)>,
    pub mult: Vec<(usize, usize, usize, Scalar)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// `matrix` lists `[row, col, c]` with rows indexing the target basis.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub source: AlgebraDoc,
    pub target: AlgebraDoc,
    pub matrix: Vec<(usize, usize, Scalar)>,
}

/// Reads and deserializes a document, reporting the position of syntax and
/// shape errors.
pub fn read_doc<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Read { path: name.clone(), source })?;
    parse_doc(&name, &text)
}

pub fn parse_doc<T: serde::de::DeserializeOwned>(name: &str, text: &str) -> Result<T, InputError> {
    let value: Value = serde_json::from_str(text).map_err(|e| InputError::Syntax {
        path: name.into(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if let Some(s) = value.get("schema") {
        if s != SCHEMA {
            return Err(InputError::Field {
                path: name.into(),
                field: "schema".into(),
                message: format!("expected \"{SCHEMA}\", found {s}"),
            });
        }
    }
    serde_json::from_str(text).map_err(|e| InputError::Syntax {
        path: name.into(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

impl PosetDoc {
    pub fn build(&self) -> cohomlab::Result<FinPoset> {
        FinPoset::from_covers(&self.elements, &self.covers.iter().map(|(a, b)| (a.clone(), b.clone())).collect::<Vec<_>>())
    }

    pub fn from_poset(p: &FinPoset) -> Self {
        PosetDoc {
            schema: Some(SCHEMA.into()),
            elements: p.elements().to_vec(),
            covers: p.covers().into_iter().map(|(a, b)| (p.name(a).to_string(), p.name(b).to_string())).collect(),
        }
    }
}

impl ComplexDoc {
    pub fn build(&self) -> cohomlab::Result<SimplicialComplex> {
        SimplicialComplex::from_maximal_faces(&self.maximal_faces)
    }

    pub fn from_complex(s: &SimplicialComplex) -> Self {
        ComplexDoc { schema: Some(SCHEMA.into()), maximal_faces: s.maximal_face_names() }
    }
}

impl FiltrationDoc {
    pub fn build(&self) -> cohomlab::Result<Filtration> {
        Filtration::new(self.steps.iter().map(|s| s.build()).collect::<cohomlab::Result<_>>()?)
    }
}

impl DiagramDoc {
    pub fn build(&self) -> cohomlab::Result<ComplexDiagram> {
        let index = self.poset.build()?;
        let complexes: Vec<SimplicialComplex> = index
            .elements()
            .iter()
            .map(|e| {
                self.complexes
                    .get(e)
                    .ok_or_else(|| Error::InvalidDiagram(format!("no complex for `{e}`")))?
                    .build()
            })
            .collect::<cohomlab::Result<_>>()?;
        for key in self.complexes.keys() {
            if index.index_of(key).is_none() {
                return Err(Error::InvalidDiagram(format!("complex given for unknown element `{key}`")));
            }
        }
        let mut given: HashMap<(usize, usize), &BTreeMap<String, String>> = HashMap::new();
        for m in &self.maps {
            let lookup = |n: &str| {
                index.index_of(n).ok_or_else(|| Error::InvalidDiagram(format!("unknown element `{n}` in a cover map")))
            };
            given.insert((lookup(&m.cover.0)?, lookup(&m.cover.1)?), &m.vertices);
        }
        let mut cover_maps = HashMap::new();
        for (x, y) in index.covers() {
            let (sx, sy) = (&complexes[x], &complexes[y]);
            let renaming = given.remove(&(x, y));
            let map = sx
                .vertices()
                .iter()
                .map(|v| {
                    let w = renaming.and_then(|r| r.get(v)).unwrap_or(v);
                    sy.vertex_index(w).ok_or_else(|| {
                        Error::InvalidDiagram(format!(
                            "vertex `{v}` of `{}` has no image `{w}` in `{}`",
                            index.name(x),
                            index.name(y)
                        ))
                    })
                })
                .collect::<cohomlab::Result<Vec<usize>>>()?;
            cover_maps.insert((x, y), map);
        }
        if let Some(&(x, y)) = given.keys().next() {
            return Err(Error::InvalidDiagram(format!("`{}` < `{}` is not a cover", index.name(x), index.name(y))));
        }
        ComplexDiagram::from_cover_maps(index, complexes, cover_maps)
    }
}

impl AlgebraDoc {
    pub fn build<F: Field>(&self, field: &F) -> cohomlab::Result<FiniteAlgebra<F>> {
        let n = self.dim;
        let mut mult = vec![Vec::new(); n * n];
        for (i, j, k, c) in &self.mult {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::InvalidAlgebra(format!("product entry ({i}, {j}, {k}) out of range")));
            }
            mult[i * n + j].push((*k, c.to_elem(field)?));
        }
        let unit = self.unit.iter().map(|(i, c)| Ok((*i, c.to_elem(field)?))).collect::<cohomlab::Result<_>>()?;
        FiniteAlgebra::new(field, n, mult, unit, self.labels.clone())
    }

    pub fn from_algebra<F: Field>(a: &FiniteAlgebra<F>) -> Self {
        let field = a.field();
        let n = a.dim();
        let mut mult = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in a.basis_product(i, j) {
                    mult.push((i, j, *k, Scalar::Text(field.format(c))));
                }
            }
        }
        AlgebraDoc {
            schema: Some(SCHEMA.into()),
            dim: n,
            field: Some(field.spec().to_string()),
            unit: a.unit().iter().map(|(i, c)| (*i, Scalar::Text(field.format(c)))).collect(),
            mult,
            labels: Some(a.labels().to_vec()),
        }
    }
}

impl MorphismDoc {
    pub fn build<F: Field>(&self, field: &F) -> cohomlab::Result<AlgebraMorphism<F>> {
        let s = self.source.build(field)?;
        let t = self.target.build(field)?;
        let triplets = self
            .matrix
            .iter()
            .map(|(r, c, v)| Ok((*r, *c, v.to_elem(field)?)))
            .collect::<cohomlab::Result<Vec<_>>>()?;
        let m = SparseMatrix::from_triplets(field, t.dim(), s.dim(), triplets)?;
        AlgebraMorphism::new(&s, &t, m)
    }
}

/// Wraps a payload with the schema key and the command name.
pub fn envelope(command: &str, payload: Value) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("schema".into(), SCHEMA.into());
    out.insert("command".into(), command.into());
    if let Value::Object(m) = payload {
        out.extend(m);
    }
    Value::Object(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cohomlab::exactla::Fp;

    #[test]
    fn algebra_round_trip() {
        let f = Fp::new(3).unwrap();
        let a = cohomlab::alg::truncated_polynomial_algebra(&f, 2);
        let doc = AlgebraDoc::from_algebra(&a);
        let text = serde_json::to_string(&doc).unwrap();
        let back: AlgebraDoc = parse_doc("mem", &text).unwrap();
        assert_eq!(back.build(&f).unwrap(), a);
    }

    #[test]
    fn diagnostics_carry_positions() {
        let err = parse_doc::<PosetDoc>("p.json", "{\n  \"elements\": [1, \n").unwrap_err();
        assert!(matches!(err, InputError::Syntax { line: 3, .. }), "{err}");
        let err = parse_doc::<PosetDoc>("p.json", "{\"schema\": \"other\", \"elements\": [], \"covers\": []}").unwrap_err();
        assert!(err.to_string().contains("schema"));
    }

    #[test]
    fn diagram_with_renamed_vertices() {
        let text = r#"{
            "poset": {"elements": ["x", "y", "z"], "covers": [["x", "z"], ["y", "z"]]},
            "complexes": {
                "x": {"maximal_faces": [["a", "b"]]},
                "y": {"maximal_faces": [["c", "d"]]},
                "z": {"maximal_faces": [["a", "b"], ["b", "d"]]}
            },
            "maps": [{"cover": ["y", "z"], "vertices": {"c": "b"}}]
        }"#;
        let d = parse_doc::<DiagramDoc>("d", text).unwrap().build().unwrap();
        let y = d.index().index_of("y").unwrap();
        let z = d.index().index_of("z").unwrap();
        assert_eq!(d.map(y, z).unwrap().len(), 2);
    }
}
