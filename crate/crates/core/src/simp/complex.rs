use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::exactla::{CochainComplexRep, Field, TripletBuilder};
use crate::fincat::FinPoset;

/// A finite abstract simplicial complex on named vertices.
///
/// Vertices are kept sorted by name; faces are sorted vertex-index lists,
/// ordered by dimension and then lexicographically. The empty simplex is not
/// a face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    faces: Vec<Vec<usize>>,
    lookup: HashMap<Vec<usize>, usize>,
}

impl SimplicialComplex {
    /// The closure of a list of faces under taking nonempty subsets.
    pub fn from_maximal_faces<S: AsRef<str>>(maximal: &[Vec<S>]) -> Result<Self> {
        let mut names: BTreeSet<String> = BTreeSet::new();
        for f in maximal {
            if f.is_empty() {
                return Err(Error::InvalidComplex("empty face".into()));
            }
            for v in f {
                names.insert(v.as_ref().to_string());
            }
        }
        let vertices: Vec<String> = names.into_iter().collect();
        let vindex: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in maximal {
            let mut idx: Vec<usize> = f.iter().map(|v| vindex[v.as_ref()]).collect();
            idx.sort_unstable();
            let before = idx.len();
            idx.dedup();
            if idx.len() != before {
                return Err(Error::InvalidComplex("face with a repeated vertex".into()));
            }
            if idx.len() > 24 {
                return Err(Error::InvalidComplex("face dimension too large".into()));
            }
            for mask in 1u32..(1 << idx.len()) {
                let sub: Vec<usize> = (0..idx.len()).filter(|b| mask >> b & 1 == 1).map(|b| idx[b]).collect();
                all.insert(sub);
            }
        }
        Ok(Self::assemble(vertices, all))
    }

    /// A complex from an explicit face list, which must be closed under
    /// nonempty subsets and contain every vertex as a singleton.
    pub fn from_faces<S: AsRef<str>>(faces: &[Vec<S>]) -> Result<Self> {
        let c = Self::from_maximal_faces(faces)?;
        if c.faces.len() != {
            let mut set: BTreeSet<Vec<&str>> = BTreeSet::new();
            for f in faces {
                let mut v: Vec<&str> = f.iter().map(|s| s.as_ref()).collect();
                v.sort_unstable();
                set.insert(v);
            }
            set.len()
        } {
            return Err(Error::InvalidComplex("face list is not closed under subsets".into()));
        }
        Ok(c)
    }

    fn assemble(vertices: Vec<String>, all: BTreeSet<Vec<usize>>) -> Self {
        let mut faces: Vec<Vec<usize>> = all.into_iter().collect();
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let lookup = faces.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
        SimplicialComplex { vertices, faces, lookup }
    }

    /// The full simplex on the given vertices.
    pub fn simplex<S: AsRef<str>>(vertices: &[S]) -> Result<Self> {
        let names: Vec<&str> = vertices.iter().map(|v| v.as_ref()).collect();
        Self::from_maximal_faces(&[names])
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_index(&self, face: &[usize]) -> Option<usize> {
        self.lookup.get(face).copied()
    }

    pub fn contains_face(&self, face: &[usize]) -> bool {
        self.lookup.contains_key(face)
    }

    /// Faces with `k + 1` vertices.
    pub fn faces_of_dim(&self, k: usize) -> Vec<&[usize]> {
        self.faces.iter().filter(|f| f.len() == k + 1).map(|f| f.as_slice()).collect()
    }

    pub fn dimension(&self) -> usize {
        self.faces.last().map(|f| f.len() - 1).unwrap_or(0)
    }

    /// Vertex names of a face.
    pub fn face_names(&self, face: &[usize]) -> Vec<&str> {
        face.iter().map(|&v| self.vertices[v].as_str()).collect()
    }

    /// Text label of a face, such as `{a,b}`.
    pub fn face_label(&self, face: &[usize]) -> String {
        format!("{{{}}}", self.face_names(face).join(","))
    }

    /// Maximal faces, in face order.
    pub fn maximal_faces(&self) -> Vec<Vec<usize>> {
        self.faces
            .iter()
            .filter(|f| !self.faces.iter().any(|g| g.len() > f.len() && f.iter().all(|v| g.contains(v))))
            .cloned()
            .collect()
    }

    /// Maximal faces as vertex names.
    pub fn maximal_face_names(&self) -> Vec<Vec<String>> {
        self.maximal_faces()
            .iter()
            .map(|f| self.face_names(f).into_iter().map(String::from).collect())
            .collect()
    }

    /// Vertex map from `self` into `other` matching names, if every face of
    /// `self` is a face of `other`.
    pub fn inclusion_into(&self, other: &SimplicialComplex) -> Option<Vec<usize>> {
        let map: Option<Vec<usize>> = self.vertices.iter().map(|v| other.vertex_index(v)).collect();
        let map = map?;
        if other.is_simplicial_image(self, &map) {
            Some(map)
        } else {
            None
        }
    }

    /// Whether `map` (vertices of `source` to vertices of `self`) sends every
    /// face of `source` to a face of `self`.
    pub fn is_simplicial_image(&self, source: &SimplicialComplex, map: &[usize]) -> bool {
        map.len() == source.vertices.len()
            && map.iter().all(|&v| v < self.vertices.len())
            && source.faces.iter().all(|f| self.contains_face(&image_face(f, map)))
    }
}

/// Image of a face under a vertex map, as a sorted deduplicated list.
pub fn image_face(face: &[usize], map: &[usize]) -> Vec<usize> {
    let mut img: Vec<usize> = face.iter().map(|&v| map[v]).collect();
    img.sort_unstable();
    img.dedup();
    img
}

/// The simplicial cochain complex in degrees `0..=top`, with
/// `(δf)(v_0..v_{k+1}) = Σ (-1)^i f(v_0..v̂_i..v_{k+1})`.
pub fn cochain_complex<F: Field>(s: &SimplicialComplex, field: &F, top: usize) -> CochainComplexRep<F> {
    let by_dim: Vec<Vec<&[usize]>> = (0..=top + 1).map(|k| s.faces_of_dim(k)).collect();
    let index: Vec<HashMap<&[usize], usize>> =
        by_dim.iter().map(|fs| fs.iter().enumerate().map(|(i, f)| (*f, i)).collect()).collect();
    let mut diffs = Vec::new();
    for k in 0..=top {
        let mut b = TripletBuilder::new(field, by_dim[k + 1].len(), by_dim[k].len());
        for (row, face) in by_dim[k + 1].iter().enumerate() {
            for i in 0..face.len() {
                let mut sub = face.to_vec();
                sub.remove(i);
                let sign = if i % 2 == 0 { field.one() } else { field.neg(&field.one()) };
                b.push(row, index[k][sub.as_slice()], sign);
            }
        }
        diffs.push(b.build());
    }
    let dims = by_dim[..=top].iter().map(|v| v.len()).collect();
    CochainComplexRep::new(field, dims, diffs).expect("simplicial coboundary squares to zero")
}

/// `dim H^q(Σ; k)` for `q = 0..=q_max`.
pub fn simplicial_cohomology<F: Field>(s: &SimplicialComplex, field: &F, q_max: usize) -> Vec<usize> {
    cochain_complex(s, field, q_max).cohomology_dims()
}

/// The poset of faces ordered by containment, optionally with the empty
/// face as a bottom element named `{}`. Elements follow the face order.
pub fn face_poset(s: &SimplicialComplex, include_empty: bool) -> FinPoset {
    let mut names: Vec<String> = Vec::new();
    if include_empty {
        names.push("{}".into());
    }
    names.extend(s.faces().iter().map(|f| s.face_label(f)));
    let mut covers: Vec<(String, String)> = Vec::new();
    for f in s.faces() {
        if f.len() == 1 {
            if include_empty {
                covers.push(("{}".into(), s.face_label(f)));
            }
            continue;
        }
        for i in 0..f.len() {
            let mut sub = f.clone();
            sub.remove(i);
            covers.push((s.face_label(&sub), s.face_label(f)));
        }
    }
    FinPoset::from_covers(&names, &covers).expect("face containment is a partial order")
}

/// The order complex: vertices are poset elements, faces are strict chains.
pub fn order_complex(p: &FinPoset) -> SimplicialComplex {
    let mut faces: Vec<Vec<String>> = Vec::new();
    let mut k = 0;
    loop {
        let chains = p.strict_chains(k);
        if chains.is_empty() {
            break;
        }
        faces.extend(chains.into_iter().map(|c| c.into_iter().map(|i| p.name(i).to_string()).collect()));
        k += 1;
    }
    SimplicialComplex::from_maximal_faces(&faces).expect("chains form a complex")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;

    fn gf(p: u32) -> Fp {
        Fp::new(p).unwrap()
    }

    #[test]
    fn closure_of_maximal_faces() {
        let t = SimplicialComplex::from_maximal_faces(&[vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]).unwrap();
        assert_eq!(t.faces().len(), 6);
        assert_eq!(t.dimension(), 1);
        assert!(SimplicialComplex::from_faces(&[vec!["a", "b"]]).is_err());
        assert!(SimplicialComplex::from_faces(&[vec!["a"], vec!["b"], vec!["a", "b"]]).is_ok());
    }

    #[test]
    fn cohomology_examples() {
        let pt = SimplicialComplex::simplex(&["v"]).unwrap();
        assert_eq!(simplicial_cohomology(&pt, &gf(2), 2), vec![1, 0, 0]);
        let circle = SimplicialComplex::from_maximal_faces(&[vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]).unwrap();
        assert_eq!(simplicial_cohomology(&circle, &gf(2), 2), vec![1, 1, 0]);
        let disk = SimplicialComplex::simplex(&["a", "b", "c"]).unwrap();
        assert_eq!(simplicial_cohomology(&disk, &gf(2), 2), vec![1, 0, 0]);
    }

    #[test]
    fn face_poset_examples() {
        let edge = SimplicialComplex::simplex(&["a", "b"]).unwrap();
        let fp = face_poset(&edge, false);
        assert_eq!(fp.len(), 3);
        assert_eq!(fp.pairs().len() - fp.len(), 2);
        let circle = SimplicialComplex::from_maximal_faces(&[vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]).unwrap();
        let fp = face_poset(&circle, false);
        assert_eq!((fp.len(), fp.covers().len()), (6, 6));
        assert_eq!(face_poset(&SimplicialComplex::simplex(&["v"]).unwrap(), false).len(), 1);
        assert_eq!(face_poset(&edge, true).len(), 4);
    }

    #[test]
    fn order_complex_of_face_poset_is_subdivision() {
        let circle = SimplicialComplex::from_maximal_faces(&[vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]).unwrap();
        let sd = order_complex(&face_poset(&circle, false));
        assert_eq!(sd.vertices().len(), 6);
        assert_eq!(sd.faces_of_dim(1).len(), 6);
        assert_eq!(simplicial_cohomology(&sd, &gf(3), 2), vec![1, 1, 0]);
    }
}
