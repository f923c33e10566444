use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::fincat::FinPoset;
use crate::simp::complex::{image_face, SimplicialComplex};

/// A poset-indexed diagram of simplicial complexes.
///
/// `maps[(p, q)]` for `p <= q` sends vertex indices of `complexes[p]` to
/// vertex indices of `complexes[q]`; identities are included.
#[derive(Clone, Debug)]
pub struct ComplexDiagram {
    index: FinPoset,
    complexes: Vec<SimplicialComplex>,
    maps: HashMap<(usize, usize), Vec<usize>>,
}

impl ComplexDiagram {
    /// Builds the diagram from vertex maps along the covering relations of
    /// `index`, composing along chains. Maps must be simplicial, and the
    /// composites along different routes must agree.
    pub fn from_cover_maps(
        index: FinPoset,
        complexes: Vec<SimplicialComplex>,
        cover_maps: HashMap<(usize, usize), Vec<usize>>,
    ) -> Result<Self> {
        let n = index.len();
        if complexes.len() != n {
            return Err(Error::InvalidDiagram(format!("{} complexes for {} index elements", complexes.len(), n)));
        }
        let covers = index.covers();
        for key in cover_maps.keys() {
            if !covers.contains(key) {
                return Err(Error::InvalidDiagram(format!(
                    "map given for non-cover {} -> {}",
                    index.name(key.0),
                    index.name(key.1)
                )));
            }
        }
        for &(p, q) in &covers {
            let m = cover_maps.get(&(p, q)).ok_or_else(|| {
                Error::InvalidDiagram(format!("missing map {} -> {}", index.name(p), index.name(q)))
            })?;
            if !complexes[q].is_simplicial_image(&complexes[p], m) {
                return Err(Error::InvalidDiagram(format!(
                    "map {} -> {} is not simplicial",
                    index.name(p),
                    index.name(q)
                )));
            }
        }
        let mut maps: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (p, c) in complexes.iter().enumerate() {
            maps.insert((p, p), (0..c.vertices().len()).collect());
        }
        // Process targets in an order compatible with the poset, extending
        // known maps along covers and checking every alternative route.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (0..n).filter(|&y| index.lt(y, x)).count());
        for &q in &order {
            for &(r, q2) in &covers {
                if q2 != q {
                    continue;
                }
                let step = &cover_maps[&(r, q)];
                for p in 0..n {
                    if !index.leq(p, r) {
                        continue;
                    }
                    let inner = maps[&(p, r)].clone();
                    let composite: Vec<usize> = inner.iter().map(|&v| step[v]).collect();
                    match maps.get(&(p, q)) {
                        Some(existing) if *existing != composite => {
                            return Err(Error::InvalidDiagram(format!(
                                "diagram does not commute on {} <= {}",
                                index.name(p),
                                index.name(q)
                            )));
                        }
                        Some(_) => {}
                        None => {
                            maps.insert((p, q), composite);
                        }
                    }
                }
            }
        }
        Ok(ComplexDiagram { index, complexes, maps })
    }

    /// Diagram whose maps are identified by vertex names (inclusions).
    pub fn from_inclusions(index: FinPoset, complexes: Vec<SimplicialComplex>) -> Result<Self> {
        let mut cover_maps = HashMap::new();
        for (p, q) in index.covers() {
            let m = complexes
                .get(p)
                .zip(complexes.get(q))
                .and_then(|(a, b)| a.inclusion_into(b))
                .ok_or_else(|| {
                    Error::InvalidDiagram(format!("{} is not a subcomplex of {}", index.name(p), index.name(q)))
                })?;
            cover_maps.insert((p, q), m);
        }
        Self::from_cover_maps(index, complexes, cover_maps)
    }

    pub fn index(&self) -> &FinPoset {
        &self.index
    }

    pub fn complexes(&self) -> &[SimplicialComplex] {
        &self.complexes
    }

    pub fn complex(&self, p: usize) -> &SimplicialComplex {
        &self.complexes[p]
    }

    /// Vertex map for `p <= q`.
    pub fn map(&self, p: usize, q: usize) -> Option<&[usize]> {
        self.maps.get(&(p, q)).map(|v| v.as_slice())
    }

    /// Error unless every map is injective on vertices.
    pub fn check_injective(&self) -> Result<()> {
        for (p, q) in self.index.pairs() {
            let m = &self.maps[&(p, q)];
            let distinct: BTreeSet<usize> = m.iter().copied().collect();
            if distinct.len() != m.len() {
                return Err(Error::NonInjectiveMap(format!(
                    "{} -> {}",
                    self.index.name(p),
                    self.index.name(q)
                )));
            }
        }
        Ok(())
    }
}

/// A chain of subcomplexes `Σ_0 ⊆ Σ_1 ⊆ ... ⊆ Σ_n`.
#[derive(Clone, Debug)]
pub struct Filtration {
    steps: Vec<SimplicialComplex>,
}

impl Filtration {
    pub fn new(steps: Vec<SimplicialComplex>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::InvalidDiagram("filtration has no steps".into()));
        }
        for (i, w) in steps.windows(2).enumerate() {
            if w[0].inclusion_into(&w[1]).is_none() {
                return Err(Error::InvalidDiagram(format!("step {i} is not a subcomplex of step {}", i + 1)));
            }
        }
        Ok(Filtration { steps })
    }

    pub fn steps(&self) -> &[SimplicialComplex] {
        &self.steps
    }

    pub fn top(&self) -> &SimplicialComplex {
        self.steps.last().expect("nonempty")
    }

    /// The diagram indexed by the chain `[n]`.
    pub fn to_diagram(&self) -> ComplexDiagram {
        ComplexDiagram::from_inclusions(FinPoset::chain(self.steps.len() - 1), self.steps.clone())
            .expect("filtration steps are nested")
    }
}

/// The colimit of a diagram with its structure maps.
#[derive(Clone, Debug)]
pub struct Colimit {
    pub complex: SimplicialComplex,
    /// `inclusions[p][v]` is the colimit vertex of vertex `v` of `Σ_p`.
    pub inclusions: Vec<Vec<usize>>,
}

/// Quotient of the disjoint union of all complexes by the identifications
/// `v ~ map(p <= q)(v)`.
pub fn colimit(d: &ComplexDiagram) -> Result<Colimit> {
    d.check_injective()?;
    let offsets: Vec<usize> = d
        .complexes
        .iter()
        .scan(0, |acc, c| {
            let o = *acc;
            *acc += c.vertices().len();
            Some(o)
        })
        .collect();
    let total: usize = d.complexes.iter().map(|c| c.vertices().len()).sum();
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (p, q) in d.index.pairs() {
        for (v, &w) in d.maps[&(p, q)].iter().enumerate() {
            let a = find(&mut parent, offsets[p] + v);
            let b = find(&mut parent, offsets[q] + w);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    // Canonical representative of a class: its least (vertex name, index
    // name) member. Names clash only when two classes share a vertex name.
    let mut members: Vec<(usize, usize)> = Vec::with_capacity(total);
    for (p, c) in d.complexes.iter().enumerate() {
        for v in 0..c.vertices().len() {
            members.push((p, v));
        }
    }
    let mut best: HashMap<usize, (String, String)> = HashMap::new();
    for (k, &(p, v)) in members.iter().enumerate() {
        let root = find(&mut parent, k);
        let key = (d.complexes[p].vertices()[v].clone(), d.index.name(p).to_string());
        best.entry(root).and_modify(|b| {
            if key < *b {
                *b = key.clone();
            }
        })
        .or_insert(key);
    }
    let mut name_count: HashMap<&str, usize> = HashMap::new();
    for (vname, _) in best.values() {
        *name_count.entry(vname.as_str()).or_default() += 1;
    }
    let class_name: HashMap<usize, String> = best
        .iter()
        .map(|(&root, (vname, pname))| {
            let name = if name_count[vname.as_str()] > 1 { format!("{pname}:{vname}") } else { vname.clone() };
            (root, name)
        })
        .collect();
    let mut faces: Vec<Vec<String>> = Vec::new();
    for (p, c) in d.complexes.iter().enumerate() {
        for f in c.faces() {
            faces.push(f.iter().map(|&v| class_name[&find(&mut parent, offsets[p] + v)].clone()).collect());
        }
    }
    let complex = SimplicialComplex::from_maximal_faces(&faces)?;
    let inclusions = d
        .complexes
        .iter()
        .enumerate()
        .map(|(p, c)| {
            (0..c.vertices().len())
                .map(|v| {
                    let name = &class_name[&find(&mut parent, offsets[p] + v)];
                    complex.vertex_index(name).expect("class is a colimit vertex")
                })
                .collect()
        })
        .collect();
    Ok(Colimit { complex, inclusions })
}

/// The unique map `Φ: K -> L` with `Φ ∘ ι_p = φ_p`, given a compatible cone
/// `φ_p: Σ_p -> L`.
pub fn cone_factor(
    d: &ComplexDiagram,
    k: &Colimit,
    target: &SimplicialComplex,
    cone: &[Vec<usize>],
) -> Result<Vec<usize>> {
    if cone.len() != d.complexes.len() {
        return Err(Error::IncompatibleCone(format!("{} legs for {} indices", cone.len(), d.complexes.len())));
    }
    for (p, leg) in cone.iter().enumerate() {
        if !target.is_simplicial_image(&d.complexes[p], leg) {
            return Err(Error::IncompatibleCone(format!("leg at {} is not simplicial", d.index.name(p))));
        }
    }
    for (p, q) in d.index.pairs() {
        let m = &d.maps[&(p, q)];
        if (0..m.len()).any(|v| cone[q][m[v]] != cone[p][v]) {
            return Err(Error::IncompatibleCone(format!(
                "legs at {} and {} disagree",
                d.index.name(p),
                d.index.name(q)
            )));
        }
    }
    let mut phi: Vec<Option<usize>> = vec![None; k.complex.vertices().len()];
    for (p, inc) in k.inclusions.iter().enumerate() {
        for (v, &kv) in inc.iter().enumerate() {
            match phi[kv] {
                Some(w) if w != cone[p][v] => {
                    return Err(Error::IncompatibleCone("cone does not factor through the colimit".into()));
                }
                _ => phi[kv] = Some(cone[p][v]),
            }
        }
    }
    let phi: Vec<usize> = phi.into_iter().map(|x| x.expect("every colimit vertex has a preimage")).collect();
    for f in k.complex.faces() {
        if !target.contains_face(&image_face(f, &phi)) {
            return Err(Error::IncompatibleCone("factorization is not simplicial".into()));
        }
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(a: &str, b: &str) -> SimplicialComplex {
        SimplicialComplex::simplex(&[a, b]).unwrap()
    }

    fn pushout() -> ComplexDiagram {
        // p <- r -> q with r a point glued to the right end of p and left of q
        let idx = FinPoset::from_covers(&["p", "q", "r"], &[("r", "p"), ("r", "q")]).unwrap();
        let complexes = vec![edge("a", "b"), edge("x", "y"), SimplicialComplex::simplex(&["m"]).unwrap()];
        let mut maps = HashMap::new();
        maps.insert((2, 0), vec![1]);
        maps.insert((2, 1), vec![0]);
        ComplexDiagram::from_cover_maps(idx, complexes, maps).unwrap()
    }

    #[test]
    fn coproduct_of_points() {
        let idx = FinPoset::antichain(2);
        let pts = vec![SimplicialComplex::simplex(&["u"]).unwrap(), SimplicialComplex::simplex(&["u"]).unwrap()];
        let d = ComplexDiagram::from_cover_maps(idx, pts, HashMap::new()).unwrap();
        let k = colimit(&d).unwrap();
        assert_eq!(k.complex.vertices().len(), 2);
        assert_eq!(k.complex.faces().len(), 2);
    }

    #[test]
    fn pushout_of_two_edges() {
        let d = pushout();
        let k = colimit(&d).unwrap();
        assert_eq!(k.complex.vertices(), &["a", "b", "y"]);
        assert_eq!(k.complex.faces_of_dim(1).len(), 2);
        assert_eq!(k.inclusions[1], vec![1, 2]);
        let id: Vec<Vec<usize>> = k.inclusions.clone();
        assert_eq!(cone_factor(&d, &k, &k.complex, &id).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn cone_into_longer_path() {
        let d = pushout();
        let k = colimit(&d).unwrap();
        let l = SimplicialComplex::from_maximal_faces(&[vec!["0", "1"], vec!["1", "2"], vec!["2", "3"]]).unwrap();
        let cone = vec![vec![1, 2], vec![2, 3], vec![2]];
        assert_eq!(cone_factor(&d, &k, &l, &cone).unwrap(), vec![1, 2, 3]);
        let bad = vec![vec![1, 2], vec![1, 0], vec![2]];
        assert!(matches!(cone_factor(&d, &k, &l, &bad), Err(Error::IncompatibleCone(_))));
        let point = SimplicialComplex::simplex(&["*"]).unwrap();
        let constant = vec![vec![0, 0], vec![0, 0], vec![0]];
        assert_eq!(cone_factor(&d, &k, &point, &constant).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn non_injective_maps_are_rejected() {
        let idx = FinPoset::chain(1);
        let complexes = vec![edge("a", "b"), SimplicialComplex::simplex(&["c"]).unwrap()];
        let mut maps = HashMap::new();
        maps.insert((0, 1), vec![0, 0]);
        let d = ComplexDiagram::from_cover_maps(idx, complexes, maps).unwrap();
        assert!(matches!(colimit(&d), Err(Error::NonInjectiveMap(_))));
    }

    #[test]
    fn filtration_validation() {
        let pt = SimplicialComplex::simplex(&["a"]).unwrap();
        assert!(Filtration::new(vec![pt.clone(), edge("a", "b")]).is_ok());
        assert!(Filtration::new(vec![edge("a", "b"), pt]).is_err());
    }
}
