use std::collections::HashMap;

use crate::fincat::category::FinCategory;

/// A composable chain `c_0 -> c_1 -> ... -> c_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl Chain {
    pub fn degree(&self) -> usize {
        self.arrows.len()
    }

    /// `c_0`.
    pub fn min(&self) -> usize {
        self.objects[0]
    }

    /// `c_p`.
    pub fn max(&self) -> usize {
        *self.objects.last().expect("chain has an object")
    }

    fn key(&self) -> Vec<usize> {
        if self.arrows.is_empty() {
            self.objects.clone()
        } else {
            self.arrows.clone()
        }
    }
}

/// Chains of the nerve up to a fixed degree, with face indices.
///
/// In normalized mode only identity-free chains are kept; a face that would
/// produce an identity is degenerate and has no index.
#[derive(Clone, Debug)]
pub struct NerveChains {
    normalized: bool,
    levels: Vec<Vec<Chain>>,
    composites: Vec<Vec<usize>>,
    faces: Vec<Vec<Vec<Option<usize>>>>,
}

impl NerveChains {
    pub fn new(c: &FinCategory, p_max: usize, normalized: bool) -> Self {
        let mut levels: Vec<Vec<Chain>> = vec![(0..c.object_count())
            .map(|o| Chain { objects: vec![o], arrows: Vec::new() })
            .collect()];
        let mut composites: Vec<Vec<usize>> = vec![(0..c.object_count()).map(|o| c.identity(o)).collect()];
        for p in 1..=p_max {
            let mut next = Vec::new();
            let mut comp = Vec::new();
            for (k, ch) in levels[p - 1].iter().enumerate() {
                for f in c.out_of(ch.max()) {
                    if normalized && c.is_identity(f) {
                        continue;
                    }
                    let mut d = ch.clone();
                    d.objects.push(c.target(f));
                    d.arrows.push(f);
                    comp.push(c.compose(f, composites[p - 1][k]).expect("composable"));
                    next.push(d);
                }
            }
            if next.is_empty() {
                break;
            }
            levels.push(next);
            composites.push(comp);
        }
        let lookup: Vec<HashMap<Vec<usize>, usize>> = levels
            .iter()
            .map(|lvl| lvl.iter().enumerate().map(|(i, ch)| (ch.key(), i)).collect())
            .collect();
        let mut faces = vec![Vec::new()];
        for p in 1..levels.len() {
            let fp = levels[p]
                .iter()
                .map(|ch| {
                    (0..=p)
                        .map(|r| {
                            let face = face_of(c, ch, r);
                            if normalized && face.arrows.iter().any(|&a| c.is_identity(a)) {
                                None
                            } else {
                                lookup[p - 1].get(&face.key()).copied()
                            }
                        })
                        .collect()
                })
                .collect();
            faces.push(fp);
        }
        NerveChains { normalized, levels, composites, faces }
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Highest degree with at least one chain.
    pub fn top_degree(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn chains(&self, p: usize) -> &[Chain] {
        self.levels.get(p).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn count(&self, p: usize) -> usize {
        self.chains(p).len()
    }

    /// The composite `c_0 -> c_p` of chain `k` in degree `p`.
    pub fn composite(&self, p: usize, k: usize) -> usize {
        self.composites[p][k]
    }

    /// Index in degree `p - 1` of the face `d_r` of chain `k` (drop object
    /// `r`), or `None` when that face is degenerate.
    pub fn face(&self, p: usize, k: usize, r: usize) -> Option<usize> {
        self.faces[p][k][r]
    }
}

/// The face dropping object `r`: outer faces drop an arrow, inner faces
/// compose two.
pub fn face_of(c: &FinCategory, ch: &Chain, r: usize) -> Chain {
    let p = ch.degree();
    let mut objects = ch.objects.clone();
    objects.remove(r);
    let mut arrows = ch.arrows.clone();
    if r == 0 {
        arrows.remove(0);
    } else if r == p {
        arrows.pop();
    } else {
        let g = arrows.remove(r);
        arrows[r - 1] = c.compose(g, arrows[r - 1]).expect("composable");
    }
    Chain { objects, arrows }
}

/// Normalized nerve chains up to degree `p_max`.
pub fn nerve(c: &FinCategory, p_max: usize) -> NerveChains {
    NerveChains::new(c, p_max, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::category::poset_to_category;
    use crate::fincat::poset::FinPoset;

    #[test]
    fn chain_counts() {
        let n1 = nerve(&poset_to_category(&FinPoset::chain(1)), 5);
        assert_eq!((n1.count(0), n1.count(1), n1.count(2)), (2, 1, 0));
        let n2 = nerve(&poset_to_category(&FinPoset::chain(2)), 5);
        assert_eq!((n2.count(0), n2.count(1), n2.count(2), n2.count(3)), (3, 3, 1, 0));
        let pt = nerve(&FinCategory::point(), 3);
        assert_eq!((pt.count(0), pt.count(1)), (1, 0));
    }

    #[test]
    fn faces_of_a_two_simplex() {
        let c = poset_to_category(&FinPoset::chain(2));
        let n = nerve(&c, 2);
        let top = &n.chains(2)[0];
        assert_eq!(top.objects, vec![0, 1, 2]);
        let names: Vec<Vec<usize>> = (0..3).map(|r| n.chains(1)[n.face(2, 0, r).unwrap()].objects.clone()).collect();
        assert_eq!(names, vec![vec![1, 2], vec![0, 2], vec![0, 1]]);
    }

    #[test]
    fn unnormalized_includes_identities() {
        let c = poset_to_category(&FinPoset::chain(1));
        let n = NerveChains::new(&c, 2, false);
        // degree 1: all 3 morphisms; degree 2: composable pairs
        assert_eq!(n.count(1), 3);
        assert_eq!(n.count(2), 4);
        assert!(n.face(2, 0, 1).is_some());
    }
}
