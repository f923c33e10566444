use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fincat::poset::FinPoset;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite category given by an explicit composition table.
///
/// `compose(g, f)` is `g ∘ f` (first `f`, then `g`) and is defined exactly when
/// `target(f) == source(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    table: Vec<u32>,
}

const UNDEFINED: u32 = u32::MAX;

impl FinCategory {
    /// Validates the identity laws, associativity, and that the table is
    /// defined exactly on composable pairs. `table` lists `(g, f, g∘f)`.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        table: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let m = morphisms.len();
        let bad = |msg: String| Error::InvalidCategory(msg);
        if identities.len() != objects.len() {
            return Err(bad("one identity per object required".into()));
        }
        for mor in &morphisms {
            if mor.source >= objects.len() || mor.target >= objects.len() {
                return Err(bad(format!("morphism `{}` has an unknown endpoint", mor.name)));
            }
        }
        for (o, &id) in identities.iter().enumerate() {
            if id >= m || morphisms[id].source != o || morphisms[id].target != o {
                return Err(bad(format!("identity of `{}` is not an endomorphism of it", objects[o])));
            }
        }
        let mut t = vec![UNDEFINED; m * m];
        for &(g, f, h) in table {
            if g >= m || f >= m || h >= m {
                return Err(bad("composition entry out of range".into()));
            }
            if morphisms[f].target != morphisms[g].source {
                return Err(bad(format!(
                    "composite of non-composable `{}` after `{}`",
                    morphisms[g].name, morphisms[f].name
                )));
            }
            if morphisms[h].source != morphisms[f].source || morphisms[h].target != morphisms[g].target {
                return Err(bad(format!("composite `{}` has wrong endpoints", morphisms[h].name)));
            }
            let slot = &mut t[g * m + f];
            if *slot != UNDEFINED && *slot != h as u32 {
                return Err(bad(format!(
                    "two composites for `{}` after `{}`",
                    morphisms[g].name, morphisms[f].name
                )));
            }
            *slot = h as u32;
        }
        let c = FinCategory { objects, morphisms, identities, table: t };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        let m = self.morphisms.len();
        let bad = |msg: String| Error::InvalidCategory(msg);
        for g in 0..m {
            for f in 0..m {
                let composable = self.morphisms[f].target == self.morphisms[g].source;
                if composable != (self.table[g * m + f] != UNDEFINED) {
                    return Err(bad(format!(
                        "composition of `{}` after `{}` is missing",
                        self.morphisms[g].name, self.morphisms[f].name
                    )));
                }
            }
        }
        for f in 0..m {
            let (s, t) = (self.morphisms[f].source, self.morphisms[f].target);
            if self.compose(self.identities[t], f) != Some(f) || self.compose(f, self.identities[s]) != Some(f) {
                return Err(bad(format!("identity law fails for `{}`", self.morphisms[f].name)));
            }
        }
        for f in 0..m {
            for g in self.out_of(self.morphisms[f].target) {
                let gf = self.compose(g, f).expect("composable");
                for h in self.out_of(self.morphisms[g].target) {
                    if self.compose(h, gf) != self.compose(self.compose(h, g).expect("composable"), f) {
                        return Err(bad(format!(
                            "associativity fails at `{}`, `{}`, `{}`",
                            self.morphisms[h].name, self.morphisms[g].name, self.morphisms[f].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].source] == f
    }

    pub fn source(&self, f: usize) -> usize {
        self.morphisms[f].source
    }

    pub fn target(&self, f: usize) -> usize {
        self.morphisms[f].target
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    /// `g ∘ f`, or `None` when not composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        let m = self.morphisms.len();
        match self.table[g * m + f] {
            UNDEFINED => None,
            h => Some(h as usize),
        }
    }

    /// Morphisms with the given source, in index order.
    pub fn out_of(&self, object: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.morphisms.len()).filter(move |&f| self.morphisms[f].source == object)
    }

    /// Morphisms `a -> b`, in index order.
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&f| self.morphisms[f].source == a && self.morphisms[f].target == b)
            .collect()
    }

    /// No non-identity endomorphisms and no pair of distinct objects with
    /// morphisms both ways.
    pub fn check_loop_free(&self) -> Result<()> {
        for (f, mor) in self.morphisms.iter().enumerate() {
            if mor.source == mor.target && !self.is_identity(f) {
                return Err(Error::NotLoopFree(format!("non-identity endomorphism `{}`", mor.name)));
            }
        }
        let n = self.objects.len();
        let mut reach = vec![vec![false; n]; n];
        for mor in &self.morphisms {
            reach[mor.source][mor.target] = true;
        }
        for a in 0..n {
            for b in a + 1..n {
                if reach[a][b] && reach[b][a] {
                    return Err(Error::NotLoopFree(format!(
                        "morphisms both ways between `{}` and `{}`",
                        self.objects[a], self.objects[b]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_loop_free(&self) -> bool {
        self.check_loop_free().is_ok()
    }

    /// Number of identity-free composable steps in the longest chain. Only
    /// meaningful for loop-free categories.
    pub fn longest_chain(&self) -> Result<usize> {
        self.check_loop_free()?;
        let n = self.objects.len();
        // Objects reachable by a non-identity arrow form a strict order; a
        // longest path in it is found by memoized search.
        let mut memo: Vec<Option<usize>> = vec![None; n];
        fn depth(c: &FinCategory, o: usize, memo: &mut Vec<Option<usize>>) -> usize {
            if let Some(d) = memo[o] {
                return d;
            }
            let mut best = 0;
            for f in c.out_of(o).collect::<Vec<_>>() {
                if !c.is_identity(f) {
                    best = best.max(1 + depth(c, c.target(f), memo));
                }
            }
            memo[o] = Some(best);
            best
        }
        Ok((0..n).map(|o| depth(self, o, &mut memo)).max().unwrap_or(0))
    }

    /// A non-identity morphism is indecomposable when it is not a composite
    /// of two non-identity morphisms.
    pub fn is_indecomposable(&self, f: usize) -> bool {
        if self.is_identity(f) {
            return false;
        }
        !self.out_of(self.source(f)).any(|h| {
            !self.is_identity(h)
                && self
                    .out_of(self.target(h))
                    .any(|g| !self.is_identity(g) && self.compose(g, h) == Some(f))
        })
    }

    /// Whether every non-identity morphism factors in exactly one way as a
    /// composite of indecomposables.
    pub fn is_free(&self) -> Result<bool> {
        self.check_loop_free()?;
        let m = self.morphisms.len();
        let indec: Vec<bool> = (0..m).map(|f| self.is_indecomposable(f)).collect();
        let mut memo: Vec<Option<u64>> = vec![None; m];
        fn count(c: &FinCategory, f: usize, indec: &[bool], memo: &mut Vec<Option<u64>>) -> u64 {
            if let Some(n) = memo[f] {
                return n;
            }
            // Factorizations f = g ∘ h with h indecomposable first step.
            let mut n = u64::from(indec[f]);
            for h in c.out_of(c.source(f)).collect::<Vec<_>>() {
                if !indec[h] {
                    continue;
                }
                for g in c.out_of(c.target(h)).collect::<Vec<_>>() {
                    if !c.is_identity(g) && c.compose(g, h) == Some(f) {
                        n = n.saturating_add(count(c, g, indec, memo));
                    }
                }
            }
            memo[f] = Some(n);
            n
        }
        Ok((0..m).filter(|&f| !self.is_identity(f)).all(|f| count(self, f, &indec, &mut memo) == 1))
    }

    /// The category with all arrows reversed; morphism indices are kept.
    pub fn opposite(&self) -> FinCategory {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism { name: m.name.clone(), source: m.target, target: m.source })
            .collect();
        let m = self.morphisms.len();
        let mut table = vec![UNDEFINED; m * m];
        for g in 0..m {
            for f in 0..m {
                // g ∘op f = f ∘ g
                table[g * m + f] = self.table[f * m + g];
            }
        }
        FinCategory { objects: self.objects.clone(), morphisms, identities: self.identities.clone(), table }
    }

    /// Name-to-index map for morphisms.
    pub fn morphism_names(&self) -> HashMap<&str, usize> {
        self.morphisms.iter().enumerate().map(|(i, m)| (m.name.as_str(), i)).collect()
    }
}

/// The thin category of a poset: one morphism `a -> b` for each `a <= b`.
///
/// Morphisms are ordered as `FinPoset::pairs`; identities are named `id_a`
/// and the others `a->b`.
pub fn poset_to_category(p: &FinPoset) -> FinCategory {
    let pairs = p.pairs();
    let idx: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &pr)| (pr, i)).collect();
    let morphisms: Vec<Morphism> = pairs
        .iter()
        .map(|&(a, b)| Morphism {
            name: if a == b { format!("id_{}", p.name(a)) } else { format!("{}->{}", p.name(a), p.name(b)) },
            source: a,
            target: b,
        })
        .collect();
    let identities: Vec<usize> = (0..p.len()).map(|a| idx[&(a, a)]).collect();
    let mut table = Vec::new();
    for &(a, b) in &pairs {
        for &(b2, c) in &pairs {
            if b == b2 {
                table.push((idx[&(b, c)], idx[&(a, b)], idx[&(a, c)]));
            }
        }
    }
    FinCategory::new(p.elements().to_vec(), morphisms, identities, &table).expect("poset category is valid")
}

impl FinCategory {
    /// A category with a single object and only its identity.
    pub fn point() -> FinCategory {
        poset_to_category(&FinPoset::chain(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_missing_composites() {
        let objects = vec!["a".to_string(), "b".to_string()];
        let morphisms = vec![
            Morphism { name: "1a".into(), source: 0, target: 0 },
            Morphism { name: "1b".into(), source: 1, target: 1 },
            Morphism { name: "f".into(), source: 0, target: 1 },
        ];
        let full = [(0, 0, 0), (1, 1, 1), (2, 0, 2), (1, 2, 2)];
        assert!(FinCategory::new(objects.clone(), morphisms.clone(), vec![0, 1], &full).is_ok());
        let err = FinCategory::new(objects, morphisms, vec![0, 1], &full[..3]).unwrap_err();
        assert!(matches!(err, Error::InvalidCategory(_)));
    }

    #[test]
    fn loop_detection() {
        // one object with an idempotent e: e∘e = e
        let morphisms = vec![
            Morphism { name: "1".into(), source: 0, target: 0 },
            Morphism { name: "e".into(), source: 0, target: 0 },
        ];
        let c = FinCategory::new(vec!["x".into()], morphisms, vec![0], &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)])
            .unwrap();
        assert!(matches!(c.check_loop_free(), Err(Error::NotLoopFree(_))));
        assert!(matches!(c.is_free(), Err(Error::NotLoopFree(_))));
    }

    #[test]
    fn opposite_reverses() {
        let c = poset_to_category(&FinPoset::chain(2));
        let op = c.opposite();
        let f = c.morphism_index("0->1").unwrap();
        let g = c.morphism_index("1->2").unwrap();
        let gf = c.compose(g, f).unwrap();
        assert_eq!(op.compose(f, g), Some(gf));
        assert_eq!(op.source(f), 1);
    }
}
