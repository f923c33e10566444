use std::collections::HashMap;

use crate::fincat::category::{FinCategory, Morphism};

/// The twisted arrow category of a base category.
///
/// Objects are the base morphisms (same indices). A morphism `f -> g` is a
/// pair `(α, β)` of base morphisms with `g = α ∘ f ∘ β`.
#[derive(Clone, Debug)]
pub struct TwistedArrowCat {
    category: FinCategory,
    pairs: Vec<TwMorphism>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TwMorphism {
    pub from: usize,
    pub to: usize,
    pub alpha: usize,
    pub beta: usize,
}

impl TwistedArrowCat {
    pub fn category(&self) -> &FinCategory {
        &self.category
    }

    /// The square `(α, β)` behind a morphism of the twisted arrow category.
    pub fn square(&self, m: usize) -> TwMorphism {
        self.pairs[m]
    }

    pub fn squares(&self) -> &[TwMorphism] {
        &self.pairs
    }
}

/// Builds `Tw C` by enumerating all pairs `(α, β)` and keeping commuting
/// squares. Composition is `(α', β') ∘ (α, β) = (α' ∘ α, β ∘ β')`.
pub fn twisted_arrow(c: &FinCategory) -> TwistedArrowCat {
    let m = c.morphism_count();
    let mut pairs = Vec::new();
    for f in 0..m {
        for g in 0..m {
            for beta in c.hom(c.source(g), c.source(f)) {
                let fb = c.compose(f, beta).expect("composable");
                for alpha in c.hom(c.target(f), c.target(g)) {
                    if c.compose(alpha, fb) == Some(g) {
                        pairs.push(TwMorphism { from: f, to: g, alpha, beta });
                    }
                }
            }
        }
    }
    let index: HashMap<TwMorphism, usize> = pairs.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let morphisms: Vec<Morphism> = pairs
        .iter()
        .map(|t| Morphism {
            name: format!("({},{})", c.morphisms()[t.alpha].name, c.morphisms()[t.beta].name),
            source: t.from,
            target: t.to,
        })
        .collect();
    let identities: Vec<usize> = (0..m)
        .map(|f| {
            index[&TwMorphism { from: f, to: f, alpha: c.identity(c.target(f)), beta: c.identity(c.source(f)) }]
        })
        .collect();
    let mut table = Vec::new();
    for (i, s) in pairs.iter().enumerate() {
        for (j, t) in pairs.iter().enumerate() {
            if s.to == t.from {
                let comp = TwMorphism {
                    from: s.from,
                    to: t.to,
                    alpha: c.compose(t.alpha, s.alpha).expect("composable"),
                    beta: c.compose(s.beta, t.beta).expect("composable"),
                };
                table.push((j, i, index[&comp]));
            }
        }
    }
    let objects = c.morphisms().iter().map(|m| m.name.clone()).collect();
    let category = FinCategory::new(objects, morphisms, identities, &table).expect("twisted arrow category is valid");
    TwistedArrowCat { category, pairs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::category::poset_to_category;
    use crate::fincat::poset::FinPoset;

    #[test]
    fn tw_of_interval() {
        let c = poset_to_category(&FinPoset::chain(1));
        let tw = twisted_arrow(&c);
        let t = tw.category();
        assert_eq!(t.object_count(), 3);
        let arrow = c.morphism_index("0->1").unwrap();
        assert_eq!(t.hom(c.identity(0), arrow).len(), 1);
        assert_eq!(t.hom(c.identity(1), arrow).len(), 1);
        assert!(t.hom(arrow, c.identity(0)).is_empty());
    }

    #[test]
    fn tw_of_point_and_chain() {
        let tw = twisted_arrow(&FinCategory::point());
        assert_eq!(tw.category().object_count(), 1);
        assert_eq!(tw.category().morphism_count(), 1);
        let tw2 = twisted_arrow(&poset_to_category(&FinPoset::chain(2)));
        assert_eq!(tw2.category().object_count(), 6);
    }
}
