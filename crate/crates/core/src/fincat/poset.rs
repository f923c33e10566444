use std::collections::HashMap;

use crate::error::{Error, Result};

/// A finite partially ordered set on named elements.
///
/// Elements are indexed `0..len()` in the order given at construction; the
/// order relation is stored as a dense boolean table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPoset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<Vec<bool>>,
}

impl FinPoset {
    fn index_names(elements: &[String]) -> Result<HashMap<String, usize>> {
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::InvalidPoset(format!("duplicate element `{e}`")));
            }
        }
        Ok(index)
    }

    fn lookup(index: &HashMap<String, usize>, name: &str) -> Result<usize> {
        index
            .get(name)
            .copied()
            .ok_or_else(|| Error::InvalidPoset(format!("unknown element `{name}`")))
    }

    /// The reflexive-transitive closure of a covering relation. Fails on
    /// cycles.
    pub fn from_covers<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        let elements: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let index = Self::index_names(&elements)?;
        let n = elements.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in covers {
            let (a, b) = (Self::lookup(&index, a.as_ref())?, Self::lookup(&index, b.as_ref())?);
            if a == b {
                return Err(Error::InvalidPoset(format!("self-cover on `{}`", elements[a])));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::InvalidPoset(format!(
                        "covers contain a cycle through `{}` and `{}`",
                        elements[i], elements[j]
                    )));
                }
            }
        }
        Ok(FinPoset { elements, index, leq })
    }

    /// A poset from its full order relation, which must already be
    /// reflexive, antisymmetric and transitive.
    pub fn from_relation<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<Self> {
        let elements: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let index = Self::index_names(&elements)?;
        let n = elements.len();
        let mut leq = vec![vec![false; n]; n];
        for (a, b) in pairs {
            let (a, b) = (Self::lookup(&index, a.as_ref())?, Self::lookup(&index, b.as_ref())?);
            leq[a][b] = true;
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(Error::InvalidPoset(format!("not reflexive at `{}`", elements[i])));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::InvalidPoset(format!(
                        "not antisymmetric: `{}` and `{}`",
                        elements[i], elements[j]
                    )));
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(Error::InvalidPoset(format!(
                            "not transitive: `{}` <= `{}` <= `{}`",
                            elements[i], elements[j], elements[k]
                        )));
                    }
                }
            }
        }
        Ok(FinPoset { elements, index, leq })
    }

    /// The chain `0 < 1 < ... < n`, written `[n]`.
    pub fn chain(n: usize) -> Self {
        let names: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        let covers: Vec<(String, String)> = (0..n).map(|i| (names[i].clone(), names[i + 1].clone())).collect();
        Self::from_covers(&names, &covers).expect("chain is a poset")
    }

    /// `n` pairwise incomparable elements.
    pub fn antichain(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        Self::from_covers(&names, &[]).expect("antichain is a poset")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    /// All pairs `a <= b`, lexicographically by index.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|a| (0..n).filter(move |&b| self.leq[a][b]).map(move |b| (a, b))).collect()
    }

    /// Pairs `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Strict chains `x_0 < ... < x_p`, lexicographically ordered.
    pub fn strict_chains(&self, p: usize) -> Vec<Vec<usize>> {
        let mut level: Vec<Vec<usize>> = (0..self.len()).map(|i| vec![i]).collect();
        for _ in 0..p {
            let mut next = Vec::new();
            for c in &level {
                let last = *c.last().expect("nonempty chain");
                for b in 0..self.len() {
                    if self.lt(last, b) {
                        let mut d = c.clone();
                        d.push(b);
                        next.push(d);
                    }
                }
            }
            level = next;
        }
        level
    }

    /// Whether `subset` (as element indices) is closed downwards.
    pub fn is_lower_ideal(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.len()];
        for &s in subset {
            member[s] = true;
        }
        (0..self.len()).all(|b| !member[b] || (0..self.len()).all(|a| !self.leq[a][b] || member[a]))
    }

    /// The induced subposet on `subset`, keeping the given order of elements.
    pub fn subposet(&self, subset: &[usize]) -> FinPoset {
        let elements: Vec<String> = subset.iter().map(|&i| self.elements[i].clone()).collect();
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let leq = subset.iter().map(|&a| subset.iter().map(|&b| self.leq[a][b]).collect()).collect();
        FinPoset { elements, index, leq }
    }

    /// The same poset with a new greatest element appended.
    pub fn with_top(&self, name: &str) -> Result<FinPoset> {
        if self.index.contains_key(name) {
            return Err(Error::InvalidPoset(format!("duplicate element `{name}`")));
        }
        let mut elements = self.elements.clone();
        elements.push(name.to_string());
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let n = self.len();
        let mut leq: Vec<Vec<bool>> = self.leq.iter().map(|r| r.iter().copied().chain([true]).collect()).collect();
        let mut last = vec![false; n + 1];
        last[n] = true;
        leq.push(last);
        Ok(FinPoset { elements, index, leq })
    }

    /// Elements that are above every element, if any.
    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&t| (0..self.len()).all(|a| self.leq[a][t]))
    }

    /// Length of the longest strict chain (number of `<` steps).
    pub fn height(&self) -> usize {
        let mut p = 0;
        while !self.strict_chains(p + 1).is_empty() {
            p += 1;
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_validation() {
        let p = FinPoset::from_covers(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(p.leq(0, 2));
        assert!(!p.leq(2, 0));
        assert_eq!(p.pairs().len(), 6);
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
        assert!(FinPoset::from_covers(&["a", "b"], &[("a", "b"), ("b", "a")]).is_err());
        assert!(FinPoset::from_relation(&["a", "b"], &[("a", "a"), ("a", "b")]).is_err());
        assert!(FinPoset::from_relation(&["a", "b"], &[("a", "a"), ("b", "b"), ("a", "b")]).is_ok());
    }

    #[test]
    fn lower_ideals() {
        let p = FinPoset::chain(2);
        assert!(p.is_lower_ideal(&[0, 1]));
        assert!(!p.is_lower_ideal(&[1]));
        assert_eq!(p.height(), 2);
        assert_eq!(p.top(), Some(2));
        assert_eq!(FinPoset::antichain(2).top(), None);
    }
}
