//! Sparse Gaussian elimination: rank, kernels, linear solves, and quotient
//! coordinates.
//!
//! Everything is exact and deterministic. `rank` splits the matrix into
//! connected components of its row/column incidence graph and eliminates each
//! component independently, with a Markowitz-style ordering (sparse vectors
//! first, rarely occurring coordinates as pivots).

use rayon::prelude::*;

use crate::exactla::field::Field;
use crate::exactla::sparse::{axpy, collect_sparse, SparseMatrix, SparseVec};

const NO_PIVOT: u32 = u32::MAX;

/// Incrementally built echelon basis of a subspace of `F^dim`.
///
/// Stored rows have their leading (smallest) index normalized to one and no two
/// rows share a leading index. Optionally each row carries a tag: the linear
/// combination of inserted generators it equals (modulo untagged generators).
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<SparseVec<F::Elem>>,
    tags: Vec<SparseVec<F::Elem>>,
    pivot_row: Vec<u32>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: &F, dim: usize) -> Self {
        Echelon { field: field.clone(), dim, rows: Vec::new(), tags: Vec::new(), pivot_row: vec![NO_PIVOT; dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    /// Reduces `v` against the basis; returns the residue and the tag
    /// combination `c` with `v = residue + sum c_k row_k`, mapped through tags.
    pub fn reduce_tracked(&self, v: &[(usize, F::Elem)]) -> (SparseVec<F::Elem>, SparseVec<F::Elem>) {
        let f = &self.field;
        let mut v: SparseVec<F::Elem> = v.to_vec();
        let mut tag: SparseVec<F::Elem> = Vec::new();
        let mut start = 0;
        while start < v.len() {
            let (lead, coef) = (v[start].0, v[start].1.clone());
            let r = self.pivot_row[lead];
            if r == NO_PIVOT {
                start += 1;
                continue;
            }
            let r = r as usize;
            let neg = f.neg(&coef);
            let tail = axpy(f, &neg, &self.rows[r], &v[start..]);
            v.truncate(start);
            v.extend(tail);
            if !self.tags[r].is_empty() {
                tag = axpy(f, &coef, &self.tags[r], &tag);
            }
        }
        (v, tag)
    }

    /// Residue of `v` modulo the span, with every pivot coordinate cleared.
    pub fn reduce(&self, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        self.reduce_tracked(v).0
    }

    pub fn contains(&self, v: &[(usize, F::Elem)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v` with the given tag. Returns `true` if the rank grew.
    pub fn insert_tagged(&mut self, v: &[(usize, F::Elem)], tag: SparseVec<F::Elem>) -> bool {
        let f = self.field.clone();
        let (res, combo) = self.reduce_tracked(v);
        // residue = v - sum c_k row_k, so its tag is tag - combo.
        let Some(&(lead, ref lv)) = res.first() else {
            return false;
        };
        let inv = f.inv(lv).expect("nonzero leading value");
        let row: SparseVec<F::Elem> = res.iter().map(|(i, x)| (*i, f.mul(&inv, x))).collect();
        let minus_one = f.from_i64(-1);
        let t = axpy(&f, &minus_one, &combo, &tag);
        let t: SparseVec<F::Elem> = t.iter().map(|(i, x)| (*i, f.mul(&inv, x))).collect();
        self.pivot_row[lead] = self.rows.len() as u32;
        self.rows.push(row);
        self.tags.push(t);
        true
    }

    pub fn insert(&mut self, v: &[(usize, F::Elem)]) -> bool {
        self.insert_tagged(v, Vec::new())
    }

    /// Untagged insertion that only eliminates leading entries. Enough for
    /// rank counting and cheaper than a full reduction.
    pub fn insert_leading(&mut self, v: SparseVec<F::Elem>) -> bool {
        let f = self.field.clone();
        let mut v = v;
        loop {
            let Some((lead, coef)) = v.first().cloned() else {
                return false;
            };
            let r = self.pivot_row[lead];
            if r == NO_PIVOT {
                let inv = f.inv(&coef).expect("nonzero leading value");
                let row: SparseVec<F::Elem> = v.iter().map(|(i, x)| (*i, f.mul(&inv, x))).collect();
                self.pivot_row[lead] = self.rows.len() as u32;
                self.rows.push(row);
                self.tags.push(Vec::new());
                return true;
            }
            let neg = f.neg(&coef);
            v = axpy(&f, &neg, &self.rows[r as usize], &v);
        }
    }

    /// Brings the stored rows to reduced form: each row is zero at every other
    /// row's pivot. Tags are updated consistently.
    pub fn reduce_fully(&mut self) {
        let f = self.field.clone();
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.rows[r][0].0));
        for &r in &order {
            let pivot = self.rows[r][0].0;
            let hits: Vec<(usize, F::Elem)> = self.rows[r]
                .iter()
                .filter(|(i, _)| *i != pivot && self.pivot_row[*i] != NO_PIVOT)
                .cloned()
                .collect();
            for (i, coef) in hits {
                let s = self.pivot_row[i] as usize;
                let neg = f.neg(&coef);
                let row = axpy(&f, &neg, &self.rows[s], &self.rows[r]);
                let tag = axpy(&f, &neg, &self.tags[s], &self.tags[r]);
                self.rows[r] = row;
                self.tags[r] = tag;
            }
        }
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }
}

/// Components of the bipartite incidence graph between vectors and the
/// coordinates they touch.
fn components<E>(vectors: &[SparseVec<E>], dim: usize) -> Vec<Vec<usize>> {
    let n = vectors.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut owner = vec![usize::MAX; dim];
    for (k, v) in vectors.iter().enumerate() {
        for (i, _) in v {
            if owner[*i] == usize::MAX {
                owner[*i] = k;
            } else {
                let a = find(&mut parent, owner[*i]);
                let b = find(&mut parent, k);
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for k in 0..n {
        if vectors[k].is_empty() {
            continue;
        }
        let r = find(&mut parent, k);
        groups.entry(r).or_default().push(k);
    }
    groups.into_values().collect()
}

/// Rank of one connected block of vectors.
fn block_rank<F: Field>(field: &F, vectors: &[&SparseVec<F::Elem>]) -> usize {
    // Relabel coordinates: rarely used ones first, so they become pivots.
    let mut count: std::collections::HashMap<usize, usize> = Default::default();
    for v in vectors {
        for (i, _) in v.iter() {
            *count.entry(*i).or_default() += 1;
        }
    }
    let mut coords: Vec<(usize, usize)> = count.into_iter().map(|(i, c)| (c, i)).collect();
    coords.sort_unstable();
    let relabel: std::collections::HashMap<usize, usize> =
        coords.iter().enumerate().map(|(new, &(_, old))| (old, new)).collect();
    let mut order: Vec<usize> = (0..vectors.len()).collect();
    order.sort_by_key(|&k| (vectors[k].len(), k));
    let mut ech = Echelon::new(field, coords.len());
    let full = coords.len().min(vectors.len());
    for k in order {
        let v = collect_sparse(field, vectors[k].iter().map(|(i, x)| (relabel[i], x.clone())).collect());
        ech.insert_leading(v);
        if ech.rank() == full {
            break;
        }
    }
    ech.rank()
}

/// Rank of `m` over its field. Deterministic; no randomization.
pub fn rank<F: Field>(m: &SparseMatrix<F>) -> usize {
    if m.rows() == 0 || m.cols() == 0 || m.is_zero() {
        return 0;
    }
    // Eliminate along the shorter side.
    let (vectors, dim): (Vec<SparseVec<F::Elem>>, usize) = if m.cols() <= m.rows() {
        (m.columns().to_vec(), m.rows())
    } else {
        (m.row_vectors(), m.cols())
    };
    let comps = components(&vectors, dim);
    let field = m.field().clone();
    comps
        .par_iter()
        .map(|c| {
            let vs: Vec<&SparseVec<F::Elem>> = c.iter().map(|&k| &vectors[k]).collect();
            block_rank(&field, &vs)
        })
        .sum()
}

/// Rank of the span of a list of vectors in `F^dim`.
pub fn span_rank<F: Field>(field: &F, dim: usize, vectors: &[SparseVec<F::Elem>]) -> usize {
    let m = SparseMatrix::from_columns(field, dim, vectors.to_vec()).expect("vectors within dimension");
    rank(&m)
}

/// Reduced row echelon form of the rows of `m` (pivots at smallest column).
fn rref_rows<F: Field>(m: &SparseMatrix<F>) -> Echelon<F> {
    let mut ech = Echelon::new(m.field(), m.cols());
    for row in m.row_vectors() {
        if ech.rank() == m.cols() {
            break;
        }
        ech.insert(&row);
    }
    ech.reduce_fully();
    ech
}

/// A basis of the null space of `m`, one vector per free column in increasing
/// column order (the reduced basis).
pub fn kernel_basis<F: Field>(m: &SparseMatrix<F>) -> Vec<SparseVec<F::Elem>> {
    let f = m.field();
    let ech = rref_rows(m);
    let mut is_pivot = vec![false; m.cols()];
    for p in ech.pivots() {
        is_pivot[p] = true;
    }
    let mut entries: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); m.cols()];
    for row in ech.rows() {
        let p = row[0].0;
        for (c, v) in &row[1..] {
            entries[*c].push((p, f.neg(v)));
        }
    }
    let mut basis = Vec::with_capacity(m.cols() - ech.rank());
    for free in 0..m.cols() {
        if is_pivot[free] {
            continue;
        }
        let mut v = std::mem::take(&mut entries[free]);
        v.push((free, f.one()));
        basis.push(collect_sparse(f, v));
    }
    basis
}

/// Some `x` with `m x = b`, or `None` when `b` is not in the column space.
pub fn solve<F: Field>(m: &SparseMatrix<F>, b: &[(usize, F::Elem)]) -> Option<SparseVec<F::Elem>> {
    let f = m.field();
    let mut ech = Echelon::new(f, m.rows());
    for j in 0..m.cols() {
        ech.insert_tagged(m.column(j), vec![(j, f.one())]);
    }
    let (res, x) = ech.reduce_tracked(b);
    if res.is_empty() {
        Some(x)
    } else {
        None
    }
}

/// Coordinates in a quotient `Z / B` relative to chosen representatives.
///
/// `B` is spanned by untagged generators; representatives are tagged with
/// their index. A vector of `Z` is expressed as a combination of
/// representatives modulo `B`.
#[derive(Clone, Debug)]
pub struct QuotientBasis<F: Field> {
    ech: Echelon<F>,
    reps: Vec<SparseVec<F::Elem>>,
    sub_rank: usize,
}

impl<F: Field> QuotientBasis<F> {
    /// Builds the quotient `span(candidates) + span(sub) / span(sub)`,
    /// choosing as representatives the candidates (in order) that are
    /// independent modulo what came before.
    pub fn new(field: &F, dim: usize, sub: &[SparseVec<F::Elem>], candidates: &[SparseVec<F::Elem>]) -> Self {
        let mut ech = Echelon::new(field, dim);
        for v in sub {
            ech.insert(v);
        }
        let sub_rank = ech.rank();
        let mut reps = Vec::new();
        for c in candidates {
            if ech.insert_tagged(c, vec![(reps.len(), field.one())]) {
                reps.push(c.clone());
            }
        }
        QuotientBasis { ech, reps, sub_rank }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn sub_rank(&self) -> usize {
        self.sub_rank
    }

    pub fn representatives(&self) -> &[SparseVec<F::Elem>] {
        &self.reps
    }

    /// Coordinates of `v` in the representative basis, or `None` if `v` is not
    /// in `span(sub) + span(reps)`.
    pub fn coordinates(&self, v: &[(usize, F::Elem)]) -> Option<SparseVec<F::Elem>> {
        let (res, tag) = self.ech.reduce_tracked(v);
        if res.is_empty() {
            Some(tag)
        } else {
            None
        }
    }

    /// Whether `v` lies in the subspace being quotiented out.
    pub fn is_trivial(&self, v: &[(usize, F::Elem)]) -> bool {
        matches!(self.coordinates(v), Some(t) if t.is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::{Fp, Rationals};

    fn m7(rows: &[Vec<i64>]) -> SparseMatrix<Fp> {
        SparseMatrix::from_i64_rows(&Fp::new(7).unwrap(), rows).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f5 = Fp::new(5).unwrap();
        assert_eq!(rank(&SparseMatrix::zero(&f5, 0, 0)), 0);
        assert_eq!(rank(&SparseMatrix::identity(&f5, 3)), 3);
        // row reduction by hand: second row is twice the first
        assert_eq!(rank(&m7(&[vec![1, 2], vec![2, 4]])), 1);
        let q = Rationals;
        let m = SparseMatrix::from_i64_rows(&q, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn kernel_examples() {
        let f2 = Fp::new(2).unwrap();
        assert!(kernel_basis(&SparseMatrix::identity(&f2, 4)).is_empty());
        assert_eq!(kernel_basis(&SparseMatrix::zero(&f2, 2, 3)).len(), 3);
        let m = SparseMatrix::from_i64_rows(&f2, &[vec![1, 1]]).unwrap();
        assert_eq!(kernel_basis(&m), vec![vec![(0, 1), (1, 1)]]);
    }

    #[test]
    fn solve_examples() {
        let f5 = Fp::new(5).unwrap();
        let id = SparseMatrix::identity(&f5, 3);
        let b = vec![(0, 2), (2, 4)];
        assert_eq!(solve(&id, &b), Some(b.clone()));
        assert_eq!(solve(&SparseMatrix::zero(&f5, 2, 2), &[(1, 1)]), None);
        let m = SparseMatrix::from_i64_rows(&f5, &[vec![1, 0], vec![0, 0]]).unwrap();
        let x = solve(&m, &[(0, 3)]).unwrap();
        assert_eq!(x.iter().find(|e| e.0 == 0).map(|e| e.1), Some(3));
        assert_eq!(m.apply(&x), vec![(0, 3)]);
    }

    #[test]
    fn quotient_coordinates() {
        let f = Fp::new(3).unwrap();
        // Z = F^3, B = span(e0 + e1); representatives chosen from e0, e1, e2.
        let sub = vec![vec![(0, 1), (1, 1)]];
        let cands = vec![vec![(0, 1)], vec![(1, 1)], vec![(2, 1)]];
        let q = QuotientBasis::new(&f, 3, &sub, &cands);
        assert_eq!(q.dim(), 2);
        // e1 = -e0 mod B
        assert_eq!(q.coordinates(&[(1, 1)]), Some(vec![(0, 2)]));
        assert!(q.is_trivial(&[(0, 2), (1, 2)]));
    }

    #[test]
    fn disconnected_blocks_add_up() {
        let m = m7(&[vec![1, 0, 0, 0], vec![0, 0, 1, 1], vec![0, 0, 2, 2], vec![0, 3, 0, 0]]);
        assert_eq!(rank(&m), 3);
        assert_eq!(rank(&m.transpose()), 3);
    }
}
