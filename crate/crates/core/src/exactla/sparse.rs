//! Sparse vectors and column-major sparse matrices over an exact field.

use crate::error::{Error, Result};
use crate::exactla::field::Field;

/// Sparse vector: `(index, value)` pairs with strictly increasing indices and
/// nonzero values.
pub type SparseVec<E> = Vec<(usize, E)>;

/// `a * x + y` for sparse vectors, dropping cancellations.
pub fn axpy<F: Field>(field: &F, a: &F::Elem, x: &[(usize, F::Elem)], y: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            let v = field.mul(a, &x[i].1);
            if !field.is_zero(&v) {
                out.push((x[i].0, v));
            }
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push(y[j].clone());
            j += 1;
        } else {
            let v = field.mul_add(&y[j].1, a, &x[i].1);
            if !field.is_zero(&v) {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale<F: Field>(field: &F, a: &F::Elem, x: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    if field.is_zero(a) {
        return Vec::new();
    }
    x.iter().map(|(i, v)| (*i, field.mul(a, v))).collect()
}

/// Builds a canonical sparse vector from unsorted entries, summing repeats.
pub fn collect_sparse<F: Field>(field: &F, mut entries: Vec<(usize, F::Elem)>) -> SparseVec<F::Elem> {
    entries.sort_by_key(|e| e.0);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(entries.len());
    for (i, v) in entries {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = field.add(&last.1, &v),
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !field.is_zero(v));
    out
}

pub fn to_dense<F: Field>(field: &F, x: &[(usize, F::Elem)], len: usize) -> Vec<F::Elem> {
    let mut d = vec![field.zero(); len];
    for (i, v) in x {
        d[*i] = v.clone();
    }
    d
}

pub fn from_dense<F: Field>(field: &F, d: &[F::Elem]) -> SparseVec<F::Elem> {
    d.iter()
        .enumerate()
        .filter(|(_, v)| !field.is_zero(v))
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

/// Immutable sparse matrix stored as a list of sparse columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zero(field: &F, rows: usize, cols: usize) -> Self {
        SparseMatrix { field: field.clone(), rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let columns = (0..n).map(|i| vec![(i, field.one())]).collect();
        SparseMatrix { field: field.clone(), rows: n, cols: n, columns }
    }

    /// From canonical sparse columns; validates bounds and ordering.
    pub fn from_columns(field: &F, rows: usize, columns: Vec<SparseVec<F::Elem>>) -> Result<Self> {
        for (j, c) in columns.iter().enumerate() {
            for w in c.windows(2) {
                if w[0].0 >= w[1].0 {
                    return Err(Error::Shape(format!("column {j} is not strictly increasing")));
                }
            }
            if let Some((i, _)) = c.iter().find(|(i, v)| *i >= rows || field.is_zero(v)) {
                return Err(Error::Shape(format!("column {j}: bad entry at row {i}")));
            }
        }
        Ok(SparseMatrix { field: field.clone(), rows, cols: columns.len(), columns })
    }

    /// From `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets(field: &F, rows: usize, cols: usize, triplets: Vec<(usize, usize, F::Elem)>) -> Result<Self> {
        let mut per_col: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Shape(format!("entry ({r}, {c}) outside {rows}x{cols}")));
            }
            per_col[c].push((r, v));
        }
        let columns = per_col.into_iter().map(|c| collect_sparse(field, c)).collect();
        Ok(SparseMatrix { field: field.clone(), rows, cols, columns })
    }

    /// From dense row-major data.
    pub fn from_dense_rows(field: &F, rows: &[Vec<F::Elem>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Shape("ragged dense rows".into()));
        }
        let mut trip = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !field.is_zero(v) {
                    trip.push((i, j, v.clone()));
                }
            }
        }
        Self::from_triplets(field, r, c, trip)
    }

    pub fn from_i64_rows(field: &F, rows: &[Vec<i64>]) -> Result<Self> {
        let conv: Vec<Vec<F::Elem>> = rows.iter().map(|r| r.iter().map(|v| field.from_i64(*v)).collect()).collect();
        Self::from_dense_rows(field, &conv)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn column(&self, j: usize) -> &[(usize, F::Elem)] {
        &self.columns[j]
    }
    pub fn columns(&self) -> &[SparseVec<F::Elem>] {
        &self.columns
    }
    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }
    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> F::Elem {
        match self.columns[c].binary_search_by_key(&r, |e| e.0) {
            Ok(k) => self.columns[c][k].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    /// Entries as `(row, col, value)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F::Elem)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<SparseVec<F::Elem>> = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c {
                cols[*i].push((j, v.clone()));
            }
        }
        SparseMatrix { field: self.field.clone(), rows: self.cols, cols: self.rows, columns: cols }
    }

    /// Row-major view: one sparse vector per row.
    pub fn row_vectors(&self) -> Vec<SparseVec<F::Elem>> {
        self.transpose().columns
    }

    /// `self * x` for a sparse vector `x` of length `cols`.
    pub fn apply(&self, x: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let mut entries = Vec::new();
        for (j, a) in x {
            for (i, v) in &self.columns[*j] {
                entries.push((*i, self.field.mul(a, v)));
            }
        }
        collect_sparse(&self.field, entries)
    }

    pub fn apply_dense(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        let sx = from_dense(&self.field, x);
        to_dense(&self.field, &self.apply(&sx), self.rows)
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &SparseMatrix<F>) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let columns = other.columns.iter().map(|c| self.apply(c)).collect();
        Ok(SparseMatrix { field: self.field.clone(), rows: self.rows, cols: other.cols, columns })
    }

    pub fn add(&self, other: &SparseMatrix<F>) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape("cannot add matrices of different shapes".into()));
        }
        let one = self.field.one();
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| axpy(&self.field, &one, a, b))
            .collect();
        Ok(SparseMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, columns })
    }

    pub fn scaled(&self, a: &F::Elem) -> Self {
        let columns = self.columns.iter().map(|c| scale(&self.field, a, c)).collect();
        SparseMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, columns }
    }

    pub fn neg(&self) -> Self {
        self.scaled(&self.field.from_i64(-1))
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<F::Elem>> {
        let mut d = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            d[i][j] = v.clone();
        }
        d
    }

    /// Block-diagonal sum of matrices.
    pub fn block_diagonal(field: &F, blocks: &[SparseMatrix<F>]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut columns = Vec::new();
        let mut roff = 0;
        for b in blocks {
            for c in &b.columns {
                columns.push(c.iter().map(|(i, v)| (i + roff, v.clone())).collect());
            }
            roff += b.rows;
        }
        SparseMatrix { field: field.clone(), rows, cols: columns.len(), columns }
    }
}

/// Accumulates `(row, col, value)` triplets for block assembly.
pub struct TripletBuilder<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, F::Elem)>,
}

impl<F: Field> TripletBuilder<F> {
    pub fn new(field: &F, rows: usize, cols: usize) -> Self {
        TripletBuilder { field: field.clone(), rows, cols, entries: Vec::new() }
    }

    pub fn push(&mut self, r: usize, c: usize, v: F::Elem) {
        if !self.field.is_zero(&v) {
            self.entries.push((r, c, v));
        }
    }

    /// Adds `coef * block` with its top-left corner at `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, coef: &F::Elem, block: &SparseMatrix<F>) {
        for (i, j, v) in block.entries() {
            let w = self.field.mul(coef, v);
            self.entries.push((r0 + i, c0 + j, w));
        }
    }

    pub fn build(self) -> SparseMatrix<F> {
        SparseMatrix::from_triplets(&self.field, self.rows, self.cols, self.entries)
            .expect("triplet builder keeps entries in range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::Fp;

    #[test]
    fn axpy_cancels() {
        let f = Fp::new(5).unwrap();
        let x = vec![(0, 1), (3, 2)];
        let y = vec![(0, 4), (2, 1)];
        assert_eq!(axpy(&f, &1, &x, &y), vec![(2, 1), (3, 2)]);
    }

    #[test]
    fn product_and_transpose() {
        let f = Fp::new(7).unwrap();
        let a = SparseMatrix::from_i64_rows(&f, &[vec![1, 2], vec![0, 3]]).unwrap();
        let b = SparseMatrix::from_i64_rows(&f, &[vec![1, 0], vec![1, 1]]).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.to_dense_rows(), vec![vec![3, 2], vec![3, 3]]);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.get(0, 1), 2);
        assert!(SparseMatrix::from_triplets(&f, 1, 1, vec![(1, 0, 1)]).is_err());
    }
}
