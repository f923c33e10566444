use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::sparse::SparseVec;
use crate::exactla::{rank, Field, QuotientBasis, SparseMatrix};
use crate::gs::double::GSDoubleComplex;

/// One page of the column-filtration spectral sequence.
#[derive(Clone, Debug)]
pub struct SSPage<F: Field> {
    pub r: usize,
    /// `dims[p][q]` for `p <= p_top`, `q <= q_max`.
    pub dims: Vec<Vec<usize>>,
    /// `d_0: E^{p,q} -> E^{p,q+1}` on page 0 and `d_1: E^{p,q} -> E^{p+1,q}`
    /// on page 1; empty on page 2.
    pub differentials: Vec<Vec<SparseMatrix<F>>>,
    /// Vertical cocycles representing the basis of `E_1^{p,q}`; page 1 only.
    pub representatives: Vec<Vec<Vec<SparseVec<F::Elem>>>>,
}

impl<F: Field> SSPage<F> {
    /// `dim E_r^{p,q}`, zero outside the computed range.
    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.dims.get(p).and_then(|c| c.get(q)).copied().unwrap_or(0)
    }

    pub fn columns(&self) -> usize {
        self.dims.len()
    }

    pub fn rows(&self) -> usize {
        self.dims.first().map(|c| c.len()).unwrap_or(0)
    }

    /// Columns holding a nonzero entry.
    pub fn support(&self) -> Vec<usize> {
        (0..self.columns()).filter(|&p| self.dims[p].iter().any(|&d| d > 0)).collect()
    }

    /// `{"r": r, "cells": {"p,q": dim}}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut cells = serde_json::Map::new();
        for (p, col) in self.dims.iter().enumerate() {
            for (q, d) in col.iter().enumerate() {
                cells.insert(format!("{p},{q}"), (*d).into());
            }
        }
        serde_json::json!({ "r": self.r, "cells": cells })
    }

    /// Aligned text table with `q` rows from the top down and `p` columns.
    pub fn to_table(&self) -> String {
        let mut out = format!("E{}\n", self.r);
        out.push_str("  q\\p");
        for p in 0..self.columns() {
            out.push_str(&format!("{p:>6}"));
        }
        out.push('\n');
        for q in (0..self.rows()).rev() {
            out.push_str(&format!("{q:>5}"));
            for p in 0..self.columns() {
                out.push_str(&format!("{:>6}", self.dim(p, q)));
            }
            out.push('\n');
        }
        out
    }
}

/// Vertical cohomology of column `p` in degree `q`, as the concatenation of
/// the per-chain Hochschild bases.
struct ColumnBasis<'a, F: Field> {
    offsets: &'a [usize],
    parts: Vec<&'a QuotientBasis<F>>,
    starts: Vec<usize>,
}

impl<F: Field> ColumnBasis<'_, F> {
    fn dim(&self) -> usize {
        *self.starts.last().unwrap()
    }

    fn representatives(&self) -> Vec<SparseVec<F::Elem>> {
        let mut reps = Vec::with_capacity(self.dim());
        for (k, qb) in self.parts.iter().enumerate() {
            for z in qb.representatives() {
                reps.push(z.iter().map(|(i, v)| (i + self.offsets[k], v.clone())).collect());
            }
        }
        reps
    }

    fn coordinates(&self, v: &[(usize, F::Elem)]) -> Option<SparseVec<F::Elem>> {
        let mut out = Vec::new();
        let mut rest = v;
        for (k, qb) in self.parts.iter().enumerate() {
            let end = self.offsets[k + 1];
            let split = rest.partition_point(|(i, _)| *i < end);
            let (head, tail) = rest.split_at(split);
            rest = tail;
            if head.is_empty() {
                continue;
            }
            let local: SparseVec<F::Elem> = head.iter().map(|(i, x)| (i - self.offsets[k], x.clone())).collect();
            let c = qb.coordinates(&local)?;
            out.extend(c.into_iter().map(|(j, x)| (j + self.starts[k], x)));
        }
        Some(out)
    }
}

/// Pages `E_0`, `E_1` and `E_2` of the spectral sequence of the column
/// filtration.
pub fn ss_pages<F: Field>(d: &GSDoubleComplex<F>) -> Result<(SSPage<F>, SSPage<F>, SSPage<F>)> {
    let p_top = d.p_top();
    let q_max = d.q_max();
    let nerve = d.nerve();
    let field = d.field().clone();

    let e0 = SSPage {
        r: 0,
        dims: (0..=p_top).map(|p| (0..=q_max).map(|q| d.cell_dim(p, q)).collect()).collect(),
        differentials: (0..=p_top).map(|p| (0..q_max).map(|q| d.vertical(p, q).unwrap().clone()).collect()).collect(),
        representatives: Vec::new(),
    };

    // Hochschild cohomology bases per base morphism and degree.
    let count = (0..=p_top)
        .flat_map(|p| (0..nerve.count(p)).map(move |k| (p, k)))
        .map(|(p, k)| nerve.composite(p, k))
        .max()
        .map(|m| m + 1)
        .unwrap_or(0);
    let bases: Vec<Vec<QuotientBasis<F>>> = (0..count)
        .into_par_iter()
        .map(|h| (0..=q_max).map(|q| d.block(h).cohomology_basis(q)).collect())
        .collect();
    let column = |p: usize, q: usize| -> ColumnBasis<'_, F> {
        let parts: Vec<&QuotientBasis<F>> = (0..nerve.count(p)).map(|k| &bases[nerve.composite(p, k)][q]).collect();
        let mut starts = vec![0];
        for b in &parts {
            starts.push(starts.last().unwrap() + b.dim());
        }
        ColumnBasis { offsets: d.offsets(p, q), parts, starts }
    };

    let mut dims1 = vec![vec![0; q_max + 1]; p_top + 1];
    let mut reps1 = vec![vec![Vec::new(); q_max + 1]; p_top + 1];
    for p in 0..=p_top {
        for q in 0..=q_max {
            let col = column(p, q);
            dims1[p][q] = col.dim();
            reps1[p][q] = col.representatives();
        }
    }
    let d1: Vec<Vec<SparseMatrix<F>>> = (0..p_top)
        .map(|p| {
            (0..=q_max)
                .into_par_iter()
                .map(|q| {
                    let h = d.horizontal(p, q).expect("column below the top");
                    let target = column(p + 1, q);
                    let cols = reps1[p][q]
                        .iter()
                        .map(|z| {
                            target
                                .coordinates(&h.apply(z))
                                .ok_or_else(|| Error::NotACocycle("d_simp of a vertical cocycle".into()))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    SparseMatrix::from_columns(&field, target.dim(), cols)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    for p in 0..p_top.saturating_sub(1) {
        for q in 0..=q_max {
            if !d1[p + 1][q].mul(&d1[p][q])?.is_zero() {
                return Err(Error::InvalidComplex(format!("d_1 squared is nonzero at ({p},{q})")));
            }
        }
    }
    let ranks: Vec<Vec<usize>> = d1.iter().map(|c| c.par_iter().map(rank).collect()).collect();
    let dims2: Vec<Vec<usize>> = (0..=p_top)
        .map(|p| {
            (0..=q_max)
                .map(|q| {
                    let out = if p < p_top { ranks[p][q] } else { 0 };
                    let inc = if p > 0 { ranks[p - 1][q] } else { 0 };
                    dims1[p][q] - out - inc
                })
                .collect()
        })
        .collect();
    let e1 = SSPage { r: 1, dims: dims1, differentials: d1, representatives: reps1 };
    let e2 = SSPage { r: 2, dims: dims2, differentials: Vec::new(), representatives: Vec::new() };
    Ok((e0, e1, e2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyRow {
    pub degree: usize,
    pub total: usize,
    pub e2_sum: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    /// `true` when `E_2` lives in at most two adjacent columns, so that it
    /// equals `E_∞` and the dimensions must sum exactly.
    pub equality: bool,
    pub rows: Vec<ConsistencyRow>,
    /// Set when higher differentials could act.
    pub higher_differentials_possible: bool,
}

/// Compares `dim H^n(Tot)` with `Σ_{p+q=n} dim E_2^{p,q}`.
pub fn ss_consistency<F: Field>(e2: &SSPage<F>, gs_dims: &[usize]) -> Result<ConsistencyReport> {
    let support = e2.support();
    let equality = match support.as_slice() {
        [] | [_] => true,
        [a, b] => *b == a + 1,
        _ => false,
    };
    let rows: Vec<ConsistencyRow> = gs_dims
        .iter()
        .enumerate()
        .map(|(n, &total)| {
            let e2_sum: usize = (0..=n).map(|p| e2.dim(p, n - p)).sum();
            let ok = if equality { total == e2_sum } else { total <= e2_sum };
            ConsistencyRow { degree: n, total, e2_sum, ok }
        })
        .collect();
    if let Some(bad) = rows.iter().find(|r| !r.ok) {
        return Err(Error::ConsistencyViolation(format!(
            "degree {}: total {} vs E2 sum {}",
            bad.degree, bad.total, bad.e2_sum
        )));
    }
    Ok(ConsistencyReport { equality, rows, higher_differentials_possible: !equality })
}
