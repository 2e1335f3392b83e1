//! Exact Gauss–Jordan elimination over [`Cyclotomic`].

use crate::cyclo::Cyclotomic;
use crate::{Error, Result};

pub type Matrix = Vec<Vec<Cyclotomic>>;

/// Reduces `rows` to reduced row echelon form in place, pivoting only in the
/// first `pivot_cols` columns. Returns the pivot column of each leading row.
pub fn row_reduce_partial(rows: &mut Matrix, pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inverse().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn row_reduce(rows: &mut Matrix) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    row_reduce_partial(rows, ncols)
}

pub fn rank(rows: &Matrix) -> usize {
    let mut m = rows.clone();
    row_reduce(&mut m).len()
}

/// A basis of `{x : A x = 0}` for `A` with `ncols` columns.
pub fn nullspace(rows: &Matrix, ncols: usize) -> Vec<Vec<Cyclotomic>> {
    let mut m: Matrix = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let pivots = row_reduce_partial(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Cyclotomic::zero(); ncols];
            v[f] = Cyclotomic::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                if !row[f].is_zero() {
                    v[pc] = -&row[f];
                }
            }
            v
        })
        .collect()
}

/// Solves `A c = x` for a matrix `A` with linearly independent columns.
///
/// The elimination is done once; each solve is a matrix–vector product
/// followed by a consistency check on the non-pivot rows.
#[derive(Clone, Debug)]
pub struct ColumnSpan {
    nrows: usize,
    ncols: usize,
    /// Row operations `T` with `T A` in reduced echelon form.
    transform: Matrix,
}

impl ColumnSpan {
    pub fn new(columns: &[Vec<Cyclotomic>]) -> Result<Self> {
        let ncols = columns.len();
        let nrows = columns.first().map_or(0, Vec::len);
        let mut aug: Matrix = (0..nrows)
            .map(|i| {
                let mut row: Vec<Cyclotomic> = columns.iter().map(|c| c[i].clone()).collect();
                row.extend((0..nrows).map(|j| if i == j { Cyclotomic::one() } else { Cyclotomic::zero() }));
                row
            })
            .collect();
        let pivots = row_reduce_partial(&mut aug, ncols);
        if pivots.len() != ncols {
            return Err(Error::Precondition(format!(
                "columns are linearly dependent (rank {} of {ncols})",
                pivots.len()
            )));
        }
        let transform = aug.into_iter().map(|row| row[ncols..].to_vec()).collect();
        Ok(ColumnSpan { nrows, ncols, transform })
    }

    pub fn dimension(&self) -> usize {
        self.ncols
    }

    /// Coordinates of `x` in the column basis, or `None` if `x` is outside
    /// the span.
    pub fn solve(&self, x: &[Cyclotomic]) -> Option<Vec<Cyclotomic>> {
        assert_eq!(x.len(), self.nrows, "vector length");
        let nz: Vec<(usize, &Cyclotomic)> = x.iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        let mut y = Vec::with_capacity(self.nrows);
        for row in &self.transform {
            let mut acc = Cyclotomic::zero();
            for &(j, v) in &nz {
                if !row[j].is_zero() {
                    acc += &(&row[j] * v);
                }
            }
            y.push(acc);
        }
        if y[self.ncols..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        y.truncate(self.ncols);
        Some(y)
    }
}
