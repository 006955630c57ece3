//! Exact linear algebra over the rationals.

mod matrix;
mod rational;
mod subspace;

pub use matrix::{Matrix, ShapeError};
pub use rational::{q, ParseRationalError, Rational};
pub use subspace::{EchelonBuilder, Subspace};

/// Reduced row echelon form and rank.
pub fn rref(m: &Matrix) -> (Matrix, usize) {
    let (r, rank, _) = rref_with_pivots(m);
    (r, rank)
}

/// Gauss-Jordan elimination: pivot is the first nonzero entry of the column,
/// scanning rows top-down. Returns the RREF, its rank and the pivot columns.
pub fn rref_with_pivots(m: &Matrix) -> (Matrix, usize, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            let data = a.data_mut();
            for j in 0..cols {
                data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a[(r, c)].recip();
        for j in c..cols {
            if !a[(r, j)].is_zero() {
                a[(r, j)] = &a[(r, j)] * &inv;
            }
        }
        let pivot_row: Vec<(usize, Rational)> = (c..cols)
            .filter(|&j| !a[(r, j)].is_zero())
            .map(|j| (j, a[(r, j)].clone()))
            .collect();
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for (j, v) in &pivot_row {
                a[(i, *j)] = &a[(i, *j)] - &(&f * v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, r, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).1
}

/// Null space `{v : m v = 0}` as a canonical subspace of `F^cols`.
pub fn kernel(m: &Matrix) -> Subspace {
    let cols = m.cols();
    let (r, _, pivots) = rref_with_pivots(m);
    kernel_from_rref(&r, &pivots, cols)
}

pub(crate) fn kernel_from_rref(r: &Matrix, pivots: &[usize], cols: usize) -> Subspace {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (row, &p) in pivots.iter().enumerate() {
            let x = &r[(row, free)];
            if !x.is_zero() {
                v[p] = -x;
            }
        }
        basis.push(v);
    }
    Subspace::from_vectors(cols, basis)
}

/// Coefficients `c` with `sum c_i vectors[i] = target`, or `None` when the
/// target is outside the span. Free coefficients are set to zero.
pub fn solve_span(vectors: &[Matrix], target: &Matrix) -> Option<Vec<Rational>> {
    let len = target.rows() * target.cols();
    for v in vectors {
        if v.shape() != target.shape() {
            return None;
        }
    }
    let k = vectors.len();
    let mut sys = Matrix::zeros(len, k + 1);
    for (j, v) in vectors.iter().enumerate() {
        for (i, x) in v.as_slice().iter().enumerate() {
            if !x.is_zero() {
                sys[(i, j)] = x.clone();
            }
        }
    }
    for (i, x) in target.as_slice().iter().enumerate() {
        sys[(i, k)] = x.clone();
    }
    let (r, _, pivots) = rref_with_pivots(&sys);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut coeffs = vec![Rational::zero(); k];
    for (row, &p) in pivots.iter().enumerate() {
        coeffs[p] = r[(row, k)].clone();
    }
    Some(coeffs)
}
