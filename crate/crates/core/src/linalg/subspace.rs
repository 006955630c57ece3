use super::{kernel, Matrix, Rational};

/// A subspace of `F^n` stored as its canonical RREF basis.
///
/// Two subspaces of the same ambient space are equal iff their bases are
/// identical matrices, so the derived `PartialEq` is subspace equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn from_vectors<I>(ambient_dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Rational>>,
    {
        let mut b = EchelonBuilder::new(ambient_dim);
        for v in vectors {
            b.insert_dense(v);
        }
        b.into_subspace()
    }

    /// Span of the rows of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        Self::from_vectors(m.cols(), m.to_rows())
    }

    /// Span of the columns of `m`.
    pub fn column_space(m: &Matrix) -> Self {
        Self::row_space(&m.transpose())
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.to_rows()
    }

    /// Coordinates of `v` with respect to the basis rows, if `v` lies in the
    /// subspace. For an RREF basis these are the entries of `v` at the pivots.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension mismatch");
        let coeffs: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in coeffs.iter().zip(0..self.dim()) {
            if c.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row(row).iter().enumerate() {
                if !b.is_zero() {
                    residual[j] -= &(c * b);
                }
            }
        }
        residual.iter().all(Rational::is_zero).then_some(coeffs)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut b = EchelonBuilder::new(self.ambient_dim);
        for v in self.vectors().into_iter().chain(other.vectors()) {
            b.insert_dense(v);
        }
        b.into_subspace()
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient_dim);
        }
        // Solve sum a_i u_i = sum b_j w_j, i.e. the kernel of [U^t | -W^t].
        let ut = self.basis.transpose();
        let wt = other.basis.scale(&-Rational::one()).transpose();
        let sys = Matrix::hstack(&[ut, wt]).expect("same ambient");
        let ker = kernel(&sys);
        let vecs = ker.vectors().into_iter().map(|k| {
            let a = &k[..self.dim()];
            let mut v = vec![Rational::zero(); self.ambient_dim];
            for (c, row) in a.iter().zip(0..self.dim()) {
                if c.is_zero() {
                    continue;
                }
                for (j, x) in self.basis.row(row).iter().enumerate() {
                    if !x.is_zero() {
                        v[j] += &(c * x);
                    }
                }
            }
            v
        });
        Subspace::from_vectors(self.ambient_dim, vecs)
    }
}

/// Incremental Gauss-Jordan elimination.
///
/// Rows are kept in fully reduced form at all times, so the final basis is
/// the canonical RREF of everything inserted, independent of insertion order.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    cols: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl EchelonBuilder {
    pub fn new(cols: usize) -> Self {
        EchelonBuilder {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Insert a sparse row given as `(column, value)` pairs (duplicates add).
    pub fn insert_sparse(&mut self, entries: &[(usize, Rational)]) -> bool {
        let mut row = vec![Rational::zero(); self.cols];
        for (j, x) in entries {
            row[*j] += x;
        }
        self.insert_dense(row)
    }

    /// Insert a row; returns whether the rank grew.
    pub fn insert_dense(&mut self, mut row: Vec<Rational>) -> bool {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        if self.is_full() {
            return false;
        }
        for (prow, &p) in self.rows.iter().zip(&self.pivots) {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(prow) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        let Some(lead) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[lead].recip();
        for x in row.iter_mut().skip(lead) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for prow in &mut self.rows {
            if prow[lead].is_zero() {
                continue;
            }
            let f = prow[lead].clone();
            for (x, y) in prow.iter_mut().zip(&row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        self.rows.push(row);
        self.pivots.push(lead);
        true
    }

    pub fn into_subspace(self) -> Subspace {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let pivots: Vec<usize> = order.iter().map(|&i| self.pivots[i]).collect();
        let mut rows = self.rows;
        let mut data = Vec::with_capacity(order.len() * self.cols);
        for &i in &order {
            data.append(&mut rows[i]);
        }
        Subspace {
            ambient_dim: self.cols,
            basis: Matrix::from_vec(order.len(), self.cols, data),
            pivots,
        }
    }
}
