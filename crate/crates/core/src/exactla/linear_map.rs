use std::fmt;

use super::scalar::{Field, Scalar};
use super::subspace::{Echelon, Subspace};
use super::vector::Vector;
use crate::error::{Error, Result};

/// A matrix with `rows = target_dim` and `cols = source_dim`; column `j` is the
/// image of source basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Vector>,
}

impl LinearMap {
    pub fn from_rows(field: Field, rows: usize, cols: usize, data: Vec<Vector>) -> Result<Self> {
        if data.len() != rows {
            return Err(Error::DimensionMismatch { expected: rows, found: data.len() });
        }
        for r in &data {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            if let Some(x) = r.iter().find(|x| x.field() != field) {
                return Err(Error::FieldMismatch(field.to_string(), x.field().to_string()));
            }
        }
        Ok(LinearMap { field, rows, cols, data })
    }

    /// Builds the map whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: Field, target_dim: usize, columns: &[Vector]) -> Result<Self> {
        let cols = columns.len();
        let mut data = vec![Vector::zeros(field, cols); target_dim];
        for (j, c) in columns.iter().enumerate() {
            if c.len() != target_dim {
                return Err(Error::DimensionMismatch { expected: target_dim, found: c.len() });
            }
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    data[i].set(j, x.clone());
                }
            }
        }
        LinearMap::from_rows(field, target_dim, cols, data)
    }

    pub fn zero(field: Field, target_dim: usize, source_dim: usize) -> Self {
        LinearMap {
            field,
            rows: target_dim,
            cols: source_dim,
            data: vec![Vector::zeros(field, source_dim); target_dim],
        }
    }

    pub fn identity(field: Field, dim: usize) -> Self {
        LinearMap { field, rows: dim, cols: dim, data: (0..dim).map(|i| Vector::unit(field, dim, i)).collect() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn target_dim(&self) -> usize {
        self.rows
    }

    pub fn source_dim(&self) -> usize {
        self.cols
    }

    pub fn row_vectors(&self) -> &[Vector] {
        &self.data
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector::new(self.data.iter().map(|r| r[j].clone()).collect())
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        assert_eq!(v.len(), self.cols, "linear map applied to vector of wrong length");
        let support = v.support();
        Vector::new(
            self.data
                .iter()
                .map(|row| {
                    let mut acc = self.field.zero();
                    for &j in &support {
                        if !row[j].is_zero() {
                            acc = &acc + &(&row[j] * &v[j]);
                        }
                    }
                    acc
                })
                .collect(),
        )
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        if inner.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: inner.rows });
        }
        let columns: Vec<Vector> = (0..inner.cols).map(|j| self.apply(&inner.column(j))).collect();
        LinearMap::from_columns(self.field, self.rows, &columns)
    }

    pub fn transpose(&self) -> LinearMap {
        LinearMap::from_columns(self.field, self.cols, &self.data).expect("shape is consistent")
    }

    /// Image of the map in target coordinates.
    pub fn image(&self) -> Subspace {
        let mut e = Echelon::new(self.field, self.rows);
        for j in 0..self.cols {
            e.insert(self.column(j));
            if e.rank() == self.rows {
                break;
            }
        }
        e.finish()
    }

    /// Kernel of the map in source coordinates.
    pub fn kernel(&self) -> Subspace {
        let mut e = Echelon::new(self.field, self.cols);
        for r in &self.data {
            e.insert(r.clone());
        }
        let row_space = e.finish();
        // Null space basis from the RREF: one vector per free column.
        let mut basis = Vec::new();
        for free in row_space.non_pivots() {
            let mut v = Vector::unit(self.field, self.cols, free);
            for (row, &p) in row_space.basis().iter().zip(row_space.pivots()) {
                v.set(p, -&row[free]);
            }
            basis.push(v);
        }
        Subspace::span(self.field, self.cols, &basis).expect("kernel vectors have source length")
    }

    pub fn kernel_image(&self) -> (Subspace, Subspace) {
        (self.kernel(), self.image())
    }

    pub fn rank(&self) -> usize {
        self.image().rank()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    /// Two-sided inverse by reducing `[A | I]`.
    pub fn inverse(&self) -> Option<LinearMap> {
        if self.rows != self.cols {
            return None;
        }
        let d = self.rows;
        let mut e = Echelon::new(self.field, 2 * d);
        for (i, r) in self.data.iter().enumerate() {
            e.insert(r.concat(&Vector::unit(self.field, d, i)));
        }
        let reduced = e.finish();
        if reduced.pivots().iter().copied().ne(0..d) {
            return None;
        }
        let rows = reduced.basis().iter().map(|r| Vector::new(r[d..].to_vec())).collect();
        Some(LinearMap { field: self.field, rows: d, cols: d, data: rows })
    }
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.data {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
