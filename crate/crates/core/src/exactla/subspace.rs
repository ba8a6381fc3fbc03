//! Subspaces of a coordinate space stored by their canonical reduced row-echelon basis.

use super::scalar::{Field, Scalar};
use super::vector::Vector;
use crate::error::{Error, Result};

/// Incremental reduced row-echelon accumulator.
///
/// Rows are kept sorted by pivot column, every pivot is 1, and every pivot
/// column is zero in all other rows. Inserting a vector keeps this invariant.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    width: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: Field, width: usize) -> Self {
        Echelon { field, width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_subspace(s: &Subspace) -> Self {
        Echelon { field: s.field, width: s.ambient_dim, rows: s.rows.clone(), pivots: s.pivots.clone() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduces `v` in place against the current rows.
    pub fn reduce_in_place(&self, v: &mut Vector) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = -&v[p];
                v.add_scaled(&c, row);
            }
        }
    }

    pub fn contains(&self, v: &Vector) -> bool {
        let mut w = v.clone();
        self.reduce_in_place(&mut w);
        w.is_zero()
    }

    /// Adds `v` to the span. Returns `true` if the rank grew.
    pub fn insert(&mut self, mut v: Vector) -> bool {
        assert_eq!(v.len(), self.width, "echelon width mismatch");
        self.reduce_in_place(&mut v);
        let Some(p) = v.leading_index() else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        v.scale(&inv);
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = -&row[p];
                row.add_scaled(&c, &v);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, v);
        true
    }

    pub fn finish(self) -> Subspace {
        Subspace { field: self.field, ambient_dim: self.width, rows: self.rows, pivots: self.pivots }
    }
}

/// A subspace of `field^ambient_dim`. Two values are equal iff they denote the same subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Self {
        Echelon::new(field, ambient_dim).finish()
    }

    pub fn full(field: Field, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            rows: (0..ambient_dim).map(|i| Vector::unit(field, ambient_dim, i)).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Canonical span of `vectors` inside `field^ambient_dim`.
    pub fn span<'a, I>(field: Field, ambient_dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Vector>,
    {
        let mut e = Echelon::new(field, ambient_dim);
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: v.len() });
            }
            if let Some(x) = v.iter().find(|x| x.field() != field) {
                return Err(Error::FieldMismatch(field.to_string(), x.field().to_string()));
            }
            e.insert(v.clone());
        }
        Ok(e.finish())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient_dim
    }

    /// The canonical RREF basis.
    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates that are not pivots, in increasing order.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.ambient_dim - self.rank());
        let mut it = self.pivots.iter().peekable();
        for c in 0..self.ambient_dim {
            if it.peek() == Some(&&c) {
                it.next();
            } else {
                out.push(c);
            }
        }
        out
    }

    /// `v` minus its component along the pivot columns.
    pub fn reduce(&self, v: &Vector) -> Vector {
        let mut w = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let c = -&w[p];
                w.add_scaled(&c, row);
            }
        }
        w
    }

    pub fn contains(&self, v: &Vector) -> bool {
        v.len() == self.ambient_dim && self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    /// These are simply the entries of `v` at the pivot columns.
    pub fn coordinates(&self, v: &Vector) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(Vector::new(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    /// Inverse of [`Subspace::coordinates`].
    pub fn combine(&self, coords: &[Scalar]) -> Vector {
        let mut v = Vector::zeros(self.field, self.ambient_dim);
        for (c, row) in coords.iter().zip(&self.rows) {
            v.add_scaled(c, row);
        }
        v
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: other.ambient_dim });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        if other.rank() > self.rank() {
            return other.sum(self);
        }
        let mut e = Echelon::from_subspace(self);
        for v in &other.rows {
            e.insert(v.clone());
        }
        Ok(e.finish())
    }

    /// Intersection by the Zassenhaus trick: row-reduce `[u | u]` stacked on
    /// `[w | 0]`; the rows whose left half vanishes span `U ∩ W` on the right.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() || self == other {
            return Ok(self.clone());
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field, self.ambient_dim));
        }
        let d = self.ambient_dim;
        let zero = Vector::zeros(self.field, d);
        let mut e = Echelon::new(self.field, 2 * d);
        for u in &self.rows {
            e.insert(u.concat(u));
        }
        for w in &other.rows {
            e.insert(w.concat(&zero));
        }
        let right: Vec<Vector> = e
            .rows
            .iter()
            .zip(&e.pivots)
            .filter(|(_, &p)| p >= d)
            .map(|(row, _)| Vector::new(row[d..].to_vec()))
            .collect();
        Subspace::span(self.field, d, &right)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.rows.iter().all(|v| other.contains(v))
    }

    /// Vectors of `self` that extend a basis of `inner` to a basis of `self`,
    /// chosen greedily from the RREF basis of `self`.
    pub fn complement_basis(&self, inner: &Subspace) -> Vec<Vector> {
        let mut e = Echelon::from_subspace(inner);
        self.rows.iter().filter(|v| e.insert((*v).clone())).cloned().collect()
    }
}
