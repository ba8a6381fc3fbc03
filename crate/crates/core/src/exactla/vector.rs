use std::ops::Deref;

use super::scalar::{Field, Scalar};

/// A coordinate vector over a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn new(entries: Vec<Scalar>) -> Self {
        Vector(entries)
    }

    pub fn zeros(field: Field, len: usize) -> Self {
        Vector(vec![field.zero(); len])
    }

    pub fn unit(field: Field, len: usize, index: usize) -> Self {
        let mut v = Self::zeros(field, len);
        v.0[index] = field.one();
        v
    }

    pub fn from_i64s(field: Field, values: &[i64]) -> Self {
        Vector(values.iter().map(|&x| field.from_i64(x)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    /// Index of the first nonzero entry.
    pub fn leading_index(&self) -> Option<usize> {
        self.0.iter().position(|x| !x.is_zero())
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.0
    }

    pub fn set(&mut self, index: usize, value: Scalar) {
        self.0[index] = value;
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &Vector) {
        debug_assert_eq!(self.len(), other.len());
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if b.is_zero() {
                continue;
            }
            let term = if unit { b.clone() } else { c * b };
            *a = if a.is_zero() { term } else { &*a + &term };
        }
    }

    pub fn scale(&mut self, c: &Scalar) {
        for a in self.0.iter_mut() {
            if !a.is_zero() {
                *a = &*a * c;
            }
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Vector {
        let mut v = self.clone();
        v.scale(c);
        v
    }

    pub fn plus(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn minus(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Concatenation `(self, other)`, used for direct products.
    pub fn concat(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// Indices of nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
    }
}

impl Deref for Vector {
    type Target = [Scalar];
    fn deref(&self) -> &[Scalar] {
        &self.0
    }
}

impl From<Vec<Scalar>> for Vector {
    fn from(v: Vec<Scalar>) -> Self {
        Vector(v)
    }
}
