use super::linear_map::LinearMap;
use super::subspace::Subspace;
use super::vector::Vector;
use crate::error::{Error, Result};

/// `field^ambient / divisor` with a deterministic coordinate system: the
/// quotient basis is indexed by the non-pivot coordinates of the divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpace {
    divisor: Subspace,
    representatives: Vec<usize>,
    projection: LinearMap,
    section: LinearMap,
}

impl QuotientSpace {
    pub fn new(ambient_dim: usize, divisor: &Subspace) -> Result<Self> {
        if divisor.ambient_dim() != ambient_dim {
            return Err(Error::DimensionMismatch { expected: ambient_dim, found: divisor.ambient_dim() });
        }
        let field = divisor.field();
        let representatives = divisor.non_pivots();
        let q = representatives.len();
        let section_cols: Vec<Vector> = representatives.iter().map(|&c| Vector::unit(field, ambient_dim, c)).collect();
        let section = LinearMap::from_columns(field, ambient_dim, &section_cols)?;
        let proj_cols: Vec<Vector> = (0..ambient_dim)
            .map(|j| {
                let r = divisor.reduce(&Vector::unit(field, ambient_dim, j));
                Vector::new(representatives.iter().map(|&c| r[c].clone()).collect())
            })
            .collect();
        let projection = LinearMap::from_columns(field, q, &proj_cols)?;
        Ok(QuotientSpace { divisor: divisor.clone(), representatives, projection, section })
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.divisor.ambient_dim()
    }

    pub fn divisor(&self) -> &Subspace {
        &self.divisor
    }

    /// Ambient coordinates used as quotient basis representatives.
    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn projection(&self) -> &LinearMap {
        &self.projection
    }

    pub fn section(&self) -> &LinearMap {
        &self.section
    }

    /// Class of `v` in quotient coordinates.
    pub fn project(&self, v: &Vector) -> Vector {
        let r = self.divisor.reduce(v);
        Vector::new(self.representatives.iter().map(|&c| r[c].clone()).collect())
    }

    pub fn lift(&self, v: &Vector) -> Vector {
        self.section.apply(v)
    }
}

/// Quotient of `field^ambient_dim` by `sub`.
pub fn quotient_space(ambient_dim: usize, sub: &Subspace) -> Result<QuotientSpace> {
    QuotientSpace::new(ambient_dim, sub)
}
