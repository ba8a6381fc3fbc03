//! Exact linear algebra over ℚ and odd prime fields.
//!
//! Every subspace is stored in canonical reduced row-echelon form, so
//! subspace equality is structural equality. There is no floating point
//! anywhere in this crate.

mod linear_map;
mod quotient;
mod scalar;
mod subspace;
mod vector;

pub use linear_map::LinearMap;
pub use quotient::{quotient_space, QuotientSpace};
pub use scalar::{Field, Scalar};
pub use subspace::{Echelon, Subspace};
pub use vector::Vector;

use crate::error::Result;

/// Canonical span of `vectors` in `field^ambient_dim`.
pub fn span(field: Field, ambient_dim: usize, vectors: &[Vector]) -> Result<Subspace> {
    Subspace::span(field, ambient_dim, vectors)
}

pub fn subspace_sum(u: &Subspace, w: &Subspace) -> Result<Subspace> {
    u.sum(w)
}

pub fn subspace_intersect(u: &Subspace, w: &Subspace) -> Result<Subspace> {
    u.intersect(w)
}

pub fn kernel_image(map: &LinearMap) -> (Subspace, Subspace) {
    map.kernel_image()
}
