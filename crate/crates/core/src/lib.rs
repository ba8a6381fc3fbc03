//! Exact linear algebra and n-ary Leibniz/Lie algebras: commutators, higher
//! extensions, centrality and Hopf-type homology.

pub mod error;
pub mod exactla;
pub mod ext;
pub mod homology;
pub mod nalg;

pub use error::{Error, Result};
