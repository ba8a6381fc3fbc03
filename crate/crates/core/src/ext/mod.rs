//! Higher extensions of n-ary algebras and their centrality.

mod centrality;
mod cube;

pub use centrality::{
    central_obstruction, central_obstruction_overlapping, centralize1, is_central, is_central_oracle, GaloisStructure,
    Obstruction, ObstructionTerm,
};
pub use cube::{cube_from_ideals, is_extension, mask_label, Cube, ExtensionReport, Mask};
