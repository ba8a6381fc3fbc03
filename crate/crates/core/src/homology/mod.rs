//! Hopf-type formulas and universal central extensions.

mod hopf;
mod uce;

pub use hopf::{hopf_evaluate, is_perfect, truncated_free_kind, HopfReport};
pub use uce::{
    compare_uce, h2_via_uce, uce, uce_leibniz, uce_lie, NamedCheck, UceComparison, UceInvariants, UceKind, UceResult,
};
