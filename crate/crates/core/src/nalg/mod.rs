//! n-ary algebras given by structure constants, with ideals, commutators,
//! quotients and the standard functors.

mod algebra;
mod builders;
pub mod catalog;
mod commutator;
mod functors;
mod ideal;
mod morphism;
mod permutation;

pub use algebra::{AxiomReport, Counterexample, Identity, NaryAlgebra, Tuples};
pub use builders::{free_nilpotent2, FreeKind};
pub use commutator::{commutator, full_commutator, relative_commutator_adjacent, CommutatorKind};
pub use functors::{abelianization, daletskii, liesation};
pub use ideal::{enumerate_ideals, ideal_closure, is_ideal, Ideal};
pub(crate) use morphism::quotient_by;
pub use morphism::{direct_product, kernel_ideal, kernel_pair, quotient_algebra, subalgebra, AlgebraMorphism};
pub use permutation::Permutation;
