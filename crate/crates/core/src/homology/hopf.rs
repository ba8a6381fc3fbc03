use crate::error::{Error, Result};
use crate::exactla::{Subspace, Vector};
use crate::ext::{central_obstruction, Cube, GaloisStructure};
use crate::nalg::{free_nilpotent2, full_commutator, FreeKind, NaryAlgebra};

/// `(C(A_∅,…,A_∅) ∩ ∩_i K_i) / obstruction` for a cube with initial node `A_∅`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfReport {
    pub numerator: Subspace,
    pub denominator: Subspace,
    pub h_dim: usize,
    /// Vectors of the numerator completing a basis of the denominator.
    pub h_basis: Vec<Vector>,
}

/// Evaluates the Hopf-type quotient on any extension. It computes homology
/// only when the cube is a presentation; that is not checked here.
pub fn hopf_evaluate(cube: &Cube, g: GaloisStructure) -> Result<HopfReport> {
    let obstruction = central_obstruction(cube, g)?;
    let base = cube.base();
    let mut numerator = full_commutator(base, g.commutator_kind()).space().clone();
    for i in 0..cube.m() {
        numerator = numerator.intersect(cube.direction_kernel(i).space())?;
    }
    let denominator = obstruction.ideal.space().clone();
    if !denominator.is_subspace_of(&numerator) {
        return Err(Error::IllDefined(format!(
            "obstruction (dim {}) is not contained in the numerator (dim {})",
            denominator.rank(),
            numerator.rank()
        )));
    }
    let h_basis = numerator.complement_basis(&denominator);
    Ok(HopfReport { h_dim: numerator.rank() - denominator.rank(), numerator, denominator, h_basis })
}

pub fn is_perfect(alg: &NaryAlgebra, g: GaloisStructure) -> bool {
    full_commutator(alg, g.commutator_kind()).space().is_full()
}

/// Recognizes the truncated free presentation `free_nilpotent2(n, d, kind) → abelian_d`.
pub fn truncated_free_kind(cube: &Cube) -> Option<FreeKind> {
    if cube.m() != 1 {
        return None;
    }
    let (base, target) = (cube.base(), cube.node(1));
    if !target.is_abelian() || target.dim() == 0 {
        return None;
    }
    [FreeKind::Leibniz, FreeKind::Lie].into_iter().find(|&kind| {
        free_nilpotent2(base.field(), base.arity(), target.dim(), kind)
            .is_ok_and(|(free, eps)| free.same_structure(base) && eps.map() == cube.arrow(0, 0).map())
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactla::{Field, LinearMap};
    use crate::ext::cube_from_ideals;
    use crate::nalg::{catalog, Ideal};

    fn presentation(arity: usize, d: usize, kind: FreeKind) -> Cube {
        let (free, eps) = free_nilpotent2(Field::Rational, arity, d, kind).unwrap();
        Cube::new(vec![free, eps.target().clone()], [((0, 0), eps.map().clone())]).unwrap()
    }

    #[test]
    fn identity_cube_has_no_homology() {
        let h3 = Arc::new(catalog::h3(Field::Rational).unwrap());
        let c = cube_from_ideals(&h3, &[Ideal::zero(&h3)]).unwrap();
        let r = hopf_evaluate(&c, GaloisStructure::LieOverVect).unwrap();
        assert_eq!((r.numerator.rank(), r.h_dim), (0, 0));
    }

    #[test]
    fn truncated_free_values() {
        let lb = presentation(2, 2, FreeKind::Leibniz);
        let r = hopf_evaluate(&lb, GaloisStructure::LbOverVect).unwrap();
        assert_eq!((r.numerator.rank(), r.denominator.rank(), r.h_dim), (4, 0, 4));
        let r = hopf_evaluate(&lb, GaloisStructure::LbOverLie).unwrap();
        assert_eq!((r.numerator.rank(), r.denominator.rank(), r.h_dim), (3, 0, 3));
        let lie = presentation(2, 3, FreeKind::Lie);
        assert_eq!(hopf_evaluate(&lie, GaloisStructure::LieOverVect).unwrap().h_dim, 3);
        assert_eq!(truncated_free_kind(&lb), Some(FreeKind::Leibniz));
        assert_eq!(truncated_free_kind(&lie), Some(FreeKind::Lie));
    }

    #[test]
    fn detector_rejects_other_cubes() {
        let f = Field::Rational;
        let h3 = Arc::new(catalog::h3(f).unwrap());
        let c = cube_from_ideals(&h3, &[Ideal::zero(&h3)]).unwrap();
        assert_eq!(truncated_free_kind(&c), None);
        let (free, eps) = free_nilpotent2(f, 2, 2, FreeKind::Lie).unwrap();
        let swapped =
            LinearMap::from_rows(f, 2, 3, vec![eps.map().row_vectors()[1].clone(), eps.map().row_vectors()[0].clone()])
                .unwrap();
        let c = Cube::new(vec![free, eps.target().clone()], [((0, 0), swapped)]).unwrap();
        assert_eq!(truncated_free_kind(&c), None);
    }

    #[test]
    fn perfectness() {
        let f = Field::Rational;
        assert!(!is_perfect(&catalog::abelian(f, 2, 2).unwrap(), GaloisStructure::LbOverVect));
        assert!(is_perfect(&catalog::sl2(f).unwrap(), GaloisStructure::LieOverVect));
        assert!(!is_perfect(&catalog::h3(f).unwrap(), GaloisStructure::LieOverVect));
    }
}
