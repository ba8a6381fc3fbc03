use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::cube::{is_extension, mask_label, Cube, Mask};
use crate::error::{Error, Result};
use crate::exactla::{LinearMap, QuotientSpace, Subspace, Vector};
use crate::nalg::{
    commutator, kernel_pair, quotient_algebra, AlgebraMorphism, CommutatorKind, Ideal, NaryAlgebra, Tuples,
};

/// Ambient variety over a Birkhoff subcategory: Leibniz over vector spaces,
/// Lie over vector spaces, or Leibniz over Lie.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GaloisStructure {
    LbOverVect,
    LieOverVect,
    LbOverLie,
}

impl GaloisStructure {
    pub const ALL: [GaloisStructure; 3] =
        [GaloisStructure::LbOverVect, GaloisStructure::LieOverVect, GaloisStructure::LbOverLie];

    pub fn as_str(self) -> &'static str {
        match self {
            GaloisStructure::LbOverVect => "lb-vect",
            GaloisStructure::LieOverVect => "lie-vect",
            GaloisStructure::LbOverLie => "lb-lie",
        }
    }

    /// The commutator whose vanishing characterizes the subcategory.
    pub fn commutator_kind(self) -> CommutatorKind {
        match self {
            GaloisStructure::LbOverVect => CommutatorKind::Leibniz,
            GaloisStructure::LieOverVect => CommutatorKind::Lie,
            GaloisStructure::LbOverLie => CommutatorKind::Relative,
        }
    }

    /// Whether `alg` lies in the ambient variety.
    pub fn admits(self, alg: &NaryAlgebra) -> bool {
        match self {
            GaloisStructure::LieOverVect => alg.is_lie(),
            GaloisStructure::LbOverVect | GaloisStructure::LbOverLie => alg.is_leibniz(),
        }
    }

    pub fn check(self, alg: &NaryAlgebra) -> Result<()> {
        if self.admits(alg) {
            return Ok(());
        }
        Err(match self {
            GaloisStructure::LieOverVect => Error::NotLie(alg.name().to_string()),
            _ => Error::NotLeibniz(alg.name().to_string()),
        })
    }
}

impl fmt::Display for GaloisStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GaloisStructure {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        GaloisStructure::ALL
            .into_iter()
            .find(|g| g.as_str() == s)
            .ok_or_else(|| format!("unknown Galois structure `{s}` (expected lb-vect, lie-vect or lb-lie)"))
    }
}

/// One summand of an obstruction: the cover `(I_1,…,I_n)` and its commutator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionTerm {
    pub cover: Vec<Mask>,
    pub space: Subspace,
}

/// `Σ_{I_1∪…∪I_n = {1..m}} C(∩_{i∈I_1} K_i, …, ∩_{i∈I_n} K_i)` inside `A_∅`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub ideal: Ideal,
    pub terms: Vec<ObstructionTerm>,
}

fn check_cube(cube: &Cube, g: GaloisStructure) -> Result<()> {
    let report = is_extension(cube);
    if !report.ok {
        let at = report.failing.map(mask_label).unwrap_or_default();
        return Err(Error::NotExtension(format!("comparison at {{{at}}} is not surjective")));
    }
    for node in cube.nodes() {
        g.check(node)?;
    }
    Ok(())
}

/// Obstruction to centrality over disjoint covers (each element of `{1..m}`
/// assigned to exactly one slot).
pub fn central_obstruction(cube: &Cube, g: GaloisStructure) -> Result<Obstruction> {
    check_cube(cube, g)?;
    let kernels: Vec<Ideal> = (0..cube.m()).map(|i| cube.direction_kernel(i)).collect();
    Ok(obstruction_from_kernels(cube.base(), &kernels, g.commutator_kind(), Covers::Disjoint))
}

/// Same sum over all covers, overlapping ones included.
pub fn central_obstruction_overlapping(cube: &Cube, g: GaloisStructure) -> Result<Obstruction> {
    check_cube(cube, g)?;
    let kernels: Vec<Ideal> = (0..cube.m()).map(|i| cube.direction_kernel(i)).collect();
    Ok(obstruction_from_kernels(cube.base(), &kernels, g.commutator_kind(), Covers::Overlapping))
}

pub fn is_central(cube: &Cube, g: GaloisStructure) -> Result<bool> {
    Ok(central_obstruction(cube, g)?.ideal.is_zero())
}

#[derive(Clone, Copy)]
enum Covers {
    Disjoint,
    Overlapping,
}

/// Works for any number of kernels, including none (then the only cover is
/// all-empty and the result is `C(A,…,A)`).
fn obstruction_from_kernels(alg: &NaryAlgebra, kernels: &[Ideal], kind: CommutatorKind, covers: Covers) -> Obstruction {
    let n = alg.arity();
    let m = kernels.len();
    let mut intersections: HashMap<Mask, Ideal> = HashMap::new();
    let mut intersection = |mask: Mask| -> Ideal {
        intersections
            .entry(mask)
            .or_insert_with(|| {
                (0..m)
                    .filter(|i| mask >> i & 1 == 1)
                    .fold(Ideal::whole(alg), |acc, i| acc.intersect(&kernels[i]).expect("same ambient"))
            })
            .clone()
    };
    let covers: Vec<Vec<Mask>> = match covers {
        Covers::Disjoint => Tuples::new(n, m)
            .map(|slots| {
                let mut cover = vec![0; n];
                for (i, &s) in slots.iter().enumerate() {
                    cover[s] |= 1 << i;
                }
                cover
            })
            .collect(),
        Covers::Overlapping => {
            let full = (1usize << m) - 1;
            Tuples::new(1 << m, n).filter(|c| c.iter().fold(0, |a, &b| a | b) == full).collect()
        }
    };
    let mut cache: HashMap<Vec<Mask>, Subspace> = HashMap::new();
    let mut terms = Vec::with_capacity(covers.len());
    let mut total = Ideal::zero(alg);
    for cover in covers {
        let slots: Vec<Ideal> = cover.iter().map(|&mask| intersection(mask)).collect();
        let mut key: Vec<Mask> = cover.clone();
        if kind != CommutatorKind::Lie {
            // Symmetric in the slots.
            key.sort_unstable();
        }
        let space = cache
            .entry(key)
            .or_insert_with(|| {
                let refs: Vec<&Ideal> = slots.iter().collect();
                commutator(alg, &refs, kind).expect("slots match the algebra").space().clone()
            })
            .clone();
        total = total.sum(&Ideal::new_unchecked(space.clone())).expect("same ambient");
        terms.push(ObstructionTerm { cover, space });
    }
    Obstruction { ideal: total, terms }
}

/// Centrality straight from the kernel-pair definition.
///
/// For `m = 1` the kernel pair `R ⇉ B` of `f: B → A` is formed and `f` is
/// central when both projections agree on `C(R,…,R)`. For `m ≥ 2` the cube is
/// read as a morphism `B → A` of (m-1)-cubes (last direction), the kernel
/// pairs form an (m-1)-cube `R`, and `f` is central when the two projections
/// agree on the level-(m-1) obstruction of `R`.
pub fn is_central_oracle(cube: &Cube, g: GaloisStructure) -> Result<bool> {
    check_cube(cube, g)?;
    let m = cube.m();
    let last = m - 1;
    let lower = 1usize << last;
    // Kernel pairs R_I of B_I → A_{I∪{m}}, for I ⊆ {1..m-1}.
    let pairs: Vec<(Arc<NaryAlgebra>, AlgebraMorphism, AlgebraMorphism)> =
        (0..lower).map(|mask| kernel_pair(cube.arrow(mask, last))).collect::<Result<_>>()?;
    let (r0, p0, p1) = &pairs[0];
    let kernels: Vec<Ideal> = if last == 0 {
        Vec::new()
    } else {
        let mut maps = Vec::new();
        for mask in 0..lower {
            for j in (0..last).filter(|j| mask >> j & 1 == 0) {
                maps.push(((mask, j), induced_arrow(cube, &pairs, mask, j)?.map().clone()));
            }
        }
        let nodes = pairs.iter().map(|(r, _, _)| r.clone()).collect();
        let r_cube = Cube::new(nodes, maps)?;
        (0..last).map(|j| r_cube.direction_kernel(j)).collect()
    };
    let obstruction = obstruction_from_kernels(r0, &kernels, g.commutator_kind(), Covers::Disjoint);
    Ok(obstruction.ideal.space().basis().iter().all(|v| p0.apply(v) == p1.apply(v)))
}

/// `R_I → R_{I∪{j}}`, `(b, b') ↦ (β b, β b')`, validated as a morphism.
fn induced_arrow(
    cube: &Cube,
    pairs: &[(Arc<NaryAlgebra>, AlgebraMorphism, AlgebraMorphism)],
    mask: Mask,
    j: usize,
) -> Result<AlgebraMorphism> {
    let (src, s0, s1) = &pairs[mask];
    let (dst, d0, d1) = &pairs[mask | 1 << j];
    let beta = cube.arrow(mask, j).map();
    let field = src.field();
    let dst_space = pair_space(d0, d1)?;
    let columns: Vec<Vector> = (0..src.dim())
        .map(|k| {
            let x = Vector::unit(field, src.dim(), k);
            let image = beta.apply(&s0.apply(&x)).concat(&beta.apply(&s1.apply(&x)));
            dst_space.coordinates(&image).ok_or_else(|| Error::IllDefined("induced map leaves the kernel pair".into()))
        })
        .collect::<Result<_>>()?;
    let map = LinearMap::from_columns(field, dst.dim(), &columns)?;
    AlgebraMorphism::new(src.clone(), dst.clone(), map)
}

/// The kernel pair as a subspace of `B × B`; its RREF basis is the one the
/// kernel-pair subalgebra is written in.
fn pair_space(f0: &AlgebraMorphism, f1: &AlgebraMorphism) -> Result<Subspace> {
    let r = f0.source();
    let field = r.field();
    let embedded: Vec<Vector> = (0..r.dim())
        .map(|k| {
            let x = Vector::unit(field, r.dim(), k);
            f0.apply(&x).concat(&f1.apply(&x))
        })
        .collect();
    Subspace::span(field, 2 * f0.target().dim(), &embedded)
}

/// Centralization of a 1-fold extension `f: B → A`: the domain is divided by
/// the obstruction and `f` factors through the quotient.
pub fn centralize1(cube: &Cube, g: GaloisStructure) -> Result<(Cube, AlgebraMorphism)> {
    if cube.m() != 1 {
        return Err(Error::MalformedCube(format!("expected a 1-fold arrow, found m = {}", cube.m())));
    }
    let obstruction = central_obstruction(cube, g)?;
    let b = cube.base();
    let (quotient, projection) = quotient_algebra(b, &obstruction.ideal)?;
    let qs = QuotientSpace::new(b.dim(), obstruction.ideal.space())?;
    let f = cube.arrow(0, 0).map();
    let induced = f.compose(qs.section())?;
    let central = Cube::new(vec![quotient, cube.node(1).clone()], [((0, 0), induced)])?;
    Ok((central, projection))
}
