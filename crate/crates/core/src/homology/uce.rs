use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use itertools::Itertools;

use super::hopf::is_perfect;
use crate::error::{Error, Result};
use crate::exactla::{Echelon, Field, LinearMap, QuotientSpace, Subspace, Vector};
use crate::ext::{is_central, Cube, GaloisStructure};
use crate::nalg::{commutator, kernel_ideal, AlgebraMorphism, CommutatorKind, Ideal, NaryAlgebra, Tuples};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UceKind {
    Leibniz,
    Lie,
}

impl UceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            UceKind::Leibniz => "leibniz",
            UceKind::Lie => "lie",
        }
    }

    pub fn galois(self) -> GaloisStructure {
        match self {
            UceKind::Leibniz => GaloisStructure::LbOverVect,
            UceKind::Lie => GaloisStructure::LieOverVect,
        }
    }

    fn separator(self) -> &'static str {
        match self {
            UceKind::Leibniz => "∗",
            UceKind::Lie => "⊙",
        }
    }
}

impl fmt::Display for UceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for UceKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "leibniz" => Ok(UceKind::Leibniz),
            "lie" => Ok(UceKind::Lie),
            other => Err(format!("unknown variant `{other}` (expected leibniz or lie)")),
        }
    }
}

/// Universal central extension `u: U → L` with `U = L^{⊗n} / R`.
#[derive(Clone, Debug)]
pub struct UceResult {
    pub algebra: Arc<NaryAlgebra>,
    pub cover: AlgebraMorphism,
    pub kernel: Ideal,
    pub kind: UceKind,
    /// Relation space `R` inside `L^{⊗n}`.
    pub relations: Subspace,
    /// Coordinates of `U` as a quotient of `L^{⊗n}`.
    pub quotient: QuotientSpace,
}

/// Postconditions of a universal central extension, evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UceInvariants {
    pub surjective: bool,
    pub central: bool,
    pub perfect: bool,
    pub satisfies_axioms: bool,
}

impl UceInvariants {
    pub fn all(&self) -> bool {
        self.surjective && self.central && self.perfect && self.satisfies_axioms
    }
}

impl UceResult {
    pub fn invariants(&self) -> Result<UceInvariants> {
        let base = self.cover.target();
        let cube = Cube::new(vec![self.algebra.clone(), base.clone()], [((0, 0), self.cover.map().clone())])?;
        Ok(UceInvariants {
            surjective: self.cover.is_surjective(),
            central: is_central(&cube, self.kind.galois())?,
            perfect: is_perfect(&self.algebra, GaloisStructure::LbOverVect),
            satisfies_axioms: self.kind.galois().admits(&self.algebra),
        })
    }
}

pub fn uce_leibniz(alg: &Arc<NaryAlgebra>) -> Result<UceResult> {
    build(alg, UceKind::Leibniz)
}

pub fn uce_lie(alg: &Arc<NaryAlgebra>) -> Result<UceResult> {
    build(alg, UceKind::Lie)
}

pub fn uce(alg: &Arc<NaryAlgebra>, kind: UceKind) -> Result<UceResult> {
    build(alg, kind)
}

/// `dim ker u` of the matching universal central extension.
pub fn h2_via_uce(alg: &Arc<NaryAlgebra>, kind: UceKind) -> Result<usize> {
    Ok(build(alg, kind)?.kernel.dim())
}

/// Tensor `v_1 ⊗ … ⊗ v_k` in lexicographic coordinates.
fn tensor(field: Field, factors: &[&Vector]) -> Vector {
    let d = factors.first().map_or(1, |v| v.len());
    let mut out = Vector::zeros(field, d.pow(factors.len() as u32));
    let supports: Vec<Vec<usize>> = factors.iter().map(|v| v.support()).collect();
    for t in supports.iter().map(|s| s.iter().copied()).multi_cartesian_product() {
        let index = t.iter().fold(0, |acc, &i| acc * d + i);
        let c = factors.iter().zip(&t).skip(1).fold(factors[0][t[0]].clone(), |acc, (v, &i)| &acc * &v[i]);
        out.set(index, c);
    }
    out
}

fn build(alg: &Arc<NaryAlgebra>, kind: UceKind) -> Result<UceResult> {
    let g = kind.galois();
    g.check(alg)?;
    if !is_perfect(alg, g) {
        return Err(Error::NotPerfect { name: alg.name().to_string(), structure: "Vect" });
    }
    let n = alg.arity();
    let d = alg.dim();
    let field = alg.field();
    let big = d.pow(n as u32);
    let index = |t: &[usize]| t.iter().fold(0, |acc, &i| acc * d + i);
    let zero = alg.zero_vector();
    let beta = |t: &[usize]| alg.basis_bracket(t).unwrap_or(&zero).clone();

    // [l_1..l_n] ⊗ l'_2..l'_n - Σ_i l_1 ⊗ … ⊗ [l_i, l'_2..l'_n] ⊗ … ⊗ l_n
    let mut relations = Echelon::new(field, big);
    let mut head = Vec::with_capacity(n);
    for outer in Tuples::new(d, n) {
        for primes in Tuples::new(d, n - 1) {
            let mut r = Vector::zeros(field, big);
            if let Some(b) = alg.basis_bracket(&outer) {
                let mut t = vec![0];
                t.extend_from_slice(&primes);
                for k in b.support() {
                    t[0] = k;
                    let i = index(&t);
                    let updated = &r[i] + &b[k];
                    r.set(i, updated);
                }
            }
            for i in 0..n {
                head.clear();
                head.push(outer[i]);
                head.extend_from_slice(&primes);
                let Some(b) = alg.basis_bracket(&head) else { continue };
                let mut t = outer.clone();
                for k in b.support() {
                    t[i] = k;
                    let j = index(&t);
                    let updated = &r[j] - &b[k];
                    r.set(j, updated);
                }
            }
            relations.insert(r);
        }
    }
    if kind == UceKind::Lie {
        // Tensors with two equal neighbours, polarized over the basis.
        for t in Tuples::new(d, n) {
            for i in 0..n - 1 {
                if t[i] > t[i + 1] {
                    continue;
                }
                let mut s = t.clone();
                s.swap(i, i + 1);
                let mut r = Vector::unit(field, big, index(&t));
                let j = index(&s);
                let updated = &r[j] + &field.one();
                r.set(j, updated);
                relations.insert(r);
            }
        }
    }
    let relations = relations.finish();
    let quotient = QuotientSpace::new(big, &relations)?;
    let reps: Vec<Vec<usize>> = quotient
        .representatives()
        .iter()
        .map(|&r| {
            let mut t = vec![0; n];
            let mut x = r;
            for slot in t.iter_mut().rev() {
                *slot = x % d;
                x /= d;
            }
            t
        })
        .collect();

    check_representative_independence(alg, &relations)?;

    let images: Vec<Vector> = reps.iter().map(|t| beta(t)).collect();
    let mut entries = Vec::new();
    for t in Tuples::new(reps.len(), n) {
        let factors: Vec<&Vector> = t.iter().map(|&k| &images[k]).collect();
        if factors.iter().any(|v| v.is_zero()) {
            continue;
        }
        let value = quotient.project(&tensor(field, &factors));
        if !value.is_zero() {
            entries.push((t, value));
        }
    }
    let labels = reps.iter().map(|t| t.iter().map(|&i| alg.labels()[i].as_str()).join(kind.separator())).collect();
    let name = format!("U_{}({})", kind.as_str(), alg.name());
    let algebra = Arc::new(NaryAlgebra::new(name, field, n, reps.len(), entries)?.with_labels(labels)?);
    let map = LinearMap::from_columns(field, d, &images)?;
    let cover = AlgebraMorphism::new(algebra.clone(), alg.clone(), map)?;
    let kernel = kernel_ideal(&cover)?;
    Ok(UceResult { algebra, cover, kernel, kind, relations, quotient })
}

/// The bracket on `L^{⊗n}` is `⊗_j β(t_j)` with `β` the bracket map
/// `L^{⊗n} → L`. It descends to the quotient when bracketing a relation in any
/// slot against basis tensors lands back in `R`. A relation with `β(r) = 0`
/// contributes only zero tensors, so only the others need the full sweep.
fn check_representative_independence(alg: &NaryAlgebra, relations: &Subspace) -> Result<()> {
    let n = alg.arity();
    let d = alg.dim();
    let field = alg.field();
    let zero = alg.zero_vector();
    let basis_images: Vec<Vector> = Tuples::new(d, n).map(|t| alg.basis_bracket(&t).unwrap_or(&zero).clone()).collect();
    for r in relations.basis() {
        let mut image = zero.clone();
        for i in r.support() {
            image.add_scaled(&r[i], &basis_images[i]);
        }
        if image.is_zero() {
            continue;
        }
        for slot in 0..n {
            for others in Tuples::new(basis_images.len(), n - 1) {
                let mut factors: Vec<&Vector> = others.iter().map(|&k| &basis_images[k]).collect();
                factors.insert(slot, &image);
                if !relations.contains(&tensor(field, &factors)) {
                    return Err(Error::IllDefined(format!(
                        "bracket on {} is not independent of representatives",
                        alg.name()
                    )));
                }
            }
        }
    }
    Ok(())
}

/// One named verification step of [`compare_uce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedCheck {
    pub name: &'static str,
    pub statement: &'static str,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct UceComparison {
    pub leibniz: UceResult,
    pub lie: UceResult,
    /// `f: U_lb → U_lie`, absent when it is not well defined.
    pub map: Option<AlgebraMorphism>,
    pub map_kernel_dim: Option<usize>,
    pub checks: Vec<NamedCheck>,
}

impl UceComparison {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

const CHECK_A: &str = "f is a surjective morphism and u_lb = u_lie ∘ f";
const CHECK_B: &str = "dim ker u_lb = dim ker u_lie + dim ker f";
const CHECK_C: &str = "relative commutator of ker u_lb equals ker f";

/// Builds both universal central extensions of a perfect Lie algebra and the
/// comparison `l_1∗…∗l_n ↦ l_1⊙…⊙l_n`, then verifies the exact sequence.
pub fn compare_uce(alg: &Arc<NaryAlgebra>) -> Result<UceComparison> {
    let lie = uce_lie(alg)?;
    let leibniz = uce_leibniz(alg)?;
    let field = alg.field();
    let big = leibniz.quotient.ambient_dim();
    let mut checks = Vec::with_capacity(3);

    let map = if leibniz.relations.is_subspace_of(&lie.relations) {
        let columns: Vec<Vector> = leibniz
            .quotient
            .representatives()
            .iter()
            .map(|&r| lie.quotient.project(&Vector::unit(field, big, r)))
            .collect();
        let matrix = LinearMap::from_columns(field, lie.algebra.dim(), &columns)?;
        AlgebraMorphism::new(leibniz.algebra.clone(), lie.algebra.clone(), matrix).map_err(|e| e.to_string())
    } else {
        Err("the Leibniz relations do not map into the Lie relations".to_string())
    };

    let (ker_lb, ker_lie) = (leibniz.kernel.dim(), lie.kernel.dim());
    match &map {
        Ok(f) => {
            let factors = lie.cover.map().compose(f.map())? == *leibniz.cover.map();
            let surjective = f.is_surjective();
            checks.push(NamedCheck {
                name: "a",
                statement: CHECK_A,
                ok: factors && surjective,
                detail: format!("surjective: {surjective}; factors: {factors}"),
            });
            let ker_f = f.kernel();
            checks.push(NamedCheck {
                name: "b",
                statement: CHECK_B,
                ok: ker_lb == ker_lie + ker_f.rank(),
                detail: format!("{ker_lb} = {ker_lie} + {}", ker_f.rank()),
            });
            let slots = vec![&leibniz.kernel; alg.arity()];
            let relative = commutator(&leibniz.algebra, &slots, CommutatorKind::Relative)?;
            checks.push(NamedCheck {
                name: "c",
                statement: CHECK_C,
                ok: relative.space() == &ker_f,
                detail: format!("dim {} vs dim {}", relative.dim(), ker_f.rank()),
            });
        }
        Err(reason) => {
            for (name, statement) in [("a", CHECK_A), ("b", CHECK_B), ("c", CHECK_C)] {
                checks.push(NamedCheck { name, statement, ok: false, detail: reason.clone() });
            }
        }
    }
    let map = map.ok();
    let map_kernel_dim = map.as_ref().map(|f| f.kernel().rank());
    Ok(UceComparison { leibniz, lie, map, map_kernel_dim, checks })
}
