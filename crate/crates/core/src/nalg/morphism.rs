use std::sync::Arc;

use super::algebra::NaryAlgebra;
use super::ideal::Ideal;
use crate::error::{Error, Result};
use crate::exactla::{LinearMap, QuotientSpace, Subspace, Vector};

/// A linear map between algebras of the same arity and field that preserves
/// the bracket on every basis tuple.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    source: Arc<NaryAlgebra>,
    target: Arc<NaryAlgebra>,
    map: LinearMap,
}

impl AlgebraMorphism {
    pub fn new(source: Arc<NaryAlgebra>, target: Arc<NaryAlgebra>, map: LinearMap) -> Result<Self> {
        if source.arity() != target.arity() {
            return Err(Error::ArityMismatch { expected: source.arity(), found: target.arity() });
        }
        if source.field() != target.field() || map.field() != source.field() {
            return Err(Error::FieldMismatch(source.field().to_string(), target.field().to_string()));
        }
        if map.source_dim() != source.dim() {
            return Err(Error::DimensionMismatch { expected: source.dim(), found: map.source_dim() });
        }
        if map.target_dim() != target.dim() {
            return Err(Error::DimensionMismatch { expected: target.dim(), found: map.target_dim() });
        }
        let f = AlgebraMorphism { source, target, map };
        if let Some(msg) = f.bracket_violation() {
            return Err(Error::NotAMorphism(msg));
        }
        Ok(f)
    }

    /// For maps that respect brackets by construction.
    pub(crate) fn new_unchecked(source: Arc<NaryAlgebra>, target: Arc<NaryAlgebra>, map: LinearMap) -> Self {
        AlgebraMorphism { source, target, map }
    }

    pub fn identity(alg: Arc<NaryAlgebra>) -> Self {
        let map = LinearMap::identity(alg.field(), alg.dim());
        AlgebraMorphism { source: alg.clone(), target: alg, map }
    }

    fn bracket_violation(&self) -> Option<String> {
        let s = &self.source;
        let images: Vec<Vector> = (0..s.dim()).map(|j| self.map.column(j)).collect();
        for t in s.tuples(s.arity()) {
            let lhs = match s.basis_bracket(&t) {
                Some(v) => self.map.apply(v),
                None => self.target.zero_vector(),
            };
            let args: Vec<&Vector> = t.iter().map(|&i| &images[i]).collect();
            let rhs = self.target.eval(&args);
            if lhs != rhs {
                return Some(format!(
                    "f[{}] = {} but [f..] = {}",
                    s.format_tuple(&t),
                    self.target.format_vector(&lhs),
                    self.target.format_vector(&rhs)
                ));
            }
        }
        None
    }

    pub fn source(&self) -> &Arc<NaryAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<NaryAlgebra> {
        &self.target
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        self.map.apply(v)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if !Arc::ptr_eq(&inner.target, &self.source) && !inner.target.same_structure(&self.source) {
            return Err(Error::NotAMorphism("composing morphisms with mismatched ends".into()));
        }
        Ok(AlgebraMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            map: self.map.compose(&inner.map)?,
        })
    }

    pub fn is_surjective(&self) -> bool {
        self.map.is_surjective()
    }

    pub fn kernel(&self) -> Subspace {
        self.map.kernel()
    }
}

/// `K[f]` as an ideal of the source.
pub fn kernel_ideal(f: &AlgebraMorphism) -> Result<Ideal> {
    Ok(Ideal::new_unchecked(f.kernel()))
}

/// `A / N` on the deterministic quotient coordinates, together with the projection.
pub fn quotient_algebra(alg: &Arc<NaryAlgebra>, ideal: &Ideal) -> Result<(Arc<NaryAlgebra>, AlgebraMorphism)> {
    // The ideal check is exactly representative independence of the induced
    // bracket: changing one argument by an element of N changes the bracket by
    // an element of N.
    let ideal = Ideal::new(alg, ideal.space().clone())?;
    quotient_by(alg, ideal.space())
}

/// [`quotient_algebra`] for a subspace already known to be an ideal of `alg`.
pub(crate) fn quotient_by(alg: &Arc<NaryAlgebra>, ideal: &Subspace) -> Result<(Arc<NaryAlgebra>, AlgebraMorphism)> {
    let qs = QuotientSpace::new(alg.dim(), ideal)?;
    let reps = qs.representatives();
    let mut position = vec![None; alg.dim()];
    for (k, &r) in reps.iter().enumerate() {
        position[r] = Some(k);
    }
    let mut entries = Vec::new();
    for (t, val) in alg.structure() {
        let Some(qt) = t.iter().map(|&i| position[i]).collect::<Option<Vec<usize>>>() else {
            continue;
        };
        let image = qs.project(val);
        if !image.is_zero() {
            entries.push((qt, image));
        }
    }
    let labels = reps.iter().map(|&r| alg.labels()[r].clone()).collect();
    let name = format!("{}/{}", alg.name(), ideal.rank());
    let quotient = Arc::new(NaryAlgebra::new(name, alg.field(), alg.arity(), qs.dim(), entries)?.with_labels(labels)?);
    let projection = AlgebraMorphism::new_unchecked(alg.clone(), quotient.clone(), qs.projection().clone());
    Ok((quotient, projection))
}

/// The subalgebra spanned by `space`, in the coordinates of its RREF basis,
/// together with its inclusion map.
pub fn subalgebra(
    parent: &NaryAlgebra,
    space: &Subspace,
    name: impl Into<String>,
) -> Result<(Arc<NaryAlgebra>, LinearMap)> {
    let basis = space.basis();
    let r = basis.len();
    let mut entries = Vec::new();
    for t in super::algebra::Tuples::new(r, parent.arity()) {
        let args: Vec<&Vector> = t.iter().map(|&i| &basis[i]).collect();
        let value = parent.eval(&args);
        if value.is_zero() {
            continue;
        }
        let coords = space
            .coordinates(&value)
            .ok_or_else(|| Error::IllDefined(format!("subspace is not closed under the bracket at {t:?}")))?;
        entries.push((t, coords));
    }
    let labels = space.pivots().iter().map(|&p| parent.labels()[p].clone()).collect();
    let sub = NaryAlgebra::new(name, parent.field(), parent.arity(), r, entries)?.with_labels(labels)?;
    let inclusion = LinearMap::from_columns(parent.field(), parent.dim(), basis)?;
    Ok((Arc::new(sub), inclusion))
}

/// `A × B` with componentwise bracket.
pub fn direct_product(a: &NaryAlgebra, b: &NaryAlgebra) -> Result<NaryAlgebra> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch { expected: a.arity(), found: b.arity() });
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field().to_string(), b.field().to_string()));
    }
    let (da, db) = (a.dim(), b.dim());
    let za = Vector::zeros(a.field(), da);
    let zb = Vector::zeros(b.field(), db);
    let mut entries: Vec<(Vec<usize>, Vector)> = a.structure().map(|(t, v)| (t.to_vec(), v.concat(&zb))).collect();
    entries.extend(b.structure().map(|(t, v)| (t.iter().map(|&i| i + da).collect(), za.concat(v))));
    let mut labels: Vec<String> = a.labels().iter().map(|l| format!("{l}_1")).collect();
    labels.extend(b.labels().iter().map(|l| format!("{l}_2")));
    NaryAlgebra::new(format!("{}x{}", a.name(), b.name()), a.field(), a.arity(), da + db, entries)?.with_labels(labels)
}

/// Kernel pair `R[f] = {(b, b') : f b = f b'}` with its two projections to the source.
pub fn kernel_pair(f: &AlgebraMorphism) -> Result<(Arc<NaryAlgebra>, AlgebraMorphism, AlgebraMorphism)> {
    let b = f.source();
    let d = b.dim();
    let field = b.field();
    // Constraint matrix [F | -F] on B × B.
    let rows: Vec<Vector> = f.map().row_vectors().iter().map(|r| r.concat(&r.scaled(&-field.one()))).collect();
    let constraints = LinearMap::from_rows(field, f.target().dim(), 2 * d, rows)?;
    let space = constraints.kernel();
    let product = direct_product(b, b)?;
    let (r, inclusion) = subalgebra(&product, &space, format!("R[{}]", b.name()))?;
    let half = |offset: usize| -> Result<LinearMap> {
        let cols: Vec<Vector> = (0..r.dim())
            .map(|j| {
                let c = inclusion.column(j);
                Vector::new(c[offset..offset + d].to_vec())
            })
            .collect();
        LinearMap::from_columns(field, d, &cols)
    };
    let f0 = AlgebraMorphism::new(r.clone(), b.clone(), half(0)?)?;
    let f1 = AlgebraMorphism::new(r.clone(), b.clone(), half(d)?)?;
    Ok((r, f0, f1))
}
