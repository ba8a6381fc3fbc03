use std::collections::VecDeque;

use itertools::Itertools;

use super::algebra::{NaryAlgebra, Tuples};
use crate::error::{Error, Result};
use crate::exactla::{Echelon, Scalar, Subspace, Vector};

/// An n-sided ideal: a subspace `N` with `[x_1,…,x_n] ∈ N` whenever any single
/// `x_i ∈ N`. The parent algebra is not stored; operations take it explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    space: Subspace,
}

impl Ideal {
    /// Wraps `space` after checking the ideal property on basis elements.
    pub fn new(alg: &NaryAlgebra, space: Subspace) -> Result<Self> {
        if let Some(witness) = ideal_violation(alg, &space)? {
            return Err(Error::NotAnIdeal(witness));
        }
        Ok(Ideal { space })
    }

    pub(crate) fn new_unchecked(space: Subspace) -> Self {
        Ideal { space }
    }

    pub fn zero(alg: &NaryAlgebra) -> Self {
        Ideal { space: Subspace::zero(alg.field(), alg.dim()) }
    }

    pub fn whole(alg: &NaryAlgebra) -> Self {
        Ideal { space: Subspace::full(alg.field(), alg.dim()) }
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        Ok(Ideal { space: self.space.sum(&other.space)? })
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        Ok(Ideal { space: self.space.intersect(&other.space)? })
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.space.contains(v)
    }
}

pub fn is_ideal(alg: &NaryAlgebra, space: &Subspace) -> bool {
    matches!(ideal_violation(alg, space), Ok(None))
}

fn ideal_violation(alg: &NaryAlgebra, space: &Subspace) -> Result<Option<String>> {
    if space.ambient_dim() != alg.dim() {
        return Err(Error::DimensionMismatch { expected: alg.dim(), found: space.ambient_dim() });
    }
    if space.is_full() || alg.is_abelian() {
        return Ok(None);
    }
    let n = alg.arity();
    for b in space.basis() {
        for slot in 0..n {
            for others in alg.tuples(n - 1) {
                let w = alg.eval_slot(slot, b, &others);
                if !space.contains(&w) {
                    return Ok(Some(format!(
                        "bracket of {} in slot {} with {} gives {} outside the subspace",
                        alg.format_vector(b),
                        slot + 1,
                        alg.format_tuple(&others),
                        alg.format_vector(&w)
                    )));
                }
            }
        }
    }
    Ok(None)
}

/// Smallest ideal containing `generators`.
///
/// Fixpoint: every vector added to the span is bracketed, one slot at a time
/// from left to right, against all lexicographic basis tuples in the other
/// slots, until nothing new appears.
pub fn ideal_closure(alg: &NaryAlgebra, generators: &Subspace) -> Result<Ideal> {
    if generators.ambient_dim() != alg.dim() {
        return Err(Error::DimensionMismatch { expected: alg.dim(), found: generators.ambient_dim() });
    }
    Ok(close(alg, Echelon::from_subspace(generators), generators.basis().to_vec()))
}

pub(crate) fn close(alg: &NaryAlgebra, mut span: Echelon, seed: Vec<Vector>) -> Ideal {
    let n = alg.arity();
    let dim = alg.dim();
    let mut queue: VecDeque<Vector> = seed.into();
    if alg.is_abelian() {
        queue.clear();
    }
    while let Some(v) = queue.pop_front() {
        if span.rank() == dim {
            break;
        }
        for slot in 0..n {
            for others in alg.tuples(n - 1) {
                let w = alg.eval_slot(slot, &v, &others);
                if !w.is_zero() && span.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
    }
    Ideal::new_unchecked(span.finish())
}

/// All ideals whose canonical RREF basis has its non-pivot entries in `entries`.
///
/// Over 𝔽_p with `entries` = every residue this is the complete list of ideals;
/// over ℚ it is the finite slice of the (infinite) ideal lattice with small
/// coefficients. Order: by rank, then pivot set lexicographically, then entries.
pub fn enumerate_ideals(alg: &NaryAlgebra, entries: &[Scalar]) -> Vec<Ideal> {
    let d = alg.dim();
    let field = alg.field();
    let mut out = Vec::new();
    for rank in 0..=d {
        for pivots in (0..d).combinations(rank) {
            // Free positions: (row r, column c) with c > pivot_r and c not a pivot.
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &p)| {
                    let pivots = &pivots;
                    (p + 1..d).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
                })
                .collect();
            for choice in Tuples::new(entries.len(), free.len()) {
                let mut rows: Vec<Vector> = pivots.iter().map(|&p| Vector::unit(field, d, p)).collect();
                for (&(r, c), &k) in free.iter().zip(&choice) {
                    rows[r].set(c, entries[k].clone());
                }
                let space = Subspace::span(field, d, &rows).expect("rows have ambient length");
                if is_ideal(alg, &space) {
                    out.push(Ideal::new_unchecked(space));
                }
            }
        }
    }
    out
}
