use std::sync::Arc;

use itertools::Itertools;

use super::algebra::{NaryAlgebra, Tuples};
use super::commutator::{full_commutator, CommutatorKind};
use super::morphism::{quotient_algebra, AlgebraMorphism};
use crate::error::{Error, Result};
use crate::exactla::Vector;

/// `A / [A,…,A]` with its projection. The result has zero bracket.
pub fn abelianization(alg: &Arc<NaryAlgebra>) -> Result<(Arc<NaryAlgebra>, AlgebraMorphism)> {
    let c = full_commutator(alg, CommutatorKind::Leibniz);
    let (q, p) = quotient_algebra(alg, &c)?;
    let q = Arc::new(Arc::unwrap_or_clone(q).with_name(format!("ab({})", alg.name())));
    let p = AlgebraMorphism::new(alg.clone(), q.clone(), p.map().clone())?;
    Ok((q, p))
}

/// `A / ⟨A,…,A⟩`, the largest Lie quotient of a Leibniz algebra.
pub fn liesation(alg: &Arc<NaryAlgebra>) -> Result<(Arc<NaryAlgebra>, AlgebraMorphism)> {
    if !alg.is_leibniz() {
        return Err(Error::NotLeibniz(alg.name().to_string()));
    }
    let c = full_commutator(alg, CommutatorKind::Relative);
    let (q, p) = quotient_algebra(alg, &c)?;
    let q = Arc::new(Arc::unwrap_or_clone(q).with_name(format!("lie({})", alg.name())));
    if !q.is_lie() {
        return Err(Error::NotLie(q.name().to_string()));
    }
    let p = AlgebraMorphism::new(alg.clone(), q.clone(), p.map().clone())?;
    Ok((q, p))
}

/// The Leibniz 2-algebra on `A^{⊗(n-1)}` with
/// `[a_1⊗…⊗a_{n-1}, b] = Σ_i a_1⊗…⊗[a_i, b_1,…,b_{n-1}]⊗…⊗a_{n-1}`.
/// Basis tensors are ordered lexicographically.
pub fn daletskii(alg: &NaryAlgebra) -> Result<NaryAlgebra> {
    if !alg.is_leibniz() {
        return Err(Error::NotLeibniz(alg.name().to_string()));
    }
    let k = alg.arity() - 1;
    let d = alg.dim();
    let tensor_dim = d.pow(k as u32);
    let index = |t: &[usize]| t.iter().fold(0, |acc, &i| acc * d + i);
    let field = alg.field();
    let basis: Vec<Vec<usize>> = Tuples::new(d, k).collect();
    let mut entries = Vec::new();
    let mut args = Vec::with_capacity(alg.arity());
    for a in &basis {
        for b in &basis {
            let mut value = Vector::zeros(field, tensor_dim);
            for i in 0..k {
                args.clear();
                args.push(a[i]);
                args.extend_from_slice(b);
                let Some(inner) = alg.basis_bracket(&args) else {
                    continue;
                };
                let mut t = a.clone();
                for (j, c) in inner.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    t[i] = j;
                    let slot = index(&t);
                    let updated = &value[slot] + c;
                    value.set(slot, updated);
                }
            }
            if !value.is_zero() {
                entries.push((vec![index(a), index(b)], value));
            }
        }
    }
    let labels = basis.iter().map(|t| t.iter().map(|&i| alg.labels()[i].as_str()).join("⊗")).collect();
    NaryAlgebra::new(format!("D({})", alg.name()), field, 2, tensor_dim, entries)?.with_labels(labels)
}
