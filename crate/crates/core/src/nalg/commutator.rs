use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use super::algebra::NaryAlgebra;
use super::ideal::{close, Ideal};
use super::permutation::Permutation;
use crate::error::{Error, Result};
use crate::exactla::{Echelon, Vector};

/// Which commutator ideal to build from `N_1, …, N_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CommutatorKind {
    /// Generated by `[x_{τ(1)},…,x_{τ(n)}]`, `x_i ∈ N_i`, over every slot assignment τ.
    Leibniz,
    /// Generated by `[x_1,…,x_n]`, `x_i ∈ N_i`.
    Lie,
    /// Generated by `⟨x_1,…,x_n⟩_σ = [x_1,…,x_n] - sgn(σ)[x_{σ(1)},…,x_{σ(n)}]`.
    Relative,
}

impl CommutatorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CommutatorKind::Leibniz => "leibniz",
            CommutatorKind::Lie => "lie",
            CommutatorKind::Relative => "relative",
        }
    }
}

impl fmt::Display for CommutatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CommutatorKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "leibniz" => Ok(CommutatorKind::Leibniz),
            "lie" => Ok(CommutatorKind::Lie),
            "relative" => Ok(CommutatorKind::Relative),
            other => Err(format!("unknown commutator variant `{other}`")),
        }
    }
}

/// The commutator ideal of `ideals` (one per slot) of `alg`.
pub fn commutator(alg: &NaryAlgebra, ideals: &[&Ideal], kind: CommutatorKind) -> Result<Ideal> {
    let n = alg.arity();
    if ideals.len() != n {
        return Err(Error::ArityMismatch { expected: n, found: ideals.len() });
    }
    if let Some(i) = ideals.iter().find(|i| i.space().ambient_dim() != alg.dim()) {
        return Err(Error::DimensionMismatch { expected: alg.dim(), found: i.space().ambient_dim() });
    }
    let generators = generators(alg, ideals, kind);
    let seed = generators.clone().finish().basis().to_vec();
    Ok(close(alg, generators, seed))
}

/// `commutator(alg, [whole; n], kind)`.
pub fn full_commutator(alg: &NaryAlgebra, kind: CommutatorKind) -> Ideal {
    let whole = Ideal::whole(alg);
    let slots = vec![&whole; alg.arity()];
    commutator(alg, &slots, kind).expect("slots match the algebra")
}

fn generators(alg: &NaryAlgebra, ideals: &[&Ideal], kind: CommutatorKind) -> Echelon {
    let n = alg.arity();
    let dim = alg.dim();
    let mut span = Echelon::new(alg.field(), dim);
    if alg.is_abelian() || ideals.iter().any(|i| i.is_zero()) {
        return span;
    }
    // Distinct argument vectors, and for each slot the ids of its ideal's basis.
    let mut pool: Vec<&Vector> = Vec::new();
    let slot_ids: Vec<Vec<usize>> = ideals
        .iter()
        .map(|i| {
            i.space()
                .basis()
                .iter()
                .map(|v| match pool.iter().position(|p| *p == v) {
                    Some(id) => id,
                    None => {
                        pool.push(v);
                        pool.len() - 1
                    }
                })
                .collect()
        })
        .collect();
    let eval = |t: &[usize]| alg.eval(&t.iter().map(|&id| pool[id]).collect::<Vec<_>>());

    if kind == CommutatorKind::Lie {
        for t in slot_ids.iter().map(|ids| ids.iter().copied()).multi_cartesian_product() {
            if span.rank() == dim {
                break;
            }
            span.insert(eval(&t));
        }
        return span;
    }

    // The admissible tuples form a union over slot assignments, closed under
    // permuting positions.
    let mut assignments: Vec<Vec<&Vec<usize>>> = Vec::new();
    for tau in Permutation::all(n) {
        let a = tau.apply(&slot_ids.iter().collect::<Vec<_>>());
        if !assignments.contains(&a) {
            assignments.push(a);
        }
    }
    let sigmas: Vec<Permutation> = Permutation::all(n).into_iter().filter(|s| !s.is_identity()).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for slots in assignments {
        for t in slots.iter().map(|ids| ids.iter().copied()).multi_cartesian_product() {
            if span.rank() == dim {
                return span;
            }
            match kind {
                CommutatorKind::Relative => {
                    // Over an orbit the generators span {sgn(σ)[t∘σ] - [t]}, so one
                    // sorted representative suffices.
                    let mut rep = t;
                    rep.sort_unstable();
                    if !seen.insert(rep.clone()) {
                        continue;
                    }
                    let base = eval(&rep);
                    for sigma in &sigmas {
                        let permuted = eval(&sigma.apply(&rep));
                        let g = if sigma.sign() == 1 { permuted.minus(&base) } else { permuted.plus(&base) };
                        if !g.is_zero() {
                            span.insert(g);
                        }
                    }
                }
                _ => {
                    if seen.insert(t.clone()) {
                        let v = eval(&t);
                        if !v.is_zero() {
                            span.insert(v);
                        }
                    }
                }
            }
        }
    }
    span
}

/// `⟨L,…,L⟩` from the spanning set `[…, a, b, …] + […, b, a, …]` over basis
/// tuples and adjacent positions: brackets with two equal neighbouring
/// arguments, polarized.
pub fn relative_commutator_adjacent(alg: &NaryAlgebra) -> Ideal {
    let n = alg.arity();
    let mut span = Echelon::new(alg.field(), alg.dim());
    let zero = alg.zero_vector();
    for t in alg.tuples(n) {
        for i in 0..n - 1 {
            if t[i] > t[i + 1] {
                continue;
            }
            let mut s = t.clone();
            s.swap(i, i + 1);
            let a = alg.basis_bracket(&t).unwrap_or(&zero);
            let b = alg.basis_bracket(&s).unwrap_or(&zero);
            span.insert(a.plus(b));
        }
    }
    let seed = span.clone().finish().basis().to_vec();
    close(alg, span, seed)
}
