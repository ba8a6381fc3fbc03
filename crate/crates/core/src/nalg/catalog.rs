//! Small named algebras used throughout the tests and the fixture corpus.

use super::algebra::NaryAlgebra;
use super::permutation::Permutation;
use crate::error::Result;
use crate::exactla::{Field, Vector};

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

pub fn abelian(field: Field, arity: usize, dim: usize) -> Result<NaryAlgebra> {
    NaryAlgebra::abelian(format!("abelian_{dim}"), field, arity, dim)
}

/// Heisenberg: `[e1,e2] = e3`.
pub fn h3(field: Field) -> Result<NaryAlgebra> {
    let e3 = Vector::unit(field, 3, 2);
    NaryAlgebra::new("h3", field, 2, 3, [(vec![0, 1], e3.clone()), (vec![1, 0], e3.scaled(&-field.one()))])
}

/// `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`.
pub fn sl2(field: Field) -> Result<NaryAlgebra> {
    let v = |xs: [i64; 3]| Vector::from_i64s(field, &xs);
    let entries = [
        (vec![0, 1], v([0, 0, 1])),
        (vec![1, 0], v([0, 0, -1])),
        (vec![2, 0], v([2, 0, 0])),
        (vec![0, 2], v([-2, 0, 0])),
        (vec![2, 1], v([0, -2, 0])),
        (vec![1, 2], v([0, 2, 0])),
    ];
    NaryAlgebra::new("sl2", field, 2, 3, entries)?.with_labels(labels(&["e", "f", "h"]))
}

/// Leibniz but not Lie: `[x,x] = y`.
pub fn lz2(field: Field) -> Result<NaryAlgebra> {
    NaryAlgebra::new("lz2", field, 2, 2, [(vec![0, 0], Vector::unit(field, 2, 1))])?.with_labels(labels(&["x", "y"]))
}

/// Ternary: `[e_i,e_j,e_k] = ε_{ijkl} e_l`.
pub fn v4(field: Field) -> Result<NaryAlgebra> {
    let mut entries = Vec::new();
    for p in Permutation::all(4) {
        let img = p.images();
        let value = Vector::unit(field, 4, img[3]).scaled(&field.from_i64(p.sign().into()));
        entries.push((img[..3].to_vec(), value));
    }
    NaryAlgebra::new("v4", field, 3, 4, entries)
}

/// One-dimensional `[x,x] = x`, which violates the fundamental identity.
pub fn idempotent_line(field: Field) -> Result<NaryAlgebra> {
    NaryAlgebra::new("idem1", field, 2, 1, [(vec![0, 0], Vector::unit(field, 1, 0))])?.with_labels(labels(&["x"]))
}
