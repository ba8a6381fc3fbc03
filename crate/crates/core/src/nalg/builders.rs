use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use itertools::Itertools;

use super::algebra::{NaryAlgebra, Tuples};
use super::morphism::AlgebraMorphism;
use super::permutation::Permutation;
use crate::error::{Error, Result};
use crate::exactla::{Field, LinearMap, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FreeKind {
    Leibniz,
    Lie,
}

impl FreeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FreeKind::Leibniz => "leibniz",
            FreeKind::Lie => "lie",
        }
    }
}

impl fmt::Display for FreeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FreeKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "leibniz" => Ok(FreeKind::Leibniz),
            "lie" => Ok(FreeKind::Lie),
            other => Err(format!("unknown variant `{other}`")),
        }
    }
}

/// Free algebra on `d` generators truncated above degree 2: `F = V ⊕ W` where
/// `W` is `V^{⊗n}` (Leibniz) or `Λ^n V` (Lie), brackets of generators land in
/// `W` and every bracket touching `W` vanishes. Returns `F` and the projection
/// `ε` onto the abelian algebra on `V`.
pub fn free_nilpotent2(
    field: Field,
    arity: usize,
    generators: usize,
    kind: FreeKind,
) -> Result<(Arc<NaryAlgebra>, AlgebraMorphism)> {
    if arity < 2 {
        return Err(Error::InvalidArity(arity));
    }
    if generators == 0 {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    let d = generators;
    let words: Vec<Vec<usize>> = match kind {
        FreeKind::Leibniz => Tuples::new(d, arity).collect(),
        FreeKind::Lie => (0..d).combinations(arity).collect(),
    };
    let dim = d + words.len();
    let mut entries = Vec::new();
    for t in Tuples::new(d, arity) {
        let value = match kind {
            FreeKind::Leibniz => {
                let w = words.binary_search(&t).expect("every tuple is a word");
                Vector::unit(field, dim, d + w)
            }
            FreeKind::Lie => {
                let mut order: Vec<usize> = (0..arity).collect();
                order.sort_by_key(|&i| t[i]);
                let sorted: Vec<usize> = order.iter().map(|&i| t[i]).collect();
                if sorted.windows(2).any(|p| p[0] == p[1]) {
                    continue;
                }
                let sign = Permutation::from_images(order).expect("a permutation").sign();
                let w = words.binary_search(&sorted).expect("increasing tuples are words");
                Vector::unit(field, dim, d + w).scaled(&field.from_i64(sign.into()))
            }
        };
        entries.push((t, value));
    }
    let mut labels: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
    labels.extend(words.iter().map(|w| format!("[{}]", w.iter().map(|&i| format!("x{}", i + 1)).join(","))));
    let name = format!("fnil2_{arity}_{d}_{kind}");
    let free = Arc::new(NaryAlgebra::new(name, field, arity, dim, entries)?.with_labels(labels)?);
    let base = Arc::new(
        NaryAlgebra::abelian(format!("ab{d}"), field, arity, d)?
            .with_labels((1..=d).map(|i| format!("x{i}")).collect())?,
    );
    let columns: Vec<Vector> =
        (0..dim).map(|j| if j < d { Vector::unit(field, d, j) } else { Vector::zeros(field, d) }).collect();
    let epsilon = AlgebraMorphism::new(free.clone(), base, LinearMap::from_columns(field, d, &columns)?)?;
    Ok((free, epsilon))
}
