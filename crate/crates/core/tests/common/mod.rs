#![allow(dead_code)]

use nary_algebra::exactla::{Field, LinearMap, Vector};
use nary_algebra::nalg::{catalog, free_nilpotent2, FreeKind, NaryAlgebra, Tuples};
use proptest::prelude::*;

pub fn f5() -> Field {
    Field::prime(5).unwrap()
}

/// Fixture algebras that satisfy the fundamental identity.
pub fn leibniz_fixtures(field: Field) -> Vec<NaryAlgebra> {
    vec![
        catalog::abelian(field, 2, 3).unwrap(),
        catalog::h3(field).unwrap(),
        catalog::sl2(field).unwrap(),
        catalog::lz2(field).unwrap(),
        catalog::v4(field).unwrap(),
        free_nilpotent2(field, 2, 2, FreeKind::Leibniz).unwrap().0.as_ref().clone(),
        free_nilpotent2(field, 3, 2, FreeKind::Leibniz).unwrap().0.as_ref().clone(),
        free_nilpotent2(field, 3, 3, FreeKind::Lie).unwrap().0.as_ref().clone(),
    ]
}

/// The same algebra written in the basis given by the columns of `p`.
pub fn transport(alg: &NaryAlgebra, p: &LinearMap) -> NaryAlgebra {
    let inv = p.inverse().expect("invertible change of basis");
    let basis: Vec<Vector> = (0..alg.dim()).map(|j| p.column(j)).collect();
    let entries: Vec<(Vec<usize>, Vector)> = Tuples::new(alg.dim(), alg.arity())
        .map(|t| {
            let args: Vec<&Vector> = t.iter().map(|&i| &basis[i]).collect();
            let v = inv.apply(&alg.bracket(&args).unwrap());
            (t, v)
        })
        .collect();
    NaryAlgebra::new(format!("{}'", alg.name()), alg.field(), alg.arity(), alg.dim(), entries).unwrap()
}

pub fn invertible(field: Field, dim: usize) -> impl Strategy<Value = LinearMap> {
    prop::collection::vec(-2i64..=2, dim * dim).prop_filter_map("singular", move |xs| {
        let rows = xs.chunks(dim.max(1)).take(dim).map(|r| Vector::from_i64s(field, r)).collect();
        let m = LinearMap::from_rows(field, dim, dim, rows).ok()?;
        m.inverse().map(|_| m)
    })
}

/// Random sparse structure constants: mostly not Leibniz.
pub fn random_algebra(field: Field) -> impl Strategy<Value = NaryAlgebra> {
    (2usize..=3, 1usize..=3).prop_flat_map(move |(arity, dim)| {
        let cells = dim.pow(arity as u32);
        prop::collection::vec(prop::option::weighted(0.2, prop::collection::vec(-1i64..=1, dim)), cells).prop_map(
            move |values| {
                let entries: Vec<(Vec<usize>, Vector)> = Tuples::new(dim, arity)
                    .zip(values)
                    .filter_map(|(t, v)| v.map(|v| (t, Vector::from_i64s(field, &v))))
                    .collect();
                NaryAlgebra::new("random", field, arity, dim, entries).unwrap()
            },
        )
    })
}

/// First violation of the fundamental identity in lexicographic order of the
/// full argument tuple, by direct expansion.
pub fn brute_force_leibniz(alg: &NaryAlgebra) -> Option<(Vec<usize>, Vector)> {
    let n = alg.arity();
    let e: Vec<Vector> = (0..alg.dim()).map(|i| alg.basis_vector(i)).collect();
    for args in Tuples::new(alg.dim(), 2 * n - 1) {
        let (outer, primes) = args.split_at(n);
        let bracket = |xs: &[usize]| alg.bracket(&xs.iter().map(|&i| &e[i]).collect::<Vec<_>>()).unwrap();
        let inner = bracket(outer);
        let mut lhs_args: Vec<&Vector> = vec![&inner];
        lhs_args.extend(primes.iter().map(|&i| &e[i]));
        let lhs = alg.bracket(&lhs_args).unwrap();
        let mut rhs = alg.zero_vector();
        for i in 0..n {
            let mut head = vec![outer[i]];
            head.extend_from_slice(primes);
            let b = bracket(&head);
            let mut slot_args: Vec<&Vector> = outer.iter().map(|&j| &e[j]).collect();
            slot_args[i] = &b;
            rhs = rhs.plus(&alg.bracket(&slot_args).unwrap());
        }
        if lhs != rhs {
            return Some((args.to_vec(), rhs.minus(&lhs)));
        }
    }
    None
}
