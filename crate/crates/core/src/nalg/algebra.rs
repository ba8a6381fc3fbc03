use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::exactla::{Field, Scalar, Vector};

/// A finite-dimensional vector space with an n-linear bracket, given by sparse
/// structure constants over 0-based basis indices. Absent tuples bracket to zero.
///
/// Whether the bracket satisfies the fundamental identity (or skew symmetry) is
/// never asserted by construction; [`NaryAlgebra::validate_leibniz`] and
/// [`NaryAlgebra::validate_lie`] compute it and cache the answer.
#[derive(Clone, Debug)]
pub struct NaryAlgebra {
    name: String,
    field: Field,
    arity: usize,
    dim: usize,
    labels: Vec<String>,
    structure: BTreeMap<Vec<usize>, Vector>,
    leibniz: OnceLock<AxiomReport>,
    lie: OnceLock<AxiomReport>,
}

/// Which defining identity a counterexample violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Identity {
    /// The fundamental identity, on arguments `(l_1..l_n, l'_1..l'_{n-1})`.
    Fundamental,
    /// Skew symmetry under the transposition of slots `position` and `position + 1`.
    SkewSymmetry { position: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub identity: Identity,
    /// Basis indices (0-based) of the violating tuple.
    pub args: Vec<usize>,
    /// Nonzero difference between the two sides.
    pub defect: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub ok: bool,
    pub counterexample: Option<Counterexample>,
}

impl AxiomReport {
    fn pass() -> Self {
        AxiomReport { ok: true, counterexample: None }
    }

    fn fail(c: Counterexample) -> Self {
        AxiomReport { ok: false, counterexample: Some(c) }
    }
}

impl NaryAlgebra {
    pub fn new<I>(name: impl Into<String>, field: Field, arity: usize, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Vector)>,
    {
        if arity < 2 {
            return Err(Error::InvalidArity(arity));
        }
        let mut structure = BTreeMap::new();
        for (args, value) in entries {
            if args.len() != arity {
                return Err(Error::ArityMismatch { expected: arity, found: args.len() });
            }
            if let Some(&index) = args.iter().find(|&&i| i >= dim) {
                return Err(Error::IndexOutOfRange { index, dim });
            }
            if value.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: value.len() });
            }
            if let Some(x) = value.iter().find(|x| x.field() != field) {
                return Err(Error::FieldMismatch(field.to_string(), x.field().to_string()));
            }
            if structure.contains_key(&args) {
                return Err(Error::DuplicateBracket(args));
            }
            structure.insert(args, value);
        }
        structure.retain(|_, v| !v.is_zero());
        Ok(NaryAlgebra {
            name: name.into(),
            field,
            arity,
            dim,
            labels: (1..=dim).map(|i| format!("e{i}")).collect(),
            structure,
            leibniz: OnceLock::new(),
            lie: OnceLock::new(),
        })
    }

    /// The algebra with zero bracket on `field^dim`.
    pub fn abelian(name: impl Into<String>, field: Field, arity: usize, dim: usize) -> Result<Self> {
        NaryAlgebra::new(name, field, arity, dim, std::iter::empty())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Nonzero structure constants, sorted by argument tuple.
    pub fn structure(&self) -> impl Iterator<Item = (&[usize], &Vector)> {
        self.structure.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn structure_len(&self) -> usize {
        self.structure.len()
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.is_empty()
    }

    pub fn zero_vector(&self) -> Vector {
        Vector::zeros(self.field, self.dim)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        Vector::unit(self.field, self.dim, i)
    }

    /// Bracket of basis vectors, `None` when it vanishes.
    pub fn basis_bracket(&self, args: &[usize]) -> Option<&Vector> {
        self.structure.get(args)
    }

    /// n-linear extension of the structure constants.
    pub fn bracket(&self, args: &[&Vector]) -> Result<Vector> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: args.len() });
        }
        if let Some(a) = args.iter().find(|a| a.len() != self.dim) {
            return Err(Error::DimensionMismatch { expected: self.dim, found: a.len() });
        }
        Ok(self.eval(args))
    }

    pub(crate) fn eval(&self, args: &[&Vector]) -> Vector {
        let mut out = self.zero_vector();
        if self.structure.is_empty() {
            return out;
        }
        let supports: Vec<Vec<usize>> = args.iter().map(|a| a.support()).collect();
        let combos = supports.iter().try_fold(1usize, |acc, s| acc.checked_mul(s.len())).unwrap_or(usize::MAX);
        if combos == 0 {
            return out;
        }
        let one = self.field.one();
        // Product of the argument coordinates; `None` stands for one.
        let coefficient = |t: &[usize]| -> Option<Scalar> {
            let mut c: Option<Scalar> = None;
            for (a, &i) in args.iter().zip(t) {
                let x = &a[i];
                if !x.is_one() {
                    c = Some(match c {
                        None => x.clone(),
                        Some(c) => &c * x,
                    });
                }
            }
            c
        };
        if combos <= self.structure.len() {
            for t in supports.iter().map(|s| s.iter().copied()).multi_cartesian_product() {
                if let Some(val) = self.structure.get(&t) {
                    match coefficient(&t) {
                        None => out.add_scaled(&one, val),
                        Some(c) => out.add_scaled(&c, val),
                    }
                }
            }
        } else {
            for (t, val) in &self.structure {
                if t.iter().zip(args).all(|(&i, a)| !a[i].is_zero()) {
                    match coefficient(t) {
                        None => out.add_scaled(&one, val),
                        Some(c) => out.add_scaled(&c, val),
                    }
                }
            }
        }
        out
    }

    /// Bracket with `v` in `slot` and basis vectors `others` (n-1 indices) elsewhere.
    pub(crate) fn eval_slot(&self, slot: usize, v: &Vector, others: &[usize]) -> Vector {
        let mut out = self.zero_vector();
        let mut t: Vec<usize> = Vec::with_capacity(self.arity);
        t.extend_from_slice(&others[..slot]);
        t.push(0);
        t.extend_from_slice(&others[slot..]);
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            t[slot] = k;
            if let Some(val) = self.structure.get(&t) {
                out.add_scaled(c, val);
            }
        }
        out
    }

    /// All basis tuples of length `len`, lexicographically.
    pub(crate) fn tuples(&self, len: usize) -> Tuples {
        Tuples::new(self.dim, len)
    }

    /// Checks the fundamental identity
    /// `[[l_1..l_n], l'_1..l'_{n-1}] = Σ_i [l_1.., [l_i, l'_1..l'_{n-1}], ..l_n]`
    /// on every basis tuple, which suffices by n-linearity.
    pub fn validate_leibniz(&self) -> &AxiomReport {
        self.leibniz.get_or_init(|| self.check_fundamental_identity())
    }

    pub fn is_leibniz(&self) -> bool {
        self.validate_leibniz().ok
    }

    /// Fundamental identity plus skew symmetry. Skew symmetry is checked on
    /// adjacent transpositions only; they generate `S_n` and the sign is multiplicative.
    pub fn validate_lie(&self) -> &AxiomReport {
        self.lie.get_or_init(|| {
            let lb = self.validate_leibniz();
            if !lb.ok {
                return lb.clone();
            }
            self.check_skew_symmetry()
        })
    }

    pub fn is_lie(&self) -> bool {
        self.validate_lie().ok
    }

    fn check_fundamental_identity(&self) -> AxiomReport {
        // Both sides vanish unless the trailing arguments `l'` are the tail of
        // some nonzero structure constant `[a, l']`; for such `l'` the sides can
        // only be nonzero when `[l_1..l_n] != 0` or some `l_i` is such an `a`.
        let n = self.arity;
        let mut heads: BTreeMap<&[usize], Vec<usize>> = BTreeMap::new();
        for t in self.structure.keys() {
            heads.entry(&t[1..]).or_default().push(t[0]);
        }
        let mut candidates: BTreeSet<Vec<usize>> = BTreeSet::new();
        for (primes, starts) in &heads {
            let mut push = |outer: &[usize]| {
                let mut args = outer.to_vec();
                args.extend_from_slice(primes);
                candidates.insert(args);
            };
            for outer in self.structure.keys() {
                push(outer);
            }
            for i in 0..n {
                for &a in starts {
                    for mut rest in self.tuples(n - 1) {
                        rest.insert(i, a);
                        push(&rest);
                    }
                }
            }
        }
        for args in candidates {
            let (outer, primes) = args.split_at(n);
            let lhs = match self.basis_bracket(outer) {
                Some(b) => self.eval_slot(0, b, primes),
                None => self.zero_vector(),
            };
            let mut rhs = self.zero_vector();
            let mut head = Vec::with_capacity(n);
            for i in 0..n {
                head.clear();
                head.push(outer[i]);
                head.extend_from_slice(primes);
                let Some(inner) = self.basis_bracket(&head) else {
                    continue;
                };
                let mut others = outer.to_vec();
                others.remove(i);
                rhs = rhs.plus(&self.eval_slot(i, inner, &others));
            }
            if lhs != rhs {
                return AxiomReport::fail(Counterexample {
                    identity: Identity::Fundamental,
                    args,
                    defect: rhs.minus(&lhs),
                });
            }
        }
        AxiomReport::pass()
    }

    fn check_skew_symmetry(&self) -> AxiomReport {
        let zero = self.zero_vector();
        for t in self.tuples(self.arity) {
            for i in 0..self.arity - 1 {
                let mut s = t.clone();
                s.swap(i, i + 1);
                let a = self.basis_bracket(&t).unwrap_or(&zero);
                let b = self.basis_bracket(&s).unwrap_or(&zero);
                let sum = a.plus(b);
                if !sum.is_zero() {
                    return AxiomReport::fail(Counterexample {
                        identity: Identity::SkewSymmetry { position: i },
                        args: t,
                        defect: sum,
                    });
                }
            }
        }
        AxiomReport::pass()
    }

    /// Renders `v` as a linear combination of basis labels, e.g. `2*e1 - e3`.
    pub fn format_vector(&self, v: &Vector) -> String {
        format_combination(&self.labels, v)
    }

    pub fn format_tuple(&self, args: &[usize]) -> String {
        format!("({})", args.iter().map(|&i| self.labels[i].as_str()).join(","))
    }

    /// Same bracket, same basis.
    pub fn same_structure(&self, other: &NaryAlgebra) -> bool {
        self.field == other.field
            && self.arity == other.arity
            && self.dim == other.dim
            && self.structure == other.structure
    }
}

pub(crate) fn format_combination(labels: &[String], v: &Vector) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let magnitude = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !magnitude.is_one() {
            out.push_str(&format!("{magnitude}*"));
        }
        out.push_str(&labels[i]);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for NaryAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (n={}, dim={}, field={})", self.name, self.arity, self.dim, self.field)?;
        for (t, v) in &self.structure {
            writeln!(f, "  [{}] = {}", t.iter().map(|&i| self.labels[i].as_str()).join(","), self.format_vector(v))?;
        }
        Ok(())
    }
}

/// Odometer over `{0..base}^len` in lexicographic order. `len = 0` yields one empty tuple.
#[derive(Clone, Debug)]
pub struct Tuples {
    base: usize,
    next: Option<Vec<usize>>,
}

impl Tuples {
    pub fn new(base: usize, len: usize) -> Self {
        let next = if base == 0 && len > 0 { None } else { Some(vec![0; len]) };
        Tuples { base, next }
    }
}

impl Iterator for Tuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut k = succ.len();
        while k > 0 {
            k -= 1;
            succ[k] += 1;
            if succ[k] < self.base {
                self.next = Some(succ);
                return Some(current);
            }
            succ[k] = 0;
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nalg::catalog;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn fundamental_identity_examples() {
        assert!(catalog::abelian(q(), 2, 3).unwrap().is_leibniz());
        assert!(catalog::lz2(q()).unwrap().is_leibniz());
        let idem = catalog::idempotent_line(q()).unwrap();
        let report = idem.validate_leibniz();
        assert!(!report.ok);
        let c = report.counterexample.as_ref().unwrap();
        assert_eq!(c.identity, Identity::Fundamental);
        assert_eq!(c.defect, Vector::from_i64s(q(), &[1]));
    }

    #[test]
    fn skew_symmetry_examples() {
        assert!(catalog::h3(q()).unwrap().is_lie());
        assert!(catalog::sl2(q()).unwrap().is_lie());
        assert!(catalog::v4(q()).unwrap().is_lie());
        let lz2 = catalog::lz2(q()).unwrap();
        let report = lz2.validate_lie();
        let c = report.counterexample.as_ref().unwrap();
        assert_eq!(c.identity, Identity::SkewSymmetry { position: 0 });
        assert_eq!(lz2.format_tuple(&c.args), "(x,x)");
    }

    #[test]
    fn bracket_is_multilinear() {
        let h3 = catalog::h3(q()).unwrap();
        let e = |i| h3.basis_vector(i);
        assert_eq!(h3.bracket(&[&e(0), &e(1)]).unwrap(), e(2));
        assert!(h3.bracket(&[&h3.zero_vector(), &e(1)]).unwrap().is_zero());
        let s = e(0).plus(&e(1));
        assert!(h3.bracket(&[&s, &s]).unwrap().is_zero());
        assert!(h3.bracket(&[&s]).is_err());
        assert!(h3.bracket(&[&s, &Vector::zeros(q(), 2)]).is_err());
    }

    #[test]
    fn construction_rejects_bad_entries() {
        let f = q();
        let e = Vector::unit(f, 2, 0);
        assert!(NaryAlgebra::new("a", f, 1, 2, []).is_err());
        assert_eq!(
            NaryAlgebra::new("a", f, 2, 2, [(vec![0, 2], e.clone())]).unwrap_err(),
            Error::IndexOutOfRange { index: 2, dim: 2 }
        );
        assert!(NaryAlgebra::new("a", f, 2, 2, [(vec![0, 0], e.clone()), (vec![0, 0], e)]).is_err());
        let g = Field::prime(5).unwrap();
        assert!(NaryAlgebra::new("a", f, 2, 1, [(vec![0, 0], Vector::unit(g, 1, 0))]).is_err());
    }

    #[test]
    fn formatting() {
        let f = q();
        let h3 = catalog::h3(f).unwrap();
        assert_eq!(h3.format_vector(&Vector::from_i64s(f, &[2, 0, -1])), "2*e1 - e3");
        assert_eq!(h3.format_vector(&h3.zero_vector()), "0");
        assert_eq!(h3.format_vector(&Vector::from_i64s(f, &[-1, 1, 0])), "-e1 + e2");
    }

    #[test]
    fn tuples_enumerate_lexicographically() {
        let all: Vec<_> = Tuples::new(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(Tuples::new(3, 0).count(), 1);
        assert_eq!(Tuples::new(0, 2).count(), 0);
    }
}
