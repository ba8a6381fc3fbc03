use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{LinearMap, QuotientSpace, Vector};
use crate::nalg::quotient_by;
use crate::nalg::{AlgebraMorphism, Ideal, NaryAlgebra};

/// Subsets of `{1..m}` are bitmasks: element `i` is bit `i - 1`.
pub type Mask = usize;

/// An m-fold arrow: a commutative cube of algebras indexed by subsets of
/// `{1..m}`, with a morphism `A_I → A_{I∪{j}}` for each covering inclusion.
#[derive(Clone, Debug)]
pub struct Cube {
    m: usize,
    nodes: Vec<Arc<NaryAlgebra>>,
    arrows: BTreeMap<(Mask, usize), AlgebraMorphism>,
}

/// Renders a mask as its sorted 1-based digits, `""` for the empty set.
pub fn mask_label(mask: Mask) -> String {
    (0..usize::BITS as usize).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect()
}

impl Cube {
    /// Builds a cube from its `2^m` nodes and a map for each covering arrow
    /// `(I, j)`, meaning `A_I → A_{I∪{j}}` with `j` a 0-based element not in `I`.
    pub fn new(
        nodes: Vec<Arc<NaryAlgebra>>,
        maps: impl IntoIterator<Item = ((Mask, usize), LinearMap)>,
    ) -> Result<Self> {
        let m = nodes.len().trailing_zeros() as usize;
        if nodes.len() < 2 || nodes.len() != 1 << m {
            return Err(Error::MalformedCube(format!("expected 2^m nodes with m >= 1, found {}", nodes.len())));
        }
        let mut arrows = BTreeMap::new();
        for ((mask, j), map) in maps {
            if mask >= nodes.len() || j >= m || mask >> j & 1 == 1 {
                return Err(Error::MalformedCube(format!("no covering arrow {{{}}} -> +{}", mask_label(mask), j + 1)));
            }
            let f = AlgebraMorphism::new(nodes[mask].clone(), nodes[mask | 1 << j].clone(), map).map_err(|e| {
                Error::MalformedCube(format!("arrow {}->{}: {e}", mask_label(mask), mask_label(mask | 1 << j)))
            })?;
            if arrows.insert((mask, j), f).is_some() {
                return Err(Error::MalformedCube(format!(
                    "duplicate arrow {}->{}",
                    mask_label(mask),
                    mask_label(mask | 1 << j)
                )));
            }
        }
        let cube = Cube { m, nodes, arrows };
        cube.check_complete()?;
        cube.check_functorial()?;
        Ok(cube)
    }

    fn check_complete(&self) -> Result<()> {
        for mask in 0..self.nodes.len() {
            for j in (0..self.m).filter(|j| mask >> j & 1 == 0) {
                if !self.arrows.contains_key(&(mask, j)) {
                    return Err(Error::MalformedCube(format!(
                        "missing arrow {}->{}",
                        mask_label(mask),
                        mask_label(mask | 1 << j)
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_functorial(&self) -> Result<()> {
        for mask in 0..self.nodes.len() {
            for j in 0..self.m {
                for k in j + 1..self.m {
                    if mask >> j & 1 == 1 || mask >> k & 1 == 1 {
                        continue;
                    }
                    let via_j = self.arrow(mask | 1 << j, k).map().compose(self.arrow(mask, j).map())?;
                    let via_k = self.arrow(mask | 1 << k, j).map().compose(self.arrow(mask, k).map())?;
                    if via_j != via_k {
                        return Err(Error::MalformedCube(format!(
                            "square at {{{}}} in directions {} and {} does not commute",
                            mask_label(mask),
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn node(&self, mask: Mask) -> &Arc<NaryAlgebra> {
        &self.nodes[mask]
    }

    pub fn nodes(&self) -> &[Arc<NaryAlgebra>] {
        &self.nodes
    }

    /// The initial node `A_∅`.
    pub fn base(&self) -> &Arc<NaryAlgebra> {
        &self.nodes[0]
    }

    pub fn full_mask(&self) -> Mask {
        self.nodes.len() - 1
    }

    /// Covering arrow `A_I → A_{I∪{j}}`, `j` 0-based.
    pub fn arrow(&self, mask: Mask, j: usize) -> &AlgebraMorphism {
        &self.arrows[&(mask, j)]
    }

    pub fn arrows(&self) -> impl Iterator<Item = (&(Mask, usize), &AlgebraMorphism)> {
        self.arrows.iter()
    }

    /// Composite linear map `A_I → A_J` for `I ⊆ J`.
    pub fn map_between(&self, from: Mask, to: Mask) -> LinearMap {
        assert_eq!(from & !to, 0, "not an inclusion");
        let field = self.nodes[from].field();
        let mut map = LinearMap::identity(field, self.nodes[from].dim());
        let mut at = from;
        for j in 0..self.m {
            if to >> j & 1 == 1 && at >> j & 1 == 0 {
                map = self.arrow(at, j).map().compose(&map).expect("composable");
                at |= 1 << j;
            }
        }
        map
    }

    /// `K[f_i]` for the arrow `A_∅ → A_{i}`, `i` 0-based.
    pub fn direction_kernel(&self, i: usize) -> Ideal {
        Ideal::new_unchecked(self.arrow(0, i).kernel())
    }
}

/// Outcome of the extension test; `failing` is the first subset whose
/// comparison map into the limit is not surjective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    pub ok: bool,
    pub failing: Option<Mask>,
}

/// Whether every `A_I → lim_{J ⊋ I} A_J` is surjective, for `I` a proper subset.
pub fn is_extension(cube: &Cube) -> ExtensionReport {
    for mask in 0..cube.full_mask() {
        if !comparison_surjective(cube, mask) {
            return ExtensionReport { ok: false, failing: Some(mask) };
        }
    }
    ExtensionReport { ok: true, failing: None }
}

fn comparison_surjective(cube: &Cube, from: Mask) -> bool {
    let field = cube.base().field();
    let above: Vec<Mask> = (0..=cube.full_mask()).filter(|&j| j != from && j & from == from).collect();
    let mut offset = BTreeMap::new();
    let mut total = 0;
    for &j in &above {
        offset.insert(j, total);
        total += cube.node(j).dim();
    }
    // Limit: tuples (x_J) with f x_J = x_{J∪{k}} along every covering arrow inside the up-set.
    let mut constraints = Vec::new();
    for &j in &above {
        for k in (0..cube.m()).filter(|k| j >> k & 1 == 0) {
            let target = j | 1 << k;
            let f = cube.arrow(j, k).map();
            for (r, row) in f.row_vectors().iter().enumerate() {
                let mut c = Vector::zeros(field, total);
                for (col, x) in row.iter().enumerate() {
                    c.set(offset[&j] + col, x.clone());
                }
                c.set(offset[&target] + r, -field.one());
                constraints.push(c);
            }
        }
    }
    let limit_dim = if constraints.is_empty() {
        total
    } else {
        let rows = constraints.len();
        LinearMap::from_rows(field, rows, total, constraints).expect("consistent constraint rows").kernel().rank()
    };
    let source_dim = cube.node(from).dim();
    let mut comparison_rows = Vec::with_capacity(total);
    for &j in &above {
        comparison_rows.extend(cube.map_between(from, j).row_vectors().iter().cloned());
    }
    let comparison = LinearMap::from_rows(field, total, source_dim, comparison_rows).expect("stacked maps");
    comparison.rank() == limit_dim
}

/// The cube with `A_S = A / Σ_{i∈S} I_i` and induced projections.
pub fn cube_from_ideals(alg: &Arc<NaryAlgebra>, ideals: &[Ideal]) -> Result<Cube> {
    let m = ideals.len();
    if m == 0 {
        return Err(Error::MalformedCube("at least one ideal is required".into()));
    }
    let mut checked = Vec::with_capacity(m);
    for ideal in ideals {
        checked.push(Ideal::new(alg, ideal.space().clone())?);
    }
    let mut nodes = Vec::with_capacity(1 << m);
    let mut spaces = Vec::with_capacity(1 << m);
    for mask in 0..1usize << m {
        let mut sum = Ideal::zero(alg);
        for (i, ideal) in checked.iter().enumerate() {
            if mask >> i & 1 == 1 {
                sum = sum.sum(ideal)?;
            }
        }
        let (q, _) = quotient_by(alg, sum.space())?;
        let name = if mask == 0 { alg.name().to_string() } else { format!("{}/N{}", alg.name(), mask_label(mask)) };
        nodes.push(Arc::new(Arc::unwrap_or_clone(q).with_name(name)));
        spaces.push(QuotientSpace::new(alg.dim(), sum.space())?);
    }
    // Induced projections between quotients respect brackets and commute.
    let mut arrows = BTreeMap::new();
    for mask in 0..1usize << m {
        for j in (0..m).filter(|j| mask >> j & 1 == 0) {
            let (src, dst) = (&spaces[mask], &spaces[mask | 1 << j]);
            let field = alg.field();
            let columns: Vec<Vector> =
                (0..src.dim()).map(|k| dst.project(&src.lift(&Vector::unit(field, src.dim(), k)))).collect();
            let map = LinearMap::from_columns(field, dst.dim(), &columns)?;
            let f = AlgebraMorphism::new_unchecked(nodes[mask].clone(), nodes[mask | 1 << j].clone(), map);
            arrows.insert((mask, j), f);
        }
    }
    Ok(Cube { m, nodes, arrows })
}
