//! JSON file formats for algebras, cubes and morphisms.
//!
//! Bracket arguments and value keys are 1-based. Scalars are strings such as
//! `"3"`, `"-1"` or `"2/5"`. Canonical output has sorted keys, lowest-terms
//! scalars, no zero entries and brackets sorted by arguments.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use nary_algebra::exactla::{Field, LinearMap, Scalar, Subspace, Vector};
use nary_algebra::ext::{cube_from_ideals, mask_label, Cube};
use nary_algebra::nalg::{AlgebraMorphism, Ideal, NaryAlgebra};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub n: usize,
    pub dim: usize,
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub args: Vec<usize>,
    pub value: BTreeMap<usize, String>,
}

/// An algebra given inline or as a path relative to the referring file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Path(String),
    Inline(AlgebraFile),
}

pub type Matrix = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum CubeFile {
    /// Node `S` is `A / Σ_{i∈S} I_i`; each ideal is a list of spanning vectors.
    Ideals { m: usize, algebra: AlgebraRef, ideals: Vec<Vec<Vec<String>>> },
    /// Nodes keyed by subset strings (`""`, `"1"`, `"12"`), arrows by `"I->J"`.
    Explicit { m: usize, nodes: BTreeMap<String, AlgebraRef>, arrows: BTreeMap<String, Matrix> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismFile {
    pub source: AlgebraRef,
    pub target: AlgebraRef,
    pub matrix: Matrix,
}

fn parse_err(path: &Path, what: impl std::fmt::Display) -> CliError {
    CliError::Parse(format!("{}: {what}", path.display()))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| parse_err(path, e))
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("file types serialize");
    let mut out = serde_json::to_string_pretty(&value).expect("values serialize");
    out.push('\n');
    out
}

fn parse_scalar(field: Field, text: &str, path: &Path, at: &str) -> Result<Scalar, CliError> {
    field.parse_scalar(text).map_err(|e| parse_err(path, format!("{at}: {e}")))
}

fn parse_vector(field: Field, dim: usize, raw: &[String], path: &Path, at: &str) -> Result<Vector, CliError> {
    if raw.len() != dim {
        return Err(parse_err(path, format!("{at}: expected {dim} entries, found {}", raw.len())));
    }
    raw.iter()
        .enumerate()
        .map(|(i, s)| parse_scalar(field, s, path, &format!("{at}[{i}]")))
        .collect::<Result<Vec<_>, _>>()
        .map(Vector::new)
}

fn parse_matrix(
    field: Field,
    rows: usize,
    cols: usize,
    raw: &Matrix,
    path: &Path,
    at: &str,
) -> Result<LinearMap, CliError> {
    if raw.len() != rows {
        return Err(parse_err(path, format!("{at}: expected {rows} rows, found {}", raw.len())));
    }
    let data = raw
        .iter()
        .enumerate()
        .map(|(i, r)| parse_vector(field, cols, r, path, &format!("{at}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    LinearMap::from_rows(field, rows, cols, data).map_err(|e| parse_err(path, format!("{at}: {e}")))
}

fn vector_strings(v: &Vector) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn matrix_strings(m: &LinearMap) -> Matrix {
    m.row_vectors().iter().map(vector_strings).collect()
}

impl AlgebraFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        read_json(path)
    }

    /// Builds the algebra, optionally reading every scalar in `field_override`.
    pub fn to_algebra(&self, field_override: Option<Field>, path: &Path) -> Result<NaryAlgebra, CliError> {
        let field = match field_override {
            Some(f) => f,
            None => Field::parse(&self.field).map_err(|e| parse_err(path, format!("field: {e}")))?,
        };
        if self.n < 2 {
            return Err(parse_err(path, format!("n: arity must be at least 2, found {}", self.n)));
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut entries = Vec::with_capacity(self.brackets.len());
        for (k, b) in self.brackets.iter().enumerate() {
            let at = format!("brackets[{k}]");
            if b.args.len() != self.n {
                return Err(parse_err(path, format!("{at}.args: expected {} indices, found {}", self.n, b.args.len())));
            }
            if let Some(i) = b.args.iter().find(|&&i| i == 0 || i > self.dim) {
                return Err(parse_err(path, format!("{at}.args: index {i} out of range 1..={}", self.dim)));
            }
            if !seen.insert(b.args.clone()) {
                return Err(parse_err(path, format!("{at}.args: duplicate bracket {:?}", b.args)));
            }
            let mut value = Vector::zeros(field, self.dim);
            for (&i, s) in &b.value {
                if i == 0 || i > self.dim {
                    return Err(parse_err(path, format!("{at}.value: index {i} out of range 1..={}", self.dim)));
                }
                value.set(i - 1, parse_scalar(field, s, path, &format!("{at}.value.{i}"))?);
            }
            entries.push((b.args.iter().map(|i| i - 1).collect(), value));
        }
        let alg =
            NaryAlgebra::new(self.name.clone(), field, self.n, self.dim, entries).map_err(|e| parse_err(path, e))?;
        match &self.basis {
            Some(labels) => alg.with_labels(labels.clone()).map_err(|e| parse_err(path, format!("basis: {e}"))),
            None => Ok(alg),
        }
    }

    pub fn from_algebra(alg: &NaryAlgebra) -> Self {
        let brackets = alg
            .structure()
            .map(|(t, v)| BracketEntry {
                args: t.iter().map(|i| i + 1).collect(),
                value: v
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| (i + 1, x.to_string()))
                    .collect(),
            })
            .collect();
        AlgebraFile {
            name: alg.name().to_string(),
            n: alg.arity(),
            dim: alg.dim(),
            field: alg.field().to_string(),
            basis: Some(alg.labels().to_vec()),
            brackets,
        }
    }
}

fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

impl AlgebraRef {
    fn resolve(&self, field: Option<Field>, referrer: &Path) -> Result<NaryAlgebra, CliError> {
        match self {
            AlgebraRef::Path(p) => load_algebra(&base_dir(referrer).join(p), field),
            AlgebraRef::Inline(file) => file.to_algebra(field, referrer),
        }
    }
}

pub fn load_algebra(path: &Path, field: Option<Field>) -> Result<NaryAlgebra, CliError> {
    AlgebraFile::load(path)?.to_algebra(field, path)
}

/// Parses `"I->J"` into masks, rejecting anything but a covering inclusion.
fn parse_arrow_key(key: &str, m: usize) -> Option<(usize, usize)> {
    let (from, to) = key.split_once("->")?;
    let from = parse_subset(from, m)?;
    let to = parse_subset(to, m)?;
    let added = to & !from;
    (from & !to == 0 && added.count_ones() == 1).then(|| (from, added.trailing_zeros() as usize))
}

fn parse_subset(text: &str, m: usize) -> Option<usize> {
    let mut mask = 0usize;
    let mut last = 0;
    for c in text.chars() {
        let d = c.to_digit(10)? as usize;
        if d == 0 || d > m || d <= last {
            return None;
        }
        last = d;
        mask |= 1 << (d - 1);
    }
    Some(mask)
}

impl CubeFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        read_json(path)
    }

    pub fn to_cube(&self, field: Option<Field>, path: &Path) -> Result<Cube, CliError> {
        match self {
            CubeFile::Ideals { m, algebra, ideals } => {
                if ideals.len() != *m || *m == 0 {
                    return Err(parse_err(
                        path,
                        format!("ideals: expected m = {m} >= 1 ideals, found {}", ideals.len()),
                    ));
                }
                let alg = Arc::new(algebra.resolve(field, path)?);
                let mut parsed = Vec::with_capacity(*m);
                for (k, spanning) in ideals.iter().enumerate() {
                    let vectors = spanning
                        .iter()
                        .enumerate()
                        .map(|(j, v)| parse_vector(alg.field(), alg.dim(), v, path, &format!("ideals[{k}][{j}]")))
                        .collect::<Result<Vec<_>, _>>()?;
                    let space = Subspace::span(alg.field(), alg.dim(), &vectors)?;
                    parsed.push(Ideal::new(&alg, space)?);
                }
                Ok(cube_from_ideals(&alg, &parsed)?)
            }
            CubeFile::Explicit { m, nodes, arrows } => {
                if *m == 0 || *m > 9 {
                    return Err(parse_err(path, format!("m: expected 1..=9, found {m}")));
                }
                let mut resolved = Vec::with_capacity(1 << m);
                for mask in 0..1usize << m {
                    let key = mask_label(mask);
                    let node = nodes.get(&key).ok_or_else(|| parse_err(path, format!("nodes: missing \"{key}\"")))?;
                    resolved.push(Arc::new(node.resolve(field, path)?));
                }
                if let Some(extra) =
                    nodes.keys().find(|k| parse_subset(k, *m).is_none_or(|mask| mask_label(mask) != **k))
                {
                    return Err(parse_err(path, format!("nodes: unexpected key \"{extra}\"")));
                }
                let mut maps = Vec::new();
                for (key, raw) in arrows {
                    let (from, j) = parse_arrow_key(key, *m)
                        .ok_or_else(|| parse_err(path, format!("arrows: \"{key}\" is not a covering inclusion")))?;
                    let (src, dst) = (&resolved[from], &resolved[from | 1 << j]);
                    let field = src.field();
                    maps.push((
                        (from, j),
                        parse_matrix(field, dst.dim(), src.dim(), raw, path, &format!("arrows.{key}"))?,
                    ));
                }
                let expected = m << (m - 1);
                if maps.len() != expected {
                    return Err(parse_err(
                        path,
                        format!("arrows: expected {expected} covering arrows, found {}", maps.len()),
                    ));
                }
                Ok(Cube::new(resolved, maps)?)
            }
        }
    }

    /// Same content with scalars in lowest terms; references are kept as given.
    pub fn normalized(&self, path: &Path) -> Result<Self, CliError> {
        let norm_ref = |r: &AlgebraRef| -> Result<AlgebraRef, CliError> {
            Ok(match r {
                AlgebraRef::Path(p) => AlgebraRef::Path(p.clone()),
                AlgebraRef::Inline(f) => AlgebraRef::Inline(AlgebraFile::from_algebra(&f.to_algebra(None, path)?)),
            })
        };
        let norm_scalar = |s: &String| -> Result<String, CliError> {
            Ok(parse_scalar(Field::Rational, s, path, "scalar")?.to_string())
        };
        let norm_rows = |rows: &Vec<Vec<String>>| -> Result<Vec<Vec<String>>, CliError> {
            rows.iter().map(|r| r.iter().map(norm_scalar).collect()).collect()
        };
        Ok(match self {
            CubeFile::Ideals { m, algebra, ideals } => CubeFile::Ideals {
                m: *m,
                algebra: norm_ref(algebra)?,
                ideals: ideals.iter().map(norm_rows).collect::<Result<_, _>>()?,
            },
            CubeFile::Explicit { m, nodes, arrows } => CubeFile::Explicit {
                m: *m,
                nodes: nodes.iter().map(|(k, v)| Ok((k.clone(), norm_ref(v)?))).collect::<Result<_, CliError>>()?,
                arrows: arrows.iter().map(|(k, v)| Ok((k.clone(), norm_rows(v)?))).collect::<Result<_, CliError>>()?,
            },
        })
    }
}

impl MorphismFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        read_json(path)
    }

    pub fn to_morphism(&self, field: Option<Field>, path: &Path) -> Result<AlgebraMorphism, CliError> {
        let source = Arc::new(self.source.resolve(field, path)?);
        let target = Arc::new(self.target.resolve(field, path)?);
        let map = parse_matrix(source.field(), target.dim(), source.dim(), &self.matrix, path, "matrix")?;
        Ok(AlgebraMorphism::new(source, target, map)?)
    }
}

/// Which file type a JSON document is, judged by its keys.
pub enum AnyFile {
    Algebra(AlgebraFile),
    Cube(CubeFile),
    Morphism(MorphismFile),
}

pub fn load_any(path: &Path) -> Result<AnyFile, CliError> {
    let value: serde_json::Value = read_json(path)?;
    let has = |k: &str| value.get(k).is_some();
    let parsed = if has("mode") {
        serde_json::from_value(value).map(AnyFile::Cube)
    } else if has("matrix") {
        serde_json::from_value(value).map(AnyFile::Morphism)
    } else {
        serde_json::from_value(value).map(AnyFile::Algebra)
    };
    parsed.map_err(|e| parse_err(path, e))
}

#[cfg(test)]
mod tests {
    use nary_algebra::nalg::catalog;

    use super::*;

    #[test]
    fn arrow_keys() {
        assert_eq!(parse_arrow_key("->1", 2), Some((0, 0)));
        assert_eq!(parse_arrow_key("1->12", 2), Some((1, 1)));
        assert_eq!(parse_arrow_key("2->12", 2), Some((2, 0)));
        assert_eq!(parse_arrow_key("->12", 2), None);
        assert_eq!(parse_arrow_key("21->12", 2), None);
        assert_eq!(parse_arrow_key("1->3", 2), None);
        assert_eq!(parse_arrow_key("1-2", 2), None);
    }

    #[test]
    fn algebra_round_trip() {
        let f = Field::prime(7).unwrap();
        let path = Path::new("mem.json");
        for alg in [catalog::sl2(f).unwrap(), catalog::v4(f).unwrap(), catalog::lz2(f).unwrap()] {
            let file = AlgebraFile::from_algebra(&alg);
            let back = file.to_algebra(None, path).unwrap();
            assert!(back.same_structure(&alg));
            assert_eq!(back.labels(), alg.labels());
            assert_eq!(AlgebraFile::from_algebra(&back), file);
        }
    }

    #[test]
    fn field_override_reduces_scalars() {
        let file = AlgebraFile::from_algebra(&catalog::sl2(Field::Rational).unwrap());
        let alg = file.to_algebra(Some(Field::prime(3).unwrap()), Path::new("x")).unwrap();
        assert_eq!(alg.field(), Field::prime(3).unwrap());
        let f3 = Field::prime(3).unwrap();
        // [h,f] = -2f reads as f.
        assert_eq!(alg.basis_bracket(&[2, 1]).unwrap()[1], f3.one());
    }

    #[test]
    fn structural_errors_name_the_field() {
        let mut file = AlgebraFile::from_algebra(&catalog::h3(Field::Rational).unwrap());
        file.brackets[0].args = vec![1, 4];
        let err = file.to_algebra(None, Path::new("h3.json")).unwrap_err().to_string();
        assert!(err.contains("brackets[0].args: index 4 out of range 1..=3"), "{err}");
        file.brackets[0].args = vec![2, 1];
        let err = file.to_algebra(None, Path::new("h3.json")).unwrap_err().to_string();
        assert!(err.contains("duplicate bracket"), "{err}");
    }

    #[test]
    fn canonical_json_sorts_keys() {
        let text = canonical_json(&AlgebraFile::from_algebra(&catalog::lz2(Field::Rational).unwrap()));
        let keys: Vec<usize> = ["\"basis\"", "\"brackets\"", "\"dim\"", "\"field\"", "\"n\"", "\"name\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(text.ends_with("}\n"));
    }
}
