use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use nary_algebra::exactla::{Field, Subspace, Vector};
use nary_algebra::ext::{
    central_obstruction, centralize1, is_central_oracle, is_extension, mask_label, GaloisStructure,
};
use nary_algebra::homology::{compare_uce, h2_via_uce, hopf_evaluate, truncated_free_kind, uce, UceKind};
use nary_algebra::nalg::{
    abelianization, catalog, daletskii, free_nilpotent2, full_commutator, liesation, AlgebraMorphism, AxiomReport,
    CommutatorKind, FreeKind, Identity, NaryAlgebra,
};
use serde_json::{json, Value};

use crate::files::{canonical_json, load_algebra, load_any, AlgebraFile, AnyFile, CubeFile, MorphismFile};
use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "nary", version, about = "Exact computations with Leibniz and Lie n-algebras")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Read every scalar in this field instead of the one named in the file (e.g. F5).
    #[arg(long, global = true, value_name = "FIELD", value_parser = parse_field)]
    pub field: Option<Field>,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_field(text: &str) -> Result<Field, String> {
    Field::parse(text).map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate the fundamental identity (and skew symmetry with --lie).
    Check {
        algebra: PathBuf,
        #[arg(long)]
        lie: bool,
    },
    /// Commutator ideal of the algebra with itself in every slot.
    Commutator {
        algebra: PathBuf,
        #[arg(long)]
        variant: CommutatorKind,
    },
    /// Quotient by the full commutator.
    Abelianize {
        algebra: PathBuf,
        /// Also write the resulting algebra file here.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Quotient by the full relative commutator.
    Liesate {
        algebra: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Leibniz 2-algebra on the (n-1)-st tensor power.
    Daletskii {
        algebra: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Whether a cube is an extension.
    Extension { cube: PathBuf },
    /// Centrality obstruction of an extension.
    Central {
        cube: PathBuf,
        #[arg(long)]
        galois: GaloisStructure,
        /// Also run the kernel-pair definition.
        #[arg(long)]
        oracle: bool,
    },
    /// Divide the domain of a 1-fold extension by its obstruction.
    Centralize {
        cube: PathBuf,
        #[arg(long)]
        galois: GaloisStructure,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Evaluate the Hopf-type quotient on an extension.
    Hopf {
        cube: PathBuf,
        #[arg(long)]
        galois: GaloisStructure,
    },
    /// Universal central extension of a perfect algebra.
    Uce {
        algebra: PathBuf,
        #[arg(long)]
        variant: UceKind,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Dimension of the kernel of the universal central extension.
    H2 {
        algebra: PathBuf,
        #[arg(long)]
        variant: UceKind,
    },
    /// Compare the Leibniz and Lie universal central extensions.
    CompareUce { algebra: PathBuf },
    /// Validate a morphism file and report its kernel and image.
    Morphism { file: PathBuf },
    /// Print an algebra, cube or morphism file in canonical form.
    Normalize { file: PathBuf },
    /// Print a built-in algebra as a file: abelian, h3, sl2, lz2, v4, idem1 or fnil2.
    Fixture {
        name: String,
        /// Arity (abelian, fnil2).
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Dimension or number of generators (abelian, fnil2).
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// leibniz or lie (fnil2).
        #[arg(long, default_value = "leibniz")]
        variant: FreeKind,
    },
}

/// Text for stdout and remarks for stderr.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub notes: Vec<String>,
}

impl Output {
    fn text(stdout: String) -> Self {
        Output { stdout, notes: Vec::new() }
    }
}

fn vector_json(v: &Vector) -> Value {
    Value::from(v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn space_json(alg: &NaryAlgebra, space: &Subspace) -> Value {
    json!({
        "dim": space.rank(),
        "basis": space.basis().iter().map(vector_json).collect::<Vec<_>>(),
        "labels": space.basis().iter().map(|v| alg.format_vector(v)).collect::<Vec<_>>(),
    })
}

fn basis_text(alg: &NaryAlgebra, space: &Subspace) -> String {
    let mut out = format!("dim {}", space.rank());
    if !space.is_zero() {
        let labels: Vec<String> = space.basis().iter().map(|v| alg.format_vector(v)).collect();
        write!(out, "; basis: {}", labels.join(", ")).unwrap();
    }
    out
}

fn line(value: Value) -> String {
    let mut s = value.to_string();
    s.push('\n');
    s
}

fn write_algebra(alg: &NaryAlgebra, output: &Option<PathBuf>) -> Result<(), CliError> {
    if let Some(path) = output {
        fs::write(path, canonical_json(&AlgebraFile::from_algebra(alg)))
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn load_cube(path: &Path, field: Option<Field>) -> Result<nary_algebra::ext::Cube, CliError> {
    CubeFile::load(path)?.to_cube(field, path)
}

fn report_text(alg: &NaryAlgebra, report: &AxiomReport) -> String {
    match &report.counterexample {
        None => "ok".to_string(),
        Some(c) => match c.identity {
            Identity::Fundamental => format!(
                "FAIL (fundamental identity at {}; defect {})",
                alg.format_tuple(&c.args),
                alg.format_vector(&c.defect)
            ),
            Identity::SkewSymmetry { .. } => format!("FAIL (skew symmetry at {})", alg.format_tuple(&c.args)),
        },
    }
}

fn report_json(alg: &NaryAlgebra, report: &AxiomReport) -> Value {
    match &report.counterexample {
        None => json!({ "ok": true }),
        Some(c) => json!({
            "ok": false,
            "identity": match c.identity {
                Identity::Fundamental => "fundamental identity",
                Identity::SkewSymmetry { .. } => "skew symmetry",
            },
            "args": c.args.iter().map(|&i| alg.labels()[i].clone()).collect::<Vec<_>>(),
            "defect": vector_json(&c.defect),
        }),
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let field = cli.field;
    let json_out = cli.json;
    match &cli.command {
        Command::Check { algebra, lie } => {
            let alg = load_algebra(algebra, field)?;
            let lb = alg.validate_leibniz();
            if json_out {
                let mut v = json!({ "algebra": alg.name(), "leibniz": report_json(&alg, lb) });
                if *lie {
                    v["lie"] = report_json(&alg, alg.validate_lie());
                }
                return Ok(Output::text(line(v)));
            }
            let mut out = format!("leibniz: {}\n", report_text(&alg, lb));
            if *lie {
                writeln!(out, "lie: {}", report_text(&alg, alg.validate_lie())).unwrap();
            }
            Ok(Output::text(out))
        }
        Command::Commutator { algebra, variant } => {
            let alg = load_algebra(algebra, field)?;
            let c = full_commutator(&alg, *variant);
            if json_out {
                let mut v = space_json(&alg, c.space());
                v["variant"] = json!(variant.as_str());
                return Ok(Output::text(line(v)));
            }
            Ok(Output::text(format!("commutator ({variant}): {}\n", basis_text(&alg, c.space()))))
        }
        Command::Abelianize { algebra, output } | Command::Liesate { algebra, output } => {
            let alg = Arc::new(load_algebra(algebra, field)?);
            let (title, (q, p)) = match &cli.command {
                Command::Abelianize { .. } => ("abelianization", abelianization(&alg)?),
                _ => ("liesation", liesation(&alg)?),
            };
            write_algebra(&q, output)?;
            quotient_output(title, &alg, &q, &p, json_out)
        }
        Command::Daletskii { algebra, output } => {
            let alg = load_algebra(algebra, field)?;
            let d = daletskii(&alg)?;
            write_algebra(&d, output)?;
            if json_out {
                let v = json!({
                    "algebra": serde_json::to_value(AlgebraFile::from_algebra(&d)).expect("serializable"),
                    "dim": d.dim(),
                    "leibniz": d.is_leibniz(),
                });
                return Ok(Output::text(line(v)));
            }
            Ok(Output::text(format!(
                "daletskii of {}: dim {}; leibniz: {}\n",
                alg.name(),
                d.dim(),
                if d.is_leibniz() { "ok" } else { "FAIL" }
            )))
        }
        Command::Extension { cube } => {
            let c = load_cube(cube, field)?;
            let r = is_extension(&c);
            if json_out {
                return Ok(Output::text(line(json!({
                    "extension": r.ok,
                    "failing": r.failing.map(mask_label),
                }))));
            }
            Ok(Output::text(match r.failing {
                None => "extension: true\n".to_string(),
                Some(mask) => format!("extension: false; comparison at {{{}}} is not surjective\n", mask_label(mask)),
            }))
        }
        Command::Central { cube, galois, oracle } => {
            let c = load_cube(cube, field)?;
            let o = central_obstruction(&c, *galois)?;
            let base = c.base();
            let central = o.ideal.is_zero();
            let oracle_answer = if *oracle { Some(is_central_oracle(&c, *galois)?) } else { None };
            if json_out {
                let mut v = space_json(base, o.ideal.space());
                v["central"] = json!(central);
                v["galois"] = json!(galois.as_str());
                v["terms"] = Value::from(
                    o.terms
                        .iter()
                        .map(|t| {
                            json!({
                                "cover": t.cover.iter().map(|&m| mask_label(m)).collect::<Vec<_>>(),
                                "dim": t.space.rank(),
                            })
                        })
                        .collect::<Vec<_>>(),
                );
                if let Some(a) = oracle_answer {
                    v["oracle"] = json!(a);
                }
                return Ok(Output::text(line(v)));
            }
            let mut out = format!("central: {central}; obstruction {}\n", basis_text(base, o.ideal.space()));
            if let Some(a) = oracle_answer {
                writeln!(out, "oracle: {a}").unwrap();
            }
            Ok(Output::text(out))
        }
        Command::Centralize { cube, galois, output } => {
            let c = load_cube(cube, field)?;
            let (central, p) = centralize1(&c, *galois)?;
            write_algebra(central.base(), output)?;
            let kernel = p.kernel();
            if json_out {
                let v = json!({
                    "algebra": serde_json::to_value(AlgebraFile::from_algebra(central.base())).expect("serializable"),
                    "dim": central.base().dim(),
                    "obstruction": space_json(c.base(), &kernel),
                });
                return Ok(Output::text(line(v)));
            }
            Ok(Output::text(format!(
                "centralization: domain dim {} -> {}; obstruction {}\n",
                c.base().dim(),
                central.base().dim(),
                basis_text(c.base(), &kernel)
            )))
        }
        Command::Hopf { cube, galois } => {
            let c = load_cube(cube, field)?;
            let r = hopf_evaluate(&c, *galois)?;
            let mut notes = Vec::new();
            if truncated_free_kind(&c).is_none() {
                notes.push(
                    "the cube is not a truncated free presentation; the quotient need not be homology".to_string(),
                );
            }
            let stdout = if json_out {
                line(json!({
                    "numerator": r.numerator.rank(),
                    "denominator": r.denominator.rank(),
                    "h": r.h_dim,
                }))
            } else {
                let mut out = format!(
                    "numerator dim {}; denominator dim {}; h dim {}\n",
                    r.numerator.rank(),
                    r.denominator.rank(),
                    r.h_dim
                );
                if !r.h_basis.is_empty() {
                    let labels: Vec<String> = r.h_basis.iter().map(|v| c.base().format_vector(v)).collect();
                    writeln!(out, "representatives: {}", labels.join(", ")).unwrap();
                }
                out
            };
            Ok(Output { stdout, notes })
        }
        Command::Uce { algebra, variant, output } => {
            let alg = Arc::new(load_algebra(algebra, field)?);
            let u = uce(&alg, *variant)?;
            let inv = u.invariants()?;
            write_algebra(&u.algebra, output)?;
            if json_out {
                let v = json!({
                    "algebra": serde_json::to_value(AlgebraFile::from_algebra(&u.algebra)).expect("serializable"),
                    "axioms": inv.satisfies_axioms,
                    "central": inv.central,
                    "dim": u.algebra.dim(),
                    "kernel_dim": u.kernel.dim(),
                    "perfect": inv.perfect,
                    "relations_rank": u.relations.rank(),
                    "surjective": inv.surjective,
                    "variant": variant.as_str(),
                });
                return Ok(Output::text(line(v)));
            }
            Ok(Output::text(format!(
                "uce ({variant}) of {}: dim U {}; kernel dim {}; relations rank {}\n\
                 surjective: {}; central: {}; perfect: {}; axioms: {}\n",
                alg.name(),
                u.algebra.dim(),
                u.kernel.dim(),
                u.relations.rank(),
                inv.surjective,
                inv.central,
                inv.perfect,
                inv.satisfies_axioms
            )))
        }
        Command::H2 { algebra, variant } => {
            let alg = Arc::new(load_algebra(algebra, field)?);
            let h = h2_via_uce(&alg, *variant)?;
            if json_out {
                return Ok(Output::text(line(json!({ "h2": h, "variant": variant.as_str() }))));
            }
            Ok(Output::text(format!("h2 ({variant}) of {}: {h}\n", alg.name())))
        }
        Command::CompareUce { algebra } => {
            let alg = Arc::new(load_algebra(algebra, field)?);
            let c = compare_uce(&alg)?;
            let dims = json!({
                "dim_u_leibniz": c.leibniz.algebra.dim(),
                "dim_u_lie": c.lie.algebra.dim(),
                "kernel_leibniz": c.leibniz.kernel.dim(),
                "kernel_lie": c.lie.kernel.dim(),
                "kernel_f": c.map_kernel_dim,
            });
            if json_out {
                let mut v = dims;
                v["ok"] = json!(c.all_ok());
                v["checks"] = Value::from(
                    c.checks
                        .iter()
                        .map(|k| json!({ "name": k.name, "ok": k.ok, "statement": k.statement, "detail": k.detail }))
                        .collect::<Vec<_>>(),
                );
                return Ok(Output::text(line(v)));
            }
            let mut out = format!(
                "dim U_lb {}; dim U_lie {}; dim ker u_lb {}; dim ker u_lie {}; dim ker f {}\n",
                c.leibniz.algebra.dim(),
                c.lie.algebra.dim(),
                c.leibniz.kernel.dim(),
                c.lie.kernel.dim(),
                c.map_kernel_dim.map_or("-".to_string(), |d| d.to_string())
            );
            for k in &c.checks {
                writeln!(out, "({}) {}: {} [{}]", k.name, if k.ok { "ok" } else { "FAIL" }, k.statement, k.detail)
                    .unwrap();
            }
            Ok(Output::text(out))
        }
        Command::Morphism { file } => {
            let f = MorphismFile::load(file)?.to_morphism(field, file)?;
            morphism_output(&f, json_out)
        }
        Command::Normalize { file } => {
            let text = match load_any(file)? {
                AnyFile::Algebra(a) => canonical_json(&AlgebraFile::from_algebra(&a.to_algebra(field, file)?)),
                AnyFile::Cube(c) => canonical_json(&c.normalized(file)?),
                AnyFile::Morphism(m) => {
                    let f = m.to_morphism(field, file)?;
                    let normalized = MorphismFile {
                        source: m.source.clone(),
                        target: m.target.clone(),
                        matrix: crate::files::matrix_strings(f.map()),
                    };
                    canonical_json(&normalized)
                }
            };
            Ok(Output::text(text))
        }
        Command::Fixture { name, n, d, variant } => {
            let f = field.unwrap_or(Field::Rational);
            let alg = match name.as_str() {
                "abelian" => catalog::abelian(f, *n, *d)?,
                "h3" => catalog::h3(f)?,
                "sl2" => catalog::sl2(f)?,
                "lz2" => catalog::lz2(f)?,
                "v4" => catalog::v4(f)?,
                "idem1" => catalog::idempotent_line(f)?,
                "fnil2" => Arc::unwrap_or_clone(free_nilpotent2(f, *n, *d, *variant)?.0),
                other => return Err(CliError::Parse(format!("unknown fixture `{other}`"))),
            };
            Ok(Output::text(canonical_json(&AlgebraFile::from_algebra(&alg))))
        }
    }
}

fn quotient_output(
    title: &str,
    alg: &NaryAlgebra,
    q: &NaryAlgebra,
    p: &AlgebraMorphism,
    json_out: bool,
) -> Result<Output, CliError> {
    let kernel = p.kernel();
    if json_out {
        let v = json!({
            "algebra": serde_json::to_value(AlgebraFile::from_algebra(q)).expect("serializable"),
            "dim": q.dim(),
            "kernel": space_json(alg, &kernel),
        });
        return Ok(Output::text(line(v)));
    }
    Ok(Output::text(format!("{title} of {}: dim {}\nkernel: {}\n", alg.name(), q.dim(), basis_text(alg, &kernel))))
}

fn morphism_output(f: &AlgebraMorphism, json_out: bool) -> Result<Output, CliError> {
    let kernel = f.kernel();
    let rank = f.map().rank();
    if json_out {
        let v = json!({
            "kernel": space_json(f.source(), &kernel),
            "rank": rank,
            "source": f.source().name(),
            "surjective": f.is_surjective(),
            "target": f.target().name(),
        });
        return Ok(Output::text(line(v)));
    }
    Ok(Output::text(format!(
        "morphism {} -> {}: rank {}; surjective: {}\nkernel: {}\n",
        f.source().name(),
        f.target().name(),
        rank,
        f.is_surjective(),
        basis_text(f.source(), &kernel)
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(rel: &str) -> String {
        format!("{}/fixtures/{rel}", env!("CARGO_MANIFEST_DIR"))
    }

    fn run_args(args: &[&str]) -> Result<Output, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("nary").chain(args.iter().copied())).unwrap();
        run(&cli)
    }

    #[test]
    fn value_types_parse() {
        let cli = Cli::try_parse_from(["nary", "--field", "F5", "central", "c.json", "--galois", "lb-lie"]).unwrap();
        assert_eq!(cli.field, Some(Field::prime(5).unwrap()));
        assert!(matches!(cli.command, Command::Central { galois: GaloisStructure::LbOverLie, oracle: false, .. }));
        assert!(Cli::try_parse_from(["nary", "central", "c.json", "--galois", "lie"]).is_err());
        assert!(Cli::try_parse_from(["nary", "--field", "F9", "check", "a.json"]).is_err());
        assert!(Cli::try_parse_from(["nary", "uce", "a.json", "--variant", "relative"]).is_err());
    }

    #[test]
    fn check_reports_first_counterexample() {
        let out = run_args(&["check", &fixture("algebras/lz2.json"), "--lie"]).unwrap();
        assert_eq!(out.stdout, "leibniz: ok\nlie: FAIL (skew symmetry at (x,x))\n");
    }

    #[test]
    fn hopf_json_has_three_keys() {
        let out =
            run_args(&["--json", "hopf", &fixture("cubes/fnil2_2_2_leibniz.json"), "--galois", "lb-vect"]).unwrap();
        assert_eq!(out.stdout, "{\"denominator\":0,\"h\":4,\"numerator\":4}\n");
        assert!(out.notes.is_empty());
    }

    #[test]
    fn hopf_warns_off_presentations() {
        let out = run_args(&["hopf", &fixture("cubes/cube_h3_plane.json"), "--galois", "lie-vect"]).unwrap();
        assert_eq!(out.notes.len(), 1);
    }

    #[test]
    fn semantic_failure_is_exit_one() {
        let err = run_args(&["uce", &fixture("algebras/h3.json"), "--variant", "leibniz"]).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        let err = run_args(&["check", &fixture("invalid/bad_index.json")]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let err = run_args(&["fixture", "e8"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
