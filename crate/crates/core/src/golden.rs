//! Evaluation of `expect KEY = VALUE` lines against computed results.

use std::fmt;
use std::path::{Path, PathBuf};

use crate::algebra::{Parity, SuperAlgebra};
use crate::derivations::{derivation_space, is_characteristically_nilpotent};
use crate::exec::Execution;
use crate::extension::{
    check_odd_roots_distinct, check_odd_square_collapse, equivalent_models, is_canonical_extension,
    maximal_solvable_extension, split_q, verify_model, ExtensionError, SolvableModel,
};
use crate::format::{format_span, parse_file, parse_span, AlgebraFile, FormatError};
use crate::linalg::{parse_scalar, Mat, Scalar, Subspace};
use crate::structure::{
    generator_space, is_nilpotent, is_solvable, nilindex, nilradical_solvable, square,
};
use crate::torus::{diagonal_span, is_maximal_rank, maximal_torus, rank_and_torus_dim};

pub const KEYS: &[&str] = &[
    "valid",
    "nilpotent",
    "solvable",
    "nilindex",
    "dim_der_even",
    "dim_der_odd",
    "rank",
    "torus_dim",
    "max_torus_dim",
    "gen_even",
    "gen_odd",
    "maximal_rank",
    "char_nilpotent",
    "even_part_char_nilpotent",
    "nilradical",
    "square",
    "odd_square",
    "even_square",
    "center",
    "torus_span",
    "extension",
    "extension_equivalent",
    "extension_error",
    "q_split",
    "model_failures",
    "canonical",
    "prop51",
    "odd_roots_distinct",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub algebra: String,
    pub key: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "ok  " } else { "FAIL" };
        write!(f, "{tag} {} {}: expected {}", self.algebra, self.key, self.expected)?;
        if !self.pass {
            write!(f, ", got {}", self.got)?;
        }
        Ok(())
    }
}

fn yes(b: bool) -> String {
    b.to_string()
}

fn error_name(e: &ExtensionError) -> String {
    let s = format!("{e:?}");
    s.split(['(', ' ', '{']).next().unwrap_or_default().to_string()
}

/// The model a file describes: its maximal extension when nilpotent,
/// otherwise the algebra itself over its nilradical.
fn model_of(a: &SuperAlgebra) -> Result<SolvableModel, String> {
    if is_nilpotent(a) {
        maximal_solvable_extension(a).map_err(|e| error_name(&e))
    } else {
        SolvableModel::from_algebra(a).map_err(|e| e.to_string())
    }
}

/// `diag(1,1,0); diag(1,0,1)`
fn parse_diagonals(dim: usize, text: &str) -> Result<Subspace, String> {
    let mut rows = Vec::new();
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let inner = part
            .strip_prefix("diag(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| format!("expected diag(...), got `{part}`"))?;
        let row: Vec<Scalar> = inner
            .split(',')
            .map(|c| parse_scalar(c.trim()).ok_or_else(|| format!("bad entry `{c}`")))
            .collect::<Result<_, _>>()?;
        if row.len() != dim {
            return Err(format!("diag of length {} in dimension {dim}", row.len()));
        }
        rows.push(row);
    }
    Ok(Subspace::span(dim, &rows))
}

pub fn format_diagonals(maps: &[Mat]) -> String {
    maps.iter()
        .map(|m| {
            let d: Vec<String> = m.diagonal().iter().map(crate::linalg::fmt_scalar).collect();
            format!("diag({})", d.join(","))
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn sibling(base: Option<&Path>, name: &str) -> Result<AlgebraFile, String> {
    let dir = base.and_then(Path::parent).unwrap_or_else(|| Path::new("."));
    parse_file(&dir.join(name.trim())).map_err(|e| e.to_string())
}

/// Computes the value of `key` and compares it with `expected`.
/// Returns `(got, pass)`.
pub fn evaluate(file: &AlgebraFile, key: &str, expected: &str) -> (String, bool) {
    let a = &file.algebra;
    let expected = expected.trim();
    let plain = |got: Result<String, String>| match got {
        Ok(g) => {
            let pass = g == expected;
            (g, pass)
        }
        Err(e) => (format!("error: {e}"), false),
    };
    let span_cmp = |got: Subspace| match parse_span(a, expected) {
        Ok(want) => {
            let pass = want == got;
            (format_span(a, &got), pass)
        }
        Err(e) => (format!("bad expectation: {e}"), false),
    };
    match key {
        "valid" => plain(Ok(yes(a.validate().is_valid()))),
        "nilpotent" => plain(Ok(yes(is_nilpotent(a)))),
        "solvable" => plain(Ok(yes(is_solvable(a)))),
        "nilindex" => plain(Ok(nilindex(a).map_or("none".into(), |s| s.to_string()))),
        "dim_der_even" => plain(Ok(derivation_space(a, Parity::Even).len().to_string())),
        "dim_der_odd" => plain(Ok(derivation_space(a, Parity::Odd).len().to_string())),
        "rank" | "torus_dim" => plain(
            rank_and_torus_dim(a)
                .map(|r| if key == "rank" { r.rank } else { r.torus_dim }.to_string())
                .map_err(|e| e.to_string()),
        ),
        "max_torus_dim" => plain(
            maximal_torus(a)
                .map(|t| t.dim().to_string())
                .map_err(|e| e.to_string()),
        ),
        "gen_even" | "gen_odd" => plain(
            generator_space(a)
                .map(|g| if key == "gen_even" { g.k } else { g.s }.to_string())
                .map_err(|e| e.to_string()),
        ),
        "maximal_rank" => plain(is_maximal_rank(a).map(yes).map_err(|e| e.to_string())),
        "char_nilpotent" => plain(
            is_characteristically_nilpotent(a)
                .map(yes)
                .map_err(|e| e.to_string()),
        ),
        "even_part_char_nilpotent" => plain(
            is_characteristically_nilpotent(&a.even_part())
                .map(yes)
                .map_err(|e| e.to_string()),
        ),
        "nilradical" => match nilradical_solvable(a) {
            Ok(s) => span_cmp(s),
            Err(e) => (format!("error: {e}"), false),
        },
        "square" => span_cmp(square(a)),
        "odd_square" => span_cmp(a.subspace_bracket(&a.odd_subspace(), &a.odd_subspace())),
        "even_square" => span_cmp(a.subspace_bracket(&a.even_subspace(), &a.even_subspace())),
        "center" => span_cmp(a.center()),
        "torus_span" => match (rank_and_torus_dim(a), parse_diagonals(a.dim(), expected)) {
            (Ok(r), Ok(want)) => {
                let got = diagonal_span(&r.generators);
                let mats: Vec<Mat> = r.generators.iter().map(|g| g.matrix.clone()).collect();
                (format_diagonals(&mats), got == want)
            }
            (Err(e), _) => (format!("error: {e}"), false),
            (_, Err(e)) => (format!("bad expectation: {e}"), false),
        },
        "extension" => plain((|| {
            let other = sibling(file.path.as_deref(), expected)?;
            let m = maximal_solvable_extension(a).map_err(|e| error_name(&e))?;
            let same = m.algebra.labels() == other.algebra.labels()
                && m.algebra.products() == other.algebra.products();
            Ok(if same { expected.to_string() } else { "different table".into() })
        })()),
        "extension_equivalent" => plain((|| {
            let other = sibling(file.path.as_deref(), expected)?;
            let m = maximal_solvable_extension(a).map_err(|e| error_name(&e))?;
            let theirs = SolvableModel::from_algebra(&other.algebra).map_err(|e| e.to_string())?;
            let eq = equivalent_models(&m, &theirs).map_err(|e| e.to_string())?;
            Ok(if eq { expected.to_string() } else { "not equivalent".into() })
        })()),
        "extension_error" => plain(match maximal_solvable_extension(a) {
            Ok(_) => Ok("none".into()),
            Err(e) => Ok(error_name(&e)),
        }),
        "q_split" => plain((|| {
            let m = model_of(a)?;
            let s = split_q(&m).map_err(|e| error_name(&e))?;
            Ok(format!("{},{}", s.q1.dim(), s.q2.dim()))
        })()),
        "model_failures" => plain(model_of(a).map(|m| {
            let failed = verify_model(&m).failed_ids();
            if failed.is_empty() {
                "none".into()
            } else {
                failed.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
            }
        })),
        "canonical" => plain((|| {
            let m = SolvableModel::from_algebra(a).map_err(|e| e.to_string())?;
            is_canonical_extension(&m).map(yes).map_err(|e| error_name(&e))
        })()),
        "prop51" => plain(Ok(match check_odd_square_collapse(a) {
            Ok(true) => "holds".into(),
            Ok(false) => "violated".into(),
            Err(ExtensionError::PreconditionNotMet(_)) => "precondition_not_met".into(),
            Err(e) => format!("error: {}", error_name(&e)),
        })),
        "odd_roots_distinct" => plain(
            maximal_torus(a)
                .map_err(|e| e.to_string())
                .and_then(|t| check_odd_roots_distinct(&t).map_err(|e| e.to_string()))
                .map(yes),
        ),
        _ => (format!("unknown key `{key}`"), false),
    }
}

pub fn check_file(file: &AlgebraFile) -> Vec<Outcome> {
    file.expectations
        .iter()
        .map(|e| {
            let (got, pass) = evaluate(file, &e.key, &e.value);
            Outcome {
                algebra: file.algebra.name().to_string(),
                key: e.key.clone(),
                expected: e.value.clone(),
                got,
                pass,
            }
        })
        .collect()
}

/// Top-level `.sla` files of a directory, sorted by name.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, FormatError> {
    let io = |e: std::io::Error| FormatError::Io {
        path: dir.display().to_string(),
        msg: e.to_string(),
    };
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "sla"))
        .collect();
    files.sort();
    Ok(files)
}

/// Parses every file first, then evaluates them independently.
pub fn check_corpus(dir: &Path, exec: Execution) -> Result<Vec<Outcome>, FormatError> {
    let files = corpus_files(dir)?
        .iter()
        .map(|p| {
            parse_file(p).map_err(|e| FormatError::InFile {
                path: p.display().to_string(),
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(exec.map(&files, check_file).into_iter().flatten().collect())
}

pub fn tsv(outcomes: &[Outcome]) -> String {
    let mut out = String::from("algebra\tcheck\texpected\tgot\tpass\n");
    for o in outcomes {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            o.algebra, o.key, o.expected, o.got, o.pass
        ));
    }
    out
}
