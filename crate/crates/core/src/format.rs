//! The `.sla` text format.
//!
//! ```text
//! algebra n1
//! even x1
//! odd y1 y2
//! [y1,y2] = x1          # one orientation per bracket
//! expect torus_dim = 2
//! ```
//!
//! Coefficients are integers or `p/q`, written `c*label`; a bare label means
//! coefficient one and a leading `-` negates. `0` denotes the zero bracket.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraBuilder, AlgebraError, SuperAlgebra};
use crate::linalg::{fmt_scalar, parse_scalar, Scalar, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown label `{label}`")]
    UnknownLabel { line: usize, label: String },
    #[error("line {line}: duplicate bracket [{a},{b}]")]
    DuplicateBracket { line: usize, a: String, b: String },
    #[error("line {line}: parity mismatch: {msg}")]
    ParityMismatch { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Algebra { line: usize, source: AlgebraError },
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("{path}: {source}")]
    InFile {
        path: String,
        source: Box<FormatError>,
    },
}

impl FormatError {
    fn at(line: usize, e: AlgebraError) -> FormatError {
        match e {
            AlgebraError::UnknownLabel(label) => FormatError::UnknownLabel { line, label },
            AlgebraError::DuplicateBracket(a, b) => FormatError::DuplicateBracket { line, a, b },
            e @ (AlgebraError::ParityMismatch { .. } | AlgebraError::EvenSelfBracket(_)) => {
                FormatError::ParityMismatch {
                    line,
                    msg: e.to_string(),
                }
            }
            source => FormatError::Algebra { line, source },
        }
    }

    fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
        FormatError::Syntax {
            line,
            msg: msg.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub key: String,
    pub value: String,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub path: Option<PathBuf>,
    pub algebra: SuperAlgebra,
    pub expectations: Vec<Expectation>,
}

fn is_label(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Splits `a - 2*b + 1/2*c` into signed terms `(coefficient, label)`.
/// A lone `0` yields no terms.
pub fn parse_combination(text: &str) -> Result<Vec<(Scalar, String)>, String> {
    let words: Vec<&str> = text.split_whitespace().collect();
    for w in words.windows(2) {
        let (a, b) = (w[0].chars().last(), w[1].chars().next());
        if matches!((a, b), (Some(a), Some(b)) if a != '+' && a != '-' && a != '*' && b != '+' && b != '-' && b != '*')
        {
            return Err(format!("missing operator between `{}` and `{}`", w[0], w[1]));
        }
    }
    let t: String = words.concat();
    if t.is_empty() {
        return Err("empty expression".into());
    }
    if t == "0" {
        return Ok(Vec::new());
    }
    let mut terms = Vec::new();
    let mut rest = t.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let (neg, body) = match rest.as_bytes()[0] {
            b'+' if !first => (false, &rest[1..]),
            b'-' => (true, &rest[1..]),
            _ if first => (false, rest),
            _ => return Err(format!("expected `+` or `-` before `{rest}`")),
        };
        first = false;
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        let (coef, label) = match term.split_once('*') {
            Some((c, l)) => {
                let c = parse_scalar(c).ok_or_else(|| format!("bad coefficient `{c}`"))?;
                (c, l)
            }
            None => (Scalar::one(), term),
        };
        if !is_label(label) {
            return Err(format!("bad term `{term}`"));
        }
        terms.push((if neg { -coef } else { coef }, label.to_string()));
    }
    Ok(terms)
}

/// Coordinates of a linear combination of basis labels.
pub fn parse_element(a: &SuperAlgebra, text: &str) -> Result<Vec<Scalar>, String> {
    let mut v = vec![Scalar::zero(); a.dim()];
    for (c, l) in parse_combination(text)? {
        let i = a.index_of(&l).ok_or_else(|| format!("unknown label `{l}`"))?;
        v[i] += c;
    }
    Ok(v)
}

/// `span{a, b + c}` or `span{}`.
pub fn parse_span(a: &SuperAlgebra, text: &str) -> Result<Subspace, String> {
    let t = text.trim();
    let inner = t
        .strip_prefix("span{")
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| format!("expected span{{...}}, got `{t}`"))?;
    let vecs = inner
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| parse_element(a, p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Subspace::span(a.dim(), &vecs))
}

pub fn format_combination(a: &SuperAlgebra, v: &[Scalar]) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = *c < Scalar::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            let _ = write!(out, "{}*", fmt_scalar(&mag));
        }
        out.push_str(a.label(i));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn format_span(a: &SuperAlgebra, s: &Subspace) -> String {
    let parts: Vec<String> = s.basis().iter().map(|v| format_combination(a, v)).collect();
    format!("span{{{}}}", parts.join(", "))
}

pub fn parse_str(text: &str) -> Result<AlgebraFile, FormatError> {
    let mut builder = AlgebraBuilder::new("");
    let mut named = false;
    let mut brackets_started = false;
    let mut expectations = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("algebra") {
            let name = rest.trim();
            if named || !rest.starts_with(char::is_whitespace) || name.split_whitespace().count() != 1 {
                return Err(FormatError::syntax(line, "expected `algebra NAME` once"));
            }
            builder.set_name(name);
            named = true;
        } else if let Some(rest) = content.strip_prefix("even ").or(content.strip_prefix("odd ")) {
            if brackets_started {
                return Err(FormatError::syntax(line, "labels must precede brackets"));
            }
            let labels: Vec<&str> = rest.split_whitespace().collect();
            if let Some(bad) = labels.iter().find(|l| !is_label(l)) {
                return Err(FormatError::syntax(line, format!("bad label `{bad}`")));
            }
            let r = if content.starts_with("even") {
                if builder.has_odd() {
                    return Err(FormatError::syntax(line, "even labels must precede odd labels"));
                }
                builder.add_even(&labels)
            } else {
                builder.add_odd(&labels)
            };
            r.map_err(|e| FormatError::at(line, e))?;
        } else if let Some(rest) = content.strip_prefix("expect ") {
            let (key, value) = rest
                .split_once('=')
                .ok_or_else(|| FormatError::syntax(line, "expected `expect KEY = VALUE`"))?;
            let key = key.trim();
            if key.is_empty() || key.contains(char::is_whitespace) {
                return Err(FormatError::syntax(line, "bad expectation key"));
            }
            expectations.push(Expectation {
                key: key.to_string(),
                value: value.trim().to_string(),
                line,
            });
        } else if content.starts_with('[') {
            brackets_started = true;
            let close = content
                .find(']')
                .ok_or_else(|| FormatError::syntax(line, "missing `]`"))?;
            let (a, b) = content[1..close]
                .split_once(',')
                .ok_or_else(|| FormatError::syntax(line, "expected `[a,b]`"))?;
            let rhs = content[close + 1..]
                .trim()
                .strip_prefix('=')
                .ok_or_else(|| FormatError::syntax(line, "expected `=`"))?;
            let terms = parse_combination(rhs).map_err(|m| FormatError::syntax(line, m))?;
            let terms: Vec<(Scalar, &str)> = terms.iter().map(|(c, l)| (c.clone(), l.as_str())).collect();
            builder
                .bracket(a.trim(), b.trim(), &terms)
                .map_err(|e| FormatError::at(line, e))?;
        } else {
            return Err(FormatError::syntax(line, format!("unrecognized line `{content}`")));
        }
    }
    if !named {
        return Err(FormatError::syntax(0, "missing `algebra NAME` line"));
    }
    let algebra = builder.build().map_err(|e| FormatError::at(0, e))?;
    Ok(AlgebraFile {
        path: None,
        algebra,
        expectations,
    })
}

pub fn parse_file(path: &Path) -> Result<AlgebraFile, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|e| FormatError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    let mut f = parse_str(&text)?;
    f.path = Some(path.to_path_buf());
    Ok(f)
}

/// Canonical text: one line per nonzero canonical bracket, in index order.
pub fn serialize(a: &SuperAlgebra, expectations: &[Expectation]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "algebra {}", a.name());
    if a.n() > 0 {
        let _ = writeln!(out, "even {}", a.even_labels().join(" "));
    }
    if a.m() > 0 {
        let _ = writeln!(out, "odd {}", a.odd_labels().join(" "));
    }
    for (&(i, j), v) in a.products() {
        let _ = writeln!(
            out,
            "[{},{}] = {}",
            a.label(i),
            a.label(j),
            format_combination(a, v)
        );
    }
    for e in expectations {
        let _ = writeln!(out, "expect {} = {}", e.key, e.value);
    }
    out
}
