//! Resolving command-line inputs: corpus names, matrix files and JSON specs.

use std::fs;
use std::io::Read;

use concordia::corpus;
use concordia::seifert::{
    crossing_triple, genus2_mutant, AmphicheiralData, CrossingTriple, Genus2MutationPair,
    SeifertMatrix,
};
use concordia::{Error, Result};
use serde::Deserialize;

fn read_text(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn json_err(path: &str, e: serde_json::Error) -> Error {
    Error::Parse(format!(
        "{path}: line {}, column {}: {e}",
        e.line(),
        e.column()
    ))
}

/// A corpus name, or a matrix file in either format (`-` for stdin).
pub fn knot(input: &str) -> Result<SeifertMatrix> {
    if let Some(r) = corpus::lookup(input) {
        return Ok(r.seifert);
    }
    let text = read_text(input)?;
    SeifertMatrix::parse_any(input, &text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{input}: {m}")),
        other => other,
    })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum KnotRef {
    Name(String),
    Object {
        #[serde(default)]
        label: String,
        matrix: Vec<Vec<i64>>,
    },
    Rows(Vec<Vec<i64>>),
}

impl KnotRef {
    fn resolve(self) -> Result<SeifertMatrix> {
        match self {
            KnotRef::Name(n) => corpus::lookup(&n)
                .map(|r| r.seifert)
                .ok_or_else(|| Error::Parse(format!("unknown corpus knot {n:?}"))),
            KnotRef::Object { label, matrix } => rows(&label, matrix),
            KnotRef::Rows(matrix) => rows("", matrix),
        }
    }
}

fn rows(label: &str, matrix: Vec<Vec<i64>>) -> Result<SeifertMatrix> {
    let refs: Vec<&[i64]> = matrix.iter().map(Vec::as_slice).collect();
    if let Some(c) = refs.first().map(|r| r.len()) {
        if let Some(i) = refs.iter().position(|r| r.len() != c) {
            return Err(Error::Parse(format!("row {}: expected {c} entries", i + 1)));
        }
    }
    SeifertMatrix::from_rows(label, &refs)
}

#[derive(Deserialize)]
struct TripleSpec {
    base: KnotRef,
    column: Vec<i64>,
    b: i64,
}

/// JSON `{"base": <knot>, "column": [...], "b": n}`, or a knot input with
/// the column and `b` given separately.
pub fn triple(input: &str, column: Option<&[i64]>, b: Option<i64>) -> Result<CrossingTriple> {
    if column.is_some() || b.is_some() {
        let base = knot(input)?;
        let col = column.map_or_else(|| vec![0; base.rank()], <[i64]>::to_vec);
        return crossing_triple(&base, &col, b.unwrap_or(0));
    }
    let text = read_text(input)?;
    let spec: TripleSpec = serde_json::from_str(&text).map_err(|e| json_err(input, e))?;
    crossing_triple(&spec.base.resolve()?, &spec.column, spec.b)
}

#[derive(Deserialize)]
struct PairSpec {
    #[serde(rename = "A")]
    a: KnotRef,
    #[serde(rename = "C")]
    c: KnotRef,
    b: Vec<i64>,
}

/// `sample`, or JSON `{"A": <knot>, "C": <knot>, "b": [...]}`.
pub fn mutant_pair(input: &str) -> Result<Genus2MutationPair> {
    if input == "sample" {
        return Ok(corpus::mutant_sample());
    }
    let text = read_text(input)?;
    let spec: PairSpec = serde_json::from_str(&text).map_err(|e| json_err(input, e))?;
    let a = spec.a.resolve()?;
    let c = spec.c.resolve()?;
    genus2_mutant(a.matrix(), c.matrix(), &spec.b)
}

/// `sample`, or JSON `{"A": [[...]], "T": [[...]], "a": [...], "b": n, "epsilon": e}`.
pub fn amphicheiral(input: &str) -> Result<AmphicheiralData> {
    if input == "sample" {
        return Ok(corpus::amphicheiral_sample());
    }
    let text = read_text(input)?;
    let d: AmphicheiralData = serde_json::from_str(&text).map_err(|e| json_err(input, e))?;
    for (name, m) in [("A", &d.a_mat), ("T", &d.t)] {
        if m.rows() != d.a.len() || m.cols() != d.a.len() {
            return Err(Error::DimensionMismatch(format!(
                "{name} must be {0}x{0}",
                d.a.len()
            )));
        }
    }
    Ok(d)
}

/// `a/b` with `b > 0`.
pub fn fraction(s: &str) -> std::result::Result<(i64, u64), String> {
    let (a, b) = s
        .split_once('/')
        .ok_or_else(|| format!("expected a/b, found {s:?}"))?;
    let a: i64 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad numerator in {s:?}"))?;
    let b: u64 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad denominator in {s:?}"))?;
    if b == 0 {
        return Err("denominator must be positive".into());
    }
    Ok((a, b))
}

/// Comma-separated integers; the empty string is the empty list.
pub fn int_list(s: &str) -> std::result::Result<Vec<i64>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| format!("expected an integer, found {t:?}"))
        })
        .collect()
}
