//! JSON input files: matrix tuples and head ⊕ tail operator specs.

use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use super::CliError;
use crate::linalg::{ComplexMatrix, C64};
use crate::model::{MatrixTuple, OperatorSpec, TailGenerator};

/// Contents of an input file.
#[derive(Clone, Debug)]
pub enum TupleInput {
    Tuple(MatrixTuple),
    Spec(OperatorSpec),
}

/// A matrix entry: a bare real number or an `[re, im]` pair.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(untagged)]
enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

impl From<Entry> for C64 {
    fn from(e: Entry) -> Self {
        match e {
            Entry::Real(x) => C64::new(x, 0.0),
            Entry::Complex([re, im]) => C64::new(re, im),
        }
    }
}

type RawMatrix = Vec<Vec<Entry>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TupleFile {
    #[serde(default)]
    schema: Option<u32>,
    mats: Vec<RawMatrix>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum TailFile {
    Constant {
        value: Entry,
    },
    Harmonic {
        #[serde(default)]
        offset: Option<Entry>,
        #[serde(default)]
        scale: Option<Entry>,
    },
    SignedHarmonic {
        #[serde(default)]
        offset: Option<Entry>,
        #[serde(default)]
        scale: Option<Entry>,
    },
    RootCycle {
        order: usize,
        #[serde(default)]
        scale: Option<Entry>,
    },
    Cyclic {
        values: Vec<Entry>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    #[serde(default)]
    schema: Option<u32>,
    head: Vec<RawMatrix>,
    tail: Vec<TailFile>,
    accumulation: Vec<Vec<Entry>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

pub fn parse_tuple_file(path: &Path) -> Result<TupleInput, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    parse_tuple_str(&text)
}

/// Parses file contents; a top-level `head` field marks an operator spec.
pub fn parse_tuple_str(text: &str) -> Result<TupleInput, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let is_spec = value.get("head").is_some();
    if is_spec {
        let f: SpecFile = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        check_schema(f.schema)?;
        let head = build_tuple(f.head, f.labels, "head")?;
        let m = head.len();
        if f.tail.len() != m {
            return Err(CliError::Validation(format!("tail: {} generators for {m} head components", f.tail.len())));
        }
        let tail = f.tail.into_iter().map(tail_generator).collect();
        let accumulation: Vec<Vec<C64>> =
            f.accumulation.into_iter().map(|p| p.into_iter().map(C64::from).collect()).collect();
        if let Some((i, p)) = accumulation.iter().enumerate().find(|(_, p)| p.len() != m) {
            return Err(CliError::Validation(format!("accumulation[{i}]: {} coordinates for {m} components", p.len())));
        }
        OperatorSpec::new(head, tail, accumulation).map(TupleInput::Spec).map_err(CliError::from)
    } else {
        let f: TupleFile = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        check_schema(f.schema)?;
        build_tuple(f.mats, f.labels, "mats").map(TupleInput::Tuple)
    }
}

fn check_schema(schema: Option<u32>) -> Result<(), CliError> {
    match schema {
        None | Some(1) => Ok(()),
        Some(s) => Err(CliError::Parse(format!("schema: unsupported version {s}"))),
    }
}

fn build_tuple(raw: Vec<RawMatrix>, labels: Option<Vec<String>>, field: &str) -> Result<MatrixTuple, CliError> {
    if raw.is_empty() {
        return Err(CliError::Validation(format!("{field}: no matrices")));
    }
    let mut mats = Vec::with_capacity(raw.len());
    for (j, rows) in raw.into_iter().enumerate() {
        let n = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(CliError::Validation(format!("{field}[{j}]: row {i} has {} entries, expected {n}", r.len())));
        }
        let data: Vec<C64> = rows.into_iter().flatten().map(C64::from).collect();
        mats.push(ComplexMatrix::new(n, n, data).map_err(|e| CliError::Validation(format!("{field}[{j}]: {e}")))?);
    }
    let tuple = MatrixTuple::new(mats).map_err(|e| CliError::Validation(format!("{field}: {e}")))?;
    match labels {
        Some(l) => tuple.with_labels(l).map_err(|e| CliError::Validation(format!("labels: {e}"))),
        None => Ok(tuple),
    }
}

fn tail_generator(t: TailFile) -> TailGenerator {
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let or = |e: Option<Entry>, d: C64| e.map(C64::from).unwrap_or(d);
    match t {
        TailFile::Constant { value } => TailGenerator::Constant(value.into()),
        TailFile::Harmonic { offset, scale } => TailGenerator::Harmonic { offset: or(offset, zero), scale: or(scale, one) },
        TailFile::SignedHarmonic { offset, scale } => {
            TailGenerator::SignedHarmonic { offset: or(offset, zero), scale: or(scale, one) }
        }
        TailFile::RootCycle { order, scale } => TailGenerator::RootCycle { order, scale: or(scale, one) },
        TailFile::Cyclic { values } => TailGenerator::Cyclic(values.into_iter().map(C64::from).collect()),
    }
}
